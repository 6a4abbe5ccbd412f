//! Verification oracles: finite-difference derivative checks, element
//! assembly against an independent whole-function evaluator, Hessian
//! sparsity containment and catalog metadata against the golden table.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cps::{CpsStructure, EvalRequest, EvalResult};
use crate::error::{OpmError, Result};
use crate::eval::{self, eval_objective_with};
use crate::exec::{self, ExecPolicy};
use crate::problem::Problem;
use crate::registry::Registry;
use crate::table::{catalog_row, GoldenTable};

pub mod mutation;

/// Seed used when the caller does not choose one.
pub const DEFAULT_SEED: u64 = 20211117;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    GradFD,
    HessFD,
    CpsConsistency,
    Sparsity,
    Metadata,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::GradFD,
        CheckKind::HessFD,
        CheckKind::CpsConsistency,
        CheckKind::Sparsity,
        CheckKind::Metadata,
    ];

    /// Short name used on the command line.
    pub fn key(self) -> &'static str {
        match self {
            CheckKind::GradFD => "gradfd",
            CheckKind::HessFD => "hessfd",
            CheckKind::CpsConsistency => "cps",
            CheckKind::Sparsity => "sparsity",
            CheckKind::Metadata => "metadata",
        }
    }

    pub fn from_key(s: &str) -> Option<CheckKind> {
        CheckKind::ALL.into_iter().find(|k| k.key() == s)
    }
}

/// Where the worst discrepancy was found. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "lowercase")]
pub enum Location {
    Value,
    Gradient { index: usize },
    Hessian { row: usize, col: usize },
    Field { column: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub problem: String,
    pub n: usize,
    pub check_kind: CheckKind,
    pub max_rel_err: f64,
    pub threshold: f64,
    pub passed: bool,
    pub worst_index: Option<Location>,
    /// Number of (dimension, point) cases folded into this report.
    pub cases: usize,
    pub note: Option<String>,
}

impl CheckReport {
    fn new(problem: &str, n: usize, kind: CheckKind, threshold: f64) -> Self {
        CheckReport {
            problem: problem.to_string(),
            n,
            check_kind: kind,
            max_rel_err: 0.0,
            threshold,
            passed: true,
            worst_index: None,
            cases: 1,
            note: None,
        }
    }

    fn record(&mut self, err: f64, at: Location) {
        // a NaN error sticks as the worst case
        if self.max_rel_err.is_nan() {
            return;
        }
        if err.is_nan() || err > self.max_rel_err || self.worst_index.is_none() {
            self.max_rel_err = if err.is_nan() { err } else { err.max(self.max_rel_err) };
            self.worst_index = Some(at);
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.max_rel_err <= self.threshold;
        self
    }

    /// Folds `other` (same problem and kind) into `self`, keeping the worst case.
    pub fn absorb(&mut self, other: CheckReport) {
        let worse = other.max_rel_err.is_nan()
            || (!self.max_rel_err.is_nan() && other.max_rel_err > self.max_rel_err);
        self.cases += other.cases;
        if worse {
            self.n = other.n;
            self.max_rel_err = other.max_rel_err;
            self.worst_index = other.worst_index;
            self.note = other.note.or(self.note.take());
        }
        self.passed = self.passed && other.passed;
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / f64::max(1.0, b.abs())
}

/// Central-difference gradient check with step `h`, differenced element by
/// element; the error in component `j` is relative to `max(1, |g_j|)`.
pub fn fd_gradient_check(problem: &dyn Problem, x: &[f64], h: f64, tol: f64) -> Result<CheckReport> {
    fd_gradient_check_with(ExecPolicy::Auto, problem, x, h, tol)
}

pub fn fd_gradient_check_with(
    policy: ExecPolicy,
    problem: &dyn Problem,
    x: &[f64],
    h: f64,
    tol: f64,
) -> Result<CheckReport> {
    positive_step(h)?;
    let s = eval::cps_structure(problem, x.len())?;
    let g = eval_objective_with(policy, problem, x, EvalRequest::GRADIENT, Some(&s))?
        .g
        .expect("gradient requested");
    let params = s.param_values();
    let mut touching: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.len()];
    for (i, dom) in s.eldom.iter().enumerate() {
        for (a, &j) in dom.iter().enumerate() {
            touching[j - 1].push((i, a));
        }
    }
    // only elements containing x_j change, so the difference of f is summed
    // over those elements instead of subtracting two full sums
    let fd = exec::map_indexed(policy, x.len(), |j| -> Result<f64> {
        let mut diff = 0.0;
        for &(i, a) in &touching[j] {
            let mut xi = s.gather(i, x);
            let base = xi[a];
            xi[a] = base + h;
            let up = problem.element(i + 1, &xi, &params, EvalRequest::VALUE).f;
            xi[a] = base - h;
            let down = problem.element(i + 1, &xi, &params, EvalRequest::VALUE).f;
            diff += up - down;
        }
        Ok(diff / (2.0 * h))
    });
    let mut rep = CheckReport::new(problem.name(), x.len(), CheckKind::GradFD, tol);
    for (j, d) in fd.into_iter().enumerate() {
        rep.record(rel(d?, g[j]), Location::Gradient { index: j + 1 });
    }
    Ok(rep.finish())
}

/// Central differences of the analytic gradient, symmetrized, against the
/// assembled Hessian; errors relative to `max(1, |H_ab|)`.
pub fn fd_hessian_check(problem: &dyn Problem, x: &[f64], h: f64, tol: f64) -> Result<CheckReport> {
    fd_hessian_check_with(ExecPolicy::Auto, problem, x, h, tol)
}

pub fn fd_hessian_check_with(
    policy: ExecPolicy,
    problem: &dyn Problem,
    x: &[f64],
    h: f64,
    tol: f64,
) -> Result<CheckReport> {
    positive_step(h)?;
    let n = x.len();
    let s = eval::cps_structure(problem, n)?;
    let hess = eval_objective_with(policy, problem, x, EvalRequest::ALL, Some(&s))?
        .h
        .expect("Hessian requested")
        .to_dense();
    let cols = exec::map_indexed(policy, n, |j| -> Result<Vec<f64>> {
        let g = |d: f64| {
            let mut y = x.to_vec();
            y[j] += d;
            eval_objective_with(ExecPolicy::Sequential, problem, &y, EvalRequest::GRADIENT, Some(&s))
                .map(|r| r.g.expect("gradient requested"))
        };
        let (gp, gm) = (g(h)?, g(-h)?);
        Ok(gp.iter().zip(&gm).map(|(a, b)| (a - b) / (2.0 * h)).collect())
    });
    let cols: Vec<Vec<f64>> = cols.into_iter().collect::<Result<_>>()?;
    let mut rep = CheckReport::new(problem.name(), n, CheckKind::HessFD, tol);
    for a in 0..n {
        for b in 0..=a {
            let fd = 0.5 * (cols[b][a] + cols[a][b]);
            rep.record(rel(fd, hess[a][b]), Location::Hessian { row: a + 1, col: b + 1 });
        }
    }
    Ok(rep.finish())
}

fn positive_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(OpmError::InvalidParameter(format!("step must be positive, got {h}")))
    }
}

/// `|a - b| / (1 + max(|a|, |b|))`, the consistency measure.
fn scaled(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

fn compare_results(rep: &mut CheckReport, reference: &EvalResult, assembled: &EvalResult) {
    rep.record(scaled(reference.f, assembled.f), Location::Value);
    if let (Some(a), Some(b)) = (&reference.g, &assembled.g) {
        for (j, (u, v)) in a.iter().zip(b).enumerate() {
            rep.record(scaled(*u, *v), Location::Gradient { index: j + 1 });
        }
    }
    if let (Some(a), Some(b)) = (&reference.h, &assembled.h) {
        let (a, b) = (a.to_dense(), b.to_dense());
        for r in 0..a.len() {
            for c in 0..=r {
                rep.record(scaled(a[r][c], b[r][c]), Location::Hessian { row: r + 1, col: c + 1 });
            }
        }
    }
}

/// Plain dense sum of element contributions, used as the reference when a
/// problem has no independent whole-function evaluator.
fn dense_element_sum(problem: &dyn Problem, s: &CpsStructure, x: &[f64]) -> EvalResult {
    let n = x.len();
    let params = s.param_values();
    let mut f = 0.0;
    let mut g = vec![0.0; n];
    let mut h = vec![vec![0.0; n]; n];
    for (i, dom) in s.eldom.iter().enumerate() {
        let xi: Vec<f64> = dom.iter().map(|&j| x[j - 1]).collect();
        let e = problem.element(i + 1, &xi, &params, EvalRequest::ALL);
        f += e.f;
        let (eg, eh) = (e.g.expect("gradient"), e.h.expect("Hessian"));
        for (a, &ja) in dom.iter().enumerate() {
            g[ja - 1] += eg[a];
            for (b, &jb) in dom.iter().enumerate() {
                h[ja - 1][jb - 1] += eh.get(a, b);
            }
        }
    }
    let trips: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|r| (0..=r).map(move |c| (r, c)))
        .filter(|&(r, c)| h[r][c] != 0.0)
        .map(|(r, c)| (r + 1, c + 1, h[r][c]))
        .collect();
    EvalResult {
        f,
        g: Some(g),
        h: Some(crate::sparse::SparseSymMatrix::from_triplets(n, trips).expect("in range")),
    }
}

/// Compares the independent evaluator (or, without one, a dense element
/// sum) with the sparse element assembly at `trials` points
/// `x0 + U(-1, 1)`; fixed variables keep their values.
pub fn cps_consistency_check(
    problem: &dyn Problem,
    n: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    if trials == 0 {
        return Err(OpmError::InvalidParameter("trials must be at least 1".into()));
    }
    let setup = eval::setup(problem, &[n as f64])?;
    let s = eval::cps_structure(problem, n)?;
    let mut rng = rng_for(seed, problem.name(), n);
    let mut rep = CheckReport::new(problem.name(), n, CheckKind::CpsConsistency, tol);
    rep.cases = trials;
    let independent = problem.full_objective(&setup.x0, EvalRequest::VALUE).is_some();
    rep.note = Some(if independent {
        "independent whole-function evaluator".into()
    } else {
        "dense element sum (no independent evaluator)".into()
    });
    for _ in 0..trials {
        let x = perturb(&setup, 1.0, &mut rng);
        let assembled = eval::eval_objective(problem, &x, EvalRequest::ALL, Some(&s))?;
        let reference = if independent {
            problem.full_objective(&x, EvalRequest::ALL).expect("evaluator present")
        } else {
            dense_element_sum(problem, &s, &x)
        };
        compare_results(&mut rep, &reference, &assembled);
    }
    Ok(rep.finish())
}

/// Every Hessian position that can be nonzero must lie inside some element
/// block. Positions come from the assembled pattern, the independent
/// evaluator (when present) and a finite-difference Hessian at a perturbed
/// point. `max_rel_err` counts the positions outside every block.
pub fn sparsity_check(problem: &dyn Problem, n: usize, seed: u64) -> Result<CheckReport> {
    let setup = eval::setup(problem, &[n as f64])?;
    let s = eval::cps_structure(problem, n)?;
    let mut covered = HashSet::new();
    for dom in &s.eldom {
        for &a in dom {
            for &b in dom {
                if b <= a {
                    covered.insert((a, b));
                }
            }
        }
    }
    let mut rng = rng_for(seed, problem.name(), n);
    let x = perturb(&setup, 0.5, &mut rng);
    let mut positions: Vec<(usize, usize)> = Vec::new();
    let assembled = eval::eval_objective(problem, &x, EvalRequest::ALL, Some(&s))?;
    let h = assembled.h.expect("Hessian requested");
    positions.extend(h.entries().iter().map(|t| (t.row, t.col)));
    if let Some(full) = problem.full_objective(&x, EvalRequest::ALL) {
        let hf = full.h.expect("Hessian requested");
        positions.extend(hf.entries().iter().filter(|t| t.value != 0.0).map(|t| (t.row, t.col)));
    }
    let scale = h.entries().iter().fold(1.0f64, |m, t| m.max(t.value.abs()));
    let step = 1e-5;
    for j in 0..n {
        let g = |d: f64| -> Result<Vec<f64>> {
            let mut y = x.clone();
            y[j] += d;
            Ok(eval::eval_objective(problem, &y, EvalRequest::GRADIENT, Some(&s))?
                .g
                .expect("gradient requested"))
        };
        let (gp, gm) = (g(step)?, g(-step)?);
        for i in j..n {
            if ((gp[i] - gm[i]) / (2.0 * step)).abs() > 1e-6 * scale {
                positions.push((i + 1, j + 1));
            }
        }
    }
    let mut rep = CheckReport::new(problem.name(), n, CheckKind::Sparsity, 0.0);
    let outside: Vec<_> = positions.iter().filter(|p| !covered.contains(p)).collect();
    rep.max_rel_err = outside.len() as f64;
    rep.worst_index = outside.first().map(|&&(row, col)| Location::Hessian { row, col });
    rep.note = Some(format!("{} structural positions inside {} blocks", positions.len(), s.n_elements()));
    Ok(rep.finish())
}

/// One metadata report per name: the derived catalog row at the default
/// dimension against the fixture row.
pub fn golden_table_check(registry: &Registry, table: &GoldenTable, names: &[&str]) -> Vec<CheckReport> {
    names
        .iter()
        .map(|&name| metadata_report(registry, table, name))
        .collect()
}

fn metadata_report(registry: &Registry, table: &GoldenTable, name: &str) -> CheckReport {
    let mut rep = CheckReport::new(name, 0, CheckKind::Metadata, 0.0);
    let fail = |mut rep: CheckReport, why: String| {
        rep.max_rel_err = f64::INFINITY;
        rep.note = Some(why);
        rep.finish()
    };
    let problem = match registry.lookup(name) {
        Ok(p) => p,
        Err(e) => return fail(rep, e.to_string()),
    };
    let Some(expected) = table.row(name) else {
        return fail(rep, format!("no fixture row for '{name}'"));
    };
    let row = match catalog_row(problem, None) {
        Ok(r) => r,
        Err(e) => return fail(rep, e.to_string()),
    };
    rep.n = row.n;
    let diff = expected.diff(&row);
    rep.max_rel_err = diff.len() as f64;
    if let Some(first) = diff.first() {
        rep.worst_index = Some(Location::Field {
            column: first.to_string(),
        });
        rep.note = Some(format!("columns differ: {}", diff.join(", ")));
    }
    rep.finish()
}

/// Deterministic generator for one (problem, dimension) pair, independent of
/// the order in which problems are checked.
pub fn rng_for(seed: u64, name: &str, n: usize) -> ChaCha8Rng {
    // FNV-1a over the name, mixed with the dimension
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h ^ (n as u64).rotate_left(32))
}

/// `x0 + U(-radius, radius)` on the free variables.
pub fn perturb(setup: &crate::cps::SetupResult, radius: f64, rng: &mut impl Rng) -> Vec<f64> {
    setup
        .x0
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if setup.is_fixed(i) {
                v
            } else {
                v + rng.gen_range(-radius..radius)
            }
        })
        .collect()
}

/// Settings for the per-problem suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub grad_step: f64,
    pub grad_tol: f64,
    pub hess_step: f64,
    pub hess_tol: f64,
    pub cps_trials: usize,
    pub cps_tol: f64,
    /// Perturbed points per dimension, on top of `x0`.
    pub perturbed_points: usize,
    pub perturbation: f64,
    /// Extra admissible dimensions for variable-size problems.
    pub extra_dims: usize,
    /// When set, only this dimension is checked.
    pub dimension: Option<usize>,
    pub policy: ExecPolicy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            grad_step: 1e-6,
            grad_tol: 1e-6,
            hess_step: 1e-5,
            hess_tol: 1e-5,
            cps_trials: 5,
            cps_tol: 1e-12,
            perturbed_points: 3,
            perturbation: 0.5,
            extra_dims: 2,
            dimension: None,
            policy: ExecPolicy::Auto,
        }
    }
}

/// Default dimension plus up to `extra` other admissible ones, drawn from
/// the admissible sizes up to `max(2 default, 30)`.
pub fn check_dimensions(problem: &dyn Problem, extra: usize, seed: u64) -> Vec<usize> {
    let meta = problem.meta();
    let mut dims = vec![meta.default_n];
    if !meta.dim_rule.is_variable() {
        return dims;
    }
    let limit = (2 * meta.default_n).max(30);
    let mut pool: Vec<usize> = meta
        .dim_rule
        .admissible_up_to(limit)
        .into_iter()
        .filter(|&n| n != meta.default_n)
        .collect();
    let mut rng = rng_for(seed, meta.name, 0);
    while dims.len() < extra + 1 && !pool.is_empty() {
        let k = rng.gen_range(0..pool.len());
        dims.push(pool.swap_remove(k));
    }
    dims
}

/// Runs the requested suites on one problem. Each suite yields one report
/// holding its worst case over all dimensions and points.
pub fn check_problem(
    problem: &dyn Problem,
    kinds: &[CheckKind],
    cfg: &SuiteConfig,
    registry: &Registry,
    table: &GoldenTable,
) -> Result<Vec<CheckReport>> {
    let dims = match cfg.dimension {
        Some(n) => {
            eval::check_dimension(problem, n)?;
            vec![n]
        }
        None => check_dimensions(problem, cfg.extra_dims, cfg.seed),
    };
    let mut out = Vec::new();
    for &kind in kinds {
        let mut merged: Option<CheckReport> = None;
        let mut add = |r: CheckReport| match merged.as_mut() {
            Some(m) => m.absorb(r),
            None => merged = Some(r),
        };
        match kind {
            CheckKind::GradFD | CheckKind::HessFD => {
                for &n in &dims {
                    for x in check_points(problem, n, cfg)? {
                        add(if kind == CheckKind::GradFD {
                            fd_gradient_check_with(cfg.policy, problem, &x, cfg.grad_step, cfg.grad_tol)?
                        } else {
                            fd_hessian_check_with(cfg.policy, problem, &x, cfg.hess_step, cfg.hess_tol)?
                        });
                    }
                }
            }
            CheckKind::CpsConsistency => {
                for &n in &dims {
                    add(cps_consistency_check(problem, n, cfg.cps_trials, cfg.seed, cfg.cps_tol)?);
                }
            }
            CheckKind::Sparsity => {
                for &n in &dims {
                    add(sparsity_check(problem, n, cfg.seed)?);
                }
            }
            CheckKind::Metadata => {
                add(metadata_report(registry, table, problem.name()));
            }
        }
        out.extend(merged);
    }
    Ok(out)
}

/// `x0` followed by `perturbed_points` draws of `x0 + U(-p, p)`.
pub fn check_points(problem: &dyn Problem, n: usize, cfg: &SuiteConfig) -> Result<Vec<Vec<f64>>> {
    let setup = eval::setup(problem, &[n as f64])?;
    let mut rng = rng_for(cfg.seed, problem.name(), n);
    let mut pts = vec![setup.x0.clone()];
    for _ in 0..cfg.perturbed_points {
        pts.push(perturb(&setup, cfg.perturbation, &mut rng));
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::global;

    #[test]
    fn rosenbr_gradient_at_standard_start() {
        let p = global().lookup("rosenbr").unwrap();
        let r = fd_gradient_check(p, &[-1.2, 1.0], 1e-6, 1e-6).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.check_kind, CheckKind::GradFD);
    }

    #[test]
    fn rosenbr_hessian_at_standard_start() {
        let p = global().lookup("rosenbr").unwrap();
        let r = fd_hessian_check(p, &[-1.2, 1.0], 1e-5, 1e-5).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn report_invariant_holds() {
        let mut r = CheckReport::new("x", 2, CheckKind::GradFD, 1e-6);
        r.record(2e-6, Location::Gradient { index: 2 });
        let r = r.finish();
        assert!(!r.passed);
        assert_eq!(r.worst_index, Some(Location::Gradient { index: 2 }));
    }

    #[test]
    fn nan_is_never_a_pass() {
        let mut r = CheckReport::new("x", 2, CheckKind::GradFD, 1e-6);
        r.record(0.0, Location::Value);
        r.record(f64::NAN, Location::Gradient { index: 1 });
        r.record(0.5, Location::Gradient { index: 2 });
        let r = r.finish();
        assert!(r.max_rel_err.is_nan());
        assert!(!r.passed);
    }

    #[test]
    fn nonpositive_step_is_rejected() {
        let p = global().lookup("booth").unwrap();
        assert!(fd_gradient_check(p, &[0.0, 0.0], 0.0, 1e-6).is_err());
    }

    #[test]
    fn dimensions_include_default_and_extras() {
        let reg = global();
        let d = check_dimensions(reg.lookup("lminsurf").unwrap(), 2, DEFAULT_SEED);
        assert_eq!(d[0], 16);
        assert_eq!(d.len(), 3);
        assert!(d.iter().all(|&n| [9, 16, 25].contains(&n)));
        assert_eq!(check_dimensions(reg.lookup("booth").unwrap(), 2, 1), vec![2]);
    }

    #[test]
    fn check_kind_keys_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(CheckKind::from_key(k.key()), Some(k));
        }
    }
}
