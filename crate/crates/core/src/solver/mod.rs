//! Trust-region solvers built on the element structure: Newton with the
//! assembled sparse Hessian, and partitioned BFGS with one dense curvature
//! approximation per element.

mod partitioned;
mod steihaug;
mod trust;

use serde::{Deserialize, Serialize};

use crate::error::{OpmError, Result};
use crate::eval;
use crate::problem::Problem;

pub use partitioned::{partitioned_update, UpdateOutcome};
pub use steihaug::{steihaug_cg, CgOutcome};
pub use trust::assemble_model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Method {
    #[default]
    NewtonTR,
    #[serde(rename = "PartitionedBFGS_TR")]
    PartitionedBfgsTR,
}

impl Method {
    pub fn key(self) -> &'static str {
        match self {
            Method::NewtonTR => "newton",
            Method::PartitionedBfgsTR => "pbfgs",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub max_iters: usize,
    /// Stop once the infinity norm of the free gradient is at most this.
    pub grad_tol: f64,
    /// `None` starts from the length of the Cauchy step at `x0` (at least 1),
    /// capped at `max_radius`.
    pub initial_radius: Option<f64>,
    pub max_radius: f64,
    pub eta_accept: f64,
    /// CG stops when the residual drops below `min(cg_tol, sqrt(||g||))`
    /// times `||g||`.
    pub cg_tol: f64,
    /// `None` means twice the number of variables.
    pub cg_max_iters: Option<usize>,
    pub curvature_floor: f64,
    pub method: Method,
    /// Record one trace entry per iteration.
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_iters: 500,
            grad_tol: 1e-8,
            initial_radius: None,
            max_radius: 1e6,
            eta_accept: 0.1,
            cg_tol: 1e-10,
            cg_max_iters: None,
            curvature_floor: 1e-10,
            method: Method::NewtonTR,
            trace: false,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(OpmError::InvalidOptions(m.to_string()));
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if !(self.grad_tol >= 0.0) {
            return bad("grad_tol must be nonnegative");
        }
        if !(self.max_radius > 0.0) {
            return bad("max_radius must be positive");
        }
        if let Some(r) = self.initial_radius {
            if !(r > 0.0 && r <= self.max_radius) {
                return bad("initial_radius must lie in (0, max_radius]");
            }
        }
        if !(self.eta_accept > 0.0 && self.eta_accept < 1.0) {
            return bad("eta_accept must lie in (0, 1)");
        }
        if !(self.cg_tol > 0.0) {
            return bad("cg_tol must be positive");
        }
        if self.cg_max_iters == Some(0) {
            return bad("cg_max_iters must be positive");
        }
        if !(self.curvature_floor >= 0.0) {
            return bad("curvature_floor must be nonnegative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Converged,
    IterLimit,
    /// The radius collapsed without meeting the gradient tolerance.
    Stalled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub f: f64,
    pub grad_norm: f64,
    pub radius: f64,
    pub step_norm: f64,
    pub accepted: bool,
}

/// Bookkeeping of the partitioned updates over a whole run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UpdateStats {
    pub applied: usize,
    pub skipped: usize,
    /// Largest `||B+ s - y|| / ||y||` right after an applied update.
    pub max_secant_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub problem: String,
    pub n: usize,
    pub method: Method,
    pub x_final: Vec<f64>,
    pub f_final: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub n_obj_evals: usize,
    pub n_grad_evals: usize,
    pub n_hess_evals: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<TraceRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub updates: Option<UpdateStats>,
}

/// Minimizes `problem` at dimension `n` (default when `None`) from its
/// standard start. Fixed variables stay at their start values; any other
/// finite bound is rejected.
pub fn solve(problem: &dyn Problem, n: Option<usize>, opts: &SolveOptions) -> Result<SolveResult> {
    opts.validate()?;
    let n = n.unwrap_or(problem.meta().default_n);
    let setup = eval::setup(problem, &[n as f64])?;
    let bounded = (0..n).any(|i| {
        !setup.is_fixed(i) && (setup.xlower[i].is_finite() || setup.xupper[i].is_finite())
    });
    if bounded {
        return Err(OpmError::BoundsUnsupported(problem.name().to_string()));
    }
    let free: Vec<bool> = (0..n).map(|i| !setup.is_fixed(i)).collect();
    trust::run(problem, setup.x0, &free, opts)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::global;

    fn run(name: &str, n: Option<usize>, opts: &SolveOptions) -> SolveResult {
        solve(global().lookup(name).unwrap(), n, opts).unwrap()
    }

    #[test]
    fn newton_solves_rosenbr() {
        let r = run("rosenbr", None, &SolveOptions::default());
        assert_eq!(r.status, Status::Converged);
        assert!(r.f_final <= 1e-10);
        assert!(r.x_final.iter().all(|v| (v - 1.0).abs() < 1e-6));
    }

    #[test]
    fn chained_rosenbr_has_a_second_basin() {
        // from the standard start at n = 30 Newton settles near x1 = -1
        let r = run("rosenbr", Some(30), &SolveOptions::default());
        assert!((r.f_final - 3.9866).abs() < 1e-3, "{}", r.f_final);
        assert!(r.x_final[0] < -0.99);
    }

    #[test]
    fn quadratics_take_few_iterations() {
        for name in ["booth", "tridia", "zangwil2", "zangwil3"] {
            let r = run(name, None, &SolveOptions::default());
            assert_eq!(r.status, Status::Converged, "{name}");
            assert!(r.iterations <= 3, "{name}: {}", r.iterations);
        }
    }

    #[test]
    fn accepted_iterates_never_increase_f() {
        let opts = SolveOptions { trace: true, ..SolveOptions::default() };
        for name in ["rosenbr", "woods", "beale"] {
            let r = run(name, None, &opts);
            let mut last = f64::INFINITY;
            for t in &r.trace {
                assert!(t.f <= last, "{name} iteration {}", t.iter);
                last = t.f;
            }
        }
    }

    #[test]
    fn fixed_variables_keep_their_values() {
        let p = global().lookup("lminsurf").unwrap();
        let setup = eval::setup(p, &[25.0]).unwrap();
        let r = solve(p, Some(25), &SolveOptions::default()).unwrap();
        for i in setup.fixed_indices() {
            assert_eq!(r.x_final[i], setup.x0[i]);
        }
        assert!((r.f_final - 9.0).abs() < 1e-6);
    }

    #[test]
    fn partitioned_bfgs_needs_no_hessian() {
        let opts = SolveOptions {
            method: Method::PartitionedBfgsTR,
            ..SolveOptions::default()
        };
        for n in [4, 10] {
            let r = run("rosenbr", Some(n), &opts);
            assert!(r.f_final <= 1e-10, "n = {n}: {}", r.f_final);
            assert_eq!(r.n_hess_evals, 0);
            let stats = r.updates.unwrap();
            assert!(stats.applied > 0);
            assert!(stats.max_secant_residual <= 1e-10);
        }
    }

    #[test]
    fn newton_counts_one_hessian_per_accepted_step() {
        let opts = SolveOptions { trace: true, ..SolveOptions::default() };
        let r = run("rosenbr", Some(4), &opts);
        let accepted = r.trace.iter().filter(|t| t.accepted).count();
        assert_eq!(r.n_hess_evals, accepted + 1);
        assert_eq!(r.n_obj_evals, r.iterations + accepted + 1);
    }

    #[test]
    fn iteration_limit_is_reported() {
        let opts = SolveOptions { max_iters: 2, ..SolveOptions::default() };
        let r = run("rosenbr", Some(10), &opts);
        assert_eq!(r.status, Status::IterLimit);
        assert_eq!(r.iterations, 2);
    }

    #[test]
    fn invalid_options_are_rejected() {
        let p = global().lookup("rosenbr").unwrap();
        for opts in [
            SolveOptions { eta_accept: 1.0, ..SolveOptions::default() },
            SolveOptions { initial_radius: Some(1e7), ..SolveOptions::default() },
            SolveOptions { max_iters: 0, ..SolveOptions::default() },
        ] {
            assert_eq!(solve(p, None, &opts).unwrap_err().kind(), "InvalidOptions");
        }
    }

    #[test]
    fn method_names_serialize_as_published() {
        let s = serde_json::to_string(&Method::PartitionedBfgsTR).unwrap();
        assert_eq!(s, "\"PartitionedBFGS_TR\"");
    }
}
