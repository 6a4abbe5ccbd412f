use std::sync::atomic::{AtomicUsize, Ordering};

use opm_core::solver::{assemble_model, steihaug_cg};
use opm_core::{
    cps_structure, lookup, setup, solve, Bounds, CpsStructure, DenseSymMatrix, ElementEvalResult, EvalRequest,
    Method, ParamValue, Problem, ProblemMeta, SolveOptions, Status,
};

/// Counts element calls by the outputs they asked for.
struct Counting {
    inner: &'static dyn Problem,
    gradients: AtomicUsize,
    hessians: AtomicUsize,
}

impl Counting {
    fn new(name: &str) -> Self {
        Counting {
            inner: lookup(name).unwrap(),
            gradients: AtomicUsize::new(0),
            hessians: AtomicUsize::new(0),
        }
    }
}

impl Problem for Counting {
    fn meta(&self) -> &ProblemMeta {
        self.inner.meta()
    }
    fn start(&self, n: usize) -> Vec<f64> {
        self.inner.start(n)
    }
    fn bounds(&self, n: usize) -> Bounds {
        self.inner.bounds(n)
    }
    fn structure(&self, n: usize) -> CpsStructure {
        self.inner.structure(n)
    }
    fn element(&self, i: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        self.gradients.fetch_add(req.gradient as usize, Ordering::Relaxed);
        self.hessians.fetch_add(req.hessian as usize, Ordering::Relaxed);
        self.inner.element(i, x, p, req)
    }
}

/// Booth with a genuine lower bound on x1.
struct BoundedBooth;

impl Problem for BoundedBooth {
    fn meta(&self) -> &ProblemMeta {
        lookup("booth").unwrap().meta()
    }
    fn start(&self, n: usize) -> Vec<f64> {
        lookup("booth").unwrap().start(n)
    }
    fn bounds(&self, n: usize) -> Bounds {
        let mut b = Bounds::free(n);
        b.lower[0] = -5.0;
        b
    }
    fn structure(&self, n: usize) -> CpsStructure {
        lookup("booth").unwrap().structure(n)
    }
    fn element(&self, i: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        lookup("booth").unwrap().element(i, x, p, req)
    }
}

fn defaults() -> SolveOptions {
    SolveOptions::default()
}

#[test]
fn rosenbr_at_the_default_size() {
    let r = solve(lookup("rosenbr").unwrap(), Some(2), &defaults()).unwrap();
    assert_eq!(r.status, Status::Converged);
    assert!(r.f_final <= 1e-12);
}

#[test]
fn rosenbr_with_twenty_variables() {
    let r = solve(lookup("rosenbr").unwrap(), Some(20), &defaults()).unwrap();
    assert_eq!(r.status, Status::Converged);
    assert!(r.f_final <= 1e-10);
}

#[test]
fn dixmaan_family_reaches_one() {
    for name in ["dixmaana", "dixmaane", "dixmaani", "dixmaanl"] {
        let r = solve(lookup(name).unwrap(), None, &defaults()).unwrap();
        assert_eq!(r.status, Status::Converged, "{name}");
        assert!((r.f_final - 1.0).abs() <= 1e-8, "{name}: {}", r.f_final);
    }
}

#[test]
fn lminsurf_keeps_the_boundary() {
    let p = lookup("lminsurf").unwrap();
    let s = setup(p, &[16.0]).unwrap();
    let opts = SolveOptions {
        trace: true,
        ..defaults()
    };
    let r = solve(p, Some(16), &opts).unwrap();
    assert_eq!(r.status, Status::Converged);
    assert!((r.f_final - 9.0).abs() <= 1e-6);
    for i in s.fixed_indices() {
        assert_eq!(r.x_final[i], s.x0[i]);
    }
    assert_eq!(r.trace.len(), r.iterations);
}

#[test]
fn published_kowosb_value_is_not_the_minimum() {
    // the least-squares minimum is about 3.0751e-4, a tenth of the listed value
    let r = solve(lookup("kowosb").unwrap(), None, &defaults()).unwrap();
    assert_eq!(r.status, Status::Converged);
    assert!((r.f_final - 3.07505604e-4).abs() < 1e-11, "{}", r.f_final);
}

#[test]
fn both_methods_agree_on_rosenbr() {
    let p = lookup("rosenbr").unwrap();
    let newton = solve(p, Some(4), &defaults()).unwrap();
    let pbfgs = solve(
        p,
        Some(4),
        &SolveOptions {
            method: Method::PartitionedBfgsTR,
            ..defaults()
        },
    )
    .unwrap();
    assert_eq!(pbfgs.status, Status::Converged);
    assert!(pbfgs.f_final <= 1e-10);
    assert_eq!(pbfgs.n_hess_evals, 0);
    for (a, b) in newton.x_final.iter().zip(&pbfgs.x_final) {
        assert!((a - b).abs() < 1e-5);
    }
}

#[test]
fn partitioned_method_never_asks_elements_for_hessians() {
    let p = Counting::new("woods");
    let opts = SolveOptions {
        method: Method::PartitionedBfgsTR,
        ..defaults()
    };
    let r = solve(&p, None, &opts).unwrap();
    assert!(r.f_final < 1e-8);
    assert_eq!(p.hessians.load(Ordering::Relaxed), 0);
    assert!(p.gradients.load(Ordering::Relaxed) > 0);
}

#[test]
fn newton_trial_points_are_value_only() {
    let p = Counting::new("rosenbr");
    let opts = SolveOptions {
        trace: true,
        ..defaults()
    };
    let r = solve(&p, Some(6), &opts).unwrap();
    let elements = 5;
    assert_eq!(p.hessians.load(Ordering::Relaxed), r.n_hess_evals * elements);
    assert_eq!(p.gradients.load(Ordering::Relaxed), r.n_grad_evals * elements);
    assert!(r.n_obj_evals > r.n_grad_evals);
}

#[test]
fn genuine_bounds_are_rejected() {
    let e = solve(&BoundedBooth, None, &defaults()).unwrap_err();
    assert_eq!(e.kind(), "BoundsUnsupported");
}

#[test]
fn model_assembly_sums_overlapping_blocks() {
    let s = cps_structure(lookup("rosenbr").unwrap(), 3).unwrap();
    let b = vec![DenseSymMatrix::identity(2), DenseSymMatrix::identity(2)];
    let m = assemble_model(&s, &b).unwrap();
    assert_eq!(m.to_dense(), vec![vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 1.0]]);
}

#[test]
fn steihaug_step_stays_in_the_region() {
    let a = DenseSymMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, -2.0]]).unwrap();
    let out = steihaug_cg(|p| a.matvec(p), &[1.0, 1.0], 0.5, 1e-10, 10);
    let norm = out.step.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!(norm <= 0.5 + 1e-12);
}

#[test]
fn results_round_trip_through_json() {
    let r = solve(lookup("booth").unwrap(), None, &defaults()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("\"method\":\"NewtonTR\""));
    let back: opm_core::SolveResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
