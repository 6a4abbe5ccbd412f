use super::partitioned::partitioned_update;
use super::steihaug::steihaug_cg;
use super::{dot, norm2, Method, SolveOptions, SolveResult, Status, TraceRecord, UpdateStats};
use crate::cps::{CpsStructure, ElementEvalResult, EvalRequest};
use crate::error::Result;
use crate::eval;
use crate::exec::ExecPolicy;
use crate::problem::Problem;
use crate::sparse::{DenseSymMatrix, SparseSymMatrix};

/// Assembles element curvature approximations into the global model Hessian.
pub fn assemble_model(structure: &CpsStructure, b: &[DenseSymMatrix]) -> Result<SparseSymMatrix> {
    let pieces: Vec<ElementEvalResult> = b
        .iter()
        .map(|bi| ElementEvalResult {
            f: 0.0,
            g: None,
            h: Some(bi.clone()),
        })
        .collect();
    let r = eval::assemble(structure, &pieces, structure.n, EvalRequest::HESSIAN_ONLY)?;
    Ok(r.h.expect("Hessian requested"))
}

#[derive(Default)]
struct Counters {
    obj: usize,
    grad: usize,
    hess: usize,
}

impl Counters {
    fn count(&mut self, req: EvalRequest) {
        self.obj += 1;
        self.grad += req.gradient as usize;
        self.hess += req.hessian as usize;
    }
}

/// Objective, gradient and element gradients for the partitioned method.
struct ElementState {
    f: f64,
    g: Vec<f64>,
    grads: Vec<Vec<f64>>,
}

fn element_state(problem: &dyn Problem, s: &CpsStructure, x: &[f64]) -> Result<ElementState> {
    let els = eval::eval_elements(ExecPolicy::Auto, problem, s, x, EvalRequest::GRADIENT);
    let total = eval::assemble(s, &els, x.len(), EvalRequest::GRADIENT)?;
    Ok(ElementState {
        f: total.f,
        g: total.g.expect("gradient requested"),
        grads: els.into_iter().map(|e| e.g.expect("gradient requested")).collect(),
    })
}

fn mask(v: &mut [f64], free: &[bool]) {
    for (vi, &fr) in v.iter_mut().zip(free) {
        if !fr {
            *vi = 0.0;
        }
    }
}

/// Length of the unconstrained minimizer of the model along `-g`, or 1
/// when the model has no positive curvature there.
fn cauchy_length(model: &SparseSymMatrix, g: &[f64], free: &[bool]) -> f64 {
    let mut bg = model.matvec(g);
    mask(&mut bg, free);
    let (gg, gbg) = (dot(g, g), dot(g, &bg));
    if gbg > 0.0 {
        gg * gg.sqrt() / gbg
    } else {
        1.0
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, a| m.max(a.abs()))
}

pub(super) fn run(
    problem: &dyn Problem,
    x0: Vec<f64>,
    free: &[bool],
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let n = x0.len();
    let s = eval::cps_structure(problem, n)?;
    let mut calls = Counters::default();
    let mut x = x0;

    let mut f;
    let mut g;
    let mut hess = None;
    let mut elements = None;
    let mut approx: Vec<DenseSymMatrix> = Vec::new();
    let mut stats = UpdateStats::default();
    match opts.method {
        Method::NewtonTR => {
            let r = eval::eval_objective(problem, &x, EvalRequest::ALL, Some(&s))?;
            calls.count(EvalRequest::ALL);
            f = r.f;
            g = r.g.expect("gradient requested");
            hess = r.h;
        }
        Method::PartitionedBfgsTR => {
            let st = element_state(problem, &s, &x)?;
            calls.count(EvalRequest::GRADIENT);
            f = st.f;
            g = st.g.clone();
            elements = Some(st);
            approx = s.eldom.iter().map(|d| DenseSymMatrix::identity(d.len())).collect();
        }
    }
    mask(&mut g, free);

    let cg_max = opts.cg_max_iters.unwrap_or(2 * n).max(1);
    let mut radius = match opts.initial_radius {
        Some(r) => r,
        None => {
            let model = match opts.method {
                Method::NewtonTR => hess.clone().expect("Newton keeps a Hessian"),
                Method::PartitionedBfgsTR => assemble_model(&s, &approx)?,
            };
            cauchy_length(&model, &g, free).max(1.0).min(opts.max_radius)
        }
    };
    let mut iterations = 0;
    let mut trace = Vec::new();

    let status = loop {
        if inf_norm(&g) <= opts.grad_tol {
            break Status::Converged;
        }
        if iterations >= opts.max_iters {
            break Status::IterLimit;
        }
        if radius <= f64::EPSILON * norm2(&x).max(1.0) {
            break Status::Stalled;
        }
        iterations += 1;

        let model = match opts.method {
            Method::NewtonTR => hess.clone().expect("Newton keeps a Hessian"),
            Method::PartitionedBfgsTR => assemble_model(&s, &approx)?,
        };
        let matvec = |p: &[f64]| {
            let mut y = model.matvec(p);
            mask(&mut y, free);
            y
        };
        let rel_tol = opts.cg_tol.min(norm2(&g).sqrt());
        let step = steihaug_cg(matvec, &g, radius, rel_tol, cg_max).step;
        let step_norm = norm2(&step);
        let pred = -(dot(&g, &step) + 0.5 * dot(&step, &matvec(&step)));
        let xt: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();

        let (ft, trial_state) = match opts.method {
            Method::NewtonTR => {
                let r = eval::eval_objective(problem, &xt, EvalRequest::VALUE, Some(&s))?;
                calls.count(EvalRequest::VALUE);
                (r.f, None)
            }
            Method::PartitionedBfgsTR => {
                let st = element_state(problem, &s, &xt)?;
                calls.count(EvalRequest::GRADIENT);
                (st.f, Some(st))
            }
        };

        if let (Some(cur), Some(trial)) = (elements.as_ref(), trial_state.as_ref()) {
            if trial.grads.iter().flatten().all(|v| v.is_finite()) {
                let si: Vec<Vec<f64>> = s
                    .eldom
                    .iter()
                    .map(|d| d.iter().map(|&j| step[j - 1]).collect())
                    .collect();
                let yi: Vec<Vec<f64>> = trial
                    .grads
                    .iter()
                    .zip(&cur.grads)
                    .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect())
                    .collect();
                let out = partitioned_update(&mut approx, &si, &yi, opts.curvature_floor)?;
                let applied = out.applied.iter().filter(|&&a| a).count();
                stats.applied += applied;
                stats.skipped += out.applied.len() - applied;
                stats.max_secant_residual = stats.max_secant_residual.max(out.max_secant_residual);
            }
        }

        let ared = f - ft;
        let rho = if pred > 0.0 { ared / pred } else { f64::NEG_INFINITY };
        let accepted = ft.is_finite() && ared > 0.0 && rho >= opts.eta_accept;
        if accepted {
            x = xt;
            f = ft;
            match opts.method {
                Method::NewtonTR => {
                    let r = eval::eval_objective(problem, &x, EvalRequest::ALL, Some(&s))?;
                    calls.count(EvalRequest::ALL);
                    g = r.g.expect("gradient requested");
                    hess = r.h;
                }
                Method::PartitionedBfgsTR => {
                    let st = trial_state.expect("trial state evaluated");
                    g = st.g.clone();
                    elements = Some(st);
                }
            }
            mask(&mut g, free);
            if rho > 0.75 && step_norm >= 0.99 * radius {
                radius = (2.0 * radius).min(opts.max_radius);
            }
        } else {
            radius = 0.5 * radius.min(step_norm);
        }
        if opts.trace {
            trace.push(TraceRecord {
                iter: iterations,
                f,
                grad_norm: inf_norm(&g),
                radius,
                step_norm,
                accepted,
            });
        }
    };

    Ok(SolveResult {
        problem: problem.name().to_string(),
        n,
        method: opts.method,
        grad_norm: inf_norm(&g),
        x_final: x,
        f_final: f,
        iterations,
        n_obj_evals: calls.obj,
        n_grad_evals: calls.grad,
        n_hess_evals: calls.hess,
        status,
        trace,
        updates: (opts.method == Method::PartitionedBfgsTR).then_some(stats),
    })
}
