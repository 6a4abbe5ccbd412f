use super::{dot, norm2};

#[derive(Debug, Clone, PartialEq)]
pub struct CgOutcome {
    pub step: Vec<f64>,
    pub iterations: usize,
    /// The step was cut at the trust-region boundary, either by negative
    /// curvature or by leaving the region.
    pub on_boundary: bool,
}

/// Positive `tau` with `||z + tau d|| = radius`.
fn to_boundary(z: &[f64], d: &[f64], radius: f64) -> f64 {
    let a = dot(d, d);
    let b = 2.0 * dot(z, d);
    let c = dot(z, z) - radius * radius;
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    // stable form of the larger root
    if b >= 0.0 {
        (2.0 * c) / (-b - disc).min(-f64::MIN_POSITIVE)
    } else {
        (-b + disc) / (2.0 * a)
    }
}

fn axpy(z: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
    z.iter().zip(d).map(|(a, b)| a + t * b).collect()
}

/// Steihaug's truncated conjugate gradient for `min g.p + p.Bp/2` subject
/// to `||p|| <= radius`. `matvec` applies `B`; CG stops once the residual
/// norm is below `rel_tol * ||g||`.
pub fn steihaug_cg(
    matvec: impl Fn(&[f64]) -> Vec<f64>,
    g: &[f64],
    radius: f64,
    rel_tol: f64,
    max_iters: usize,
) -> CgOutcome {
    let n = g.len();
    let mut z = vec![0.0; n];
    let mut r = g.to_vec();
    let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
    let gnorm = norm2(g);
    let stop = rel_tol * gnorm;
    let mut rr = dot(&r, &r);
    if gnorm == 0.0 {
        return CgOutcome { step: z, iterations: 0, on_boundary: false };
    }
    for it in 1..=max_iters {
        let bd = matvec(&d);
        let dbd = dot(&d, &bd);
        if dbd <= 0.0 {
            let tau = to_boundary(&z, &d, radius);
            return CgOutcome { step: axpy(&z, tau, &d), iterations: it, on_boundary: true };
        }
        let alpha = rr / dbd;
        let z_next = axpy(&z, alpha, &d);
        if norm2(&z_next) >= radius {
            let tau = to_boundary(&z, &d, radius);
            return CgOutcome { step: axpy(&z, tau, &d), iterations: it, on_boundary: true };
        }
        for (ri, bi) in r.iter_mut().zip(&bd) {
            *ri += alpha * bi;
        }
        z = z_next;
        let rr_next = dot(&r, &r);
        if rr_next.sqrt() <= stop {
            return CgOutcome { step: z, iterations: it, on_boundary: false };
        }
        let beta = rr_next / rr;
        rr = rr_next;
        for (di, ri) in d.iter_mut().zip(&r) {
            *di = -ri + beta * *di;
        }
    }
    CgOutcome { step: z, iterations: max_iters, on_boundary: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: Vec<f64>) -> impl Fn(&[f64]) -> Vec<f64> {
        move |x: &[f64]| x.iter().zip(&d).map(|(a, b)| a * b).collect()
    }

    #[test]
    fn interior_solution_is_the_newton_step() {
        let out = steihaug_cg(diag(vec![2.0, 4.0]), &[2.0, -4.0], 10.0, 1e-12, 10);
        assert!(!out.on_boundary);
        assert!((out.step[0] + 1.0).abs() < 1e-14 && (out.step[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn long_steps_are_cut_at_the_boundary() {
        let out = steihaug_cg(diag(vec![1.0, 1.0]), &[3.0, 4.0], 1.0, 1e-12, 10);
        assert!(out.on_boundary);
        assert!((norm2(&out.step) - 1.0).abs() < 1e-14);
        assert!((out.step[0] + 0.6).abs() < 1e-14);
    }

    #[test]
    fn negative_curvature_exits_on_the_boundary() {
        let out = steihaug_cg(diag(vec![-1.0, 1.0]), &[1.0, 0.0], 2.0, 1e-12, 10);
        assert!(out.on_boundary);
        assert!((out.step[0] + 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_gradient_gives_zero_step() {
        let out = steihaug_cg(diag(vec![1.0]), &[0.0], 1.0, 0.1, 5);
        assert_eq!(out.step, vec![0.0]);
        assert_eq!(out.iterations, 0);
    }
}
