//! Data-parallel helpers. With the `parallel` feature, batch work runs on the
//! rayon pool; without it every policy runs sequentially. Results are always
//! returned in index order, so both paths produce bitwise-identical output.

/// How batch loops (element evaluation, finite-difference sweeps, per-problem
/// checks) are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecPolicy {
    Sequential,
    Parallel,
    /// Parallel once the batch reaches [`PARALLEL_THRESHOLD`] items.
    #[default]
    Auto,
}

pub const PARALLEL_THRESHOLD: usize = 512;

impl ExecPolicy {
    fn parallel_for(self, len: usize) -> bool {
        cfg!(feature = "parallel")
            && match self {
                ExecPolicy::Sequential => false,
                ExecPolicy::Parallel => true,
                ExecPolicy::Auto => len >= PARALLEL_THRESHOLD,
            }
    }
}

/// `(0..len).map(f).collect()`, possibly in parallel.
pub fn map_indexed<T, F>(policy: ExecPolicy, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.parallel_for(len) {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = policy.parallel_for(len);
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        for policy in [ExecPolicy::Sequential, ExecPolicy::Parallel, ExecPolicy::Auto] {
            let v = map_indexed(policy, 1000, |i| i * 2);
            assert!(v.iter().enumerate().all(|(i, &x)| x == 2 * i));
        }
    }
}
