//! Data-parallel map with a deterministic, order-preserving result.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it every mode runs sequentially. Results always come back in
//! input order so downstream reductions stay bit-reproducible.

/// How independent work items (string evaluations, batch runs) execute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
    /// Parallel only when the estimated work is large enough to pay for it.
    #[default]
    Auto,
}

/// Estimated scalar operations below which `Auto` stays sequential.
pub const AUTO_PARALLEL_THRESHOLD: usize = 1 << 15;

impl Execution {
    pub fn is_parallel_for(self, items: usize, work: usize) -> bool {
        if items < 2 || !cfg!(feature = "parallel") {
            return false;
        }
        match self {
            Execution::Sequential => false,
            Execution::Parallel => true,
            Execution::Auto => work >= AUTO_PARALLEL_THRESHOLD,
        }
    }
}

pub(crate) fn map_ordered<T, R, F>(items: &[T], exec: Execution, work: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if exec.is_parallel_for(items.len(), work) {
        par_map(items, f)
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_every_mode() {
        let items: Vec<usize> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel, Execution::Auto] {
            let out = map_ordered(&items, exec, usize::MAX, |i| i * 2);
            assert_eq!(out, items.iter().map(|i| i * 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn single_item_never_parallel() {
        assert!(!Execution::Parallel.is_parallel_for(1, usize::MAX));
        assert!(!Execution::Auto.is_parallel_for(8, 10));
    }
}
