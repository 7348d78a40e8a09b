//! Data-parallel mapping with a sequential fallback.
//!
//! Heavy loops (links of every chain, local cohomology of every face, the
//! scan over a graph family) go through [`map`]. With the `parallel` feature
//! disabled, [`Strategy::Parallel`] quietly runs sequentially.

/// How a batch of independent items is processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// True if this build can actually run items concurrently.
    pub fn is_concurrent(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map(Strategy::Sequential, &items, |x| x * x);
        let b = map(Strategy::Parallel, &items, |x| x * x);
        assert_eq!(a, b);
    }
}
