//! Optional data-parallelism: the verification batteries fan out over a
//! thread pool when the `parallel` feature is compiled in and parallelism is
//! requested at runtime, and run sequentially otherwise. Results preserve
//! input order, so the produced reports are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map_maybe_par<T, U, F>(parallel: bool, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map_maybe_par(false, items.clone(), |n| n * n);
        let par = map_maybe_par(true, items, |n| n * n);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }
}
