//! Data-parallel execution over index ranges.
//!
//! With the `parallel` feature (on by default) the work is distributed with
//! rayon; without it every call runs sequentially. Results always come back in
//! index order, so reports do not depend on scheduling.

/// How index-range work is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Rayon work-stealing. Falls back to sequential without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Evaluates `f` on `0..n` and returns the results in index order.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            Exec::Parallel => par_map_range(n, f),
        }
    }

    /// Maps a slice, preserving order.
    pub fn map_slice<'a, S, T, F>(self, items: &'a [S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&'a S) -> T + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }

    /// The least index in `0..n` satisfying `pred`. Work proceeds in blocks
    /// so a hit stops the scan early; the answer does not depend on the mode.
    pub fn find_first<F>(self, n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        const CHUNK: usize = 1 << 12;
        const BLOCK: usize = 64;
        let chunks = n.div_ceil(CHUNK);
        let mut start = 0;
        while start < chunks {
            let end = (start + BLOCK).min(chunks);
            let hits = self.map_range(end - start, |c| {
                let lo = (start + c) * CHUNK;
                (lo..(lo + CHUNK).min(n)).find(|&i| pred(i))
            });
            if let Some(i) = hits.into_iter().flatten().next() {
                return Some(i);
            }
            start = end;
        }
        None
    }
}

#[cfg(feature = "parallel")]
fn par_map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
