//! Data-parallel helpers.
//!
//! Every exhaustive sweep in the crate (tabulating a circuit, composing
//! gate tables, checking a candidate affine map) goes through these
//! helpers. With the `parallel` feature they fan out over rayon's pool;
//! without it, or with [`Strategy::Sequential`], they run on the calling
//! thread. Results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Below this many items the sequential path is used regardless.
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: usize = 1 << 10;

impl Strategy {
    #[cfg(feature = "parallel")]
    fn parallel_for(self, len: usize) -> bool {
        self == Strategy::Parallel && len >= MIN_PARALLEL_LEN
    }

    /// `(0..len).map(f).collect()`.
    pub fn tabulate<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel_for(len) {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Maps over a slice, preserving order. Items are treated as coarse
    /// tasks, so no minimum length applies.
    pub fn map<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel && items.len() > 1 {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Smallest index in `0..len` satisfying `pred`.
    pub fn find_first<F>(self, len: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel_for(len) {
            return (0..len).into_par_iter().find_first(|&i| pred(i));
        }
        (0..len).find(|&i| pred(i))
    }

    /// `table[i] = inner[table[i]]` for every entry.
    pub fn compose_in_place(self, table: &mut [usize], inner: &[usize]) {
        #[cfg(feature = "parallel")]
        if self.parallel_for(table.len()) {
            table.par_iter_mut().for_each(|x| *x = inner[*x]);
            return;
        }
        table.iter_mut().for_each(|x| *x = inner[*x]);
    }
}
