//! Resource caps and the execution strategy used by the enumeration-heavy
//! routines.
//!
//! Every exhaustive routine in this crate takes a [`Config`]. The caps are
//! hard limits: exceeding one yields [`crate::Error::ResourceCap`] before any
//! work is done. The strategy selects between the rayon-backed and the plain
//! sequential code path; results are identical either way.

use std::ops::Range;

/// How data-parallel inner loops are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise falls
    /// back to sequential execution.
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

#[derive(Clone, Debug)]
pub struct Config {
    /// Maximum number of rule words (or DP expansions) per counting call.
    pub word_cap: u64,
    /// Maximum vertex count for automorphism and regular-subgroup searches.
    pub aut_cap: usize,
    /// Maximum vertex count of a word graph.
    pub vertex_cap: u64,
    /// Maximum number of explicitly enumerated group elements.
    pub group_cap: usize,
    pub strategy: Strategy,
}

pub const DEFAULT_WORD_CAP: u64 = 10_000_000;
pub const DEFAULT_AUT_CAP: usize = 500;
pub const DEFAULT_VERTEX_CAP: u64 = 10_000_000;
pub const DEFAULT_GROUP_CAP: usize = 100_000;

impl Default for Config {
    fn default() -> Self {
        Config {
            word_cap: DEFAULT_WORD_CAP,
            aut_cap: DEFAULT_AUT_CAP,
            vertex_cap: DEFAULT_VERTEX_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            strategy: Strategy::default(),
        }
    }
}

impl Config {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// Maps `f` over `range`, keeping output order. Parallel when requested and
/// compiled in.
pub(crate) fn map_range<R, F>(strategy: Strategy, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = strategy;
    range.map(f).collect()
}

/// Like [`map_range`] but over a slice.
pub(crate) fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}
