//! Execution strategy and numeric options.
//!
//! Parallel loops go through [`Exec`]; without the `parallel` feature every
//! variant runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `lo..hi`, preserving order.
    pub fn map_range<R, F>(self, lo: u64, hi: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (lo..hi).into_par_iter().map(f).collect();
        }
        (lo..hi).map(f).collect()
    }

    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            items.par_iter_mut().enumerate().for_each(|(i, x)| f(i, x));
            return;
        }
        items.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }
}

/// Knobs shared by the numeric routines.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub exec: Exec,
    /// First working precision in bits.
    pub start_bits: u32,
    /// Precision at which escalation gives up.
    pub max_bits: u32,
    /// Largest order handled by exact determinant evaluation.
    pub brute_force_cap: u64,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            exec: Exec::default(),
            start_bits: 128,
            max_bits: 1 << 16,
            brute_force_cap: 4096,
        }
    }
}

impl Options {
    pub fn sequential() -> Options {
        Options { exec: Exec::Sequential, ..Options::default() }
    }

    /// Precisions tried in order: `start_bits`, doubled up to `max_bits`.
    pub fn precision_ladder(&self) -> Vec<u32> {
        let mut v = vec![];
        let mut p = self.start_bits.max(32);
        while p < self.max_bits {
            v.push(p);
            p = p.saturating_mul(2);
        }
        v.push(self.max_bits.max(32));
        v
    }
}
