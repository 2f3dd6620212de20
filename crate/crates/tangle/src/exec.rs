//! Execution strategy for embarrassingly parallel batches.
//!
//! Every batch in this crate (roof restarts, verification sweeps, oracle
//! samples) is a pure function of the item index, and results are always
//! reduced by an order-independent fold. `Exec::Serial` and
//! `Exec::Parallel` therefore produce identical bytes; the parallel arm
//! only changes wall-clock time.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Serial,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Serial
        }
    }
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub fn map_indexed<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Exec::Serial => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Exec::Parallel => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serial_and_parallel_agree() {
        let f = |i: usize| (i as f64).sin();
        let serial = map_indexed(Exec::Serial, 1000, f);
        let parallel = map_indexed(Exec::Parallel, 1000, f);
        assert_eq!(serial, parallel);
    }
}
