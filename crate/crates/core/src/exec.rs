//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers fan out over the
//! rayon pool; without it they run on the calling thread. Every helper
//! merges partial results with integer addition only, so the result does not
//! depend on the number of threads or on scheduling.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Below this many input terms the parallel path is not worth the overhead.
pub const PARALLEL_THRESHOLD: usize = 2048;

/// Execution strategy for the sparse kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Falls back to [`Exec::Sequential`] when the `parallel` feature is off.
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

pub fn is_parallel_available() -> bool {
    cfg!(feature = "parallel")
}

pub(crate) fn add_into<K: Hash + Eq>(map: &mut FxHashMap<K, i64>, key: K, coeff: i64) -> Result<()> {
    if coeff == 0 {
        return Ok(());
    }
    let slot = map.entry(key).or_insert(0);
    *slot = slot.checked_add(coeff).ok_or(Error::Overflow)?;
    Ok(())
}

#[cfg(feature = "parallel")]
pub(crate) fn merge_into<K: Hash + Eq>(
    mut big: FxHashMap<K, i64>,
    mut small: FxHashMap<K, i64>,
) -> Result<FxHashMap<K, i64>> {
    if big.len() < small.len() {
        std::mem::swap(&mut big, &mut small);
    }
    for (k, c) in small {
        add_into(&mut big, k, c)?;
    }
    Ok(big)
}

/// Expand every input term into a list of output terms via `expand`, then sum
/// coefficients per key. Zero sums are dropped.
pub(crate) fn expand_sum<T, K, F>(input: &[T], exec: Exec, expand: F) -> Result<FxHashMap<K, i64>>
where
    T: Sync,
    K: Hash + Eq + Send,
    F: Fn(&T, &mut dyn FnMut(K, i64) -> Result<()>) -> Result<()> + Sync,
{
    let run_chunk = |chunk: &[T]| -> Result<FxHashMap<K, i64>> {
        let mut local = FxHashMap::default();
        for t in chunk {
            expand(t, &mut |k, c| add_into(&mut local, k, c))?;
        }
        Ok(local)
    };

    #[cfg(feature = "parallel")]
    let merged = if exec.is_parallel() && input.len() >= PARALLEL_THRESHOLD {
        use rayon::prelude::*;
        let chunk = (input.len() / (4 * rayon::current_num_threads())).max(256);
        input
            .par_chunks(chunk)
            .map(run_chunk)
            .try_reduce(FxHashMap::default, merge_into)?
    } else {
        run_chunk(input)?
    };
    #[cfg(not(feature = "parallel"))]
    let merged = {
        let _ = exec;
        run_chunk(input)?
    };

    let mut merged = merged;
    merged.retain(|_, c| *c != 0);
    Ok(merged)
}

/// Map over independent jobs, in parallel when available. Output order
/// matches input order.
pub fn map_jobs<T, U, F>(jobs: &[T], exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return jobs.par_iter().map(f).collect();
    }
    let _ = exec;
    jobs.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_sum_is_thread_count_independent() {
        let input: Vec<i64> = (0..10_000).collect();
        let expand = |t: &i64, emit: &mut dyn FnMut(i64, i64) -> Result<()>| {
            emit(t % 97, 1)?;
            emit(t % 13, -1)
        };
        let seq = expand_sum(&input, Exec::Sequential, expand).unwrap();
        let par = expand_sum(&input, Exec::Parallel, expand).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn overflow_is_reported() {
        let input = vec![i64::MAX, 1];
        let r = expand_sum(&input, Exec::Sequential, |t, emit| emit(0u8, *t));
        assert_eq!(r, Err(Error::Overflow));
    }

    #[test]
    fn map_jobs_keeps_order() {
        let jobs: Vec<u32> = (0..100).collect();
        assert_eq!(map_jobs(&jobs, Exec::Parallel, |j| j * 2), map_jobs(&jobs, Exec::Sequential, |j| j * 2));
    }
}
