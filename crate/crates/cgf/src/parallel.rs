//! Thread-pool drivers for the embarrassingly parallel computations.
//!
//! Results are merged in a fixed order, so output does not depend on the
//! number of threads.

use cgf_core::asymptotics::{diaconis_diagnostics, Diagnostics, MultisetSeq};
use cgf_core::monoids::{enumerate_stratum, strata, Catalog, MonoidClass};
use rayon::prelude::*;

use crate::Result;

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<T, F>(threads: Option<usize>, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match threads {
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f)),
        None => Ok(f()),
    }
}

/// Enumerates every stratum in parallel and merges into one catalog.
pub fn build_catalog(max_degree: u64, threads: Option<usize>) -> Result<Catalog> {
    let entries = with_threads(threads, || {
        strata(max_degree)
            .par_iter()
            .map(|&s| enumerate_stratum(max_degree, s))
            .collect::<std::result::Result<Vec<_>, _>>()
    })??;
    Ok(Catalog::from_entries(max_degree, entries.into_iter().flatten()))
}

/// Generators of `class` in each degree `1..=max_degree`.
pub fn generator_table(
    catalog: &Catalog,
    class: MonoidClass,
    threads: Option<usize>,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let out = with_threads(threads, || {
        (1..=catalog.max_degree())
            .into_par_iter()
            .map(|n| catalog.generators(class, n))
            .collect::<std::result::Result<Vec<_>, _>>()
    })??;
    Ok(out)
}

/// Diagnostics for every point of a sequence, in input order.
pub fn diagnostics_rows(seq: &MultisetSeq, threads: Option<usize>) -> Result<Vec<(u64, Diagnostics)>> {
    let rows = with_threads(threads, || {
        seq.points
            .par_iter()
            .map(|(n, rf)| diaconis_diagnostics(rf).map(|d| (*n, d)))
            .collect::<std::result::Result<Vec<_>, _>>()
    })??;
    Ok(rows)
}
