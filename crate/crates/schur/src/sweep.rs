//! Order-preserving maps over word lists, sequential or on a rayon pool.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// `workers == 0` means one worker per available core.
    Parallel { workers: usize },
}

impl Execution {
    /// Parallel when the `parallel` feature is built in, sequential otherwise.
    pub fn with_workers(workers: usize) -> Self {
        if cfg!(feature = "parallel") && workers != 1 {
            Execution::Parallel { workers }
        } else {
            Execution::Sequential
        }
    }
}

impl Default for Execution {
    fn default() -> Self {
        Execution::with_workers(0)
    }
}

/// `items.map(f)` with results in input order whatever the execution.
pub fn ordered_map<T, R, F>(items: &[T], execution: Execution, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match execution {
        Execution::Sequential => Ok(items.iter().map(f).collect()),
        Execution::Parallel { workers } => parallel_map(items, workers, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| crate::Error::Config(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let _ = workers;
    Ok(items.iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = ordered_map(&items, Execution::Sequential, |x| x * x).unwrap();
        for workers in [0, 2, 3] {
            assert_eq!(ordered_map(&items, Execution::Parallel { workers }, |x| x * x).unwrap(), seq);
        }
        assert_eq!(Execution::with_workers(1), Execution::Sequential);
    }
}
