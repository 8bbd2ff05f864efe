//! Data-parallel execution helpers. With the `parallel` feature (default)
//! these fan work out over rayon; without it they run the same closures
//! sequentially, so every caller stays oblivious to the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to fixed-size chunks of `data`; the second argument is the
/// absolute index of the chunk's first element.
pub(crate) fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i * chunk, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, c) in data.chunks_mut(chunk).enumerate() {
            f(i * chunk, c);
        }
    }
}

/// Splits `items` into per-worker slices, maps each slice to an
/// accumulator vector, and sums the accumulators elementwise.
pub(crate) fn map_reduce_counts<T, F>(items: &[T], acc_len: usize, f: F) -> Vec<i64>
where
    T: Sync,
    F: Fn(&T, &mut Vec<i64>) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let workers = rayon::current_num_threads().max(1);
        let chunk = items.len().div_ceil(workers).max(1);
        items
            .par_chunks(chunk)
            .map(|slice| {
                let mut acc = vec![0i64; acc_len];
                for item in slice {
                    f(item, &mut acc);
                }
                acc
            })
            .reduce(
                || vec![0i64; acc_len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x = x.checked_add(y).expect("count overflow");
                    }
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = vec![0i64; acc_len];
        for item in items {
            f(item, &mut acc);
        }
        acc
    }
}

/// Maps each item to a result vector and concatenates, preserving nothing
/// about ordering; callers sort afterwards for determinism.
pub(crate) fn flat_map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().flat_map_iter(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().flat_map(|t| f(t)).collect()
    }
}
