//! Range scans split into fixed chunks. Results come back in ascending chunk
//! order, so the outcome never depends on the worker count.

/// Width of one scan chunk.
pub const CHUNK: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { threads: 1 }
    }
}

impl ScanOptions {
    pub fn with_threads(threads: usize) -> Self {
        ScanOptions {
            threads: threads.max(1),
        }
    }
}

/// Inclusive chunks covering `[lo, hi]`.
pub fn chunks(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut a = lo;
    loop {
        let b = a.saturating_add(CHUNK - 1).min(hi);
        out.push((a, b));
        if b == hi {
            break;
        }
        a = b + 1;
    }
    out
}

/// Applies `f` to every chunk of `[lo, hi]`.
pub fn map_chunks<T, F>(lo: u64, hi: u64, opts: ScanOptions, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    let parts = chunks(lo, hi);
    run(parts, opts, f)
}

#[cfg(feature = "parallel")]
fn run<T, F>(parts: Vec<(u64, u64)>, opts: ScanOptions, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if opts.threads <= 1 || parts.len() <= 1 {
        return parts.into_iter().map(|(a, b)| f(a, b)).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build() {
        Ok(pool) => pool.install(|| parts.into_par_iter().map(|(a, b)| f(a, b)).collect()),
        Err(_) => parts.into_iter().map(|(a, b)| f(a, b)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run<T, F>(parts: Vec<(u64, u64)>, _opts: ScanOptions, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    parts.into_iter().map(|(a, b)| f(a, b)).collect()
}
