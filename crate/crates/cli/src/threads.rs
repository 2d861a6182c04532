//! Scoped-thread executor for the frontier expansion.

use std::num::NonZeroUsize;
use std::thread;

use mahavier_core::exec::Executor;

pub const THREADS_ENV: &str = "MAHAVIER_THREADS";

/// Splits work into contiguous chunks, one per worker, and concatenates results in order.
#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    workers: usize,
}

impl Threaded {
    pub fn new(workers: usize) -> Threaded {
        Threaded {
            workers: workers.max(1),
        }
    }

    /// Worker count from `MAHAVIER_THREADS`, else the available parallelism.
    pub fn from_env() -> Threaded {
        let available = thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1);
        let cap = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0);
        Threaded::new(cap.unwrap_or(available))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

/// Below this many items per worker the work runs on the calling thread.
const MIN_CHUNK: usize = 8;

impl Executor for Threaded {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync,
    {
        let workers = self.workers.min(items.len() / MIN_CHUNK);
        if workers <= 1 {
            return items.iter().map(f).collect();
        }
        let chunk = items.len().div_ceil(workers);
        let f = &f;
        thread::scope(|s| {
            let handles: Vec<_> = items
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(f).collect::<Vec<R>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    }
}
