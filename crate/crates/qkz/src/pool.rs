//! Fixed-size worker pool for independent jobs; results keep job order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

pub type Job<'a, T> = Box<dyn FnOnce() -> T + Send + 'a>;

pub fn run_all<'a, T: Send>(threads: usize, jobs: Vec<Job<'a, T>>) -> Vec<T> {
    let n = jobs.len();
    let slots: Vec<Mutex<Option<Job<'a, T>>>> =
        jobs.into_iter().map(|j| Mutex::new(Some(j))).collect();
    let results: Vec<Mutex<Option<T>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        if k >= n {
            break;
        }
        let job = slots[k].lock().unwrap().take().expect("each job runs once");
        *results[k].lock().unwrap() = Some(job());
    };
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 {
        worker();
    } else {
        thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }
    results
        .into_iter()
        .map(|r| r.into_inner().unwrap().expect("job finished"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        for threads in [1, 3, 8] {
            let jobs: Vec<Job<usize>> = (0..10usize)
                .map(|k| Box::new(move || k * k) as Job<usize>)
                .collect();
            assert_eq!(
                run_all(threads, jobs),
                (0..10).map(|k| k * k).collect::<Vec<_>>()
            );
        }
        assert!(run_all::<u8>(4, Vec::new()).is_empty());
    }
}
