//! Walk-on-spheres stepping and the deterministic parallel walker sweep.

use crate::geometry::SignedDomain;
use crate::oracle::rng::{sample_unit_vector, walker_rng};
use crate::oracle::WosConfig;
use crate::point::Point;

/// Terminal state of one walker.
#[derive(Clone, Copy, Debug)]
pub enum WalkOutcome<const N: usize> {
    /// The walker entered the epsilon shell; `point` is the nearest boundary
    /// point.
    Exit { point: Point<N>, steps: u32 },
    /// The step cap was reached first (diagnostic overflow).
    Overflow { steps: u32 },
}

/// Runs one walker from `start`: jump to a uniform point of the largest
/// centered sphere until within `epsilon` of the boundary. Deterministic in
/// (seed, walker_index).
pub fn wos_exit<const N: usize>(
    domain: &impl SignedDomain<N>,
    start: Point<N>,
    config: &WosConfig,
    walker_index: u64,
) -> WalkOutcome<N> {
    let mut rng = walker_rng(config.seed, walker_index);
    let mut x = start;
    for step in 0..config.max_steps {
        let sd = domain.signed_distance(x);
        if sd.distance < config.epsilon {
            return WalkOutcome::Exit {
                point: sd.nearest,
                steps: step,
            };
        }
        x += sample_unit_vector::<N>(&mut rng) * sd.distance;
    }
    WalkOutcome::Overflow {
        steps: config.max_steps,
    }
}

/// Partitions the walker index range over `config.workers` threads. Each
/// worker folds its contiguous range into a local accumulator; accumulators
/// merge in worker order, so results are independent of the worker count.
pub fn parallel_sweep<A, I, S, M>(config: &WosConfig, init: I, step: S, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, u64) + Sync,
    M: Fn(&mut A, A),
{
    let walkers = config.walkers;
    let workers = config.workers.max(1).min(walkers.max(1) as usize);
    if workers == 1 {
        let mut acc = init();
        for idx in 0..walkers {
            step(&mut acc, idx);
        }
        return acc;
    }
    let chunk = walkers.div_ceil(workers as u64);
    std::thread::scope(|scope| {
        let init_ref = &init;
        let step_ref = &step;
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                scope.spawn(move || {
                    let lo = w * chunk;
                    let hi = (lo + chunk).min(walkers);
                    let mut acc = init_ref();
                    for idx in lo..hi {
                        step_ref(&mut acc, idx);
                    }
                    acc
                })
            })
            .collect();
        let mut acc = init();
        for handle in handles {
            merge(&mut acc, handle.join().expect("walker thread panicked"));
        }
        acc
    })
}
