//! Deterministic per-walker random streams.
//!
//! Each walker owns a counter-based stream: the 64-bit seed expands into a
//! ChaCha8 key via SplitMix64 and the walker index selects the stream. Hit
//! counts therefore depend on (seed, walkers) only; worker partitioning
//! cannot change any draw.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::point::Point;

const TAU: f64 = std::f64::consts::TAU;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// The random stream of one walker.
pub fn walker_rng(seed: u64, walker_index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut state = seed;
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(walker_index);
    rng
}

/// Uniform unit vector in dimension N (2 or 3).
pub fn sample_unit_vector<const N: usize>(rng: &mut ChaCha8Rng) -> Point<N> {
    let mut out = [0.0_f64; N];
    match N {
        2 => {
            let theta = TAU * rng.random::<f64>();
            out[0] = theta.cos();
            out[1] = theta.sin();
        }
        3 => {
            let z = 2.0 * rng.random::<f64>() - 1.0;
            let phi = TAU * rng.random::<f64>();
            let rho = (1.0 - z * z).max(0.0).sqrt();
            out[0] = rho * phi.cos();
            out[1] = rho * phi.sin();
            out[2] = z;
        }
        _ => unreachable!("only dimensions 2 and 3 are supported"),
    }
    Point(out)
}
