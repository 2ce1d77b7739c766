//! Deterministic random-number substreams.
//!
//! Every parallel unit of work (a rotation, a bootstrap resample, a Monte
//! Carlo replication) gets its own ChaCha stream keyed by the run seed and the
//! unit's coordinates, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Work domains; keeps streams for different purposes disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Posterior = 1,
    Rotation = 2,
    Bootstrap = 3,
    MonteCarlo = 4,
    Simulation = 5,
}

/// Builds the generator for `(seed, domain, a, b)`.
pub fn substream(seed: u64, domain: Stream, a: u64, b: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    key[16..24].copy_from_slice(&a.to_le_bytes());
    key[24..32].copy_from_slice(&b.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Derives a child seed, used when a replication calls an API that takes a seed.
pub fn child_seed(seed: u64, domain: Stream, index: u64) -> u64 {
    use rand::RngCore;
    substream(seed, domain, index, u64::MAX).next_u64()
}
