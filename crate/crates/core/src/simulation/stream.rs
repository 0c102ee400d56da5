//! Per-path random streams.
//!
//! Every path owns two ChaCha8 streams keyed by `(master_seed, path_index)`:
//! the main stream drives the skeleton (Gaussian increments, jump times and
//! sizes), the auxiliary stream drives the Brownian-bridge decisions. Keeping
//! them apart makes the skeleton identical with and without the bridge
//! correction, and makes every path independent of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct PathRng {
    pub main: ChaCha8Rng,
    pub aux: ChaCha8Rng,
}

impl PathRng {
    pub fn new(master_seed: u64, path_index: u64) -> Self {
        let mut main = ChaCha8Rng::seed_from_u64(master_seed);
        let mut aux = main.clone();
        main.set_stream(path_index.wrapping_mul(2));
        aux.set_stream(path_index.wrapping_mul(2).wrapping_add(1));
        Self { main, aux }
    }
}
