//! Seeded instances shared by the benchmarks. Draws that are already
//! k-connected are skipped so every instance needs augmenting.

use kaug_core::graph::is_k_connected;
use kaug_core::toolkit::gen::{gen_random, GenParams};
use kaug_core::Instance;

fn first_open(mut p: GenParams) -> Instance {
    loop {
        let inst = gen_random(&p);
        if !is_k_connected(&inst.graph, p.k) {
            return inst;
        }
        p.seed += 1;
    }
}

/// The k = 2 instance family of the end-to-end ratio check.
pub fn ratio_family(n: usize, seed: u64) -> Instance {
    let mut p = GenParams::new(n, 2, seed);
    p.max_purchasable = Some(25);
    first_open(p)
}

/// A sparse instance with every non-edge purchasable.
pub fn open_instance(n: usize, k: usize, seed: u64) -> Instance {
    let mut p = GenParams::new(n, k, seed);
    p.density = 0.15;
    first_open(p)
}
