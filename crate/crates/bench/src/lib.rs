//! Shared fixtures for the benchmark targets.

use hypermim_cli::gen::{generate_random, GenParams};
use hypermim_core::Instance;

/// Deterministic instances spanning the desk-scale profile space.
pub fn fixture_corpus() -> Vec<Instance> {
    let profiles = [
        (8u32, 10u32, 3usize, 3usize, 1u64),
        (10, 14, 4, 5, 2),
        (9, 12, 3, 4, 2),
    ];
    let mut out = Vec::new();
    let mut seed = 7_000u64;
    while out.len() < 6 {
        let (n, m, r, k, c) = profiles[out.len() % profiles.len()];
        seed += 1;
        if let Ok(inst) = generate_random(GenParams {
            seed,
            n,
            m,
            r,
            k,
            c,
        }) {
            out.push(inst);
        }
    }
    out
}

/// A single mid-size instance for the per-operation benchmarks.
pub fn mid_instance() -> Instance {
    generate_random(GenParams {
        seed: 4242,
        n: 10,
        m: 14,
        r: 4,
        k: 5,
        c: 2,
    })
    .expect("fixture generates")
}
