//! Shared fixtures for the benchmarks.

use btw_core::{gen_random, reduce, Instance};

/// `gen_random(n, m, seed)` with complete triples stripped.
pub fn irreducible(n: usize, m: usize, seed: u64) -> Instance {
    let inst = gen_random(n, m, seed).expect("benchmark sizes are valid");
    reduce(&inst).reduced
}
