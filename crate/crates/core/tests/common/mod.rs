#![allow(dead_code)]

pub mod oracle;

use hcourant::random::rng_for;
use hcourant::Context;
use rand_chacha::ChaCha8Rng;

/// Contexts exercised by the property suites.
pub const CONTEXTS: [(usize, usize); 4] = [(2, 1), (3, 1), (3, 2), (4, 3)];

pub fn ctx(m: usize, n: usize) -> Context {
    Context::new(m, n).expect("valid context")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_for(seed, 0)
}
