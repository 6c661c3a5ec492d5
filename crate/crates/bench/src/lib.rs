//! Fixed inputs shared by the benchmarks.

use clospace::enumerate::{sample_spaces, GeneratorClass};
use clospace::Space;

/// Deterministic sample of spaces for per-space predicate benchmarks.
pub fn sample(n: usize, class: GeneratorClass, count: usize) -> Vec<Space> {
    sample_spaces(n, class, count, 0x5eed)
        .expect("carrier size within limits")
        .collect()
}
