//! Shared helpers for the integration suites.

use matalg::{DiagonalSpectrum, Pattern};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Pattern from 1-based pairs, for readability against the displayed matrices.
pub fn pat(n: usize, edges: &[(usize, usize)]) -> Pattern {
    Pattern::from_edges(n, edges.iter().map(|&(k, m)| (k - 1, m - 1))).expect("valid edges")
}

pub fn random_pattern(rng: &mut StdRng, n: usize, density: f64, allow_loops: bool) -> Pattern {
    let mut p = Pattern::empty(n).expect("valid dimension");
    for k in 0..n {
        for m in 0..n {
            if (allow_loops || k != m) && rng.random_bool(density) {
                p.insert(k, m).expect("in range");
            }
        }
    }
    p
}

/// Random pattern at a density itself drawn uniformly from (0.05, 0.95).
pub fn random_pattern_mixed(rng: &mut StdRng, n: usize, allow_loops: bool) -> Pattern {
    let density = rng.random_range(0.05..0.95);
    random_pattern(rng, n, density, allow_loops)
}

/// All loop-free patterns on `n` vertices, enumerated by arc mask.
pub fn all_loop_free_patterns(n: usize) -> Vec<Pattern> {
    let arcs = matalg::enumeration::loop_free_arcs(n);
    (0u64..1 << arcs.len())
        .map(|mask| matalg::enumeration::pattern_from_arc_mask(n, &arcs, mask))
        .collect()
}

pub fn integer_spectrum(n: usize) -> DiagonalSpectrum {
    DiagonalSpectrum::first_integers(n).expect("1..=n is distinct and nonzero")
}
