//! Frozen reference values used by the `--golden` verification modes and the
//! acceptance suite. Everything here is data, so a mismatch points at exactly
//! one provenance row.

use crate::lattice::IndexSubset;
use crate::pattern::Pattern;

/// Minimal strongly connected digraphs on `n` labeled vertices, `n = 1..=6`.
/// OEIS A130768 lists 1, 5, 58, 1069, 27816, … starting at n = 2; the n = 1
/// row is the single empty digraph. (The n = 3 value 5 is pinned by the
/// explicit [`MINIMAL_SCC_3_VERTICES`] list below.)
pub const LABELED_MINIMAL_SCC: [(usize, u64); 6] =
    [(1, 1), (2, 1), (3, 5), (4, 58), (5, 1069), (6, 27816)];

/// Minimal strongly connected digraphs on `n` vertices up to isomorphism,
/// `n = 1..=6`: OEIS A130756.
pub const UNLABELED_MINIMAL_SCC: [(usize, u64); 6] =
    [(1, 1), (2, 1), (3, 2), (4, 5), (5, 15), (6, 63)];

/// The five minimal strongly connected digraphs on three labeled vertices:
/// the two directed 3-cycles, the doubled path, and the two doubled stars.
pub const MINIMAL_SCC_3_VERTICES: [[[u8; 3]; 3]; 5] = [
    [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    [[0, 1, 0], [1, 0, 1], [0, 1, 0]],
    [[0, 1, 1], [1, 0, 0], [1, 0, 0]],
    [[0, 0, 1], [0, 0, 1], [1, 1, 0]],
];

/// The two maximal proper pattern subalgebras of `Mat(2)`: upper and lower
/// triangular.
pub const MAXIMAL_SUBALGEBRAS_2: [[[u8; 2]; 2]; 2] = [
    [[1, 1], [0, 1]],
    [[1, 0], [1, 1]],
];

/// The six maximal proper pattern subalgebras of `Mat(3)`, one per proper
/// nonempty subset of `{1,2,3}`.
pub const MAXIMAL_SUBALGEBRAS_3: [[[u8; 3]; 3]; 6] = [
    [[1, 1, 1], [0, 1, 1], [0, 1, 1]],
    [[1, 0, 1], [1, 1, 1], [1, 0, 1]],
    [[1, 1, 0], [1, 1, 0], [1, 1, 1]],
    [[1, 0, 0], [1, 1, 1], [1, 1, 1]],
    [[1, 1, 1], [0, 1, 0], [1, 1, 1]],
    [[1, 1, 1], [1, 1, 1], [0, 0, 1]],
];

/// The fourteen maximal proper pattern subalgebras of `Mat(4)`: four with a
/// one-element subset, four with a three-element subset, six with a
/// two-element subset.
pub const MAXIMAL_SUBALGEBRAS_4: [[[u8; 4]; 4]; 14] = [
    [[1, 1, 1, 1], [0, 1, 1, 1], [0, 1, 1, 1], [0, 1, 1, 1]],
    [[1, 0, 1, 1], [1, 1, 1, 1], [1, 0, 1, 1], [1, 0, 1, 1]],
    [[1, 1, 0, 1], [1, 1, 0, 1], [1, 1, 1, 1], [1, 1, 0, 1]],
    [[1, 1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 1]],
    [[1, 0, 0, 0], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]],
    [[1, 1, 1, 1], [0, 1, 0, 0], [1, 1, 1, 1], [1, 1, 1, 1]],
    [[1, 1, 1, 1], [1, 1, 1, 1], [0, 0, 1, 0], [1, 1, 1, 1]],
    [[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1], [0, 0, 0, 1]],
    [[1, 1, 1, 1], [1, 1, 1, 1], [0, 0, 1, 1], [0, 0, 1, 1]],
    [[1, 1, 1, 1], [0, 1, 0, 1], [1, 1, 1, 1], [0, 1, 0, 1]],
    [[1, 1, 1, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 1, 1, 1]],
    [[1, 0, 0, 1], [1, 1, 1, 1], [1, 1, 1, 1], [1, 0, 0, 1]],
    [[1, 0, 1, 0], [1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 1, 1]],
    [[1, 1, 0, 0], [1, 1, 0, 0], [1, 1, 1, 1], [1, 1, 1, 1]],
];

/// The lift derivation from level 2 to level 3, as
/// `(parent, corner children, shifted children)` with 1-based members:
/// `{1}` lifts to `{1},{1,3}` through the corner projector and to
/// `{2},{1,2}` through the shifted one; `{2}` lifts to `{2},{2,3}` and
/// `{3},{1,3}`.
pub const LIFT_2_TO_3: [(&[usize], [&[usize]; 2], [&[usize]; 2]); 2] = [
    (&[1], [&[1], &[1, 3]], [&[2], &[1, 2]]),
    (&[2], [&[2], &[2, 3]], [&[3], &[1, 3]]),
];

/// [`MINIMAL_SCC_3_VERTICES`] as patterns.
pub fn minimal_scc_3_patterns() -> Vec<Pattern> {
    MINIMAL_SCC_3_VERTICES
        .iter()
        .map(|rows| adjacency_pattern(rows.iter().map(|r| r.as_slice())))
        .collect()
}

/// The frozen maximal-subalgebra pattern list for `n = 2, 3, 4`.
pub fn maximal_subalgebra_patterns(n: usize) -> Option<Vec<Pattern>> {
    match n {
        2 => Some(
            MAXIMAL_SUBALGEBRAS_2
                .iter()
                .map(|rows| adjacency_pattern(rows.iter().map(|r| r.as_slice())))
                .collect(),
        ),
        3 => Some(
            MAXIMAL_SUBALGEBRAS_3
                .iter()
                .map(|rows| adjacency_pattern(rows.iter().map(|r| r.as_slice())))
                .collect(),
        ),
        4 => Some(
            MAXIMAL_SUBALGEBRAS_4
                .iter()
                .map(|rows| adjacency_pattern(rows.iter().map(|r| r.as_slice())))
                .collect(),
        ),
        _ => None,
    }
}

/// [`LIFT_2_TO_3`] with members converted to [`IndexSubset`] values.
pub fn lift_2_to_3() -> Vec<(IndexSubset, [IndexSubset; 2], [IndexSubset; 2])> {
    LIFT_2_TO_3
        .iter()
        .map(|(parent, corner, shifted)| {
            let sub = |n: usize, members: &[usize]| {
                IndexSubset::new(n, members.iter().map(|&v| v - 1)).expect("valid golden subset")
            };
            (
                sub(2, parent),
                [sub(3, corner[0]), sub(3, corner[1])],
                [sub(3, shifted[0]), sub(3, shifted[1])],
            )
        })
        .collect()
}

fn adjacency_pattern<'a>(rows: impl Iterator<Item = &'a [u8]>) -> Pattern {
    let rows: Vec<Vec<u8>> = rows.map(|r| r.to_vec()).collect();
    Pattern::from_adjacency(&rows).expect("valid golden adjacency data")
}

/// The expected labeled count for `n`, when published.
pub fn labeled_golden(n: usize) -> Option<u64> {
    LABELED_MINIMAL_SCC
        .iter()
        .find(|&&(gn, _)| gn == n)
        .map(|&(_, v)| v)
}

/// The expected unlabeled count for `n`, when published.
pub fn unlabeled_golden(n: usize) -> Option<u64> {
    UNLABELED_MINIMAL_SCC
        .iter()
        .find(|&&(gn, _)| gn == n)
        .map(|&(_, v)| v)
}
