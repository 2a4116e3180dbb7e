//! The lattice of maximal proper pattern subalgebras of `Mat(n)`.
//!
//! Each proper nonempty subset `i ⊂ {0..n}` names one maximal subalgebra: the
//! full pattern minus every pair `(k,m)` with `k ∉ i` and `m ∈ i`. The same
//! subset names the invariant coordinate subspace spanned by `{e_j : j ∈ i}`.
//! Subsets double as the nodes of the level-to-level lift recursion.

use crate::pattern::{Pattern, PatternError};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use thiserror::Error;

/// Exhaustive subset scans are exponential in `n`; this is the largest level
/// the lattice operations will enumerate.
pub const MAX_LATTICE_DIMENSION: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subset must be proper (not all of 1..n)")]
    FullSubset,
    #[error("member {index} out of range for dimension {n}")]
    MemberOutOfRange { index: usize, n: usize },
    #[error("lattice operations require 2 <= n <= {MAX_LATTICE_DIMENSION}, got {0}")]
    DimensionOutOfRange(usize),
    #[error("lift input must be a single complete level, all with the same dimension")]
    MixedLevel,
    #[error("lift produced {got} subsets where the next level has {expected}: input level incomplete")]
    IncompleteLevel { expected: usize, got: usize },
}

/// A proper nonempty subset of `{0..n}`, stored as a bit mask. Ordered by
/// size, then lexicographically on the sorted member list — the deterministic
/// order used by every listing in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    n: usize,
    mask: u64,
}

impl IndexSubset {
    pub fn new<I>(n: usize, members: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut mask = 0u64;
        for v in members {
            if v >= n {
                return Err(LatticeError::MemberOutOfRange { index: v, n });
            }
            mask |= 1 << v;
        }
        Self::from_mask(n, mask)
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self, LatticeError> {
        let full = full_mask(n);
        if mask == 0 {
            return Err(LatticeError::EmptySubset);
        }
        if mask & !full != 0 {
            return Err(LatticeError::MemberOutOfRange {
                index: 63 - mask.leading_zeros() as usize,
                n,
            });
        }
        if mask == full {
            return Err(LatticeError::FullSubset);
        }
        Ok(Self { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.mask >> v & 1 == 1
    }

    /// Sorted member list, 0-based.
    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        let mut bits = self.mask;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        out
    }

    /// The complement subset, also proper and nonempty.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            mask: full_mask(self.n) & !self.mask,
        }
    }

    /// The index list of the coordinate subspace this subset names: the span
    /// of the standard basis vectors it selects.
    pub fn invariant_subspace(&self) -> Vec<usize> {
        self.members()
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| {
                // lexicographic on sorted member lists: walk bits in ascending order
                let (mut a, mut b) = (self.mask, other.mask);
                while a != 0 && b != 0 {
                    let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
                    match la.cmp(&lb) {
                        Ordering::Equal => {
                            a &= a - 1;
                            b &= b - 1;
                        }
                        ord => return ord,
                    }
                }
                a.cmp(&b)
            })
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.members().iter().map(|v| v + 1).collect();
        one_based.serialize(serializer)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A maximal proper pattern subalgebra, identified by its subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalSubalgebra {
    subset: IndexSubset,
    pattern: Pattern,
}

impl MaximalSubalgebra {
    pub fn subset(&self) -> &IndexSubset {
        &self.subset
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }
}

/// The maximal subalgebra named by `i`: the full pattern minus
/// `{(k,m) : k ∉ i, m ∈ i}`. Rows inside `i` are full; rows outside `i` avoid
/// the columns of `i`.
pub fn maximal_subalgebra(subset: &IndexSubset) -> MaximalSubalgebra {
    let n = subset.n();
    let full = full_mask(n);
    let mut pattern = Pattern::empty(n).expect("valid dimension");
    for k in 0..n {
        let row = if subset.contains(k) { full } else { full & !subset.mask() };
        for m in mask_iter(row) {
            pattern.insert(k, m).expect("in range");
        }
    }
    MaximalSubalgebra {
        subset: *subset,
        pattern,
    }
}

fn mask_iter(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some((mask.trailing_zeros() as usize, mask)) },
        |&(_, rest)| {
            let rest = rest & (rest - 1);
            if rest == 0 {
                None
            } else {
                Some((rest.trailing_zeros() as usize, rest))
            }
        },
    )
    .map(|(v, _)| v)
}

fn check_level(n: usize) -> Result<(), LatticeError> {
    if !(2..=MAX_LATTICE_DIMENSION).contains(&n) {
        return Err(LatticeError::DimensionOutOfRange(n));
    }
    Ok(())
}

/// All proper nonempty subsets of `{0..n}` in (size, lexicographic) order.
pub fn all_proper_subsets(n: usize) -> Result<Vec<IndexSubset>, LatticeError> {
    check_level(n)?;
    let mut subsets: Vec<IndexSubset> = (1..full_mask(n))
        .map(|mask| IndexSubset { n, mask })
        .collect();
    subsets.sort_unstable();
    Ok(subsets)
}

/// One maximal subalgebra per proper nonempty subset: exactly `2ⁿ − 2`
/// entries, in the deterministic (size, lexicographic) subset order.
pub fn enumerate_maximal_subalgebras(n: usize) -> Result<Vec<MaximalSubalgebra>, LatticeError> {
    Ok(all_proper_subsets(n)?
        .iter()
        .map(maximal_subalgebra)
        .collect())
}

/// All subsets whose maximal subalgebra contains the given pattern, i.e. all
/// `i` with no pair `(k,m)` in the pattern entering `i` from outside. For
/// `n = 1` there are no proper nonempty subsets and the list is empty.
pub fn containing_maximal_subalgebras(pattern: &Pattern) -> Result<Vec<IndexSubset>, LatticeError> {
    let n = pattern.n();
    if n == 1 {
        return Ok(Vec::new());
    }
    check_level(n)?;
    let rows: Vec<u64> = (0..n).map(|k| pattern.row_bits(k)).collect();
    let mut out: Vec<IndexSubset> = (1..full_mask(n))
        .filter(|&mask| {
            mask_iter(full_mask(n) & !mask).all(|k| rows[k] & mask == 0)
        })
        .map(|mask| IndexSubset { n, mask })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// The four children a level-`n` subset contributes at level `n+1`, grouped
/// by the projector they factor through: the corner embedding keeps `i` and
/// adds `i ∪ {n+1}`; the shifted embedding increments every member and adds
/// `(i+1) ∪ {1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftChildren {
    pub parent: IndexSubset,
    pub corner: [IndexSubset; 2],
    pub shifted: [IndexSubset; 2],
}

pub fn lift_children(subset: &IndexSubset) -> Result<LiftChildren, LatticeError> {
    let n = subset.n();
    check_level(n + 1)?;
    let same = IndexSubset::from_mask(n + 1, subset.mask())?;
    let with_new = IndexSubset::from_mask(n + 1, subset.mask() | 1 << n)?;
    let incremented = IndexSubset::from_mask(n + 1, subset.mask() << 1)?;
    let incremented_with_first = IndexSubset::from_mask(n + 1, subset.mask() << 1 | 1)?;
    Ok(LiftChildren {
        parent: *subset,
        corner: [same, with_new],
        shifted: [incremented, incremented_with_first],
    })
}

/// Lifts a complete level of subsets to the next level: the union of all
/// children, deduplicated and sorted. Errors if the result does not have the
/// `2^(n+1) − 2` entries of a complete level.
pub fn lift_subalgebras(level: &[IndexSubset]) -> Result<Vec<IndexSubset>, LatticeError> {
    let n = match level.first() {
        Some(s) => s.n(),
        None => return Err(LatticeError::MixedLevel),
    };
    if level.iter().any(|s| s.n() != n) {
        return Err(LatticeError::MixedLevel);
    }
    check_level(n + 1)?;
    let mut next: Vec<IndexSubset> = Vec::with_capacity(level.len() * 4);
    for subset in level {
        let children = lift_children(subset)?;
        next.extend(children.corner);
        next.extend(children.shifted);
    }
    next.sort_unstable();
    next.dedup();
    let expected = (1usize << (n + 1)) - 2;
    if next.len() != expected {
        return Err(LatticeError::IncompleteLevel {
            expected,
            got: next.len(),
        });
    }
    Ok(next)
}

impl Serialize for MaximalSubalgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MaximalSubalgebra", 4)?;
        s.serialize_field("n", &self.subset.n())?;
        s.serialize_field("subset", &self.subset)?;
        s.serialize_field("pattern", &self.pattern)?;
        let inv: Vec<usize> = self.subset.invariant_subspace().iter().map(|v| v + 1).collect();
        s.serialize_field("invariant_subspace", &inv)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct MaximalSubalgebraWire {
    n: usize,
    subset: Vec<usize>,
    #[serde(default)]
    pattern: Option<Pattern>,
}

impl<'de> Deserialize<'de> for MaximalSubalgebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MaximalSubalgebraWire::deserialize(deserializer)?;
        for &v in &wire.subset {
            if v == 0 {
                return Err(D::Error::custom("subset members are 1-based"));
            }
        }
        let subset = IndexSubset::new(wire.n, wire.subset.iter().map(|v| v - 1))
            .map_err(D::Error::custom)?;
        let built = maximal_subalgebra(&subset);
        if let Some(p) = wire.pattern {
            if p != *built.pattern() {
                return Err(D::Error::custom(
                    "pattern does not match the subalgebra named by the subset",
                ));
            }
        }
        Ok(built)
    }
}

impl From<PatternError> for LatticeError {
    fn from(e: PatternError) -> Self {
        match e {
            PatternError::InvalidDimension(n) => LatticeError::DimensionOutOfRange(n),
            PatternError::DimensionMismatch(a, _) => LatticeError::DimensionOutOfRange(a),
            PatternError::IndexOutOfRange { index, n } => {
                LatticeError::MemberOutOfRange { index, n }
            }
        }
    }
}
