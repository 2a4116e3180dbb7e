//! Boolean pattern calculus over the two-element idempotent semiring.
//!
//! A [`Pattern`] is a subset of `{0..n}²` stored as bit-packed adjacency rows
//! (one `u64` word per row, hence the crate-wide dimension cap of 64). The
//! pattern product is the boolean matrix product: `(k,m)` is present in
//! `G₁∘G₂` exactly when some `p` has `(k,p)∈G₁` and `(p,m)∈G₂`.
//!
//! Indices are 0-based everywhere in the API; the 1-based convention of the
//! JSON formats is applied only by the serializers.

use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul};
use thiserror::Error;

/// Largest supported dimension: one adjacency row per machine word.
pub const MAX_DIMENSION: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("dimension must be between 1 and {MAX_DIMENSION}, got {0}")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// An element of the boolean semiring: `1+1=1`, `0+1=1`, `1×1=1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiringBit(pub bool);

impl Add for SemiringBit {
    type Output = SemiringBit;
    fn add(self, rhs: SemiringBit) -> SemiringBit {
        SemiringBit(self.0 | rhs.0)
    }
}

impl Mul for SemiringBit {
    type Output = SemiringBit;
    fn mul(self, rhs: SemiringBit) -> SemiringBit {
        SemiringBit(self.0 & rhs.0)
    }
}

/// A subset of `{0..n}²`, equivalently a digraph adjacency matrix over the
/// boolean semiring. Row `k` holds the targets of arcs leaving vertex `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    n: usize,
    rows: Vec<u64>,
}

impl Pattern {
    fn check_dimension(n: usize) -> Result<(), PatternError> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(PatternError::InvalidDimension(n));
        }
        Ok(())
    }

    fn full_row(n: usize) -> u64 {
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn empty(n: usize) -> Result<Self, PatternError> {
        Self::check_dimension(n)?;
        Ok(Self {
            n,
            rows: vec![0; n],
        })
    }

    /// The full pattern `{0..n}²`.
    pub fn full(n: usize) -> Result<Self, PatternError> {
        Self::check_dimension(n)?;
        Ok(Self {
            n,
            rows: vec![Self::full_row(n); n],
        })
    }

    /// All diagonal pairs `(k,k)`.
    pub fn diagonal(n: usize) -> Result<Self, PatternError> {
        Self::check_dimension(n)?;
        Ok(Self {
            n,
            rows: (0..n).map(|k| 1u64 << k).collect(),
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, PatternError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = Self::empty(n)?;
        for (k, m) in edges {
            p.insert(k, m)?;
        }
        Ok(p)
    }

    /// Builds a pattern from 0/1 adjacency rows; any nonzero entry is an edge.
    pub fn from_adjacency(rows: &[Vec<u8>]) -> Result<Self, PatternError> {
        let n = rows.len();
        Self::check_dimension(n)?;
        let mut p = Self::empty(n)?;
        for (k, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PatternError::DimensionMismatch(row.len(), n));
            }
            for (m, &v) in row.iter().enumerate() {
                if v != 0 {
                    p.insert(k, m)?;
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, k: usize, m: usize) -> bool {
        k < self.n && m < self.n && self.rows[k] >> m & 1 == 1
    }

    pub fn insert(&mut self, k: usize, m: usize) -> Result<(), PatternError> {
        for idx in [k, m] {
            if idx >= self.n {
                return Err(PatternError::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        self.rows[k] |= 1 << m;
        Ok(())
    }

    pub fn remove(&mut self, k: usize, m: usize) {
        if k < self.n && m < self.n {
            self.rows[k] &= !(1 << m);
        }
    }

    /// Number of pairs in the pattern.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_full(&self) -> bool {
        let full = Self::full_row(self.n);
        self.rows.iter().all(|&r| r == full)
    }

    /// Pairs in row-major order, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for (k, &row) in self.rows.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let m = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push((k, m));
            }
        }
        out
    }

    /// Bit mask of row `k` (bit `m` set iff `(k,m)` present).
    pub fn row_bits(&self, k: usize) -> u64 {
        self.rows[k]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self {
            n: self.n,
            rows: vec![0; self.n],
        };
        for (k, &row) in self.rows.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let m = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t.rows[m] |= 1 << k;
            }
        }
        t
    }

    pub fn union(&self, other: &Self) -> Result<Self, PatternError> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a | b)
                .collect(),
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a & !b == 0)
    }

    /// The same pattern with all diagonal pairs removed.
    pub fn without_diagonal(&self) -> Self {
        Self {
            n: self.n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(k, &r)| r & !(1 << k))
                .collect(),
        }
    }

    /// The same pattern with all diagonal pairs added.
    pub fn with_diagonal(&self) -> Self {
        Self {
            n: self.n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(k, &r)| r | (1 << k))
                .collect(),
        }
    }

    pub fn has_diagonal_pair(&self) -> bool {
        self.rows.iter().enumerate().any(|(k, &r)| r >> k & 1 == 1)
    }

    /// Relabels vertices: pair `(k,m)` maps to `(perm[k], perm[m])`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        let mut out = Self {
            n: self.n,
            rows: vec![0; self.n],
        };
        for (k, &row) in self.rows.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let m = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.rows[perm[k]] |= 1 << perm[m];
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<(), PatternError> {
        if self.n != other.n {
            return Err(PatternError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Boolean matrix product: `{(k,m) : ∃p, (k,p)∈self and (p,m)∈other}`.
    pub fn product(&self, other: &Self) -> Result<Self, PatternError> {
        self.check_same(other)?;
        let mut rows = vec![0u64; self.n];
        for (k, &row) in self.rows.iter().enumerate() {
            let mut bits = row;
            let mut acc = 0u64;
            while bits != 0 {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc |= other.rows[p];
            }
            rows[k] = acc;
        }
        Ok(Self { n: self.n, rows })
    }

    /// Union of the powers `G¹ ∪ G² ∪ … ∪ G^max_k`, with early exit once the
    /// union stops growing (it then never grows again).
    pub fn powers_union(&self, max_k: usize) -> Self {
        assert!(max_k >= 1, "powers_union requires max_k >= 1");
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 2..=max_k {
            cur = cur.product(self).expect("same dimension");
            let next = acc.union(&cur).expect("same dimension");
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// True iff the powers `G¹..Gⁿ` cover the full set `{0..n}²`, i.e. the
    /// matrix units indexed by `G` generate the whole matrix algebra.
    pub fn is_generating(&self) -> bool {
        self.powers_union(self.n).is_full()
    }

    /// Smallest pattern containing `self` (plus the diagonal when requested)
    /// that is closed under the pattern product. Squaring doubles the covered
    /// word length, so the loop runs O(log n) times.
    pub fn closure(&self, with_diagonal: bool) -> Self {
        let mut acc = if with_diagonal {
            self.with_diagonal()
        } else {
            self.clone()
        };
        loop {
            let sq = acc.product(&acc).expect("same dimension");
            let next = acc.union(&sq).expect("same dimension");
            if next == acc {
                return acc;
            }
            acc = next;
        }
    }

    /// True iff `self ∘ self ⊆ self`: the span of the corresponding matrix
    /// units is closed under multiplication.
    pub fn is_pattern_subalgebra(&self) -> bool {
        self.product(self).expect("same dimension").is_subset_of(self)
    }
}

impl fmt::Display for Pattern {
    /// Renders the 0/1 adjacency matrix, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            for m in 0..self.n {
                write!(f, "{}", u8::from(self.contains(k, m)))?;
            }
            if k + 1 < self.n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let edges: Vec<[usize; 2]> = self.edges().iter().map(|&(k, m)| [k + 1, m + 1]).collect();
        let mut s = serializer.serialize_struct("Pattern", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct PatternWire {
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    edges: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    adjacency: Option<Vec<Vec<u8>>>,
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PatternWire::deserialize(deserializer)?;
        match (wire.edges, wire.adjacency) {
            (Some(edges), None) => {
                let n = wire
                    .n
                    .ok_or_else(|| D::Error::custom("pattern edge form requires \"n\""))?;
                let mut p = Pattern::empty(n).map_err(D::Error::custom)?;
                for [k, m] in edges {
                    if k == 0 || m == 0 {
                        return Err(D::Error::custom("edge indices are 1-based"));
                    }
                    p.insert(k - 1, m - 1).map_err(D::Error::custom)?;
                }
                Ok(p)
            }
            (None, Some(adj)) => {
                if let Some(n) = wire.n {
                    if n != adj.len() {
                        return Err(D::Error::custom(format!(
                            "\"n\" = {} disagrees with {} adjacency rows",
                            n,
                            adj.len()
                        )));
                    }
                }
                Pattern::from_adjacency(&adj).map_err(D::Error::custom)
            }
            (Some(_), Some(_)) => Err(D::Error::custom(
                "pattern must use either \"edges\" or \"adjacency\", not both",
            )),
            (None, None) => Err(D::Error::custom(
                "pattern requires \"edges\" or \"adjacency\"",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(n: usize, edges: &[(usize, usize)]) -> Pattern {
        // test helper takes 1-based pairs to match the notation in the docs
        Pattern::from_edges(n, edges.iter().map(|&(k, m)| (k - 1, m - 1))).unwrap()
    }

    #[test]
    fn semiring_tables() {
        let (o, l) = (SemiringBit(false), SemiringBit(true));
        assert_eq!(o + o, o);
        assert_eq!(o + l, l);
        assert_eq!(l + l, l);
        assert_eq!(o * o, o);
        assert_eq!(o * l, o);
        assert_eq!(l * l, l);
    }

    #[test]
    fn product_of_two_cycle_is_identity() {
        let g = pat(2, &[(1, 2), (2, 1)]);
        let sq = g.product(&g).unwrap();
        assert_eq!(sq, pat(2, &[(1, 1), (2, 2)]));
        assert!(g.union(&sq).unwrap().is_full());
    }

    #[test]
    fn product_of_doubled_path() {
        let g = pat(3, &[(1, 2), (2, 1), (2, 3), (3, 2)]);
        let sq = g.product(&g).unwrap();
        assert_eq!(sq, pat(3, &[(1, 1), (1, 3), (2, 2), (3, 1), (3, 3)]));
        assert!(g.union(&sq).unwrap().is_full());
    }

    #[test]
    fn empty_annihilates() {
        let g = pat(3, &[(1, 2), (2, 3), (3, 1)]);
        let e = Pattern::empty(3).unwrap();
        assert_eq!(g.product(&e).unwrap(), e);
        assert_eq!(e.product(&g).unwrap(), e);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = Pattern::empty(2).unwrap();
        let b = Pattern::empty(3).unwrap();
        assert_eq!(
            a.product(&b).unwrap_err(),
            PatternError::DimensionMismatch(2, 3)
        );
    }

    #[test]
    fn powers_union_of_three_cycle_covers() {
        // adjacency rows (0,0,1),(1,0,0),(0,1,0)
        let g = pat(3, &[(1, 3), (2, 1), (3, 2)]);
        assert!(g.powers_union(3).is_full());
        assert!(!g.powers_union(2).is_full());
    }

    #[test]
    fn powers_union_nilpotent_edge() {
        let g = pat(2, &[(1, 2)]);
        assert_eq!(g.powers_union(5), g);
    }

    #[test]
    fn powers_union_doubled_star_covers_in_two() {
        let g = pat(3, &[(1, 3), (2, 3), (3, 1), (3, 2)]);
        assert!(g.powers_union(2).is_full());
    }

    #[test]
    fn generating_examples() {
        assert!(pat(2, &[(1, 2), (2, 1)]).is_generating());
        assert!(pat(3, &[(1, 2), (1, 3), (2, 1), (3, 1)]).is_generating());
        assert!(!pat(2, &[(1, 2)]).is_generating());
    }

    #[test]
    fn generating_on_one_vertex_requires_loop() {
        assert!(pat(1, &[(1, 1)]).is_generating());
        assert!(!Pattern::empty(1).unwrap().is_generating());
    }

    #[test]
    fn closure_examples() {
        let cycle = pat(3, &[(1, 2), (2, 3), (3, 1)]);
        assert!(cycle.closure(false).is_full());

        let single = pat(2, &[(1, 2)]);
        assert_eq!(single.closure(true), pat(2, &[(1, 1), (2, 2), (1, 2)]));

        let e = Pattern::empty(3).unwrap();
        assert_eq!(e.closure(false), e);
    }

    #[test]
    fn subalgebra_test_examples() {
        assert!(pat(2, &[(1, 1), (1, 2), (2, 2)]).is_pattern_subalgebra());
        assert!(!pat(2, &[(1, 2), (2, 1)]).is_pattern_subalgebra());
        assert!(Pattern::full(4).unwrap().is_pattern_subalgebra());
    }

    #[test]
    fn transpose_involution_and_edges() {
        let g = pat(3, &[(1, 2), (3, 1)]);
        assert_eq!(g.transpose().edges(), vec![(0, 2), (1, 0)]);
        assert_eq!(g.transpose().transpose(), g);
    }

    #[test]
    fn dimension_bounds() {
        assert!(Pattern::empty(0).is_err());
        assert!(Pattern::empty(65).is_err());
        assert!(Pattern::full(64).unwrap().is_full());
    }

    #[test]
    fn serde_edge_form_round_trip() {
        let g = pat(3, &[(1, 2), (2, 1), (3, 3)]);
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, r#"{"n":3,"edges":[[1,2],[2,1],[3,3]]}"#);
        let back: Pattern = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn serde_adjacency_form() {
        let g: Pattern =
            serde_json::from_str(r#"{"adjacency":[[0,1,0],[0,0,1],[1,0,0]]}"#).unwrap();
        assert_eq!(g, pat(3, &[(1, 2), (2, 3), (3, 1)]));
        // out-of-range and 0-based edges are rejected
        assert!(serde_json::from_str::<Pattern>(r#"{"n":2,"edges":[[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<Pattern>(r#"{"n":2,"edges":[[1,3]]}"#).is_err());
    }
}
