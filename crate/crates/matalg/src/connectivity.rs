//! Digraph views of patterns: weak/strong connectivity, components, and the
//! minimality test used by the enumeration sweep.
//!
//! Self-loops carry no connectivity information: every predicate here ignores
//! them, and a minimal strongly connected digraph cannot contain one (its
//! removal never destroys connectivity).

use crate::pattern::Pattern;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A partition of `{0..n}` into disjoint nonempty blocks, each sorted, with
/// blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        debug_assert_eq!(blocks.iter().map(Vec::len).sum::<usize>(), n);
        Self { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let one_based: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|v| v + 1).collect())
            .collect();
        one_based.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let one_based = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut blocks = Vec::with_capacity(one_based.len());
        for b in one_based {
            if b.is_empty() {
                return Err(D::Error::custom("partition blocks must be nonempty"));
            }
            let mut block = Vec::with_capacity(b.len());
            for v in b {
                if v == 0 {
                    return Err(D::Error::custom("partition indices are 1-based"));
                }
                if !seen.insert(v) {
                    return Err(D::Error::custom("partition blocks must be disjoint"));
                }
                block.push(v - 1);
            }
            blocks.push(block);
        }
        let n = seen.len();
        if seen.last() != Some(&n) {
            return Err(D::Error::custom("partition must cover 1..n without gaps"));
        }
        Ok(Partition::new(n, blocks))
    }
}

/// Vertices reachable from `start` by directed paths of length ≥ 0, as a bit
/// mask, given adjacency rows.
pub(crate) fn reach_mask(rows: &[u64], start: usize) -> u64 {
    let mut reach = 1u64 << start;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[v];
        }
        frontier = next & !reach;
        reach |= frontier;
    }
    reach
}

/// Strong connectivity on raw adjacency words: everything reachable from
/// vertex 0 forwards and backwards. `cols` are the transposed rows.
pub(crate) fn strongly_connected_words(rows: &[u64], cols: &[u64], full: u64) -> bool {
    reach_mask(rows, 0) == full && reach_mask(cols, 0) == full
}

fn loop_free_rows(pattern: &Pattern) -> Vec<u64> {
    (0..pattern.n())
        .map(|k| pattern.row_bits(k) & !(1u64 << k))
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// True iff every ordered vertex pair is joined by a directed path
/// (self-loops ignored; a single vertex counts as strongly connected).
pub fn strongly_connected(pattern: &Pattern) -> bool {
    let n = pattern.n();
    let rows = loop_free_rows(pattern);
    let cols = loop_free_rows(&pattern.transpose());
    strongly_connected_words(&rows, &cols, full_mask(n))
}

/// True iff the underlying undirected graph is connected.
pub fn weakly_connected(pattern: &Pattern) -> bool {
    let n = pattern.n();
    let rows = loop_free_rows(pattern);
    let cols = loop_free_rows(&pattern.transpose());
    let sym: Vec<u64> = rows.iter().zip(&cols).map(|(r, c)| r | c).collect();
    reach_mask(&sym, 0) == full_mask(n)
}

/// The partition into maximal weakly connected blocks.
pub fn weak_components(pattern: &Pattern) -> Partition {
    let n = pattern.n();
    let rows = loop_free_rows(pattern);
    let cols = loop_free_rows(&pattern.transpose());
    let sym: Vec<u64> = rows.iter().zip(&cols).map(|(r, c)| r | c).collect();
    let mut assigned = 0u64;
    let mut blocks = Vec::new();
    for v in 0..n {
        if assigned >> v & 1 == 1 {
            continue;
        }
        let mask = reach_mask(&sym, v);
        assigned |= mask;
        blocks.push(mask_to_vec(mask));
    }
    Partition::new(n, blocks)
}

fn mask_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// The partition into maximal strongly connected blocks (Tarjan).
pub fn strong_components(pattern: &Pattern) -> Partition {
    let n = pattern.n();
    let rows = loop_free_rows(pattern);
    let mut state = TarjanState {
        rows: &rows,
        index: 0,
        stack: Vec::new(),
        on_stack: 0,
        idx: vec![usize::MAX; n],
        low: vec![0; n],
        blocks: Vec::new(),
    };
    for v in 0..n {
        if state.idx[v] == usize::MAX {
            state.connect(v);
        }
    }
    Partition::new(n, state.blocks)
}

struct TarjanState<'a> {
    rows: &'a [u64],
    index: usize,
    stack: Vec<usize>,
    on_stack: u64,
    idx: Vec<usize>,
    low: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl TarjanState<'_> {
    fn connect(&mut self, v: usize) {
        self.idx[v] = self.index;
        self.low[v] = self.index;
        self.index += 1;
        self.stack.push(v);
        self.on_stack |= 1 << v;

        let mut bits = self.rows[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.idx[w] == usize::MAX {
                self.connect(w);
                self.low[v] = self.low[v].min(self.low[w]);
            } else if self.on_stack >> w & 1 == 1 {
                self.low[v] = self.low[v].min(self.idx[w]);
            }
        }

        if self.low[v] == self.idx[v] {
            let mut block = Vec::new();
            loop {
                let w = self.stack.pop().expect("stack holds the component");
                self.on_stack &= !(1 << w);
                block.push(w);
                if w == v {
                    break;
                }
            }
            self.blocks.push(block);
        }
    }
}

/// True iff the pattern is strongly connected and removing any single arc
/// destroys strong connectivity. Patterns containing a self-loop are never
/// minimal.
pub fn minimal_strongly_connected(pattern: &Pattern) -> bool {
    if pattern.has_diagonal_pair() {
        return false;
    }
    let n = pattern.n();
    let full = full_mask(n);
    let mut rows = loop_free_rows(pattern);
    let mut cols = loop_free_rows(&pattern.transpose());
    if !strongly_connected_words(&rows, &cols, full) {
        return false;
    }
    for (k, m) in pattern.edges() {
        rows[k] &= !(1 << m);
        cols[m] &= !(1 << k);
        let still = strongly_connected_words(&rows, &cols, full);
        rows[k] |= 1 << m;
        cols[m] |= 1 << k;
        if still {
            return false;
        }
    }
    true
}
