//! Enumeration of minimal strongly connected digraphs on `n` labeled
//! vertices: exact labeled counts, isomorphism-class counts, and
//! reproducible pattern streams.
//!
//! The sweep enumerates loop-free arc subsets by edge count. Two prunes keep
//! it tractable: the edge-count window `[n, 2(n−1)]` (validated against an
//! unpruned sweep by [`verify_edge_bound`]) and the requirement that every
//! vertex has in-degree and out-degree at least one. Candidates surviving the
//! strong-connectivity test are checked for minimality by literal single-arc
//! deletion. Isomorphism classes are counted by full-permutation canonical
//! forms, which is plenty at desk scale.

use crate::connectivity::strongly_connected_words;
use crate::pattern::Pattern;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::time::Instant;
use thiserror::Error;

/// Hard bound on the sweep dimension: beyond this the candidate space is not
/// desk-scale no matter the configuration.
pub const MAX_SWEEP_DIMENSION: usize = 8;

/// Bound for full-permutation canonicalization (10! permutations).
pub const MAX_CANONICAL_DIMENSION: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("dimension {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension must be between 1 and {max}, got {n}")]
    DimensionOutOfRange { n: usize, max: usize },
    #[error("the unpruned validation sweep is limited to 2 <= n <= 4, got {0}")]
    VerifyRange(usize),
}

/// Worker count and dimension cap for the sweep. `threads = 0` means one
/// worker per available CPU. The default cap of 6 covers every published
/// count this crate reproduces; raising it is allowed up to
/// [`MAX_SWEEP_DIMENSION`] but is compute-bound from 7 on.
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub threads: usize,
    pub cap: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self { threads: 0, cap: 6 }
    }
}

impl EnumerationConfig {
    fn worker_count(&self) -> usize {
        if self.threads > 0 {
            self.threads
        } else {
            std::thread::available_parallelism().map_or(1, |p| p.get())
        }
    }

    fn check(&self, n: usize) -> Result<(), EnumerationError> {
        if n == 0 || n > MAX_SWEEP_DIMENSION {
            return Err(EnumerationError::DimensionOutOfRange {
                n,
                max: MAX_SWEEP_DIMENSION,
            });
        }
        if n > self.cap {
            return Err(EnumerationError::CapExceeded { n, cap: self.cap });
        }
        Ok(())
    }
}

/// The lexicographically least row-major adjacency bit-string over all
/// simultaneous row/column permutations. Equal codes ⇔ isomorphic digraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    code: u128,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    /// The canonical representative pattern this code encodes.
    pub fn pattern(&self) -> Pattern {
        let nn = self.n * self.n;
        let mut p = Pattern::empty(self.n).expect("valid dimension");
        for k in 0..self.n {
            for m in 0..self.n {
                if self.code >> (nn - 1 - (k * self.n + m)) & 1 == 1 {
                    p.insert(k, m).expect("in range");
                }
            }
        }
        p
    }
}

/// One row of the count table. `seconds` is wall time for this row.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CountRow {
    pub n: usize,
    pub labeled: Option<u64>,
    pub unlabeled: Option<u64>,
    pub seconds: f64,
}

/// All permutations of `{0..n}` in a deterministic order.
pub fn vertex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(&mut cur, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn encode(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u128 {
    let nn = n * n;
    let mut code = 0u128;
    for &(k, m) in edges {
        code |= 1 << (nn - 1 - (perm[k] * n + perm[m]));
    }
    code
}

/// Minimum code over all vertex relabelings; idempotent under relabeling.
pub fn canonical_form(pattern: &Pattern) -> Result<CanonicalForm, EnumerationError> {
    let n = pattern.n();
    if n > MAX_CANONICAL_DIMENSION {
        return Err(EnumerationError::DimensionOutOfRange {
            n,
            max: MAX_CANONICAL_DIMENSION,
        });
    }
    let edges = pattern.edges();
    let code = vertex_permutations(n)
        .iter()
        .map(|perm| encode(n, &edges, perm))
        .min()
        .expect("at least the identity permutation");
    Ok(CanonicalForm { n, code })
}

/// Loop-free arc positions in row-major order: the fixed bit order for arc
/// masks throughout the sweep.
pub fn loop_free_arcs(n: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::with_capacity(n * (n - 1));
    for k in 0..n {
        for m in 0..n {
            if m != k {
                arcs.push((k, m));
            }
        }
    }
    arcs
}

/// The pattern selected by an arc mask over [`loop_free_arcs`].
pub fn pattern_from_arc_mask(n: usize, arcs: &[(usize, usize)], mask: u64) -> Pattern {
    let mut p = Pattern::empty(n).expect("valid dimension");
    let mut bits = mask;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (k, m) = arcs[j];
        p.insert(k, m).expect("in range");
    }
    p
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// The rank-`rank` combination of `count` bits out of `width`, in increasing
/// mask order (colexicographic on the position sets).
fn unrank_colex(width: usize, count: usize, mut rank: u64) -> u64 {
    let mut mask = 0u64;
    let mut bound = width;
    for j in (1..=count).rev() {
        let mut q = bound - 1;
        while binom(q, j) > rank {
            q -= 1;
        }
        mask |= 1 << q;
        rank -= binom(q, j);
        bound = q;
    }
    mask
}

/// Next mask with the same popcount in increasing order (Gosper's hack).
fn next_combination(mask: u64) -> u64 {
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((r ^ mask) >> 2) / c) | r
}

struct ArcTable {
    n: usize,
    row_of: Vec<usize>,
    col_of: Vec<usize>,
    full: u64,
}

impl ArcTable {
    fn new(n: usize) -> Self {
        let arcs = loop_free_arcs(n);
        Self {
            n,
            row_of: arcs.iter().map(|&(k, _)| k).collect(),
            col_of: arcs.iter().map(|&(_, m)| m).collect(),
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    fn decode(&self, mask: u64, rows: &mut [u64], cols: &mut [u64]) {
        rows[..self.n].fill(0);
        cols[..self.n].fill(0);
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            rows[self.row_of[j]] |= 1 << self.col_of[j];
            cols[self.col_of[j]] |= 1 << self.row_of[j];
        }
    }

    /// Full minimality check on a decoded candidate. `rows`/`cols` are
    /// restored before returning.
    fn is_minimal_scc(&self, mask: u64, rows: &mut [u64], cols: &mut [u64]) -> bool {
        if !strongly_connected_words(&rows[..self.n], &cols[..self.n], self.full) {
            return false;
        }
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (k, m) = (self.row_of[j], self.col_of[j]);
            rows[k] &= !(1 << m);
            cols[m] &= !(1 << k);
            let still = strongly_connected_words(&rows[..self.n], &cols[..self.n], self.full);
            rows[k] |= 1 << m;
            cols[m] |= 1 << k;
            if still {
                return false;
            }
        }
        true
    }

    fn degrees_ok(&self, rows: &[u64], cols: &[u64]) -> bool {
        rows[..self.n].iter().all(|&r| r != 0) && cols[..self.n].iter().all(|&c| c != 0)
    }

    fn edges_of_mask(&self, mask: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out.push((self.row_of[j], self.col_of[j]));
        }
        out
    }
}

struct ScanResult {
    labeled: u64,
    codes: Option<HashSet<u128>>,
}

/// Scans combination ranks `[lo, hi)` of `edge_count`-subsets, counting
/// minimal strongly connected candidates and optionally their canonical codes.
fn scan_range(
    table: &ArcTable,
    edge_count: usize,
    lo: u64,
    hi: u64,
    perms: Option<&[Vec<usize>]>,
    mut sink: Option<&mut dyn FnMut(u64)>,
) -> ScanResult {
    let n = table.n;
    let mut rows = [0u64; MAX_SWEEP_DIMENSION];
    let mut cols = [0u64; MAX_SWEEP_DIMENSION];
    let mut labeled = 0u64;
    let mut codes = perms.map(|_| HashSet::new());
    if lo >= hi {
        return ScanResult { labeled, codes };
    }
    let mut mask = unrank_colex(n * (n - 1), edge_count, lo);
    for step in lo..hi {
        if step != lo {
            mask = next_combination(mask);
        }
        table.decode(mask, &mut rows, &mut cols);
        if !table.degrees_ok(&rows, &cols) {
            continue;
        }
        if !table.is_minimal_scc(mask, &mut rows, &mut cols) {
            continue;
        }
        labeled += 1;
        if let (Some(codes), Some(perms)) = (codes.as_mut(), perms) {
            let edges = table.edges_of_mask(mask);
            let code = perms
                .iter()
                .map(|perm| encode(n, &edges, perm))
                .min()
                .expect("nonempty permutation list");
            codes.insert(code);
        }
        if let Some(cb) = sink.as_deref_mut() {
            cb(mask);
        }
    }
    ScanResult { labeled, codes }
}

fn edge_window(n: usize) -> std::ops::RangeInclusive<usize> {
    n..=2 * (n - 1)
}

/// Full sweep over the edge-count window, parallelized over contiguous
/// combination-rank chunks. Counts merge by addition and canonical codes by
/// set union, so the result is independent of the partitioning.
fn sweep_counts(
    n: usize,
    cfg: &EnumerationConfig,
    want_unlabeled: bool,
) -> (u64, Option<u64>) {
    if n == 1 {
        return (1, Some(1));
    }
    let table = ArcTable::new(n);
    let perms = want_unlabeled.then(|| vertex_permutations(n));
    let workers = cfg.worker_count().max(1);
    let mut labeled = 0u64;
    let mut codes: Option<HashSet<u128>> = want_unlabeled.then(HashSet::new);
    for edge_count in edge_window(n) {
        let total = binom(n * (n - 1), edge_count);
        let chunk = total.div_ceil(workers as u64).max(1);
        let results: Vec<ScanResult> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = (w as u64 * chunk).min(total);
                    let hi = ((w as u64 + 1) * chunk).min(total);
                    let table = &table;
                    let perms = perms.as_deref();
                    scope.spawn(move || scan_range(table, edge_count, lo, hi, perms, None))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for r in results {
            labeled += r.labeled;
            if let (Some(acc), Some(found)) = (codes.as_mut(), r.codes) {
                acc.extend(found);
            }
        }
    }
    (labeled, codes.map(|c| c.len() as u64))
}

/// Exact count of loop-free minimal strongly connected patterns on `n`
/// vertices: all labelings, or isomorphism classes when `labeled` is false.
pub fn enumerate_minimal_scc(
    n: usize,
    labeled: bool,
    cfg: &EnumerationConfig,
) -> Result<u64, EnumerationError> {
    cfg.check(n)?;
    let (lab, unlab) = sweep_counts(n, cfg, !labeled);
    Ok(if labeled {
        lab
    } else {
        unlab.expect("unlabeled count was requested")
    })
}

/// Streaming enumeration in the deterministic order (edge count ascending,
/// then increasing arc mask). Labeled mode streams every pattern; unlabeled
/// mode streams the canonical representative of each class at first
/// encounter. Returns the count. Single-threaded so the stream order is
/// reproducible.
pub fn stream_minimal_scc(
    n: usize,
    labeled: bool,
    cfg: &EnumerationConfig,
    mut sink: impl FnMut(&Pattern),
) -> Result<u64, EnumerationError> {
    cfg.check(n)?;
    if n == 1 {
        sink(&Pattern::empty(1).expect("valid dimension"));
        return Ok(1);
    }
    let table = ArcTable::new(n);
    let arcs = loop_free_arcs(n);
    let perms = (!labeled).then(|| vertex_permutations(n));
    let mut seen: HashSet<u128> = HashSet::new();
    let mut count = 0u64;
    for edge_count in edge_window(n) {
        let total = binom(n * (n - 1), edge_count);
        let mut emit = |mask: u64| {
            if let Some(perms) = perms.as_deref() {
                let edges = table.edges_of_mask(mask);
                let code = perms
                    .iter()
                    .map(|perm| encode(n, &edges, perm))
                    .min()
                    .expect("nonempty permutation list");
                if seen.insert(code) {
                    count += 1;
                    sink(&CanonicalForm { n, code }.pattern());
                }
            } else {
                count += 1;
                sink(&pattern_from_arc_mask(n, &arcs, mask));
            }
        };
        scan_range(&table, edge_count, 0, total, None, Some(&mut emit));
    }
    Ok(count)
}

/// One table row; computes whichever counts are requested in a single sweep.
pub fn count_table_row(
    n: usize,
    want_labeled: bool,
    want_unlabeled: bool,
    cfg: &EnumerationConfig,
) -> Result<CountRow, EnumerationError> {
    cfg.check(n)?;
    let start = Instant::now();
    let (lab, unlab) = sweep_counts(n, cfg, want_unlabeled);
    Ok(CountRow {
        n,
        labeled: want_labeled.then_some(lab),
        unlabeled: if want_unlabeled { unlab } else { None },
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Edge counts of minimal strongly connected patterns found by an unpruned
/// sweep over all loop-free patterns (no window, no degree filter).
pub fn minimal_scc_edge_counts(
    n: usize,
) -> Result<std::collections::BTreeSet<usize>, EnumerationError> {
    if !(2..=4).contains(&n) {
        return Err(EnumerationError::VerifyRange(n));
    }
    let table = ArcTable::new(n);
    let mut rows = [0u64; MAX_SWEEP_DIMENSION];
    let mut cols = [0u64; MAX_SWEEP_DIMENSION];
    let mut counts = std::collections::BTreeSet::new();
    for mask in 0..1u64 << (n * (n - 1)) {
        table.decode(mask, &mut rows, &mut cols);
        if table.is_minimal_scc(mask, &mut rows, &mut cols) {
            counts.insert(mask.count_ones() as usize);
        }
    }
    Ok(counts)
}

/// Validates the pruning window against the unpruned sweep: true iff every
/// minimal strongly connected pattern has between `n` and `2(n−1)` arcs.
pub fn verify_edge_bound(n: usize) -> Result<bool, EnumerationError> {
    let counts = minimal_scc_edge_counts(n)?;
    Ok(counts
        .iter()
        .all(|&c| edge_window(n).contains(&c)))
}
