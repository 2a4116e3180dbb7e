//! Brute-force ground truth in exact arithmetic, independent of the
//! support-digraph classification path.
//!
//! Everything here works on flattened matrices (row-major coordinates in
//! `ℂ^{n²}`) with exact Gaussian elimination: generated-algebra dimension by
//! span closure under products, commutant bases by exact null spaces,
//! decomposability by exhaustive subset scan, and the common-eigenvector
//! criterion via intersected commutator kernels. Nothing in this module looks
//! at connectivity, so agreement with the `criteria` module is a real check.

use crate::lattice::IndexSubset;
use crate::matrix::{commutator, DiagonalSpectrum, Matrix};
use crate::scalar::ComplexRational;
use thiserror::Error;

/// The decomposability scan is exponential by design; it refuses dimensions
/// where `2ⁿ` subsets stop being a desk-scale computation.
pub const MAX_SCAN_DIMENSION: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("input list must be nonempty")]
    EmptyInput,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("exhaustive subset scan limited to n <= {MAX_SCAN_DIMENSION}, got {0}")]
    ScanTooLarge(usize),
    #[error("entries failed the genericity check twice: generated dimension {got} below the pattern-predicted {expected}")]
    GenericityFailure { expected: usize, got: usize },
}

/// A reduced-echelon basis of a subspace of the `n²`-dimensional matrix
/// space. Pivot coordinates (row-major flattening order) are strictly
/// increasing, so equal subspaces have identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    n: usize,
    basis: Vec<Matrix>,
}

impl SpanBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// True iff the matrix lies in the spanned subspace.
    pub fn contains(&self, m: &Matrix) -> bool {
        if m.n() != self.n {
            return false;
        }
        let ech = Echelon::from_rows(
            self.n * self.n,
            self.basis.iter().map(|b| b.flat().to_vec()),
        );
        ech.reduces_to_zero(m.flat().to_vec())
    }

    /// The union of the supports of the basis elements.
    pub fn support_union(&self) -> crate::pattern::Pattern {
        let mut acc = crate::pattern::Pattern::empty(self.n).expect("valid dimension");
        for b in &self.basis {
            acc = acc.union(&b.support()).expect("same dimension");
        }
        acc
    }
}

/// Exact row-reduction state: rows kept in reduced echelon form, pivots
/// strictly increasing, pivot entries 1, pivot columns cleared elsewhere.
struct Echelon {
    width: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<ComplexRational>>,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Self {
            width,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn from_rows(width: usize, rows: impl IntoIterator<Item = Vec<ComplexRational>>) -> Self {
        let mut e = Self::new(width);
        for r in rows {
            e.insert(r);
        }
        e
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// target -= coeff·source, skipping zero source entries.
    fn subtract_scaled(target: &mut [ComplexRational], coeff: &ComplexRational, source: &[ComplexRational]) {
        for (t, s) in target.iter_mut().zip(source) {
            if !s.is_zero() {
                *t = &*t - &(coeff * s);
            }
        }
    }

    fn reduce(&self, v: &mut [ComplexRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                Self::subtract_scaled(v, &c, row);
            }
        }
    }

    fn reduces_to_zero(&self, mut v: Vec<ComplexRational>) -> bool {
        self.reduce(&mut v);
        v.iter().all(ComplexRational::is_zero)
    }

    /// Inserts a vector; returns true if it enlarged the span.
    fn insert(&mut self, v: Vec<ComplexRational>) -> bool {
        self.insert_returning(v).is_some()
    }

    /// Inserts a vector and, when it enlarged the span, returns the reduced,
    /// pivot-normalized row that entered the basis. Reduced rows are the
    /// representatives of choice for further products: their entries are
    /// ratios of minors of the inputs rather than deep product monomials, so
    /// they stay small.
    fn insert_returning(&mut self, mut v: Vec<ComplexRational>) -> Option<Vec<ComplexRational>> {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let p = v.iter().position(|c| !c.is_zero())?;
        let inv = v[p].inverse().expect("pivot is nonzero");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(rp != p);
            let c = row[p].clone();
            if !c.is_zero() {
                Self::subtract_scaled(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v.clone());
        Some(v)
    }

    /// A basis of the null space `{x : R·x = 0}` of the row space: one vector
    /// per free coordinate.
    fn nullspace(&self) -> Vec<Vec<ComplexRational>> {
        let mut out = Vec::with_capacity(self.width - self.rank());
        for free in 0..self.width {
            if self.pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![ComplexRational::zero(); self.width];
            v[free] = ComplexRational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -&row[free];
                }
            }
            out.push(v);
        }
        out
    }
}

fn check_family(mats: &[Matrix]) -> Result<usize, OracleError> {
    let first = mats.first().ok_or(OracleError::EmptyInput)?;
    let n = first.n();
    for m in mats {
        if m.n() != n {
            return Err(OracleError::DimensionMismatch(n, m.n()));
        }
    }
    Ok(n)
}

fn span_basis_from_echelon(n: usize, ech: Echelon) -> SpanBasis {
    SpanBasis {
        n,
        basis: ech
            .rows
            .into_iter()
            .map(|v| Matrix::from_flat(n, v))
            .collect(),
    }
}

/// The smallest (non-unital) associative span containing the inputs: seed
/// with the inputs, keep adjoining pairwise products of representatives until
/// nothing new appears. Terminates because the dimension is capped by `n²`.
pub fn generated_algebra(mats: &[Matrix]) -> Result<SpanBasis, OracleError> {
    let n = check_family(mats)?;
    let mut ech = Echelon::new(n * n);
    let mut reps: Vec<Matrix> = Vec::new();
    // breadth-first and over primitive reduced representatives rather than
    // raw products: shallow products enter the basis while entries are still
    // small, which keeps the exact arithmetic from compounding
    let mut queue: std::collections::VecDeque<Matrix> = mats.iter().cloned().collect();
    while let Some(m) = queue.pop_front() {
        let Some(reduced) = ech.insert_returning(m.flat().to_vec()) else {
            continue;
        };
        let rep = Matrix::from_flat(n, primitive_scale(reduced));
        for r in &reps {
            queue.push_back(r.mul(&rep).expect("same dimension"));
            queue.push_back(rep.mul(r).expect("same dimension"));
        }
        queue.push_back(rep.mul(&rep).expect("same dimension"));
        reps.push(rep);
    }
    Ok(span_basis_from_echelon(n, ech))
}

/// Rescales a vector to its primitive integer form: multiplies away all
/// denominators, then divides out the common content. Scalar multiples span
/// the same direction, and primitive entries keep products small.
fn primitive_scale(mut v: Vec<ComplexRational>) -> Vec<ComplexRational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let mut den_lcm = BigInt::one();
    for c in &v {
        for part in [c.re(), c.im()] {
            if !part.numer().is_zero() {
                den_lcm = den_lcm.lcm(part.denom());
            }
        }
    }
    let mut content = BigInt::zero();
    for c in &v {
        for part in [c.re(), c.im()] {
            if !part.numer().is_zero() {
                content = content.gcd(&(part.numer() * (&den_lcm / part.denom())));
            }
        }
    }
    if content.is_zero() {
        return v;
    }
    let scale = ComplexRational::from_integer_parts(den_lcm, content, BigInt::zero(), BigInt::one())
        .expect("nonzero content");
    for c in v.iter_mut() {
        *c = &*c * &scale;
    }
    v
}

/// Basis of `{B : [M,B] = 0 for every input M}` via the exact null space of
/// the stacked linear system on the `n²` entries of `B`.
pub fn commutant_basis(mats: &[Matrix]) -> Result<SpanBasis, OracleError> {
    let n = check_family(mats)?;
    let width = n * n;
    let mut constraints = Echelon::new(width);
    for m in mats {
        // (M·B − B·M)[k][q] = Σ_p M[k][p]·B[p][q] − B[k][p]·M[p][q]
        for k in 0..n {
            for q in 0..n {
                let mut row = vec![ComplexRational::zero(); width];
                for p in 0..n {
                    let a = m.get(k, p);
                    if !a.is_zero() {
                        row[p * n + q] = &row[p * n + q] + a;
                    }
                    let b = m.get(p, q);
                    if !b.is_zero() {
                        row[k * n + p] = &row[k * n + p] - b;
                    }
                }
                constraints.insert(row);
            }
        }
    }
    let mut kernel = Echelon::new(width);
    for v in constraints.nullspace() {
        kernel.insert(v);
    }
    Ok(span_basis_from_echelon(n, kernel))
}

/// True iff the coordinate subspace named by `subset` is invariant under
/// every input: columns inside the subset never hit rows outside it.
pub fn coordinate_subspace_invariant(mats: &[Matrix], subset: &IndexSubset) -> bool {
    mats.iter().all(|m| {
        (0..m.n()).all(|k| {
            subset.contains(k)
                || (0..m.n()).all(|col| !subset.contains(col) || m.get(k, col).is_zero())
        })
    })
}

/// Exhaustive decomposability scan: some proper nonempty subset has both its
/// coordinate subspace and the complement's invariant under `Λ` and `A`.
pub fn is_decomposable(spectrum: &DiagonalSpectrum, a: &Matrix) -> Result<bool, OracleError> {
    let n = spectrum.n();
    if a.n() != n {
        return Err(OracleError::DimensionMismatch(n, a.n()));
    }
    if n > MAX_SCAN_DIMENSION {
        return Err(OracleError::ScanTooLarge(n));
    }
    if n == 1 {
        return Ok(false);
    }
    let mats = [spectrum.to_matrix(), a.clone()];
    let full = (1u64 << n) - 1;
    for mask in 1..full {
        let i = IndexSubset::from_mask(n, mask).expect("proper nonempty");
        if coordinate_subspace_invariant(&mats, &i)
            && coordinate_subspace_invariant(&mats, &i.complement())
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff `A` and `B` share an eigenvector: the intersection of the null
/// spaces of every commutator `[A^k, B^l]`, `1 ≤ k,l ≤ n−1`, is nonzero.
/// One-dimensional inputs trivially share an eigenvector.
pub fn shemesh_common_eigenvector(a: &Matrix, b: &Matrix) -> Result<bool, OracleError> {
    let n = a.n();
    if b.n() != n {
        return Err(OracleError::DimensionMismatch(n, b.n()));
    }
    if n == 1 {
        return Ok(true);
    }
    let mut a_pow = a.clone();
    let mut constraints = Echelon::new(n);
    for _ in 1..n {
        let mut b_pow = b.clone();
        for _ in 1..n {
            let c = commutator(&a_pow, &b_pow).expect("same dimension");
            for k in 0..n {
                let row: Vec<ComplexRational> = (0..n).map(|m| c.get(k, m).clone()).collect();
                constraints.insert(row);
            }
            b_pow = b_pow.mul(b).expect("same dimension");
        }
        a_pow = a_pow.mul(a).expect("same dimension");
    }
    Ok(constraints.rank() < n)
}

/// Random generic instances: rationals small enough to stay fast, nonzero by
/// construction, validated against the pattern-predicted dimension.
pub mod generic {
    use super::{generated_algebra, OracleError};
    use crate::matrix::{DiagonalSpectrum, Matrix};
    use crate::pattern::Pattern;
    use crate::scalar::ComplexRational;
    use num_bigint::BigInt;
    use rand::Rng;

    /// A uniformly drawn nonzero rational with numerator and denominator
    /// bounded by 100 in absolute value.
    pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> ComplexRational {
        let num: i64 = if rng.random_bool(0.5) {
            rng.random_range(1..=100)
        } else {
            rng.random_range(-100..=-1)
        };
        let den: i64 = rng.random_range(1..=100);
        ComplexRational::from_integer_parts(
            BigInt::from(num),
            BigInt::from(den),
            0.into(),
            1.into(),
        )
        .expect("nonzero denominator")
    }

    /// A matrix with the given support and random nonzero rational entries.
    pub fn matrix_with_support<R: Rng + ?Sized>(pattern: &Pattern, rng: &mut R) -> Matrix {
        let mut m = Matrix::zero(pattern.n()).expect("valid dimension");
        for (k, col) in pattern.edges() {
            m.set(k, col, random_nonzero_rational(rng));
        }
        m
    }

    /// A spectrum of pairwise distinct nonzero rationals, by rejection.
    pub fn random_spectrum<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DiagonalSpectrum {
        loop {
            let lambdas: Vec<ComplexRational> =
                (0..n).map(|_| random_nonzero_rational(rng)).collect();
            if let Ok(s) = DiagonalSpectrum::new(lambdas) {
                return s;
            }
        }
    }

    /// Draws a generic matrix for the support and verifies genericity: the
    /// algebra generated by `(Λ, A)` must reach the dimension predicted by
    /// the pattern closure of the support plus the diagonal. A failed draw is
    /// retried once, then reported as an error rather than silently accepted.
    /// Returns the matrix together with the verified generated dimension.
    pub fn matrix_with_support_validated<R: Rng + ?Sized>(
        pattern: &Pattern,
        spectrum: &DiagonalSpectrum,
        rng: &mut R,
    ) -> Result<(Matrix, usize), OracleError> {
        // the generated algebra of a generic draw spans one matrix unit per
        // pair in the closure of the support plus the diagonal
        let expected = pattern.closure(true).len();
        let lam = spectrum.to_matrix();
        let mut last = 0;
        for _ in 0..2 {
            let a = matrix_with_support(pattern, rng);
            let dim = generated_algebra(&[lam.clone(), a.clone()])?.dimension();
            if dim == expected {
                return Ok((a, dim));
            }
            last = dim;
        }
        Err(OracleError::GenericityFailure {
            expected,
            got: last,
        })
    }
}
