//! Dense square matrices over exact complex rationals, diagonal spectra, and
//! the polynomial interpolation that carves diagonal matrix units out of a
//! diagonal matrix with distinct nonzero eigenvalues.

use crate::pattern::{Pattern, MAX_DIMENSION};
use crate::scalar::ComplexRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension must be between 1 and {MAX_DIMENSION}, got {0}")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index ({k},{m}) out of range for dimension {n}")]
    IndexOutOfRange { k: usize, m: usize, n: usize },
    #[error("entry ({k},{m}) is not finite")]
    NotFinite { k: usize, m: usize },
}

/// Validation failures of a diagonal spectrum. The classification theorems
/// assume distinct nonzero eigenvalues; inputs violating either hypothesis are
/// rejected, never approximated.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("spectrum violates the distinct hypothesis: eigenvalues {0} and {1} are equal (1-based)")]
    Repeated(usize, usize),
    #[error("spectrum violates the nonzero hypothesis: eigenvalue {0} is zero (1-based)")]
    Zero(usize),
    #[error("dimension must be between 1 and {MAX_DIMENSION}, got {0}")]
    InvalidDimension(usize),
}

/// An `n×n` matrix over [`ComplexRational`], row-major. The dimension is
/// fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<ComplexRational>,
}

impl Matrix {
    fn check_dimension(n: usize) -> Result<(), MatrixError> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(MatrixError::InvalidDimension(n));
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Result<Self, MatrixError> {
        Self::check_dimension(n)?;
        Ok(Self {
            n,
            entries: vec![ComplexRational::zero(); n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zero(n)?;
        for k in 0..n {
            m.entries[k * n + k] = ComplexRational::one();
        }
        Ok(m)
    }

    /// The matrix unit with a single 1 in position `(k,m)` (0-based). Products
    /// follow `unit(k,m)·unit(p,q) = δ_{mp}·unit(k,q)`.
    pub fn unit(n: usize, k: usize, m: usize) -> Result<Self, MatrixError> {
        let mut out = Self::zero(n)?;
        if k >= n || m >= n {
            return Err(MatrixError::IndexOutOfRange { k, m, n });
        }
        out.entries[k * n + m] = ComplexRational::one();
        Ok(out)
    }

    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        Self::check_dimension(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::DimensionMismatch(row.len(), n));
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ComplexRational) -> Result<Self, MatrixError> {
        Self::check_dimension(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for k in 0..n {
            for m in 0..n {
                entries.push(f(k, m));
            }
        }
        Ok(Self { n, entries })
    }

    pub(crate) fn from_flat(n: usize, entries: Vec<ComplexRational>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, m: usize) -> &ComplexRational {
        &self.entries[k * self.n + m]
    }

    pub fn set(&mut self, k: usize, m: usize, v: ComplexRational) {
        self.entries[k * self.n + m] = v;
    }

    /// Row-major flattening, the coordinate order used by the span oracles.
    pub fn flat(&self) -> &[ComplexRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ComplexRational::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same(other)?;
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, s: &ComplexRational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = Self::zero(n)?;
        for k in 0..n {
            for p in 0..n {
                let a = &self.entries[k * n + p];
                if a.is_zero() {
                    continue;
                }
                for m in 0..n {
                    let b = &other.entries[p * n + m];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.entries[k * n + m] + &(a * b);
                    out.entries[k * n + m] = cur;
                }
            }
        }
        Ok(out)
    }

    /// Matrix power with exponent ≥ 1.
    pub fn pow(&self, e: u32) -> Result<Self, MatrixError> {
        assert!(e >= 1, "pow requires exponent >= 1");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |k, m| self.entries[m * n + k].clone()).expect("valid dimension")
    }

    /// The index pairs of nonzero entries. Exact entries use exact zero
    /// testing; there is no tolerance on this path.
    pub fn support(&self) -> Pattern {
        let mut p = Pattern::empty(self.n).expect("matrix dimension is a valid pattern dimension");
        for k in 0..self.n {
            for m in 0..self.n {
                if !self.entries[k * self.n + m].is_zero() {
                    p.insert(k, m).expect("in range");
                }
            }
        }
        p
    }
}

/// `XY − YX`, exact.
pub fn commutator(x: &Matrix, y: &Matrix) -> Result<Matrix, MatrixError> {
    x.mul(y)?.sub(&y.mul(x)?)
}

/// Float-entry ingestion form of a matrix. Entries are `(re, im)` pairs; the
/// only tolerance in the crate applies here, at support extraction and when
/// snapping to exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    entries: Vec<(f64, f64)>,
}

impl FloatMatrix {
    pub fn from_rows(rows: Vec<Vec<(f64, f64)>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        Matrix::check_dimension(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::DimensionMismatch(row.len(), n));
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `{(k,m) : |a_{km}| > tolerance}`.
    pub fn support(&self, tolerance: f64) -> Pattern {
        assert!(tolerance >= 0.0, "tolerance must be nonnegative");
        let mut p = Pattern::empty(self.n).expect("valid dimension");
        for k in 0..self.n {
            for m in 0..self.n {
                let (re, im) = self.entries[k * self.n + m];
                if re.hypot(im) > tolerance {
                    p.insert(k, m).expect("in range");
                }
            }
        }
        p
    }

    /// Converts to an exact matrix: entries with modulus at most `tolerance`
    /// become exact zero, the rest take their exact binary value. The support
    /// of the result equals [`FloatMatrix::support`] at the same tolerance.
    pub fn snap(&self, tolerance: f64) -> Result<Matrix, MatrixError> {
        assert!(tolerance >= 0.0, "tolerance must be nonnegative");
        let mut out = Matrix::zero(self.n)?;
        for k in 0..self.n {
            for m in 0..self.n {
                let (re, im) = self.entries[k * self.n + m];
                if re.hypot(im) > tolerance {
                    let v = ComplexRational::from_f64_parts(re, im)
                        .ok_or(MatrixError::NotFinite { k, m })?;
                    out.set(k, m, v);
                }
            }
        }
        Ok(out)
    }
}

/// The eigenvalue list of a diagonal matrix, validated to be pairwise
/// distinct and nonzero (exact comparisons).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSpectrum {
    lambdas: Vec<ComplexRational>,
}

impl DiagonalSpectrum {
    pub fn new(lambdas: Vec<ComplexRational>) -> Result<Self, SpectrumError> {
        let n = lambdas.len();
        if n == 0 || n > MAX_DIMENSION {
            return Err(SpectrumError::InvalidDimension(n));
        }
        for (k, v) in lambdas.iter().enumerate() {
            if v.is_zero() {
                return Err(SpectrumError::Zero(k + 1));
            }
            for (j, w) in lambdas.iter().enumerate().take(k) {
                if v == w {
                    return Err(SpectrumError::Repeated(j + 1, k + 1));
                }
            }
        }
        Ok(Self { lambdas })
    }

    /// `diag(1, 2, …, n)`.
    pub fn first_integers(n: usize) -> Result<Self, SpectrumError> {
        Self::new((1..=n as i64).map(ComplexRational::from_int).collect())
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[ComplexRational] {
        &self.lambdas
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zero(n).expect("valid dimension");
        for (k, v) in self.lambdas.iter().enumerate() {
            m.set(k, k, v.clone());
        }
        m
    }
}

/// A polynomial over [`ComplexRational`] with coefficients in ascending
/// degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<ComplexRational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<ComplexRational>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ComplexRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &ComplexRational) -> ComplexRational {
        let mut acc = ComplexRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluates the polynomial at a diagonal matrix: entrywise on the
    /// spectrum. Because the constant terms here are always zero, the result
    /// stays inside the non-unital algebra generated by the diagonal.
    pub fn eval_diagonal(&self, spectrum: &DiagonalSpectrum) -> Matrix {
        let n = spectrum.n();
        let mut m = Matrix::zero(n).expect("valid dimension");
        for (k, lambda) in spectrum.lambdas().iter().enumerate() {
            m.set(k, k, self.eval(lambda));
        }
        m
    }

    fn x() -> Self {
        Self::new(vec![ComplexRational::zero(), ComplexRational::one()])
    }

    fn mul_linear(&self, root: &ComplexRational) -> Self {
        // multiply by (x − root)
        let mut out = vec![ComplexRational::zero(); self.coeffs.len() + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            out[d + 1] = &out[d + 1] + c;
            out[d] = &out[d] - &(c * root);
        }
        Self::new(out)
    }

    fn scaled(&self, s: &ComplexRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

/// For each `k`, the polynomial `q_k(x) = x·∏_{j≠k}(x−λ_j) / (λ_k·∏_{j≠k}(λ_k−λ_j))`
/// together with its value `q_k(Λ)`, which is exactly the diagonal matrix unit
/// `unit(k,k)`. The forced factor `x` keeps the constant term zero, so each
/// `q_k(Λ)` lies in the non-unital algebra generated by `Λ` alone.
pub fn interpolated_diagonal_units(
    spectrum: &DiagonalSpectrum,
) -> Vec<(Polynomial, Matrix)> {
    let lambdas = spectrum.lambdas();
    let mut out = Vec::with_capacity(spectrum.n());
    for (k, lambda_k) in lambdas.iter().enumerate() {
        let mut numerator = Polynomial::x();
        let mut denominator = lambda_k.clone();
        for (j, lambda_j) in lambdas.iter().enumerate() {
            if j == k {
                continue;
            }
            numerator = numerator.mul_linear(lambda_j);
            denominator = &denominator * &(lambda_k - lambda_j);
        }
        let q = numerator.scaled(&denominator.inverse().expect("distinct nonzero eigenvalues"));
        let value = q.eval_diagonal(spectrum);
        out.push((q, value));
    }
    out
}
