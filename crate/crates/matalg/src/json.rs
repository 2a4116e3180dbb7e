//! Wire formats for matrix and pair files, plus the listing documents the
//! CLI emits.
//!
//! Exact entries travel as `[re_num, re_den, im_num, im_den]` quadruples;
//! each component is a JSON integer when it fits 64 bits and a decimal string
//! otherwise, so arbitrary precision survives the trip. The parallel float
//! form `entries_f` is for ingestion only and is converted once, through the
//! support tolerance.

use crate::lattice::{IndexSubset, LiftChildren, MaximalSubalgebra};
use crate::matrix::{DiagonalSpectrum, FloatMatrix, Matrix, MatrixError, SpectrumError};
use crate::scalar::{ComplexRational, ScalarError};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{Error as DeError, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("invalid scalar: {0}")]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("{0}")]
    Shape(String),
}

/// An arbitrary-precision integer on the wire: a JSON integer when it fits,
/// a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigIntWire(pub BigInt);

impl Serialize for BigIntWire {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigIntWire {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigIntWire;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: DeError>(self, v: i64) -> Result<BigIntWire, E> {
                Ok(BigIntWire(BigInt::from(v)))
            }
            fn visit_u64<E: DeError>(self, v: u64) -> Result<BigIntWire, E> {
                Ok(BigIntWire(BigInt::from(v)))
            }
            fn visit_str<E: DeError>(self, v: &str) -> Result<BigIntWire, E> {
                BigInt::from_str(v)
                    .map(BigIntWire)
                    .map_err(|e| E::custom(format!("not a decimal integer: {e}")))
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// `[re_num, re_den, im_num, im_den]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexParts(pub [BigIntWire; 4]);

impl ComplexParts {
    pub fn to_scalar(&self) -> Result<ComplexRational, ScalarError> {
        let [rn, rd, in_, id] = &self.0;
        ComplexRational::from_integer_parts(
            rn.0.clone(),
            rd.0.clone(),
            in_.0.clone(),
            id.0.clone(),
        )
    }
}

impl From<&ComplexRational> for ComplexParts {
    fn from(v: &ComplexRational) -> Self {
        ComplexParts([
            BigIntWire(v.re().numer().clone()),
            BigIntWire(v.re().denom().clone()),
            BigIntWire(v.im().numer().clone()),
            BigIntWire(v.im().denom().clone()),
        ])
    }
}

/// Matrix file form: `{"n": …, "entries": [[quad, …], …]}` for exact input,
/// `{"n": …, "entries_f": [[[re, im], …], …]}` for float input.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<ComplexParts>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries_f: Option<Vec<Vec<[f64; 2]>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> Self {
        let n = m.n();
        let entries = (0..n)
            .map(|k| (0..n).map(|col| ComplexParts::from(m.get(k, col))).collect())
            .collect();
        Self {
            n,
            entries: Some(entries),
            entries_f: None,
        }
    }

    /// Converts to an exact matrix. `tolerance` applies only to the float
    /// form, where sub-tolerance entries snap to exact zero.
    pub fn into_matrix(self, tolerance: f64) -> Result<Matrix, IngestError> {
        match (self.entries, self.entries_f) {
            (Some(rows), None) => {
                check_shape(self.n, rows.len())?;
                let exact = rows
                    .into_iter()
                    .map(|row| {
                        check_shape(self.n, row.len())?;
                        row.iter()
                            .map(|p| p.to_scalar().map_err(IngestError::from))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Matrix::from_rows(exact)?)
            }
            (None, Some(rows)) => {
                check_shape(self.n, rows.len())?;
                let float_rows = rows
                    .into_iter()
                    .map(|row| {
                        check_shape(self.n, row.len())?;
                        Ok(row.iter().map(|&[re, im]| (re, im)).collect::<Vec<_>>())
                    })
                    .collect::<Result<Vec<_>, IngestError>>()?;
                Ok(FloatMatrix::from_rows(float_rows)?.snap(tolerance)?)
            }
            (Some(_), Some(_)) => Err(IngestError::Shape(
                "matrix must use either \"entries\" or \"entries_f\", not both".into(),
            )),
            (None, None) => Err(IngestError::Shape(
                "matrix requires \"entries\" or \"entries_f\"".into(),
            )),
        }
    }
}

fn check_shape(expected: usize, got: usize) -> Result<(), IngestError> {
    if expected != got {
        return Err(IngestError::Shape(format!(
            "declared dimension {expected} does not match {got} entries"
        )));
    }
    Ok(())
}

/// Pair file form: `{"lambda": [quad, …], "A": <matrix>}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PairJson {
    pub lambda: Vec<ComplexParts>,
    #[serde(rename = "A")]
    pub a: MatrixJson,
}

impl PairJson {
    pub fn from_pair(spectrum: &DiagonalSpectrum, a: &Matrix) -> Self {
        Self {
            lambda: spectrum.lambdas().iter().map(ComplexParts::from).collect(),
            a: MatrixJson::from_matrix(a),
        }
    }

    /// Validates the eigenvalue hypotheses and converts the matrix.
    pub fn into_pair(self, tolerance: f64) -> Result<(DiagonalSpectrum, Matrix), IngestError> {
        let lambdas = self
            .lambda
            .iter()
            .map(|p| p.to_scalar().map_err(IngestError::from))
            .collect::<Result<Vec<_>, _>>()?;
        let spectrum = DiagonalSpectrum::new(lambdas)?;
        let a = self.a.into_matrix(tolerance)?;
        Ok((spectrum, a))
    }
}

/// Listing document for the `subalgebras` command.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SubalgebraListing {
    pub n: usize,
    pub count: usize,
    pub subalgebras: Vec<MaximalSubalgebra>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<DerivationRow>>,
}

/// One lift arrow set: a level-`n` parent and its four level-`n+1` children,
/// grouped by projector, members 1-based.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DerivationRow {
    pub parent: Vec<usize>,
    pub corner: [Vec<usize>; 2],
    pub shifted: [Vec<usize>; 2],
}

fn one_based(subset: &IndexSubset) -> Vec<usize> {
    subset.members().iter().map(|v| v + 1).collect()
}

impl From<&LiftChildren> for DerivationRow {
    fn from(c: &LiftChildren) -> Self {
        Self {
            parent: one_based(&c.parent),
            corner: [one_based(&c.corner[0]), one_based(&c.corner[1])],
            shifted: [one_based(&c.shifted[0]), one_based(&c.shifted[1])],
        }
    }
}

/// Listing document for the `subspaces` command, members 1-based.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubspaceListing {
    pub n: usize,
    pub invariant_subspaces: Vec<Vec<usize>>,
}
