//! Classification of a pair `(Λ, A)` — `Λ` diagonal with distinct nonzero
//! eigenvalues, `A` arbitrary — as irreducible, Schur irreducible, and
//! indecomposable.
//!
//! The verdicts are read off the support digraph of `A`: the pair is
//! irreducible exactly when the support is strongly connected (self-loops
//! ignored), Schur irreducible exactly when it is weakly connected, and
//! indecomposable exactly when it is Schur irreducible. The nontrivial
//! invariant subspaces are precisely the coordinate subspaces named by the
//! subsets whose maximal pattern subalgebra contains the support.

use crate::connectivity::{strongly_connected, weak_components, weakly_connected, Partition};
use crate::lattice::{containing_maximal_subalgebras, IndexSubset, LatticeError};
use crate::matrix::{DiagonalSpectrum, Matrix};
use crate::pattern::Pattern;
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("spectrum has dimension {0} but the matrix has dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("the invariant-subspace listing is exhaustive and limited to n <= 20, got {0}")]
    ListingTooLarge(usize),
}

impl From<LatticeError> for CriteriaError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::DimensionOutOfRange(n) => CriteriaError::ListingTooLarge(n),
            other => unreachable!("unexpected lattice error from subset listing: {other}"),
        }
    }
}

/// The full classification of one pair, including every invariant coordinate
/// subspace and a witness when the pair is reducible.
///
/// Structural facts that hold for every report: irreducible implies Schur
/// irreducible implies indecomposable; Schur irreducibility and
/// indecomposability agree; the pair is irreducible exactly when
/// `invariant_subsets` is empty, and Schur irreducible exactly when
/// `weak_components` is a single block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub irreducible: bool,
    pub schur_irreducible: bool,
    pub indecomposable: bool,
    pub weak_components: Partition,
    pub invariant_subsets: Vec<IndexSubset>,
    pub witness: Option<IndexSubset>,
    pub support: Pattern,
}

fn check_pair(spectrum: &DiagonalSpectrum, a: &Matrix) -> Result<(), CriteriaError> {
    if spectrum.n() != a.n() {
        return Err(CriteriaError::DimensionMismatch(spectrum.n(), a.n()));
    }
    Ok(())
}

/// Classifies the pair. The spectrum is already validated (distinct, nonzero)
/// by construction; only the dimensions can still disagree here.
pub fn classify(spectrum: &DiagonalSpectrum, a: &Matrix) -> Result<ClassificationReport, CriteriaError> {
    check_pair(spectrum, a)?;
    let support = a.support();
    let schur = weakly_connected(&support);
    let invariant_subsets = containing_maximal_subalgebras(&support)?;
    Ok(ClassificationReport {
        irreducible: strongly_connected(&support),
        schur_irreducible: schur,
        indecomposable: schur,
        weak_components: weak_components(&support),
        witness: invariant_subsets.first().copied(),
        invariant_subsets,
        support,
    })
}

/// All proper nonempty `i` whose coordinate subspace is invariant under both
/// matrices: exactly the subsets with no support pair entering `i` from
/// outside. This is the complete list of nontrivial invariant subspaces of
/// the pair.
pub fn invariant_coordinate_subspaces(
    spectrum: &DiagonalSpectrum,
    a: &Matrix,
) -> Result<Vec<IndexSubset>, CriteriaError> {
    check_pair(spectrum, a)?;
    Ok(containing_maximal_subalgebras(&a.support())?)
}

/// The dimension of the space of diagonal matrices commuting with `A` (and
/// automatically with any distinct-eigenvalue diagonal matrix): one degree of
/// freedom per weak component of the support.
pub fn commutant_dimension(a: &Matrix) -> usize {
    weak_components(&a.support()).len()
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ClassificationReport", 7)?;
        s.serialize_field("irreducible", &self.irreducible)?;
        s.serialize_field("schur_irreducible", &self.schur_irreducible)?;
        s.serialize_field("indecomposable", &self.indecomposable)?;
        s.serialize_field("weak_components", &self.weak_components)?;
        s.serialize_field("invariant_subsets", &self.invariant_subsets)?;
        s.serialize_field("witness", &self.witness)?;
        s.serialize_field("support", &self.support)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct ReportWire {
    irreducible: bool,
    schur_irreducible: bool,
    indecomposable: bool,
    weak_components: Partition,
    invariant_subsets: Vec<Vec<usize>>,
    witness: Option<Vec<usize>>,
    support: Pattern,
}

fn subset_from_one_based<E: DeError>(n: usize, members: &[usize]) -> Result<IndexSubset, E> {
    if members.iter().any(|&v| v == 0) {
        return Err(E::custom("subset members are 1-based"));
    }
    IndexSubset::new(n, members.iter().map(|v| v - 1)).map_err(E::custom)
}

impl<'de> Deserialize<'de> for ClassificationReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ReportWire::deserialize(deserializer)?;
        let n = wire.support.n();
        let invariant_subsets = wire
            .invariant_subsets
            .iter()
            .map(|m| subset_from_one_based::<D::Error>(n, m))
            .collect::<Result<Vec<_>, _>>()?;
        let witness = wire
            .witness
            .as_deref()
            .map(|m| subset_from_one_based::<D::Error>(n, m))
            .transpose()?;
        if wire.irreducible && !wire.schur_irreducible || wire.schur_irreducible != wire.indecomposable {
            return Err(D::Error::custom("report violates the implication chain"));
        }
        Ok(ClassificationReport {
            irreducible: wire.irreducible,
            schur_irreducible: wire.schur_irreducible,
            indecomposable: wire.indecomposable,
            weak_components: wire.weak_components,
            invariant_subsets,
            witness,
            support: wire.support,
        })
    }
}
