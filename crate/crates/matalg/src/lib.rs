//! Exact classification of matrix pairs `(Λ, A)` — a diagonal matrix with
//! distinct nonzero eigenvalues and an arbitrary matrix — as irreducible,
//! Schur irreducible, and indecomposable, decided purely from the support
//! digraph of `A`; enumeration of the maximal pattern subalgebras of `Mat(n)`
//! with their invariant coordinate subspaces; and enumeration of minimal
//! strongly connected digraphs, all cross-checkable against brute-force
//! oracles in exact complex-rational arithmetic.

pub mod connectivity;
pub mod criteria;
pub mod enumeration;
pub mod golden;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod pattern;
pub mod scalar;

pub use connectivity::{
    minimal_strongly_connected, strong_components, strongly_connected, weak_components,
    weakly_connected, Partition,
};
pub use criteria::{
    classify, commutant_dimension, invariant_coordinate_subspaces, ClassificationReport,
    CriteriaError,
};
pub use enumeration::{
    canonical_form, count_table_row, enumerate_minimal_scc, stream_minimal_scc, verify_edge_bound,
    CanonicalForm, CountRow, EnumerationConfig, EnumerationError,
};
pub use lattice::{
    containing_maximal_subalgebras, enumerate_maximal_subalgebras, lift_children,
    lift_subalgebras, maximal_subalgebra, IndexSubset, LatticeError, LiftChildren,
    MaximalSubalgebra,
};
pub use matrix::{
    commutator, interpolated_diagonal_units, DiagonalSpectrum, FloatMatrix, Matrix, MatrixError,
    Polynomial, SpectrumError,
};
pub use oracle::{
    commutant_basis, coordinate_subspace_invariant, generated_algebra, is_decomposable,
    shemesh_common_eigenvector, OracleError, SpanBasis,
};
pub use pattern::{Pattern, PatternError, SemiringBit};
pub use scalar::{ComplexRational, ScalarError};
