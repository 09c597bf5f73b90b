//! Hard-particle models at activity -1 on grid graphs: alternating sums,
//! independence complexes and their homology, matching trees, transfer
//! matrices, interval classes of cylinder configurations and generating
//! functions of boundary-fixed strips.

pub mod algebra;
pub mod complex;
pub mod genfun;
pub mod grid;
pub mod homology;
pub mod intervals;
pub mod morse;
pub mod transfer;

pub use algebra::{Field, GaussInt, GaussRat, Matrix, Poly, Ring};
pub use complex::{alternating_sum, enumerate_independent_sets, independence_complex, FaceMask, SimplicialComplex};
pub use grid::{fix_boundary, Family, Graph, GridError};
pub use homology::{homology_profile, HomologyProfile, IntegerMatrix};
pub use genfun::{build_tm, build_tpm, g_series, rational_fit, GenfunError, RationalFunction};
pub use intervals::{class_sums, pattern_scan, ClassLabel, ClassSums, IntervalDecomposition, IntervalError};
pub use morse::{evaluate_tree, validate_tree, MatchingTree, MorseError, TreeFamily};
pub use transfer::{partition_function, TransferError, TransferMatrix, ZMethod};
