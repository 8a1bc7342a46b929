//! Invariants of real Bott manifolds from their defining matrices.
//!
//! A real Bott manifold is encoded by a strictly upper-triangular matrix over
//! GF(2) (a *Bott matrix*). This crate decides orientability and the existence
//! of spin and spin^c structures, computes the associated cohomological
//! invariants (Betti numbers, the image of the mod-2 reduction map on degree-2
//! cohomology, the Bockstein kernel), and exhaustively counts orientable
//! matrices per dimension.
//!
//! The spin^c decision is available through four independent routes which must
//! agree on every orientable matrix:
//!
//! - a purely combinatorial column criterion on a derived matrix,
//! - the coefficient-wise condition on the square-free part of the second
//!   Stiefel-Whitney class,
//! - span membership of w₂ in the explicit basis of the reduction image,
//! - vanishing of the Bockstein applied to w₂.
//!
//! [`census`] enumerates all orientable matrices of a dimension and counts how
//! many admit spin and spin^c structures, using bit operations only.

pub mod census;
pub mod cohomology;
pub mod f2linalg;
pub mod matrix;
pub mod report;

pub use census::{CensusError, CensusRow, VerifyFailure, VerifyReport};
pub use cohomology::F2Poly;
pub use f2linalg::{EchelonBasis, F2Error, F2Vector};
pub use matrix::{BottMatrix, Homology, MatrixError, ParseError};
pub use report::{analyze, AnalysisReport, SpincOracles};
