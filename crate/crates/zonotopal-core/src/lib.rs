//! Exact-arithmetic toolkit for hierarchical zonotopal power ideals.
//!
//! Everything is built from a rational vector configuration `X` (columns
//! spanning `Q^r`), an integer parameter `k >= -1` and an upper set `J` in the
//! lattice of flats of `X`. The crate computes:
//!
//! * the spanning sets `S(X,k,J)` and the spaces `P(X,k,J)` they span,
//! * the power ideals `I(X,k,J)` and `I'(X,k,J,E)` and their apolar kernels,
//! * activity data: bases, internal/external activity, the `Gamma` index set
//!   and the monomial-like basis it labels, semi-internal bases,
//! * Hilbert series by four independent routes (kernel, deletion/contraction
//!   recursion, activity enumeration, subset expansion), Tutte polynomials,
//!   flow/chromatic polynomials of graphs,
//! * the two Cox-style Hilbert series formulas for configurations with
//!   column multiplicities.
//!
//! All arithmetic is exact (`num::BigRational`); all enumeration orders are
//! deterministic so repeated runs produce identical output.

pub mod activity;
pub mod error;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use hilbert::{
    chromatic_polynomial, flow_polynomial, hilb_activity, hilb_kernel, hilb_recursive,
    hilb_subset, tutte, tutte_delcon, HilbSeries, LaurentInt, TuttePoly, ZPoly,
};
pub use ideal::{kernel_i, kernel_iprime, p_space, s_set};
pub use linalg::QMatrix;
pub use matroid::{Lattice, Mask, NormalSelector, UpperSet, VectorConfig};
pub use poly::{GradedBasis, MPoly, VarSpace};
