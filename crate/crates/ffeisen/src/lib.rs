//! Exact arithmetic for "imaginary" quadratic extensions K of k = F_q(t):
//! places and Hilbert symbols, Dirichlet L-functions as polynomials in
//! u = q^{-s}, ideal class groups of O_K in Hermite normal form, local
//! Whittaker functions in closed form with a brute-force character-sum
//! oracle, and the Fourier coefficients of the central-critical derivative
//! of the associated incoherent Eisenstein series — computed along three
//! independent paths (closed form, Whittaker product, special-cycle degree)
//! that are required to agree exactly.
//!
//! Every quantity is exact: rationals, rational functions in u, and values
//! c * ln q represented by their rational coefficient. No floating point
//! enters any asserted identity.

pub mod cyclotomic;
pub mod cycles;
pub mod eisenstein;
pub mod error;
pub mod fq;
pub mod ideals;
pub mod lfunc;
pub mod lnq;
pub mod local;
pub mod places;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod report;
pub mod sweep;
pub mod textio;
pub mod upoly;
pub mod whittaker;

pub use error::{Error, Result};
pub use fq::Fq;
pub use places::{ConductorProfile, Idele, Place};
pub use poly::{Poly, RatFunc};
pub use quad::{IncoherentSpace, QuadExt, SplittingType};
