//! Exact knot-invariant engine: Khovanov homology ranks over the rationals,
//! the Rasmussen invariant, HOMFLY and Alexander polynomials, signatures,
//! braid-theoretic genus bounds and a batch sliceness scanner.

pub mod braid;
pub mod diagram;
pub mod error;
pub mod khovanov;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod polyinv;
pub mod rasmussen;

pub use braid::{BraidWord, Letter};
pub use diagram::{Crossing, PlanarDiagram, Sign};
pub use error::{Error, Result};
pub use khovanov::BigradedRanks;
pub use poly::{LaurentPoly1, LaurentPoly2};

pub use rasmussen::SResult;
