//! Exact computer algebra for the algebra of q-difference operators, the
//! matrix and affine Lie algebras around it, their cocycles, a formal
//! distribution identity checker and a PBW induction engine.

pub mod central;
pub mod error;
pub mod exec;
pub mod fdist;
pub mod fuzz;
pub mod lincomb;
pub mod liealg;
pub mod parse;
pub mod pbwmod;
pub mod qcoeff;

pub use error::{Error, Result};
pub use lincomb::{LinComb, Linear};
pub use liealg::{AlgebraSpec, BasisKey, LieElem};
pub use qcoeff::{rat, QLaurent, Rational};
