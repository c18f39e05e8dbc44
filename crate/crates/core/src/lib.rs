//! Sesquilinear forms of `F_{q^{2n}} / F_{q^2}` represented by `q^2`-linearized
//! polynomials: classification, exact character sums, zero counts of
//! `Tr(x L(x^q)) + c`, and the associated Artin-Schreier curves.

pub mod basis;
pub mod charsum;
pub mod counting;
pub mod curves;
pub mod error;
pub mod field;
pub mod kernel;
pub mod linpoly;
pub mod matrix;
pub mod num;
pub mod poly;
pub mod sesqui;
pub mod verify;

pub use error::{Error, Result};
pub use field::{BinOp, Elem, FieldCtx, FieldSpec};
pub use basis::VectorBasis;
pub use linpoly::LinPoly;
pub use matrix::{BruteCaps, FMatrix, InvariantFactors};
pub use poly::FPoly;
