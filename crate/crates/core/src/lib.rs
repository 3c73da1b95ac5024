//! Character sums of polynomials over finite fields and their index bounds.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: deterministic `F_{p^m}` with traces and discrete logs.
//! - [`poly`]: sparse mapping polynomials, the index, cyclotomic cosets and
//!   the per-monomial Frobenius class searches.
//! - [`charsum`]: exact character sums as trace distributions, and
//!   Artin-Schreier point counts computed two independent ways.
//! - [`bounds`]: the Weil, index and improved index bounds as exact interval
//!   objects, the binomial and family specializations, and curve bounds.

pub mod arith;
pub mod bounds;
pub mod charsum;
pub mod error;
pub mod field;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldConfig, SubfieldTower, DEFAULT_CAP};
pub use poly::{parse_poly, MappingPoly, Params};
