//! Polynomials as mappings on `F_q`: reduction, parsing, index and canonical
//! form, cyclotomic cosets and Frobenius-class searches.

pub mod coset;
pub mod frobenius;
pub mod index;
mod mapping;
pub mod parse;

pub use coset::{cyclotomic_coset, CyclotomicCoset};
pub use frobenius::{
    enumerate_class, frobenius_shift, minimize_degree, minimize_index, support_class, EquivalentForm, ShiftVector,
    SupportClass, DEFAULT_BUDGET,
};
pub use index::{compute_index, compute_n0, CanonicalForm};
pub use mapping::{reduce_exponent, MappingPoly, Term};
pub use parse::{parse_poly, Params};
