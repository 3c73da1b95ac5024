//! Fixtures shared by the benchmarks.

use indexbound::{parse_poly, Elem, Field, MappingPoly, Params};

/// `expr` over `F_{p^m}` with `a` bound to `g^k`.
pub fn fixture(p: u64, m: u32, expr: &str, k: u64) -> (Field, MappingPoly) {
    let field = Field::new(p, m).expect("valid field");
    let mut params = Params::new();
    params.insert("a".into(), field.gen_pow(k));
    let f = parse_poly(expr, &field, &params).expect("valid expression");
    (field, f)
}

pub const ONE: Elem = Elem::ONE;
