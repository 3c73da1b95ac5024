use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::{MappingPoly, Term};

/// The decomposition `f = x^r · h(x^{(q-1)/l}) + b` of a nonconstant mapping
/// polynomial, with the leading scalar folded into `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// Lowest exponent of `f - b`.
    pub r: u64,
    /// The index.
    pub l: u64,
    /// `h` as terms in `y`; exponents are below `l` and the `y^0` term is present.
    pub h: Vec<Term>,
    pub constant: Elem,
}

impl CanonicalForm {
    /// `(q - 1) / l`, the exponent step of the inner variable.
    pub fn step(&self, q: u64) -> u64 {
        (q - 1) / self.l
    }

    /// Rebuilds `x^r · h(x^{(q-1)/l}) + b` as a mapping polynomial.
    pub fn expand(&self, field: &Field) -> MappingPoly {
        let step = self.step(field.q());
        let raw = self
            .h
            .iter()
            .map(|t| (self.r + t.exp * step, t.coeff))
            .chain(std::iter::once((0, self.constant)));
        MappingPoly::from_raw(field, raw)
    }

    pub fn eval_h(&self, field: &Field, y: Elem) -> Elem {
        self.h.iter().fold(Elem::ZERO, |acc, t| {
            field.add(acc, field.mul(t.coeff, field.pow(y, t.exp)))
        })
    }
}

/// Index of a set of exponents: `(q-1) / gcd({e - r} ∪ {q-1})` with `r` the
/// smallest exponent. Needs no coefficients.
pub fn index_of_exponents(exps: &[u64], q: u64) -> u64 {
    let r = *exps.iter().min().expect("nonempty support");
    let g = exps.iter().fold(q - 1, |acc, &e| gcd(acc, e - r));
    (q - 1) / g
}

pub fn compute_index(field: &Field, f: &MappingPoly) -> Result<CanonicalForm> {
    let q = field.q();
    let r = f.lowest().ok_or(Error::ConstantPolynomial)?;
    let l = index_of_exponents(&f.exponents(), q);
    let step = (q - 1) / l;
    let h = f
        .terms()
        .iter()
        .map(|t| Term {
            exp: (t.exp - r) / step,
            coeff: t.coeff,
        })
        .collect();
    Ok(CanonicalForm {
        r,
        l,
        h,
        constant: f.constant(),
    })
}

/// `#{0 ≤ i < l : h(ξ^i) = 0}` with `ξ = g^{(q-1)/l}`.
pub fn compute_n0(field: &Field, form: &CanonicalForm) -> u64 {
    let xi = field.gen_pow(form.step(field.q()));
    count_roots_on_powers(field, form, xi)
}

/// Same count for an arbitrary primitive `l`-th root of unity `xi`.
pub fn count_roots_on_powers(field: &Field, form: &CanonicalForm, xi: Elem) -> u64 {
    let mut y = Elem::ONE;
    let mut n0 = 0;
    for _ in 0..form.l {
        if form.eval_h(field, y).is_zero() {
            n0 += 1;
        }
        y = field.mul(y, xi);
    }
    n0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_poly, Params};

    fn with_a(field: &Field, expr: &str, a: Elem) -> MappingPoly {
        let mut p = Params::new();
        p.insert("a".into(), a);
        parse_poly(expr, field, &p).unwrap()
    }

    #[test]
    fn worked_family_indices() {
        let f27 = Field::new(3, 3).unwrap();
        let g = f27.generator();
        assert_eq!(compute_index(&f27, &with_a(&f27, "x^25 + a*x^4", g)).unwrap().l, 26);
        let cf = compute_index(&f27, &with_a(&f27, "x^13 + a*x^7", g)).unwrap();
        assert_eq!((cf.r, cf.l), (7, 13));
        let f64 = Field::new(2, 6).unwrap();
        let cf = compute_index(&f64, &with_a(&f64, "x^41 + a*x^5", f64.generator())).unwrap();
        assert_eq!((cf.r, cf.l), (5, 7));
    }

    #[test]
    fn canonical_form_expands_back() {
        let f = Field::new(3, 4).unwrap();
        let g = f.generator();
        for expr in ["x^44 + a*x^28 + 2", "a*x^5", "x^80 + x^40 + a*x^20"] {
            let p = with_a(&f, expr, g);
            let cf = compute_index(&f, &p).unwrap();
            assert_eq!(cf.expand(&f), p, "{expr}");
            assert!(cf.h.iter().any(|t| t.exp == 0));
            assert!(cf.h.iter().all(|t| t.exp < cf.l));
            assert_eq!((f.q() - 1) % cf.l, 0);
        }
    }

    #[test]
    fn constant_has_no_index() {
        let f = Field::new(3, 2).unwrap();
        let p = MappingPoly::constant_poly(Elem::ONE);
        assert_eq!(compute_index(&f, &p).unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn monomial_has_index_one() {
        let f = Field::new(3, 2).unwrap();
        let p = with_a(&f, "a*x^3", f.generator());
        let cf = compute_index(&f, &p).unwrap();
        assert_eq!(cf.l, 1);
        assert_eq!(compute_n0(&f, &cf), 0);
    }

    #[test]
    fn n0_independent_of_root_choice() {
        let f = Field::new(3, 4).unwrap();
        for k in 0..80 {
            let p = with_a(&f, "x^44 + a*x^4", f.gen_pow(k));
            let cf = compute_index(&f, &p).unwrap();
            let step = cf.step(f.q());
            let n0 = compute_n0(&f, &cf);
            // every other primitive l-th root of unity is ξ^j with gcd(j, l) = 1
            for j in (1..cf.l).filter(|&j| gcd(j, cf.l) == 1) {
                let xi = f.gen_pow(step * j);
                assert_eq!(count_roots_on_powers(&f, &cf, xi), n0);
            }
        }
    }
}
