use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::field::{Elem, Field};

/// Reduces a nonnegative exponent as a mapping on `F_q`: `0` stays `0`, and
/// `e > 0` becomes `((e - 1) mod (q - 1)) + 1`, so `x^{q-1}` is never folded
/// into the constant.
pub fn reduce_exponent(e: u64, q: u64) -> u64 {
    if e == 0 {
        0
    } else {
        (e - 1) % (q - 1) + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: u64,
    pub coeff: Elem,
}

/// A polynomial viewed as a mapping on `F_q`: nonzero terms with strictly
/// increasing exponents in `[1, q-1]`, plus a constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingPoly {
    terms: Vec<Term>,
    constant: Elem,
}

impl MappingPoly {
    /// Reduces raw `(exponent, coefficient)` pairs as a mapping: exponents are
    /// folded, colliding coefficients summed and zero terms dropped.
    pub fn from_raw<I>(field: &Field, raw: I) -> Self
    where
        I: IntoIterator<Item = (u64, Elem)>,
    {
        let q = field.q();
        let mut constant = Elem::ZERO;
        let mut acc: BTreeMap<u64, Elem> = BTreeMap::new();
        for (e, c) in raw {
            let e = reduce_exponent(e, q);
            if e == 0 {
                constant = field.add(constant, c);
            } else {
                let slot = acc.entry(e).or_insert(Elem::ZERO);
                *slot = field.add(*slot, c);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { exp, coeff })
            .collect();
        Self { terms, constant }
    }

    pub fn constant_poly(b: Elem) -> Self {
        Self {
            terms: Vec::new(),
            constant: b,
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant(&self) -> Elem {
        self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree as a mapping; 0 for constants.
    pub fn degree(&self) -> u64 {
        self.terms.last().map_or(0, |t| t.exp)
    }

    /// Lowest exponent among the nonconstant terms.
    pub fn lowest(&self) -> Option<u64> {
        self.terms.first().map(|t| t.exp)
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    pub fn evaluate(&self, field: &Field, x: Elem) -> Elem {
        self.terms.iter().fold(self.constant, |acc, t| {
            field.add(acc, field.mul(t.coeff, field.pow(x, t.exp)))
        })
    }

    /// `c · f`, constant included.
    pub fn scale(&self, field: &Field, c: Elem) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|t| (t.exp, field.mul(c, t.coeff)))
            .chain(std::iter::once((0, field.mul(c, self.constant))));
        Self::from_raw(field, raw)
    }

    /// `f - b`.
    pub fn without_constant(&self) -> Self {
        Self {
            terms: self.terms.clone(),
            constant: Elem::ZERO,
        }
    }

    /// Renders as `c*x^e + … + b`, coefficients as `g^k` literals.
    pub fn display(&self, field: &Field) -> String {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|t| {
                let mono = if t.exp == 1 {
                    "x".to_string()
                } else {
                    format!("x^{}", t.exp)
                };
                if t.coeff == Elem::ONE {
                    mono
                } else {
                    format!("{}*{}", field.format_elem(t.coeff), mono)
                }
            })
            .collect();
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(if self.constant == Elem::ONE {
                "1".into()
            } else {
                field.format_elem(self.constant)
            });
        }
        parts.join(" + ")
    }
}
