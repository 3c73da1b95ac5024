//! Per-monomial Frobenius shifts and exhaustive searches over the resulting
//! equivalence class.
//!
//! Raising a single monomial `a x^e` to the `p^v`-th power does not change
//! `Tr(a x^e)` at any point, so every member of the class of `f` has the same
//! character sum. The searches below enumerate all `m^k` shift vectors of a
//! polynomial with `k` nonconstant terms and pick the member with the smallest
//! index (or degree). Results combine colliding exponents, which keeps the sum
//! unchanged because the invariance holds term by term.

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::index::{compute_index, compute_n0, index_of_exponents, CanonicalForm};
use crate::poly::mapping::reduce_exponent;
use crate::poly::{MappingPoly, Term};

/// Default cap on the number of shift vectors a search may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Frobenius exponents: slot 0 for the constant, then one per nonconstant term
/// in increasing exponent order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ShiftVector(pub Vec<u32>);

impl ShiftVector {
    pub fn zero(terms: usize) -> Self {
        Self(vec![0; terms + 1])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

/// `e · p^v` reduced as a mapping exponent.
pub fn shift_exponent(e: u64, v: u32, p: u64, q: u64) -> u64 {
    let pv = (p as u128).pow(v);
    let raw = e as u128 * pv;
    if raw == 0 {
        return 0;
    }
    ((raw - 1) % (q as u128 - 1) + 1) as u64
}

/// `π^v(f)`: each `a_i x^{e_i}` becomes `a_i^{p^{v_i}} x^{e_i p^{v_i}}`, reduced
/// as a mapping.
pub fn frobenius_shift(field: &Field, f: &MappingPoly, v: &ShiftVector) -> Result<MappingPoly> {
    let terms = f.terms();
    if v.0.len() != terms.len() + 1 {
        return Err(Error::ShiftLength {
            got: v.0.len(),
            expected: terms.len() + 1,
        });
    }
    if let Some(&bad) = v.0.iter().find(|&&s| s >= field.m()) {
        return Err(Error::InvalidArgument(format!(
            "shift entry {bad} is not below m = {}",
            field.m()
        )));
    }
    Ok(apply_shift(field, terms, f.constant(), &v.0[1..], v.0[0]))
}

fn apply_shift(field: &Field, terms: &[Term], constant: Elem, shifts: &[u32], v0: u32) -> MappingPoly {
    let (p, q) = (field.p(), field.q());
    let raw = terms
        .iter()
        .zip(shifts)
        .map(|(t, &v)| (shift_exponent(t.exp, v, p, q), field.frobenius(t.coeff, v)))
        .chain(std::iter::once((0, field.frobenius(constant, v0))));
    MappingPoly::from_raw(field, raw)
}

/// Result of a class search: the chosen representative `π^shift(c·f)` and its
/// canonical data, plus the class minima of index and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalentForm {
    pub scaling: Elem,
    pub shift: ShiftVector,
    pub rep: MappingPoly,
    /// Canonical form of `rep`.
    pub form: CanonicalForm,
    /// Vanishing count of `form.h` on the `form.l`-th roots of unity.
    pub n0: u64,
    /// Smallest index in the class.
    pub l_star: u64,
    /// Smallest degree in the class.
    pub n_star: u64,
}

impl EquivalentForm {
    pub fn r_star(&self) -> u64 {
        self.form.r
    }

    pub fn h_star(&self) -> &[Term] {
        &self.form.h
    }

    /// `(l - n0) · gcd(r, (q-1)/l)` for the chosen representative.
    pub fn radius_coeff(&self, q: u64) -> u64 {
        radius_coeff(&self.form, self.n0, q)
    }
}

pub fn radius_coeff(form: &CanonicalForm, n0: u64, q: u64) -> u64 {
    (form.l - n0) * gcd(form.r, (q - 1) / form.l)
}

fn check_budget(field: &Field, k: usize, budget: u64) -> Result<()> {
    let needed = (field.m() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Visits every shift vector in lexicographic order (first term most
/// significant); the constant slot stays 0.
fn for_each_shift<F>(field: &Field, f: &MappingPoly, budget: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&[u32], MappingPoly),
{
    let k = f.terms().len();
    check_budget(field, k, budget)?;
    let m = field.m();
    let mut digits = vec![0u32; k];
    loop {
        visit(&digits, apply_shift(field, f.terms(), f.constant(), &digits, 0));
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn scaled(field: &Field, f: &MappingPoly, c: Elem) -> Result<MappingPoly> {
    if c.is_zero() {
        return Err(Error::InvalidArgument("character scaling must be nonzero".into()));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(f.scale(field, c))
}

/// Class minima `(l*, n*)` over the nonconstant members of the class of `g`.
fn class_minima(field: &Field, g: &MappingPoly, budget: u64) -> Result<(u64, u64)> {
    let (mut l_star, mut n_star) = (u64::MAX, u64::MAX);
    for_each_shift(field, g, budget, |_, rep| {
        if rep.is_constant() {
            return;
        }
        l_star = l_star.min(index_of_exponents(&rep.exponents(), field.q()));
        n_star = n_star.min(rep.degree());
    })?;
    Ok((l_star, n_star))
}

fn shift_vector(digits: &[u32]) -> ShiftVector {
    let mut v = Vec::with_capacity(digits.len() + 1);
    v.push(0);
    v.extend_from_slice(digits);
    ShiftVector(v)
}

/// The member of the class of `c·f` with the smallest index; ties go to the
/// smallest radius coefficient, then the lexicographically smallest shift.
pub fn minimize_index(field: &Field, f: &MappingPoly, c: Elem, budget: u64) -> Result<EquivalentForm> {
    let g = scaled(field, f, c)?;
    let q = field.q();
    let (l_star, n_star) = class_minima(field, &g, budget)?;
    let mut best: Option<(u64, EquivalentForm)> = None;
    for_each_shift(field, &g, budget, |digits, rep| {
        if rep.is_constant() || index_of_exponents(&rep.exponents(), q) != l_star {
            return;
        }
        let form = compute_index(field, &rep).expect("nonconstant");
        let n0 = compute_n0(field, &form);
        let k = radius_coeff(&form, n0, q);
        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((
                k,
                EquivalentForm {
                    scaling: c,
                    shift: shift_vector(digits),
                    rep,
                    form,
                    n0,
                    l_star,
                    n_star,
                },
            ));
        }
    })?;
    Ok(best.expect("the unshifted member is nonconstant").1)
}

/// The lexicographically first member of the class of `c·f` of minimal degree.
pub fn minimize_degree(field: &Field, f: &MappingPoly, c: Elem, budget: u64) -> Result<EquivalentForm> {
    let g = scaled(field, f, c)?;
    let (l_star, n_star) = class_minima(field, &g, budget)?;
    let mut best: Option<EquivalentForm> = None;
    for_each_shift(field, &g, budget, |digits, rep| {
        if best.is_some() || rep.is_constant() || rep.degree() != n_star {
            return;
        }
        let form = compute_index(field, &rep).expect("nonconstant");
        let n0 = compute_n0(field, &form);
        best = Some(EquivalentForm {
            scaling: c,
            shift: shift_vector(digits),
            rep,
            form,
            n0,
            l_star,
            n_star,
        });
    })?;
    Ok(best.expect("the unshifted member is nonconstant"))
}

/// Every nonconstant member of the class of `c·f` with its canonical data.
pub fn enumerate_class(
    field: &Field,
    f: &MappingPoly,
    c: Elem,
    budget: u64,
) -> Result<Vec<(ShiftVector, MappingPoly, CanonicalForm, u64)>> {
    let g = scaled(field, f, c)?;
    let mut out = Vec::new();
    for_each_shift(field, &g, budget, |digits, rep| {
        if rep.is_constant() {
            return;
        }
        let form = compute_index(field, &rep).expect("nonconstant");
        let n0 = compute_n0(field, &form);
        out.push((shift_vector(digits), rep, form, n0));
    })?;
    Ok(out)
}

/// Class search on an exponent support alone, treating coefficients as
/// generic: colliding exponents merge and never cancel, and `n0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportClass {
    pub l_star: u64,
    pub r_star: u64,
    /// `l* · gcd(r*, (q-1)/l*)`, minimal among index minimizers.
    pub generic_radius_coeff: u64,
    pub n_star: u64,
    /// Per-term shifts of the chosen index minimizer.
    pub shift: Vec<u32>,
}

pub fn support_class(exps: &[u64], p: u64, m: u32, budget: u64) -> Result<SupportClass> {
    if exps.is_empty() {
        return Err(Error::ConstantPolynomial);
    }
    let q = p.pow(m);
    let k = exps.len();
    let needed = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut digits = vec![0u32; k];
    let mut best: Option<((u64, u64), Vec<u32>, u64)> = None;
    let mut n_star = u64::MAX;
    let mut shifted = Vec::with_capacity(k);
    loop {
        shifted.clear();
        shifted.extend(exps.iter().zip(&digits).map(|(&e, &v)| shift_exponent(e, v, p, q)));
        let l = index_of_exponents(&shifted, q);
        let r = *shifted.iter().min().unwrap();
        let key = (l, l * gcd(r, (q - 1) / l));
        n_star = n_star.min(*shifted.iter().max().unwrap());
        if best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
            best = Some((key, digits.clone(), r));
        }
        let mut i = k;
        loop {
            if i == 0 {
                let ((l_star, generic_radius_coeff), shift, r_star) = best.unwrap();
                return Ok(SupportClass {
                    l_star,
                    r_star,
                    generic_radius_coeff,
                    n_star,
                    shift,
                });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Mapping-reduced `e·p^v` for every `v < m`, i.e. the shifts available to one
/// monomial.
pub fn monomial_orbit(e: u64, p: u64, m: u32) -> Vec<u64> {
    let q = p.pow(m);
    (0..m).map(|v| reduce_exponent(shift_exponent(e, v, p, q), q)).collect()
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
    fn zero_shift_is_identity() {
        let f = Field::new(3, 3).unwrap();
        let p = with_a(&f, "x^25 + a*x^4 + g", f.generator());
        assert_eq!(frobenius_shift(&f, &p, &ShiftVector::zero(2)).unwrap(), p);
    }

    #[test]
    fn shifts_from_examples() {
        let f = Field::new(3, 3).unwrap();
        let a = f.gen_pow(5);
        let p = with_a(&f, "x^25 + a*x^4", a);
        // terms are ordered (4, 25): shift the x^4 term once
        let s = frobenius_shift(&f, &p, &ShiftVector(vec![0, 1, 0])).unwrap();
        assert_eq!(
            s.terms(),
            &[
                Term {
                    exp: 12,
                    coeff: f.pow(a, 3)
                },
                Term {
                    exp: 25,
                    coeff: Elem::ONE
                }
            ]
        );

        let f = Field::new(2, 8).unwrap();
        let a = f.gen_pow(7);
        let p = with_a(&f, "x^13 + a*x", a);
        let s = frobenius_shift(&f, &p, &ShiftVector(vec![0, 0, 2])).unwrap();
        assert_eq!(
            s.terms(),
            &[
                Term { exp: 1, coeff: a },
                Term {
                    exp: 52,
                    coeff: Elem::ONE
                }
            ]
        );
    }

    #[test]
    fn bad_shift_vectors() {
        let f = Field::new(3, 3).unwrap();
        let p = with_a(&f, "x^2 + a*x", Elem::ONE);
        assert_eq!(
            frobenius_shift(&f, &p, &ShiftVector(vec![0, 1])).unwrap_err(),
            Error::ShiftLength { got: 2, expected: 3 }
        );
        assert!(frobenius_shift(&f, &p, &ShiftVector(vec![0, 3, 0])).is_err());
    }

    #[test]
    fn complementary_shift_restores() {
        let f = Field::new(3, 4).unwrap();
        let p = with_a(&f, "x^44 + a*x^28 + x^5", f.gen_pow(3));
        let m = f.m();
        for v1 in 0..m {
            for v2 in 0..m {
                for v3 in 0..m {
                    let v = [v1, v2, v3];
                    let s = frobenius_shift(&f, &p, &ShiftVector(vec![0, v1, v2, v3])).unwrap();
                    if s.terms().len() != 3 {
                        continue;
                    }
                    // map each original term to its position in the shifted result
                    let mut back = vec![0u32; 4];
                    for (i, t) in p.terms().iter().enumerate() {
                        let e = shift_exponent(t.exp, v[i], f.p(), f.q());
                        let j = s.terms().iter().position(|u| u.exp == e).unwrap();
                        back[j + 1] = (m - v[i]) % m;
                    }
                    assert_eq!(frobenius_shift(&f, &s, &ShiftVector(back)).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn example_minimal_indices() {
        let f = Field::new(3, 3).unwrap();
        let a = f.gen_pow(2);
        let eq = minimize_index(&f, &with_a(&f, "x^25 + a*x^4", a), Elem::ONE, DEFAULT_BUDGET).unwrap();
        assert_eq!(eq.l_star, 2);
        assert_eq!(eq.form.l, 2);
        let eq = minimize_index(&f, &with_a(&f, "x^19 + a*x^4", a), Elem::ONE, DEFAULT_BUDGET).unwrap();
        assert_eq!(eq.l_star, 26);

        let f = Field::new(2, 8).unwrap();
        let eq = minimize_index(&f, &with_a(&f, "x^13 + a*x", Elem::ONE), Elem::ONE, DEFAULT_BUDGET).unwrap();
        assert_eq!(eq.l_star, 5);
        assert_eq!(eq.rep, frobenius_shift(&f, &eq.rep, &ShiftVector::zero(2)).unwrap());
    }

    #[test]
    fn rep_is_the_shift_of_the_scaled_input() {
        let f = Field::new(3, 3).unwrap();
        let p = with_a(&f, "x^25 + a*x^4", f.gen_pow(4));
        let c = f.gen_pow(9);
        let eq = minimize_index(&f, &p, c, DEFAULT_BUDGET).unwrap();
        let expect = frobenius_shift(&f, &p.scale(&f, c), &eq.shift).unwrap();
        assert_eq!(eq.rep, expect);
        assert_eq!(eq.scaling, c);
    }

    #[test]
    fn example_minimal_degrees() {
        let f = Field::new(3, 3).unwrap();
        let a = f.gen_pow(1);
        for expr in ["x^19 + a*x^4", "x^10 + a*x^5"] {
            let eq = minimize_degree(&f, &with_a(&f, expr, a), Elem::ONE, DEFAULT_BUDGET).unwrap();
            assert_eq!(eq.n_star, 5, "{expr}");
            assert_eq!(eq.rep.degree(), 5);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::new(2, 8).unwrap();
        let p = with_a(&f, "x^13 + a*x + x^3", Elem::ONE);
        assert_eq!(
            minimize_index(&f, &p, Elem::ONE, 100).unwrap_err(),
            Error::BudgetExceeded {
                needed: 512,
                budget: 100
            }
        );
        assert!(minimize_index(&f, &p, Elem::ZERO, 1000).is_err());
        let c = MappingPoly::constant_poly(Elem::ONE);
        assert_eq!(
            minimize_index(&f, &c, Elem::ONE, 1000).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn support_class_matches_coefficient_search() {
        let f = Field::new(2, 6).unwrap();
        let p = with_a(&f, "x^41 + a*x^5", f.generator());
        let eq = minimize_index(&f, &p, Elem::ONE, DEFAULT_BUDGET).unwrap();
        let sc = support_class(&[41, 5], 2, 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(sc.l_star, eq.l_star);
        assert_eq!(sc.l_star, 3);
        assert_eq!(sc.generic_radius_coeff, 3);
    }

    #[test]
    fn collisions_merge_and_may_cancel() {
        // x^3 + x over F_9: shifting x once lands on x^3, and 1 + 1 ≠ 0 in char 3
        let f = Field::new(3, 2).unwrap();
        let p = with_a(&f, "x^3 + a*x", Elem::ONE);
        let s = frobenius_shift(&f, &p, &ShiftVector(vec![0, 1, 0])).unwrap();
        assert_eq!(
            s.terms(),
            &[Term {
                exp: 3,
                coeff: f.from_int(2)
            }]
        );
        // x^3 - x cancels to the zero mapping under the same shift
        let p = with_a(&f, "x^3 + 2*x", Elem::ONE);
        let s = frobenius_shift(&f, &p, &ShiftVector(vec![0, 1, 0])).unwrap();
        assert!(s.is_constant());
        // the search skips the constant member and still returns a valid minimum
        let eq = minimize_index(&f, &p, Elem::ONE, DEFAULT_BUDGET).unwrap();
        assert!(!eq.rep.is_constant());
    }
}
