//! Intervals for the number of affine points on `y^q - y = f(x)` over `F_{q^m}`.
//!
//! Radii are multiples of `√(q^m)` and the trivial ceiling is `q · q^m`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, isqrt, least_prime_factor};
use crate::bounds::corollary::binomial_has_root;
use crate::bounds::interval::BoundInterval;
use crate::bounds::theorems::SearchOptions;
use crate::charsum::Rational;
use crate::error::Result;
use crate::field::{Elem, Field, SubfieldTower};
use crate::poly::{minimize_index, reduce_exponent, EquivalentForm, MappingPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CurveOptions {
    pub search: SearchOptions,
    /// Also build the interval obtained by summing each character's own
    /// improved bound.
    pub certify: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveBounds {
    pub tower: SubfieldTower,
    /// `|N - q^m| ≤ (q-1)(n-1)√(q^m)`.
    pub weil: BoundInterval,
    /// Index bound with the class minimum of `f` itself.
    pub index: BoundInterval,
    pub index_witness: Option<EquivalentForm>,
    /// `x^{n+p^alpha} + a·x` with `n = (q^m-1)/Q`, when `f` has that shape.
    pub least_prime_factor: Option<BoundInterval>,
    /// `x^{s·q^m/p} + a·x^r`, when `f` has that shape.
    pub high_frobenius: Option<BoundInterval>,
    /// Sum over `c ∈ F_q^*` of the improved interval of `c·f`.
    pub certification: Option<BoundInterval>,
}

impl CurveBounds {
    pub fn named(&self) -> Vec<(&'static str, &BoundInterval)> {
        let mut out = vec![("weil", &self.weil), ("index", &self.index)];
        if let Some(b) = &self.least_prime_factor {
            out.push(("least_prime_factor", b));
        }
        if let Some(b) = &self.high_frobenius {
            out.push(("high_frobenius", b));
        }
        if let Some(b) = &self.certification {
            out.push(("certification", b));
        }
        out
    }
}

struct Curve {
    q: u64,
    big: u64,
}

impl Curve {
    fn interval(&self, center: Rational, k: u64, reason: String) -> BoundInterval {
        BoundInterval::new(center, k, self.big, self.q * self.big, reason)
    }

    fn inapplicable(&self, reason: impl Into<String>) -> BoundInterval {
        BoundInterval::inapplicable(self.big, self.q * self.big, reason)
    }

    /// `q^m + (q-1)·q^m·num/den`.
    fn center(&self, num: u64, den: u64) -> Rational {
        Rational::from_integer(self.big as i128)
            + Rational::new(((self.q - 1) * self.big) as i128 * num as i128, den as i128)
    }
}

pub fn curve_bounds(field: &Field, tower: &SubfieldTower, f: &MappingPoly, opts: CurveOptions) -> Result<CurveBounds> {
    tower.check(field)?;
    let cv = Curve {
        q: tower.base_q(),
        big: field.q(),
    };
    let q = cv.q;
    let p = field.p();

    if f.is_constant() {
        let na = || cv.inapplicable("constant polynomial");
        return Ok(CurveBounds {
            tower: *tower,
            weil: na(),
            index: na(),
            index_witness: None,
            least_prime_factor: None,
            high_frobenius: None,
            certification: None,
        });
    }

    let n = f.degree();
    let weil = if gcd(n, p) != 1 {
        cv.inapplicable(format!("q = {q} is not prime to the degree {n}"))
    } else {
        cv.interval(
            Rational::from_integer(cv.big as i128),
            (q - 1) * (n - 1),
            format!("degree n = {n}"),
        )
    };

    // A constant b scales the c-th sum by ψ(Tr(c·b)); these are all 1 exactly
    // when Tr_{q^m/q}(b) = 0.
    let shifted = !tower.trace(field, f.constant())?.is_zero();

    let eq = minimize_index(field, f, Elem::ONE, opts.search.budget)?;
    let index = if gcd(n, p) != 1 {
        cv.inapplicable(format!("q = {q} is not prime to the degree {n}"))
    } else if shifted {
        cv.inapplicable("constant term has nonzero relative trace")
    } else {
        let k = (q - 1) * eq.radius_coeff(cv.big);
        cv.interval(
            cv.center(eq.n0, eq.l_star),
            k,
            format!("l* = {}, r* = {}, n0 = {}", eq.l_star, eq.r_star(), eq.n0),
        )
    };

    let least_prime_factor = if shifted { None } else { lpf_shape(field, &cv, f) };
    let high_frobenius = if shifted {
        None
    } else {
        high_frobenius_shape(field, &cv, f)
    };

    let certification = if opts.certify && !shifted {
        let mut center = Rational::from_integer(cv.big as i128);
        let mut k = 0u64;
        for c in tower.base_elements(field)?.into_iter().filter(|c| !c.is_zero()) {
            let e = minimize_index(field, f, c, opts.search.budget)?;
            center += Rational::new((cv.big * e.n0) as i128, e.l_star as i128);
            k += e.radius_coeff(cv.big);
        }
        Some(cv.interval(center, k, format!("sum of {} per-character intervals", q - 1)))
    } else {
        None
    };

    Ok(CurveBounds {
        tower: *tower,
        weil,
        index,
        index_witness: Some(eq),
        least_prime_factor,
        high_frobenius,
        certification,
    })
}

/// `(high, low, coefficient of low)` for `x^high + a·x^low`.
fn monic_binomial(f: &MappingPoly) -> Option<(u64, u64, Elem)> {
    match f.terms() {
        [lo, hi] if hi.coeff == Elem::ONE => Some((hi.exp, lo.exp, lo.coeff)),
        _ => None,
    }
}

fn lpf_shape(field: &Field, cv: &Curve, f: &MappingPoly) -> Option<BoundInterval> {
    let (hi, lo, a) = monic_binomial(f)?;
    if lo != 1 {
        return None;
    }
    let p = field.p();
    let big_q = least_prime_factor(cv.big - 1)?;
    let n = (cv.big - 1) / big_q;
    let diff = hi.checked_sub(n)?;
    let alpha = crate::arith::valuation(p, diff);
    if alpha == 0 || p.checked_pow(alpha)? != diff {
        return None;
    }
    let q = cv.q;
    let root = binomial_has_root(field, n, field.frobenius(a, alpha % field.m()));
    Some(if root {
        cv.interval(
            cv.center(1, big_q),
            (q - 1) * (big_q - 1),
            format!("least prime factor, root case: Q = {big_q}"),
        )
    } else {
        cv.interval(
            Rational::from_integer(cv.big as i128),
            (q - 1) * big_q,
            format!("least prime factor: Q = {big_q}"),
        )
    })
}

fn high_frobenius_shape(field: &Field, cv: &Curve, f: &MappingPoly) -> Option<BoundInterval> {
    let [t0, t1] = f.terms() else { return None };
    let p = field.p();
    let big = cv.big;
    let top = big / p;
    for s in p + 1..=isqrt(big) {
        if s * s >= big || gcd(s, p) != 1 {
            continue;
        }
        let e = reduce_exponent(s * top, big);
        let (lead, other) = if t0.exp == e {
            (t0, t1)
        } else if t1.exp == e {
            (t1, t0)
        } else {
            continue;
        };
        if lead.coeff == Elem::ONE && other.exp < s {
            return Some(cv.interval(
                Rational::from_integer(big as i128),
                (cv.q - 1) * (s - 1),
                format!("high Frobenius degree: s = {s}"),
            ));
        }
    }
    None
}
