//! Closed-form specializations for binomials and three named families.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, least_prime_factor, rad};
use crate::bounds::interval::BoundInterval;
use crate::charsum::Rational;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::MappingPoly;

/// Binomial bound data for `x^n + a·x^r`, with the gcd factor `t = gcd(n, r, q-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialBound {
    pub interval: BoundInterval,
    /// Frobenius power applied to the `x^r` term.
    pub k: u32,
    /// `r·p^k mod (q-1)`.
    pub r_star: u64,
    pub l_star: u64,
    /// `gcd(n, r, q-1)`.
    pub t: u64,
    pub has_root: bool,
}

/// Does `x^d + b` vanish somewhere on `F_q^*`? The `d`-th powers form the
/// subgroup of order `(q-1)/gcd(d, q-1)`, so this is a single power test.
pub fn binomial_has_root(field: &Field, d: u64, b: Elem) -> bool {
    let q1 = field.q() - 1;
    let minus_b = field.neg(b);
    if minus_b.is_zero() {
        return false;
    }
    field.pow(minus_b, q1 / gcd(d % q1, q1)) == Elem::ONE
}

/// Bound for `Σ ψ(x^n + a·x^r)` with `t = gcd(n, r, q-1)` as the gcd factor.
pub fn binomial_bound(field: &Field, n: u64, r: u64, a: Elem) -> Result<BinomialBound> {
    let q = field.q();
    let q1 = q - 1;
    if !(1 <= r && r < n && n <= q1) {
        return Err(Error::InvalidArgument(format!(
            "binomial exponents need 1 <= r < n <= q-1, got n = {n}, r = {r}, q = {q}"
        )));
    }
    if a.is_zero() || !field.contains(a) {
        return Err(Error::InvalidArgument(
            "binomial coefficient must be a nonzero field element".into(),
        ));
    }
    let p = field.p();
    let mut best: Option<(u64, u32, u64)> = None;
    let mut rp = r % q1;
    for k in 0..field.m() {
        let diff = (n % q1 + q1 - rp) % q1;
        let g = gcd(diff, q1);
        if best.is_none_or(|(bg, _, _)| g > bg) {
            best = Some((g, k, rp));
        }
        rp = (rp as u128 * p as u128 % q1 as u128) as u64;
    }
    let (g, k, r_star) = best.expect("m >= 1");
    let l_star = q1 / g;
    let t = gcd(gcd(n, r), q1);
    let d = (n % q1 + q1 - r_star) % q1;
    let has_root = binomial_has_root(field, d, field.frobenius(a, k));
    let interval = if has_root {
        BoundInterval::new(
            Rational::new(q as i128, l_star as i128),
            (l_star - 1) * t,
            q,
            q,
            format!("binomial, root case: l* = {l_star}, t = {t}"),
        )
    } else {
        BoundInterval::new(
            Rational::from_integer(0),
            l_star * t,
            q,
            q,
            format!("binomial: l* = {l_star}, t = {t}"),
        )
    };
    Ok(BinomialBound {
        interval,
        k,
        r_star,
        l_star,
        t,
        has_root,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// `x^{(q-1)/Q + p^alpha} + a·x`, `Q` the least prime factor of `q - 1`.
    LeastPrimeFactor { alpha: u32 },
    /// `x^{n+p} + a·x` over `F_{p^2}` with `2·rad(n) = rad(p+1)`.
    RadicalCondition { n: u64 },
    /// `x^{s·p^{m-1}} + a·x^r` with `p < s < √q`, `gcd(s, p) = 1`, `r < s`.
    HighFrobeniusDegree { s: u64, r: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBound {
    pub family: Family,
    pub checks: Vec<HypothesisCheck>,
    /// The family member, when its exponents make sense on this field.
    pub poly: Option<MappingPoly>,
    pub interval: BoundInterval,
}

impl FamilyBound {
    pub fn hypotheses_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }
}

struct Checks(Vec<HypothesisCheck>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, holds: bool) -> bool {
        self.0.push(HypothesisCheck {
            name: name.into(),
            holds,
        });
        holds
    }

    fn all(&self) -> bool {
        self.0.iter().all(|c| c.holds)
    }
}

fn binomial(field: &Field, hi: u64, a: Elem, lo: u64) -> MappingPoly {
    MappingPoly::from_raw(field, [(hi, Elem::ONE), (lo, a)])
}

/// Root/no-root interval with index `l` and unit gcd factor.
fn split_interval(q: u64, l: u64, root: bool, label: &str) -> BoundInterval {
    if root {
        BoundInterval::new(
            Rational::new(q as i128, l as i128),
            l - 1,
            q,
            q,
            format!("{label}, root case: l* = {l}"),
        )
    } else {
        BoundInterval::new(Rational::from_integer(0), l, q, q, format!("{label}: l* = {l}"))
    }
}

/// The specialized interval of a named family, after checking its hypotheses.
/// A failed hypothesis yields an inapplicable interval, not an error.
pub fn family_bound(field: &Field, family: Family, a: Elem) -> Result<FamilyBound> {
    if a.is_zero() || !field.contains(a) {
        return Err(Error::InvalidArgument(
            "family coefficient must be a nonzero field element".into(),
        ));
    }
    let (p, m, q) = (field.p(), field.m(), field.q());
    let q1 = q - 1;
    let mut ch = Checks(Vec::new());
    let (poly, interval) = match family {
        Family::LeastPrimeFactor { alpha } => {
            let lpf = least_prime_factor(q1);
            ch.add("q - 1 has a prime factor", lpf.is_some());
            ch.add("alpha >= 1", alpha >= 1);
            let big_q = lpf.unwrap_or(1);
            let n = q1 / big_q;
            let pa = crate::arith::checked_pow(p, alpha);
            let top = pa.and_then(|pa| n.checked_add(pa));
            ch.add("1 < n + p^alpha <= q - 1", matches!(top, Some(e) if 1 < e && e <= q1));
            if ch.all() {
                let top = top.unwrap();
                let root = binomial_has_root(field, n, field.frobenius(a, alpha % m));
                (
                    Some(binomial(field, top, a, 1)),
                    split_interval(q, big_q, root, "least prime factor"),
                )
            } else {
                (
                    None,
                    BoundInterval::inapplicable(q, q, "least-prime-factor hypotheses fail"),
                )
            }
        }
        Family::RadicalCondition { n } => {
            ch.add("p odd", p % 2 == 1);
            ch.add("field is F_{p^2}", m == 2);
            ch.add("n odd", n % 2 == 1);
            ch.add("gcd(n, p-1) = 1", gcd(n, p - 1) == 1);
            ch.add("2·rad(n) = rad(p+1)", n >= 1 && 2 * rad(n) == rad(p + 1));
            ch.add("1 < n + p <= q - 1", n + p > 1 && n + p <= q1);
            if ch.all() {
                let s = q1 / gcd(n, p + 1);
                let root = binomial_has_root(field, n, field.frobenius(a, 1));
                (
                    Some(binomial(field, n + p, a, 1)),
                    split_interval(q, s, root, "radical condition"),
                )
            } else {
                (
                    None,
                    BoundInterval::inapplicable(q, q, "radical-condition hypotheses fail"),
                )
            }
        }
        Family::HighFrobeniusDegree { s, r } => {
            ch.add("p < s", p < s);
            ch.add("s < √q", (s as u128) * (s as u128) < q as u128);
            ch.add("gcd(s, p) = 1", gcd(s, p) == 1);
            ch.add("1 <= r < s", 1 <= r && r < s);
            if ch.all() {
                let top = s * p.pow(m - 1);
                (
                    Some(binomial(field, top, a, r)),
                    BoundInterval::new(
                        Rational::from_integer(0),
                        s - 1,
                        q,
                        q,
                        format!("high Frobenius degree: n* = {s}"),
                    ),
                )
            } else {
                (
                    None,
                    BoundInterval::inapplicable(q, q, "high-Frobenius-degree hypotheses fail"),
                )
            }
        }
    };
    Ok(FamilyBound {
        family,
        checks: ch.0,
        poly,
        interval,
    })
}
