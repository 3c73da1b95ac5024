//! Exact character sums.
//!
//! A sum `S = Σ_x ψ_1(c·f(x))` is kept as the integer vector of trace counts
//! `counts[t] = #{x : Tr(c·f(x)) = t}`, so `S = Σ_t counts[t] ζ_p^t`. For
//! `p = 2` and `p = 3` every quantity derived from it (|S|², |S - C|² for a
//! rational `C`) is an exact rational. For larger `p` the only inexact step is
//! evaluating `cos` and `sin` of multiples of `2π/p`.

use std::f64::consts::TAU;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field, SubfieldTower, DEFAULT_CAP};
use crate::poly::MappingPoly;

pub type Rational = Ratio<i128>;

/// Relative tolerance, scaled by `q`, for magnitude comparisons when `p ≥ 5`.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDistribution {
    pub p: u64,
    pub counts: Vec<u64>,
}

/// A squared magnitude, exact when the characteristic allows it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SquaredMagnitude {
    Exact(Rational),
    Approx(f64),
}

impl SquaredMagnitude {
    pub fn to_f64(self) -> f64 {
        match self {
            SquaredMagnitude::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            SquaredMagnitude::Approx(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, SquaredMagnitude::Exact(_))
    }
}

impl TraceDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Distribution of `Tr(c·f) + t`, i.e. the counts rotated by `t`.
    pub fn rotated(&self, t: u32) -> Self {
        let p = self.p as usize;
        let mut counts = vec![0; p];
        for (s, &c) in self.counts.iter().enumerate() {
            counts[(s + t as usize) % p] = c;
        }
        Self { p: self.p, counts }
    }

    /// `S` itself when it is an integer: always for `p = 2`, and otherwise
    /// when all nonzero buckets are equal.
    pub fn integer_sum(&self) -> Option<i128> {
        let rest = &self.counts[1..];
        if rest.iter().all(|&c| c == rest[0]) {
            Some(self.counts[0] as i128 - rest[0] as i128)
        } else {
            None
        }
    }

    /// Real and imaginary part of `S`.
    pub fn re_im(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.counts.iter().enumerate().fold((0.0, 0.0), |(re, im), (t, &c)| {
            let angle = TAU * t as f64 / p;
            (re + c as f64 * angle.cos(), im + c as f64 * angle.sin())
        })
    }

    pub fn abs(&self) -> f64 {
        self.deviation_sq(Rational::from_integer(0)).to_f64().sqrt()
    }

    pub fn abs_sq(&self) -> SquaredMagnitude {
        self.deviation_sq(Rational::from_integer(0))
    }

    /// `|S - center|²`.
    pub fn deviation_sq(&self, center: Rational) -> SquaredMagnitude {
        if let Some(s) = self.integer_sum() {
            let d = Rational::from_integer(s) - center;
            return SquaredMagnitude::Exact(d * d);
        }
        if self.p == 3 {
            // ω = -1/2 + i√3/2
            let c: Vec<i128> = self.counts.iter().map(|&v| v as i128).collect();
            let re = Rational::new(2 * c[0] - c[1] - c[2], 2) - center;
            let im_sq = Rational::new(3 * (c[1] - c[2]) * (c[1] - c[2]), 4);
            return SquaredMagnitude::Exact(re * re + im_sq);
        }
        let (re, im) = self.re_im();
        let c = *center.numer() as f64 / *center.denom() as f64;
        SquaredMagnitude::Approx((re - c) * (re - c) + im * im)
    }
}

/// `|S|` plus the squared magnitude in its exact form where available.
pub fn character_sum_magnitude(d: &TraceDistribution) -> (f64, SquaredMagnitude) {
    (d.abs(), d.abs_sq())
}

fn check_cap(q: u64, cap: u64) -> Result<()> {
    if q > cap {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            size: q as u128,
            cap,
        });
    }
    Ok(())
}

/// Trace counts of `c·f` over all of `F_q`, enumerating `0, g^0, …, g^{q-2}`.
pub fn trace_distribution(field: &Field, f: &MappingPoly, c: Elem) -> Result<TraceDistribution> {
    trace_distribution_capped(field, f, c, DEFAULT_CAP)
}

pub fn trace_distribution_capped(field: &Field, f: &MappingPoly, c: Elem, cap: u64) -> Result<TraceDistribution> {
    if c.is_zero() {
        return Err(Error::InvalidArgument("character scaling must be nonzero".into()));
    }
    check_cap(field.q(), cap)?;
    Ok(distribution_of(field, &f.scale(field, c)))
}

fn distribution_of(field: &Field, g: &MappingPoly) -> TraceDistribution {
    let mut counts = vec![0u64; field.p() as usize];
    for x in field.elements() {
        counts[field.trace(g.evaluate(field, x)) as usize] += 1;
    }
    TraceDistribution { p: field.p(), counts }
}

/// Number of affine solutions of `y^q - y = f(x)` over `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCount {
    pub n: u64,
    pub tower: SubfieldTower,
    /// `#{x : Tr_{q^m/q}(f(x)) = 0}`.
    pub kernel_hits: u64,
    /// Per base-field scalar `c ≠ 0`: the trace counts of `c·f` over the big field.
    pub character_sums: Vec<(Elem, TraceDistribution)>,
}

/// Counts points two independent ways and insists they agree:
/// `q · #{x : Tr_{q^m/q}(f(x)) = 0}`, and `Σ_{c ∈ F_q} Σ_x ψ_1(c·f(x))` with the
/// trivial character contributing `q^m`.
pub fn artin_schreier_count(field: &Field, tower: &SubfieldTower, f: &MappingPoly) -> Result<CurveCount> {
    artin_schreier_count_capped(field, tower, f, DEFAULT_CAP)
}

pub fn artin_schreier_count_capped(
    field: &Field,
    tower: &SubfieldTower,
    f: &MappingPoly,
    cap: u64,
) -> Result<CurveCount> {
    tower.check(field)?;
    check_cap(field.q(), cap)?;
    let base_q = tower.base_q();

    let mut kernel_hits = 0u64;
    for x in field.elements() {
        if tower.trace(field, f.evaluate(field, x))?.is_zero() {
            kernel_hits += 1;
        }
    }
    let kernel = base_q as i128 * kernel_hits as i128;

    let mut weights = vec![0i128; field.p() as usize];
    weights[0] += field.q() as i128;
    let mut character_sums = Vec::new();
    for c in tower.base_elements(field)?.into_iter().filter(|c| !c.is_zero()) {
        let d = distribution_of(field, &f.scale(field, c));
        for (w, &k) in weights.iter_mut().zip(&d.counts) {
            *w += k as i128;
        }
        character_sums.push((c, d));
    }
    // Σ W_t ζ^t is rational only if W_1 = … = W_{p-1}.
    let balanced = weights[1..].iter().all(|&w| w == weights[1]);
    let characters = weights[0] - weights[1];
    if !balanced || characters != kernel {
        return Err(Error::CountMismatch { kernel, characters });
    }
    Ok(CurveCount {
        n: kernel as u64,
        tower: *tower,
        kernel_hits,
        character_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Params};

    fn poly(field: &Field, expr: &str, a: Elem) -> MappingPoly {
        let mut p = Params::new();
        p.insert("a".into(), a);
        parse_poly(expr, field, &p).unwrap()
    }

    #[test]
    fn identity_is_balanced() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            let d = trace_distribution(&f, &poly(&f, "x", Elem::ONE), Elem::ONE).unwrap();
            assert!(d.counts.iter().all(|&c| c == f.q() / p));
            assert_eq!(d.integer_sum(), Some(0));
        }
    }

    #[test]
    fn constant_puts_all_mass_in_one_bucket() {
        let f = Field::new(3, 3).unwrap();
        let b = f.gen_pow(4);
        let c = f.gen_pow(7);
        let d = trace_distribution(&f, &MappingPoly::constant_poly(b), c).unwrap();
        let t = f.trace(f.mul(c, b)) as usize;
        assert_eq!(d.counts[t], 27);
        assert_eq!(d.abs(), 27.0);
    }

    #[test]
    fn magnitudes() {
        let uniform = TraceDistribution {
            p: 5,
            counts: vec![5; 5],
        };
        assert_eq!(uniform.abs_sq(), SquaredMagnitude::Exact(Rational::from_integer(0)));
        let point = TraceDistribution {
            p: 5,
            counts: vec![0, 0, 25, 0, 0],
        };
        assert!((point.abs() - 25.0).abs() < 1e-9);
        let two = TraceDistribution {
            p: 2,
            counts: vec![160, 96],
        };
        assert_eq!(two.integer_sum(), Some(64));
        assert_eq!(two.abs(), 64.0);
        // p = 3: |c0 + c1 ω + c2 ω²|² = c0² + c1² + c2² - c0c1 - c1c2 - c0c2
        let three = TraceDistribution {
            p: 3,
            counts: vec![12, 9, 6],
        };
        assert_eq!(
            three.abs_sq(),
            SquaredMagnitude::Exact(Rational::from_integer(144 + 81 + 36 - 108 - 54 - 72))
        );
        let (re, im) = three.re_im();
        assert!((re * re + im * im - 27.0).abs() < 1e-9);
    }

    #[test]
    fn rotation_matches_constant_shift() {
        let f = Field::new(5, 2).unwrap();
        let a = f.gen_pow(3);
        let c = f.gen_pow(11);
        let base = poly(&f, "x^8 + a*x", a);
        let with_b = poly(&f, "x^8 + a*x + g^5", a);
        let d0 = trace_distribution(&f, &base, c).unwrap();
        let d1 = trace_distribution(&f, &with_b, c).unwrap();
        let t = f.trace(f.mul(c, f.gen_pow(5)));
        assert_eq!(d0.rotated(t), d1);
    }

    #[test]
    fn naive_oracle_agreement() {
        // re-evaluate each monomial by repeated multiplication with the
        // schoolbook product, independent of the log tables
        let f = Field::new(3, 3).unwrap();
        for k in 0..26 {
            let a = f.gen_pow(k);
            let p = poly(&f, "x^25 + a*x^4", a);
            let d = trace_distribution(&f, &p, Elem::ONE).unwrap();
            let mut counts = vec![0u64; 3];
            for x in f.elements() {
                let mut x25 = Elem::ONE;
                for _ in 0..25 {
                    x25 = f.mul_schoolbook(x25, x);
                }
                let mut x4 = Elem::ONE;
                for _ in 0..4 {
                    x4 = f.mul_schoolbook(x4, x);
                }
                let v = f.add(x25, f.mul_schoolbook(a, x4));
                counts[f.trace_by_definition(v) as usize] += 1;
            }
            assert_eq!(d.counts, counts);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = Field::new(3, 3).unwrap();
        let p = poly(&f, "x", Elem::ONE);
        assert!(matches!(
            trace_distribution_capped(&f, &p, Elem::ONE, 26),
            Err(Error::CapExceeded { .. })
        ));
        assert!(trace_distribution(&f, &p, Elem::ZERO).is_err());
    }

    #[test]
    fn identity_curve_has_q_m_points() {
        let t = SubfieldTower::new(16, 2).unwrap();
        let f = t.big_field(Default::default()).unwrap();
        let c = artin_schreier_count(&f, &t, &poly(&f, "x", Elem::ONE)).unwrap();
        assert_eq!(c.n, 256);
        assert_eq!(c.n % 16, 0);
    }
}
