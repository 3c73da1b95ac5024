use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::square_part;
use crate::charsum::{Rational, SquaredMagnitude, TraceDistribution, FLOAT_TOLERANCE};

/// The claim `|S - center| ≤ radius_coeff · √radicand`, kept exact.
///
/// `ceiling` is the trivial bound for the quantity (`q` for a character sum
/// over `F_q`, `q · q^m` for an Artin-Schreier point count); a bound whose upper
/// end reaches it says nothing new.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub center: Rational,
    pub radius_coeff: u64,
    pub radicand: u64,
    pub ceiling: u64,
    pub applicable: bool,
    pub reason: String,
    pub informative: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Informative,
    Trivial,
    Inapplicable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Informative => "informative",
            Classification::Trivial => "trivial",
            Classification::Inapplicable => "inapplicable",
        })
    }
}

/// Outcome of checking an exact value against an interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Containment {
    pub holds: bool,
    /// Whether the comparison was done in exact rational arithmetic.
    pub exact: bool,
    pub deviation: f64,
    pub radius: f64,
}

impl BoundInterval {
    pub fn new(center: Rational, radius_coeff: u64, radicand: u64, ceiling: u64, reason: impl Into<String>) -> Self {
        let mut b = Self {
            center,
            radius_coeff,
            radicand,
            ceiling,
            applicable: true,
            reason: reason.into(),
            informative: false,
        };
        b.informative = upper_end_below(&b);
        b
    }

    pub fn inapplicable(radicand: u64, ceiling: u64, reason: impl Into<String>) -> Self {
        Self {
            center: Rational::from_integer(0),
            radius_coeff: 0,
            radicand,
            ceiling,
            applicable: false,
            reason: reason.into(),
            informative: false,
        }
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }

    pub fn radius(&self) -> f64 {
        self.radius_coeff as f64 * (self.radicand as f64).sqrt()
    }

    /// `K²·radicand`, exactly.
    pub fn radius_sq(&self) -> Rational {
        let k = self.radius_coeff as i128;
        Rational::from_integer(k * k * self.radicand as i128)
    }

    /// Checks a squared deviation `|S - center|²`.
    pub fn check_squared(&self, dev_sq: SquaredMagnitude) -> Containment {
        let radius = self.radius();
        match dev_sq {
            SquaredMagnitude::Exact(d) => Containment {
                holds: d <= self.radius_sq(),
                exact: true,
                deviation: to_f64(d).sqrt(),
                radius,
            },
            SquaredMagnitude::Approx(v) => {
                let deviation = v.max(0.0).sqrt();
                Containment {
                    holds: deviation <= radius + FLOAT_TOLERANCE * self.ceiling as f64,
                    exact: false,
                    deviation,
                    radius,
                }
            }
        }
    }

    /// Checks a character sum given by its trace counts.
    pub fn check_sum(&self, d: &TraceDistribution) -> Containment {
        self.check_squared(d.deviation_sq(self.center))
    }

    /// Checks an integer-valued quantity such as a point count.
    pub fn check_value(&self, v: i128) -> Containment {
        let d = Rational::from_integer(v) - self.center;
        self.check_squared(SquaredMagnitude::Exact(d * d))
    }

    pub fn render_radius(&self) -> String {
        render_radius(self.radius_coeff, self.radicand)
    }

    pub fn render_center(&self) -> String {
        render_rational(self.center)
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `C + K√R < ceiling`, decided by comparing `(ceiling - C)²` with `K²R`.
fn upper_end_below(b: &BoundInterval) -> bool {
    let gap = Rational::from_integer(b.ceiling as i128) - b.center;
    if gap <= Rational::from_integer(0) {
        return false;
    }
    gap * gap > b.radius_sq()
}

/// Informative when applicable and the upper end stays strictly below the
/// trivial ceiling; equality counts as trivial.
pub fn classify(b: &BoundInterval) -> Classification {
    if !b.applicable {
        Classification::Inapplicable
    } else if upper_end_below(b) {
        Classification::Informative
    } else {
        Classification::Trivial
    }
}

/// `K·√R` with the largest square pulled out of `R`: `2·√243` renders as
/// `18√3`, `3·√64` as `24`.
pub fn render_radius(k: u64, radicand: u64) -> String {
    if k == 0 {
        return "0".into();
    }
    let (s, d) = square_part(radicand);
    let coeff = k * s;
    match (coeff, d) {
        (c, 1) => c.to_string(),
        (1, d) => format!("√{d}"),
        (c, d) => format!("{c}√{d}"),
    }
}

pub fn render_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn classification_rules() {
        let weil = BoundInterval::new(int(0), 24, 27, 27, "");
        assert_eq!(classify(&weil), Classification::Trivial);
        let zero = BoundInterval::new(int(0), 0, 27, 27, "");
        assert_eq!(classify(&zero), Classification::Informative);
        let na = BoundInterval::inapplicable(27, 27, "p divides the degree");
        assert_eq!(classify(&na), Classification::Inapplicable);
        assert!(!na.informative);
        // equality C + K√q = q is trivial: 0 + 2·√16 < 16 but 0 + 4·√16 = 16
        assert!(BoundInterval::new(int(0), 3, 16, 16, "").informative);
        assert!(!BoundInterval::new(int(0), 4, 16, 16, "").informative);
        // a shifted center eats into the margin
        assert!(BoundInterval::new(Rational::new(27, 2), 1, 27, 27, "").informative);
        assert!(!BoundInterval::new(Rational::new(27, 2), 3, 27, 27, "").informative);
    }

    #[test]
    fn rendering() {
        assert_eq!(render_radius(2, 243), "18√3");
        assert_eq!(render_radius(3, 64), "24");
        assert_eq!(render_radius(1, 27), "3√3");
        assert_eq!(render_radius(1, 3), "√3");
        assert_eq!(render_radius(4, 125), "20√5");
        assert_eq!(render_radius(0, 7), "0");
        assert_eq!(render_rational(Rational::new(27, 2)), "27/2");
        assert_eq!(render_rational(int(1024)), "1024");
    }

    #[test]
    fn exact_containment() {
        let b = BoundInterval::new(Rational::new(27, 2), 1, 27, 27, "");
        // |S - 27/2|² ≤ 27  ⇔  S ∈ [13.5 - 5.19…, 13.5 + 5.19…]
        assert!(b.check_value(18).holds);
        assert!(!b.check_value(19).holds);
        assert!(b.check_value(9).holds);
        assert!(!b.check_value(8).holds);
        let d = TraceDistribution {
            p: 2,
            counts: vec![160, 96],
        };
        let c = BoundInterval::new(int(0), 8, 256, 256, "").check_sum(&d);
        assert!(c.holds && c.exact);
        assert_eq!(c.deviation, 64.0);
    }
}
