//! The four bounds reported for a single polynomial: Weil, the index bound of
//! `c·f` itself, the improved index bound over the Frobenius class, and the
//! Weil bound of the minimal-degree class member.
//!
//! All intervals bound `Σ_x ψ_1(c·(f(x) - b))`. Dropping the constant `b` only
//! multiplies the sum by the unit `ψ_1(c·b)`, so magnitudes are unaffected, but
//! the shifted centers `q·n0/l` are only meaningful for the constant-free sum.

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::bounds::interval::BoundInterval;
use crate::charsum::{trace_distribution_capped, Rational, TraceDistribution};
use crate::error::Result;
use crate::field::{Elem, Field, DEFAULT_CAP};
use crate::poly::frobenius::{enumerate_class, radius_coeff};
use crate::poly::{compute_index, compute_n0, minimize_degree, minimize_index, CanonicalForm, MappingPoly};
use crate::poly::{EquivalentForm, ShiftVector, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Also evaluate every class member's index bound and keep the tightest.
    pub exhaustive: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            exhaustive: false,
        }
    }
}

fn sum_interval(field: &Field, center: Rational, k: u64, reason: impl Into<String>) -> BoundInterval {
    BoundInterval::new(center, k, field.q(), field.q(), reason)
}

fn sum_inapplicable(field: &Field, reason: impl Into<String>) -> BoundInterval {
    BoundInterval::inapplicable(field.q(), field.q(), reason)
}

/// `|S| ≤ (n - 1)√q` for degree `n` prime to `p`.
pub fn weil_bound(field: &Field, f: &MappingPoly) -> BoundInterval {
    if f.is_constant() {
        return sum_inapplicable(field, "constant polynomial");
    }
    let n = f.degree();
    if gcd(n, field.p()) != 1 {
        return sum_inapplicable(field, format!("p = {} divides the degree {n}", field.p()));
    }
    sum_interval(field, Rational::from_integer(0), n - 1, format!("degree n = {n}"))
}

/// Index data of a single polynomial, no shifts applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexWitness {
    pub form: CanonicalForm,
    pub n0: u64,
}

fn index_interval(field: &Field, form: &CanonicalForm, n0: u64, label: &str) -> BoundInterval {
    let q = field.q();
    let center = Rational::new((q * n0) as i128, form.l as i128);
    let k = radius_coeff(form, n0, q);
    sum_interval(
        field,
        center,
        k,
        format!("{label}: l = {}, r = {}, n0 = {n0}", form.l, form.r),
    )
}

/// Index bound of `c·f` using its own canonical form.
pub fn index_bound(field: &Field, f: &MappingPoly, c: Elem) -> (BoundInterval, Option<IndexWitness>) {
    if f.is_constant() || c.is_zero() {
        return (sum_inapplicable(field, "constant polynomial"), None);
    }
    let g = f.scale(field, c);
    let form = compute_index(field, &g).expect("nonconstant");
    let n0 = compute_n0(field, &form);
    let b = index_interval(field, &form, n0, "index");
    (b, Some(IndexWitness { form, n0 }))
}

/// Index bound of the class member of `c·f` with the smallest index.
pub fn improved_bound(
    field: &Field,
    f: &MappingPoly,
    c: Elem,
    opts: SearchOptions,
) -> Result<(BoundInterval, Option<EquivalentForm>)> {
    if f.is_constant() {
        return Ok((sum_inapplicable(field, "constant polynomial"), None));
    }
    let eq = minimize_index(field, f, c, opts.budget)?;
    let b = index_interval(field, &eq.form, eq.n0, "minimal index");
    Ok((b, Some(eq)))
}

/// Index bound of every nonconstant member of the class of `c·f`. Each is a
/// valid interval for the same sum.
pub fn class_intervals(
    field: &Field,
    f: &MappingPoly,
    c: Elem,
    budget: u64,
) -> Result<Vec<(ShiftVector, BoundInterval)>> {
    Ok(enumerate_class(field, f, c, budget)?
        .into_iter()
        .map(|(shift, _, form, n0)| {
            let b = index_interval(field, &form, n0, "class member");
            (shift, b)
        })
        .collect())
}

/// Smallest radius among all class members; ties keep the first shift.
pub fn tightest_class_interval(
    field: &Field,
    f: &MappingPoly,
    c: Elem,
    budget: u64,
) -> Result<Option<(ShiftVector, BoundInterval)>> {
    let all = class_intervals(field, f, c, budget)?;
    Ok(all.into_iter().fold(None, |best, cur| match best {
        Some(b) if b.1.radius_coeff <= cur.1.radius_coeff => Some(b),
        _ => Some(cur),
    }))
}

/// `|S| ≤ (n* - 1)√q` with `n*` the smallest degree in the class.
pub fn reduced_weil_bound(
    field: &Field,
    f: &MappingPoly,
    c: Elem,
    budget: u64,
) -> Result<(BoundInterval, Option<EquivalentForm>)> {
    if f.is_constant() {
        return Ok((sum_inapplicable(field, "constant polynomial"), None));
    }
    let eq = minimize_degree(field, f, c, budget)?;
    let n = eq.n_star;
    let b = if gcd(n, field.p()) != 1 {
        sum_inapplicable(field, format!("p = {} divides the minimal degree {n}", field.p()))
    } else {
        sum_interval(
            field,
            Rational::from_integer(0),
            n - 1,
            format!("minimal degree n* = {n}"),
        )
    };
    Ok((b, Some(eq)))
}

/// The four bounds for one `(f, c)`, with the exact sum when requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub weil: BoundInterval,
    pub index: BoundInterval,
    pub improved: BoundInterval,
    pub reduced_weil: BoundInterval,
    pub index_witness: Option<IndexWitness>,
    pub improved_witness: Option<EquivalentForm>,
    pub degree_witness: Option<EquivalentForm>,
    /// Tightest class member, when the exhaustive option is on.
    pub tightest_member: Option<(ShiftVector, BoundInterval)>,
    /// Trace counts of `c·(f - b)`.
    pub exact: Option<TraceDistribution>,
}

impl BoundReport {
    pub fn named(&self) -> [(&'static str, &BoundInterval); 4] {
        [
            ("weil", &self.weil),
            ("index", &self.index),
            ("improved", &self.improved),
            ("reduced_weil", &self.reduced_weil),
        ]
    }
}

/// Trace counts of `c·(f - b)`: the sum every interval here describes.
pub fn centered_distribution(field: &Field, f: &MappingPoly, c: Elem, cap: u64) -> Result<TraceDistribution> {
    trace_distribution_capped(field, &f.without_constant(), c, cap)
}

pub fn bound_report(field: &Field, f: &MappingPoly, c: Elem, opts: SearchOptions, oracle: bool) -> Result<BoundReport> {
    let weil = weil_bound(field, f);
    let (index, index_witness) = index_bound(field, f, c);
    let (improved, improved_witness) = improved_bound(field, f, c, opts)?;
    let (reduced_weil, degree_witness) = reduced_weil_bound(field, f, c, opts.budget)?;
    let tightest_member = if opts.exhaustive && !f.is_constant() {
        tightest_class_interval(field, f, c, opts.budget)?
    } else {
        None
    };
    let exact = if oracle {
        Some(centered_distribution(field, f, c, DEFAULT_CAP)?)
    } else {
        None
    };
    Ok(BoundReport {
        weil,
        index,
        improved,
        reduced_weil,
        index_witness,
        improved_witness,
        degree_witness,
        tightest_member,
        exact,
    })
}
