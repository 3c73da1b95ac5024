//! Bounds as exact intervals `|S - C| ≤ K·√R`, with their classification.

pub mod corollary;
pub mod curve;
pub mod interval;
pub mod theorems;

pub use corollary::{
    binomial_bound, binomial_has_root, family_bound, BinomialBound, Family, FamilyBound, HypothesisCheck,
};
pub use curve::{curve_bounds, CurveBounds, CurveOptions};
pub use interval::{classify, render_radius, render_rational, BoundInterval, Classification, Containment};
pub use theorems::{
    bound_report, centered_distribution, class_intervals, improved_bound, index_bound, reduced_weil_bound,
    tightest_class_interval, weil_bound, BoundReport, IndexWitness, SearchOptions,
};
