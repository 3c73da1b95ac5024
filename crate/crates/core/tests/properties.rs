use indexbound::bounds::{bound_report, SearchOptions};
use indexbound::charsum::trace_distribution;
use indexbound::poly::{
    compute_index, compute_n0, cyclotomic_coset, frobenius_shift, minimize_degree, minimize_index, CanonicalForm,
    ShiftVector, DEFAULT_BUDGET,
};
use indexbound::{Elem, Field, MappingPoly};
use proptest::prelude::*;

const FIELDS: [(u64, u32); 8] = [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 6), (7, 2), (2, 5)];

fn field_at(i: usize) -> Field {
    let (p, m) = FIELDS[i];
    Field::new(p, m).unwrap()
}

/// A field index and raw packed data for up to three terms plus a constant.
fn raw_poly() -> impl Strategy<Value = (usize, Vec<(u64, u32)>, u32, u32)> {
    (
        0..FIELDS.len(),
        prop::collection::vec((1u64..4096, any::<u32>()), 1..=3),
        any::<u32>(),
        any::<u32>(),
    )
}

fn build(field: &Field, terms: &[(u64, u32)], constant: u32) -> MappingPoly {
    let q = field.q();
    let raw = terms
        .iter()
        .map(|&(e, c)| (e % (q - 1) + 1, Elem::from_packed(c % (q as u32 - 1) + 1)))
        .chain(std::iter::once((0, Elem::from_packed(constant % q as u32))));
    MappingPoly::from_raw(field, raw)
}

fn nonzero(field: &Field, c: u32) -> Elem {
    Elem::from_packed(c % (field.q() as u32 - 1) + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trace_is_additive_and_frobenius_invariant(i in 0..FIELDS.len(), x in any::<u32>(), y in any::<u32>(), k in 0u32..8) {
        let f = field_at(i);
        let q = f.q() as u32;
        let (x, y) = (Elem::from_packed(x % q), Elem::from_packed(y % q));
        let p = f.p() as u32;
        prop_assert_eq!(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % p);
        prop_assert_eq!(f.trace(f.frobenius(x, k % f.m())), f.trace(x));
        prop_assert_eq!(f.trace(x), f.trace_by_definition(x));
    }

    #[test]
    fn log_and_power_are_inverse(i in 0..FIELDS.len(), k in any::<u64>()) {
        let f = field_at(i);
        let k = k % (f.q() - 1);
        prop_assert_eq!(f.log(f.gen_pow(k)), Some(k));
    }

    #[test]
    fn shifts_preserve_trace_counts((i, terms, constant, c) in raw_poly(), seed in any::<u64>()) {
        let field = field_at(i);
        let f = build(&field, &terms, constant);
        let c = nonzero(&field, c);
        let cf = f.scale(&field, c);
        let m = field.m() as u64;
        let v: Vec<u32> = (0..=cf.terms().len())
            .map(|j| ((seed >> (5 * j)) % m) as u32)
            .collect();
        let g = frobenius_shift(&field, &cf, &ShiftVector(v)).unwrap();
        let a = trace_distribution(&field, &cf, Elem::ONE).unwrap();
        let b = trace_distribution(&field, &g, Elem::ONE).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn canonical_form_round_trips((i, terms, constant, _) in raw_poly()) {
        let field = field_at(i);
        let f = build(&field, &terms, constant);
        if let Ok(form) = compute_index(&field, &f) {
            prop_assert_eq!(form.expand(&field), f);
        }
    }

    #[test]
    fn n0_ignores_scaling_of_h((i, terms, constant, c) in raw_poly()) {
        let field = field_at(i);
        let f = build(&field, &terms, constant);
        if let Ok(form) = compute_index(&field, &f) {
            let c = nonzero(&field, c);
            let scaled = CanonicalForm {
                h: form.h.iter().map(|t| indexbound::poly::Term { exp: t.exp, coeff: field.mul(c, t.coeff) }).collect(),
                ..form.clone()
            };
            prop_assert_eq!(compute_n0(&field, &form), compute_n0(&field, &scaled));
        }
    }

    #[test]
    fn searches_stay_in_cosets_and_never_grow((i, terms, constant, c) in raw_poly()) {
        let field = field_at(i);
        let f = build(&field, &terms, constant);
        prop_assume!(!f.is_constant());
        let c = nonzero(&field, c);
        let own = compute_index(&field, &f).unwrap();
        let eq = minimize_index(&field, &f, c, DEFAULT_BUDGET).unwrap();
        prop_assert!(eq.l_star <= own.l);
        prop_assert_eq!(compute_index(&field, &eq.rep).unwrap().l, eq.l_star);
        let deg = minimize_degree(&field, &f, c, DEFAULT_BUDGET).unwrap();
        prop_assert!(deg.n_star <= f.degree());
        prop_assert_eq!(deg.rep.degree(), deg.n_star);
        // every representative exponent lies in the coset of some original one
        for t in eq.rep.terms() {
            prop_assert!(f.terms().iter().any(|s| cyclotomic_coset(s.exp, field.p(), field.q()).contains(t.exp)));
        }
    }

    #[test]
    fn every_applicable_bound_contains_the_sum((i, terms, constant, c) in raw_poly()) {
        let field = field_at(i);
        let f = build(&field, &terms, constant);
        let c = nonzero(&field, c);
        let opts = SearchOptions { exhaustive: true, ..Default::default() };
        let rep = bound_report(&field, &f, c, opts, true).unwrap();
        let exact = rep.exact.clone().unwrap();
        for (name, b) in rep.named() {
            if b.applicable {
                let v = b.check_sum(&exact);
                prop_assert!(v.holds, "{}: {} > {}", name, v.deviation, v.radius);
            }
        }
        if let Some((_, b)) = &rep.tightest_member {
            prop_assert!(b.check_sum(&exact).holds);
            prop_assert!(b.radius_coeff <= rep.improved.radius_coeff);
        }
        if rep.index.applicable {
            prop_assert!(rep.improved.radius_coeff <= rep.index.radius_coeff);
        }
    }

    #[test]
    fn reports_are_deterministic((i, terms, constant, c) in raw_poly()) {
        let field = field_at(i);
        let f = build(&field, &terms, constant);
        let c = nonzero(&field, c);
        let a = bound_report(&field, &f, c, SearchOptions::default(), true).unwrap();
        let b = bound_report(&Field::new(field.p(), field.m()).unwrap(), &f, c, SearchOptions::default(), true).unwrap();
        prop_assert_eq!(a, b);
    }
}
