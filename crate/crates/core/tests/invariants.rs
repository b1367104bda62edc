//! Algebraic invariants checked on random instances drawn through the
//! same sampler the verifier uses.

use proptest::prelude::*;
use superanalytic::verify::{run_suite, CheckConfig, GBody, Sampler};
use superanalytic::wire;
use superanalytic::{GrassmannNumber, Parity, RationalComponent, ReductionKind, Superfield};

fn config(seed: u64) -> CheckConfig {
    CheckConfig { generators: 4, max_degree: 2, coefficient_bound: 5, trials: 1, seed, suite: vec![] }
}

fn parity(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn graded_sign(p: Parity, q: Parity) -> i64 {
    if p.is_odd() && q.is_odd() {
        -1
    } else {
        1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grassmann_graded_commutativity(seed: u64, pa: bool, pb: bool) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let (p, q) = (parity(pa), parity(pb));
        let x = s.number(p);
        let y = s.number(q);
        prop_assert_eq!(x.checked_mul(&y).unwrap(), y.checked_mul(&x).unwrap().scale_int(graded_sign(p, q)));
    }

    #[test]
    fn grassmann_associative_and_distributive(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let [x, y, z] = [s.parity(), s.parity(), s.parity()].map(|p| s.number(p));
        let m = |a: &GrassmannNumber, b: &GrassmannNumber| a.checked_mul(b).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        let sum = y.checked_add(&z).unwrap();
        prop_assert_eq!(m(&x, &sum), m(&x, &y).checked_add(&m(&x, &z)).unwrap());
    }

    #[test]
    fn body_map_is_a_ring_morphism(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let x = s.number(Parity::Even);
        let y = s.number(Parity::Even);
        prop_assert_eq!(x.checked_mul(&y).unwrap().body(), x.body() * y.body());
        prop_assert_eq!(x.checked_add(&y).unwrap().body(), x.body() + y.body());
    }

    #[test]
    fn inverse_exists_iff_body_nonzero(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let x = s.invertible_number().unwrap();
        let inv = x.invert().unwrap();
        prop_assert!(x.checked_mul(&inv).unwrap().is_one());
        prop_assert!(inv.checked_mul(&x).unwrap().is_one());
        prop_assert!(x.soul().invert().is_err());
    }

    #[test]
    fn odd_elements_square_to_zero(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let psi = s.number(Parity::Odd);
        prop_assert!(psi.checked_mul(&psi).unwrap().is_zero());
        let f = s.poly(Parity::Odd);
        prop_assert!(f.checked_mul(&f).unwrap().is_zero());
    }

    #[test]
    fn d_squares_to_partial(seed: u64, odd: bool) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let f = s.rational_superfield(parity(odd)).unwrap();
        prop_assert_eq!(f.d().d(), f.partial());
    }

    #[test]
    fn d_obeys_graded_leibniz(seed: u64, pa: bool, pb: bool) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let f = s.superfield(parity(pa));
        let g = s.superfield(parity(pb));
        let lhs = f.checked_mul(&g).unwrap().d();
        let rhs = &f.d().checked_mul(&g).unwrap()
            + &f.checked_mul(&g.d()).unwrap().scale_int(parity(pa).sign());
        prop_assert_eq!(lhs, rhs);
        let lhs = f.checked_mul(&g).unwrap().partial();
        let rhs = &f.partial().checked_mul(&g).unwrap() + &f.checked_mul(&g.partial()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn superfield_product_is_associative(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let [f, g, h] = [s.parity(), s.parity(), s.parity()].map(|p| s.superfield(p));
        let m = |a: &Superfield, b: &Superfield| a.checked_mul(b).unwrap();
        prop_assert_eq!(m(&m(&f, &g), &h), m(&f, &m(&g, &h)));
    }

    #[test]
    fn rational_equality_ignores_common_factors(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let r = s.rational(Parity::Even).unwrap();
        let k = s.body_poly().unwrap();
        let scaled = RationalComponent::new(r.num() * &k, &r.den() * &k).unwrap();
        prop_assert_eq!(&scaled, &r);
        prop_assert_eq!(&r, &scaled);
        let again = RationalComponent::new(scaled.num() * &k, &scaled.den() * &k).unwrap();
        prop_assert_eq!(&again, &r);
    }

    #[test]
    fn rational_equality_is_consistent_with_arithmetic(seed: u64) {
        let cfg = config(seed);
        let mut s = Sampler::new(&cfg, 0);
        let a = s.rational(Parity::Even).unwrap();
        let b = s.rational(Parity::Even).unwrap();
        prop_assert_eq!(&(&(&a + &b) - &b), &a);
        prop_assert_eq!(&(&a + &b), &(&b + &a));
        let unit = s.rational(Parity::Even).unwrap();
        if !unit.has_zero_body() {
            prop_assert_eq!(&a.checked_div(&unit).unwrap().checked_mul(&unit).unwrap(), &a);
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn transform_wire_round_trip(seed: u64, kind in 0usize..4) {
        let cfg = config(seed);
        let kind = [ReductionKind::General, ReductionKind::Scf, ReductionKind::Tpt, ReductionKind::Deg][kind];
        let mut s = Sampler::new(&cfg, 0);
        let t = s.transform(kind, GBody::Any).unwrap();
        let text = wire::to_canonical_string(&wire::transform_to_json(&t));
        let back = wire::transform_from_json(&wire::parse_document(&text).unwrap(), "").unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(wire::to_canonical_string(&wire::transform_to_json(&back)), text);
    }

    #[test]
    fn reduced_pair_wire_round_trip(seed: u64, tpt: bool) {
        let cfg = config(seed);
        let kind = if tpt { ReductionKind::Tpt } else { ReductionKind::Scf };
        let mut s = Sampler::new(&cfg, 0);
        let p = s.reduced_pair(kind, GBody::Any).unwrap();
        let text = wire::to_canonical_string(&wire::reduced_pair_to_json(&p));
        let back = wire::reduced_pair_from_json(&wire::parse_document(&text).unwrap(), "").unwrap();
        prop_assert_eq!(wire::to_canonical_string(&wire::reduced_pair_to_json(&back)), text);
        prop_assert_eq!(back.build().unwrap(), p.build().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn report_counts_are_consistent(seed: u64, trials in 1u64..6) {
        let cfg = CheckConfig { trials, suite: vec!["all".into()], ..config(seed) };
        let report = run_suite(&cfg).unwrap();
        for c in &report.checks {
            prop_assert_eq!(c.passes + c.failures, c.trials, "{}", c.name);
            prop_assert_eq!(c.trials, trials, "{}", c.name);
            prop_assert_eq!(c.counterexample.is_some(), c.failures > 0, "{}", c.name);
        }
        prop_assert!(report.passed());
    }
}

#[test]
fn failing_checks_carry_a_counterexample() {
    let cfg = CheckConfig { trials: 5, suite: vec!["calculus-soundness".into()], ..config(0) };
    let report = superanalytic::superfield::fault::with_flipped_graded_sign(|| run_suite(&cfg).unwrap());
    let c = report.check("calculus-soundness").unwrap();
    assert!(c.failures > 0);
    assert_eq!(c.passes + c.failures, c.trials);
    assert!(c.counterexample.is_some());
    assert!(!report.passed());
}
