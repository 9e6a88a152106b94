use num_bigint::BigUint;
use proptest::prelude::*;

use hombound::bounds::{
    best_bound, certificate_from_counts, lower_bound_explicit, verify_certificate,
    FactorContribution, Target,
};
use hombound::constructions::solsol_construct;
use hombound::{library, BoundCertificate, Presentation};

/// Largest `c` with `product > order^(c-1)`, by repeated division.
fn conclusion_oracle(product: &BigUint, order: &BigUint) -> u64 {
    if *product == BigUint::from(1u32) {
        return 0;
    }
    let mut c = 1;
    let mut power = BigUint::from(1u32);
    while product > &(&power * order) {
        power *= order;
        c += 1;
    }
    c
}

fn contributions() -> impl Strategy<Value = (u64, Vec<(u64, u64)>)> {
    (2u64..=60).prop_flat_map(|order| {
        let factor = (1u64..=2).prop_flat_map(move |gens| (Just(gens), 1u64..=order.pow(gens as u32)));
        (Just(order), prop::collection::vec(factor, 1..=4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_certificates_round_trip_and_verify((order, factors) in contributions()) {
        let order_big = BigUint::from(order);
        let per_factor: Vec<FactorContribution> = factors
            .iter()
            .enumerate()
            .map(|(i, &(g, c))| FactorContribution::exact(format!("G{i}"), g, c.into(), order_big.clone()))
            .collect();
        let product: BigUint = factors.iter().map(|&(_, c)| BigUint::from(c)).product();
        let cert = certificate_from_counts(
            Target { name: "H".into(), order: order_big.clone() },
            per_factor,
        ).unwrap();
        prop_assert_eq!(cert.conclusion, conclusion_oracle(&product, &order_big));
        prop_assert!(verify_certificate(&cert).is_ok());
        let back = BoundCertificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert!(verify_certificate(&back).is_ok());
    }

    #[test]
    fn raised_conclusions_are_rejected((order, factors) in contributions()) {
        let order_big = BigUint::from(order);
        let per_factor: Vec<FactorContribution> = factors
            .iter()
            .enumerate()
            .map(|(i, &(g, c))| FactorContribution::exact(format!("G{i}"), g, c.into(), order_big.clone()))
            .collect();
        let mut cert = certificate_from_counts(
            Target { name: "H".into(), order: order_big },
            per_factor,
        ).unwrap();
        cert.conclusion += 1;
        prop_assert!(verify_certificate(&cert).is_err());
    }
}

#[test]
fn tampered_certificates_fail() {
    let cert = lower_bound_explicit(
        &[Presentation::cyclic(2), Presentation::cyclic(3)],
        &library::symmetric(4),
    )
    .unwrap();
    verify_certificate(&cert).unwrap();

    let mut bad = cert.clone();
    bad.comparison.lhs += 1u32;
    assert!(verify_certificate(&bad).is_err());

    let mut bad = cert.clone();
    bad.per_factor[0].count = BigUint::from(11u32);
    assert!(verify_certificate(&bad).is_err());

    let mut bad = cert.clone();
    bad.target.order = BigUint::from(25u32);
    assert!(verify_certificate(&bad).is_err());

    let mut bad = cert;
    bad.conclusion = 1;
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn formula_certificates_survive_json() {
    let r = solsol_construct(&[2, 3, 5], None).unwrap();
    let text = r.certificate.to_json();
    assert!(!text.contains("e+"), "big numbers must stay decimal strings");
    let back = BoundCertificate::from_json(&text).unwrap();
    assert_eq!(back, r.certificate);
    verify_certificate(&back).unwrap();

    let mut bad = back;
    bad.comparison.rhs += 1u32;
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn best_bound_prefers_conclusion_then_sum_of_h() {
    let factors = [Presentation::cyclic(2), Presentation::cyclic(3)];
    let solsol = solsol_construct(&[2, 3], Some(1)).unwrap().target.group;
    let lib = vec![library::symmetric(3), library::symmetric(4), solsol];
    let best = best_bound(&factors, &lib).unwrap();
    assert_eq!(best.certificate.conclusion, 2);
    let top = best
        .candidates
        .iter()
        .filter(|c| c.conclusion == Some(2))
        .map(|c| c.total_h.unwrap())
        .fold(f64::MIN, f64::max);
    assert_eq!(best.certificate.total_h, top);
    assert_eq!(best.best_index, 1);
    verify_certificate(&best.certificate).unwrap();
}

#[test]
fn best_bound_ties_resolve_to_the_earlier_target() {
    let factors = [Presentation::cyclic(2)];
    let lib = vec![library::symmetric(3), library::symmetric(3).with_name("copy")];
    assert_eq!(best_bound(&factors, &lib).unwrap().best_index, 0);
}

#[test]
fn best_bound_single_cyclic_target() {
    let best = best_bound(&[Presentation::cyclic(2)], &[library::cyclic(2)]).unwrap();
    assert_eq!(best.certificate.conclusion, 1);
    assert_eq!(best.candidates.len(), 1);
}

#[test]
fn best_bound_needs_a_library() {
    assert!(best_bound(&[Presentation::cyclic(2)], &[]).is_err());
}
