use std::collections::BTreeSet;

use proptest::prelude::*;
use witfam::constructions::full_uniform;
use witfam::structure::{build_injection, find_sunflower, is_sunflower, stability_report};
use witfam::witness::{frankl_pach_bound, is_intersecting, vc_at_most_d, verify_s_witness};
use witfam::{binomial, canonicalize, k_subsets, Element, ElementSet, GroundParams, SetFamily, WitnessAssignment};

fn set(xs: &[Element]) -> ElementSet {
    xs.iter().copied().collect()
}

fn model(s: ElementSet) -> BTreeSet<Element> {
    s.iter().collect()
}

/// `(params, family)` with the family a random subfamily of all `(d+1)`-sets of `[n]`.
fn instance() -> impl Strategy<Value = (GroundParams, SetFamily)> {
    (4usize..=7, 1usize..=3)
        .prop_filter("d + 1 <= n", |(n, d)| d < n)
        .prop_flat_map(|(n, d)| (Just(n), Just(d), 0..=d))
        .prop_flat_map(|(n, d, s)| {
            let params = GroundParams::new(n, d, s).unwrap();
            let all = full_uniform(&params).into_members();
            let len = all.len();
            (Just(params), proptest::collection::vec(any::<bool>(), len)).prop_map(move |(params, keep)| {
                let members = all.iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| *f).collect();
                (params, SetFamily::new(params.n, members).unwrap())
            })
        })
}

proptest! {
    #[test]
    fn set_algebra_matches_btreeset(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (ElementSet::from_bits(a as u128), ElementSet::from_bits(b as u128));
        let (mx, my) = (model(x), model(y));
        prop_assert_eq!(model(x | y), &mx | &my);
        prop_assert_eq!(model(x & y), &mx & &my);
        prop_assert_eq!(model(x - y), &mx - &my);
        prop_assert_eq!(model(x ^ y), &mx ^ &my);
        prop_assert_eq!(x.len(), mx.len());
        prop_assert_eq!(x.is_subset(y), mx.is_subset(&my));
        prop_assert_eq!(x.min_element(), mx.first().copied());
    }

    #[test]
    fn canonicalize_is_idempotent(bits in proptest::collection::vec(1u128..(1 << 8), 0..20)) {
        let sets: Vec<ElementSet> = bits.into_iter().map(ElementSet::from_bits).collect();
        let once = canonicalize(8, sets.clone()).unwrap();
        let twice = canonicalize(8, once.members().to_vec()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.members().windows(2).all(|w| w[0] < w[1]));
        let distinct: BTreeSet<ElementSet> = sets.into_iter().collect();
        prop_assert_eq!(once.len(), distinct.len());
    }

    #[test]
    fn k_subsets_are_counted_and_ordered(n in 0u32..=12, k in 0usize..=6) {
        let subs = k_subsets(ElementSet::range(1, n), k);
        prop_assert_eq!(subs.len() as u64, binomial(n as u64, k as u64).unwrap());
        prop_assert!(subs.iter().all(|s| s.len() == k));
    }

    #[test]
    fn intersecting_iff_zero_witness((_params, family) in instance()) {
        prop_assert_eq!(is_intersecting(&family), verify_s_witness(&family, 0).unwrap().is_valid());
    }

    #[test]
    fn witness_families_have_small_vc((params, family) in instance()) {
        if verify_s_witness(&family, params.s).unwrap().is_valid() {
            prop_assert!(vc_at_most_d(&family, params.d).unwrap().vc_at_most_d);
            prop_assert!(family.len() as u64 <= frankl_pach_bound(params.n, params.d).unwrap());
        }
    }

    #[test]
    fn witness_property_is_hereditary((params, family) in instance(), mask in any::<u64>()) {
        if verify_s_witness(&family, params.s).unwrap().is_valid() {
            let mut i = 0;
            let sub = family.filter(|_| { i += 1; mask >> (i % 64) & 1 == 1 });
            prop_assert!(verify_s_witness(&sub, params.s).unwrap().is_valid());
        }
    }

    #[test]
    fn found_sunflowers_are_sunflowers((_params, family) in instance(), r in 2usize..=4) {
        if let Some(sf) = find_sunflower(&family, r).unwrap() {
            prop_assert_eq!(sf.petal_indices.len(), r);
            prop_assert!(is_sunflower(family.members(), &sf.petal_indices, sf.core));
        }
    }

    #[test]
    fn structure_reports_hold_on_witness_families((params, family) in instance()) {
        if let Some(a) = verify_s_witness(&family, params.s).unwrap().into_assignment() {
            let inj = build_injection(&family, &a, &params).unwrap();
            prop_assert_eq!(inj.e.len(), inj.f1.len());
            let stab = stability_report(&family, &a, &params).unwrap();
            prop_assert!(stab.inj2_slack <= stab.bound);
        }
    }
}

/// Two singleton-model bases with different excluded points, so `𝒫` is non-empty.
#[test]
fn injection_with_crossing_pair() {
    let params = GroundParams::new(8, 2, 1).unwrap();
    let mut members = Vec::new();
    let mut assignment = WitnessAssignment::new();
    for y in 5..=8 {
        members.push(set(&[1, 3, y]));
        assignment.insert(set(&[1, 3, y]), set(&[3]));
        members.push(set(&[2, 4, y]));
        assignment.insert(set(&[2, 4, y]), set(&[4]));
    }
    let family = SetFamily::new(8, members).unwrap();
    assert!(witfam::witness::check_assignment(&family, &assignment, 1).is_none());
    let r = build_injection(&family, &assignment, &params).unwrap();
    let xs: Vec<(ElementSet, Element)> = r.per_base.iter().map(|b| (b.base, b.x_b)).collect();
    assert_eq!(xs, vec![(set(&[3]), 1), (set(&[4]), 2)]);
    assert_eq!(r.pairs.len(), 2);
    // 𝒰({3}, {4}) is {{3, 4}}: C(n - 2s - 2, d - 2s) = C(4, 0) = 1.
    assert_eq!(r.u.members(), &[set(&[3, 4])]);
    assert_eq!(r.pair_lower_bound, Some(1));
    assert_eq!(r.slack, binomial(8, 2).unwrap() - 8 - 1);

    let st = stability_report(&family, &assignment, &params).unwrap();
    assert_eq!(st.x0, Some(1));
    assert_eq!(st.m, 1);
    assert_eq!(st.b1_prime, vec![set(&[4])]);
    assert_eq!(st.u_prime.members(), &[set(&[3, 4])]);
}
