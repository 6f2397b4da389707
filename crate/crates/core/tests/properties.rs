use oagw_core::embedding::{apply, straddle_witnesses, EmbeddingId};
use oagw_core::oag::{
    format_element, fragment, lead_mod, parse_element, Construction, FragmentConfig, GroupElement, Position,
};
use oagw_core::sample::{case_rng, random_element, Shape};
use proptest::prelude::*;

fn element(c: Construction) -> impl Strategy<Value = GroupElement> {
    any::<u64>().prop_map(move |s| random_element(&mut case_rng(s, 0), c, &Shape::default()))
}

fn construction() -> impl Strategy<Value = Construction> {
    prop_oneof![Just(Construction::Lambda), Just(Construction::Gamma)]
}

fn triple() -> impl Strategy<Value = (GroupElement, GroupElement, GroupElement)> {
    construction().prop_flat_map(|c| (element(c), element(c), element(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn order_is_translation_invariant((a, b, c) in triple()) {
        if a < b {
            prop_assert!(a.add(&c).unwrap() < b.add(&c).unwrap());
        }
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn literals_round_trip((a, _, _) in triple()) {
        let text = format_element(&a);
        prop_assert_eq!(parse_element(&text, a.construction()).unwrap(), a);
    }

    #[test]
    fn embeddings_preserve_structure((a, b, _) in triple()) {
        let c = a.construction();
        for e in [EmbeddingId::f1(c), EmbeddingId::f2(c).allow_experimental()] {
            prop_assert_eq!(apply(e, &a.add(&b).unwrap()).unwrap(), apply(e, &a).unwrap().add(&apply(e, &b).unwrap()).unwrap());
            prop_assert_eq!(a.cmp(&b), apply(e, &a).unwrap().cmp(&apply(e, &b).unwrap()));
        }
    }

    #[test]
    fn straddle_interval_pins_the_descriptor(s in any::<u64>(), n in 2u64..=3) {
        let mut rng = case_rng(s, 1);
        let a = random_element(&mut rng, Construction::Lambda, &Shape::default());
        if let Some(d) = lead_mod(&a, n).unwrap() {
            let (lo, hi) = straddle_witnesses(&a, n).unwrap();
            prop_assert!(lo < hi);
            let f1 = EmbeddingId::f1(Construction::Lambda);
            prop_assert!(oagw_core::embedding::in_image(f1, &lo).unwrap());
            prop_assert!(oagw_core::embedding::in_image(f1, &hi).unwrap());
            let noise = random_element(&mut rng, Construction::Lambda, &Shape::default())
                .restrict(|p| *p > d.position);
            let inner = lo.add(&GroupElement::slot_unit(d.position, d.slot + 1, 1)).unwrap().add(&noise).unwrap();
            if lo < inner && inner < hi {
                prop_assert_eq!(lead_mod(&inner, n).unwrap(), Some(d));
            }
        }
    }
}

#[test]
fn archimedean_separation_inside_squares() {
    let pos = Position::g1_square(0, 0);
    for n in 1..=64 {
        for i in 0..63 {
            let big = GroupElement::slot_unit(pos, i, 1);
            let small = GroupElement::slot_unit(pos, i + 1, n);
            assert!(small < big);
        }
    }
}

#[test]
fn fragment_contract() {
    let l = Construction::Lambda;
    let a = parse_element("{G1[0].s[0]: 1}", l).unwrap();
    let b = parse_element("{G2[0].c: 1/2}", l).unwrap();
    let g = parse_element("{G1[2].c: 3}", l).unwrap();
    assert_eq!(fragment(l, &[], &FragmentConfig::new(1)).unwrap(), vec![GroupElement::zero(l)]);
    assert_eq!(
        fragment(l, std::slice::from_ref(&a), &FragmentConfig::new(1)).unwrap(),
        vec![GroupElement::zero(l), a.clone(), a.neg()]
    );
    let frag = fragment(l, &[a.clone(), b.clone()], &FragmentConfig::new(2).with_pool(vec![g.clone()])).unwrap();
    let target = a.scale(2).sub(&b).unwrap().add(&g).unwrap();
    assert!(frag.contains(&target));
    let again = fragment(l, &[a, b], &FragmentConfig::new(2).with_pool(vec![g])).unwrap();
    assert_eq!(frag, again);
}
