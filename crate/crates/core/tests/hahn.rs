use std::collections::BTreeMap;

use oagw_core::embedding::{apply, EmbeddingId};
use oagw_core::formula::{eval_ring_formula, eval_val_formula, translate_to_ring, RingFormula, SeriesTerm, ValAtom, ValFormula};
use oagw_core::hahn::{parse_series, witness_h_a_not_in_a, CoeffField, Coefficient, HahnSeries};
use oagw_core::oag::{parse_element, Construction, GroupElement};
use oagw_core::sample::{case_rng, random_nonzero_series, Shape};
use oagw_core::Error;

const L: Construction = Construction::Lambda;
const Q: CoeffField = CoeffField::Rational;

fn el(s: &str) -> GroupElement {
    parse_element(s, L).unwrap()
}

fn t(gamma: &GroupElement) -> HahnSeries {
    HahnSeries::monomial(Coefficient::one(Q), gamma.clone())
}

#[test]
fn monomials_and_identities() {
    let g = el("{G1[0].s[0]: 1}");
    let d = el("{G2[0].c: 1/2}");
    assert_eq!(t(&g).mul(&t(&d)).unwrap(), t(&g.add(&d).unwrap()));
    let one = HahnSeries::one(L, Q);
    let (p, m) = (one.add(&t(&g)).unwrap(), one.sub(&t(&g)).unwrap());
    assert_eq!(p.mul(&m).unwrap(), one.sub(&t(&g.scale(2))).unwrap());
    assert!(p.add(&p.neg()).unwrap().is_zero());
    assert_eq!(t(&g).valuation().unwrap(), g);
    assert!(matches!(HahnSeries::zero(L, Q).valuation(), Err(Error::ZeroSeries)));
}

#[test]
fn mismatched_kinds_are_rejected() {
    let a = HahnSeries::one(L, Q);
    let b = HahnSeries::one(L, CoeffField::Prime(5));
    assert!(a.add(&b).is_err());
    assert!(a.mul(&HahnSeries::one(Construction::Gamma, Q)).is_err());
}

#[test]
fn membership_examples() {
    let x = t(&el("{G1[0].s[0]: 1}").neg());
    let m = x.membership();
    assert!(m.in_a && !m.in_val_ring && m.in_k_lambda1);
    let y = t(&el("{G2[0].s: 1}").neg());
    let m = y.membership();
    assert!(!m.in_a && !m.in_val_ring && !m.in_k_lambda1);
    let m = HahnSeries::one(L, Q).membership();
    assert!(m.in_a && m.in_val_ring && m.in_k_lambda1);
    // in A but in neither summand alone
    let mixed = x.add(&t(&el("{G2[0].s: 1}"))).unwrap().membership();
    assert!(mixed.in_a && !mixed.in_val_ring && !mixed.in_k_lambda1);
}

#[test]
fn truncated_inverse_examples() {
    let g = el("{G1[1].c: 1}");
    let inv = t(&g).truncated_inverse(&GroupElement::zero(L)).unwrap();
    assert_eq!(inv, t(&g.neg()));
    let f = HahnSeries::one(L, Q).sub(&t(&g)).unwrap();
    let inv = f.truncated_inverse(&g.scale(3)).unwrap();
    let want = parse_series(
        "1 * t^0 + 1 * t^{G1[1].c: 1} + 1 * t^{G1[1].c: 2} + 1 * t^{G1[1].c: 3}",
        L,
        Q,
    )
    .unwrap();
    assert_eq!(inv, want);
    assert!(matches!(HahnSeries::zero(L, Q).truncated_inverse(&g), Err(Error::ZeroSeries)));
}

#[test]
fn unreachable_precision_is_reported() {
    // correction term infinitesimal against the requested precision
    let f = HahnSeries::one(L, Q).add(&t(&el("{G1[3].c: 1}"))).unwrap();
    assert!(matches!(
        f.truncated_inverse(&el("{G2[0].s: 1}")),
        Err(Error::PrecisionUnreachable(_))
    ));
}

#[test]
fn prime_field_inverse() {
    let k = CoeffField::prime(7).unwrap();
    let f = parse_series("3 * t^{G1[0].c: 1} + 2 * t^{G1[0].c: 2}", L, k).unwrap();
    let g = f.truncated_inverse(&el("{G1[0].c: 4}")).unwrap();
    let err = f.mul(&g).unwrap().sub(&HahnSeries::one(L, k)).unwrap();
    assert!(err.is_zero() || err.valuation().unwrap() > el("{G1[0].c: 4}"));
    assert!(CoeffField::prime(8).is_err());
}

#[test]
fn lift_is_functorial() {
    let f1 = EmbeddingId::f1(L);
    let g = el("{G1[0].s[0]: 2 + c1}");
    assert_eq!(t(&g).lift(f1).unwrap(), t(&apply(f1, &g).unwrap()));
    let shape = Shape::default();
    for i in 0..200 {
        let mut rng = case_rng(3, i);
        let a = random_nonzero_series(&mut rng, L, Q, &shape, 3);
        let b = random_nonzero_series(&mut rng, L, Q, &shape, 3);
        for e in [f1, EmbeddingId::f2(L)] {
            let (ha, hb) = (a.lift(e).unwrap(), b.lift(e).unwrap());
            assert_eq!(a.add(&b).unwrap().lift(e).unwrap(), ha.add(&hb).unwrap());
            assert_eq!(a.mul(&b).unwrap().lift(e).unwrap(), ha.mul(&hb).unwrap());
            assert_eq!(ha.valuation().unwrap(), apply(e, &a.valuation().unwrap()).unwrap());
        }
    }
}

#[test]
fn witness_flip() {
    let (x, hx) = witness_h_a_not_in_a();
    assert!(x.membership().in_a);
    assert!(!hx.membership().in_a);
    assert!(!x.membership().in_val_ring);
    assert_eq!(hx.valuation().unwrap(), el("{G2[0].s: -1}"));
}

#[test]
fn series_literals_round_trip() {
    let s = parse_series("1/2 * t^{G1[0].s[0]: -1} + 3 * t^0 - 2 * t^{G2[0].c: 1/3}", L, Q).unwrap();
    assert_eq!(s.terms().len(), 3);
    assert_eq!(parse_series(&s.to_string(), L, Q).unwrap(), s);
    assert!(parse_series("1/2 * t^{G1[0].s[0]: 1/2}", L, Q).is_err());
    assert!(parse_series("2 * x^0", L, Q).is_err());
}

fn v(name: &str) -> SeriesTerm {
    SeriesTerm::var(name)
}

#[test]
fn translation_shapes() {
    let ge = translate_to_ring(&ValFormula::Atom(ValAtom::Ge(v("x"), v("y"))));
    assert!(matches!(ge, RingFormula::Exists(..)), "{ge}");
    let sum = translate_to_ring(&ValFormula::Atom(ValAtom::SumEq(v("x"), v("y"), v("z"))));
    let RingFormula::And(a, b) = &sum else { panic!("{sum}") };
    assert!(matches!(a.as_ref(), RingFormula::Not(_)) && matches!(b.as_ref(), RingFormula::Not(_)));
}

#[test]
fn translation_agrees_on_samples() {
    let shape = Shape::default();
    let atoms = [
        ValAtom::Eq(v("x"), v("x")),
        ValAtom::Ge(v("x"), v("y")),
        ValAtom::Lt(SeriesTerm::product(&v("x"), &v("y")), v("z")),
        ValAtom::SumEq(v("x"), v("y"), v("z")),
    ];
    for i in 0..100 {
        let mut rng = case_rng(11, i);
        let env: BTreeMap<String, HahnSeries> = ["x", "y", "z"]
            .iter()
            .map(|n| (n.to_string(), random_nonzero_series(&mut rng, L, Q, &shape, 3)))
            .collect();
        for a in &atoms {
            let f = ValFormula::Atom(a.clone());
            assert_eq!(
                eval_val_formula(&f, &env).unwrap(),
                eval_ring_formula(&translate_to_ring(&f), &env).unwrap(),
                "{a}"
            );
        }
        let refl = ValFormula::Atom(ValAtom::Eq(v("x"), v("x")));
        assert!(eval_ring_formula(&translate_to_ring(&refl), &env).unwrap());
    }
}
