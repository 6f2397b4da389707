use rand::Rng;

use super::{record, run_cases, Case, SuiteOptions};
use crate::embedding::EmbeddingId;
use crate::error::Result;
use crate::hahn::{witness_h_a_not_in_a, CoeffField, HahnSeries};
use crate::oag::{Construction, GroupElement};
use crate::report::SuiteReport;
use crate::sample::{random_coefficient, random_element, random_positive, random_series, Shape};

const SERIES_SHAPE: Shape = Shape {
    g2_pairs: 2,
    g1_blocks: 2,
    squares_per_block: 2,
    inner_slots: 2,
    max_entries: 2,
    coeff: 3,
};

fn field_for(index: u64) -> CoeffField {
    match index % 3 {
        0 => CoeffField::Rational,
        1 => CoeffField::Prime(5),
        _ => CoeffField::Prime(7),
    }
}

fn verdict(inputs: Vec<String>, broken: Vec<&str>) -> Case {
    let detail = if broken.is_empty() {
        "laws hold".to_string()
    } else {
        format!("violated: {}", broken.join(", "))
    };
    Case::check(inputs, broken.is_empty(), detail)
}

pub(super) fn hahn_ring(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let cases = run_cases(opts, 0, opts.samples_or(1000), |i, rng| {
        let k = field_for(i);
        let f = random_series(rng, c, k, &SERIES_SHAPE, 3);
        let g = random_series(rng, c, k, &SERIES_SHAPE, 3);
        let h = random_series(rng, c, k, &SERIES_SHAPE, 3);
        let inputs = vec![f.to_string(), g.to_string(), h.to_string()];
        let mut broken = Vec::new();
        if f.add(&g)?.add(&h)? != f.add(&g.add(&h)?)? {
            broken.push("additive associativity");
        }
        if f.mul(&g)?.mul(&h)? != f.mul(&g.mul(&h)?)? {
            broken.push("multiplicative associativity");
        }
        if f.mul(&g.add(&h)?)? != f.mul(&g)?.add(&f.mul(&h)?)? {
            broken.push("distributivity");
        }
        if f.mul(&g)? != g.mul(&f)? || f.add(&g)? != g.add(&f)? {
            broken.push("commutativity");
        }
        if !f.add(&f.neg())?.is_zero() {
            broken.push("additive inverse");
        }
        if f.mul(&HahnSeries::one(c, k))? != f {
            broken.push("unit");
        }
        if !f.is_zero() && !g.is_zero() {
            let (vf, vg) = (f.valuation()?, g.valuation()?);
            if f.mul(&g)?.valuation()? != vf.add(&vg)? {
                broken.push("v(fg) = v(f) + v(g)");
            }
            let sum = f.add(&g)?;
            if !sum.is_zero() {
                let vs = sum.valuation()?;
                let least = vf.clone().min(vg.clone());
                if vs < least || (vf != vg && vs != least) {
                    broken.push("ultrametric");
                }
            }
        }
        Ok(verdict(inputs, broken))
    });
    Ok(SuiteReport::new("hahn-ring", c, opts.seed, cases))
}

/// A series whose exponents all have a non-negative `G2` part.
fn random_a_member(rng: &mut impl Rng, c: Construction, k: CoeffField) -> Result<HahnSeries> {
    let terms: Vec<_> = (0..rng.random_range(0..=3))
        .map(|_| {
            let e = random_element(rng, c, &SERIES_SHAPE);
            let e = if e.g2_part().signum() < 0 { e.neg() } else { e };
            (e, random_coefficient(rng, k))
        })
        .collect();
    HahnSeries::from_terms(c, k, terms)
}

fn random_integral(rng: &mut impl Rng, c: Construction, k: CoeffField) -> Result<HahnSeries> {
    let terms: Vec<_> = (0..rng.random_range(0..=3))
        .map(|_| (random_element(rng, c, &SERIES_SHAPE).abs(), random_coefficient(rng, k)))
        .collect();
    HahnSeries::from_terms(c, k, terms)
}

pub(super) fn a_membership(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.only(Construction::Lambda, "a-membership")?;
    let pairs = opts.samples_or(1000);
    let lifts = pairs.div_ceil(2);
    let mut cases = run_cases(opts, 0, pairs, |i, rng| {
        let k = field_for(i);
        let f = random_a_member(rng, c, k)?;
        let g = random_a_member(rng, c, k)?;
        let mut broken = Vec::new();
        if !f.membership().in_a || !g.membership().in_a {
            broken.push("sampler");
        }
        if !f.add(&g)?.membership().in_a {
            broken.push("closed under +");
        }
        if !f.mul(&g)?.membership().in_a {
            broken.push("closed under *");
        }
        for s in [&f, &g] {
            let m = s.membership();
            if (m.in_val_ring || m.in_k_lambda1) && !m.in_a {
                broken.push("contains the valuation ring and k((Lambda1))");
            }
        }
        Ok(verdict(vec![f.to_string(), g.to_string()], broken))
    });
    cases.extend(run_cases(opts, pairs as u64, lifts, |i, rng| {
        let f = random_integral(rng, c, field_for(i))?;
        let e = if i % 2 == 0 { EmbeddingId::f1(c) } else { EmbeddingId::f2(c) };
        let h = f.lift(e)?;
        let mut broken = Vec::new();
        if !f.membership().in_val_ring {
            broken.push("sampler");
        }
        if !h.membership().in_a || !h.membership().in_val_ring {
            broken.push("lift leaves A");
        }
        Ok(verdict(vec![format!("{e}"), f.to_string(), h.to_string()], broken))
    }));
    let (x, hx) = witness_h_a_not_in_a();
    let flip = x.membership().in_a && !hx.membership().in_a;
    cases.push(record(
        (pairs + lifts) as u64,
        opts.seed,
        Ok(Case::check(
            vec![x.to_string(), hx.to_string()],
            flip,
            format!("x in A: {}, h(x) in A: {}", x.membership().in_a, hx.membership().in_a),
        )),
    ));
    Ok(SuiteReport::new("a-membership", c, opts.seed, cases))
}

pub(super) fn truncated_inverse(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let cases = run_cases(opts, 0, opts.samples_or(200), |i, rng| {
        let k = field_for(i);
        let gamma = random_element(rng, c, &SERIES_SHAPE);
        let lead = HahnSeries::monomial(random_coefficient(rng, k), gamma);
        let mut unit = HahnSeries::one(c, k);
        let mut least: Option<GroupElement> = None;
        for _ in 0..rng.random_range(0..=3) {
            let d = random_positive(rng, c, &SERIES_SHAPE);
            least = Some(least.map_or(d.clone(), |l| l.min(d.clone())));
            unit = unit.add(&HahnSeries::monomial(random_coefficient(rng, k), d))?;
        }
        let f = lead.mul(&unit)?;
        let m = rng.random_range(0..=4);
        let precision = match &least {
            Some(d) => d.scale(m),
            None => GroupElement::zero(c),
        };
        let inputs = vec![f.to_string(), precision.to_string()];
        let g = f.truncated_inverse(&precision)?;
        let err = f.mul(&g)?.sub(&HahnSeries::one(c, k))?;
        let ok = err.is_zero() || err.valuation()? > precision;
        let exact = least.is_none() && err.is_zero();
        Ok(Case::check(
            inputs,
            ok && (least.is_some() || exact),
            if err.is_zero() {
                format!("exact inverse {g}")
            } else {
                format!("v(fg - 1) = {}", err.valuation()?)
            },
        ))
    });
    Ok(SuiteReport::new("truncated-inverse", c, opts.seed, cases))
}
