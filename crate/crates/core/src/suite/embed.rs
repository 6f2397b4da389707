use rand::Rng;

use super::{run_cases, Case, SuiteOptions};
use crate::embedding::{apply, in_image, perturb_into_image, preimage, EmbeddingId, Map};
use crate::error::Result;
use crate::oag::divisibility::LeadDescriptor;
use crate::oag::position::G1Slot;
use crate::oag::{congruent, fragment, lead_mod, probe_pool, Construction, FragmentConfig, GroupElement, Position};
use crate::report::{Outcome, SuiteReport};
use crate::sample::{random_element, random_image_element, random_positive, Shape};

fn embedding(which: Map, c: Construction) -> EmbeddingId {
    match which {
        Map::F1 => EmbeddingId::f1(c),
        Map::F2 => EmbeddingId::f2(c).allow_experimental(),
    }
}

fn expected_in_image(which: Map, x: &GroupElement) -> bool {
    match which {
        Map::F1 => x.get(&Position::g2_circle(0)).is_none(),
        Map::F2 => !x.support().any(|p| {
            matches!(
                p,
                Position::G1 {
                    block: 0,
                    slot: G1Slot::Square(_)
                }
            )
        }),
    }
}

pub(super) fn embedding_laws(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let n = opts.samples_or(10_000);
    let shape = Shape::default();
    let mut cases = Vec::with_capacity(2 * n);
    for (k, which) in [Map::F1, Map::F2].into_iter().enumerate() {
        let e = embedding(which, c);
        cases.extend(run_cases(opts, (k * n) as u64, n, |_, rng| {
            let a = random_element(rng, c, &shape);
            let b = random_element(rng, c, &shape);
            let x = random_element(rng, c, &shape);
            let inputs = vec![format!("{which:?}"), a.to_string(), b.to_string(), x.to_string()];
            let (fa, fb) = (apply(e, &a)?, apply(e, &b)?);
            let mut broken = Vec::new();
            if apply(e, &a.add(&b)?)? != fa.add(&fb)? {
                broken.push("additivity");
            }
            if a.cmp(&b) != fa.cmp(&fb) {
                broken.push("order");
            }
            if preimage(e, &fa)?.as_ref() != Some(&a) {
                broken.push("injectivity");
            }
            let inside = in_image(e, &x)?;
            if inside != expected_in_image(which, &x) {
                broken.push("image characterization");
            }
            if inside {
                let back = preimage(e, &x)?.expect("in image");
                if apply(e, &back)? != x {
                    broken.push("section");
                }
            }
            Ok(Case::check(
                inputs,
                broken.is_empty(),
                if broken.is_empty() {
                    "laws hold".to_string()
                } else {
                    format!("violated: {}", broken.join(", "))
                },
            ))
        }));
    }
    Ok(SuiteReport::new("embedding-laws", c, opts.seed, cases))
}

const INTERVAL_SHAPE: Shape = Shape {
    g2_pairs: 2,
    g1_blocks: 3,
    squares_per_block: 2,
    inner_slots: 3,
    max_entries: 2,
    coeff: 3,
};

fn strictly_between(
    x: &GroupElement,
    n: u64,
    lo: &LeadDescriptor,
    hi: &LeadDescriptor,
) -> Result<bool> {
    Ok(lead_mod(x, n)?.is_some_and(|d| *lo < d && d < *hi))
}

fn first_between(
    domain: impl IntoIterator<Item = GroupElement>,
    n: u64,
    lo: &LeadDescriptor,
    hi: &LeadDescriptor,
) -> Result<Option<GroupElement>> {
    for x in domain {
        if strictly_between(&x, n, lo, hi)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub(super) fn f2_interval(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let k = opts.bound_or(2);
    let e = embedding(Map::F2, c);
    let cases = run_cases(opts, 0, opts.samples_or(200), |_, rng| {
        for _ in 0..200 {
            let n = if rng.random_bool(0.5) { 2 } else { 3 };
            let a = random_image_element(rng, e, &INTERVAL_SHAPE);
            let b = random_image_element(rng, e, &INTERVAL_SHAPE);
            let (Some(lo), Some(hi)) = (lead_mod(&a, n)?, lead_mod(&b, n)?) else {
                continue;
            };
            if lo >= hi {
                continue;
            }
            let params = [a.clone(), b.clone()];
            let cfg = FragmentConfig::new(k).with_pool(probe_pool(c, &params));
            let Some(full) = first_between(fragment(c, &params, &cfg)?, n, &lo, &hi)? else {
                continue;
            };
            let inputs = vec![format!("n={n}"), a.to_string(), b.to_string()];
            let pulled = [
                preimage(e, &a)?.expect("sampled in image"),
                preimage(e, &b)?.expect("sampled in image"),
            ];
            let sub_cfg = FragmentConfig::new(k).with_pool(probe_pool(c, &pulled));
            let image = fragment(c, &pulled, &sub_cfg)?
                .into_iter()
                .map(|x| apply(e, &x))
                .collect::<Result<Vec<_>>>()?;
            return Ok(match first_between(image, n, &lo, &hi)? {
                Some(x) => Case::new(
                    inputs,
                    Outcome::Pass,
                    format!("full-group solution {full}, image solution {x}"),
                ),
                None if c == Construction::Gamma => Case::new(
                    inputs,
                    Outcome::Unknown,
                    format!("experimental: full-group solution {full}, none in the image fragment"),
                ),
                None => Case::new(
                    inputs,
                    Outcome::Fail,
                    format!("full-group solution {full}, none in the image fragment"),
                ),
            });
        }
        Ok(Case::new(Vec::new(), Outcome::Unknown, "no admissible sample drawn"))
    });
    Ok(SuiteReport::new("f2-interval", c, opts.seed, cases))
}

pub(super) fn perturbation(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.only(Construction::Lambda, "perturbation")?;
    let f1 = EmbeddingId::f1(c);
    let shape = Shape::default();
    let cases = run_cases(opts, 0, opts.samples_or(200), |_, rng| {
        let t = random_image_element(rng, f1, &shape);
        let eps = random_positive(rng, c, &shape);
        let constraints: Vec<(u64, GroupElement)> = (0..rng.random_range(0..=3))
            .map(|_| {
                let n = rng.random_range(2..=5);
                let r = if rng.random_bool(0.3) {
                    t.clone()
                } else {
                    random_element(rng, c, &shape)
                };
                (n, r)
            })
            .collect();
        let mut inputs = vec![t.to_string(), eps.to_string()];
        inputs.extend(constraints.iter().map(|(n, r)| format!("{n}:{r}")));
        let out = perturb_into_image(&t, &eps, &constraints)?;
        let mut broken = Vec::new();
        if !in_image(f1, &out)? {
            broken.push("outside image".to_string());
        }
        if out.sub(&t)?.abs() >= eps {
            broken.push("moved by eps or more".to_string());
        }
        for (n, r) in &constraints {
            if congruent(*n, &out, r)? {
                broken.push(format!("congruent to {r} mod {n}"));
            }
        }
        Ok(Case::check(
            inputs,
            broken.is_empty(),
            if broken.is_empty() {
                format!("t' = {out}")
            } else {
                broken.join(", ")
            },
        ))
    });
    Ok(SuiteReport::new("perturbation", c, opts.seed, cases))
}
