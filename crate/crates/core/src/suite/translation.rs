use std::collections::BTreeMap;

use rand::Rng;

use super::{run_cases, Case, SuiteOptions};
use crate::error::Result;
use crate::formula::{eval_ring_formula, eval_val_formula, translate_to_ring, SeriesTerm, ValAtom, ValFormula};
use crate::hahn::{CoeffField, HahnSeries};
use crate::oag::Construction;
use crate::report::SuiteReport;
use crate::sample::{random_nonzero_series, Shape};

const VARS: [&str; 3] = ["x", "y", "z"];

const SHAPE: Shape = Shape {
    g2_pairs: 2,
    g1_blocks: 2,
    squares_per_block: 2,
    inner_slots: 2,
    max_entries: 2,
    coeff: 3,
};

fn random_term(rng: &mut impl Rng) -> SeriesTerm {
    let len = rng.random_range(1..=2);
    SeriesTerm((0..len).map(|_| VARS[rng.random_range(0..3)].to_string()).collect())
}

fn random_atom(rng: &mut impl Rng) -> ValAtom {
    let (a, b) = (random_term(rng), random_term(rng));
    match rng.random_range(0..6) {
        0 => ValAtom::Ge(a, b),
        1 => ValAtom::Gt(a, b),
        2 => ValAtom::Lt(a, b),
        3 => ValAtom::Eq(a, b),
        4 => ValAtom::Eq(a.clone(), a),
        _ => ValAtom::SumEq(a, b, random_term(rng)),
    }
}

pub(super) fn translation_soundness(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let cases = run_cases(opts, 0, opts.samples_or(300), |i, rng| {
        let field = if i % 2 == 0 { CoeffField::Rational } else { CoeffField::Prime(5) };
        let env: BTreeMap<String, HahnSeries> = VARS
            .iter()
            .map(|v| {
                let s = if rng.random_bool(0.05) {
                    HahnSeries::zero(c, field)
                } else {
                    random_nonzero_series(rng, c, field, &SHAPE, 3)
                };
                (v.to_string(), s)
            })
            .collect();
        let atom = random_atom(rng);
        let f = ValFormula::Atom(atom.clone());
        let ring = translate_to_ring(&f);
        let group_side = eval_val_formula(&f, &env)?;
        let ring_side = eval_ring_formula(&ring, &env)?;
        let mut inputs = vec![atom.to_string()];
        inputs.extend(env.iter().map(|(k, s)| format!("{k}={s}")));
        Ok(Case::check(
            inputs,
            group_side == ring_side,
            format!("group side {group_side}, ring side {ring_side}: {ring}"),
        ))
    });
    Ok(SuiteReport::new("translation-soundness", c, opts.seed, cases))
}
