use super::{record, Case, SuiteOptions};
use crate::corpus::critical_circle_sentence;
use crate::embedding::{apply, in_image, preimage, EmbeddingId};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::formula::audit::audit_one;
use crate::formula::{evaluate, evaluate_with, Atom, AuditVerdict, Env, Formula, Term, Verdict};
use crate::hahn::witness_h_a_not_in_a;
use crate::oag::value::{SlotPoly, Value};
use crate::oag::{fragment, is_divisible, probe_pool, Construction, FragmentConfig, GroupElement, Position};
use crate::report::SuiteReport;

const SCAN_CAP: usize = 20_000;

fn body_of(f: &Formula) -> Result<(&str, &Formula)> {
    match f {
        Formula::Exists(v, b) => Ok((v, b)),
        _ => Err(Error::Unsupported("expected an existential sentence".into())),
    }
}

fn holds_at(c: Construction, f: &Formula, x: &GroupElement) -> Result<bool> {
    let (v, body) = body_of(f)?;
    let env: Env = [(v.to_string(), x.clone())].into_iter().collect();
    let out = evaluate(c, body, &env, &FragmentConfig::default())?;
    out.verdict
        .as_bool()
        .ok_or_else(|| Error::Unsupported(format!("undecided body at {x}")))
}

fn witnesses(c: Construction, f: &Formula, domain: &[GroupElement], exec: Executor) -> Result<Vec<GroupElement>> {
    exec.map(domain, |x| holds_at(c, f, x).map(|ok| ok.then(|| x.clone())))
        .into_iter()
        .filter_map(|r| r.transpose())
        .collect()
}

fn full_fragment(c: Construction, f: &Formula, k: u32) -> Result<Vec<GroupElement>> {
    let params = f.constants();
    let cfg = FragmentConfig::new(k).with_pool(probe_pool(c, &params)).with_cap(SCAN_CAP);
    fragment(c, &params, &cfg)
}

/// The image of the fragment built from pulled-back parameters.
fn image_fragment(e: EmbeddingId, f: &Formula, k: u32) -> Result<Vec<GroupElement>> {
    let c = e.construction;
    let params = f
        .constants()
        .iter()
        .map(|p| preimage(e, p)?.ok_or_else(|| Error::NotInImage(p.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let cfg = FragmentConfig::new(k).with_pool(probe_pool(c, &params)).with_cap(SCAN_CAP);
    fragment(c, &params, &cfg)?.iter().map(|x| apply(e, x)).collect()
}

fn critical(x: &GroupElement) -> bool {
    x.get(&Position::g2_circle(0)).is_some()
}

pub fn gamma_counterexample(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.only(Construction::Gamma, "gamma-counterexample")?;
    let seed = opts.seed;
    let chi = critical_circle_sentence(c);
    let a = GroupElement::unit(c, Position::g2_circle(0));
    let f1 = EmbeddingId::f1(c);
    let max_k = opts.bound_or(4).max(1);
    let text = chi.to_string();
    let mut cases = Vec::new();

    cases.push(record(0, seed, (|| {
        let params = chi.constants();
        let nondivisible = params.iter().map(|p| is_divisible(p, 3).map(|d| !d)).collect::<Result<Vec<_>>>()?;
        let ok = holds_at(c, &chi, &a)? && nondivisible.iter().all(|b| *b) && !is_divisible(&a, 2)?;
        Ok(Case::check(
            vec![text.clone(), format!("x={a}")],
            ok,
            format!("stated witness satisfies the body: {ok}"),
        ))
    })()));

    cases.push(record(1, seed, (|| {
        let params = chi.constants();
        let cfg = FragmentConfig::new(2).with_pool(probe_pool(c, &params));
        let out = evaluate_with(c, &chi, &Env::new(), &cfg, opts.executor)?;
        let w = out.witness.as_ref().map(|(_, w)| w.clone());
        let ok = out.verdict == Verdict::True && w.as_ref().is_some_and(critical);
        Ok(Case::check(
            vec![text.clone()],
            ok,
            format!(
                "full group: {}{}",
                out.verdict,
                w.map(|w| format!(" with witness {w}")).unwrap_or_default()
            ),
        ))
    })()));

    let mut index = 2;
    let mut total = 0;
    for k in 1..=max_k {
        cases.push(record(index, seed, (|| {
            let found = witnesses(c, &chi, &full_fragment(c, &chi, k)?, opts.executor)?;
            let all_critical = found.iter().all(critical);
            total += found.len();
            Ok(Case::check(
                vec![text.clone(), format!("K={k}")],
                all_critical,
                format!(
                    "full fragment: {} witnesses, {} with a nonzero critical-circle entry",
                    found.len(),
                    found.iter().filter(|x| critical(x)).count()
                ),
            ))
        })()));
        cases.push(record(index + 1, seed, (|| {
            let domain = image_fragment(f1, &chi, k)?;
            let found = witnesses(c, &chi, &domain, opts.executor)?;
            Ok(Case::check(
                vec![text.clone(), format!("K={k}")],
                found.is_empty(),
                format!("image fragment: {} elements scanned, {} witnesses", domain.len(), found.len()),
            ))
        })()));
        index += 2;
    }
    cases.push(record(index, seed, Ok(Case::check(
        vec![text.clone()],
        total > 0,
        format!("{total} full-group witnesses discovered across bounds"),
    ))));

    cases.push(record(index + 1, seed, (|| {
        let cfg = FragmentConfig::new(2).with_seed(seed);
        let (verdict, full, image, _) = audit_one(f1, &chi, &Env::new(), &cfg, opts.executor)?;
        Ok(Case::check(
            vec![text.clone()],
            verdict.is_flagged(),
            format!("closure audit {verdict:?}: full {full}, image {image}"),
        ))
    })()));
    Ok(SuiteReport::new("gamma-counterexample", c, seed, cases))
}

/// `∃x (0 < x ∧ psi(2, c, x) ∧ psi(2, x, b))` with the same `c, b` as the
/// Γ sentence.
pub fn repair_sentence() -> Formula {
    let l = Construction::Lambda;
    let c = Term::constant(GroupElement::unit(l, Position::g2_square(1)));
    let b = Term::constant(GroupElement::unit(l, Position::g2_square(0)));
    let x = Term::var("x");
    Formula::Exists(
        "x".into(),
        Box::new(Formula::and_all([
            Formula::Atom(Atom::Lt(Term::zero(), x.clone())),
            Formula::Atom(Atom::Psi(2, c, x.clone())),
            Formula::Atom(Atom::Psi(2, x, b)),
        ])),
    )
}

pub fn lambda_repair(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.only(Construction::Lambda, "lambda-repair")?;
    let seed = opts.seed;
    let phi = repair_sentence();
    let f1 = EmbeddingId::f1(c);
    let text = phi.to_string();
    let k = opts.bound_or(2);
    let mut cases = Vec::new();

    cases.push(record(0, seed, (|| {
        let cfg = FragmentConfig::new(k).with_seed(seed);
        let (verdict, full, image, w) = audit_one(f1, &phi, &Env::new(), &cfg, opts.executor)?;
        let ok = verdict == AuditVerdict::Closed && image == Verdict::True && full == Verdict::True;
        let inside = match &w {
            Some(w) => in_image(f1, w)? && holds_at(c, &phi, w)?,
            None => false,
        };
        Ok(Case::check(
            vec![text.clone()],
            ok && inside,
            format!(
                "full {full}, image {image}{}",
                w.map(|w| format!(", image witness {w}")).unwrap_or_default()
            ),
        ))
    })()));

    cases.push(record(1, seed, (|| {
        let w = GroupElement::new(c, [(Position::g2_square(1), Value::Poly(SlotPoly::monomial(1, 1)))])?;
        let ok = in_image(f1, &w)? && holds_at(c, &phi, &w)?;
        Ok(Case::check(vec![text.clone(), format!("x={w}")], ok, "inner-slot witness inside the image"))
    })()));

    cases.push(record(2, seed, (|| {
        let found = witnesses(c, &phi, &image_fragment(f1, &phi, k)?, opts.executor)?;
        let forced = found.iter().filter(|x| critical(x)).count();
        Ok(Case::check(
            vec![text.clone(), format!("K={k}")],
            !found.is_empty() && forced == 0,
            format!("image fragment: {} witnesses, {forced} touching the critical circle", found.len()),
        ))
    })()));
    Ok(SuiteReport::new("lambda-repair", c, seed, cases))
}

pub(super) fn ha_witness(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.only(Construction::Lambda, "ha-witness")?;
    let (x, hx) = witness_h_a_not_in_a();
    let (mx, mh) = (x.membership(), hx.membership());
    let inputs = || vec![x.to_string(), hx.to_string()];
    let expected = apply(EmbeddingId::f1(c), &x.valuation()?)?;
    let checks = [
        (mx.in_a, "x lies in A"),
        (!mh.in_a, "h(x) lies outside A"),
        (!mx.in_val_ring, "x lies outside the valuation ring"),
        (mx.in_k_lambda1, "x lies in k((Lambda1))"),
        (hx.valuation()? == expected, "v(h(x)) = f1(v(x))"),
        (expected.g2_part().signum() < 0, "h(x) has a negative G2 part"),
    ];
    let cases = checks
        .into_iter()
        .enumerate()
        .map(|(i, (ok, what))| record(i as u64, opts.seed, Ok(Case::check(inputs(), ok, what))))
        .collect();
    Ok(SuiteReport::new("ha-witness", c, opts.seed, cases))
}
