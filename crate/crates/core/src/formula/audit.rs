//! Closure audit: compare a sentence's truth in the full group with its
//! truth in the image of an embedding.

use serde::{Deserialize, Serialize};

use super::ast::Formula;
use super::eval::{evaluate_with, Env, Verdict};
use crate::embedding::{apply, preimage, EmbeddingId};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::oag::{probe_pool, Construction, FragmentConfig, GroupElement};
use crate::report::{CaseRecord, Outcome, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditVerdict {
    /// Both sides agree.
    Closed,
    /// Conclusive disagreement.
    Violated,
    /// True above, no witness found below.
    Suspected,
    /// Neither side conclusive enough to compare.
    Inconclusive,
}

impl AuditVerdict {
    pub fn is_flagged(self) -> bool {
        matches!(self, AuditVerdict::Violated | AuditVerdict::Suspected)
    }

    fn of(sup: &Verdict, sub: &Verdict) -> Self {
        match (sup.as_bool(), sub.as_bool()) {
            (Some(a), Some(b)) if a == b => AuditVerdict::Closed,
            (Some(_), Some(_)) => AuditVerdict::Violated,
            (Some(true), None) => AuditVerdict::Suspected,
            _ => AuditVerdict::Inconclusive,
        }
    }
}

fn pull(e: EmbeddingId, a: &GroupElement) -> Result<GroupElement> {
    preimage(e, a)?.ok_or_else(|| Error::NotInImage(a.to_string()))
}

fn params(f: &Formula, env: &Env) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = env.values().cloned().collect();
    for c in f.constants() {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn pooled(
    c: Construction,
    cfg: &FragmentConfig,
    f: &Formula,
    env: &Env,
    extra: Vec<GroupElement>,
) -> FragmentConfig {
    let mut pool = extra;
    for p in probe_pool(c, &params(f, env)) {
        if !pool.contains(&p) {
            pool.push(p);
        }
    }
    cfg.clone().with_pool(pool)
}

/// Per-sentence audit of the substructure `sub(G) ⊆ G`. Environments and
/// constants are given in the full group and must lie in the image.
pub fn audit_one(
    sub: EmbeddingId,
    f: &Formula,
    env: &Env,
    cfg: &FragmentConfig,
    exec: Executor,
) -> Result<(AuditVerdict, Verdict, Verdict, Option<GroupElement>)> {
    let c = sub.construction;
    let sup_cfg = pooled(c, cfg, f, env, cfg.generator_pool.clone());
    let sup = evaluate_with(c, f, env, &sup_cfg, exec)?;
    let f_sub = f.map_constants(&|g| pull(sub, g))?;
    let env_sub: Env = env
        .iter()
        .map(|(k, v)| Ok((k.clone(), pull(sub, v)?)))
        .collect::<Result<_>>()?;
    let sub_pool: Vec<GroupElement> = sup_cfg
        .generator_pool
        .iter()
        .filter_map(|g| preimage(sub, g).ok().flatten())
        .collect();
    let sub_cfg = pooled(c, cfg, &f_sub, &env_sub, sub_pool);
    let below = evaluate_with(c, &f_sub, &env_sub, &sub_cfg, exec)?;
    let witness = match &below.witness {
        Some((_, w)) => Some(apply(sub, w)?),
        None => sup.witness.as_ref().map(|(_, w)| w.clone()),
    };
    Ok((AuditVerdict::of(&sup.verdict, &below.verdict), sup.verdict, below.verdict, witness))
}

pub fn closure_audit(
    sub: EmbeddingId,
    corpus: &[(Formula, Env)],
    cfg: &FragmentConfig,
    exec: Executor,
) -> Result<SuiteReport> {
    let mut cases = Vec::with_capacity(corpus.len());
    for (i, (f, env)) in corpus.iter().enumerate() {
        let (v, sup, below, witness) = audit_one(sub, f, env, cfg, exec)?;
        let mut inputs = vec![f.to_string()];
        inputs.extend(env.iter().map(|(k, g)| format!("{k}={g}")));
        let outcome = match v {
            AuditVerdict::Closed => Outcome::Pass,
            AuditVerdict::Violated => Outcome::Fail,
            AuditVerdict::Suspected | AuditVerdict::Inconclusive => Outcome::Unknown,
        };
        let detail = format!(
            "{v:?}: full {sup}, image {below}{}",
            witness.map(|w| format!(", witness {w}")).unwrap_or_default()
        );
        cases.push(CaseRecord::new(i as u64, cfg.seed, inputs, outcome, detail));
    }
    Ok(SuiteReport::new("closure-audit", sub.construction, cfg.seed, cases))
}
