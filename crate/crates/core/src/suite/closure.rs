use super::{run_cases, Case, SuiteOptions};
use crate::corpus::{corpus_sentence, CorpusKind};
use crate::embedding::EmbeddingId;
use crate::error::Result;
use crate::exec::Executor;
use crate::formula::audit::audit_one;
use crate::formula::{AuditVerdict, Env};
use crate::oag::{Construction, FragmentConfig};
use crate::report::{Outcome, SuiteReport};

fn closure_suite(name: &str, kind: CorpusKind, opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let cfg = FragmentConfig::new(opts.bound_or(2)).with_seed(opts.seed);
    let sub = EmbeddingId::f1(c);
    let cases = run_cases(opts, 0, opts.samples_or(100), |i, _| {
        let f = corpus_sentence(kind, c, opts.seed, i);
        let (verdict, full, image, witness) = audit_one(sub, &f, &Env::new(), &cfg, Executor::Sequential)?;
        let outcome = match verdict {
            AuditVerdict::Closed => Outcome::Pass,
            AuditVerdict::Violated => Outcome::Fail,
            AuditVerdict::Suspected | AuditVerdict::Inconclusive => Outcome::Unknown,
        };
        let witness = witness.map(|w| format!(", witness {w}")).unwrap_or_default();
        Ok(Case::new(
            vec![f.to_string()],
            outcome,
            format!("{verdict:?}: full {full}, image {image}{witness}"),
        ))
    });
    Ok(SuiteReport::new(name, c, opts.seed, cases))
}

pub(super) fn f1_exists_closure(opts: &SuiteOptions) -> Result<SuiteReport> {
    closure_suite("f1-exists-closure", CorpusKind::Exists, opts)
}

pub(super) fn f1_ea_closure(opts: &SuiteOptions) -> Result<SuiteReport> {
    closure_suite("f1-ea-closure", CorpusKind::Ea, opts)
}
