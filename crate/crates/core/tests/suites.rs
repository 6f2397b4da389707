use oagw_core::corpus::{critical_circle_sentence, generate_corpus, CorpusKind};
use oagw_core::embedding::EmbeddingId;
use oagw_core::exec::Executor;
use oagw_core::formula::{closure_audit, Env};
use oagw_core::oag::{Construction, FragmentConfig};
use oagw_core::report::Outcome;
use oagw_core::suite::{run_demo, run_suite, SuiteOptions, CATALOG};
use oagw_core::Error;

const L: Construction = Construction::Lambda;
const G: Construction = Construction::Gamma;

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(
        run_suite("no-such-suite", &SuiteOptions::default()),
        Err(Error::UnknownSuite(_))
    ));
    assert!(run_demo("no-such-demo", &SuiteOptions::default()).is_err());
}

#[test]
fn every_catalog_suite_runs_small() {
    for name in CATALOG {
        let opts = SuiteOptions::default().with_samples(12).with_seed(5);
        let report = run_suite(name, &opts).unwrap();
        assert!(report.passed(), "{}", report.render());
        let c = &report.counts;
        assert_eq!(c.pass + c.fail + c.unknown, report.cases.len());
    }
}

#[test]
fn psi_vs_search_default_seed() {
    let r = run_suite("psi-vs-search", &SuiteOptions::default().with_construction(L).with_samples(300)).unwrap();
    assert_eq!(r.counts.fail, 0);
    assert_eq!(r.counts.pass, 300);
}

#[test]
fn reports_are_deterministic_across_executors() {
    for name in ["hprime-descriptor", "translation-soundness", "f1-ea-closure"] {
        let base = SuiteOptions::default().with_samples(20).with_seed(9);
        let seq = run_suite(name, &base.with_executor(Executor::Sequential)).unwrap();
        let par = run_suite(name, &base.with_executor(Executor::Parallel)).unwrap();
        assert_eq!(
            serde_json::to_string(&seq).unwrap(),
            serde_json::to_string(&par).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn json_omits_wall_time() {
    let r = run_suite("perturbation", &SuiteOptions::default().with_samples(3)).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(!text.contains("wall"));
    assert!(text.contains("\"suite\":\"perturbation\""));
}

#[test]
fn single_construction_suites_refuse_the_other() {
    let opts = SuiteOptions::default().with_construction(G);
    assert!(matches!(run_suite("lambda1-formula", &opts), Err(Error::Precondition(_))));
    assert!(run_suite("lambda-repair", &opts).is_err());
    assert!(run_suite("gamma-counterexample", &SuiteOptions::default().with_construction(L)).is_err());
}

#[test]
fn audit_examples() {
    let cfg = FragmentConfig::new(2);
    let empty = closure_audit(EmbeddingId::f1(L), &[], &cfg, Executor::default()).unwrap();
    assert!(empty.cases.is_empty());

    let corpus: Vec<_> = generate_corpus(CorpusKind::Exists, L, 30, 1)
        .into_iter()
        .map(|f| (f, Env::new()))
        .collect();
    let report = closure_audit(EmbeddingId::f1(L), &corpus, &cfg, Executor::default()).unwrap();
    assert_eq!(report.counts.fail, 0);
    assert!(report.counts.pass > 0);

    let item3 = vec![(critical_circle_sentence(G), Env::new())];
    let report = closure_audit(EmbeddingId::f1(G), &item3, &cfg, Executor::default()).unwrap();
    assert_eq!(report.cases.len(), 1);
    assert_eq!(report.cases[0].outcome, Outcome::Unknown);
    assert!(report.cases[0].detail.starts_with("Suspected"), "{}", report.cases[0].detail);
}

#[test]
fn corpus_is_reproducible() {
    let a = generate_corpus(CorpusKind::Ea, G, 10, 3);
    assert_eq!(a, generate_corpus(CorpusKind::Ea, G, 10, 3));
    assert_ne!(a, generate_corpus(CorpusKind::Ea, G, 10, 4));
}

#[test]
fn demos_pass() {
    for name in ["gamma-counterexample", "lambda-repair", "ha-witness"] {
        let r = run_demo(name, &SuiteOptions::default()).unwrap();
        assert!(r.passed() && r.counts.unknown == 0, "{}", r.render());
    }
}
