//! One line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use oagw_core::oag::Construction;
use oagw_core::report::SuiteReport;
use oagw_core::suite::{run_demo, run_suite, SuiteOptions};

const L: Construction = Construction::Lambda;
const G: Construction = Construction::Gamma;

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            self.notes.push(format!("FAILED {}", what.into()));
        }
    }

    fn suite(&mut self, r: SuiteReport, want_cases: usize, all_pass: bool, budget: Option<Duration>) -> SuiteReport {
        let took = Duration::from_millis(r.wall_time_ms as u64);
        self.notes.push(format!(
            "{}[{}] {}/{} pass, {} fail, {} unknown, {:.1}s",
            r.suite,
            r.construction,
            r.counts.pass,
            r.cases.len(),
            r.counts.fail,
            r.counts.unknown,
            took.as_secs_f64()
        ));
        self.require(r.counts.fail == 0, format!("{}: failures", r.suite));
        self.require(r.cases.len() >= want_cases, format!("{}: too few cases", r.suite));
        if all_pass {
            self.require(r.counts.pass == r.cases.len(), format!("{}: undecided cases", r.suite));
        }
        if let Some(b) = budget {
            self.require(took < b, format!("{}: over {}s", r.suite, b.as_secs()));
        }
        for f in r.failures().take(3) {
            self.notes.push(format!("case {}: {} | {}", f.index, f.inputs.join(" ; "), f.detail));
        }
        r
    }
}

fn opts(c: Construction) -> SuiteOptions {
    SuiteOptions::default().with_construction(c)
}

fn run(name: &str, o: SuiteOptions) -> SuiteReport {
    run_suite(name, &o).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("psi closed form vs search", Box::new(|| {
            let mut c = Check::new();
            for k in [L, G] {
                c.suite(run("psi-vs-search", opts(k).with_samples(2000).with_coeff_bound(3)), 2000, false, Some(Duration::from_secs(60)));
            }
            c
        })),
        ("H' descriptor and locality", Box::new(|| {
            let mut c = Check::new();
            c.suite(run("hprime-descriptor", opts(L).with_samples(500)), 500, false, None);
            c.suite(run("hprime-locality", opts(L).with_samples(500)), 500, true, None);
            c
        })),
        ("Lambda1 definability", Box::new(|| {
            let mut c = Check::new();
            c.suite(run("lambda1-formula", opts(L).with_samples(1000)), 1050, true, None);
            c
        })),
        ("embedding laws", Box::new(|| {
            let mut c = Check::new();
            for k in [L, G] {
                c.suite(run("embedding-laws", opts(k).with_samples(10_000)), 20_000, true, None);
            }
            c
        })),
        ("critical-circle counterexample", Box::new(|| {
            let mut c = Check::new();
            let r = run_demo("gamma-counterexample", &opts(G).with_coeff_bound(4)).expect("demo runs");
            let r = c.suite(r, 10, true, Some(Duration::from_secs(120)));
            c.require(r.cases[1].detail.contains("witness {G2[0].c: 1}"), "stated witness reported");
            c
        })),
        ("inner-slot repair", Box::new(|| {
            let mut c = Check::new();
            c.suite(run_demo("lambda-repair", &opts(L)).expect("demo runs"), 3, true, None);
            c
        })),
        ("f2 interval contract", Box::new(|| {
            let mut c = Check::new();
            c.suite(run("f2-interval", opts(L).with_samples(200)), 200, true, None);
            c
        })),
        ("series ring and valuation", Box::new(|| {
            let mut c = Check::new();
            for k in [L, G] {
                c.suite(run("hahn-ring", opts(k).with_samples(1000)), 1000, true, None);
            }
            c
        })),
        ("A membership", Box::new(|| {
            let mut c = Check::new();
            c.suite(run("a-membership", opts(L).with_samples(1000)), 1501, true, None);
            let w = run_demo("ha-witness", &opts(L)).expect("demo runs");
            c.suite(w, 6, true, None);
            c
        })),
        ("ring translation soundness", Box::new(|| {
            let mut c = Check::new();
            c.suite(run("translation-soundness", opts(L).with_samples(300)), 300, true, None);
            c
        })),
        ("perturbation into the image", Box::new(|| {
            let mut c = Check::new();
            c.suite(run("perturbation", opts(L).with_samples(200)), 200, true, None);
            c
        })),
        ("truncated inverse", Box::new(|| {
            let mut c = Check::new();
            for k in [L, G] {
                c.suite(run("truncated-inverse", opts(k).with_samples(200)), 200, true, None);
            }
            c
        })),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let c = check();
        if !c.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<32} {}  {}",
            i + 1,
            name,
            if c.ok { "PASS" } else { "FAIL" },
            c.notes.join("; ")
        );
    }
    let total = start.elapsed();
    let in_time = total < Duration::from_secs(300);
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s{}",
        criteria.len() - failed,
        criteria.len(),
        total.as_secs_f64(),
        if in_time { "" } else { " (over the 5 minute budget)" }
    );
    if failed == 0 && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
