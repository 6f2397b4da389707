use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oagw_core::corpus::{generate_corpus, CorpusKind};
use oagw_core::exec::Executor;
use oagw_core::formula::{classify, evaluate_with, parse_formula, Env};
use oagw_core::oag::{parse_element, probe_pool, Construction, FragmentConfig, GroupElement};
use oagw_core::report::SuiteReport;
use oagw_core::suite::{run_demo, run_suite, SuiteOptions, CATALOG, DEMOS};

#[derive(Parser)]
#[command(name = "oagw", version, about = "Exact workbench for the square/circle ordered groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Check {
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run a named demo.
    Demo {
        name: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate a formula under bounded witness search.
    Eval {
        #[arg(long, default_value = "lambda")]
        construction: Construction,
        #[arg(long)]
        formula: String,
        /// `name=LITERAL`, repeatable.
        #[arg(long = "bind")]
        binds: Vec<String>,
        #[arg(long, default_value_t = 2)]
        coeff_bound: u32,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
        /// Search only the fragment of the parameters, without probe generators.
        #[arg(long)]
        no_probes: bool,
    },
    /// Generate sentence corpora.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// List suites and demos.
    List,
}

#[derive(Subcommand)]
enum GenCommand {
    Corpus {
        #[arg(long)]
        kind: CorpusKind,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value = "lambda")]
        construction: Construction,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    construction: Option<Construction>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    coeff_bound: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run cases on one thread.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn options(&self, samples: Option<usize>) -> SuiteOptions {
        SuiteOptions {
            construction: self.construction,
            seed: self.seed,
            samples,
            coeff_bound: self.coeff_bound,
            executor: if self.sequential {
                Executor::Sequential
            } else {
                Executor::default()
            },
        }
    }
}

fn finish(report: &SuiteReport, json: Option<&PathBuf>) -> Result<ExitCode, String> {
    print!("{}", report.render());
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
        fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn binding(c: Construction, text: &str) -> Result<(String, GroupElement), String> {
    let (name, lit) = text
        .split_once('=')
        .ok_or_else(|| format!("binding `{text}` is not of the form name=LITERAL"))?;
    let value = parse_element(lit.trim(), c).map_err(|e| format!("binding {name}: {e}"))?;
    Ok((name.trim().to_string(), value))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { suite, run, samples } => {
            let report = run_suite(&suite, &run.options(samples)).map_err(|e| e.to_string())?;
            finish(&report, run.json.as_ref())
        }
        Command::Demo { name, run } => {
            let report = run_demo(&name, &run.options(None)).map_err(|e| e.to_string())?;
            finish(&report, run.json.as_ref())
        }
        Command::Eval {
            construction,
            formula,
            binds,
            coeff_bound,
            cap,
            no_probes,
        } => {
            let f = parse_formula(&formula, construction).map_err(|e| e.to_string())?;
            let env: Env = binds
                .iter()
                .map(|b| binding(construction, b))
                .collect::<Result<_, _>>()?;
            let mut params: Vec<GroupElement> = env.values().cloned().collect();
            params.extend(f.constants());
            let mut cfg = FragmentConfig::new(coeff_bound).with_cap(cap);
            if !no_probes {
                cfg = cfg.with_pool(probe_pool(construction, &params));
            }
            let out = evaluate_with(construction, &f, &env, &cfg, Executor::default()).map_err(|e| e.to_string())?;
            println!("formula: {f}");
            println!("prefix: {}", classify(&f));
            println!("verdict: {}", out.verdict);
            if let Some((v, w)) = &out.witness {
                println!("witness: {v} = {w}");
            }
            println!("domain: {} elements", out.domain_size);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            what:
                GenCommand::Corpus {
                    kind,
                    count,
                    construction,
                    seed,
                },
        } => {
            for f in generate_corpus(kind, construction, count, seed) {
                println!("{f}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            println!("suites: {}", CATALOG.join(", "));
            println!("demos: {}", DEMOS.join(", "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
