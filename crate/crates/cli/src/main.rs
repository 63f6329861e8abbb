//! `ekleene`: energy reachability and Büchi queries, star and omega of
//! energy functions, and the law suites.
//!
//! Exit codes: 0 for yes/pass, 1 for no/fail, 2 for errors.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use energy_kleene::automaton::{QueryResult, QueryValue, DEFAULT_BUDGET};
use energy_kleene::laws::suite::{self, SuiteConfig, WORD_LAWS};
use energy_kleene::laws::{LawReport, Verdict};
use energy_kleene::wordmodel::LanguageAlgebra;
use energy_kleene::{EnergyAlgebra, EnergyAutomaton, EnergyFn, EnergyFunction, ExtValue, Rational, Threshold};

#[derive(Parser)]
#[command(name = "ekleene", version, about = "Energy automata and Kleene omega-algebra laws")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Can an accepting state be reached with the given initial energy?
    Reach(Query),
    /// Is there a run visiting accepting states infinitely often?
    Buchi(Query),
    /// Star of an energy function.
    Star { file: PathBuf },
    /// Omega power of an energy function, as a threshold predicate.
    Omega { file: PathBuf },
    /// Evaluate an energy function.
    Eval {
        file: PathBuf,
        #[arg(long, value_parser = parse_energy, allow_hyphen_values = true)]
        energy: ExtValue,
    },
    /// Run the law suite on one instance; prints one JSON report per law.
    Laws {
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SuiteConfig::default().cases)]
        cases: usize,
        #[arg(long, value_enum, default_value_t = Instance::Energy)]
        instance: Instance,
        /// Bound on prefix and period length for omega-language equality.
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// Check one identity on random regular languages.
    Wordcheck {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(clap::Args)]
struct Query {
    /// Automaton JSON file, or `-` for standard input.
    file: PathBuf,
    /// Initial energy: `bot`, `top` or a nonnegative rational such as `3/2`.
    #[arg(long, value_parser = parse_energy, allow_hyphen_values = true)]
    energy: ExtValue,
    /// Cross-check against the search oracle and fail on disagreement.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Instance {
    Energy,
    Word,
}

fn parse_energy(s: &str) -> Result<ExtValue, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("{} is not a valid {what}", path.display()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn code(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn query(json_out: bool, name: &str, q: &Query) -> Result<ExitCode> {
    let a: EnergyAutomaton = load(&q.file, "automaton")?;
    let (result, oracle) = if name == "reach" {
        let r = a.reachable(&q.energy);
        (r, q.verify.then(|| a.oracle_reach(&q.energy, DEFAULT_BUDGET)).transpose()?)
    } else {
        let r = a.buchi(&q.energy);
        (r, q.verify.then(|| a.oracle_buchi(&q.energy, DEFAULT_BUDGET)).transpose()?)
    };
    if let Some(o) = &oracle {
        if o.answer != result.answer {
            bail!("{name}: the algebraic answer {} disagrees with the search oracle", yes_no(result.answer));
        }
        if let Some(w) = &o.witness {
            if !a.replay(w, &q.energy) {
                bail!("{name}: the oracle witness does not replay");
            }
        }
    }
    if json_out {
        let mut v = json!({ "command": name, "energy": q.energy, "result": result });
        if let Some(o) = &oracle {
            v["oracle"] = serde_json::to_value(o)?;
        }
        print_json(&v);
    } else {
        print_query(name, &result, oracle.as_ref());
    }
    Ok(code(result.answer))
}

fn print_query(name: &str, r: &QueryResult<Rational>, oracle: Option<&QueryResult<Rational>>) {
    println!("{name}: {}", yes_no(r.answer));
    match &r.value {
        QueryValue::Energy(e) => println!("value: {e}"),
        QueryValue::Predicate(p) => println!("value: {p}"),
    }
    if let Some(o) = oracle {
        match &o.witness {
            Some(w) => println!("oracle: agrees, witness {}", serde_json::to_string(w).expect("witnesses serialize")),
            None => println!("oracle: agrees"),
        }
    }
}

fn laws(json_out: bool, instance: Instance, config: SuiteConfig, letters: &str, bound: usize, mutant: bool) -> Result<ExitCode> {
    let reports = match instance {
        Instance::Energy => {
            let alg = if mutant {
                EnergyAlgebra::<Rational>::with_star(EnergyFn::star_strict_boundary)
            } else {
                EnergyAlgebra::new()
            };
            suite::run_energy(&alg, config)
        }
        Instance::Word => suite::run_word(&LanguageAlgebra::new(letters, bound)?, config),
    };
    for r in &reports {
        println!("{}", r.to_json_line());
    }
    if !json_out {
        for r in &reports {
            eprintln!("{:<14} {:?} ({} cases, {} failures, {} unknown)", r.law, r.verdict, r.cases, r.failures.len(), r.unknown.len());
        }
    }
    Ok(code(reports.iter().all(LawReport::passed)))
}

fn wordcheck(json_out: bool, identity: &str, letters: &str, bound: usize, config: SuiteConfig) -> Result<ExitCode> {
    let alg = LanguageAlgebra::new(letters, bound)?;
    let Some(report) = suite::run_word_law(&alg, identity, config) else {
        bail!("UnknownIdentity: `{identity}` (known: {})", WORD_LAWS.join(", "));
    };
    if json_out {
        println!("{}", report.to_json_line());
    } else {
        let bounded = identity.starts_with("omega") || identity.starts_with("group");
        let verdict = match report.verdict {
            Verdict::Pass if bounded => format!("Equal-up-to-{bound}"),
            Verdict::Pass => "Pass exact".to_string(),
            Verdict::Fail => "Fail".to_string(),
            Verdict::Unknown => "Unknown".to_string(),
        };
        println!("{identity} over {letters}: {verdict} ({} cases)", report.cases);
        if let Some(f) = report.failures.first() {
            println!("counterexample: inputs {:?}; {} vs {}", f.inputs, f.lhs, f.rhs);
        }
    }
    Ok(code(report.passed()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json_out = cli.json;
    match cli.command {
        Command::Reach(q) => query(json_out, "reach", &q),
        Command::Buchi(q) => query(json_out, "buchi", &q),
        Command::Star { file } => {
            let f: EnergyFunction = load(&file, "energy function")?;
            let s = f.star();
            if json_out {
                print_json(&serde_json::to_value(&s)?);
            } else {
                println!("star: {s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Omega { file } => {
            let f: EnergyFunction = load(&file, "energy function")?;
            let w = Threshold::omega(&f);
            if json_out {
                print_json(&serde_json::to_value(&w)?);
            } else {
                println!("omega: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { file, energy } => {
            let f: EnergyFunction = load(&file, "energy function")?;
            let v = f.eval(&energy);
            if json_out {
                print_json(&json!({ "energy": energy, "value": v }));
            } else {
                println!("{v}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Laws { seed, cases, instance, bound, alphabet, inject_mutant } => {
            laws(json_out, instance, SuiteConfig { seed, cases }, &alphabet, bound, inject_mutant)
        }
        Command::Wordcheck { identity, alphabet, bound, seed, cases } => {
            wordcheck(json_out, &identity, &alphabet, bound, SuiteConfig { seed, cases })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
