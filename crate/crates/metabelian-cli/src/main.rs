//! Command-line front end: reads a presentation file (or a preset spec),
//! runs one computation and prints JSON or CSV on standard output.
//!
//! Exit codes: 0 on success, 2 on input errors, 3 when a step budget runs
//! out.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use metabelian::constants::{geometry_constants, k_constant, tameness_check};
use metabelian::groebner::GroebnerOptions;
use metabelian::presentation::{format_word, parse_word};
use metabelian::presets::{self, norm_growth, PresetSpec};
use metabelian::text::{format_element, parse_element, parse_ring};
use metabelian::word_problem::{
    brute_force_min_certificate, dehn_profile, module_dehn_upper, OracleBudget, Sampler,
};
use metabelian::{Error, Presentation, Solver};

#[derive(Parser)]
#[command(name = "metabelian", version, about = "Word problem and area certificates for metabelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Presentation file, or a preset spec such as `bs:2`.
    #[arg(short = 'p', long = "presentation", global = true)]
    presentation: Option<String>,
    /// Group word.
    #[arg(short = 'w', long = "word", global = true, allow_hyphen_values = true)]
    word: Option<String>,
    /// Module element over the presentation's names.
    #[arg(short = 'e', long = "element", global = true, allow_hyphen_values = true)]
    element: Option<String>,
    #[arg(short = 'n', global = true)]
    n: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Oracle limits `max_degree,max_coeff,max_size`.
    #[arg(long, global = true, default_value = "2,3,4")]
    budget: String,
    /// Reduction step budget for Gröbner computations.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    steps: u64,
    /// `K₁` for the constant `K`.
    #[arg(long, global = true, default_value_t = 1)]
    k1: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Gröbner basis of the relator submodule.
    Groebner,
    /// Normal form of `-e` modulo the relator submodule.
    Nf,
    /// Membership of `-e` in the relator submodule, with its certificate.
    Member,
    /// Decide whether `-w` is the identity.
    Solve,
    /// Area certificate of an identity word.
    Area,
    /// Relative area certificate of an identity word.
    RelArea,
    /// Certificate sizes of submodule elements of norm at most `-n`.
    ModuleDehn,
    /// Growth table of witnessed costs up to word length `-n`.
    Profile,
    /// Geometric constants of the tameness datum.
    Constants,
    /// Norms of the powers of a one-variable polynomial.
    NormGrowth {
        #[arg(short = 'f', allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Print the presentation file of a preset.
    Preset { spec: String },
    /// Smallest certificate of `-e` over `--gens` by exhaustive search.
    Oracle {
        /// Generators separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        /// Allow negative exponents in multipliers.
        #[arg(long)]
        laurent: bool,
    },
}

enum Output {
    Json(Value),
    Csv(Vec<String>, Vec<Vec<String>>),
}

fn input(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn load(cli: &Cli) -> Result<Presentation, Error> {
    let arg = cli
        .presentation
        .as_deref()
        .ok_or_else(|| input("missing -p/--presentation"))?;
    if Path::new(arg).exists() {
        let text = fs::read_to_string(arg).map_err(|e| input(format!("{arg}: {e}")))?;
        Presentation::parse(&text)
    } else {
        presets::build(&arg.parse::<PresetSpec>()?)
    }
}

fn solver(cli: &Cli, p: &Presentation) -> Result<Solver, Error> {
    let options = GroebnerOptions {
        budget: cli.steps,
        certificates: false,
    };
    Solver::new(p, cli.k1, &options)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Error> {
    v.as_deref().ok_or_else(|| input(format!("missing {flag}")))
}

fn oracle_budget(text: &str, laurent: bool) -> Result<OracleBudget, Error> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| input(format!("--budget expects D,C,S, got `{text}`")))?;
    match parts[..] {
        [max_degree, max_coeff, max_size] => Ok(OracleBudget {
            max_degree,
            max_coeff,
            max_size,
            laurent,
        }),
        _ => Err(input(format!("--budget expects D,C,S, got `{text}`"))),
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let out = match &cli.command {
        Command::Preset { spec } => {
            let p = presets::build(&spec.parse()?)?;
            let v: Value = serde_json::from_str(&p.to_json()).expect("valid JSON");
            Output::Json(v)
        }
        Command::NormGrowth { polynomial } => {
            let f = parse_ring(polynomial, &["t".to_string()])?;
            let n = cli.n.unwrap_or(10) as usize;
            let g = norm_growth(&f, n)?;
            if cli.format == Some(Format::Json) {
                Output::Json(json!({
                    "norms": g.norms.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "alpha": g.alpha.to_string(),
                }))
            } else {
                let rows = g
                    .norms
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
                    .collect();
                Output::Csv(vec!["n".into(), "norm".into()], rows)
            }
        }
        Command::Constants => {
            let p = load(cli)?;
            let lambda = p
                .tameness
                .as_ref()
                .ok_or_else(|| input("presentation has no tameness datum"))?;
            let report = geometry_constants(lambda, p.k())?;
            let verdict = tameness_check(lambda, p.k())?;
            let mut v = report.to_json();
            v["tame"] = json!(verdict.tame);
            v["K"] = json!(k_constant(Some(lambda), p.k(), cli.k1).to_string());
            Output::Json(v)
        }
        Command::Groebner => {
            let p = load(cli)?;
            let s = solver(cli, &p)?;
            let names = p.names();
            Output::Json(json!({
                "relator_module": s.relators.iter().map(|r| format_element(r, &names)).collect::<Vec<_>>(),
                "basis": s.basis.to_json(&names),
            }))
        }
        Command::Nf | Command::Member => {
            let p = load(cli)?;
            let s = solver(cli, &p)?;
            let names = p.names();
            let g = parse_element(required(&cli.element, "-e/--element")?, &names)?;
            if matches!(cli.command, Command::Nf) {
                let nf = s.basis.normal_form(&g)?;
                Output::Json(json!({ "normal_form": format_element(&nf, &names) }))
            } else {
                let c = s.basis.divide(&g)?;
                let en = s.basis.ring.embedded_names(&names);
                Output::Json(json!({ "member": c.is_member(), "certificate": c.to_json(&en) }))
            }
        }
        Command::Solve | Command::Area | Command::RelArea => {
            let p = load(cli)?;
            let s = solver(cli, &p)?;
            let w = parse_word(required(&cli.word, "-w/--word")?, &p)?;
            let mut v = match cli.command {
                Command::Solve => s.is_identity(&w)?.1.to_json(&s),
                Command::Area => s.area_certificate(&w)?.to_json(&s),
                _ => s.relative_area_certificate(&w)?.to_json(),
            };
            v["word"] = json!(format_word(&w, &p));
            Output::Json(v)
        }
        Command::ModuleDehn => {
            let p = load(cli)?;
            let s = solver(cli, &p)?;
            let n = cli.n.unwrap_or(4);
            let sampler = match cli.samples {
                Some(samples) => Sampler::Random { samples, seed: cli.seed },
                None => Sampler::Exhaustive,
            };
            let rows = module_dehn_upper(&s, n, sampler)?;
            let body = rows
                .iter()
                .map(|r| vec![r.norm.to_string(), r.count.to_string(), r.max_size.to_string()])
                .collect();
            Output::Csv(vec!["n".into(), "count".into(), "max_cert_size".into()], body)
        }
        Command::Profile => {
            let p = load(cli)?;
            let s = solver(cli, &p)?;
            let rows = dehn_profile(&s, cli.n.unwrap_or(8), cli.samples.unwrap_or(16), cli.seed)?;
            if cli.format == Some(Format::Json) {
                Output::Json(json!({
                    "seed": cli.seed,
                    "rows": rows.iter().map(|r| json!({
                        "n": r.n,
                        "max_witnessed": r.max_witnessed.to_string(),
                        "max_cert_size": r.max_cert_size.to_string(),
                        "bound": r.bound.to_string(),
                        "words": r.words,
                    })).collect::<Vec<_>>(),
                }))
            } else {
                let body = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            r.max_witnessed.to_string(),
                            r.max_cert_size.to_string(),
                            r.bound.to_string(),
                        ]
                    })
                    .collect();
                let header = ["n", "max_witnessed", "max_cert_size", "bound"];
                Output::Csv(header.iter().map(|s| s.to_string()).collect(), body)
            }
        }
        Command::Oracle { gens, laurent } => {
            let p = load(cli)?;
            let names = p.names();
            let g = parse_element(required(&cli.element, "-e/--element")?, &names)?;
            let fs = gens
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_element(s, &names))
                .collect::<Result<Vec<_>, _>>()?;
            let budget = oracle_budget(&cli.budget, *laurent)?;
            let size = brute_force_min_certificate(&g, &fs, budget);
            Output::Json(json!({
                "conclusive": size.is_some(),
                "min_size": size,
            }))
        }
    };
    Ok(out)
}

fn emit(out: Output, format: Option<Format>) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match (out, format) {
        (Output::Json(v), _) => {
            serde_json::to_writer_pretty(&mut lock, &v)?;
            writeln!(lock)
        }
        (Output::Csv(header, rows), Some(Format::Json)) => {
            let v: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.into_iter().map(Value::String)).collect()))
                .collect();
            serde_json::to_writer_pretty(&mut lock, &v)?;
            writeln!(lock)
        }
        (Output::Csv(header, rows), _) => {
            let mut w = csv::Writer::from_writer(lock);
            w.write_record(&header)?;
            for r in rows {
                w.write_record(&r)?;
            }
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(out, cli.format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
