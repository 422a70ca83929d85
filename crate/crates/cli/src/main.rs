//! `modva`: Gram tables, form-space dimensions, divided-power normal forms
//! and verification suites for modular vacuum vertex algebras.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modva::forms::{form_space_dim, simple_quotient_dims, GramRow, InvariantForm};
use modva::hopf::HAlgebra;
use modva::lie::LieSpec;
use modva::verify::{run_all, run_suite, CarrierSpec, SuiteParams, SuiteReport};
use modva::{Error, PrimeField};

#[derive(Parser)]
#[command(name = "modva", version, about = "Invariant forms on modular vacuum vertex algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix, rank and radical of the invariant form per degree.
    Gram,
    /// Graded dimensions of the simple quotient.
    Dims,
    /// Dimension of the space of invariant bilinear forms.
    Formspace,
    /// Normal form of an element of the divided-power algebra.
    NormalForm {
        /// e.g. "E^(1) D^(1)" or "2 H^(2) - D"
        expr: String,
    },
    /// Run a verification suite, or `all` of them.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Check the contragredient module against the invariant form.
    DualCheck,
}

#[derive(Args)]
struct RunArgs {
    /// affine:sl2, affine:abelian1, affine:<spec.json> or virasoro
    #[arg(long, global = true, default_value = "affine:sl2")]
    carrier: String,
    #[arg(long, global = true, default_value_t = 5)]
    p: u64,
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    level: i64,
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    c: i64,
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: u32,
    /// Exhaustive bound on divided-power exponents in suites.
    #[arg(long, global = true, default_value_t = 4)]
    bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = "MODVA_WORKERS")]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Suite(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Suite(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn carrier_spec(args: &RunArgs, field: &PrimeField) -> Result<CarrierSpec, Failure> {
    if args.carrier == "virasoro" {
        return Ok(CarrierSpec::virasoro(field.elem(args.c)));
    }
    let Some(name) = args.carrier.strip_prefix("affine:") else {
        return Err(Failure::Input(format!("unknown carrier `{}`", args.carrier)));
    };
    let spec = match LieSpec::builtin(name, field) {
        Some(s) => s,
        None if name.ends_with(".json") => {
            let text = std::fs::read_to_string(name)
                .map_err(|e| Failure::Input(format!("cannot read {name}: {e}")))?;
            LieSpec::from_json(&text, field)?
        }
        None => return Err(Failure::Input(format!("unknown Lie algebra `{name}`"))),
    };
    Ok(CarrierSpec::affine(name, spec, field.elem(args.level)))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let args = &cli.run;
    if let Some(w) = args.workers {
        if w == 0 {
            return Err(Failure::Input("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let field = PrimeField::new(args.p)?;
    if let Command::NormalForm { expr } = &cli.command {
        return normal_form(args, &field, expr);
    }
    let spec = carrier_spec(args, &field)?;
    if args.max_degree > 12 {
        return Err(Failure::Input(format!("--max-degree {} exceeds 12", args.max_degree)));
    }
    let mut params = SuiteParams::new(field, spec);
    params.max_degree = args.max_degree;
    params.bound = args.bound;
    params.seed = args.seed;
    match &cli.command {
        Command::Gram => gram(args, &params),
        Command::Dims => dims(args, &params),
        Command::Formspace => formspace(args, &params),
        Command::Verify { suite } => {
            let reports = if suite == "all" {
                run_all(&params)?
            } else {
                vec![run_suite(suite, &params)?]
            };
            suites_output(args.format, &reports)
        }
        Command::DualCheck => suites_output(args.format, &[run_suite("dual-module", &params)?]),
        Command::NormalForm { .. } => unreachable!("handled above"),
    }
}

fn normal_form(args: &RunArgs, field: &PrimeField, expr: &str) -> Result<String, Failure> {
    let h = HAlgebra::new(field);
    let value = h.parse(expr)?;
    Ok(match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({"p": field.p(), "input": expr, "normal_form": value.to_string()})
        ),
        Format::Csv => format!("input,normal_form\n\"{expr}\",\"{value}\"\n"),
        Format::Text => format!("{value}\n"),
    })
}

fn gram(args: &RunArgs, params: &SuiteParams) -> Result<String, Failure> {
    let carrier = params.carrier.build(params.max_degree);
    let rows = InvariantForm::new(&carrier).gram_table(params.max_degree)?;
    Ok(match args.format {
        Format::Json => {
            let v: Vec<serde_json::Value> = rows.iter().map(GramRow::to_json).collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Csv => {
            let mut out = String::from("degree,row,col,value\n");
            for r in &rows {
                for (i, row) in r.matrix.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        let _ = writeln!(out, "{},{i},{j},{}", r.degree, x.value());
                    }
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(out, "degree {}: dim {}, rank {}", r.degree, r.dim(), r.rank);
                for (b, row) in r.basis.iter().zip(&r.matrix) {
                    let cells: Vec<String> = row.iter().map(|x| format!("{:>3}", x.signed())).collect();
                    let _ = writeln!(out, "  {} | {b}", cells.join(" "));
                }
                for v in &r.radical {
                    let cells: Vec<String> = v.iter().map(|x| x.signed().to_string()).collect();
                    let _ = writeln!(out, "  radical: [{}]", cells.join(", "));
                }
            }
            out
        }
    })
}

fn dims(args: &RunArgs, params: &SuiteParams) -> Result<String, Failure> {
    let carrier = params.carrier.build(params.max_degree);
    let form = InvariantForm::new(&carrier);
    let dims = simple_quotient_dims(&form, params.max_degree)?;
    Ok(match args.format {
        Format::Json => {
            let v: Vec<serde_json::Value> = dims
                .iter()
                .map(|&(n, d)| serde_json::json!({"degree": n, "dim": d, "carrier_dim": carrier.dim(n)}))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Csv => {
            let mut out = String::from("degree,dim,carrier_dim\n");
            for &(n, d) in &dims {
                let _ = writeln!(out, "{n},{d},{}", carrier.dim(n));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for &(n, d) in &dims {
                let _ = writeln!(out, "{n} {d}");
            }
            out
        }
    })
}

fn formspace(args: &RunArgs, params: &SuiteParams) -> Result<String, Failure> {
    let carrier = params.carrier.build(params.max_degree);
    let fs = form_space_dim(&carrier)?;
    Ok(match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({"dim": fs.dim, "stabilized": fs.stabilized, "span_ranks": fs.span_ranks})
        ),
        Format::Csv => format!("dim,stabilized\n{},{}\n", fs.dim, fs.stabilized),
        Format::Text => {
            let flag = if fs.stabilized { "true" } else { "false (truncation-limited)" };
            format!("{}\nstabilized {flag}\n", fs.dim)
        }
    })
}

fn suites_output(format: Format, reports: &[SuiteReport]) -> Result<String, Failure> {
    let out = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(reports).expect("serializable")),
        Format::Csv => {
            let mut out = String::from("suite,attempted,passed,failed\n");
            for r in reports {
                let _ = writeln!(out, "{},{},{},{}", r.suite, r.attempted, r.passed, r.attempted - r.passed);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let status = if r.ok() { "ok" } else { "FAILED" };
                let _ = writeln!(out, "{:<16} {status:<6} {}/{}", r.suite, r.passed, r.attempted);
                for w in &r.failures {
                    let _ = writeln!(out, "    {}\n      lhs: {}\n      rhs: {}", w.inputs, w.lhs, w.rhs);
                }
            }
            out
        }
    };
    if reports.iter().all(SuiteReport::ok) {
        Ok(out)
    } else {
        Err(Failure::Suite(out))
    }
}

