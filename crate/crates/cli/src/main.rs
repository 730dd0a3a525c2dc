use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use trace_codes::closed_form::{predicted_length, predicted_wd_cd, predicted_wd_cdb};
use trace_codes::code::{build_defining_set, measured_dimension};
use trace_codes::error::ENUMERATION_CAP;
use trace_codes::verify::{self, Check};
use trace_codes::{
    brute_force_cwe, predicted_cwe_cd, predicted_cwe_cdb, CodeSpec, CodeVariant,
    CompleteWeightEnumerator, Error, FieldContext,
};

mod report;

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "trace-codes",
    version,
    about = "Complete weight enumerators of trace codes over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the enumerator of one code by brute force, closed form, or both.
    Compute(ComputeArgs),
    /// Sweep a parameter grid and compare brute force against the closed forms.
    Verify(VerifyArgs),
    /// Print the closed-form weight table of one code.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Code {
    Cd,
    Cdb,
}

impl From<Code> for CodeVariant {
    fn from(c: Code) -> Self {
        match c {
            Code::Cd => CodeVariant::Cd,
            Code::Cdb => CodeVariant::Cdb,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Formula,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Latex,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cwe,
    Lemmas,
    All,
}

#[derive(clap::Args)]
struct ComputeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, value_enum, default_value = "cd")]
    code: Code,
    #[arg(long, value_enum, default_value = "both")]
    method: Method,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_value = "3,5,7,11")]
    p_set: Vec<u64>,
    #[arg(long, default_value_t = 6)]
    m_max: usize,
    /// Grid points with p^m above this are reported as SKIP.
    #[arg(long, default_value_t = 200_000)]
    cap: u64,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(clap::Args)]
struct TablesArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "cd")]
    code: Code,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormat,
}

enum Failure {
    Lib(Error),
    /// summary line, then detail lines
    Mismatch(String, Vec<String>),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn report(&self) -> ExitCode {
        let (prefix, code, msg) = match self {
            Failure::Lib(Error::Param(msg)) => ("E_PARAM", 2, msg.clone()),
            Failure::Lib(e @ Error::Capacity { .. }) => ("E_CAPACITY", 3, e.to_string()),
            Failure::Lib(e @ Error::Invariant(_)) => ("E_INTERNAL", 1, e.to_string()),
            Failure::Mismatch(msg, _) => ("E_MISMATCH", 1, msg.clone()),
            Failure::Io(msg) => ("E_IO", 1, msg.clone()),
        };
        eprintln!("{prefix}: {msg}");
        if let Failure::Mismatch(_, details) = self {
            for line in details {
                eprintln!("  {line}");
            }
        }
        ExitCode::from(code)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn predicted(
    variant: CodeVariant,
    p: u64,
    m: usize,
) -> trace_codes::Result<CompleteWeightEnumerator> {
    match variant {
        CodeVariant::Cd => predicted_cwe_cd(p, m),
        CodeVariant::Cdb => predicted_cwe_cdb(p, m),
    }
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let variant = CodeVariant::from(args.code);
    let spec = CodeSpec::new(args.p, args.m, args.d, variant)?;
    let ctx = spec.field()?;

    let brute = match args.method {
        Method::Formula => None,
        _ => Some(brute_force_cwe(&ctx, &spec)?),
    };
    let formula = match args.method {
        Method::Brute => None,
        _ => Some(predicted(variant, args.p, args.m)?),
    };
    let matched = match (&brute, &formula) {
        (Some(b), Some(f)) => Some(b == f),
        _ => None,
    };
    let shown = brute.as_ref().or(formula.as_ref()).expect("one method ran");

    let (length, dimension) = if ctx.order() <= ENUMERATION_CAP {
        let set = build_defining_set(&ctx, &spec)?;
        (set.len() as u64, measured_dimension(&ctx, &set, variant))
    } else {
        // formula only, beyond enumeration range: the stated values
        let stated = args.m + usize::from(variant == CodeVariant::Cdb);
        (predicted_length(args.p, args.m) as u64, stated)
    };

    let report = RunReport {
        p: args.p,
        m: args.m,
        d: args.d,
        code: variant.name().to_string(),
        length,
        dimension,
        method: match args.method {
            Method::Brute => "brute",
            Method::Formula => "formula",
            Method::Both => "both",
        }
        .to_string(),
        cwe: report::terms(shown),
        weight_distribution: report::rows(&shown.weight_distribution()),
        matched,
        meta: report::Meta {
            elapsed_ms: start.elapsed().as_millis() as u64,
            modulus: ctx.modulus().to_vec(),
        },
    };
    let text = match args.format {
        ReportFormat::Text => report::render_text(&report),
        ReportFormat::Json => report::render_json(&report),
        ReportFormat::Latex => report::render_latex(&report),
    };
    emit(&text, args.out.as_ref())?;

    if let (Some(b), Some(f), Some(false)) = (&brute, &formula, matched) {
        let details = b
            .diff(f)
            .iter()
            .map(|t| {
                format!(
                    "{}: brute force {}, formula {}",
                    t.composition, t.left, t.right
                )
            })
            .collect();
        return Err(Failure::Mismatch(
            format!(
                "brute force and closed form disagree for {} at p={}, m={}, d={}",
                variant.name(),
                args.p,
                args.m,
                args.d
            ),
            details,
        ));
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), Failure> {
    for &p in &args.p_set {
        FieldContext::new(p, 1)?;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(Error::Param("--jobs must be at least 1".into()).into());
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Io(format!("cannot start worker pool: {e}")))?;

    let checks: Vec<Check> = pool.install(|| {
        let mut checks = Vec::new();
        if args.suite != Suite::Lemmas {
            checks.extend(verify::cwe_suite(&args.p_set, args.m_max, args.cap));
        }
        if args.suite != Suite::Cwe {
            checks.extend(verify::lemma_suite(
                &args.p_set,
                args.m_max,
                args.cap,
                verify::DEFAULT_SEED,
            ));
        }
        checks
    });
    for c in &checks {
        println!("{c}");
    }
    let (pass, fail, skip) = verify::tally(&checks);
    println!("{pass} passed, {fail} failed, {skip} skipped");
    if fail > 0 {
        return Err(Failure::Mismatch(
            format!("{fail} checks failed"),
            Vec::new(),
        ));
    }
    Ok(())
}

fn tables(args: &TablesArgs) -> Result<(), Failure> {
    let variant = CodeVariant::from(args.code);
    CodeSpec::new(args.p, args.m, args.d, variant)?;
    let wd = match variant {
        CodeVariant::Cd => predicted_wd_cd(args.p, args.m)?,
        CodeVariant::Cdb => predicted_wd_cdb(args.p, args.m)?,
    };
    let rows = report::rows(&wd);
    let text = match args.format {
        TableFormat::Text => report::render_table_text(&rows),
        TableFormat::Latex => report::render_table_latex(&rows),
        TableFormat::Csv => report::render_table_csv(&rows),
    };
    emit(&text, None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments");
            eprintln!("E_PARAM: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => run_verify(args),
        Command::Tables(args) => tables(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
