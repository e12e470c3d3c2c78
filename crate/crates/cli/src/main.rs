//! frobpair: levels of pairs of polynomials over F_p, ideals of p^e-th
//! roots, and Cartier-Manin classification of hyperelliptic curves.
//!
//! Exit codes: 0 success, 2 input error (syntax, non-prime modulus, invalid
//! model), 3 resource limit (term cap from FROBPAIR_MAX_TERMS, exponent
//! overflow), 4 regression-table failure.

mod regress;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frobpair::{
    cartier_manin, classify, ie_roots, level_pair_with_limit, parse_poly, pe_decompose,
    stratification_kernel, stratified_test, HyperellipticModel, LevelError, LevelOutcome,
    LevelQuery, MultiPoly, PolyError, PrimeField, VarContext,
};

use report::{
    certificate_json, outcome_json, outcome_text, print_certificate_text, print_curve_text,
    root_entries_json, CurveQueryEcho, CurveReport, LevelQueryEcho, LevelReport, RootsQueryEcho,
    RootsReport, StratifiedJson,
};

const DEFAULT_TERM_CAP: usize = 10_000_000;

#[derive(Parser)]
#[command(
    name = "frobpair",
    version,
    about = "Levels of pairs of polynomials over F_p, p^e-th root ideals, \
             and Cartier-Manin curve invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the level of the pair g/f, with an operator certificate.
    Level(LevelArgs),
    /// Print the p^e-th root decomposition and root-ideal generators.
    Roots(RootsArgs),
    /// Classify the hyperelliptic curve y^2 = h(x) via its Cartier-Manin matrix.
    Curve(CurveArgs),
    /// Run the built-in regression table of frozen results.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct LevelArgs {
    /// Prime modulus of the coefficient field.
    #[arg(long)]
    p: u64,
    /// Comma-separated variable names, e.g. x,y,z.
    #[arg(long)]
    vars: String,
    /// Numerator polynomial g.
    #[arg(long)]
    num: String,
    /// Denominator polynomial f (must be nonzero).
    #[arg(long)]
    den: String,
    /// Largest exponent e to try before reporting the level undetermined.
    #[arg(long = "max-e", default_value_t = frobpair::DEFAULT_E_MAX)]
    max_e: u32,
    /// Print and verify the operator certificate for finite levels.
    #[arg(long)]
    certificate: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RootsArgs {
    /// Prime modulus of the coefficient field.
    #[arg(long)]
    p: u64,
    /// Root exponent e (the decomposition is over p^e-th powers).
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Comma-separated variable names.
    #[arg(long)]
    vars: String,
    /// The polynomial to decompose.
    #[arg(long)]
    poly: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurveArgs {
    /// Odd prime modulus.
    #[arg(long)]
    p: u64,
    /// Squarefree right-hand side h(x) of y^2 = h(x), univariate in x.
    #[arg(long)]
    h: String,
    /// Comma-separated row vector to test against the matrix kernel.
    #[arg(long)]
    stratified: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Only run cases whose name contains this substring.
    #[arg(long)]
    filter: Option<String>,
    /// Also run cases flagged as long-running.
    #[arg(long)]
    include_long: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

/// Failures that terminate the process, keyed to exit codes.
pub enum CliError {
    /// Bad user input: exit 2.
    Input(String),
    /// Resource limits (term cap, exponent overflow): exit 3.
    Resource(String),
    /// Regression cases failed: exit 4.
    Regression { failed: usize },
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::Resource(m) => m.clone(),
            CliError::Regression { failed } => {
                format!("{failed} regression case(s) failed")
            }
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Regression { .. } => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Level(args) => run_level(args),
        Command::Roots(args) => run_roots(args),
        Command::Curve(args) => run_curve(args),
        Command::Examples(args) => regress::run(
            args.filter.as_deref(),
            args.include_long,
            args.json,
            term_cap()?,
        ),
    }
}

// ---------------------------------------------------------------------------
// Shared input handling
// ---------------------------------------------------------------------------

fn build_ring(p: u64, vars: &str) -> Result<(PrimeField, VarContext), CliError> {
    let field = PrimeField::new(p).map_err(|e| CliError::Input(e.to_string()))?;
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    let ctx = VarContext::new(names).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((field, ctx))
}

fn parse_input(
    label: &str,
    text: &str,
    field: PrimeField,
    ctx: &VarContext,
) -> Result<MultiPoly, CliError> {
    parse_poly(text, field, ctx).map_err(|e| CliError::Input(format!("{label}: {e}")))
}

/// Resolve FROBPAIR_MAX_TERMS: unset means the default cap, 0 disables it.
pub(crate) fn term_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("FROBPAIR_MAX_TERMS") {
        Err(std::env::VarError::NotPresent) => Ok(Some(DEFAULT_TERM_CAP)),
        Err(other) => Err(CliError::Input(format!("FROBPAIR_MAX_TERMS: {other}"))),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Input(format!(
                "FROBPAIR_MAX_TERMS must be a nonnegative integer, got {raw:?}"
            ))),
        },
    }
}

fn map_level_error(err: LevelError) -> CliError {
    match &err {
        LevelError::Arithmetic { source, .. } => match source {
            PolyError::TermLimit { .. } | PolyError::ExponentOverflow => {
                CliError::Resource(err.to_string())
            }
            _ => CliError::Input(err.to_string()),
        },
        _ => CliError::Input(err.to_string()),
    }
}

// ---------------------------------------------------------------------------
// level
// ---------------------------------------------------------------------------

fn run_level(args: LevelArgs) -> Result<(), CliError> {
    if args.max_e < 1 {
        return Err(CliError::Input("--max-e must be at least 1".to_string()));
    }
    let (field, ctx) = build_ring(args.p, &args.vars)?;
    let g = parse_input("--num", &args.num, field, &ctx)?;
    let f = parse_input("--den", &args.den, field, &ctx)?;
    let query = LevelQuery::new(g.clone(), f.clone()).with_e_max(args.max_e);
    let outcome = level_pair_with_limit(&query, term_cap()?).map_err(map_level_error)?;
    if args.json {
        let certificate = match (&outcome, args.certificate) {
            (LevelOutcome::Finite { certificate, .. }, true) => {
                Some(certificate_json(certificate))
            }
            _ => None,
        };
        let report = LevelReport {
            query: LevelQueryEcho {
                p: args.p,
                vars: ctx.names().to_vec(),
                num: g.to_string(),
                den: f.to_string(),
                e_max: args.max_e,
            },
            outcome: outcome_json(&outcome),
            certificate,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serialize"));
    } else {
        println!("{}", outcome_text(&outcome, args.max_e));
        if args.certificate {
            match &outcome {
                LevelOutcome::Finite { certificate, .. } => {
                    print_certificate_text(certificate, field, &ctx);
                }
                LevelOutcome::LevelZero => {
                    println!("certificate: not needed, f divides g");
                }
                LevelOutcome::ExceedsBound { .. } => {
                    println!("certificate: none, level undetermined");
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// roots
// ---------------------------------------------------------------------------

fn run_roots(args: RootsArgs) -> Result<(), CliError> {
    if args.e < 1 {
        return Err(CliError::Input("--e must be at least 1".to_string()));
    }
    let (field, ctx) = build_ring(args.p, &args.vars)?;
    let poly = parse_input("--poly", &args.poly, field, &ctx)?;
    let dec = pe_decompose(&poly, args.e);
    let ideal = ie_roots(&poly, args.e);
    if args.json {
        let report = RootsReport {
            query: RootsQueryEcho {
                p: args.p,
                vars: ctx.names().to_vec(),
                e: args.e,
                poly: poly.to_string(),
            },
            entries: root_entries_json(&dec),
            generators: ideal.generators().iter().map(|g| g.to_string()).collect(),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serialize"));
    } else {
        println!(
            "p^e-th root decomposition of {} (p = {}, e = {}):",
            poly,
            args.p,
            args.e
        );
        if dec.is_empty() {
            println!("  (zero polynomial, empty decomposition)");
        }
        for (alpha, root) in dec.entries() {
            println!(
                "  basis {}: root {}",
                report::monomial_text(alpha, field, &ctx),
                root
            );
        }
        if ideal.is_zero_ideal() {
            println!("root ideal: zero ideal");
        } else {
            println!("root ideal generators:");
            for gen in ideal.generators() {
                println!("  {gen}");
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

fn parse_vector(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| {
                CliError::Input(format!("--stratified: {:?} is not a nonnegative integer", part))
            })
        })
        .collect()
}

fn run_curve(args: CurveArgs) -> Result<(), CliError> {
    let field = PrimeField::new(args.p).map_err(|e| CliError::Input(e.to_string()))?;
    let ctx = VarContext::new(vec!["x"]).expect("fixed context");
    let h = parse_input("--h", &args.h, field, &ctx)?;
    let model = HyperellipticModel::new(&h).map_err(|e| CliError::Input(e.to_string()))?;
    let matrix = cartier_manin(&model);
    let cls = classify(&matrix);
    let kernel = stratification_kernel(&matrix);
    let stratified = match &args.stratified {
        Some(text) => {
            let vector = parse_vector(text)?;
            let annihilates =
                stratified_test(&matrix, &vector).map_err(|e| CliError::Input(e.to_string()))?;
            Some(StratifiedJson { vector, annihilates })
        }
        None => None,
    };
    let report = CurveReport {
        query: CurveQueryEcho { p: args.p, h: h.to_string() },
        genus: cls.genus,
        matrix: matrix.entries().to_vec(),
        a_number: cls.a_number,
        p_rank: cls.p_rank,
        ordinary: cls.ordinary,
        superspecial: cls.superspecial,
        kernel,
        stratified,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serialize"));
    } else {
        print_curve_text(&report, &matrix, &cls);
    }
    Ok(())
}
