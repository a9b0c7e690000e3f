//! Command-line front end for the exact Witt/zeta library.
//!
//! One binary with subcommands for zeta series, Witt arithmetic,
//! universal polynomials, rationality certificates, and triangle
//! checks. All numeric input and output is exact rational strings;
//! `--json` switches from human-readable text to machine output.
//! Series and certificate literals are accepted inline or from stdin
//! via `-`.
//!
//! Exit codes: 0 for success (including positive determinations),
//! 1 for a negative determination (a failed check or an undetected
//! rationality), 2 for usage and parse errors, and a stable code per
//! library error family above that (see `CliError::code`).

mod classexpr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::process::ExitCode;
use wittzeta::grothendieck::{
    weil_bound_violations, Atom, ClassError, ClassExpr, CountingMeasure, TriangleReport,
};
use wittzeta::rationality::{
    certificate_verify, detect_rational, functional_equation_check, pade, star_closure_check,
    two_out_of_three, DetectOutcome, KnownPair, RationalCertificate, RationalityError,
    VerifyReport, DEFAULT_MARGIN,
};
use wittzeta::symfunc::{universal_composition_poly, universal_product_poly, SymFuncError};
use wittzeta::witt::{
    ghost, lambda, unghost, witt_add, witt_mul, witt_neg, GhostSequence, MulRoute, WittError,
};
use wittzeta::{parse_rat, OneUnit, Rat, SeriesError, TruncatedSeries};

use classexpr::{parse_class, ClassParseError};

#[derive(Parser)]
#[command(
    name = "wittzeta",
    version,
    about = "Exact zeta functions, Witt-ring arithmetic, and rationality certificates"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta series of a class expression over F_q
    Zeta(ZetaArgs),
    /// Closed-point counts M_d recovered from point counts
    ClosedPoints(ClosedPointsArgs),
    /// Point count of the n-th symmetric power of a class
    SymCount(SymCountArgs),
    /// Check a distinguished-triangle relation, or solve for a third zeta
    Triangle(TriangleArgs),
    /// Arithmetic on one-units in the big Witt ring
    #[command(subcommand)]
    Witt(WittCommand),
    /// Universal polynomials behind products and compositions
    #[command(subcommand)]
    UniversalPoly(UniversalPolyCommand),
    /// Rationality detection and certificate handling
    #[command(subcommand)]
    Rational(RationalCommand),
    /// Functional-equation check for an alleged curve L-polynomial
    Funceq(FunceqArgs),
}

#[derive(Args)]
struct ZetaArgs {
    /// Class expression, e.g. "P(2) + A(1) - pt"
    #[arg(long)]
    class: String,
    /// Size of the base field
    #[arg(long)]
    q: u64,
    /// Truncation order of the output series
    #[arg(long)]
    order: usize,
    /// Use the wedge orientation instead of the symmetric one
    #[arg(long)]
    wedge: bool,
}

#[derive(Args)]
struct ClosedPointsArgs {
    #[arg(long)]
    class: String,
    #[arg(long)]
    q: u64,
    /// Point counts are computed to this order
    #[arg(long)]
    order: usize,
    /// Largest degree to report (defaults to the order)
    #[arg(long)]
    maxdeg: Option<usize>,
}

#[derive(Args)]
struct SymCountArgs {
    #[arg(long)]
    class: String,
    #[arg(long)]
    q: u64,
    /// Symmetric-power index
    #[arg(long)]
    n: usize,
    /// Working order (defaults to n)
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct TriangleArgs {
    #[command(subcommand)]
    command: Option<TriangleCommand>,

    /// Class expression for the first vertex
    #[arg(long, required = true)]
    x: Option<String>,
    /// Class expression for the middle vertex (expected X + Z)
    #[arg(long, required = true)]
    y: Option<String>,
    /// Class expression for the third vertex
    #[arg(long, required = true)]
    z: Option<String>,
    #[arg(long, required = true)]
    q: Option<u64>,
    #[arg(long, required = true)]
    order: Option<usize>,
}

#[derive(Subcommand)]
enum TriangleCommand {
    /// Derive the third zeta certificate from two known ones
    Solve(TriangleSolveArgs),
}

#[derive(Args)]
struct TriangleSolveArgs {
    /// Which pair of vertices the two given certificates cover
    #[arg(long, value_enum)]
    known: KnownChoice,
    /// Certificate JSON for the first known vertex (or `-`)
    #[arg(long)]
    first: String,
    /// Certificate JSON for the second known vertex (or `-`)
    #[arg(long)]
    second: String,
    /// Series JSON for the derived vertex, re-verified when given (or `-`)
    #[arg(long)]
    third: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KnownChoice {
    /// Certificates for X and Y; solve for Z
    Xy,
    /// Certificates for X and Z; solve for Y
    Xz,
    /// Certificates for Y and Z; solve for X
    Yz,
}

impl From<KnownChoice> for KnownPair {
    fn from(choice: KnownChoice) -> KnownPair {
        match choice {
            KnownChoice::Xy => KnownPair::XY,
            KnownChoice::Xz => KnownPair::XZ,
            KnownChoice::Yz => KnownPair::YZ,
        }
    }
}

#[derive(Subcommand)]
enum WittCommand {
    /// Witt sum (series product) of two one-units
    Add(BinaryArgs),
    /// Witt negation (series inverse) of a one-unit
    Neg(UnaryArgs),
    /// Witt star product of two one-units
    Mul(MulArgs),
    /// Ghost components of a one-unit
    Ghost(UnaryArgs),
    /// One-unit with the given ghost components
    Unghost(UnghostArgs),
    /// Lambda operation of a one-unit
    Lambda(LambdaArgs),
}

#[derive(Args)]
struct UnaryArgs {
    /// Series JSON (or `-`)
    #[arg(long)]
    f: String,
}

#[derive(Args)]
struct BinaryArgs {
    /// Series JSON (or `-`)
    #[arg(long)]
    f: String,
    /// Series JSON (or `-`)
    #[arg(long)]
    g: String,
}

#[derive(Args)]
struct MulArgs {
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    /// Evaluation strategy; the two agree on every input
    #[arg(long, value_enum, default_value_t = Route::Ghost)]
    route: Route,
}

#[derive(Args)]
struct UnghostArgs {
    /// JSON array of rational strings, e.g. ["3","9","27"] (or `-`)
    #[arg(long)]
    ghosts: String,
}

#[derive(Args)]
struct LambdaArgs {
    /// Which lambda operation to apply
    #[arg(long)]
    m: u32,
    /// Series JSON (or `-`)
    #[arg(long)]
    f: String,
    /// Output order (defaults to the largest the input supports)
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Ghost,
    Universal,
}

impl From<Route> for MulRoute {
    fn from(route: Route) -> MulRoute {
        match route {
            Route::Ghost => MulRoute::Ghost,
            Route::Universal => MulRoute::Universal,
        }
    }
}

#[derive(Subcommand)]
enum UniversalPolyCommand {
    /// Coefficient rule for products: ghost-diagonal tensor in e-bases
    Product {
        #[arg(long)]
        n: u32,
    },
    /// Coefficient rule for compositions: plethysm in the e-basis
    Compose {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum RationalCommand {
    /// Scan denominator degrees and certify the first exact fit
    Detect(DetectArgs),
    /// Solve one Pade window of prescribed degrees
    Pade(PadeArgs),
    /// Replay a certificate against a series
    Verify(VerifyArgs),
    /// Certify the Witt star product of two certified series
    Star(StarArgs),
}

#[derive(Args)]
struct DetectArgs {
    /// Series JSON (or `-`)
    #[arg(long)]
    series: String,
    /// Largest denominator degree to try
    #[arg(long)]
    maxdeg: usize,
    /// Extra coefficients demanded beyond the solved window
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: usize,
}

#[derive(Args)]
struct PadeArgs {
    /// Series JSON (or `-`)
    #[arg(long)]
    series: String,
    /// Numerator degree
    #[arg(long)]
    p: usize,
    /// Denominator degree
    #[arg(long)]
    q: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Series JSON (or `-`)
    #[arg(long)]
    series: String,
    /// Certificate JSON (or `-`)
    #[arg(long)]
    cert: String,
}

#[derive(Args)]
struct StarArgs {
    /// Certificate JSON for the left factor (or `-`)
    #[arg(long = "f-cert")]
    f_cert: String,
    /// Certificate JSON for the right factor (or `-`)
    #[arg(long = "g-cert")]
    g_cert: String,
    /// Order to expand both factors to before detection
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: usize,
}

#[derive(Args)]
struct FunceqArgs {
    /// L-polynomial coefficients as a JSON array, e.g. "[1,-2,5]"
    #[arg(long = "L")]
    l: String,
    /// Genus; the polynomial must have degree 2g
    #[arg(long)]
    g: u32,
    /// Size of the base field
    #[arg(long)]
    q: u64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Series(SeriesError),
    Witt(WittError),
    Sym(SymFuncError),
    Class(ClassError),
    Rationality(RationalityError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Series(_) => 3,
            CliError::Witt(WittError::WeightOverflow { .. }) => 4,
            CliError::Witt(WittError::Sym(e)) => sym_code(e),
            CliError::Sym(e) => sym_code(e),
            CliError::Class(e) => match e {
                ClassError::InvalidMeasure { .. } => 2,
                ClassError::BadLPolynomial { .. } => 6,
                ClassError::InsufficientOrder { .. } => 8,
                ClassError::NonIntegralClosedPoints { .. } => 10,
                ClassError::CustomCountsExhausted { .. } => 11,
            },
            CliError::Rationality(e) => match e {
                RationalityError::NotOneUnit { .. } => 3,
                RationalityError::BadLPolynomial { .. } => 6,
                RationalityError::NoSolution { .. } => 7,
                RationalityError::InsufficientOrder { .. } => 8,
                RationalityError::InconsistentRelation { .. } => 9,
            },
        }
    }
}

fn sym_code(e: &SymFuncError) -> u8 {
    match e {
        SymFuncError::WeightOverflow { .. } => 4,
        SymFuncError::IntegralityViolation { .. } => 5,
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Series(e) => write!(f, "{e}"),
            CliError::Witt(e) => write!(f, "{e}"),
            CliError::Sym(e) => write!(f, "{e}"),
            CliError::Class(e) => write!(f, "{e}"),
            CliError::Rationality(e) => write!(f, "{e}"),
        }
    }
}

impl From<ClassParseError> for CliError {
    fn from(e: ClassParseError) -> Self {
        match e {
            ClassParseError::Syntax { .. } => CliError::Usage(e.to_string()),
            ClassParseError::Atom(c) => CliError::Class(c),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Series(e)
    }
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        CliError::Witt(e)
    }
}

impl From<SymFuncError> for CliError {
    fn from(e: SymFuncError) -> Self {
        CliError::Sym(e)
    }
}

impl From<ClassError> for CliError {
    fn from(e: ClassError) -> Self {
        CliError::Class(e)
    }
}

impl From<RationalityError> for CliError {
    fn from(e: RationalityError) -> Self {
        CliError::Rationality(e)
    }
}

/// Tracks whether stdin has been consumed, so at most one `-` literal
/// is accepted per invocation.
struct Inputs {
    stdin_used: bool,
}

impl Inputs {
    fn new() -> Self {
        Inputs { stdin_used: false }
    }

    fn literal(&mut self, arg: &str) -> Result<String, CliError> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_used {
            return Err(CliError::Usage(
                "stdin (`-`) may be used for at most one input".to_string(),
            ));
        }
        self.stdin_used = true;
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Usage(format!("failed to read stdin: {e}")))
    }

    fn series(&mut self, arg: &str) -> Result<TruncatedSeries, CliError> {
        let text = self.literal(arg)?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad series literal: {e}")))
    }

    fn one_unit(&mut self, arg: &str) -> Result<OneUnit, CliError> {
        Ok(OneUnit::new(self.series(arg)?)?)
    }

    fn certificate(&mut self, arg: &str) -> Result<RationalCertificate, CliError> {
        let text = self.literal(arg)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad certificate literal: {e}")))
    }

    fn ghost_values(&mut self, arg: &str) -> Result<GhostSequence, CliError> {
        let text = self.literal(arg)?;
        let raw: Vec<String> = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad ghost literal: {e}")))?;
        if raw.is_empty() {
            return Err(CliError::Usage(
                "ghost literal must contain at least one value".to_string(),
            ));
        }
        let values = raw
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<Rat>, _>>()
            .map_err(|e| CliError::Usage(format!("bad ghost literal: {e}")))?;
        Ok(GhostSequence::from_values(values))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let json = cli.json;
    let mut inputs = Inputs::new();
    match cli.command {
        Command::Zeta(args) => zeta(args, json),
        Command::ClosedPoints(args) => closed_points(args, json),
        Command::SymCount(args) => sym_count(args, json),
        Command::Triangle(args) => match args.command {
            Some(TriangleCommand::Solve(solve)) => triangle_solve(solve, json, &mut inputs),
            None => triangle_check(args, json),
        },
        Command::Witt(command) => witt(command, json, &mut inputs),
        Command::UniversalPoly(command) => universal_poly(command, json),
        Command::Rational(command) => rational(command, json, &mut inputs),
        Command::Funceq(args) => funceq(args, json),
    }
}

fn emit<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("serializable payload")
    );
}

/// Warns on stderr when a curve atom's L-polynomial violates the
/// coefficient consequence of the Weil bounds for this q. Advisory
/// only: the computation proceeds either way.
fn warn_weil(class: &ClassExpr, q: u64) {
    let mut seen = BTreeSet::new();
    for monomial in class.terms().keys() {
        for atom in monomial {
            if let Atom::CurveL { genus, l_coeffs } = atom {
                if !seen.insert((genus, l_coeffs)) {
                    continue;
                }
                let violations = weil_bound_violations(*genus, l_coeffs, q);
                if !violations.is_empty() {
                    eprintln!(
                        "warning: {atom} coefficient indices {violations:?} exceed the Weil bound for q={q}"
                    );
                }
            }
        }
    }
}

fn zeta(args: ZetaArgs, json: bool) -> Result<u8, CliError> {
    let class = parse_class(&args.class)?;
    let measure = CountingMeasure::new(args.q, args.order)?;
    warn_weil(&class, args.q);
    let z = if args.wedge {
        measure.zeta_wedge(&class)?
    } else {
        measure.zeta_sym(&class)?
    };
    if json {
        emit(&z);
    } else {
        println!("{}", z.as_series());
    }
    Ok(0)
}

fn closed_points(args: ClosedPointsArgs, json: bool) -> Result<u8, CliError> {
    let class = parse_class(&args.class)?;
    let measure = CountingMeasure::new(args.q, args.order)?;
    warn_weil(&class, args.q);
    let max_degree = args.maxdeg.unwrap_or(args.order);
    let counts = measure.closed_point_counts(&class, max_degree)?;
    if json {
        let strings: Vec<String> = counts.iter().map(Rat::to_string).collect();
        emit(&serde_json::json!({ "max_degree": max_degree, "counts": strings }));
    } else {
        for (d, count) in counts.iter().enumerate() {
            println!("M_{} = {}", d + 1, count);
        }
    }
    Ok(0)
}

fn sym_count(args: SymCountArgs, json: bool) -> Result<u8, CliError> {
    let class = parse_class(&args.class)?;
    let order = args.order.unwrap_or(args.n);
    let measure = CountingMeasure::new(args.q, order)?;
    warn_weil(&class, args.q);
    let count = measure.sym_power_count(&class, args.n)?;
    if json {
        emit(&serde_json::json!({ "n": args.n, "count": count.to_string() }));
    } else {
        println!("{count}");
    }
    Ok(0)
}

fn check_line(label: &str, check: &wittzeta::grothendieck::Check) -> String {
    match check.first_failure {
        None => format!("{label}: pass"),
        Some(n) => format!("{label}: fail (first failure at {n})"),
    }
}

fn triangle_check(args: TriangleArgs, json: bool) -> Result<u8, CliError> {
    let x = parse_class(&args.x.expect("required by clap"))?;
    let y = parse_class(&args.y.expect("required by clap"))?;
    let z = parse_class(&args.z.expect("required by clap"))?;
    let q = args.q.expect("required by clap");
    let order = args.order.expect("required by clap");
    let measure = CountingMeasure::new(q, order)?;
    for class in [&x, &y, &z] {
        warn_weil(class, q);
    }
    let report: TriangleReport = measure.triangle_check(&x, &y, &z)?;
    if json {
        emit(&serde_json::json!({
            "ghost": report.ghost,
            "series": report.series,
            "kunneth": report.kunneth,
            "pass": report.pass(),
        }));
    } else {
        println!("{}", check_line("ghost", &report.ghost));
        println!("{}", check_line("series", &report.series));
        println!("{}", check_line("kunneth", &report.kunneth));
        println!("triangle: {}", if report.pass() { "pass" } else { "fail" });
    }
    Ok(u8::from(!report.pass()))
}

fn print_certificate(cert: &RationalCertificate, json: bool) {
    if json {
        emit(cert);
    } else {
        println!("{cert}");
        println!("order: {}", cert.order());
    }
}

fn triangle_solve(
    args: TriangleSolveArgs,
    json: bool,
    inputs: &mut Inputs,
) -> Result<u8, CliError> {
    let first = inputs.certificate(&args.first)?;
    let second = inputs.certificate(&args.second)?;
    let third = match &args.third {
        None => None,
        Some(arg) => Some(inputs.series(arg)?),
    };
    let cert = two_out_of_three(args.known.into(), &first, &second, third.as_ref())?;
    print_certificate(&cert, json);
    Ok(0)
}

fn witt(command: WittCommand, json: bool, inputs: &mut Inputs) -> Result<u8, CliError> {
    let unit = match command {
        WittCommand::Add(args) => {
            let f = inputs.one_unit(&args.f)?;
            let g = inputs.one_unit(&args.g)?;
            witt_add(&f, &g)
        }
        WittCommand::Neg(args) => witt_neg(&inputs.one_unit(&args.f)?),
        WittCommand::Mul(args) => {
            let f = inputs.one_unit(&args.f)?;
            let g = inputs.one_unit(&args.g)?;
            witt_mul(&f, &g, args.route.into())?
        }
        WittCommand::Ghost(args) => {
            let values = ghost(&inputs.one_unit(&args.f)?);
            if json {
                let strings: Vec<String> = values.values().iter().map(Rat::to_string).collect();
                emit(&serde_json::json!({ "values": strings }));
            } else {
                let line: Vec<String> = values.values().iter().map(Rat::to_string).collect();
                println!("{}", line.join(", "));
            }
            return Ok(0);
        }
        WittCommand::Unghost(args) => unghost(&inputs.ghost_values(&args.ghosts)?),
        WittCommand::Lambda(args) => {
            let f = inputs.one_unit(&args.f)?;
            let out_order = args.order.unwrap_or_else(|| {
                if args.m <= 1 {
                    f.order()
                } else {
                    f.order() / args.m as usize
                }
            });
            lambda(args.m, &f, out_order)?
        }
    };
    if json {
        emit(&unit);
    } else {
        println!("{}", unit.as_series());
    }
    Ok(0)
}

fn universal_poly(command: UniversalPolyCommand, json: bool) -> Result<u8, CliError> {
    match command {
        UniversalPolyCommand::Product { n } => {
            let poly = universal_product_poly(n)?;
            if json {
                emit(&*poly);
            } else {
                println!("{poly}");
            }
        }
        UniversalPolyCommand::Compose { m, n } => {
            let poly = universal_composition_poly(m, n)?;
            if json {
                emit(&*poly);
            } else {
                println!("{poly}");
            }
        }
    }
    Ok(0)
}

fn rational(command: RationalCommand, json: bool, inputs: &mut Inputs) -> Result<u8, CliError> {
    match command {
        RationalCommand::Detect(args) => {
            let series = inputs.series(&args.series)?;
            match detect_rational(&series, args.maxdeg, args.margin)? {
                DetectOutcome::Certified(cert) => {
                    if json {
                        emit(&serde_json::json!({
                            "outcome": "certified",
                            "certificate": cert,
                        }));
                    } else {
                        println!("certified: {cert}");
                        println!("order: {}", cert.order());
                    }
                    Ok(0)
                }
                DetectOutcome::NotDetected(report) => {
                    if json {
                        emit(&serde_json::json!({
                            "outcome": "not_detected",
                            "report": report,
                        }));
                    } else {
                        println!(
                            "not detected: no denominator degree <= {} fits",
                            args.maxdeg
                        );
                        for entry in &report.entries {
                            let unit = if entry.unit_solution {
                                "unit solution"
                            } else {
                                "no unit solution"
                            };
                            match entry.first_failure {
                                Some(k) => println!(
                                    "d={}: rank {}, {}, first failure at {}",
                                    entry.den_degree, entry.rank, unit, k
                                ),
                                None => println!(
                                    "d={}: rank {}, {}",
                                    entry.den_degree, entry.rank, unit
                                ),
                            }
                        }
                    }
                    Ok(1)
                }
            }
        }
        RationalCommand::Pade(args) => {
            let series = inputs.series(&args.series)?;
            let cert = pade(&series, args.p, args.q)?;
            print_certificate(&cert, json);
            Ok(0)
        }
        RationalCommand::Verify(args) => {
            let series = inputs.series(&args.series)?;
            let cert = inputs.certificate(&args.cert)?;
            let report: VerifyReport = certificate_verify(&series, &cert);
            if json {
                emit(&report);
            } else {
                let partial = if report.partial { ", partial" } else { "" };
                match report.first_failure {
                    None => println!("pass (checked to order {}{partial})", report.checked_order),
                    Some(k) => println!(
                        "fail at coefficient {k} (checked to order {}{partial})",
                        report.checked_order
                    ),
                }
            }
            Ok(u8::from(!report.pass))
        }
        RationalCommand::Star(args) => {
            let f = inputs.certificate(&args.f_cert)?;
            let g = inputs.certificate(&args.g_cert)?;
            let cert = star_closure_check(&f, &g, args.order, args.margin)?;
            print_certificate(&cert, json);
            Ok(0)
        }
    }
}

fn parse_l_coeffs(text: &str) -> Result<Vec<BigInt>, CliError> {
    let bad = |message: String| CliError::Usage(format!("bad L-polynomial literal: {message}"));
    let values: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    values
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| bad(format!("coefficient {n} is not an integer"))),
            serde_json::Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|e| bad(format!("coefficient {s:?}: {e}"))),
            other => Err(bad(format!("coefficient {other} is not an integer"))),
        })
        .collect()
}

fn funceq(args: FunceqArgs, json: bool) -> Result<u8, CliError> {
    let l_coeffs = parse_l_coeffs(&args.l)?;
    let report = functional_equation_check(args.g, &l_coeffs, args.q)?;
    if json {
        emit(&report);
    } else if report.pass {
        println!("pass");
    } else {
        println!("fail");
        println!("residual: {}", report.residual);
    }
    Ok(u8::from(!report.pass))
}
