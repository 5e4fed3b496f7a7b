//! bskernel: evaluate the Bessel-Struve kernel on the unit disk, run its
//! coefficient certificates and geometric margin scans, locate the odd
//! close-to-convexity threshold order, and sweep orders into CSV/JSON.
//!
//! Exit codes: 0 success (and property holds), 1 domain or evaluation
//! error, 2 usage error, 3 the command ran but the property or certificate
//! fails. Identical invocations produce byte-identical output.

mod literal;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bessel_struve::{
    bs_eval_detail, certify_acharya, certify_cc_odd, certify_ms_two_six, coefficient_table,
    find_nu0, margin_scan, margin_scan_fn, nu0_objective, scan_nu, DiskGrid, Error, EvalMethod,
    Identity, Order, Property, Result, RootBracket, SeriesControl, Subject, MIN_ROOT_TOLERANCE,
    NU0_DEFAULT_BRACKET,
};
use render::{MarginTarget, OutputFormat};

#[derive(Parser)]
#[command(
    name = "bskernel",
    version,
    about = "Bessel-Struve kernel evaluation and geometric-function certificates on the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate B_nu(z) by one of three independent routes
    Eval(EvalArgs),
    /// Check a coefficient-inequality certificate up to n_max
    Certify(CertifyArgs),
    /// Scan a geometric functional's margin over a disk grid
    Margin(MarginArgs),
    /// Locate the odd close-to-convexity threshold order by bisection
    Nu0(Nu0Args),
    /// Sweep orders and tabulate certificates with a starlike margin
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Human => OutputFormat::Human,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Quadrature,
    #[value(name = "bessel_sum", alias = "bessel-sum")]
    BesselSum,
}

impl From<MethodArg> for EvalMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => EvalMethod::Series,
            MethodArg::Quadrature => EvalMethod::Quadrature,
            MethodArg::BesselSum => EvalMethod::BesselSum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    Acharya,
    #[value(name = "ms-two-six", alias = "ms_two_six")]
    MsTwoSix,
    #[value(name = "cc-odd", alias = "ms_cc_odd")]
    CcOdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    #[value(name = "starlike", alias = "starlike_lambda")]
    Starlike,
    #[value(name = "s1", alias = "s1_lambda")]
    S1,
    #[value(name = "ctc-identity", alias = "ctc_identity")]
    CtcIdentity,
    #[value(name = "ctc-koebe-half", alias = "ctc_koebe_half")]
    CtcKoebeHalf,
    #[value(name = "ctc-odd", alias = "ctc_odd")]
    CtcOdd,
    #[value(name = "convex", alias = "convex_lambda")]
    Convex,
    #[value(name = "owa", alias = "owa_srivastava")]
    Owa,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Starlike => Property::StarlikeLambda,
            PropertyArg::S1 => Property::S1Lambda,
            PropertyArg::CtcIdentity => Property::CtcIdentity,
            PropertyArg::CtcKoebeHalf => Property::CtcKoebeHalf,
            PropertyArg::CtcOdd => Property::CtcOdd,
            PropertyArg::Convex => Property::ConvexLambda,
            PropertyArg::Owa => Property::OwaSrivastava,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubjectArg {
    #[value(name = "zB", alias = "zb")]
    Zb,
    #[value(name = "h")]
    H,
}

#[derive(Args)]
struct EvalArgs {
    /// Kernel order nu (> -1/2)
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    /// Evaluation point as a complex literal: "0.5", "0.1-0.2i", "1i"
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Series)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
struct CertifyArgs {
    /// Kernel order nu (> -1/2)
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    /// Which coefficient lemma to check
    #[arg(long, value_enum)]
    lemma: LemmaArg,
    /// Number of normalized coefficients a_1..a_{n_max} to tabulate
    #[arg(long = "n-max", default_value_t = 200)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["nu", "fixture"])))]
struct MarginArgs {
    /// Kernel order nu (> -1/2); mutually exclusive with --fixture
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Built-in closed-form subject (only "identity": f(z) = z)
    #[arg(long, value_parser = ["identity"])]
    fixture: Option<String>,
    /// Geometric property whose defining functional is scanned
    #[arg(long, value_enum)]
    property: PropertyArg,
    /// Order parameter lambda of the property
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    /// Exponent beta of the mixed (owa) functional
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Grid shape "RADIIxANGLES", e.g. 12x1024 (defaults to 11x1024)
    #[arg(long)]
    grid: Option<String>,
    /// Largest grid radius (the disk is open; at most 1 - 1e-6)
    #[arg(long = "radius-max", default_value_t = 0.999)]
    radius_max: f64,
    /// Which kernel subject to scan when --nu is given
    #[arg(long, value_enum, default_value_t = SubjectArg::Zb)]
    subject: SubjectArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
struct Nu0Args {
    /// Bisection stops once the bracket width falls below this tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args)]
struct ScanArgs {
    /// Smallest order in the sweep (> -1/2)
    #[arg(long = "nu-min", allow_hyphen_values = true)]
    nu_min: f64,
    /// Largest order in the sweep (inclusive)
    #[arg(long = "nu-max", allow_hyphen_values = true)]
    nu_max: f64,
    /// Lattice spacing
    #[arg(long)]
    step: f64,
    /// Coefficients tabulated per order for the certificates
    #[arg(long = "n-max", default_value_t = 200)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

fn main() {
    let code = match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Input(_) => 2,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn run() -> Result<i32> {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    init_thread_pool()?;
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Margin(args) => cmd_margin(args),
        Command::Nu0(args) => cmd_nu0(args),
        Command::Scan(args) => cmd_scan(args),
    }
}

/// BS_THREADS caps the parallelism of grid scans and order sweeps.
fn init_thread_pool() -> Result<()> {
    let raw = match std::env::var("BS_THREADS") {
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(err) => return Err(Error::Input(format!("BS_THREADS is not readable: {err}"))),
        Ok(raw) => raw,
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        Error::Input(format!(
            "BS_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    if threads == 0 {
        return Err(Error::Input(
            "BS_THREADS must be a positive integer, got 0".into(),
        ));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|err| Error::Input(format!("could not apply BS_THREADS: {err}")))
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let z = literal::parse_complex(&args.z)?;
    let detail = bs_eval_detail(
        Order(args.nu),
        z,
        args.method.into(),
        SeriesControl::default(),
    )?;
    print!(
        "{}",
        render::render_eval(
            args.format.into(),
            args.nu,
            &literal::format_complex(z),
            &detail
        )
    );
    Ok(0)
}

fn cmd_certify(args: CertifyArgs) -> Result<i32> {
    let table = coefficient_table(Order(args.nu), args.n_max)?;
    let report = match args.lemma {
        LemmaArg::Acharya => certify_acharya(&table)?,
        LemmaArg::MsTwoSix => certify_ms_two_six(&table)?,
        LemmaArg::CcOdd => certify_cc_odd(&table)?,
    };
    print!(
        "{}",
        render::render_certify(args.format.into(), args.nu, args.n_max, &report)
    );
    Ok(if report.passed { 0 } else { 3 })
}

fn cmd_margin(args: MarginArgs) -> Result<i32> {
    let grid = build_grid(args.grid.as_deref(), args.radius_max)?;
    let property: Property = args.property.into();
    let (report, target) = if args.fixture.is_some() {
        (
            margin_scan_fn(property, args.lambda, args.beta, &grid, &Identity)?,
            MarginTarget::IdentityFixture,
        )
    } else {
        let nu = args.nu.expect("clap enforces exactly one scan target");
        let (subject, token) = match args.subject {
            SubjectArg::Zb => (Subject::FEqualsZb, "zB"),
            SubjectArg::H => (Subject::HNormalizedB, "h"),
        };
        (
            margin_scan(Order(nu), property, args.lambda, args.beta, &grid, subject)?,
            MarginTarget::Kernel { nu, subject: token },
        )
    };
    print!(
        "{}",
        render::render_margin(args.format.into(), &target, &report)
    );
    Ok(if report.holds_on_grid() { 0 } else { 3 })
}

/// No --grid: the default 11x1024 boundary-dense grid, rescaled only if
/// --radius-max moved. With --grid "RxA": that shape at the given maximum.
fn build_grid(spec: Option<&str>, radius_max: f64) -> Result<DiskGrid> {
    match spec {
        None if radius_max == 0.999 => Ok(DiskGrid::default_grid()),
        None => DiskGrid::boundary_dense(11, 1024, radius_max),
        Some(text) => {
            let (radii, angles) = parse_grid_spec(text)?;
            DiskGrid::boundary_dense(radii, angles, radius_max)
        }
    }
}

fn parse_grid_spec(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Input(format!("grid spec must look like 12x1024, got {text:?}"));
    let (radii, angles) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        radii.trim().parse().map_err(|_| bad())?,
        angles.trim().parse().map_err(|_| bad())?,
    ))
}

// The negated tolerance comparison rejects NaN, which `tol < floor` would
// wave through.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn cmd_nu0(args: Nu0Args) -> Result<i32> {
    if !(args.tol >= MIN_ROOT_TOLERANCE) {
        return Err(Error::Input(format!(
            "root tolerance must be at least {MIN_ROOT_TOLERANCE:e}, got {:e}",
            args.tol
        )));
    }
    let (lo, hi) = NU0_DEFAULT_BRACKET;
    let bracket = RootBracket::for_nu0(lo, hi, args.tol)?;
    let root = find_nu0(&bracket, args.tol)?;
    let objective = nu0_objective(root)?;
    print!(
        "{}",
        render::render_nu0(args.format.into(), (lo, hi), args.tol, root, objective)
    );
    Ok(0)
}

fn cmd_scan(args: ScanArgs) -> Result<i32> {
    let rows = scan_nu(
        args.nu_min,
        args.nu_max,
        args.step,
        args.n_max,
        &DiskGrid::default_grid(),
    )?;
    print!("{}", render::render_scan(args.format.into(), &rows));
    Ok(0)
}
