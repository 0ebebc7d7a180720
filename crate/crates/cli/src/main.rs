//! `prandtl-modes`: evaluate functions, build modes, run the verification
//! suites and emit the figure datasets.
//!
//! Exit codes: 0 success, 1 failed verification, 2 bad input, 3 evaluation
//! error, 4 degenerate boundary system.

mod config;
mod eval;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use prandtl_modes::frames::{build_frame, ModeSpec, ShearFlow};
use prandtl_modes::modes::{fmt17, CoefficientTriple, Mode, SampledProfile};
use prandtl_modes::oracle::{verify_with, Suite, VerifyOptions, SEED};
use prandtl_modes::shearlayer::{example_flow_critical_point, sample_profile, CriticalPoint};
use prandtl_modes::Error;

use config::{Format, Grid, Preset, RunConfig};

/// Environment variable capping the worker-thread count.
const THREADS_ENV: &str = "PRANDTL_MODES_THREADS";

#[derive(Parser)]
#[command(name = "prandtl-modes", version, about = "Explicit quasi-eigenmodes of the linearised Prandtl equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a named function at one point and print `re im`
    Eval(EvalArgs),
    /// Sample a stream function phi_k(y) to CSV
    Mode(ModeArgs),
    /// Run a verification suite and print its JSON report
    Verify(VerifyArgs),
    /// Sample the shear-layer profile V(z) to CSV
    Shearlayer(ShearArgs),
    /// Write every figure dataset into a directory
    Figures(FigureArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Function name (`list` prints the registry)
    function: String,
    /// Evaluation point, `re` or `re,im`
    #[arg(allow_hyphen_values = true, default_value = "0")]
    point: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    a: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    c: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    tau: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    mu: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    eta_star: Option<Complex64>,
    /// Curvature U''(a) for `V`; the example flow when absent
    #[arg(long, allow_hyphen_values = true)]
    upp: Option<f64>,
    /// Sign of k for the asymptotic forms
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    sign: i8,
}

#[derive(Args)]
struct GridArg {
    /// Uniform grid MIN MAX N
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "N"], allow_hyphen_values = true)]
    grid: Option<Vec<String>>,
}

#[derive(Args)]
struct ModeArgs {
    /// JSON run configuration; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c0_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c0_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c1_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c1_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c2_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c2_im: Option<f64>,
    /// Named coefficients of a worked example
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Solve the boundary system for phi(0) = phi'(0) = 0
    #[arg(long)]
    no_slip: bool,
    #[command(flatten)]
    grid: GridArg,
    #[arg(long)]
    tol_rel: Option<f64>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// recurrences, odes, criterion, asymptotics, boundary or all
    suite: String,
    /// Seed of the sample points (decimal or 0x-hex)
    #[arg(long, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Shift tau before the criterion checks (self-test of the verifier)
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb_tau: Option<f64>,
}

#[derive(Args)]
struct ShearArgs {
    /// Curvature U''(a) < 0 of the critical point
    #[arg(long, allow_hyphen_values = true, conflicts_with = "example")]
    upp: Option<f64>,
    /// Location of the critical point (metadata only)
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    a: f64,
    /// Use the flow U(y) = 2 y e^{-y^2} at its maximum
    #[arg(long)]
    example: bool,
    #[command(flatten)]
    grid: GridArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Output directory, created if missing
    #[arg(long, default_value = "figures")]
    dir: PathBuf,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSystem => 4,
            Error::InvalidShear(_) | Error::InvalidMode(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
    .map_err(|e| format!("{s:?}: {e}"))
}

impl GridArg {
    fn resolve(&self, default: Grid) -> CliResult<Grid> {
        let Some(v) = &self.grid else { return Ok(default) };
        let f = |t: &String| t.parse::<f64>().map_err(|e| Failure::input(format!("grid value {t:?}: {e}")));
        let n = v[2].parse::<usize>().map_err(|e| Failure::input(format!("grid count {:?}: {e}", v[2])))?;
        let g = Grid { min: f(&v[0])?, max: f(&v[1])?, n };
        if !(g.min < g.max) || n < 2 {
            return Err(Failure::input(format!("grid [{}, {}] with {n} points", g.min, g.max)));
        }
        Ok(g)
    }
}

fn run_eval(args: &EvalArgs) -> CliResult<()> {
    if args.function == "list" {
        println!("{}", eval::FUNCTIONS.join("\n"));
        return Ok(());
    }
    if !eval::is_known(&args.function) {
        return Err(Failure::input(format!("unknown function {:?}; try `eval list`", args.function)));
    }
    let x = parse_complex(&args.point).map_err(Failure::input)?;
    let d = eval::Params::default();
    let p = eval::Params {
        a: args.a.unwrap_or(d.a),
        c: args.c.unwrap_or(d.c),
        tau: args.tau.unwrap_or(d.tau),
        mu: args.mu.unwrap_or(d.mu),
        eta_star: args.eta_star.unwrap_or(d.eta_star),
        upp: args.upp,
        sign: args.sign,
    };
    let v = eval::evaluate(&args.function, x, &p).expect("name checked above").map_err(|e| Failure {
        code: 3,
        message: e.to_string(),
    })?;
    println!("{} {}", fmt17(v.re), fmt17(v.im));
    Ok(())
}

fn mode_config(args: &ModeArgs) -> CliResult<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    let s = &mut cfg.shear;
    s.alpha = args.alpha.unwrap_or(s.alpha);
    s.beta = args.beta.unwrap_or(s.beta);
    s.a = args.a.unwrap_or(s.a);
    let m = &mut cfg.mode;
    m.k = args.k.unwrap_or(m.k);
    m.sigma = Complex64::new(args.sigma_re.unwrap_or(m.sigma.re), args.sigma_im.unwrap_or(m.sigma.im));
    let flags = [args.c0_re, args.c0_im, args.c1_re, args.c1_im, args.c2_re, args.c2_im];
    if flags.iter().any(Option::is_some) {
        let base = cfg.coeffs.unwrap_or(CoefficientTriple::new(Complex64::default(), Complex64::default(), Complex64::default()));
        let pick = |v: Option<f64>, d: f64| v.unwrap_or(d);
        cfg.coeffs = Some(CoefficientTriple::new(
            Complex64::new(pick(args.c0_re, base.c0.re), pick(args.c0_im, base.c0.im)),
            Complex64::new(pick(args.c1_re, base.c1.re), pick(args.c1_im, base.c1.im)),
            Complex64::new(pick(args.c2_re, base.c2.re), pick(args.c2_im, base.c2.im)),
        ));
    }
    if args.preset.is_some() {
        cfg.preset = args.preset;
    }
    cfg.no_slip |= args.no_slip;
    cfg.grid = args.grid.resolve(cfg.grid)?;
    cfg.tolerances.rel = args.tol_rel.unwrap_or(cfg.tolerances.rel);
    cfg.tolerances.abs = args.tol_abs.unwrap_or(cfg.tolerances.abs);
    cfg.format = args.format.unwrap_or(cfg.format);
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
    cfg.validate().map_err(Failure::input)?;
    Ok(cfg)
}

fn build_mode(cfg: &RunConfig) -> CliResult<Mode> {
    let frame = build_frame(ShearFlow::new(cfg.shear.alpha, cfg.shear.beta, cfg.shear.a)?, ModeSpec::new(cfg.mode.k, cfg.mode.sigma)?)?;
    let mode = if cfg.no_slip || cfg.preset == Some(Preset::NoSlip) {
        Mode::no_slip(frame)?
    } else if let Some(c) = cfg.coeffs {
        Mode::new(frame, c)
    } else if cfg.preset == Some(Preset::Free) {
        Mode::new(frame, RunConfig::free_coeffs())
    } else {
        return Err(Failure::input("no coefficients: pass --c*-re/--c*-im, --preset or --no-slip"));
    };
    Ok(mode.with_quadrature(cfg.quadrature()))
}

fn write_profile(p: &SampledProfile, path: &Path, format: Format) -> CliResult<()> {
    match format {
        Format::Csv => {
            p.write_files(path)?;
        }
        Format::Json => {
            let rows: Vec<[f64; 3]> = p.rows.iter().map(|(x, v)| [*x, v.re, v.im]).collect();
            let doc = serde_json::json!({ "coord": p.coord, "rows": rows, "meta": p.meta });
            let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure { code: 3, message: e.to_string() })?;
            std::fs::write(path, text + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn run_mode(args: &ModeArgs) -> CliResult<()> {
    let cfg = mode_config(args)?;
    let out = cfg.output_path.clone().ok_or_else(|| Failure::input("missing --out (or output_path in the config)"))?;
    let mode = build_mode(&cfg)?;
    let p = mode.sample_profile(cfg.grid.min, cfg.grid.max, cfg.grid.n)?;
    write_profile(&p, &out, cfg.format)
}

fn run_verify(args: &VerifyArgs) -> CliResult<bool> {
    let suite: Suite = args.suite.parse().map_err(|e: Error| Failure::input(e.to_string()))?;
    let opts = VerifyOptions {
        seed: args.seed.unwrap_or(SEED),
        tau_shift: Complex64::new(args.perturb_tau.unwrap_or(0.0), 0.0),
    };
    let report = verify_with(suite, &opts);
    let text = serde_json::to_string_pretty(&report).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: {:e} (threshold {:e})", c.name, c.value, c.threshold);
    }
    Ok(report.pass)
}

fn run_shearlayer(args: &ShearArgs) -> CliResult<()> {
    let cp = match (args.example, args.upp) {
        (true, _) => example_flow_critical_point(),
        (false, Some(upp)) => CriticalPoint::new(args.a, upp)?,
        (false, None) => return Err(Failure::input("pass --upp <negative value> or --example")),
    };
    let g = args.grid.resolve(Grid { min: -6.0, max: 6.0, n: 601 })?;
    let out = args.out.as_ref().ok_or_else(|| Failure::input("missing --out"))?;
    write_profile(&sample_profile(&cp, g.min, g.max, g.n)?, out, Format::Csv)
}

/// Wavenumbers of the free-example and no-slip figures.
const FREE_KS: [i64; 3] = [1, 100, 1_000_000];
const NO_SLIP_KS: [i64; 3] = [1, 10, 100];

fn run_figures(args: &FigureArgs) -> CliResult<()> {
    std::fs::create_dir_all(&args.dir).map_err(|e| Failure::input(format!("{}: {e}", args.dir.display())))?;
    for (tag, ks, preset) in [("fig1", FREE_KS, Preset::Free), ("fig2", NO_SLIP_KS, Preset::NoSlip)] {
        for k in ks {
            let cfg = RunConfig { mode: ModeSpec { k, ..RunConfig::default().mode }, preset: Some(preset), ..RunConfig::default() };
            let p = build_mode(&cfg)?.sample_profile(cfg.grid.min, cfg.grid.max, cfg.grid.n)?;
            let path = args.dir.join(format!("{tag}_k{k}.csv"));
            write_profile(&p, &path, Format::Csv)?;
            eprintln!("wrote {}", path.display());
        }
    }
    let path = args.dir.join("fig3.csv");
    write_profile(&sample_profile(&example_flow_critical_point(), -6.0, 6.0, 601)?, &path, Format::Csv)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|e| Failure::input(format!("{THREADS_ENV}={v:?}: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input(format!("{THREADS_ENV}: {e}")))
}

fn run(cli: &Cli) -> CliResult<bool> {
    configure_threads()?;
    match &cli.command {
        Command::Eval(a) => run_eval(a).map(|_| true),
        Command::Mode(a) => run_mode(a).map(|_| true),
        Command::Verify(a) => run_verify(a),
        Command::Shearlayer(a) => run_shearlayer(a).map(|_| true),
        Command::Figures(a) => run_figures(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-1, 2").unwrap(), Complex64::new(-1.0, 2.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0x5EED").unwrap(), 0x5EED);
        assert_eq!(parse_seed("42").unwrap(), 42);
    }

    #[test]
    fn exit_codes_by_error() {
        assert_eq!(Failure::from(Error::DegenerateSystem).code, 4);
        assert_eq!(Failure::from(Error::InvalidShear("x".into())).code, 2);
        assert_eq!(Failure::from(Error::NonFinite("x".into())).code, 3);
    }
}
