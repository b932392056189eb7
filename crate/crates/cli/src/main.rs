//! `structmat` command-line driver.
//!
//! Exit status: 0 on success (including reports of violated conjectures),
//! 2 on usage or parameter errors, 3 on numerical failures with a JSON
//! diagnostic on stderr, 1 on I/O errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use structmat::counterexample::{self, CounterexampleParams};
use structmat::exact::{self, parse_rational};
use structmat::invertibility::{self, Evidence, ShiftBase};
use structmat::predicates::{self, Dominance};
use structmat::spectral::{self, OmegaTauMode, SpectrumReport, TOL_IMAG_REL};
use structmat::spline::{self, DeBoorConfig, KnotSequence};
use structmat::toeplitz::{self, RationalSymbol, SectionSource};
use structmat::{DenseMatrix, PNorm};

#[derive(Parser)]
#[command(name = "structmat", version, about = "Structured-matrix experiments")]
struct Cli {
    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampled experiments.
    #[arg(long, global = true, env = "STRUCTMAT_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run class predicates on a matrix file.
    Classify(ClassifyArgs),
    /// Build the counterexample matrix A_{n,k,t} or its limit B_k.
    Counterexample(CounterexampleArgs),
    /// Spectrum of a matrix file.
    Spectrum(FileArgs),
    /// Positive-stability sweep of A_{n,k,t} over a grid of (n, k).
    Sweep(SweepArgs),
    /// Exact sign certificate for the Hurwitz minor H_k[2:5].
    HurwitzCert(HurwitzArgs),
    /// Bounded-invertibility experiments.
    #[command(subcommand)]
    Invertibility(InvertibilityCommand),
    /// Symbol curve, limit-set checks and finite-section spectra.
    ToeplitzLimit(ToeplitzLimitArgs),
    /// Spline Gram matrices and the wild-mesh experiment.
    Spline(SplineArgs),
    /// Newton-inequality gaps of the normalized characteristic coefficients.
    NewtonReport(NewtonArgs),
}

#[derive(Args)]
struct FileArgs {
    /// Matrix JSON: {"order": n, "entries": [[re, im] | {"num": p, "den": q}, ...]}.
    #[arg(long)]
    file: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    file: PathBuf,
    /// Comma-separated: P, GKK, HF, WSS, SS, TN, TP, oscillatory, M,
    /// ultrametric, strict-ultrametric, DD-row, DD-col, checkerboard,
    /// omega, tau, kellogg.
    #[arg(long, value_delimiter = ',', required = true)]
    classes: Vec<String>,
    /// Slack for eigenvalue monotonicity comparisons.
    #[arg(long, default_value_t = 1e-9)]
    tol_omega: f64,
    /// Entries at or below this magnitude are ignored by the checkerboard test.
    #[arg(long, default_value_t = 1e-12)]
    tol_checkerboard: f64,
    /// Only compare leading principal submatrices in the ω/τ test.
    #[arg(long)]
    leading: bool,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    /// "p/q" or a decimal.
    #[arg(long)]
    t: Option<String>,
    /// Include the spectrum.
    #[arg(long)]
    spectrum: bool,
    /// Build B_k = lim_{t→0+} A_{2k+2,k,t} instead.
    #[arg(long)]
    limit: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    t: String,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long)]
    k_max: usize,
}

#[derive(Args)]
struct HurwitzArgs {
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum InvertibilityCommand {
    /// (αI + base_n)^{−1} along a list of orders.
    Family {
        #[arg(long, value_parser = parse_base)]
        base: ShiftBase,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
    },
    /// Inverse structure of a strictly ultrametric matrix (file, or αI + C_n).
    Mms {
        #[arg(long, conflicts_with_all = ["companion", "alpha"])]
        file: Option<PathBuf>,
        /// Order n of αI + C_n.
        #[arg(long, requires = "alpha")]
        companion: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Hermitian band from the symbol 1 + s + c s^k.
    SymbolProduct {
        /// Complex constant such as "3" or "3+1i".
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
    },
    /// Exponential decay fit of the inverse of a banded matrix.
    Demko {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        width: usize,
    },
    /// ‖A^{−1}‖∞ ≤ ‖A‖∞ / λ_min² for an oscillatory Hermitian matrix.
    Oscillatory {
        #[arg(long)]
        file: PathBuf,
        /// Skip the exhaustive oscillatory test.
        #[arg(long)]
        assume: bool,
    },
}

#[derive(Args)]
struct ToeplitzLimitArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: String,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    orders: Vec<usize>,
    /// Samples of the symbol curve.
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    /// Write curve.csv and spectrum_n<order>.csv here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Relative tie tolerance of the limit-set test.
    #[arg(long, default_value_t = toeplitz::DAY_TOL)]
    tol_day: f64,
    /// Probe this many evenly spaced points of (--probe-lo, --probe-hi).
    #[arg(long)]
    probe_count: Option<usize>,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    probe_lo: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    probe_hi: f64,
}

#[derive(Args)]
struct SplineArgs {
    /// Spline order k.
    #[arg(long)]
    k: usize,
    /// Report on one knot sequence (JSON array) instead of sampling.
    #[arg(long)]
    knots: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 40)]
    n_max: usize,
    /// Largest mesh stress λ; spacings are exp(u·λ), u uniform in [−1, 1].
    #[arg(long, default_value_t = 10.0)]
    stress: f64,
}

#[derive(Args)]
struct NewtonArgs {
    #[arg(long, conflicts_with_all = ["n", "k", "t"])]
    file: Option<PathBuf>,
    #[arg(long, requires_all = ["k", "t"])]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<String>,
    /// Relative slack before a negative gap counts as a violation.
    #[arg(long, default_value_t = 1e-10)]
    tol_newton: f64,
}

fn parse_base(s: &str) -> Result<ShiftBase, String> {
    s.parse().map_err(|e: structmat::Error| e.to_string())
}

enum Failure {
    Usage(String),
    Library(structmat::Error),
    Io(String),
}

impl From<structmat::Error> for Failure {
    fn from(e: structmat::Error) -> Self {
        match e {
            structmat::Error::Argument(m) => Failure::Usage(m),
            other => Failure::Library(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// A finished artifact in both encodings.
struct Artifact {
    json: Value,
    csv: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Library(e)) => {
            eprintln!("{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn error_kind(e: &structmat::Error) -> &'static str {
    use structmat::Error::*;
    match e {
        Argument(_) => "argument",
        Capability(_) => "capability",
        Precondition(_) => "precondition",
        Singular { .. } => "singular",
        NoConvergence { .. } => "no_convergence",
        Pole { .. } => "pole",
        DegenerateDegree { .. } => "degenerate_degree",
        InternalConsistency(_) => "internal_consistency",
        Numerical(_) => "numerical",
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    let artifact = match &cli.command {
        Command::Classify(a) => classify(a)?,
        Command::Counterexample(a) => counterexample_cmd(a)?,
        Command::Spectrum(a) => spectrum_cmd(&a.file)?,
        Command::Sweep(a) => sweep_cmd(a)?,
        Command::HurwitzCert(a) => hurwitz_cmd(a.k)?,
        Command::Invertibility(c) => invertibility_cmd(c)?,
        Command::ToeplitzLimit(a) => toeplitz_limit_cmd(a)?,
        Command::Spline(a) => spline_cmd(a, cli.seed)?,
        Command::NewtonReport(a) => newton_cmd(a)?,
    };
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&artifact.json).expect("artifact serializes");
            s.push('\n');
            s
        }
        Format::Csv => artifact.csv,
    };
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_matrix(path: &Path) -> Outcome<DenseMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(DenseMatrix::from_json(&text)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn rational(text: &str) -> Outcome<BigRational> {
    Ok(parse_rational(text)?)
}

fn classify(a: &ClassifyArgs) -> Outcome<Artifact> {
    let m = read_matrix(&a.file)?;
    let mode = if a.leading { OmegaTauMode::LeadingPrincipal } else { OmegaTauMode::Exhaustive };
    let mut reports = Vec::with_capacity(a.classes.len());
    for class in &a.classes {
        let r = match class.as_str() {
            "P" => predicates::is_p_matrix(&m)?,
            "GKK" => predicates::is_gkk(&m)?,
            "HF" => predicates::hadamard_fisher_check(&m)?,
            "WSS" => predicates::is_weakly_sign_symmetric(&m)?,
            "SS" => predicates::is_sign_symmetric(&m)?,
            "TN" => predicates::is_totally_nonnegative(&m)?,
            "TP" => predicates::is_totally_positive(&m)?,
            "oscillatory" => predicates::is_oscillatory(&m)?,
            "M" => predicates::is_m_matrix(&m)?,
            "ultrametric" => predicates::is_ultrametric(&m)?,
            "strict-ultrametric" => predicates::is_strictly_ultrametric(&m)?,
            "DD-row" => predicates::is_diagonally_dominant(&m, Dominance::Row, false)?,
            "DD-col" => predicates::is_diagonally_dominant(&m, Dominance::Column, false)?,
            "checkerboard" => predicates::is_checkerboard(&m, a.tol_checkerboard),
            "omega" => spectral::is_omega_tau(&m, mode, a.tol_omega)?.omega,
            "tau" => spectral::is_omega_tau(&m, mode, a.tol_omega)?.tau,
            "kellogg" => spectral::kellogg_wedge_check(&m)?,
            other => return Err(Failure::Usage(format!("unknown class {other:?}"))),
        };
        reports.push(r);
    }
    let mut csv = String::from("class,holds,detail\n");
    for r in &reports {
        let _ = writeln!(csv, "{},{},{}", r.class, r.holds, r.detail.clone().unwrap_or_default().replace(',', ";"));
    }
    Ok(Artifact { json: to_value(&reports), csv })
}

fn counterexample_cmd(a: &CounterexampleArgs) -> Outcome<Artifact> {
    let (matrix, mut head, exact_row) = if a.limit {
        let b = counterexample::build_limit(a.k)?;
        let row = b.first_row_exact().expect("built exactly").to_vec();
        (b, json!({ "limit": true, "k": a.k, "n": 2 * a.k + 2 }), row)
    } else {
        let (Some(n), Some(t)) = (a.n, a.t.as_deref()) else {
            return Err(Failure::Usage("--n and --t are required unless --limit is given".into()));
        };
        let p = CounterexampleParams::parse(n, a.k, t)?;
        let b = counterexample::build_counterexample(&p);
        let row = b.first_row_exact().expect("built exactly").to_vec();
        (b, json!({ "n": n, "k": a.k, "t": p.t.to_string() }), row)
    };
    let first_row: Vec<String> = exact_row.iter().map(|q| q.to_string()).collect();
    head["first_row"] = json!(first_row);
    let mut csv = String::from("j,a_j\n");
    for (j, q) in exact_row.iter().enumerate() {
        let _ = writeln!(csv, "{j},{}", q);
    }
    if a.spectrum {
        let report = counterexample_spectrum(&matrix, a)?;
        csv = report.to_csv();
        head["spectrum"] = to_value(&report);
    }
    Ok(Artifact { json: head, csv })
}

fn counterexample_spectrum(matrix: &counterexample::ToeplitzHessenberg, a: &CounterexampleArgs) -> Outcome<SpectrumReport> {
    let dense = matrix.to_dense();
    let ev = if a.limit {
        spectral::eigenvalues(&dense)?
    } else {
        let p = CounterexampleParams::parse(a.n.unwrap_or(1), a.k, a.t.as_deref().unwrap_or("0"))?;
        counterexample::section_eigenvalues(&p)?
    };
    let n = dense.order();
    let mut report = SpectrumReport::from_eigenvalues(n, ev, TOL_IMAG_REL * dense.p_norm(PNorm::Inf));
    report.min_real_eigenvalue = spectral::min_real_eigenvalue(&dense)?;
    Ok(report)
}

fn spectrum_cmd(path: &Path) -> Outcome<Artifact> {
    let m = read_matrix(path)?;
    let report = SpectrumReport::of(&m)?;
    Ok(Artifact { json: to_value(&report), csv: report.to_csv() })
}

fn sweep_cmd(a: &SweepArgs) -> Outcome<Artifact> {
    let t = rational(&a.t)?;
    if a.n_min == 0 || a.n_min > a.n_max || a.k_min == 0 || a.k_min > a.k_max {
        return Err(Failure::Usage("need 1 ≤ n_min ≤ n_max and 1 ≤ k_min ≤ k_max".into()));
    }
    let mut rows = Vec::new();
    let mut csv = String::from("n,k,min_re,negative_count\n");
    for k in a.k_min..=a.k_max {
        for n in a.n_min..=a.n_max {
            let p = CounterexampleParams::new(n, k, t.clone())?;
            let ev = counterexample::section_eigenvalues(&p)?;
            let min_re = ev.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
            let negative = ev.iter().filter(|z| z.re < 0.0).count();
            let _ = writeln!(csv, "{n},{k},{min_re:e},{negative}");
            rows.push(json!({ "n": n, "k": k, "min_re": min_re, "negative_count": negative }));
        }
    }
    Ok(Artifact { json: json!({ "t": t.to_string(), "rows": rows }), csv })
}

fn hurwitz_cmd(k: usize) -> Outcome<Artifact> {
    let cert = counterexample::instability_certificate(k)?;
    let csv = format!(
        "k,minor,closed_form,negative,agree\n{},{},{},{},{}\n",
        cert.k, cert.minor_exact, cert.closed_form_exact, cert.negative, cert.agree
    );
    Ok(Artifact { json: to_value(&cert), csv })
}

fn invertibility_cmd(c: &InvertibilityCommand) -> Outcome<Artifact> {
    match c {
        InvertibilityCommand::Family { base, alpha, orders } => {
            let curve = invertibility::shifted_inverse_family(*base, *alpha, orders)?;
            Ok(Artifact { csv: curve.to_csv(), json: to_value(&curve) })
        }
        InvertibilityCommand::Mms { file, companion, alpha } => {
            let m = match (file, companion, alpha) {
                (Some(f), None, None) => read_matrix(f)?,
                (None, Some(n), Some(al)) => invertibility::companion_matrix(*n)?.shifted(*al),
                _ => return Err(Failure::Usage("give --file, or --companion with --alpha".into())),
            };
            let r = invertibility::mms_inverse_check(&m)?;
            let csv = format!("class,holds,detail\n{},{},{}\n", r.class, r.holds, r.detail.clone().unwrap_or_default());
            Ok(Artifact { json: to_value(&r), csv })
        }
        InvertibilityCommand::SymbolProduct { c, k, orders } => {
            let c: Complex64 = c.parse().map_err(|_| Failure::Usage(format!("cannot parse complex constant {c:?}")))?;
            let r = invertibility::symbol_product_experiment(c, *k, orders)?;
            Ok(Artifact { csv: r.curve.to_csv(), json: to_value(&r) })
        }
        InvertibilityCommand::Demko { file, width } => {
            let fit = invertibility::demko_decay_check(&read_matrix(file)?, *width)?;
            let csv = format!("k,r,max_residual,holds\n{:e},{:e},{:e},{}\n", fit.k, fit.r, fit.max_residual, fit.holds);
            Ok(Artifact { json: to_value(&fit), csv })
        }
        InvertibilityCommand::Oscillatory { file, assume } => {
            let evidence = if *assume { Evidence::Assume } else { Evidence::Verify };
            let b = invertibility::oscillatory_inverse_bound(&read_matrix(file)?, evidence)?;
            let csv = format!("lambda_min,bound,actual,holds\n{:e},{:e},{:e},{}\n", b.lambda_min, b.bound, b.actual, b.holds);
            Ok(Artifact { json: to_value(&b), csv })
        }
    }
}

fn check_unit_t(t: &BigRational) -> Outcome<()> {
    let tf = exact::to_f64(t);
    if !(tf > 0.0 && tf < 1.0) {
        return Err(Failure::Usage(format!("t must lie in (0, 1), got {t}")));
    }
    Ok(())
}

/// Curve CSV plus one spectrum CSV per order; identical inputs give
/// identical bytes.
fn emit_figure_data(k: usize, t: &BigRational, orders: &[usize], grid: usize, dir: &Path) -> Outcome<Vec<PathBuf>> {
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    check_unit_t(t)?;
    let sym = RationalSymbol::counterexample(k, exact::to_f64(t))?;
    let curve = toeplitz::symbol_curve(&sym, grid)?;
    let sweep = toeplitz::finite_section_sweep(&SectionSource::Counterexample { k, t: t.clone() }, orders)?;
    fs::create_dir_all(dir)?;
    let mut written = vec![dir.join("curve.csv")];
    fs::write(&written[0], curve.to_csv())?;
    for s in &sweep {
        let path = dir.join(format!("spectrum_n{}.csv", s.order));
        fs::write(&path, toeplitz::sweep_to_csv(std::slice::from_ref(s)))?;
        written.push(path);
    }
    Ok(written)
}

fn toeplitz_limit_cmd(a: &ToeplitzLimitArgs) -> Outcome<Artifact> {
    let t = rational(&a.t)?;
    check_unit_t(&t)?;
    let tf = exact::to_f64(&t);
    let sym = RationalSymbol::counterexample(a.k, tf)?;
    let s_neg = Complex64::new(-1.0, 0.0);
    let at_neg = counterexample::symbol_eval(a.k, tf, s_neg)?;
    let day = toeplitz::day_limit_member(&sym, at_neg, a.tol_day)?;
    let mut out = json!({
        "k": a.k,
        "t": t.to_string(),
        "symbol_at_minus_one": at_neg,
        "minus_one_point": { "is_member": day.is_member, "gap": day.gap },
    });
    let files = match &a.out_dir {
        Some(dir) => emit_figure_data(a.k, &t, &a.orders, a.grid, dir)?,
        None => Vec::new(),
    };
    let sweep = toeplitz::finite_section_sweep(&SectionSource::Counterexample { k: a.k, t: t.clone() }, &a.orders)?;
    let mut csv = String::from("order,gap_statistic,negative_count\n");
    let mut per_order = Vec::new();
    for s in &sweep {
        let stat = toeplitz::limit_gap_statistic(&sym, &s.eigenvalues)?;
        let negative = s.eigenvalues.iter().filter(|z| z.re < 0.0).count();
        let _ = writeln!(csv, "{},{stat:e},{negative}", s.order);
        per_order.push(json!({ "order": s.order, "gap_statistic": stat, "negative_count": negative }));
    }
    out["orders"] = json!(per_order);
    out["files"] = json!(files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
    if let Some(count) = a.probe_count {
        let probes = toeplitz::probe_real_segment(&sym, a.probe_lo, a.probe_hi, count, a.tol_day)?;
        out["probe"] = to_value(&probes);
    }
    Ok(Artifact { json: out, csv })
}

fn spline_cmd(a: &SplineArgs, seed: u64) -> Outcome<Artifact> {
    if let Some(path) = &a.knots {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let t = KnotSequence::from_json(&text, a.k)?;
        let row = spline::gram_row(&t, seed)?;
        let csv = format!("seed,n,k,inv_norm_inf,lambda_min\n{},{},{},{:e},{:e}\n", row.seed, row.n, row.k, row.inv_norm_inf, row.lambda_min);
        return Ok(Artifact { json: to_value(&row), csv });
    }
    let cfg = DeBoorConfig { order: a.k, samples: a.samples, n_max: a.n_max, stress: a.stress, seed };
    let report = spline::deboor_conjecture_experiment(&cfg)?;
    Ok(Artifact { csv: report.to_csv(), json: to_value(&report) })
}

fn newton_cmd(a: &NewtonArgs) -> Outcome<Artifact> {
    let m = match (&a.file, a.n, a.k, a.t.as_deref()) {
        (Some(f), _, _, _) => read_matrix(f)?,
        (None, Some(n), Some(k), Some(t)) => counterexample::build_counterexample(&CounterexampleParams::parse(n, k, t)?).to_dense(),
        _ => return Err(Failure::Usage("give --file, or --n, --k and --t".into())),
    };
    let report = predicates::newton_inequality_report(&m)?;
    let violations: Vec<usize> = report.violations(a.tol_newton).iter().map(|g| g.j).collect();
    let mut csv = String::from("j,c,gap\n");
    for g in &report.gaps {
        let _ = writeln!(csv, "{},{:e},{:e}", g.j, g.c, g.gap);
    }
    let json = json!({ "report": to_value(&report), "violations": violations });
    Ok(Artifact { json, csv })
}
