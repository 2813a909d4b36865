//! `vilenkin-lab`: command-line front end for the vilenkin crate.
//!
//! Exit status is 0 when every assertion of the run holds, 1 when one fails
//! and 2 on usage errors (bad flags, inadmissible parameters, unreadable input).

mod output;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use vilenkin::experiments::{self, Fixture};
use vilenkin::io::{self as vio, Header};
use vilenkin::kernels::{self, IdentityCheck, IdentityId};
use vilenkin::transform::naive_coefficients;
use vilenkin::{
    Complex, Exponent, FastTransform64, GroupConfig, KernelBuilder64, MeanFamily64, StepFunction64,
    TVariant, WeightSequence64,
};

use output::{flag, int, num, text, Format, Table};

#[derive(Parser)]
#[command(name = "vilenkin-lab", version, about = "Kernels, transforms and summability means on bounded Vilenkin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a kernel as `index,re,im`
    Kernel(KernelArgs),
    /// Forward or inverse Vilenkin-Fourier transform
    Transform(TransformArgs),
    /// Error `||mean_n f - f||_p` over a range of n
    Mean(MeanArgs),
    /// Run one of the convergence experiments
    Experiment(ExperimentArgs),
    /// Check kernel identities over their admissible parameters
    Identity(IdentityArgs),
}

#[derive(Args, Clone)]
struct Shared {
    /// Radix sequence, repeated periodically up to the resolution
    #[arg(long, default_value = "2,3,4")]
    radix: String,
    /// Resolution N; defaults to the length of the radix list
    #[arg(long)]
    resolution: Option<usize>,
    /// Weight sequence `kind[:alpha]`; repeat the flag to pass several
    #[arg(long = "weights")]
    weights: Vec<String>,
    /// Exponent of the error norm: 1, 2, inf or any p >= 1
    #[arg(long, default_value = "2")]
    p: String,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for random fixtures
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Shared {
    fn config(&self) -> Result<GroupConfig> {
        let radix = vilenkin::group::parse_radix(&self.radix)?;
        Ok(GroupConfig::new(&radix, self.resolution.unwrap_or(radix.len()))?)
    }

    fn exponent(&self) -> Result<Exponent> {
        Ok(self.p.parse()?)
    }

    /// First `--weights` value, `fejer` when none is given.
    fn weight(&self) -> Result<WeightSequence64> {
        Ok(self.weights.first().map(String::as_str).unwrap_or("fejer").parse()?)
    }

    fn header(&self, cfg: &GroupConfig) -> Header {
        Header::new(cfg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelChoice {
    Dirichlet,
    DirichletClosed,
    Fejer,
    FejerClosed,
    Norlund,
    T,
    TIdentity,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long, value_enum, default_value = "dirichlet")]
    kind: KernelChoice,
    /// Kernel index; `fejer-closed` needs n = M_k
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    shared: Shared,
    /// Step-function file (or spectrum file with --inverse); a seeded random
    /// function when absent
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    inverse: bool,
    /// Also compare with the quadratic-time oracle
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct MeanArgs {
    #[command(flatten)]
    shared: Shared,
    /// `partial`, `fejer`, `cesaro:a`, `cesaro-literal:a`, `norlund`, `t`,
    /// `t-identity`, `log-norlund` or `log-riesz`; `norlund` and `t*` use --weights
    #[arg(long, default_value = "fejer")]
    family: String,
    /// `a..b`, `a..=b`, `a,b,c` or a single index; defaults to 1..=M_N
    #[arg(long)]
    n: Option<String>,
    #[command(flatten)]
    source: Source,
}

#[derive(Args, Clone)]
struct Source {
    /// Step-function file to use as f
    #[arg(long)]
    input: Option<PathBuf>,
    /// `random`, `psi:n`, `const:c`, `indicator:n[:center]` or `lacunary:alpha`
    #[arg(long, default_value = "random")]
    fixture: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentKind {
    /// Norm error of a family over an n grid
    Convergence,
    /// `M_n` times the mean over `I_n(x)` against `S_{M_n} f(x)`
    LebesgueTrace,
    /// `W_A f(x)` with the pointwise error at `M_A`
    VilenkinLebesgue,
    /// Fitted rate on the lacunary Lipschitz fixture
    Lipschitz,
    /// Error over the modulus-of-continuity bound
    MoriczSiddiqi,
    /// The II term of the Lebesgue-point splitting
    RiemannLebesgue,
    /// Integral, L1 norm and tail mass of a kernel family
    ApproxIdentity,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(value_enum)]
    kind: ExperimentKind,
    #[arg(long, default_value = "fejer")]
    family: String,
    #[arg(long)]
    n: Option<String>,
    /// Coset index for pointwise experiments
    #[arg(long, default_value_t = 0)]
    x: usize,
    /// Lipschitz exponent
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Tail level for approx-identity
    #[arg(long, default_value_t = 1)]
    tail_level: usize,
    /// Assertion threshold: final error for convergence, slope band for
    /// lipschitz, final |II| for riemann-lebesgue
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    source: Source,
}

#[derive(Args)]
struct IdentityArgs {
    #[command(flatten)]
    shared: Shared,
    /// Identity ids, comma separated, or `all`
    #[arg(long, default_value = "all")]
    id: String,
    /// Single parameter tuple such as `n=2;s=1`; all admissible tuples when absent
    #[arg(long)]
    params: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Kernel(a) => run_kernel(a),
        Command::Transform(a) => run_transform(a),
        Command::Mean(a) => run_mean(a),
        Command::Experiment(a) => run_experiment(a),
        Command::Identity(a) => run_identity(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// A closed downstream pipe (`| head`) ends the run quietly.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || matches!(c.downcast_ref::<vilenkin::Error>(), Some(vilenkin::Error::Io(m)) if m.contains("Broken pipe"))
    })
}

/// Header value for a float: shortest round-trip form, exponent when tiny.
fn real(x: f64) -> String {
    format!("{x:?}")
}

/// Reports a failed assertion on stderr and passes the verdict through.
fn verdict(pass: bool, what: impl FnOnce() -> String) -> bool {
    if !pass {
        eprintln!("assertion failed: {}", what());
    }
    pass
}

fn parse_family(spec: &str, shared: &Shared) -> Result<MeanFamily64> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let alpha = || -> Result<f64> {
        let a = arg.with_context(|| format!("family `{name}` needs a parameter"))?;
        a.parse().with_context(|| format!("parameter `{a}`"))
    };
    Ok(match name {
        "partial" => MeanFamily64::PartialSums,
        "fejer" => MeanFamily64::Fejer,
        "cesaro" => MeanFamily64::Cesaro(alpha()?),
        "cesaro-literal" => MeanFamily64::CesaroLiteral(alpha()?),
        "norlund" => MeanFamily64::Norlund(shared.weight()?),
        "t" => MeanFamily64::TMean(shared.weight()?, TVariant::Regular),
        "t-identity" => MeanFamily64::TMean(shared.weight()?, TVariant::IdentityForm),
        "log-norlund" => MeanFamily64::NorlundLog,
        "log-riesz" => MeanFamily64::RieszLog,
        other => bail!("unknown family `{other}`"),
    })
}

/// Parses `a..b` (exclusive), `a..=b`, `a,b,c` or a single index.
fn parse_range(spec: Option<&str>, default_hi: usize) -> Result<Vec<usize>> {
    let Some(spec) = spec else {
        return Ok((1..=default_hi).collect());
    };
    let num = |t: &str| t.trim().parse::<usize>().with_context(|| format!("index `{t}`"));
    if let Some((a, b)) = spec.split_once("..=") {
        return Ok((num(a)?..=num(b)?).collect());
    }
    if let Some((a, b)) = spec.split_once("..") {
        return Ok((num(a)?..num(b)?).collect());
    }
    spec.split(',').map(num).collect()
}

fn load_source(source: &Source, cfg: &GroupConfig, seed: u64) -> Result<(StepFunction64, String)> {
    if let Some(path) = &source.input {
        let (f, header) = vio::read_step_function::<f64, _>(open(path)?)?;
        if &header.config != cfg {
            bail!("{} was written for {}, not {}", path.display(), header.config, cfg);
        }
        return Ok((f, format!("file:{}", path.display())));
    }
    let parts: Vec<&str> = source.fixture.split(':').collect();
    let arg = |i: usize| -> Result<&str> {
        parts.get(i).copied().with_context(|| format!("fixture `{}` needs a parameter", source.fixture))
    };
    let fixture = match parts[0] {
        "random" => Fixture::random(cfg, seed),
        "psi" => Fixture::character(cfg, arg(1)?.parse()?)?,
        "const" => Fixture::constant(cfg, Complex::new(arg(1)?.parse()?, 0.0)),
        "indicator" => {
            let center = parts.get(2).map(|c| c.parse()).transpose()?.unwrap_or(0);
            Fixture::indicator(cfg, arg(1)?.parse()?, center)?
        }
        "lacunary" => Fixture::lacunary(cfg, arg(1)?.parse()?)?,
        other => bail!("unknown fixture `{other}`"),
    };
    Ok((fixture.function, fixture.label))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn values_table(header: Header, values: &[Complex<f64>]) -> Table {
    let mut table = Table::new(header, &["index", "re", "im"]);
    for (i, v) in values.iter().enumerate() {
        table.push(vec![int(i), num(v.re), num(v.im)]);
    }
    table
}

fn emit_function(shared: &Shared, f: &StepFunction64, header: Header) -> Result<()> {
    match shared.format {
        Format::Csv => {
            let mut w = sink(shared.out.as_deref())?;
            vio::write_step_function(&mut w, f, &header)?;
        }
        Format::Json => values_table(header, f.values()).write(shared.out.as_deref(), Format::Json)?,
    }
    Ok(())
}

fn run_kernel(a: KernelArgs) -> Result<bool> {
    let cfg = a.shared.config()?;
    let builder = KernelBuilder64::new(&cfg);
    let kernel = match a.kind {
        KernelChoice::Dirichlet => builder.dirichlet(a.n)?,
        KernelChoice::DirichletClosed => builder.dirichlet_closed(a.n)?,
        KernelChoice::Fejer => builder.fejer(a.n)?,
        KernelChoice::FejerClosed => {
            let level = (0..=cfg.resolution())
                .find(|&k| cfg.subgroup_size(k) == a.n)
                .with_context(|| format!("fejer-closed needs n = M_k, got {}", a.n))?;
            builder.fejer_closed(level)?
        }
        KernelChoice::Norlund => builder.norlund(&a.shared.weight()?, a.n)?,
        KernelChoice::T => builder.tmean(&a.shared.weight()?, a.n, TVariant::Regular)?,
        KernelChoice::TIdentity => builder.tmean(&a.shared.weight()?, a.n, TVariant::IdentityForm)?,
    };
    let mut header = a.shared.header(&cfg).with("kernel", kernel.kind).with("n", a.n);
    if let Some(w) = &kernel.weights {
        header = header.with("weights", w);
    }
    emit_function(&a.shared, &kernel.function, header)?;
    // Dirichlet kernels have mass 1 for n >= 1; so do Fejér, Nörlund and
    // regular T kernels. The identity-form T kernel carries Q_{n-1}/Q_n.
    let integral = kernel.integral();
    let pass = match a.kind {
        KernelChoice::TIdentity => true,
        _ => (integral - Complex::new(1.0, 0.0)).norm() <= 1e-12,
    };
    Ok(verdict(pass, || format!("kernel integral {integral} differs from 1")))
}

fn run_transform(a: TransformArgs) -> Result<bool> {
    let cfg = a.shared.config()?;
    let fvt = FastTransform64::new(&cfg);
    let header = a.shared.header(&cfg);
    if a.inverse {
        let path = a.input.as_deref().context("--inverse needs --input with a spectrum file")?;
        let (spectrum, file_header) = vio::read_spectrum::<f64, _>(open(path)?)?;
        if file_header.config != cfg {
            bail!("{} was written for {}, not {}", path.display(), file_header.config, cfg);
        }
        let f = fvt.inverse(&spectrum)?;
        let back = fvt.forward(&f)?;
        let err = max_diff(back.coefficients(), spectrum.coefficients());
        emit_function(&a.shared, &f, header)?;
        return Ok(verdict(err <= 1e-9, || format!("roundtrip error {err:e} exceeds 1e-9")));
    }
    let source = Source { input: a.input.clone(), fixture: "random".into() };
    let (f, label) = load_source(&source, &cfg, a.shared.seed)?;
    let spectrum = fvt.forward(&f)?;
    let mut pass = true;
    let roundtrip = fvt.inverse(&spectrum)?.max_abs_diff(&f);
    pass &= verdict(roundtrip <= 1e-9, || format!("roundtrip error {roundtrip:e} exceeds 1e-9"));
    let mut header = header.with("kind", "spectrum").with("source", &label);
    if a.input.is_none() {
        header = header.with("seed", a.shared.seed);
    }
    if a.oracle {
        let oracle = naive_coefficients(&f);
        let scale = oracle.coefficients().iter().map(|c| c.norm()).fold(1.0, f64::max);
        let rel = max_diff(spectrum.coefficients(), oracle.coefficients()) / scale;
        pass &= verdict(rel <= 1e-9, || format!("oracle mismatch {rel:e} exceeds 1e-9"));
        header = header.with("oracle_error", real(rel));
    }
    match a.shared.format {
        Format::Csv => {
            let mut w = sink(a.shared.out.as_deref())?;
            vio::write_spectrum(&mut w, &spectrum, &header)?;
        }
        Format::Json => {
            values_table(header, spectrum.coefficients()).write(a.shared.out.as_deref(), Format::Json)?
        }
    }
    Ok(pass)
}

fn max_diff(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn run_mean(a: MeanArgs) -> Result<bool> {
    let cfg = a.shared.config()?;
    let p = a.shared.exponent()?;
    let family = parse_family(&a.family, &a.shared)?;
    let grid = parse_range(a.n.as_deref(), cfg.order())?;
    let (f, label) = load_source(&a.source, &cfg, a.shared.seed)?;
    let curve = experiments::norm_convergence(&family, &f, &label, p, &grid)?;
    let header = with_source(a.shared.header(&cfg), &a.shared, &a.source, &label).with("family", &curve.family).with("p", p);
    let mut table = Table::new(header, &["n", "error_p"]);
    for (&n, &e) in curve.grid.iter().zip(&curve.errors) {
        table.push(vec![int(n), num(e)]);
    }
    table.write(a.shared.out.as_deref(), a.shared.format)?;
    Ok(true)
}

fn run_experiment(a: ExperimentArgs) -> Result<bool> {
    let cfg = a.shared.config()?;
    let p = a.shared.exponent()?;
    let out = a.shared.out.as_deref();
    let format = a.shared.format;
    let base = a.shared.header(&cfg).with("experiment", a.kind.to_possible_value().unwrap().get_name());
    match a.kind {
        ExperimentKind::Convergence => {
            let family = parse_family(&a.family, &a.shared)?;
            let (f, label) = load_source(&a.source, &cfg, a.shared.seed)?;
            let grid = parse_range(a.n.as_deref(), cfg.order())?;
            let curve = experiments::norm_convergence(&family, &f, &label, p, &grid)?;
            let header = with_source(base, &a.shared, &a.source, &label).with("family", &curve.family).with("p", p);
            let mut table = Table::new(header, &["n", "error_p"]);
            for (&n, &e) in curve.grid.iter().zip(&curve.errors) {
                table.push(vec![int(n), num(e)]);
            }
            table.write(out, format)?;
            let last = curve.last().unwrap_or(0.0);
            Ok(match a.tol {
                Some(tol) => verdict(last <= tol, || format!("final error {last:e} exceeds {tol:e}")),
                None => true,
            })
        }
        ExperimentKind::LebesgueTrace => {
            let (f, label) = load_source(&a.source, &cfg, a.shared.seed)?;
            let big_n = cfg.resolution();
            let trace = experiments::lebesgue_point_trace(&f, a.x, big_n)?;
            let fvt = FastTransform64::new(&cfg);
            let mut table = Table::new(
                with_source(base, &a.shared, &a.source, &label).with("x", a.x),
                &["n", "M_n", "trace_re", "trace_im", "partial_sum_re", "partial_sum_im", "residual"],
            );
            let mut worst: f64 = 0.0;
            for (n, &t) in trace.lebesgue.iter().enumerate() {
                let mn = cfg.subgroup_size(n);
                let s = fvt.partial_sum(&f, mn)?.at(a.x);
                let residual = (s - t).norm();
                worst = worst.max(residual);
                table.push(vec![int(n), int(mn), num(t.re), num(t.im), num(s.re), num(s.im), num(residual)]);
            }
            table.write(out, format)?;
            let end = (trace.lebesgue[big_n] - f.at(a.x)).norm();
            Ok(verdict(worst <= 1e-12, || format!("trace differs from S_(M_n) f(x) by {worst:e}"))
                & verdict(end <= 1e-12, || format!("trace ends {end:e} away from f(x)")))
        }
        ExperimentKind::VilenkinLebesgue => {
            let family = parse_family(&a.family, &a.shared)?;
            let (f, label) = load_source(&a.source, &cfg, a.shared.seed)?;
            let d = experiments::vilenkin_lebesgue_trace(&f, a.x, cfg.resolution(), &family)?;
            let header =
                with_source(base, &a.shared, &a.source, &label).with("x", a.x).with("family", family.label());
            let mut table = Table::new(header, &["A", "M_A", "w_a", "mean_error"]);
            for (level, &w) in d.vilenkin_lebesgue.iter().enumerate() {
                let mn = cfg.subgroup_size(level);
                let err = d.mean_error.iter().find(|(n, _)| *n == mn).map(|&(_, e)| num(e));
                table.push(vec![int(level), int(mn), num(w), err.unwrap_or(serde_json::Value::Null)]);
            }
            table.write(out, format)?;
            Ok(true)
        }
        ExperimentKind::Lipschitz => {
            let family = parse_family(&a.family, &a.shared)?;
            let r = experiments::lipschitz_rate_table(a.alpha, p, &family, &cfg)?;
            let slope = r.error_fit.map(|f| f.slope);
            let mut header = base
                .with("fixture", &r.fixture)
                .with("family", &r.family)
                .with("p", p)
                .with("case", r.case)
                .with("predicted_slope", real(r.predicted_slope));
            if let Some(s) = slope {
                header = header.with("error_slope", real(s));
            }
            if let Some(m) = r.modulus_fit {
                header = header.with("modulus_slope", real(m.slope));
            }
            let mut table = Table::new(header, &["level", "M_n", "error_p", "modulus", "fitted"]);
            for ((&n, &e), &w) in r.levels.iter().zip(&r.errors).zip(&r.moduli) {
                table.push(vec![int(n), int(cfg.subgroup_size(n)), num(e), num(w), flag(r.fit_levels.contains(&n))]);
            }
            table.write(out, format)?;
            let band = a.tol.unwrap_or(0.15);
            Ok(match slope {
                Some(s) => verdict((s - r.predicted_slope).abs() <= band, || {
                    format!("slope {s:.4} is more than {band} from {}", r.predicted_slope)
                }),
                None => r.exact,
            })
        }
        ExperimentKind::MoriczSiddiqi => {
            let q = a.shared.weight()?;
            let (f, label) = load_source(&a.source, &cfg, a.shared.seed)?;
            let grid = match a.n.as_deref() {
                Some(spec) => parse_range(Some(spec), cfg.order())?,
                None => (1..=cfg.order()).filter(|&n| q.table(n + 1).map(|t| t.big_q(n) > 0.0).unwrap_or(false)).collect(),
            };
            let r = experiments::moricz_siddiqi_ratio(&q, &f, p, &grid)?;
            let header = with_source(base, &a.shared, &a.source, &label)
                .with("weights", &r.weights)
                .with("p", p)
                .with("sup_ratio", real(r.sup_ratio));
            let mut table = Table::new(header, &["n", "lhs", "rhs", "ratio", "dropped_terms"]);
            for row in &r.rows {
                table.push(vec![int(row.n), num(row.lhs), num(row.rhs), num(row.ratio), int(row.dropped_terms)]);
            }
            table.write(out, format)?;
            Ok(verdict(r.sup_ratio.is_finite(), || "ratio is unbounded on the grid".into()))
        }
        ExperimentKind::RiemannLebesgue => {
            let q = a.shared.weight()?;
            let (f, label) = load_source(&a.source, &cfg, a.shared.seed)?;
            let levels: Vec<usize> = (0..=cfg.resolution()).collect();
            let trace = experiments::riemann_lebesgue_trace(&q, &f, a.x, &levels)?;
            let header = with_source(base, &a.shared, &a.source, &label).with("x", a.x).with("weights", q.label());
            let mut table = Table::new(header, &["level", "M_n", "re", "im", "abs"]);
            for &(n, v) in &trace {
                table.push(vec![int(n), int(cfg.subgroup_size(n)), num(v.re), num(v.im), num(v.norm())]);
            }
            table.write(out, format)?;
            let last = trace.last().map(|(_, v)| v.norm()).unwrap_or(0.0);
            Ok(match a.tol {
                Some(tol) => verdict(last <= tol, || format!("final |II| {last:e} exceeds {tol:e}")),
                None => true,
            })
        }
        ExperimentKind::ApproxIdentity => {
            let family = parse_family(&a.family, &a.shared)?;
            let grid = parse_range(a.n.as_deref(), cfg.order())?;
            let r = kernels::approximate_identity_report(&family, &cfg, &grid, a.tail_level)?;
            let header = base
                .with("family", &r.family)
                .with("tail_level", r.tail_level)
                .with("sup_l1", real(r.sup_l1))
                .with("tail_decrease_factor", real(r.tail_decrease_factor));
            let mut table = Table::new(header, &["n", "integral", "l1", "tail_l1"]);
            for row in &r.rows {
                table.push(vec![int(row.n), num(row.integral), num(row.l1), num(row.tail_l1)]);
            }
            table.write(out, format)?;
            Ok(verdict(r.max_integral_error <= 1e-12, || {
                format!("kernel integrals deviate from 1 by {:e}", r.max_integral_error)
            }) & verdict(r.sup_l1.is_finite(), || "L1 norms are unbounded".into()))
        }
    }
}

fn with_source(header: Header, shared: &Shared, source: &Source, label: &str) -> Header {
    let header = header.with("fixture", label);
    if source.input.is_none() && source.fixture == "random" {
        header.with("seed", shared.seed)
    } else {
        header
    }
}

fn run_identity(a: IdentityArgs) -> Result<bool> {
    let cfg = a.shared.config()?;
    let ids: Vec<IdentityId> = if a.id.eq_ignore_ascii_case("all") {
        IdentityId::ALL.to_vec()
    } else {
        a.id.split(',').map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let weights: Vec<String> = if a.shared.weights.is_empty() {
        vec!["fejer".into(), "valpha:0.5".into(), "beta:1".into()]
    } else {
        a.shared.weights.clone()
    };
    let reports = match &a.params {
        Some(spec) => {
            let params = spec.parse()?;
            ids.iter()
                .map(|&id| kernels::kernel_identity_check::<f64>(id, &params, &cfg))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => kernels::run_identity_suite::<f64>(&cfg, &ids, &weights)?,
    };
    let mut table = Table::new(a.shared.header(&cfg), &["id", "params", "residual", "pass"]);
    let mut failures = 0usize;
    for r in &reports {
        if !r.pass {
            failures += 1;
            let what = match r.check {
                IdentityCheck::Equality => "residual",
                IdentityCheck::Constant => "constant",
            };
            eprintln!("{} [{}]: {what} {:e} (tolerance {:e})", r.id, r.params, r.residual, r.tolerance);
        }
        table.push(vec![text(r.id.name()), text(r.params.to_string()), num(r.residual), flag(r.pass)]);
    }
    table.write(a.shared.out.as_deref(), a.shared.format)?;
    Ok(verdict(failures == 0, || format!("{failures} of {} identity checks failed", reports.len())))
}
