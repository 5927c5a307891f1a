mod instance;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qpm_ekeland::io::{report_json, ObjectiveFile, SpaceFile};
use qpm_ekeland::oracle::{
    cross_check, falsify, oracle_ekeland_all, oracle_ekeland_weighted, oracle_strong_all, CrossCheck, Family,
    OracleResult, DEFAULT_CAP,
};
use qpm_ekeland::space::{validate_axioms, validate_axioms_sampled, AxiomReport, QpmSpace};
use qpm_ekeland::strong::{
    minimizing_sequence_probe, strong_ekeland_georgiev, strong_ekeland_suzuki, FiniteDomain, Flavor,
    MinimizingTrace, ProbeOptions, RayDomain, StrongCertificate,
};
use qpm_ekeland::tol;
use qpm_ekeland::topology::{
    classify_cauchy, classify_convergence, schedule_for_len, separation_class, CauchyVerdict, LimitVerdict,
    SeparationClass,
};
use qpm_ekeland::variational::{ekeland_point, ekeland_point_prime, DistanceBound, EkelandCertificate};
use qpm_ekeland::{DOrder, Mutation, QuasiMetric, SolverConfig};

use crate::instance::{load, GenSpec, Loaded};

#[derive(Parser)]
#[command(name = "qpm-ekeland", version, about = "Ekeland points on quasi-pseudometric spaces, certified by brute force")]
struct Cli {
    /// Worker threads for parallel oracle and falsifier runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the quasi-pseudometric axioms, and classify a sequence if one is given.
    Validate(ValidateArgs),
    /// Certify an Ekeland point.
    Ekeland(EkelandArgs),
    /// Certify a strong Ekeland point.
    Strong(StrongArgs),
    /// Sample minimizing sequences of the perturbed function around a point.
    Probe(ProbeArgs),
    /// Search random instances for solver, checker or oracle disagreements.
    Falsify(FalsifyArgs),
    /// Write a generated instance as space and objective files.
    Gen(GenArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Space file (JSON).
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    space: Option<PathBuf>,
    /// Objective file (JSON).
    #[arg(long, requires = "space")]
    objective: Option<PathBuf>,
    /// Generated instance, e.g. `n=12,seed=3,family=random`.
    #[arg(long)]
    gen: Option<GenSpec>,
    /// Use the first N sample points of an implicit space.
    #[arg(long)]
    truncate: Option<usize>,
}

#[derive(Args)]
struct OutArgs {
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    /// d(x_n, z)
    ToZ,
    /// d(z, x_n)
    FromZ,
}

impl From<OrderArg> for DOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::ToZ => DOrder::ToZ,
            OrderArg::FromZ => DOrder::FromZ,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Georgiev,
    Suzuki,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ekeland,
    Georgiev,
    Suzuki,
    Mixed,
    Probe,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Ekeland => Family::Ekeland,
            FamilyArg::Georgiev => Family::Georgiev,
            FamilyArg::Suzuki => Family::Suzuki,
            FamilyArg::Mixed => Family::Mixed,
            FamilyArg::Probe => Family::Probe,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    FlipSublevelOrder,
    ShrinkAlpha,
    SkipConditionIi,
    FlipConditionIvOrder,
    StrictStrongMin,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::FlipSublevelOrder => Mutation::FlipSublevelOrder,
            MutationArg::ShrinkAlpha => Mutation::ShrinkAlpha,
            MutationArg::SkipConditionIi => Mutation::SkipConditionIi,
            MutationArg::FlipConditionIvOrder => Mutation::FlipConditionIvOrder,
            MutationArg::StrictStrongMin => Mutation::StrictStrongMin,
        }
    }
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Sequence file to classify (JSON).
    #[arg(long)]
    sequence: Option<PathBuf>,
    /// Sample size for implicit spaces.
    #[arg(long, default_value_t = 64)]
    sample: usize,
    /// Convergence tolerance.
    #[arg(long, default_value_t = tol::LIMIT)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct EkelandArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, conflicts_with = "lambda_prime")]
    lambda: Option<f64>,
    /// Perturbation weight of the primed form; `--eps` then only sets the distance bound.
    #[arg(long)]
    lambda_prime: Option<f64>,
    /// Starting point id; defaults to the first point of dom f.
    #[arg(long)]
    x0: Option<String>,
    /// Also run the brute-force oracle and cross-check the certificate.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ProbeTuning {
    /// Sequence length per trace.
    #[arg(long, default_value_t = 60)]
    horizon: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Limit tolerance for trace verdicts.
    #[arg(long, default_value_t = tol::LIMIT)]
    tol: f64,
    /// Directory for `trace-NNN.csv` files; next to `--out` (or the working directory) when absent.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
}

#[derive(Args)]
struct StrongArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "georgiev")]
    flavor: FlavorArg,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Weight of the bounded-compactness flavor.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    x0: Option<String>,
    #[arg(long)]
    oracle: bool,
    /// Argument order of the distance in the strong-minimum condition.
    #[arg(long, value_enum, default_value = "to-z")]
    d_order: OrderArg,
    /// Number of minimizing-sequence traces to write as CSV.
    #[arg(long)]
    probe: Option<usize>,
    /// Weight of the probed perturbation; the certificate's weight when absent.
    #[arg(long)]
    probe_gamma: Option<f64>,
    #[command(flatten)]
    tuning: ProbeTuning,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Perturbation weight; 0 probes plain minimizing sequences.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Centre point (id, or coordinate on an implicit space); defaults to a minimizer of f.
    #[arg(long)]
    z: Option<String>,
    #[arg(long, default_value_t = 32)]
    trials: usize,
    #[arg(long, value_enum, default_value = "to-z")]
    d_order: OrderArg,
    #[command(flatten)]
    tuning: ProbeTuning,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct FalsifyArgs {
    #[arg(long, value_enum, default_value = "mixed")]
    family: FamilyArg,
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enable a deliberate checker defect.
    #[arg(long, value_enum)]
    mutate: Option<MutationArg>,
    #[arg(long, value_enum, default_value = "to-z")]
    d_order: OrderArg,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    gen: GenSpec,
    #[arg(long)]
    space_out: Option<PathBuf>,
    #[arg(long)]
    objective_out: Option<PathBuf>,
}

fn emit(out: &OutArgs, kind: &str, body: &impl Serialize) -> Result<()> {
    let text = report_json(kind, body)?;
    match &out.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => write_stdout(&text),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn write_stdout(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing stdout"),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct SequenceReport {
    limits: LimitVerdict<String>,
    cauchy: CauchyVerdict,
}

#[derive(Serialize)]
struct ValidateReport {
    axioms: AxiomReport,
    separation: Option<SeparationClass>,
    sequence: Option<SequenceReport>,
}

fn classify<S: QuasiMetric>(space: &S, seq: &qpm_ekeland::topology::PointSeq<S::Point>, candidates: &[S::Point], tol: f64) -> Result<SequenceReport>
where
    S::Point: Clone,
{
    let tail = (seq.len() / 4).max(1);
    let v = classify_convergence(space, seq, candidates, tol, tail)?;
    let labels = |ps: Vec<S::Point>| ps.iter().map(|p| space.label(p)).collect();
    let limits = LimitVerdict { d_limits: labels(v.d_limits), dbar_limits: labels(v.dbar_limits), ds_limits: labels(v.ds_limits) };
    let cauchy = classify_cauchy(space, seq, &schedule_for_len(seq.len()))?;
    Ok(SequenceReport { limits, cauchy })
}

fn cmd_validate(a: &ValidateArgs) -> Result<bool> {
    use qpm_ekeland::io::{load_sequence, SequenceSpec};
    let loaded = load(&a.instance, false)?;
    let (axioms, separation) = match &loaded.space {
        QpmSpace::Finite(s) => (validate_axioms(s)?, Some(separation_class(s))),
        QpmSpace::Implicit(s) => (validate_axioms_sampled(s, a.sample)?, None),
    };
    let sequence = match &a.sequence {
        None => None,
        Some(path) => Some(match load_sequence(path, &loaded.space).with_context(|| format!("reading {}", path.display()))? {
            SequenceSpec::Finite(seq) => {
                let s = loaded.space.finite()?;
                classify(s, &seq, &s.points().collect::<Vec<_>>(), a.tol)?
            }
            SequenceSpec::Implicit(seq) => {
                let QpmSpace::Implicit(s) = &loaded.space else { unreachable!("built against this space") };
                classify(s, &seq, &(0..a.sample).map(|k| s.sample(k)).collect::<Vec<_>>(), a.tol)?
            }
        }),
    };
    let pass = axioms.qm1_ok && axioms.qm2_ok;
    emit(&a.out, "axiom_report", &ValidateReport { axioms, separation, sequence })?;
    Ok(pass)
}

#[derive(Serialize)]
struct EkelandReport {
    certificate: EkelandCertificate,
    oracle: Option<OracleResult>,
    cross_check: Option<CrossCheck>,
}

fn cmd_ekeland(a: &EkelandArgs) -> Result<bool> {
    let Loaded { space, f, .. } = load(&a.instance, true)?;
    let space = space.finite()?;
    let f = f.expect("objective requested");
    let x0 = instance::start_point(space, &f, a.x0.as_deref())?;
    let cfg = SolverConfig::default();
    let (certificate, oracle) = match (a.eps, a.lambda, a.lambda_prime) {
        (Some(eps), Some(lambda), None) => {
            let cert = ekeland_point(space, &f, eps, lambda, x0, &cfg)?;
            let oracle = a.oracle.then(|| oracle_ekeland_all(space, &f, eps, lambda, x0, DEFAULT_CAP)).transpose()?;
            (cert, oracle)
        }
        (eps, None, Some(lp)) => {
            let cert = ekeland_point_prime(space, &f, lp, x0, eps, &cfg)?;
            let bound = eps.map(|e| DistanceBound { eps: e, bound: e / lp });
            let oracle = a.oracle.then(|| oracle_ekeland_weighted(space, &f, lp, bound, x0, DEFAULT_CAP)).transpose()?;
            (cert, oracle)
        }
        _ => bail!("give --eps and --lambda, or --lambda-prime (with optional --eps)"),
    };
    let cross = oracle.as_ref().map(|o| cross_check(&certificate, o)).transpose()?;
    let pass = certificate.all_pass() && cross.as_ref().is_none_or(CrossCheck::passed);
    emit(&a.out, "ekeland_certificate", &EkelandReport { certificate, oracle, cross_check: cross })?;
    Ok(pass)
}

#[derive(Serialize)]
struct TraceFile {
    file: String,
    verdict: qpm_ekeland::strong::TraceVerdict,
}

fn trace_dir(t: &ProbeTuning, out: &OutArgs) -> PathBuf {
    t.trace_dir.clone().unwrap_or_else(|| {
        out.out.as_deref().and_then(Path::parent).filter(|p| !p.as_os_str().is_empty()).map_or_else(|| PathBuf::from("."), Path::to_path_buf)
    })
}

fn write_traces(dir: &Path, traces: &[MinimizingTrace]) -> Result<Vec<TraceFile>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    traces
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let name = format!("trace-{k:03}.csv");
            let path = dir.join(&name);
            std::fs::write(&path, t.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            Ok(TraceFile { file: name, verdict: t.verdict.clone() })
        })
        .collect()
}

fn run_probe(loaded: &Loaded, gamma: f64, z: usize, opts: &ProbeOptions) -> Result<Vec<MinimizingTrace>> {
    Ok(match (&loaded.implicit, loaded.formula) {
        (Some(ray), Some(formula)) => {
            let dom = RayDomain { space: *ray, f: formula };
            minimizing_sequence_probe(&dom, gamma, &ray.sample(z), opts)?
        }
        _ => {
            let space = loaded.space.finite()?;
            let f = loaded.f.as_ref().expect("objective requested");
            minimizing_sequence_probe(&FiniteDomain { space, f }, gamma, &z, opts)?
        }
    })
}

#[derive(Serialize)]
struct StrongReport {
    certificate: StrongCertificate,
    oracle: Option<OracleResult>,
    cross_check: Option<CrossCheck>,
    traces: Option<Vec<TraceFile>>,
}

fn cmd_strong(a: &StrongArgs) -> Result<bool> {
    let loaded = load(&a.instance, true)?;
    let space = loaded.space.finite()?;
    let f = loaded.f.as_ref().expect("objective requested");
    let x0 = instance::start_point(space, f, a.x0.as_deref())?;
    let order: DOrder = a.d_order.into();
    let cfg = SolverConfig { d_order: order, mutation: None };
    let (certificate, weight, flavor, delta) = match (a.flavor, a.gamma, a.delta, a.lambda) {
        (FlavorArg::Georgiev, Some(g), Some(d), None) => (strong_ekeland_georgiev(space, f, g, d, x0, &cfg)?, g, Flavor::Georgiev, Some(d)),
        (FlavorArg::Georgiev, ..) => bail!("the georgiev flavor needs --gamma and --delta"),
        (FlavorArg::Suzuki, None, None, Some(l)) => (strong_ekeland_suzuki(space, f, l, x0, &cfg)?, l, Flavor::Suzuki, None),
        (FlavorArg::Suzuki, ..) => bail!("the suzuki flavor needs --lambda only"),
    };
    let oracle = a.oracle.then(|| oracle_strong_all(space, f, weight, delta, x0, flavor, order, DEFAULT_CAP)).transpose()?;
    let cross = oracle.as_ref().map(|o| cross_check(&certificate, o)).transpose()?;
    let traces = match a.probe {
        None => None,
        Some(trials) => {
            let opts = ProbeOptions { trials, horizon: a.tuning.horizon, seed: a.tuning.seed, tol: a.tuning.tol, d_order: order };
            let traces = run_probe(&loaded, a.probe_gamma.unwrap_or(weight), certificate.z, &opts)?;
            Some(write_traces(&trace_dir(&a.tuning, &a.out), &traces)?)
        }
    };
    let pass = certificate.all_pass() && cross.as_ref().is_none_or(CrossCheck::passed);
    emit(&a.out, "strong_certificate", &StrongReport { certificate, oracle, cross_check: cross, traces })?;
    Ok(pass)
}

#[derive(Serialize)]
struct ProbeReport {
    gamma: f64,
    z: String,
    options: ProbeOptions,
    traces: Vec<MinimizingTrace>,
    files: Vec<TraceFile>,
}

fn cmd_probe(a: &ProbeArgs) -> Result<bool> {
    let loaded = load(&a.instance, true)?;
    let z = match (&loaded.implicit, loaded.formula) {
        (Some(ray), Some(_)) => instance::ray_index(ray, a.z.as_deref())?,
        _ => {
            let space = loaded.space.finite()?;
            let f = loaded.f.as_ref().expect("objective requested");
            match &a.z {
                Some(id) => space.index_of(id)?,
                None => instance::argmin(f),
            }
        }
    };
    let opts = ProbeOptions { trials: a.trials, horizon: a.tuning.horizon, seed: a.tuning.seed, tol: a.tuning.tol, d_order: a.d_order.into() };
    let traces = run_probe(&loaded, a.gamma, z, &opts)?;
    let files = write_traces(&trace_dir(&a.tuning, &a.out), &traces)?;
    let label = match &loaded.implicit {
        Some(ray) if loaded.formula.is_some() => format!("{}", ray.sample(z)),
        _ => loaded.space.finite()?.id(z).to_string(),
    };
    emit(&a.out, "probe_report", &ProbeReport { gamma: a.gamma, z: label, options: opts, traces, files })?;
    Ok(true)
}

fn cmd_falsify(a: &FalsifyArgs) -> Result<bool> {
    let cfg = SolverConfig { d_order: a.d_order.into(), mutation: a.mutate.map(Into::into) };
    let report = falsify(a.family.into(), a.budget, a.seed, &cfg)?;
    let pass = report.counterexample.is_none();
    emit(&a.out, "falsify_report", &report)?;
    Ok(pass)
}

#[derive(Serialize)]
struct GenBundle {
    space: SpaceFile,
    objective: ObjectiveFile,
}

fn cmd_gen(a: &GenArgs) -> Result<bool> {
    let (space, f) = a.gen.build()?;
    let bundle = GenBundle { space: SpaceFile::from(&space), objective: ObjectiveFile::from_objective(&space, &f) };
    let mut wrote = false;
    if let Some(p) = &a.space_out {
        std::fs::write(p, serde_json::to_string_pretty(&bundle.space)? + "\n").with_context(|| format!("writing {}", p.display()))?;
        wrote = true;
    }
    if let Some(p) = &a.objective_out {
        std::fs::write(p, serde_json::to_string_pretty(&bundle.objective)? + "\n").with_context(|| format!("writing {}", p.display()))?;
        wrote = true;
    }
    if !wrote {
        write_stdout(&(serde_json::to_string_pretty(&bundle)? + "\n"))?;
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().context("configuring worker threads")?;
    }
    match &cli.cmd {
        Cmd::Validate(a) => cmd_validate(a),
        Cmd::Ekeland(a) => cmd_ekeland(a),
        Cmd::Strong(a) => cmd_strong(a),
        Cmd::Probe(a) => cmd_probe(a),
        Cmd::Falsify(a) => cmd_falsify(a),
        Cmd::Gen(a) => cmd_gen(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
