//! Command-line frontend for `gqnm`. All computation lives in the library;
//! this crate parses flags and config files and writes output.

pub mod config;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gqnm::analytics::{
    bep_total, match_power_laplace, match_power_motg, solve_mixture_weight, transmit_power,
};
use gqnm::experiments::{
    format_number, sweep_with_workers, to_csv, to_svg, Profile, SweepSpec, SweepVariable,
    DEFAULT_SAMPLES_PER_SYMBOL, DEFAULT_SIGMA_W,
};
use gqnm::modem::SchemeParams;
use gqnm::montecarlo::{run_with_workers, TrialPlan};
use gqnm::noise::{Family, MomentFidelity};
use gqnm::validation::run_checks;

use config::{DetectorName, FamilyName, FidelityName, PresetName, RunConfig, TheoryModeName};

const DEFAULT_SYMBOLS: u64 = 1_000_000;
const DEFAULT_SEED: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] gqnm::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0} validation check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    /// 0 success, 1 bad input or I/O, 2 unsupported theory or infeasible
    /// power, 3 failed validation checks.
    pub fn exit_code(&self) -> u8 {
        fn model(e: &gqnm::Error) -> u8 {
            match e {
                gqnm::Error::InvalidInput(_) => 1,
                gqnm::Error::UnsupportedTheory(_) | gqnm::Error::InfeasiblePower { .. } => 2,
                gqnm::Error::SweepPoint { source, .. } => model(source),
            }
        }
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Model(e) => model(e),
            CliError::ChecksFailed(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gqnm",
    version,
    about = "Noise modulation simulator: closed-form and Monte Carlo bit error probabilities"
)]
pub struct Cli {
    /// JSON run configuration; command-line flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads for Monte Carlo runs (0 = all cores).
    #[arg(long, global = true, env = "GQNM_WORKERS", default_value_t = 0)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print closed-form error probabilities for one operating point.
    Theory(PointArgs),
    /// Run one Monte Carlo operating point.
    Simulate(PointArgs),
    /// Run a sigma_w or N sweep and export CSV (and optionally SVG).
    Sweep(SweepArgs),
    /// Solve lambda1 (laplace) or sigma1_high / p (motg) for a target power.
    PowerMatch(PowerArgs),
    /// Run the invariant self-checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct PointArgs {
    /// Restrict to schemes of one noise family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Samples per symbol.
    #[arg(long = "n", short = 'n')]
    pub samples: Option<usize>,
    #[arg(long)]
    pub sigma_w: Option<f64>,
    #[arg(long)]
    pub symbols: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub theory_mode: Option<TheoryModeName>,
    #[arg(long, value_enum)]
    pub fidelity: Option<FidelityName>,
    #[arg(long, value_enum)]
    pub detector: Option<DetectorName>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum, conflicts_with_all = ["variable", "grid"])]
    pub preset: Option<PresetName>,
    /// `sigma_w` or `N`.
    #[arg(long, requires = "grid")]
    pub variable: Option<String>,
    /// Comma-separated, strictly increasing grid values.
    #[arg(long, value_delimiter = ',', requires = "variable")]
    pub grid: Option<Vec<f64>>,
    /// CSV output path; CSV goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PowerArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Target average transmit power in V^2 (default: the built-in Gaussian alphabet's).
    #[arg(long)]
    pub target: Option<f64>,
    #[arg(long = "mL")]
    pub m_low: Option<f64>,
    #[arg(long = "mH")]
    pub m_high: Option<f64>,
    #[arg(long)]
    pub lambda0: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub sigma0_low: Option<f64>,
    #[arg(long)]
    pub sigma1_low: Option<f64>,
    #[arg(long)]
    pub sigma0_high: Option<f64>,
    /// With motg: fix sigma1_high and solve for the mixture weight instead.
    #[arg(long)]
    pub sigma1_high: Option<f64>,
    #[arg(long, value_enum)]
    pub fidelity: Option<FidelityName>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 100_000)]
    pub symbols: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Parses `args` and runs the command, writing results to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig {
            schema_version: config::SCHEMA_VERSION,
            ..Default::default()
        },
    };
    let workers = cli.workers;
    match cli.command {
        Command::Theory(a) => theory(merge(&mut cfg, &a), &a, out),
        Command::Simulate(a) => simulate(merge(&mut cfg, &a), &a, workers, out),
        Command::Sweep(a) => sweep(&mut cfg, &a, workers, out),
        Command::PowerMatch(a) => power_match(&cfg, &a, out),
        Command::Validate(a) => validate(&cfg, &a, workers, out),
    }
}

fn merge<'a>(cfg: &'a mut RunConfig, a: &PointArgs) -> &'a RunConfig {
    if a.samples.is_some() {
        cfg.samples_per_symbol = a.samples;
    }
    if a.sigma_w.is_some() {
        cfg.sigma_w = a.sigma_w;
    }
    if a.symbols.is_some() {
        cfg.num_symbols = a.symbols;
    }
    if a.seed.is_some() {
        cfg.seed = a.seed;
    }
    if a.theory_mode.is_some() {
        cfg.theory_mode = a.theory_mode;
    }
    if a.fidelity.is_some() {
        cfg.fidelity = a.fidelity;
    }
    if a.detector.is_some() {
        cfg.detector = a.detector;
    }
    cfg
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(format!("write failed: {e}"))
}

fn samples(cfg: &RunConfig) -> usize {
    cfg.samples_per_symbol.unwrap_or(DEFAULT_SAMPLES_PER_SYMBOL)
}

fn sigma_w(cfg: &RunConfig) -> f64 {
    cfg.sigma_w.unwrap_or(DEFAULT_SIGMA_W)
}

fn theory(cfg: &RunConfig, a: &PointArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let n = samples(cfg);
    let sw = sigma_w(cfg);
    let schemes = cfg.schemes(n, a.family)?;
    // an explicit request for an unsupported family is an error; otherwise
    // such rows are marked n/a
    let explicit = a.family.is_some();
    let mut text = String::from("scheme,N,sigma_w,theory_pb0,theory_pb1,theory_pb\n");
    for named in &schemes {
        let cols = match bep_total(&named.scheme, sw, n, cfg.theory_options()) {
            Ok(t) => [t.p_b0, t.p_b1, t.p_b].map(format_number).join(","),
            Err(gqnm::Error::UnsupportedTheory(_)) if !explicit => "n/a,n/a,n/a".into(),
            Err(e) => return Err(e.into()),
        };
        text += &format!("{},{n},{},{cols}\n", named.name, format_number(sw));
    }
    out.write_all(text.as_bytes()).map_err(io)
}

fn simulate(
    cfg: &RunConfig,
    a: &PointArgs,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let n = samples(cfg);
    let sw = sigma_w(cfg);
    let symbols = cfg.num_symbols.unwrap_or(DEFAULT_SYMBOLS);
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let detector = cfg.detector.map(Into::into).unwrap_or_default();
    let mut text = String::from("scheme,N,sigma_w,symbols,sim_pb0,sim_pb1,sim_pb,se_pb0,se_pb1\n");
    for named in cfg.schemes(n, a.family)? {
        let plan = TrialPlan::new(named.scheme, sw, symbols, seed)?.with_detector(detector);
        let sim = run_with_workers(&plan, workers);
        let cols = [sim.p_b0, sim.p_b1, sim.p_b, sim.se_b0, sim.se_b1]
            .map(format_number)
            .join(",");
        text += &format!(
            "{},{n},{},{symbols},{cols}\n",
            named.name,
            format_number(sw)
        );
    }
    out.write_all(text.as_bytes()).map_err(io)
}

fn sweep(
    cfg: &mut RunConfig,
    a: &SweepArgs,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    merge(cfg, &a.point);
    if a.preset.is_some() || a.variable.is_some() {
        cfg.sweep = Some(config::SweepConfig {
            preset: a.preset,
            variable: a.variable.clone(),
            grid: a.grid.clone(),
        });
    }
    let sel = cfg.sweep.clone().ok_or_else(|| {
        CliError::Config(
            "sweep needs --preset or --variable/--grid (or a `sweep` config entry)".into(),
        )
    })?;
    let profile = cfg.profile()?;
    let symbols = cfg.num_symbols.unwrap_or(DEFAULT_SYMBOLS);
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let (variable, grid) = match sel.preset {
        Some(PresetName::Fig4) => (
            SweepVariable::SigmaW,
            SweepSpec::fig4(&profile, 1, 0)?.grid().to_vec(),
        ),
        Some(PresetName::Fig5) => (
            SweepVariable::SamplesN,
            SweepSpec::fig5(&profile, 1, 0)?.grid().to_vec(),
        ),
        None => {
            let name = sel.variable.unwrap_or_default();
            let variable = SweepVariable::from_name(&name).ok_or_else(|| {
                CliError::Config(format!(
                    "field `sweep.variable`: expected `sigma_w` or `N`, got {name:?}"
                ))
            })?;
            (variable, sel.grid.unwrap_or_default())
        }
    };
    // Samples per symbol is the swept quantity in an N sweep; the schemes are
    // rebuilt per point there, so any N works for construction.
    let schemes = cfg.schemes(samples(cfg), a.point.family)?;
    let spec = SweepSpec::new(variable, grid, schemes, sigma_w(cfg), symbols, seed)
        .map_err(|e| match e {
            gqnm::Error::InvalidInput(msg) => CliError::Config(format!("sweep: {msg}")),
            other => other.into(),
        })?
        .with_theory(cfg.theory_options())
        .with_detector(cfg.detector.map(Into::into).unwrap_or_default());
    let result = sweep_with_workers(&spec, workers)?;

    let csv = to_csv(&result);
    let outputs = cfg.output.clone().unwrap_or_default();
    let csv_path = a.out.clone().or(outputs.csv);
    let svg_path = a.svg.clone().or(outputs.svg);
    // render everything before touching the filesystem
    let svg = svg_path.as_ref().map(|_| to_svg(&result)).transpose()?;
    let mut files: Vec<(PathBuf, Vec<u8>)> = Vec::new();
    if let Some(p) = &csv_path {
        files.push((p.clone(), csv.clone().into_bytes()));
    }
    if let (Some(p), Some(svg)) = (&svg_path, svg) {
        files.push((p.clone(), svg.into_bytes()));
    }
    write_all_atomic(&files)?;
    if csv_path.is_none() {
        out.write_all(csv.as_bytes()).map_err(io)?;
    }
    Ok(())
}

/// Stages every file next to its destination, then renames them into place,
/// so a failure never leaves a partially written output.
fn write_all_atomic(files: &[(PathBuf, Vec<u8>)]) -> Result<(), CliError> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)
            .map_err(|e| CliError::Io(format!("cannot create a file in {}: {e}", dir.display())))?;
        tmp.write_all(bytes)
            .and_then(|_| tmp.flush())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path)
            .map_err(|e| CliError::Io(format!("cannot write {}: {}", path.display(), e.error)))?;
    }
    Ok(())
}

fn power_match(cfg: &RunConfig, a: &PowerArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let profile: Profile = cfg.profile()?;
    let target = match a.target {
        Some(t) => t,
        None => profile.target_power()?,
    };
    let m_low = a.m_low.unwrap_or(profile.m_low);
    let m_high = a.m_high.unwrap_or(profile.m_high);
    let fidelity: MomentFidelity = a
        .fidelity
        .or(cfg.fidelity)
        .map(Into::into)
        .unwrap_or_default();
    let text = match a.family {
        FamilyName::Laplace => {
            let lambda0 = a.lambda0.unwrap_or(profile.lambda0);
            let lambda1 = match_power_laplace(target, lambda0, m_low, m_high)?;
            let check = transmit_power(
                &SchemeParams::glap(m_low, m_high, lambda0, lambda1, 1)?,
                fidelity,
            )?;
            format!(
                "lambda1 = {}\npower = {}\n",
                format_number(lambda1),
                format_number(check)
            )
        }
        FamilyName::Motg => {
            let s0l = a.sigma0_low.unwrap_or(profile.sigma0_low);
            let s1l = a.sigma1_low.unwrap_or(profile.sigma1_low);
            let s0h = a.sigma0_high.unwrap_or(profile.sigma0_high);
            match a.sigma1_high {
                Some(s1h) => {
                    let p =
                        solve_mixture_weight(target, s0l, s1l, s0h, s1h, m_low, m_high, fidelity)?;
                    format!("p = {}\n", format_number(p))
                }
                None => {
                    let p = a.p.unwrap_or(profile.mixture_p);
                    let s1h = match_power_motg(target, p, s0l, s1l, s0h, m_low, m_high, fidelity)?;
                    let check = transmit_power(
                        &SchemeParams::motg(m_low, m_high, p, s0l, s1l, s0h, s1h, 1)?,
                        fidelity,
                    )?;
                    format!(
                        "sigma1_high = {}\npower = {}\n",
                        format_number(s1h),
                        format_number(check)
                    )
                }
            }
        }
        FamilyName::Gaussian => {
            return Err(CliError::Config(format!(
                "power-match solves for the {} or {} family; the Gaussian alphabet sets the target",
                Family::Laplacian,
                Family::Mixture
            )))
        }
    };
    out.write_all(text.as_bytes()).map_err(io)
}

fn validate(
    cfg: &RunConfig,
    a: &ValidateArgs,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let seed = a.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let checks = run_checks(&cfg.profile()?, a.symbols, seed, workers)?;
    let mut text = String::new();
    for c in &checks {
        text += &format!(
            "[{}] {}: {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    text += &format!("{} passed, {failed} failed\n", checks.len() - failed);
    out.write_all(text.as_bytes()).map_err(io)?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
