//! Command implementations behind the `roadmap` binary.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use roadmap_core::baselines::{generate_baseline, BaselineConfig, BaselineMethod};
use roadmap_core::discretize::GridConfig;
use roadmap_core::edges::EdgeConfig;
use roadmap_core::metrics::evaluate;
use roadmap_core::pipeline::{check_invariants, generate, GenerateConfig, InvariantSet, Stage};
use roadmap_core::smooth::{smooth_roadmap, Smoothing};
use roadmap_core::{Environment, Roadmap, TransportMatrix};

use crate::io::{self, IoError};
use crate::render::{render_svg, RenderStyle};
use crate::report;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let code = match &e {
            IoError::Model { source, .. } if source.is_infeasible_demand() => EXIT_INFEASIBLE,
            _ => EXIT_VALIDATION,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<roadmap_core::Error> for CliError {
    fn from(e: roadmap_core::Error) -> Self {
        CliError {
            code: if e.is_infeasible_demand() { EXIT_INFEASIBLE } else { EXIT_VALIDATION },
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "roadmap", version, about = "Demand-driven roadmaps for mobile robot fleets")]
pub struct Cli {
    /// More log output (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Only log errors.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an optimized roadmap.
    Generate(GenerateArgs),
    /// Generate a comparison roadmap.
    Baseline(BaselineArgs),
    /// Evaluate one or more roadmaps.
    Eval(EvalArgs),
    /// Render a roadmap as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Environment JSON.
    #[arg(long)]
    pub env: PathBuf,
    /// Transport matrix JSON.
    #[arg(long)]
    pub demand: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    Visibility,
    Full,
    Reduced,
    Planar,
    Optimized,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::Visibility => Stage::Visibility,
            StageArg::Full => Stage::Full,
            StageArg::Reduced => Stage::Reduced,
            StageArg::Planar => Stage::Planar,
            StageArg::Optimized => Stage::Optimized,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Output roadmap JSON.
    #[arg(long)]
    pub out: PathBuf,
    /// Also render the written roadmap.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Pipeline stage to write.
    #[arg(long, value_enum, default_value = "optimized")]
    pub stage: StageArg,
    /// Upper bound on paths per demand pair.
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Edge-cost penalty base.
    #[arg(long)]
    pub penalty_base: Option<f64>,
    /// Smoothing margin; adds the smoothed overlay to the SVG.
    #[arg(long)]
    pub d_ad: Option<f64>,
    /// Local grid resolution in meters.
    #[arg(long)]
    pub grid_res: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Grid4,
    Grid8,
    Random,
}

impl From<MethodArg> for BaselineMethod {
    fn from(m: MethodArg) -> BaselineMethod {
        match m {
            MethodArg::Grid4 => BaselineMethod::Grid4,
            MethodArg::Grid8 => BaselineMethod::Grid8,
            MethodArg::Random => BaselineMethod::Random,
        }
    }
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Seed for random sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Roadmap JSON files.
    #[arg(long, num_args = 1.., required = true)]
    pub roadmap: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Mark the best roadmap per metric.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub env: PathBuf,
    #[arg(long)]
    pub roadmap: PathBuf,
    /// Add the smoothed overlay.
    #[arg(long)]
    pub smooth: bool,
    /// Smoothing margin; defaults to the safety distance.
    #[arg(long)]
    pub d_ad: Option<f64>,
    /// Pixels per meter.
    #[arg(long, default_value_t = 20.0)]
    pub scale: f64,
    #[arg(long)]
    pub out: PathBuf,
}

fn load_inputs(inputs: &Inputs) -> Result<(Environment, TransportMatrix), CliError> {
    let env = io::load_environment(&inputs.env)?;
    let demand = io::load_transport(&inputs.demand, &env)?;
    Ok((env, demand))
}

fn display_name(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| p.display().to_string())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Baseline(a) => cmd_baseline(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Render(a) => cmd_render(&a),
    }
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<(), CliError> {
    let (env, demand) = load_inputs(&a.inputs)?;
    let mut cfg = GenerateConfig::for_environment(&env);
    if let Some(d_g) = a.grid_res {
        cfg.grid = GridConfig::with_resolution(&env, d_g);
        cfg.edges = EdgeConfig::for_resolution(d_g);
    }
    if let Some(k) = a.k_max {
        cfg.policy.k_max = k;
    }
    if let Some(b) = a.penalty_base {
        cfg.policy.base = b;
    }
    let smoothing = a.d_ad.map(|d| Smoothing::new(d, env.robot())).transpose()?;
    info!(
        "grid resolution {:.2} m, local grids up to size {}, k_max {}, penalty base {}",
        cfg.grid.d_g, cfg.grid.max_size, cfg.policy.k_max, cfg.policy.base
    );
    let g = generate(&env, &demand, &cfg)?;
    let stage = Stage::from(a.stage);
    let rm = g.stage(stage);
    info!(
        "{} roadmap: {} nodes, {} edges",
        stage.as_str(),
        rm.node_count(),
        rm.edge_count()
    );
    if stage == Stage::Optimized {
        let problems = check_invariants(rm, &env, InvariantSet::ALL);
        if !problems.is_empty() {
            return Err(CliError::validation(format!("generated roadmap violates constraints: {}", problems.join("; "))));
        }
    }
    io::save_roadmap(&a.out, rm)?;
    if let Some(svg) = &a.svg {
        write_svg(svg, &env, rm, smoothing.as_ref(), &RenderStyle::default())?;
    }
    Ok(())
}

pub fn cmd_baseline(a: &BaselineArgs) -> Result<(), CliError> {
    let (env, demand) = load_inputs(&a.inputs)?;
    let cfg = BaselineConfig::new(a.method.into(), a.seed, &env);
    info!("{} spacing {:.2} m", cfg.method.as_str(), cfg.spacing);
    let rm = generate_baseline(&env, &demand, &cfg, &Default::default())?;
    info!("{} roadmap: {} nodes, {} edges", cfg.method.as_str(), rm.node_count(), rm.edge_count());
    io::save_roadmap(&a.out, &rm)?;
    Ok(())
}

pub fn cmd_eval(a: &EvalArgs) -> Result<(), CliError> {
    let (env, demand) = load_inputs(&a.inputs)?;
    let mut named = Vec::with_capacity(a.roadmap.len());
    for p in &a.roadmap {
        let rm = io::load_roadmap(p)?;
        let report = evaluate(&rm, &env, &demand).map_err(|e| CliError::from(e).context(&display_name(p)))?;
        for &(i, j) in &report.disconnected {
            let ips = env.interaction_points();
            log::warn!("{}: {} and {} are not connected", display_name(p), ips[i].id, ips[j].id);
        }
        named.push((display_name(p), report));
    }
    let text = match a.format {
        Format::Table => report::to_table(&named, a.compare),
        Format::Json => report::to_json(&named, a.compare),
    };
    print!("{text}");
    Ok(())
}

pub fn cmd_render(a: &RenderArgs) -> Result<(), CliError> {
    let env = io::load_environment(&a.env)?;
    let rm = io::load_roadmap(&a.roadmap)?;
    let style = RenderStyle {
        scale: a.scale,
        ..RenderStyle::default()
    };
    style.validate().map_err(CliError::validation)?;
    let smoothing = match (a.smooth, a.d_ad) {
        (false, _) => None,
        (true, Some(d)) => Some(Smoothing::new(d, env.robot())?),
        (true, None) => Some(Smoothing::for_robot(env.robot())),
    };
    write_svg(&a.out, &env, &rm, smoothing.as_ref(), &style)
}

fn write_svg(
    path: &Path,
    env: &Environment,
    rm: &Roadmap,
    smoothing: Option<&Smoothing>,
    style: &RenderStyle,
) -> Result<(), CliError> {
    let blends = smoothing.map(|s| smooth_roadmap(rm, s));
    let svg = render_svg(env, rm, blends.as_deref(), style);
    io::write_text(path, &svg)?;
    Ok(())
}

impl CliError {
    fn context(mut self, what: &str) -> CliError {
        self.message = format!("{what}: {}", self.message);
        self
    }
}
