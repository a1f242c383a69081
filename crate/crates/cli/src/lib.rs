//! Command-line front end tying the workbench together: string cones and
//! polytopes, flat-family construction and integrity checks, gradient-flow
//! transport, width reports, and the acceptance suite behind `check all`.
//! All reports are deterministic JSON; every error path exits nonzero with
//! a JSON error object on standard error.

pub mod acceptance;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use degen::{
    builtin, c_image_cone, dropped_generators_vanish, initial_ideal_summary, subfamily_ideal,
    validate_relations, DegenError, FamilyIdeal,
};
use ghflow::{
    check_invariants, fiber_tangent_frame, integrate, limit_point, FlowError, FlowOptions,
    FlowState, NumericFamily,
};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use polyhedra::num::{rat_parse, rat_str, Int, Rat};
use polyhedra::{faces, lattice_points, volume};
use rootsys::build_root_system;
use serde_json::{json, Value};
use strings::{string_cone, string_polytope};
use width::{ell_lambda, width_report, EmbeddingOutcome, SearchOptions, WidthError};

/// Environment prefix for configuration overrides; unknown keys under the
/// prefix are rejected rather than ignored.
pub const ENV_PREFIX: &str = "TORICWB_";

/// Seed of the randomized property checks unless overridden.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Inconclusive(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Numerical(_) => "numerical",
            CliError::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.to_string(), "kind": self.kind() })
    }
}

impl From<rootsys::RootError> for CliError {
    fn from(e: rootsys::RootError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<strings::StringError> for CliError {
    fn from(e: strings::StringError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<polyhedra::PolyError> for CliError {
    fn from(e: polyhedra::PolyError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<WidthError> for CliError {
    fn from(e: WidthError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DegenError> for CliError {
    fn from(e: DegenError) -> Self {
        match e {
            DegenError::Integrity(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::InvalidTimes(_) | FlowError::BadData(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Resolved run configuration: flow tolerances, limit extrapolation depth,
/// seed and worker count.  All tolerances are positive by construction.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub flow: FlowOptions,
    pub limit_epsilon: f64,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            flow: FlowOptions::default(),
            limit_epsilon: ghflow::DEFAULT_LIMIT_EPSILON,
            seed: DEFAULT_SEED,
            jobs: 1,
        }
    }
}

fn positive(key: &str, raw: &str) -> Result<f64, CliError> {
    let v: f64 = raw
        .parse()
        .map_err(|_| CliError::Validation(format!("{ENV_PREFIX}{key}: cannot parse {raw:?}")))?;
    if !v.is_finite() || v <= 0.0 {
        return Err(CliError::Validation(format!(
            "{ENV_PREFIX}{key} must be positive, got {raw}"
        )));
    }
    Ok(v)
}

/// Build the configuration from environment variables.  Recognized keys:
/// `TORICWB_REL_TOL`, `TORICWB_ABS_TOL`, `TORICWB_PROJ_TOL`,
/// `TORICWB_STRATUM_TOL`, `TORICWB_LIMIT_EPSILON`, `TORICWB_SEED`,
/// `TORICWB_JOBS`.  Anything else under the prefix is an error.
pub fn config_from_env(
    vars: impl IntoIterator<Item = (String, String)>,
) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    for (k, v) in vars {
        let Some(key) = k.strip_prefix(ENV_PREFIX) else {
            continue;
        };
        match key {
            "REL_TOL" => cfg.flow.rel_tol = positive(key, &v)?,
            "ABS_TOL" => cfg.flow.abs_tol = positive(key, &v)?,
            "PROJ_TOL" => cfg.flow.proj_tol = positive(key, &v)?,
            "STRATUM_TOL" => cfg.flow.stratum_tol = positive(key, &v)?,
            "LIMIT_EPSILON" => cfg.limit_epsilon = positive(key, &v)?,
            "SEED" => {
                cfg.seed = v.parse().map_err(|_| {
                    CliError::Validation(format!("{ENV_PREFIX}SEED: cannot parse {v:?}"))
                })?
            }
            "JOBS" => {
                cfg.jobs = v.parse().ok().filter(|&j| j >= 1).ok_or_else(|| {
                    CliError::Validation(format!("{ENV_PREFIX}JOBS must be a positive integer"))
                })?
            }
            other => {
                return Err(CliError::Validation(format!(
                    "unknown configuration key {ENV_PREFIX}{other}"
                )))
            }
        }
    }
    Ok(cfg)
}

#[derive(Parser, Debug)]
#[command(
    name = "toricwb",
    version,
    about = "exact workbench for string polytopes, flat degenerations, gradient flows, and width reports"
)]
pub struct Cli {
    /// worker threads for the acceptance suite; results are reduced in
    /// canonical order, so the report order does not depend on this
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// seed for the randomized property checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// write the primary output to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// string cones and string polytopes
    #[command(subcommand)]
    String(StringCmd),
    /// build and check one-parameter flat families
    #[command(subcommand)]
    Degen(DegenCmd),
    /// gradient-flow transport and zero-fiber limits
    #[command(subcommand)]
    Ghflow(GhflowCmd),
    /// Gromov-width reports
    #[command(subcommand)]
    Width(WidthCmd),
    /// consistency suites
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Subcommand, Debug)]
pub enum StringCmd {
    /// rays and lineality of the string cone of a reduced word
    Cone {
        #[arg(long = "type")]
        type_label: String,
        /// 1-based simple-reflection letters, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
    },
    /// lattice points, volume, and the Weyl-dimension cross-check of the
    /// string polytope at a dominant weight
    Polytope {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        /// fundamental-weight coordinates, rationals like 3 or 1/2
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DegenCmd {
    /// emit a builtin example family as JSON
    Build {
        #[arg(long)]
        example: String,
    },
    /// re-read a family file and report fibers, faces, and integrity
    Check { family: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum GhflowCmd {
    /// integrate the transport flow down to a target parameter value
    Run {
        /// builtin family name (alternative to --family)
        #[arg(long)]
        example: Option<String>,
        /// family JSON file (alternative to --example)
        #[arg(long)]
        family: Option<PathBuf>,
        /// start coordinates, comma-separated, each `re` or `re:im`
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        start: Vec<String>,
        #[arg(long, default_value_t = 1.0)]
        t_start: f64,
        #[arg(long)]
        t_end: f64,
        /// transport the first k vectors of a fiber-tangent frame alongside
        /// the point (pairs {u, iu}, the frame the symplectic check applies to)
        #[arg(long, default_value_t = 0)]
        frame: usize,
    },
    /// extrapolate the zero-fiber limit of the transport flow
    Limit {
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        start: Vec<String>,
        #[arg(long, default_value_t = 1.0)]
        t_start: f64,
        /// smallest parameter integrated to before extrapolating
        #[arg(long)]
        epsilon: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum WidthCmd {
    /// ℓ_λ, both volume computations, and a simplex certificate search
    Report {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// simplex size to search for (default: ℓ_λ)
        #[arg(long)]
        size: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// run every acceptance criterion and print one line per result
    All,
}

/// Output of a subcommand: the rendered primary output plus an optional
/// soft failure that is reported on stderr after the output is written.
pub struct Outcome {
    pub stdout: String,
    pub error: Option<CliError>,
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn ok_json(v: Value) -> Result<Outcome, CliError> {
    Ok(Outcome {
        stdout: line(v),
        error: None,
    })
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::String(StringCmd::Cone { type_label, word }) => {
            ok_json(cmd_string_cone(type_label, word)?)
        }
        Command::String(StringCmd::Polytope {
            type_label,
            word,
            lambda,
        }) => ok_json(cmd_string_polytope(type_label, word, lambda)?),
        Command::Degen(DegenCmd::Build { example }) => ok_json(cmd_degen_build(example)?),
        Command::Degen(DegenCmd::Check { family }) => {
            let (v, soft) = cmd_degen_check(family)?;
            Ok(Outcome {
                stdout: line(v),
                error: soft,
            })
        }
        Command::Ghflow(GhflowCmd::Run {
            example,
            family,
            start,
            t_start,
            t_end,
            frame,
        }) => ok_json(cmd_ghflow_run(
            example, family, start, *t_start, *t_end, *frame, cfg,
        )?),
        Command::Ghflow(GhflowCmd::Limit {
            example,
            family,
            start,
            t_start,
            epsilon,
        }) => ok_json(cmd_ghflow_limit(
            example, family, start, *t_start, *epsilon, cfg,
        )?),
        Command::Width(WidthCmd::Report {
            type_label,
            word,
            lambda,
            size,
        }) => {
            let (v, soft) = cmd_width_report(type_label, word, lambda, size.as_deref())?;
            Ok(Outcome {
                stdout: line(v),
                error: soft,
            })
        }
        Command::Check(CheckCmd::All) => {
            let results = acceptance::run_acceptance(cfg.jobs, cfg.seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            let soft = (failed > 0)
                .then(|| CliError::Numerical(format!("{failed} acceptance criteria failed")));
            Ok(Outcome {
                stdout: acceptance::render_lines(&results),
                error: soft,
            })
        }
    }
}

fn parse_lambda(raw: &[String]) -> Result<Vec<Rat>, CliError> {
    raw.iter()
        .map(|s| {
            rat_parse(s.trim())
                .ok_or_else(|| CliError::Validation(format!("cannot parse rational {s:?}")))
        })
        .collect()
}

fn parse_start(raw: &[String]) -> Result<Vec<Complex64>, CliError> {
    raw.iter()
        .map(|tok| {
            let t = tok.trim();
            let (re, im) = match t.split_once(':') {
                Some((a, b)) => (a, b),
                None => (t, "0"),
            };
            let bad = || CliError::Validation(format!("cannot parse coordinate {tok:?}"));
            Ok(Complex64::new(
                re.parse().map_err(|_| bad())?,
                im.parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn int_rows_json(rows: &[Vec<Int>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn cmd_string_cone(type_label: &str, word: &[usize]) -> Result<Value, CliError> {
    let rs = build_root_system(type_label)?;
    let sc = string_cone(&rs, word)?;
    Ok(json!({
        "type": type_label,
        "word": word,
        "rays": int_rows_json(&sc.cone.rays),
        "lineality": int_rows_json(&sc.cone.lineality),
    }))
}

pub fn cmd_string_polytope(
    type_label: &str,
    word: &[usize],
    lambda: &[String],
) -> Result<Value, CliError> {
    let rs = build_root_system(type_label)?;
    let lam = parse_lambda(lambda)?;
    let p = string_polytope(&rs, word, &lam)?;
    let count = lattice_points(&p).len();
    let vol = volume(&p);
    // the cross-check is only defined for integral weights
    let weyl_dim = rs
        .weyl_dim(&lam)
        .ok()
        .and_then(|d| d.to_i64())
        .map(Value::from)
        .unwrap_or(Value::Null);
    Ok(json!({
        "lattice_points": count,
        "volume": rat_str(&vol),
        "weyl_dim": weyl_dim,
    }))
}

pub fn cmd_degen_build(example: &str) -> Result<Value, CliError> {
    let ex = builtin(example)?;
    Ok(ex.family()?.to_json())
}

pub fn cmd_degen_check(path: &Path) -> Result<(Value, Option<CliError>), CliError> {
    let text = std::fs::read_to_string(path)?;
    let raw: Value = serde_json::from_str(&text)?;
    let family = FamilyIdeal::from_json(&raw)?;
    validate_relations(&family.valuation, &family.relations)?;
    let summary = initial_ideal_summary(&family)?;
    let image = c_image_cone(&family.valuation);
    let lattice = faces(&image)?;
    let mut face_reports = Vec::new();
    let mut consistent = true;
    for entry in &lattice.faces {
        let sub = subfamily_ideal(&family, &entry.cone)?;
        let dropped_vanish = dropped_generators_vanish(&family, &sub);
        consistent &= dropped_vanish;
        face_reports.push(json!({
            "codim": entry.codim,
            "ray_indices": entry.ray_indices,
            "kept_relations": sub.kept_relations,
            "vanishing_coordinates": sub.vanishing_coordinates,
            "dropped_generators_vanish": dropped_vanish,
        }));
    }
    let report = json!({
        "relations": family.relations.len(),
        "t_exponents": family.t_exponents.iter().map(|row| {
            row.iter().map(|m| m.to_string()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "initial_ideal": summary.to_json(),
        "faces": face_reports,
        "consistent": consistent,
    });
    let soft = (!consistent)
        .then(|| CliError::Numerical("face subfamilies are inconsistent".into()));
    Ok((report, soft))
}

fn load_family(
    example: &Option<String>,
    file: &Option<PathBuf>,
) -> Result<NumericFamily, CliError> {
    let ideal = match (example, file) {
        (Some(name), None) => builtin(name)?.family()?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let raw: Value = serde_json::from_str(&text)?;
            FamilyIdeal::from_json(&raw)?
        }
        _ => {
            return Err(CliError::Validation(
                "provide exactly one of --example or --family".into(),
            ))
        }
    };
    Ok(NumericFamily::from_family(&ideal)?)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_ghflow_run(
    example: &Option<String>,
    family_file: &Option<PathBuf>,
    start: &[String],
    t_start: f64,
    t_end: f64,
    frame: usize,
    cfg: &RunConfig,
) -> Result<Value, CliError> {
    let family = load_family(example, family_file)?;
    let z = parse_start(start)?;
    let mut state = FlowState::new(z.clone(), t_start);
    if frame > 0 {
        let basis = fiber_tangent_frame(&family, &state)?;
        if frame > basis.len() {
            return Err(CliError::Validation(format!(
                "frame size {frame} exceeds the fiber dimension {}",
                basis.len()
            )));
        }
        state = FlowState::with_frame(z, t_start, basis[..frame].to_vec());
    }
    let trajectory = integrate(&family, &state, t_end, &cfg.flow)?;
    let invariants = check_invariants(&trajectory, &family)?;
    Ok(json!({
        "invariants": invariants.to_json(),
        "trajectory": trajectory.to_json(),
    }))
}

pub fn cmd_ghflow_limit(
    example: &Option<String>,
    family_file: &Option<PathBuf>,
    start: &[String],
    t_start: f64,
    epsilon: Option<f64>,
    cfg: &RunConfig,
) -> Result<Value, CliError> {
    let family = load_family(example, family_file)?;
    let z = parse_start(start)?;
    let eps = epsilon.unwrap_or(cfg.limit_epsilon);
    if !eps.is_finite() || eps <= 0.0 {
        return Err(CliError::Validation("epsilon must be positive".into()));
    }
    let lp = limit_point(&family, &FlowState::new(z, t_start), eps, &cfg.flow)?;
    Ok(json!({
        "epsilon": eps,
        "limit": lp.to_json(),
    }))
}

pub fn cmd_width_report(
    type_label: &str,
    word: &[usize],
    lambda: &[String],
    size: Option<&str>,
) -> Result<(Value, Option<CliError>), CliError> {
    let rs = build_root_system(type_label)?;
    let lam = parse_lambda(lambda)?;
    let ell = match ell_lambda(&rs, &lam) {
        Ok(ell) => ell,
        Err(WidthError::PointOrbit) => {
            // width 0: nothing to search, not an error
            return Ok((
                json!({
                    "lambda": lam.iter().map(rat_str).collect::<Vec<_>>(),
                    "ell": "0",
                    "warning": "the orbit of the zero weight is a single point; its width is 0 and there is nothing to search",
                }),
                None,
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let mut opts = SearchOptions::default();
    if let Some(s) = size {
        let target = rat_parse(s.trim())
            .ok_or_else(|| CliError::Validation(format!("cannot parse size {s:?}")))?;
        // the search runs at ell − shrink, so aim the shrink at the target
        opts.shrink = &ell - &target;
    }
    let report = width_report(&rs, word, &lam, &opts)?;
    let soft = match &report.outcome {
        EmbeddingOutcome::Inconclusive { reason } => Some(CliError::Inconclusive(format!(
            "certificate search inconclusive: {reason}"
        ))),
        _ => None,
    };
    Ok((report.to_json(), soft))
}
