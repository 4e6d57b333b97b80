//! Drivers behind the command line: run manifests, deterministic JSON
//! artifacts, and the eliminate/model/discriminant/regions pipelines as
//! plain functions over parsed inputs.
//!
//! Every artifact embeds the manifest verbatim, so a rerun with the same
//! manifest reproduces the file bit for bit. Wall-clock timings are the one
//! thing that cannot be reproducible; they go to a separate sidecar file and
//! never into a result artifact.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::discvar::{
    allee_system, discriminant_candidates_seeded, format_system, parse_system, BoundaryFilter,
    CandidateSet, DiscvarError, ElimMethod, ParametricSystem, SignConstraint, SystemError,
};
use crate::dixon::dixon_resultant_seeded;
use crate::factor::distinct_factors;
use crate::poly::{parse_polynomial, Polynomial};
use crate::rat::{format_rational, parse_rational};
use crate::regions::{classify, CountMode, Iv, RegionReport};
use crate::reschain::{res_chain_branching, res_chain_simple, ChainStatus, EliminationResult};

pub const FORMAT_VERSION: u32 = 1;

/// Everything that determines a run's output, recorded verbatim in every
/// artifact. The parallelism degree is deliberately absent: results must not
/// depend on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: String,
    pub input: String,
    pub method: Option<String>,
    pub boundary: Option<String>,
    pub variable_order: Vec<String>,
    pub parameter_order: Vec<String>,
    pub pivot: usize,
    /// Flattened window bounds, two strings per parameter.
    #[serde(rename = "box")]
    pub window: Option<Vec<String>>,
    pub mode: Option<String>,
    pub seed: u64,
    pub timeout: Option<u64>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    /// Bad input text: system files, candidate files, flag values. Exit 1.
    Parse(String),
    /// Elimination degenerated to the zero polynomial. Exit 2.
    FailedZero(String),
    /// No parameter value gives the system a solution. Exit 3.
    EmptySystem(String),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Parse(_) => 1,
            PipelineError::FailedZero(_) => 2,
            PipelineError::EmptySystem(_) => 3,
        }
    }
}

impl std::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PipelineError::Parse(m) => write!(f, "{m}"),
            PipelineError::FailedZero(m) => write!(f, "{m}"),
            PipelineError::EmptySystem(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<SystemError> for PipelineError {
    fn from(e: SystemError) -> Self {
        PipelineError::Parse(e.to_string())
    }
}

impl From<DiscvarError> for PipelineError {
    fn from(e: DiscvarError) -> Self {
        match e {
            DiscvarError::FailedZero { .. } => PipelineError::FailedZero(e.to_string()),
            DiscvarError::Degenerate { .. } => PipelineError::FailedZero(e.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Parse a system file and apply the command-line reinterpretations: an
/// explicit variable/parameter split, an elimination order, and a pivot
/// rotation of the equation list. All names must already be declared in the
/// file; the split must cover every declared indeterminate.
pub fn resolve_system(
    src: &str,
    vars: Option<&[String]>,
    params: Option<&[String]>,
    order: Option<&[String]>,
    pivot: usize,
) -> Result<ParametricSystem, PipelineError> {
    let sys = parse_system(src)?;
    let ctx = sys.ctx().clone();
    let lookup = |name: &String| {
        ctx.index_of(name)
            .ok_or_else(|| PipelineError::Parse(format!("unknown indeterminate `{name}`")))
    };

    let mut sys = match (vars, params) {
        (None, None) => sys,
        (v, p) => {
            let new_vars: Vec<usize> = match v {
                Some(v) => v.iter().map(lookup).collect::<Result<_, _>>()?,
                None => sys.variables.clone(),
            };
            let new_params: Vec<usize> = match p {
                Some(p) => p.iter().map(lookup).collect::<Result<_, _>>()?,
                None => sys.parameters.clone(),
            };
            let mut seen = new_vars.clone();
            seen.extend(&new_params);
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != ctx.len() || new_vars.is_empty() || new_params.is_empty() {
                return Err(PipelineError::Parse(
                    "vars and params must split the declared indeterminates".into(),
                ));
            }
            let signs = new_vars
                .iter()
                .map(|v| match sys.variables.iter().position(|w| w == v) {
                    Some(i) => sys.signs[i],
                    None => SignConstraint::Free,
                })
                .collect();
            ParametricSystem::new(sys.equations, new_vars, new_params, signs)
        }
    };

    if let Some(order) = order {
        let idx: Vec<usize> = order.iter().map(lookup).collect::<Result<_, _>>()?;
        let mut check = idx.clone();
        check.sort_unstable();
        let mut have = sys.variables.clone();
        have.sort_unstable();
        if check != have {
            return Err(PipelineError::Parse(
                "order must be a permutation of the variables".into(),
            ));
        }
        let signs = idx
            .iter()
            .map(|v| sys.signs[sys.variables.iter().position(|w| w == v).unwrap()])
            .collect();
        sys = ParametricSystem::new(sys.equations, idx, sys.parameters, signs);
    }

    if pivot >= sys.equations.len() {
        return Err(PipelineError::Parse(format!(
            "pivot {} out of range for {} equations",
            pivot,
            sys.equations.len()
        )));
    }
    sys.equations.rotate_left(pivot);
    Ok(sys)
}

pub fn names_of(sys: &ParametricSystem, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| sys.ctx().name(i).to_string()).collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EliminateArtifact<'a> {
    format_version: u32,
    manifest: &'a RunManifest,
    status: &'static str,
    polynomials: Vec<String>,
    branch_count: usize,
    isolated: Vec<IsolatedFactor>,
}

#[derive(Serialize)]
struct IsolatedFactor {
    variable: String,
    polynomial: String,
}

fn status_str(s: ChainStatus) -> &'static str {
    match s {
        ChainStatus::Complete => "complete",
        ChainStatus::FailedZero => "failed-zero",
        ChainStatus::EmptySystem => "empty-system",
    }
}

pub struct EliminateRun {
    pub json: String,
    pub status: ChainStatus,
    pub timings: Vec<StageTiming>,
}

/// Eliminate the system's variables from its equations by the requested
/// method and render the factor-set artifact. Chain failures are part of the
/// artifact (status plus the zero polynomial); a degenerate Dixon matrix is
/// an error because it leaves nothing to report.
pub fn run_eliminate(
    sys: &ParametricSystem,
    method: ElimMethod,
    seed: u64,
    manifest: &RunManifest,
) -> Result<EliminateRun, PipelineError> {
    let ctx = sys.ctx();
    let t0 = Instant::now();
    let (result, timings) = match method {
        ElimMethod::Dixon => {
            let r = dixon_resultant_seeded(&sys.equations, &sys.variables, seed).map_err(|e| {
                PipelineError::FailedZero(format!("dixon elimination failed: {e}"))
            })?;
            let polys = distinct_factors(&r);
            let stage = StageTiming {
                stage: "dixon".into(),
                seconds: t0.elapsed().as_secs_f64(),
            };
            (
                EliminationResult {
                    polynomials: polys,
                    status: ChainStatus::Complete,
                    branch_count: 1,
                    timings: Vec::new(),
                    isolated: Vec::new(),
                    branches: Vec::new(),
                },
                vec![stage],
            )
        }
        ElimMethod::ChainSimple | ElimMethod::ChainBranching => {
            let r = if method == ElimMethod::ChainSimple {
                res_chain_simple(&sys.equations, &sys.variables)
            } else {
                res_chain_branching(&sys.equations, &sys.variables)
            };
            let timings = r
                .timings
                .iter()
                .map(|(v, d)| StageTiming {
                    stage: format!("eliminate {}", ctx.name(*v)),
                    seconds: d.as_secs_f64(),
                })
                .collect();
            (r, timings)
        }
    };
    let artifact = EliminateArtifact {
        format_version: FORMAT_VERSION,
        manifest,
        status: status_str(result.status),
        polynomials: result.polynomials.iter().map(|p| p.to_string()).collect(),
        branch_count: result.branch_count,
        isolated: result
            .isolated
            .iter()
            .map(|(v, p)| IsolatedFactor {
                variable: ctx.name(*v).to_string(),
                polynomial: p.to_string(),
            })
            .collect(),
    };
    Ok(EliminateRun {
        json: to_json(&artifact),
        status: result.status,
        timings,
    })
}

/// Render the n-patch model as a system file with the manifest in a comment
/// header, so the output parses right back.
pub fn run_model(n: usize, manifest: &RunManifest) -> Result<String, PipelineError> {
    if n < 1 {
        return Err(PipelineError::Parse("patch count must be at least 1".into()));
    }
    let sys = allee_system(n);
    let manifest_line = serde_json::to_string(manifest).expect("manifest serializes");
    Ok(format!("# manifest: {manifest_line}\n{}", format_system(&sys)))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DiscriminantArtifact<'a> {
    format_version: u32,
    manifest: &'a RunManifest,
    candidates: Vec<String>,
    orthant_empty: Vec<bool>,
    components: Vec<ComponentEntry>,
}

#[derive(Serialize)]
struct ComponentEntry {
    branch: String,
    polynomials: Vec<String>,
}

pub struct DiscriminantRun {
    pub json: String,
    pub set: CandidateSet,
    pub timings: Vec<StageTiming>,
}

pub fn run_discriminant(
    sys: &ParametricSystem,
    method: ElimMethod,
    boundary: BoundaryFilter,
    seed: u64,
    manifest: &RunManifest,
) -> Result<DiscriminantRun, PipelineError> {
    let t0 = Instant::now();
    let set = discriminant_candidates_seeded(sys, method, boundary, seed)?;
    let timings = vec![StageTiming {
        stage: "discriminant".into(),
        seconds: t0.elapsed().as_secs_f64(),
    }];
    let artifact = DiscriminantArtifact {
        format_version: FORMAT_VERSION,
        manifest,
        candidates: set.polynomials.iter().map(|p| p.to_string()).collect(),
        orthant_empty: set.orthant_empty.clone(),
        components: set
            .components
            .iter()
            .map(|(branch, polys)| ComponentEntry {
                branch: branch.clone(),
                polynomials: polys.iter().map(|p| p.to_string()).collect(),
            })
            .collect(),
    };
    Ok(DiscriminantRun {
        json: to_json(&artifact),
        set,
        timings,
    })
}

/// Read a candidate set for `regions`: either the JSON artifact written by
/// `discriminant` (its `candidates` array) or plain text with one polynomial
/// per line. Every polynomial must involve only parameters of the system.
pub fn parse_candidates(src: &str, sys: &ParametricSystem) -> Result<Vec<Polynomial>, PipelineError> {
    let ctx = sys.ctx();
    let mut polys = Vec::new();
    if src.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(src)
            .map_err(|e| PipelineError::Parse(format!("candidates file: {e}")))?;
        let arr = v
            .get("candidates")
            .and_then(|c| c.as_array())
            .ok_or_else(|| {
                PipelineError::Parse("candidates file has no `candidates` array".into())
            })?;
        for (i, entry) in arr.iter().enumerate() {
            let s = entry.as_str().ok_or_else(|| {
                PipelineError::Parse(format!("candidate {i} is not a string"))
            })?;
            polys.push(parse_polynomial(ctx, s, 1).map_err(|e| {
                PipelineError::Parse(format!("candidate {i}: {e}"))
            })?);
        }
    } else {
        for (idx, raw) in src.lines().enumerate() {
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            polys.push(parse_polynomial(ctx, raw, idx + 1).map_err(|e| {
                PipelineError::Parse(e.to_string())
            })?);
        }
    }
    for p in &polys {
        for v in p.active_indets() {
            if !sys.parameters.contains(&v) {
                return Err(PipelineError::Parse(format!(
                    "candidate `{p}` involves the variable {}",
                    ctx.name(v)
                )));
            }
        }
    }
    Ok(polys)
}

/// Parse `a0,a1,b0,b1` into one closed interval per parameter.
pub fn parse_box(text: &str, params: usize) -> Result<Vec<Iv>, PipelineError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 * params {
        return Err(PipelineError::Parse(format!(
            "box needs {} comma-separated bounds, got {}",
            2 * params,
            parts.len()
        )));
    }
    let mut out = Vec::with_capacity(params);
    for pair in parts.chunks(2) {
        let lo = parse_rational(pair[0])
            .map_err(|e| PipelineError::Parse(format!("bad bound `{}`: {e}", pair[0])))?;
        let hi = parse_rational(pair[1])
            .map_err(|e| PipelineError::Parse(format!("bad bound `{}`: {e}", pair[1])))?;
        if lo >= hi {
            return Err(PipelineError::Parse(format!(
                "empty box side [{}, {}]",
                pair[0], pair[1]
            )));
        }
        out.push(Iv::new(lo, hi));
    }
    Ok(out)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RegionsArtifact<'a> {
    format_version: u32,
    manifest: &'a RunManifest,
    mode: String,
    candidates: Vec<String>,
    cells: Vec<CellEntry>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CellEntry {
    dimension: u8,
    base: usize,
    sector: usize,
    span: Vec<[String; 2]>,
    sample: Vec<String>,
    count: usize,
    certified: bool,
}

pub struct RegionsRun {
    pub json: String,
    pub report: RegionReport,
    pub timings: Vec<StageTiming>,
}

pub fn run_regions(
    sys: &ParametricSystem,
    candidates: &[Polynomial],
    windows: &[Iv],
    mode: CountMode,
    manifest: &RunManifest,
) -> Result<RegionsRun, PipelineError> {
    let t0 = Instant::now();
    let report = classify(sys, candidates, windows, mode).map_err(|e| {
        PipelineError::FailedZero(format!("cell counting failed: {e}"))
    })?;
    let timings = vec![StageTiming {
        stage: "classify".into(),
        seconds: t0.elapsed().as_secs_f64(),
    }];
    let artifact = RegionsArtifact {
        format_version: FORMAT_VERSION,
        manifest,
        mode: mode.to_string(),
        candidates: candidates.iter().map(|p| p.to_string()).collect(),
        cells: report
            .cells
            .iter()
            .zip(report.counts.iter().zip(&report.certified))
            .map(|(c, (&count, &certified))| CellEntry {
                dimension: c.dimension,
                base: c.base,
                sector: c.sector,
                span: c
                    .spans
                    .iter()
                    .map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)])
                    .collect(),
                sample: c.sample.iter().map(format_rational).collect(),
                count,
                certified,
            })
            .collect(),
    };
    Ok(RegionsRun {
        json: to_json(&artifact),
        report,
        timings,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TimingArtifact<'a> {
    format_version: u32,
    manifest: &'a RunManifest,
    stages: Vec<TimingEntry>,
}

#[derive(Serialize)]
struct TimingEntry {
    stage: String,
    seconds: f64,
}

/// The timing sidecar: the only artifact whose bytes vary between reruns.
pub fn timings_json(manifest: &RunManifest, stages: &[StageTiming]) -> String {
    to_json(&TimingArtifact {
        format_version: FORMAT_VERSION,
        manifest,
        stages: stages
            .iter()
            .map(|s| TimingEntry {
                stage: s.stage.clone(),
                seconds: s.seconds,
            })
            .collect(),
    })
}

pub fn timing_table(stages: &[StageTiming]) -> String {
    let mut out = String::from("stage                          seconds\n");
    for s in stages {
        out.push_str(&format!("{:<30} {:>9.3}\n", s.stage, s.seconds));
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}
