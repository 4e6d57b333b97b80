//! Command-line front end. Exit codes: 0 complete, 1 bad input, 2 elimination
//! failed to zero, 3 empty system, 4 timeout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::exit;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use resparam::discvar::{BoundaryFilter, ElimMethod, ParametricSystem};
use resparam::pipeline::{
    names_of, parse_box, parse_candidates, resolve_system, run_discriminant, run_eliminate,
    run_model, run_regions, timing_table, timings_json, PipelineError, RunManifest, StageTiming,
};
use resparam::regions::CountMode;
use resparam::reschain::ChainStatus;
use resparam::svg::{region_svg, PlotOptions};

#[derive(Parser)]
#[command(
    name = "resparam",
    version,
    about = "Exact parameter-space decomposition for parametric polynomial systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads; 0 uses all hardware threads. Output never depends on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Abort with exit code 4 after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    timeout: Option<u64>,
}

#[derive(Args)]
struct SystemArgs {
    /// System file: params/vars/signs headers, one polynomial per line.
    system: PathBuf,
    /// Reinterpret these declared names as the variables.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Reinterpret these declared names as the parameters.
    #[arg(long, value_delimiter = ',')]
    params: Option<Vec<String>>,
    /// Elimination order, a permutation of the variables.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
    /// Rotate the equation list so this index comes first.
    #[arg(long, default_value_t = 0)]
    pivot: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Eliminate the variables from the equations; write the factor set.
    Eliminate {
        #[command(flatten)]
        sys: SystemArgs,
        /// dixon, chain-simple, or chain-branching.
        #[arg(long, value_parser = parse_method)]
        method: ElimMethod,
        /// Seed for the Dixon rank-probing specializations.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output JSON path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the n-patch population model as a system file.
    Model {
        /// Number of patches, at least 1.
        patches: usize,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Candidate boundary polynomials of the parameter space.
    Discriminant {
        #[command(flatten)]
        sys: SystemArgs,
        /// dixon, chain-simple, or chain-branching.
        #[arg(long, value_parser = parse_method)]
        method: ElimMethod,
        /// Boundary sources: all, multiplicity, or zeros.
        #[arg(long, value_parser = parse_boundary, default_value = "all")]
        boundary: BoundaryFilter,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a parameter box into cells with invariant solution counts.
    Regions {
        #[command(flatten)]
        sys: SystemArgs,
        /// Candidate file: discriminant JSON or one polynomial per line.
        #[arg(long)]
        candidates: PathBuf,
        /// Window bounds, two per parameter: a0,a1 or a0,a1,b0,b1.
        #[arg(long, value_name = "BOUNDS")]
        r#box: String,
        /// real, positive, or nonnegative.
        #[arg(long, value_parser = parse_mode, default_value = "real")]
        mode: CountMode,
        /// Also render the region map to this SVG path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_method(s: &str) -> Result<ElimMethod, String> {
    match s {
        "dixon" => Ok(ElimMethod::Dixon),
        "chain-simple" => Ok(ElimMethod::ChainSimple),
        "chain-branching" => Ok(ElimMethod::ChainBranching),
        _ => Err(format!("unknown method `{s}`; use dixon, chain-simple, or chain-branching")),
    }
}

fn parse_mode(s: &str) -> Result<CountMode, String> {
    match s {
        "real" => Ok(CountMode::Real),
        "positive" => Ok(CountMode::Positive),
        "nonnegative" => Ok(CountMode::Nonnegative),
        _ => Err(format!("unknown mode `{s}`; use real, positive, or nonnegative")),
    }
}

fn parse_boundary(s: &str) -> Result<BoundaryFilter, String> {
    match s {
        "all" => Ok(BoundaryFilter::All),
        "multiplicity" => Ok(BoundaryFilter::Multiplicity),
        "zeros" => Ok(BoundaryFilter::Zeros),
        _ => Err(format!("unknown boundary `{s}`; use all, multiplicity, or zeros")),
    }
}

/// One finished run: files to write (None targets stdout), stage timings,
/// and the exit code the status dictates.
struct Done {
    files: Vec<(Option<PathBuf>, String)>,
    timings: Vec<StageTiming>,
    sidecar: Option<(PathBuf, String)>,
    exit: i32,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            exit(1);
        }
        Err(e) => {
            print!("{e}");
            exit(0);
        }
    };
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .expect("thread pool configured once");
    }

    let timeout = cli.timeout;
    let done = match timeout {
        None => run(cli.command, timeout),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            thread::spawn(move || {
                let _ = tx.send(run(cli.command, timeout));
            });
            match rx.recv_timeout(Duration::from_secs(secs)) {
                Ok(done) => done,
                Err(_) => {
                    eprintln!("timed out after {secs}s");
                    exit(4);
                }
            }
        }
    };

    match done {
        Ok(done) => {
            for (path, contents) in &done.files {
                match path {
                    Some(p) => write_file(p, contents),
                    None => print!("{contents}"),
                }
            }
            if let Some((path, contents)) = &done.sidecar {
                write_file(path, contents);
            }
            eprint!("{}", timing_table(&done.timings));
            exit(done.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code());
        }
    }
}

fn write_file(path: &Path, contents: &str) {
    if let Err(e) = fs::write(path, contents) {
        eprintln!("error: cannot write {}: {e}", path.display());
        exit(1);
    }
}

fn read_input(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path)
        .map_err(|e| PipelineError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn path_str(p: &Option<PathBuf>) -> Vec<String> {
    p.iter().map(|p| p.display().to_string()).collect()
}

fn sidecar_for(out: &Option<PathBuf>) -> Option<PathBuf> {
    out.as_ref().map(|p| p.with_extension("timings.json"))
}

fn load_system(args: &SystemArgs) -> Result<ParametricSystem, PipelineError> {
    let src = read_input(&args.system)?;
    resolve_system(
        &src,
        args.vars.as_deref(),
        args.params.as_deref(),
        args.order.as_deref(),
        args.pivot,
    )
}

fn run(cmd: Command, timeout: Option<u64>) -> Result<Done, PipelineError> {
    let t0 = Instant::now();
    match cmd {
        Command::Eliminate { sys, method, seed, out } => {
            let system = load_system(&sys)?;
            let mut outputs = path_str(&out);
            outputs.extend(path_str(&sidecar_for(&out).map(Some).unwrap_or(None)));
            let manifest = RunManifest {
                command: "eliminate".into(),
                input: sys.system.display().to_string(),
                method: Some(method.to_string()),
                boundary: None,
                variable_order: names_of(&system, &system.variables),
                parameter_order: names_of(&system, &system.parameters),
                pivot: sys.pivot,
                window: None,
                mode: None,
                seed,
                timeout,
                outputs,
            };
            let mut run = run_eliminate(&system, method, seed, &manifest)?;
            run.timings.push(total_stage(t0));
            Ok(Done {
                sidecar: sidecar_for(&out).map(|p| (p, timings_json(&manifest, &run.timings))),
                files: vec![(out, run.json)],
                timings: run.timings,
                exit: match run.status {
                    ChainStatus::Complete => 0,
                    ChainStatus::FailedZero => 2,
                    ChainStatus::EmptySystem => 3,
                },
            })
        }
        Command::Model { patches, out } => {
            let (vars, params) = if patches >= 1 {
                (
                    (1..=patches).map(|i| format!("x{i}")).collect(),
                    vec!["a".to_string(), "b".to_string()],
                )
            } else {
                (Vec::new(), Vec::new())
            };
            let manifest = RunManifest {
                command: "model".into(),
                input: patches.to_string(),
                method: None,
                boundary: None,
                variable_order: vars,
                parameter_order: params,
                pivot: 0,
                window: None,
                mode: None,
                seed: 0,
                timeout,
                outputs: path_str(&out),
            };
            let text = run_model(patches, &manifest)?;
            Ok(Done {
                files: vec![(out, text)],
                timings: vec![total_stage(t0)],
                sidecar: None,
                exit: 0,
            })
        }
        Command::Discriminant { sys, method, boundary, seed, out } => {
            let system = load_system(&sys)?;
            let mut outputs = path_str(&out);
            outputs.extend(path_str(&sidecar_for(&out).map(Some).unwrap_or(None)));
            let manifest = RunManifest {
                command: "discriminant".into(),
                input: sys.system.display().to_string(),
                method: Some(method.to_string()),
                boundary: Some(boundary_name(boundary).into()),
                variable_order: names_of(&system, &system.variables),
                parameter_order: names_of(&system, &system.parameters),
                pivot: sys.pivot,
                window: None,
                mode: None,
                seed,
                timeout,
                outputs,
            };
            let mut run = run_discriminant(&system, method, boundary, seed, &manifest)?;
            run.timings.push(total_stage(t0));
            Ok(Done {
                sidecar: sidecar_for(&out).map(|p| (p, timings_json(&manifest, &run.timings))),
                files: vec![(out, run.json)],
                timings: run.timings,
                exit: 0,
            })
        }
        Command::Regions { sys, candidates, r#box, mode, svg, seed, out } => {
            let system = load_system(&sys)?;
            let cand_src = read_input(&candidates)?;
            let cands = parse_candidates(&cand_src, &system)?;
            let windows = parse_box(&r#box, system.parameters.len())?;
            let mut outputs = path_str(&out);
            outputs.extend(path_str(&svg));
            outputs.extend(path_str(&sidecar_for(&out).map(Some).unwrap_or(None)));
            let manifest = RunManifest {
                command: "regions".into(),
                input: sys.system.display().to_string(),
                method: None,
                boundary: None,
                variable_order: names_of(&system, &system.variables),
                parameter_order: names_of(&system, &system.parameters),
                pivot: sys.pivot,
                window: Some(
                    windows
                        .iter()
                        .flat_map(|iv| {
                            [
                                resparam::rat::format_rational(&iv.lo),
                                resparam::rat::format_rational(&iv.hi),
                            ]
                        })
                        .collect(),
                ),
                mode: Some(mode.to_string()),
                seed,
                timeout,
                outputs,
            };
            let mut run = run_regions(&system, &cands, &windows, mode, &manifest)?;
            let mut files = vec![(out.clone(), run.json)];
            if let Some(svg_path) = svg {
                let t = Instant::now();
                let manifest_line =
                    serde_json::to_string(&manifest).expect("manifest serializes");
                let image = region_svg(
                    &system,
                    &cands,
                    &run.report,
                    &windows,
                    &manifest_line,
                    &PlotOptions::default(),
                );
                run.timings.push(StageTiming {
                    stage: "svg".into(),
                    seconds: t.elapsed().as_secs_f64(),
                });
                files.push((Some(svg_path), image));
            }
            run.timings.push(total_stage(t0));
            Ok(Done {
                sidecar: sidecar_for(&out).map(|p| (p, timings_json(&manifest, &run.timings))),
                files,
                timings: run.timings,
                exit: 0,
            })
        }
    }
}

fn boundary_name(b: BoundaryFilter) -> &'static str {
    match b {
        BoundaryFilter::All => "all",
        BoundaryFilter::Multiplicity => "multiplicity",
        BoundaryFilter::Zeros => "zeros",
    }
}

fn total_stage(t0: Instant) -> StageTiming {
    StageTiming {
        stage: "total".into(),
        seconds: t0.elapsed().as_secs_f64(),
    }
}
