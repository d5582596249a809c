//! Command-line interface: decide plane families, normalize raw planes,
//! probe hulls numerically, generate the counterexample family, and verify
//! certificates.
//!
//! Exit codes: 0 success, 2 input or validation error, 3 verification
//! failure, 4 internal numeric failure.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use planecvx::certify::verify_certificate;
use planecvx::decide::{classify_omega, decide, pairwise_verdicts};
use planecvx::hullprobe::{grid_points, probe_points, GridSlice, GridSpec};
use planecvx::json::{
    certificate_from_json, certificate_to_json, family_to_json, mat_to_json, pairwise_to_json,
    parse_family, sqrt3_mat_to_json, sqrt3_to_json, to_stable_string, verdict_to_json,
};
use planecvx::scalar::rat_from_str;
use planecvx::thomas::{thomas_graphs, thomas_matrices, thomas_spectra};

#[derive(Parser)]
#[command(name = "planecvx")]
#[command(about = "Local polynomial convexity of unions of totally-real planes in C^2")]
#[command(version)]
struct Cli {
    /// Input file path, or `-` for standard input
    #[arg(long, global = true)]
    input: Option<String>,

    /// Output file path (default: standard output)
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Random seed for sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the probe (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Decide local polynomial convexity at the origin for a plane family
    Decide,
    /// Reduce spans/graphs to normal form (base plane R^2, matrices A_j)
    Normalize,
    /// LP-based separation probe over a grid or a point list
    Probe(ProbeArgs),
    /// Generate the one-parameter counterexample family
    Thomas(ThomasArgs),
    /// Verify a separation certificate
    Verify,
}

#[derive(Args)]
struct ProbeArgs {
    /// Polynomial degree bound
    #[arg(long, default_value_t = 4)]
    degree: usize,

    /// Samples per plane
    #[arg(long, default_value_t = 2000)]
    samples: usize,

    /// Sampling ball radius
    #[arg(long, default_value_t = 1.0)]
    radius: f64,

    /// Polygon sides linearizing the modulus (even, >= 8)
    #[arg(long, default_value_t = 16)]
    polygon: usize,

    /// Separation margin: separated means t* < 1 - margin
    #[arg(long, default_value_t = 0.05)]
    margin: f64,

    /// Grid spec N:EXTENT:MINDIST[:SLICE] with SLICE one of axis, cline
    #[arg(long, conflicts_with = "points")]
    grid: Option<String>,

    /// JSON file with probe points [[rez, imz, rew, imw], ...]
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Args)]
struct ThomasArgs {
    /// Parameter as an exact rational, e.g. 3/10
    #[arg(long)]
    eps: String,

    /// Emit the matrix pair (default)
    #[arg(long)]
    matrices: bool,

    /// Emit the three graph planes
    #[arg(long, conflicts_with_all = ["matrices", "spectra", "classify"])]
    graphs: bool,

    /// Emit exact spectra
    #[arg(long, conflicts_with_all = ["matrices", "graphs", "classify"])]
    spectra: bool,

    /// Classify the pair against the star region and report pairwise verdicts
    #[arg(long, conflicts_with_all = ["matrices", "graphs", "spectra"])]
    classify: bool,
}

const EXIT_INPUT: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

fn read_input(input: &Option<String>) -> Result<String, String> {
    match input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading standard input: {e}"))?;
            Ok(buf)
        }
        Some(path) => fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}")),
    }
}

fn write_output(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))
        }
    }
}

fn certificate_path(output: &Path) -> PathBuf {
    let mut name = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "verdict".into());
    name.push_str(".cert.json");
    output.with_file_name(name)
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn run_decide(cli: &Cli) -> ExitCode {
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let family = match parse_family(&text) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let verdict = match decide(&family) {
        Ok(v) => v,
        // Normal-form failures are numeric (a certificate could not be
        // built at working precision); everything else is bad input.
        Err(planecvx::decide::DecideError::NormalForm(e)) => {
            return fail(EXIT_NUMERIC, e)
        }
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let (cert_id, cert_json) = match (&verdict.certificate, &cli.output) {
        (Some(c), Some(out)) => {
            let path = certificate_path(out);
            let cert_text = to_stable_string(&certificate_to_json(c));
            if let Err(e) = fs::write(&path, cert_text) {
                return fail(EXIT_INPUT, format!("writing {}: {e}", path.display()));
            }
            (
                Some(path.file_name().unwrap().to_string_lossy().into_owned()),
                None,
            )
        }
        (Some(c), None) => (Some("inline".to_string()), Some(certificate_to_json(c))),
        (None, _) => (None, None),
    };
    let mut out = verdict_to_json(&verdict, cert_id.as_deref());
    if let Some(cj) = cert_json {
        out["certificate"] = cj;
    }
    match write_output(&cli.output, &to_stable_string(&out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_INPUT, e),
    }
}

fn run_normalize(cli: &Cli) -> ExitCode {
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let family = match parse_family(&text) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    for (j, m) in family.matrices.iter().enumerate() {
        if !m.is_totally_real() {
            return fail(EXIT_INPUT, format!("normalized plane {} is degenerate", j + 1));
        }
    }
    match write_output(&cli.output, &to_stable_string(&family_to_json(&family))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_INPUT, e),
    }
}

fn parse_grid(spec: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err("grid spec is N:EXTENT:MINDIST[:SLICE]".into());
    }
    let n: usize = parts[0].parse().map_err(|_| "bad grid size".to_string())?;
    let extent: f64 = parts[1].parse().map_err(|_| "bad grid extent".to_string())?;
    let min_plane_dist: f64 = parts[2]
        .parse()
        .map_err(|_| "bad grid distance".to_string())?;
    let slice = match parts.get(3).copied().unwrap_or("axis") {
        "axis" => GridSlice::Axis,
        "cline" => GridSlice::ComplexLine,
        other => return Err(format!("unknown grid slice `{other}`")),
    };
    if n == 0 || extent <= 0.0 || min_plane_dist < 0.0 {
        return Err("grid parameters out of range".into());
    }
    Ok(GridSpec {
        n,
        extent,
        min_plane_dist,
        slice,
    })
}

fn run_probe(cli: &Cli, args: &ProbeArgs) -> ExitCode {
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let family = match parse_family(&text) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let (pts, grid) = if let Some(path) = &args.points {
        let ptext = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(EXIT_INPUT, format!("reading {}: {e}", path.display())),
        };
        let pts: Vec<[f64; 4]> = match serde_json::from_str(&ptext) {
            Ok(p) => p,
            Err(e) => return fail(EXIT_INPUT, format!("parsing points: {e}")),
        };
        (pts, None)
    } else {
        let spec = args.grid.as_deref().unwrap_or("5:1.0:0.1:axis");
        let grid = match parse_grid(spec) {
            Ok(g) => g,
            Err(e) => return fail(EXIT_INPUT, e),
        };
        (grid_points(&family, &grid), Some(grid))
    };
    let report = match probe_points(
        &family,
        &pts,
        args.radius,
        args.samples,
        args.degree,
        args.polygon,
        args.margin,
        cli.seed,
    ) {
        Ok(mut r) => {
            r.grid = grid;
            r
        }
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let all_failed = report.attempted > 0 && report.failed == report.attempted;
    let value = serde_json::to_value(&report).expect("report serializes");
    match write_output(&cli.output, &to_stable_string(&value)) {
        Ok(()) if all_failed => fail(EXIT_NUMERIC, "every probe point failed numerically"),
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_INPUT, e),
    }
}

fn run_thomas(cli: &Cli, args: &ThomasArgs) -> ExitCode {
    let eps = match rat_from_str(&args.eps) {
        Ok(e) => e,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let value = if args.graphs {
        match thomas_graphs(&eps) {
            Ok(graphs) => {
                let gs: Vec<Value> = graphs
                    .iter()
                    .map(|g| {
                        json!({
                            "a": [sqrt3_to_json(&g.a.re), sqrt3_to_json(&g.a.im)],
                            "b": [sqrt3_to_json(&g.b.re), sqrt3_to_json(&g.b.im)],
                        })
                    })
                    .collect();
                json!({ "epsilon": eps.to_string(), "graphs": gs })
            }
            Err(e) => return fail(EXIT_INPUT, e),
        }
    } else if args.spectra {
        match thomas_spectra(&eps) {
            Ok((s1, s2)) => {
                let enc = |s: &planecvx::mat2::Spectrum<planecvx::scalar::Sqrt3>| {
                    let ev = s.eigenvalues_f64();
                    json!({
                        "trace": sqrt3_to_json(&s.trace),
                        "det": sqrt3_to_json(&s.det),
                        "disc": sqrt3_to_json(&s.disc),
                        "kind": s.kind,
                        "eigenvaluesApprox": [[ev[0].0, ev[0].1], [ev[1].0, ev[1].1]],
                    })
                };
                json!({
                    "epsilon": eps.to_string(),
                    "spectrumA1": enc(&s1),
                    "spectrumA2": enc(&s2),
                })
            }
            Err(e) => return fail(EXIT_INPUT, e),
        }
    } else if args.classify {
        match thomas_matrices(&eps) {
            Ok(pair) => {
                let fam = planecvx::planes::WeinstockFamily::new(vec![
                    pair.a1.clone(),
                    pair.a2.clone(),
                ]);
                let pairs = match pairwise_verdicts(&fam) {
                    Ok(p) => p,
                    Err(e) => return fail(EXIT_INPUT, e),
                };
                json!({
                    "epsilon": eps.to_string(),
                    "omega": classify_omega(&pair.a1, &pair.a2),
                    "pairwise": pairwise_to_json(&pairs),
                    "hint": "run `probe` for numerical hull evidence",
                })
            }
            Err(e) => return fail(EXIT_INPUT, e),
        }
    } else {
        match thomas_matrices(&eps) {
            Ok(pair) => json!({
                "epsilon": eps.to_string(),
                "a1": sqrt3_mat_to_json(&pair.a1),
                "a2": sqrt3_mat_to_json(&pair.a2),
                "a1Approx": mat_to_json(&pair.a1.to_f64()),
                "a2Approx": mat_to_json(&pair.a2.to_f64()),
            }),
            Err(e) => return fail(EXIT_INPUT, e),
        }
    };
    match write_output(&cli.output, &to_stable_string(&value)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_INPUT, e),
    }
}

fn run_verify(cli: &Cli) -> ExitCode {
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let cert = match certificate_from_json(&text) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let report = verify_certificate(&cert);
    let value = serde_json::to_value(&report).expect("report serializes");
    if let Err(e) = write_output(&cli.output, &to_stable_string(&value)) {
        return fail(EXIT_INPUT, e);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("certificate rejected:");
        for r in &report.reasons {
            eprintln!("  - {r}");
        }
        ExitCode::from(EXIT_VERIFY)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Commands::Decide => run_decide(&cli),
        Commands::Normalize => run_normalize(&cli),
        Commands::Probe(args) => run_probe(&cli, args),
        Commands::Thomas(args) => run_thomas(&cli, args),
        Commands::Verify => run_verify(&cli),
    }
}
