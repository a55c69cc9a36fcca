//! Command-line driver: eigenvalue solves, shape-optimization runs, the
//! verification suite, and convergence sweeps, with all results persisted as
//! JSON/CSV.
//!
//! Exit codes: 0 success, 2 usage/config error, 3 numerical failure.

mod manifest;
mod sweep;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use buckleopt::eigensolve::DEFAULT_TOL;
use buckleopt::geometry::DomainSpec;
use buckleopt::operators::{assemble_biharmonic, assemble_laplacian};
use buckleopt::raster::GridEmbedding;
use buckleopt::shapeopt::{buckling_of_domain_tol, optimize, OptimizerConfig};
use buckleopt::verify::{run_suite, VerifyConfig};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 2;
const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "buckleopt",
    version,
    about = "Clamped-plate buckling eigenvalues and perimeter-constrained shape optimization"
)]
struct Cli {
    /// Cap on internal worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the smallest buckling eigenvalues of a domain file.
    Eig {
        /// Domain description (JSON).
        domain_file: PathBuf,
        /// Grid spacing.
        #[arg(long = "h")]
        spacing: f64,
        /// Number of eigenvalues.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Richardson-extrapolate with a second solve at half the spacing.
        #[arg(long)]
        extrapolate: bool,
        /// Solver residual tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write the evaluation record as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Debug: dump the inside mask (.pgm or .csv by extension).
        #[arg(long)]
        dump_mask: Option<PathBuf>,
        /// Debug: dump the assembled operators as coordinate text into a
        /// directory (A.txt, B.txt).
        #[arg(long)]
        dump_operators: Option<PathBuf>,
    },
    /// Run a shape optimization described by a config file.
    Optimize {
        /// Optimizer configuration (JSON).
        config_file: PathBuf,
        /// Output directory for trace.csv, final_domain.json, manifest.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run the verification suite.
    Verify {
        /// Corpus seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a Hausdorff-converging family and emit per-member eigenvalues.
    Sweep {
        /// Sweep configuration (JSON).
        config_file: PathBuf,
        /// Override the output CSV path from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Eig {
            domain_file,
            spacing,
            count,
            extrapolate,
            tol,
            out,
            dump_mask,
            dump_operators,
        } => cmd_eig(
            &domain_file,
            spacing,
            count,
            extrapolate,
            tol,
            out.as_deref(),
            dump_mask.as_deref(),
            dump_operators.as_deref(),
        ),
        Command::Optimize {
            config_file,
            out_dir,
        } => cmd_optimize(&config_file, &out_dir),
        Command::Verify { seed, out } => cmd_verify(seed, out.as_deref(), cli.threads),
        Command::Sweep { config_file, out } => sweep::cmd_sweep(&config_file, out.as_deref()),
    }
}

fn fail_usage(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn exit_code_for(err: &buckleopt::Error) -> i32 {
    eprintln!("error: {err}");
    match err {
        buckleopt::Error::SolverFailure { .. } => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), String> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
        }
    }
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// 17 significant digits: lossless round trip, diff-friendly.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[allow(clippy::too_many_arguments)]
fn cmd_eig(
    domain_file: &Path,
    spacing: f64,
    count: usize,
    extrapolate: bool,
    tol: f64,
    out: Option<&Path>,
    dump_mask: Option<&Path>,
    dump_operators: Option<&Path>,
) -> i32 {
    let domain: DomainSpec = match read_json(domain_file) {
        Ok(d) => d,
        Err(e) => return fail_usage(e),
    };
    if let Err(e) = domain.validate() {
        return fail_usage(e);
    }
    if let Some(mask_path) = dump_mask {
        let grid = match GridEmbedding::rasterize(&domain, spacing) {
            Ok(g) => g,
            Err(e) => return exit_code_for(&e),
        };
        let mut buf = Vec::new();
        let result = if mask_path.extension().map(|e| e == "csv").unwrap_or(false) {
            grid.write_csv(&mut buf)
        } else {
            grid.write_pgm(&mut buf)
        };
        if let Err(e) = result {
            return fail_usage(e);
        }
        if let Err(e) = std::fs::write(mask_path, buf) {
            return fail_usage(e);
        }
    }
    if let Some(dir) = dump_operators {
        if let Err(e) = dump_operator_files(&domain, spacing, dir) {
            return fail_usage(e);
        }
    }
    let record = match buckling_of_domain_tol(&domain, spacing, count, extrapolate, tol) {
        Ok(r) => r,
        Err(e) => return exit_code_for(&e),
    };
    for (i, lambda) in record.lambda.iter().enumerate() {
        println!("lambda_{} = {}", i + 1, lambda);
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&record).expect("record serializes");
        if let Err(e) = write_text(path, &json) {
            return fail_usage(e);
        }
    }
    EXIT_OK
}

fn dump_operator_files(domain: &DomainSpec, spacing: f64, dir: &Path) -> Result<(), String> {
    let grid = GridEmbedding::rasterize(domain, spacing).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let a = assemble_biharmonic(&grid);
    let b = assemble_laplacian(&grid);
    for (name, op) in [("A.txt", &a), ("B.txt", &b)] {
        let mut buf = Vec::new();
        op.write_coordinate_text(&mut buf)
            .map_err(|e| e.to_string())?;
        std::fs::write(dir.join(name), buf).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn cmd_optimize(config_file: &Path, out_dir: &Path) -> i32 {
    let mut config: OptimizerConfig = match read_json(config_file) {
        Ok(c) => c,
        Err(e) => return fail_usage(e),
    };
    if let Some(seed) = seed_override() {
        config.seed = seed;
    }
    if let Err(e) = config.validate() {
        return fail_usage(e);
    }
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        return fail_usage(e);
    }
    let trace_path = out_dir.join("trace.csv");
    let domain_path = out_dir.join("final_domain.json");
    let manifest_path = out_dir.join("manifest.json");
    let mut manifest = manifest::RunManifest::start(
        "optimize",
        serde_json::to_value(&config).expect("config serializes"),
        config.seed,
        &[&trace_path, &domain_path],
    );
    if let Err(e) = manifest.write(&manifest_path) {
        return fail_usage(e);
    }
    let trace = match optimize(&config) {
        Ok(t) => t,
        Err(e) => return exit_code_for(&e),
    };
    let csv = render_trace_csv(&config, &trace);
    if let Err(e) = write_text(&trace_path, &csv) {
        return fail_usage(e);
    }
    let domain_json =
        serde_json::to_string_pretty(&trace.final_record.domain).expect("domain serializes");
    if let Err(e) = write_text(&domain_path, &domain_json) {
        return fail_usage(e);
    }
    manifest.finish();
    if let Err(e) = manifest.write(&manifest_path) {
        return fail_usage(e);
    }
    println!(
        "final objective {} (perimeter {}, hausdorff to disk {})",
        trace.final_record.objective_value, trace.final_record.perimeter, trace.hausdorff_to_disk
    );
    EXIT_OK
}

fn render_trace_csv(config: &OptimizerConfig, trace: &buckleopt::shapeopt::OptTrace) -> String {
    let k = config.eigen_index;
    let mut out = String::new();
    out.push_str("eval_count,objective,perimeter");
    for i in 1..=k {
        out.push_str(&format!(",lambda{i}"));
    }
    out.push_str(",hausdorff_to_disk\n");
    // recompute the gauge distance only when the incumbent changes
    let mut last_objective = f64::NAN;
    let mut last_hausdorff = f64::NAN;
    for (eval, record) in &trace.iterations {
        if record.objective_value != last_objective {
            last_objective = record.objective_value;
            last_hausdorff = hausdorff_to_reference_disk(record, config.target_perimeter);
        }
        out.push_str(&format!(
            "{},{},{}",
            eval,
            fmt_f64(record.objective_value),
            fmt_f64(record.perimeter)
        ));
        for lambda in &record.lambda {
            out.push(',');
            out.push_str(&fmt_f64(*lambda));
        }
        out.push(',');
        out.push_str(&fmt_f64(last_hausdorff));
        out.push('\n');
    }
    out
}

fn hausdorff_to_reference_disk(
    record: &buckleopt::shapeopt::ObjectiveRecord,
    perimeter: f64,
) -> f64 {
    let centroid = match record.domain.centroid() {
        Ok(c) => c,
        Err(_) => return f64::NAN,
    };
    let disk = DomainSpec::disk(
        [centroid.x, centroid.y],
        perimeter / (2.0 * std::f64::consts::PI),
    );
    buckleopt::geometry::hausdorff_distance(&record.domain, &disk).unwrap_or(f64::NAN)
}

fn cmd_verify(seed: u64, out: Option<&Path>, threads: Option<usize>) -> i32 {
    let seed = seed_override().unwrap_or(seed);
    let config = VerifyConfig { seed, threads };
    let report = run_suite(&config);
    print!("{}", report.render_table());
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = write_text(path, &json) {
            return fail_usage(e);
        }
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    }
}

/// BUCKLEOPT_SEED overrides every config seed.
pub(crate) fn seed_override() -> Option<u64> {
    std::env::var("BUCKLEOPT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
}
