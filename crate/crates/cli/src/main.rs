//! Command-line interface for the SU(N) Euler-angle toolkit.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numeric error. Output is byte-identical for identical arguments and
//! seeds; all floats are printed with 17 significant digits. Set
//! `SUN_EULER_THREADS` to bound the worker pool used by the Monte Carlo
//! reductions (default: all cores).

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{fmt_f64, matrix_json, real_matrix_rows, to_json_string, MatrixJson};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use sun_euler::algebra::build_basis;
use sun_euler::geometry::{
    base_metric_refined, reference_base_metric, verify_metric_equality, DEFAULT_STEP,
};
use sun_euler::group::{build_element, coordinate_layout, CoordinateLayout, EulerCoordinates};
use sun_euler::measure::{full_density, sample_haar, volume_closed_form, volume_monte_carlo};
use sun_euler::verify::{run_suite, Suite, SuiteConfig};
use sun_euler::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "sun-euler",
    version,
    about = "Euler angles for SU(N): basis export, group elements, Haar sampling, volumes, geometry checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the generalized Gell-Mann basis as JSON
    Basis {
        /// Matrix dimension n of SU(n)
        #[arg(long)]
        n: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the SU(n) element for an Euler angle vector
    Element {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the Haar density at an Euler angle vector
    Density {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Draw Haar-distributed samples (angle vectors or matrices)
    Sample {
        #[arg(long)]
        n: usize,
        /// Number of samples
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Emit group elements instead of angle vectors
        #[arg(long)]
        matrices: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the coordinate layout and exit
        #[arg(long)]
        explain_layout: bool,
    },
    /// Group volume, closed form or Monte Carlo
    Volume {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Induced base metric at a point, optionally against Fubini-Study
    Metric {
        #[arg(long)]
        n: Option<usize>,
        /// Euler angles: inline JSON (array or {"n","angles"} object) or a file path
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Also print the reference metric and the max deviation
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite; exits 0 iff every check passes
    Verify {
        #[arg(long)]
        n: usize,
        /// One of: commutators, measure, metric, haar, volume
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

#[derive(Args)]
struct PointArgs {
    /// Matrix dimension n (required with --angles)
    #[arg(long)]
    n: Option<usize>,
    /// Inline JSON array of angles in canonical layout order
    #[arg(long, conflicts_with = "input")]
    angles: Option<String>,
    /// JSON file {"n": ..., "angles": [...]}
    #[arg(long)]
    input: Option<PathBuf>,
    /// Print the coordinate layout and exit
    #[arg(long)]
    explain_layout: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Mc,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain(_) | CoreError::Shape(_) => Failure::Usage(e.to_string()),
            CoreError::Boundary(_) | CoreError::Capacity(_) => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("malformed JSON: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numeric(format!("io error: {e}"))
    }
}

fn main() {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("SUN_EULER_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            if k > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            std::process::exit(f.exit_code());
        }
    }
}

#[derive(Deserialize)]
struct CoordinatesIn {
    n: usize,
    angles: Vec<f64>,
}

#[derive(Serialize)]
struct SlotOut {
    index: usize,
    name: String,
    min: f64,
    max: f64,
}

#[derive(Serialize)]
struct LayoutOut {
    n: usize,
    count: usize,
    slots: Vec<SlotOut>,
}

fn layout_json(layout: &CoordinateLayout) -> Result<String, Failure> {
    let slots = layout
        .slots()
        .iter()
        .enumerate()
        .map(|(index, s)| SlotOut {
            index,
            name: s.name.clone(),
            min: s.lo,
            max: s.hi,
        })
        .collect();
    Ok(to_json_string(&LayoutOut {
        n: layout.n(),
        count: layout.len(),
        slots,
    })?)
}

/// Resolves the coordinates for element/density, validating ranges.
fn resolve_point(args: &PointArgs) -> Result<EulerCoordinates, Failure> {
    let coords = match (&args.angles, &args.input) {
        (Some(json), None) => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("--angles requires --n".to_string()))?;
            let angles: Vec<f64> = serde_json::from_str(json)?;
            EulerCoordinates::new(n, angles)?
        }
        (None, Some(path)) => {
            let parsed: CoordinatesIn = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if let Some(n) = args.n {
                if n != parsed.n {
                    return Err(Failure::Usage(format!(
                        "--n {n} disagrees with input file n = {}",
                        parsed.n
                    )));
                }
            }
            EulerCoordinates::new(parsed.n, parsed.angles)?
        }
        _ => {
            return Err(Failure::Usage(
                "provide exactly one of --angles or --input".to_string(),
            ))
        }
    };
    let layout = coordinate_layout(coords.n())?;
    coords.validate_ranges(&layout)?;
    Ok(coords)
}

/// Metric --point accepts an inline array, an inline object, or a path.
fn resolve_metric_point(n: Option<usize>, point: &str) -> Result<EulerCoordinates, Failure> {
    let trimmed = point.trim_start();
    let coords = if trimmed.starts_with('[') {
        let n =
            n.ok_or_else(|| Failure::Usage("--point array form requires --n".to_string()))?;
        EulerCoordinates::new(n, serde_json::from_str(trimmed)?)?
    } else if trimmed.starts_with('{') {
        let parsed: CoordinatesIn = serde_json::from_str(trimmed)?;
        EulerCoordinates::new(parsed.n, parsed.angles)?
    } else {
        let parsed: CoordinatesIn =
            serde_json::from_str(&std::fs::read_to_string(Path::new(point))?)?;
        EulerCoordinates::new(parsed.n, parsed.angles)?
    };
    if let Some(n) = n {
        if n != coords.n() {
            return Err(Failure::Usage(format!(
                "--n {n} disagrees with the point's dimension {}",
                coords.n()
            )));
        }
    }
    let layout = coordinate_layout(coords.n())?;
    coords.validate_ranges(&layout)?;
    Ok(coords)
}

fn emit(out: &Option<PathBuf>, content: String) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content + "\n")?,
        None => println!("{content}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Basis { n, out } => {
            #[derive(Serialize)]
            struct BasisOut {
                n: usize,
                generators: Vec<MatrixJson>,
            }
            let basis = build_basis(n)?;
            let generators = basis.generators().iter().map(matrix_json).collect();
            emit(&out, to_json_string(&BasisOut { n, generators })?)?;
            Ok(0)
        }
        Command::Element { point, out } => {
            if point.explain_layout {
                let n = point
                    .n
                    .ok_or_else(|| Failure::Usage("--explain-layout requires --n".to_string()))?;
                emit(&None, layout_json(&coordinate_layout(n)?)?)?;
                return Ok(0);
            }
            #[derive(Serialize)]
            struct ElementOut {
                n: usize,
                matrix: MatrixJson,
            }
            let coords = resolve_point(&point)?;
            let basis = build_basis(coords.n())?;
            let g = build_element(&basis, &coords)?;
            emit(
                &out,
                to_json_string(&ElementOut {
                    n: coords.n(),
                    matrix: matrix_json(g.matrix()),
                })?,
            )?;
            Ok(0)
        }
        Command::Density { point } => {
            if point.explain_layout {
                let n = point
                    .n
                    .ok_or_else(|| Failure::Usage("--explain-layout requires --n".to_string()))?;
                emit(&None, layout_json(&coordinate_layout(n)?)?)?;
                return Ok(0);
            }
            #[derive(Serialize)]
            struct DensityOut {
                n: usize,
                value: f64,
            }
            let coords = resolve_point(&point)?;
            let value = full_density(&coords)?;
            emit(&None, to_json_string(&DensityOut { n: coords.n(), value })?)?;
            Ok(0)
        }
        Command::Sample {
            n,
            count,
            seed,
            format,
            matrices,
            out,
            explain_layout,
        } => {
            if explain_layout {
                emit(&None, layout_json(&coordinate_layout(n)?)?)?;
                return Ok(0);
            }
            run_sample(n, count, seed, format, matrices, &out)
        }
        Command::Volume { n, method, samples, seed } => {
            #[derive(Serialize)]
            struct VolumeOut {
                n: usize,
                method: &'static str,
                value: f64,
                stderr: f64,
            }
            let report = match method {
                Method::Closed => VolumeOut {
                    n,
                    method: "closed",
                    value: volume_closed_form(n)?,
                    stderr: 0.0,
                },
                Method::Mc => {
                    let est = volume_monte_carlo(n, samples, seed)?;
                    VolumeOut { n, method: "mc", value: est.mean, stderr: est.stderr }
                }
            };
            emit(&None, to_json_string(&report)?)?;
            Ok(0)
        }
        Command::Metric { n, point, step, compare, out } => {
            #[derive(Serialize)]
            struct MetricOut {
                n: usize,
                base_metric: Vec<Vec<f64>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                reference_metric: Option<Vec<Vec<f64>>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                max_deviation: Option<f64>,
            }
            let coords = resolve_metric_point(n, &point)?;
            let basis = build_basis(coords.n())?;
            let base = base_metric_refined(&basis, &coords, step)?;
            let (reference_metric, max_deviation) = if compare {
                let reference = reference_base_metric(&coords)?;
                let dev = verify_metric_equality(&basis, &coords, step)?;
                (Some(real_matrix_rows(reference.components())), Some(dev))
            } else {
                (None, None)
            };
            emit(
                &out,
                to_json_string(&MetricOut {
                    n: coords.n(),
                    base_metric: real_matrix_rows(base.components()),
                    reference_metric,
                    max_deviation,
                })?,
            )?;
            Ok(0)
        }
        Command::Verify { n, suite, samples, seed, points } => {
            let suite: Suite = suite.parse()?;
            let config = SuiteConfig { n, samples, seed, points };
            let checks = run_suite(suite, &config)?;
            println!(
                "{:<36} {:>14} {:>14} {:>8}",
                "check", "observed", "threshold", "status"
            );
            let mut failed = 0usize;
            for c in &checks {
                println!(
                    "{:<36} {:>14.6e} {:>14.6e} {:>8}",
                    c.name,
                    c.observed,
                    c.threshold,
                    if c.passed { "PASS" } else { "FAIL" }
                );
                if !c.passed {
                    failed += 1;
                }
            }
            println!("{} passed, {} failed", checks.len() - failed, failed);
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn run_sample(
    n: usize,
    count: u64,
    seed: u64,
    format: Format,
    matrices: bool,
    out: &Option<PathBuf>,
) -> Result<i32, Failure> {
    use rand::SeedableRng;
    let layout = coordinate_layout(n)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let basis = if matrices { Some(build_basis(n)?) } else { None };

    let mut angle_rows: Vec<Vec<f64>> = Vec::new();
    let mut matrix_rows: Vec<MatrixJson> = Vec::new();
    for _ in 0..count {
        let coords = sample_haar(n, &mut rng)?;
        if let Some(basis) = &basis {
            let g = build_element(basis, &coords)?;
            matrix_rows.push(matrix_json(g.matrix()));
        } else {
            angle_rows.push(coords.angles().to_vec());
        }
    }

    let content = match (format, matrices) {
        (Format::Json, false) => {
            #[derive(Serialize)]
            struct SamplesOut {
                n: usize,
                seed: u64,
                count: u64,
                layout: Vec<String>,
                samples: Vec<Vec<f64>>,
            }
            to_json_string(&SamplesOut {
                n,
                seed,
                count,
                layout: layout.slots().iter().map(|s| s.name.clone()).collect(),
                samples: angle_rows,
            })?
        }
        (Format::Json, true) => {
            #[derive(Serialize)]
            struct MatrixSamplesOut {
                n: usize,
                seed: u64,
                count: u64,
                samples: Vec<MatrixJson>,
            }
            to_json_string(&MatrixSamplesOut { n, seed, count, samples: matrix_rows })?
        }
        (Format::Csv, false) => {
            let header: Vec<String> = layout.slots().iter().map(|s| s.name.clone()).collect();
            let mut lines = vec![header.join(",")];
            for row in &angle_rows {
                lines.push(row.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(","));
            }
            lines.join("\n")
        }
        (Format::Csv, true) => {
            let mut header = Vec::with_capacity(2 * n * n);
            for i in 0..n {
                for j in 0..n {
                    header.push(format!("re_{i}_{j}"));
                    header.push(format!("im_{i}_{j}"));
                }
            }
            let mut lines = vec![header.join(",")];
            for m in &matrix_rows {
                let mut cells = Vec::with_capacity(2 * n * n);
                for row in m {
                    for &[re, im] in row {
                        cells.push(fmt_f64(re));
                        cells.push(fmt_f64(im));
                    }
                }
                lines.push(cells.join(","));
            }
            lines.join("\n")
        }
    };
    emit(out, content)?;
    Ok(0)
}
