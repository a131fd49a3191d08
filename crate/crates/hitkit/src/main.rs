use clap::{Args, Parser, Subcommand};
use hitkit::cli::{self, Command as RunCommand, OutputFormat, RunManifest};

/// Hitting-time and hitting-place kernels of Bessel-Brownian diffusions:
/// evaluate closed forms, run the exact/near-exact samplers, and verify the
/// two against each other.
#[derive(Parser)]
#[command(name = "hitkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a kernel over a grid and emit a table.
    Eval(CommonArgs),
    /// Draw Monte Carlo hitting samples and emit them as columns.
    Simulate(CommonArgs),
    /// Run a named verification suite and write a JSON report.
    Verify(CommonArgs),
    /// Pretty-print a previously written verification report.
    Report(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON manifest file; explicit flags override its values.
    #[arg(long)]
    manifest: Option<String>,
    /// Stability index α ∈ (0, 2).
    #[arg(long)]
    alpha: Option<f64>,
    /// Relativistic mass m ≥ 0.
    #[arg(long)]
    mass: Option<f64>,
    /// Laplace rate λ ≥ 0 of the e^(-λ²τ/2) weight.
    #[arg(long)]
    lambda: Option<f64>,
    /// Geometry id (eval: halfline2d, halfspace, interval, strip_ft,
    /// halfline_complement, resolvent; simulate: halfline2d,
    /// halfline2d_time, strip, halfspace, halfline_complement).
    #[arg(long)]
    geometry: Option<String>,
    /// Start coordinates, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    start: Option<Vec<f64>>,
    /// Grid points, comma-separated and strictly increasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Option<Vec<f64>>,
    /// Transverse frequency (strip_ft geometry).
    #[arg(long)]
    freq: Option<f64>,
    /// Number of Monte Carlo paths.
    #[arg(long)]
    paths: Option<u64>,
    /// Euler time step for the strip SDE.
    #[arg(long)]
    dt: Option<f64>,
    /// Skeleton points for additive-clock quadrature.
    #[arg(long)]
    substeps: Option<u32>,
    /// RNG seed; recorded in every output header.
    #[arg(long)]
    seed: Option<u64>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Verification suite id ('all' runs everything).
    #[arg(long)]
    suite: Option<String>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
    /// Input file (report command).
    #[arg(long)]
    input: Option<String>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
}

fn main() {
    // cap worker threads before any parallel work starts
    if let Ok(threads) = std::env::var("HITKIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Cmd::Eval(a) => (RunCommand::Eval, a),
        Cmd::Simulate(a) => (RunCommand::Simulate, a),
        Cmd::Verify(a) => (RunCommand::Verify, a),
        Cmd::Report(a) => (RunCommand::Report, a),
    };
    let manifest = match build_manifest(cmd, args) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("usage error: {e}");
            std::process::exit(cli::EXIT_USAGE);
        }
    };
    std::process::exit(cli::run(&manifest));
}

fn build_manifest(cmd: RunCommand, args: CommonArgs) -> Result<RunManifest, String> {
    let mut manifest: RunManifest = match &args.manifest {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?
        }
        None => serde_json::from_value(serde_json::json!({ "command": "eval" })).unwrap(),
    };
    manifest.command = cmd;
    if let Some(v) = args.alpha {
        manifest.alpha = v;
    }
    if let Some(v) = args.mass {
        manifest.mass = v;
    }
    if let Some(v) = args.lambda {
        manifest.lambda = v;
    }
    if args.geometry.is_some() {
        manifest.geometry = args.geometry;
    }
    if let Some(v) = args.start {
        manifest.start = v;
    }
    if let Some(v) = args.grid {
        manifest.grid = v;
    }
    if let Some(v) = args.freq {
        manifest.freq = v;
    }
    if let Some(v) = args.paths {
        manifest.paths = v;
    }
    if let Some(v) = args.dt {
        manifest.dt = v;
    }
    if let Some(v) = args.substeps {
        manifest.substeps = v;
    }
    if let Some(v) = args.seed {
        manifest.seed = v;
    }
    if let Some(v) = args.tol {
        manifest.tol = v;
    }
    if args.suite.is_some() {
        manifest.suite = args.suite;
    }
    if args.out.is_some() {
        manifest.out = args.out;
    }
    if args.input.is_some() {
        manifest.input = args.input;
    }
    if let Some(f) = args.format {
        manifest.format = match f.as_str() {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => return Err(format!("unknown format '{other}'")),
        };
    }
    Ok(manifest)
}
