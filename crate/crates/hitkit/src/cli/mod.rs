//! Command-line front end: evaluate kernels on grids, run simulations, run
//! verification suites, and emit machine-readable reports.
//!
//! Every output file embeds the crate version, the fully-resolved manifest,
//! the seed and a wall-clock stamp, so any result can be reproduced from its
//! own header. Exit codes: 0 ok, 2 usage/manifest error, 3 numerical
//! failure, 4 verification failure.

mod manifest;
mod output;

pub use manifest::{Command, EvalGeometry, OutputFormat, RunManifest, SimGeometry};

use crate::diffusion_sim::{
    parallel_paths, sample_halfline_complement_hit, sample_halfline_hit_place,
    sample_halfline_hit_with_time, sample_halfspace_hit_nd, sample_strip_hit, SimConfig,
};
use crate::kernels::{
    halfline2d_boundary_kernel, halfline2d_laplace_kernel, halfline_complement_boundary,
    halfspace_poisson_relativistic, halfspace_poisson_stable, interval_poisson,
    resolvent_relativistic, strip_ft_check, StabilityParams,
};
use crate::quadrature::QuadSpec;
use crate::verify;
use output::{OutputSink, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Run a fully-resolved manifest; returns the process exit code.
pub fn run(manifest: &RunManifest) -> i32 {
    if let Err(e) = manifest.validate() {
        eprintln!("manifest error: {e}");
        return EXIT_USAGE;
    }
    let result = match manifest.command {
        Command::Eval => cmd_eval(manifest),
        Command::Simulate => cmd_simulate(manifest),
        Command::Verify => return cmd_verify(manifest),
        Command::Report => return cmd_report(manifest),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            EXIT_NUMERICAL
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

// one emitted sample row
pub(crate) struct Rec {
    pub place: Vec<f64>,
    pub time: Option<f64>,
    pub exact_place: bool,
    pub exact_time: bool,
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn numerical<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numerical(e.to_string())
}

/// Evaluate the selected geometry's kernel over the manifest grid.
fn cmd_eval(m: &RunManifest) -> Result<(), CliError> {
    let grid = m.grid_points();
    let quad = QuadSpec::with_tol(m.tol);
    let geometry = m
        .eval_geometry()
        .ok_or_else(|| CliError::Usage("eval needs a geometry".into()))?;
    let mut rows: Vec<Row> = Vec::new();
    match geometry {
        EvalGeometry::Halfline2d => {
            let p = StabilityParams::new(m.alpha, m.mass, m.lambda).map_err(numerical)?;
            let (z1, z2) = m.start2()?;
            for &r in &grid {
                let (value, err) = if z1 == 0.0 {
                    (
                        halfline2d_boundary_kernel(&p, z2, r).map_err(numerical)?,
                        0.0,
                    )
                } else {
                    (
                        halfline2d_laplace_kernel(&p, (z1, z2), r, &quad).map_err(numerical)?,
                        m.tol,
                    )
                };
                rows.push(Row::new(vec![("r", r)], value, err));
            }
        }
        EvalGeometry::Halfspace => {
            let y_tilde = m.start_vec()?;
            for &s1 in &grid {
                let mut sigma = vec![0.0; y_tilde.len()];
                sigma[0] = s1;
                let value = if m.mass > 0.0 {
                    let p = StabilityParams::relativistic(m.alpha, m.mass).map_err(numerical)?;
                    halfspace_poisson_relativistic(&p, &y_tilde, &sigma).map_err(numerical)?
                } else {
                    halfspace_poisson_stable(m.alpha, &y_tilde, &sigma).map_err(numerical)?
                };
                rows.push(Row::new(vec![("sigma1", s1)], value, 0.0));
            }
        }
        EvalGeometry::Interval => {
            let (_, z2) = m.start2()?;
            for &r in &grid {
                let value = interval_poisson(m.alpha, z2, r).map_err(numerical)?;
                rows.push(Row::new(vec![("r", r)], value, 0.0));
            }
        }
        EvalGeometry::HalflineComplement => {
            let (_, y2) = m.start2()?;
            for &r in &grid {
                let value =
                    halfline_complement_boundary(m.alpha, m.mass, y2, r).map_err(numerical)?;
                rows.push(Row::new(vec![("r", r)], value, 0.0));
            }
        }
        EvalGeometry::Resolvent => {
            let x_tilde = m.start_vec()?;
            for &d in &grid {
                let mut y_tilde = x_tilde.clone();
                y_tilde[0] += d;
                let value = resolvent_relativistic(m.alpha, m.mass, &x_tilde, &y_tilde)
                    .map_err(numerical)?;
                rows.push(Row::new(vec![("offset", d)], value, 0.0));
            }
        }
        EvalGeometry::StripFt => {
            let (y2, ybar) = m.start2()?;
            let cfg = m.sim_config();
            for &sigma2 in &grid {
                let est = strip_ft_check(
                    m.alpha,
                    m.lambda,
                    (y2, ybar),
                    sigma2,
                    0.1 * (sigma2.abs() - 1.0).max(0.5),
                    m.freq,
                    &cfg,
                )
                .map_err(numerical)?;
                rows.push(Row::with_tag(
                    "fourier",
                    vec![("sigma2", sigma2)],
                    est.lhs_re,
                    est.lhs_se,
                ));
                rows.push(Row::with_tag(
                    "shifted",
                    vec![("sigma2", sigma2)],
                    est.rhs,
                    est.rhs_se,
                ));
            }
        }
    }
    let mut sink = OutputSink::create(m)?;
    sink.write_rows(&rows)?;
    Ok(())
}

/// Run a sampler and emit one row per path with exactness flags.
fn cmd_simulate(m: &RunManifest) -> Result<(), CliError> {
    let cfg = m.sim_config();
    let geometry = m
        .sim_geometry()
        .ok_or_else(|| CliError::Usage("simulate needs a geometry".into()))?;
    let alpha = m.alpha;
    let to_rec = |s: crate::diffusion_sim::HitSample| Rec {
        place: s.place,
        time: s.time_functional,
        exact_place: s.exact_place,
        exact_time: s.exact_time,
    };
    let samples: Vec<Result<Rec, String>> = match geometry {
        SimGeometry::Halfline2d => {
            let start = m.start2().map_err(|_| CliError::Usage("bad start".into()))?;
            parallel_paths(&cfg, |rng, _| {
                sample_halfline_hit_place(alpha, start, rng)
                    .map(to_rec)
                    .map_err(|e| e.to_string())
            })
        }
        SimGeometry::Halfline2dTime => {
            let start = m.start2().map_err(|_| CliError::Usage("bad start".into()))?;
            parallel_paths(&cfg, |rng, _| {
                sample_halfline_hit_with_time(alpha, start, &cfg, rng)
                    .map(to_rec)
                    .map_err(|e| e.to_string())
            })
        }
        SimGeometry::Strip => {
            let start = m.start2().map_err(|_| CliError::Usage("bad start".into()))?;
            parallel_paths(&cfg, |rng, _| {
                sample_strip_hit(alpha, start, &cfg, rng)
                    .map(to_rec)
                    .map_err(|e| e.to_string())
            })
        }
        SimGeometry::Halfspace => {
            let start = m.start_vec().map_err(|_| CliError::Usage("bad start".into()))?;
            let n = start.len() - 1;
            parallel_paths(&cfg, |rng, _| {
                sample_halfspace_hit_nd(alpha, n, &start, &cfg, rng)
                    .map(to_rec)
                    .map_err(|e| e.to_string())
            })
        }
        SimGeometry::HalflineComplement => {
            let start = m.start_vec().map_err(|_| CliError::Usage("bad start".into()))?;
            if start.len() != 3 {
                return Err(CliError::Usage(
                    "halfline_complement start needs three coordinates".into(),
                ));
            }
            let start3 = [start[0], start[1], start[2]];
            parallel_paths(&cfg, |rng, _| {
                sample_halfline_complement_hit(alpha, &start3, &cfg, rng)
                    .map(to_rec)
                    .map_err(|e| e.to_string())
            })
        }
    };
    let failures = samples.iter().filter(|r| r.is_err()).count();
    if failures as f64 > 0.001 * cfg.n_paths as f64 {
        return Err(CliError::Numerical(format!(
            "{failures} of {} paths failed (horizon or precondition)",
            cfg.n_paths
        )));
    }
    let mut sink = OutputSink::create(m)?;
    sink.write_samples(&samples.into_iter().enumerate().collect::<Vec<_>>())?;
    Ok(())
}

/// Run a verification suite and write the JSON report; nonzero exit when any
/// criterion fails.
fn cmd_verify(m: &RunManifest) -> i32 {
    let suite = m.suite.as_deref().unwrap_or("all");
    let report = match verify::run_suite(suite, m.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("usage error: {e}");
            return EXIT_USAGE;
        }
    };
    for c in &report.criteria {
        println!("{}", c.summary_line());
        for d in &c.details {
            println!("    {d}");
        }
    }
    match OutputSink::create(m).and_then(|mut s| s.write_report(&report)) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("io error: {e:?}");
            return EXIT_USAGE;
        }
    }
    if report.pass {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

/// Pretty-print a previously written verify report.
fn cmd_report(m: &RunManifest) -> i32 {
    let path = match &m.input {
        Some(p) => p,
        None => {
            eprintln!("usage error: report needs --input pointing at a verify JSON file");
            return EXIT_USAGE;
        }
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("io error: {e}");
            return EXIT_USAGE;
        }
    };
    let wrapper: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("malformed report: {e}");
            return EXIT_USAGE;
        }
    };
    let report: verify::SuiteReport =
        match serde_json::from_value(wrapper.get("report").cloned().unwrap_or(wrapper)) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("malformed report: {e}");
                return EXIT_USAGE;
            }
        };
    for c in &report.criteria {
        println!("{}", c.summary_line());
    }
    println!(
        "suite '{}': {}",
        report.suite,
        if report.pass { "PASS" } else { "FAIL" }
    );
    if report.pass {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

impl RunManifest {
    fn sim_config(&self) -> SimConfig {
        SimConfig {
            seed: self.seed,
            n_paths: self.paths,
            dt: self.dt,
            substeps: self.substeps,
            bridge_correction: self.bridge_correction,
        }
    }
}
