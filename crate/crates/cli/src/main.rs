use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sp4_pingpong::cones::{alpha, Backend};
use sp4_pingpong::limitset::{
    limit_curve_samples, limit_surface_samples, ChartPoint, ExportFormat, LimitSample,
    MinkowskiChart, PointCloud, PointKind, SampleLimits, SamplePoint, DEFAULT_BASEPOINT,
    DEFAULT_SAMPLE_CAP,
};
use sp4_pingpong::monodromy::{build_group, order_of_r};
use sp4_pingpong::verify::{crooked_report, identities_report, verify};
use sp4_pingpong::Error;

/// Exact verification of the ping-pong certificate for the Sp(4) hypergeometric
/// reflection groups, with crooked-surface geometry and limit-set sampling.
#[derive(Parser)]
#[command(name = "pingpong", version)]
struct Cli {
    /// Worker threads
    #[arg(long, global = true, env = "PINGPONG_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Export {
    /// Word length bound
    #[arg(long)]
    depth: usize,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: ExportFormat,
    /// Maximum number of samples before giving up
    #[arg(long, default_value_t = DEFAULT_SAMPLE_CAP)]
    cap: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of the group data
    Info {
        n: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Relations, conjugacy data and the ping-pong certificate
    Verify {
        n: u32,
        #[arg(long, default_value = "exact", value_parser = parse_backend)]
        backend: Backend,
        #[command(flatten)]
        output: Output,
    },
    /// Trigonometric identity bank for every k in 1..N
    Identities {
        n: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Pairwise relations among the crooked surfaces
    Crooked {
        n: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Samples of the limit curve in P(R^4)
    LimitCurve {
        n: u32,
        #[command(flatten)]
        export: Export,
    },
    /// Samples of the limit set in the Lagrangian Grassmannian
    LimitSurface {
        n: u32,
        /// Photons per wing and grid size per stem component
        #[arg(long, default_value_t = 8)]
        density: usize,
        /// Map samples to a Minkowski chart
        #[arg(long)]
        chart: bool,
        /// Chart basepoint as five comma-separated Plücker coordinates
        #[arg(long, value_delimiter = ',', num_args = 5, requires = "chart")]
        basepoint: Option<Vec<f64>>,
        #[command(flatten)]
        export: Export,
    },
    /// Verify every N in a range
    Batch {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value = "exact", value_parser = parse_backend)]
        backend: Backend,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ExportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Check,
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) | Error::Resource(m) => Failure::Usage(m),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| {
            Failure::from(Error::Io {
                path: p.to_path_buf(),
                source,
            })
        }),
        None => {
            let mut so = std::io::stdout().lock();
            match so.write_all(text.as_bytes()).and_then(|_| so.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Runtime(e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

fn emit_json(v: &Value, out: &Output, passed: bool) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON values");
    s.push('\n');
    emit(&s, out.out.as_deref())?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serialisable report")
}

fn info(n: u32) -> Result<Value, Failure> {
    let d = build_group(n)?;
    let f = |x: &sp4_pingpong::CycloReal| json!({"exact": to_value(x), "approx": x.to_f64()});
    Ok(json!({
        "N": n,
        "conductor": d.conductor(),
        "params": to_value(&d.params),
        "theta_over_pi": d.theta.to_string(),
        "c1": f(&d.c1), "c2": f(&d.c2), "s1": f(&d.s1), "s2": f(&d.s2),
        "r1": f(&d.r1), "r2": f(&d.r2), "L1": f(&d.l1), "L2": f(&d.l2),
        "alpha": f(&alpha(&d)),
        "rotation_order": to_value(&order_of_r(&d)?),
    }))
}

fn export_cloud(
    samples: Vec<LimitSample>,
    kind: PointKind,
    meta: Vec<(&str, String)>,
    ex: &Export,
) -> Result<(), Failure> {
    let mut cloud = PointCloud::new(kind, samples)?;
    for (k, v) in meta {
        cloud.metadata.insert(k.into(), v);
    }
    emit(&cloud.render(ex.format), ex.output.out.as_deref())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    match cli.command {
        Command::Info { n, output } => emit_json(&info(n)?, &output, true),
        Command::Verify { n, backend, output } => {
            let r = verify(n, backend)?;
            emit_json(&to_value(&r), &output, r.passed)
        }
        Command::Identities { n, output } => {
            let r = identities_report(n)?;
            emit_json(&to_value(&r), &output, r.passed)
        }
        Command::Crooked { n, output } => {
            let r = crooked_report(n)?;
            emit_json(&to_value(&r), &output, r.passed)
        }
        Command::LimitCurve { n, export } => {
            let d = build_group(n)?;
            let limits = SampleLimits {
                max_samples: export.cap,
            };
            let s = limit_curve_samples(&d, export.depth, limits)?;
            let meta = vec![
                ("N", n.to_string()),
                ("depth", export.depth.to_string()),
                (
                    "seeds",
                    "fixed lines of g CA g^-1 and images of g (AB - Id) g^-1 over all cones".into(),
                ),
            ];
            export_cloud(s, PointKind::Projective, meta, &export)
        }
        Command::LimitSurface {
            n,
            density,
            chart,
            basepoint,
            export,
        } => {
            let d = build_group(n)?;
            let limits = SampleLimits {
                max_samples: export.cap,
            };
            let s = limit_surface_samples(&d, export.depth, density, limits)?;
            let mut meta = vec![
                ("N", n.to_string()),
                ("depth", export.depth.to_string()),
                ("density", density.to_string()),
                ("reference_frame", "C0".into()),
            ];
            if !chart {
                return export_cloud(s, PointKind::Lagrangian, meta, &export);
            }
            let bp: [f64; 5] = match basepoint {
                Some(v) => v
                    .try_into()
                    .map_err(|_| Failure::Usage("basepoint needs 5 values".into()))?,
                None => DEFAULT_BASEPOINT,
            };
            let c = MinkowskiChart::new(&bp)?;
            let mut misses = 0usize;
            let mapped: Vec<LimitSample> = s
                .into_iter()
                .filter_map(|mut x| {
                    let SamplePoint::Lagrangian(w) = x.point else {
                        return None;
                    };
                    match c.coords(&w) {
                        ChartPoint::Point(p) => {
                            x.point = SamplePoint::Chart(p);
                            Some(x)
                        }
                        ChartPoint::ChartMiss => {
                            misses += 1;
                            None
                        }
                    }
                })
                .collect();
            meta.push(("basepoint", format!("{bp:?}")));
            meta.push(("chart_misses", misses.to_string()));
            export_cloud(mapped, PointKind::Chart, meta, &export)
        }
        Command::Batch {
            from,
            to,
            backend,
            output,
        } => {
            if from > to {
                return Err(Failure::Usage(format!("empty range {from}..={to}")));
            }
            let reports = (from..=to)
                .map(|n| verify(n, backend))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(|r| r.passed);
            let v =
                json!({"from": from, "to": to, "passed": passed, "reports": to_value(&reports)});
            emit_json(&v, &output, passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
