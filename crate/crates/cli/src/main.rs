//! Command-line driver: forward moment transforms, inversion with
//! residual reports, deterministic noise injection, and benchmark
//! suites. Exit codes: 0 success, 2 input/usage error, 3 inversion
//! failure.

use clap::{Parser, Subcommand, ValueEnum};
use mominv::forward::{self, Disk, PlanarDomain};
use mominv::inversion::{self, InversionError, InversionReport};
use mominv::linalg::{self, HilbertLikeMatrix};
use mominv::models::document::{Document, DocumentError};
use mominv::models::SpikeTrain;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "mominv", version, about = "Moment transforms and inversion for structured signal models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute moments of a model file.
    Forward {
        /// Input model file (polynomial, rational, spikes, piecewise, polygon, curve).
        input: PathBuf,
        /// Highest moment order K.
        #[arg(long)]
        order: usize,
        /// Second index order L for double-moment tables (curve input,
        /// or polygon when a table rather than complex moments is wanted).
        #[arg(long)]
        order2: Option<usize>,
        /// Output moments file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct a model from a moments file and write it with a report.
    Invert {
        /// Input moments file (moments, complex-moments, or double-moments).
        input: PathBuf,
        /// Model class to reconstruct.
        #[arg(long, value_enum)]
        model: ModelKind,
        /// Model order: polynomial degree, rational degree, spike count,
        /// vertex count, or the maximal quadrature-domain order.
        #[arg(long)]
        order: usize,
        /// Acceptance gate on the round-trip residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Output model file; the report goes to `<out>.report`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Add seeded Gaussian noise to a moments file.
    Noise {
        input: PathBuf,
        /// Noise level relative to the largest moment magnitude.
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a benchmark suite and write its machine-readable table.
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelKind {
    Polynomial,
    Rational,
    Spikes,
    Polygon,
    Qdomain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    PronyScaling,
    HilbertConditioning,
    PolygonRoundtrip,
    QdomainRoundtrip,
}

enum CliError {
    /// Unreadable, unparsable, or semantically invalid input (exit 2).
    Input(String),
    /// Numerical failure inside an inversion (exit 3).
    Inversion { name: &'static str, message: String },
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<InversionError> for CliError {
    fn from(e: InversionError) -> Self {
        CliError::Inversion {
            name: e.name(),
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Inversion { name, message }) => {
            eprintln!("error: {name}: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Forward {
            input,
            order,
            order2,
            out,
        } => cmd_forward(&input, order, order2, &out),
        Command::Invert {
            input,
            model,
            order,
            tol,
            out,
        } => cmd_invert(&input, model, order, tol, &out),
        Command::Noise {
            input,
            sigma,
            seed,
            out,
        } => cmd_noise(&input, sigma, seed, &out),
        Command::Bench { suite, out, seed } => cmd_bench(suite, &out, seed),
    }
}

// ---------------------------------------------------------------------------
// forward

fn cmd_forward(
    input: &Path,
    order: usize,
    order2: Option<usize>,
    out: &Path,
) -> Result<(), CliError> {
    let doc = Document::read(input)?;
    let result = match &doc {
        Document::Polynomial { .. } => {
            Document::from(&forward::moments_polynomial(&doc.as_polynomial()?, order))
        }
        Document::Rational { .. } => Document::from(
            &forward::moments_rational(&doc.as_rational()?, order)
                .map_err(|e| CliError::Input(e.to_string()))?,
        ),
        Document::Spikes { .. } => {
            Document::from(&forward::moments_spikes(&doc.as_spikes()?, order))
        }
        Document::Piecewise { .. } => {
            Document::from(&forward::moments_piecewise(&doc.as_piecewise()?, order))
        }
        Document::Polygon { .. } => {
            let polygon = doc.as_polygon()?;
            match order2 {
                // a polygon yields complex moments by default and a
                // double-moment table when both orders are given
                None => Document::from(&forward::complex_moments_polygon(&polygon, order)),
                Some(l) => Document::from(
                    &forward::double_moments_domain(&PlanarDomain::Polygon(polygon), order, l)
                        .map_err(|e| CliError::Input(e.to_string()))?,
                ),
            }
        }
        Document::Curve { .. } => {
            let curve = doc.as_curve()?;
            Document::from(&forward::moments_curve(&curve, order, order2.unwrap_or(1)))
        }
        other => {
            return Err(CliError::Input(format!(
                "cannot compute moments of a `{}` file",
                other.kind()
            )))
        }
    };
    result.write(out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// invert

fn write_report(out: &Path, entries: &[(String, String)]) -> Result<(), CliError> {
    let mut text = String::from("metric\tvalue\n");
    for (k, v) in entries {
        let _ = writeln!(text, "{k}\t{v}");
    }
    let path = report_path(out);
    std::fs::write(&path, text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn report_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_os_string();
    os.push(".report");
    PathBuf::from(os)
}

fn report_entries(report: &InversionReport, detected: Option<usize>) -> Vec<(String, String)> {
    let mut entries = vec![
        ("residual".to_string(), format!("{:e}", report.residual)),
        ("condition".to_string(), format!("{:e}", report.condition)),
    ];
    match detected.or(report.detected_order) {
        Some(n) => entries.push(("order_detected".into(), n.to_string())),
        None => entries.push(("order_detected".into(), "none".into())),
    }
    for (i, w) in report.warnings.iter().enumerate() {
        entries.push((format!("warning_{i}"), w.clone()));
    }
    entries
}

fn gate_residual(report: &InversionReport, tol: f64) -> Result<(), CliError> {
    if report.residual > tol {
        return Err(CliError::Inversion {
            name: "residual-too-large",
            message: format!(
                "round-trip residual {:.3e} exceeds --tol {tol:.3e}",
                report.residual
            ),
        });
    }
    Ok(())
}

fn cmd_invert(
    input: &Path,
    model: ModelKind,
    order: usize,
    tol: f64,
    out: &Path,
) -> Result<(), CliError> {
    let doc = Document::read(input)?;
    match model {
        ModelKind::Polynomial => {
            let m = doc.as_moments()?;
            let (rec, report) = inversion::invert_polynomial(&m, order)?;
            gate_residual(&report, tol)?;
            let detected = inversion::estimate_order(&m.values, order + 2);
            Document::from(&rec).write(out)?;
            write_report(out, &report_entries(&report, detected))
        }
        ModelKind::Rational => {
            let m = doc.as_moments()?;
            let (rec, report) = inversion::invert_rational(&m, order)?;
            gate_residual(&report, tol)?;
            let detected = inversion::estimate_order(&m.values, order + 2);
            Document::from(&rec).write(out)?;
            write_report(out, &report_entries(&report, detected))
        }
        ModelKind::Spikes => {
            let m = doc.as_moments()?;
            let (rec, report) = inversion::prony(&m, order)?;
            gate_residual(&report, tol)?;
            let detected = inversion::estimate_order(&m.values, order + 2);
            Document::from(&rec).write(out)?;
            write_report(out, &report_entries(&report, detected))
        }
        ModelKind::Polygon => {
            let mu = doc.as_complex_moments()?;
            let (rec, weights, report) = inversion::invert_polygon(&mu, order)?;
            gate_residual(&report, tol)?;
            let detected = inversion::estimate_order(&mu.values, order + 2);
            Document::from(&rec).write(out)?;
            let mut entries = report_entries(&report, detected);
            for (i, w) in weights.iter().enumerate() {
                entries.push((format!("davis_weight_{i}"), format!("{:e} {:e}", w.re, w.im)));
            }
            write_report(out, &entries)
        }
        ModelKind::Qdomain => {
            let table = doc.as_double_moments()?;
            let (data, defining, report) =
                inversion::invert_quadrature_domain(&table, order, None)?;
            gate_residual(&report, tol)?;
            Document::from_quadrature_domain(&data, &defining).write(out)?;
            write_report(out, &report_entries(&report, None))
        }
    }
}

// ---------------------------------------------------------------------------
// noise

fn cmd_noise(input: &Path, sigma: f64, seed: u64, out: &Path) -> Result<(), CliError> {
    if sigma < 0.0 {
        return Err(CliError::Input("--sigma must be nonnegative".into()));
    }
    let raw = std::fs::read(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let text = String::from_utf8(raw.clone())
        .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", input.display())))?;
    let doc = Document::from_text(&text)?;
    if sigma == 0.0 {
        // exact byte copy keeps the zero-noise file identical
        std::fs::write(out, raw).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noised = match doc {
        Document::Moments { values, interval } => {
            let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
            let normal = gaussian(sigma * scale)?;
            Document::Moments {
                values: values.iter().map(|v| v + normal.sample(&mut rng)).collect(),
                interval,
            }
        }
        Document::ComplexMoments { values } => {
            let scale = values
                .iter()
                .map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt())
                .fold(0.0, f64::max);
            let normal = gaussian(sigma * scale)?;
            Document::ComplexMoments {
                values: values
                    .iter()
                    .map(|p| [p[0] + normal.sample(&mut rng), p[1] + normal.sample(&mut rng)])
                    .collect(),
            }
        }
        Document::DoubleMoments { entries } => {
            let scale = entries
                .iter()
                .flatten()
                .map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt())
                .fold(0.0, f64::max);
            let normal = gaussian(sigma * scale)?;
            Document::DoubleMoments {
                entries: entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|p| {
                                [p[0] + normal.sample(&mut rng), p[1] + normal.sample(&mut rng)]
                            })
                            .collect()
                    })
                    .collect(),
            }
        }
        other => {
            return Err(CliError::Input(format!(
                "noise applies to moment data, not a `{}` file",
                other.kind()
            )))
        }
    };
    noised.write(out)?;
    Ok(())
}

fn gaussian(std_dev: f64) -> Result<Normal<f64>, CliError> {
    Normal::new(0.0, std_dev.max(0.0))
        .map_err(|e| CliError::Input(format!("cannot build noise distribution: {e}")))
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
    instance: String,
    size: usize,
    columns: Vec<(&'static str, String)>,
}

fn cmd_bench(suite: Suite, out: &Path, seed: u64) -> Result<(), CliError> {
    let (name, rows) = match suite {
        Suite::PronyScaling => ("prony-scaling", bench_prony(seed)),
        Suite::HilbertConditioning => ("hilbert-conditioning", bench_hilbert()),
        Suite::PolygonRoundtrip => ("polygon-roundtrip", bench_polygon(seed)?),
        Suite::QdomainRoundtrip => ("qdomain-roundtrip", bench_qdomain()?),
    };
    let mut header = vec!["suite", "instance", "size"];
    header.extend(rows[0].columns.iter().map(|(k, _)| *k));
    let mut table = header.join("\t");
    table.push('\n');
    for row in &rows {
        let mut line = format!("{name}\t{}\t{}", row.instance, row.size);
        for (_, v) in &row.columns {
            let _ = write!(line, "\t{v}");
        }
        table.push_str(&line);
        table.push('\n');
    }
    std::fs::write(out, &table).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    println!("suite {name}: {} instances", rows.len());
    for row in &rows {
        let cols: Vec<String> = row
            .columns
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        println!("  {} (size {}): {}", row.instance, row.size, cols.join(" "));
    }
    Ok(())
}

fn sample_spike_train(rng: &mut ChaCha8Rng, n: usize) -> SpikeTrain {
    // jittered equispaced nodes: separation stays >= 0.6/n so the
    // Hankel window remains solvable through n = 8
    let nodes: Vec<f64> = (0..n)
        .map(|i| 0.06 + 0.88 * (i as f64 + 0.5 + rng.gen_range(-0.2..0.2)) / n as f64)
        .collect();
    let weights = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
    SpikeTrain::new(nodes, weights).unwrap()
}

fn bench_prony(seed: u64) -> Vec<BenchRow> {
    (1..=8)
        .map(|n| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(n as u64));
            let truth = sample_spike_train(&mut rng, n);
            let m = forward::moments_spikes(&truth, 2 * n - 1);
            let started = Instant::now();
            let outcome = inversion::prony(&m, n);
            let runtime = started.elapsed().as_secs_f64() * 1e3;
            let (residual, condition) = match &outcome {
                Ok((_, report)) => (format!("{:e}", report.residual), format!("{:e}", report.condition)),
                Err(e) => (format!("error:{}", e.name()), "none".into()),
            };
            BenchRow {
                instance: format!("spikes-{n}"),
                size: n,
                columns: vec![
                    ("residual", residual),
                    ("runtime_ms", format!("{runtime:.3}")),
                    ("condition", condition),
                ],
            }
        })
        .collect()
}

fn bench_hilbert() -> Vec<BenchRow> {
    (3..=7)
        .map(|d| {
            let started = Instant::now();
            let h = HilbertLikeMatrix::for_degree(d).to_mat();
            let lambda = linalg::min_eigenvalue_spd(&h).expect("symmetric by construction");
            let runtime = started.elapsed().as_secs_f64() * 1e3;
            let asym = HilbertLikeMatrix::asymptotic_min_eigenvalue(d);
            BenchRow {
                instance: format!("hilbert-{d}"),
                size: d,
                columns: vec![
                    ("lambda_min", format!("{lambda:e}")),
                    ("asymptote", format!("{asym:e}")),
                    ("ratio", format!("{:.6}", lambda / asym)),
                    ("runtime_ms", format!("{runtime:.3}")),
                ],
            }
        })
        .collect()
}

fn bench_polygon(seed: u64) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for (i, n) in (3..=6).cycle().take(8).enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(100 + i as u64));
        let polygon = sample_circle_polygon(&mut rng, n);
        let mu = forward::complex_moments_polygon(&polygon, 2 * n - 1);
        let started = Instant::now();
        let outcome = inversion::invert_polygon(&mu, n);
        let runtime = started.elapsed().as_secs_f64() * 1e3;
        let (residual, condition) = match &outcome {
            Ok((_, _, report)) => (
                format!("{:e}", report.residual),
                format!("{:e}", report.condition),
            ),
            Err(e) => (format!("error:{}", e.name()), "none".into()),
        };
        rows.push(BenchRow {
            instance: format!("polygon-{i}"),
            size: n,
            columns: vec![
                ("residual", residual),
                ("runtime_ms", format!("{runtime:.3}")),
                ("condition", condition),
            ],
        });
    }
    Ok(rows)
}

fn sample_circle_polygon(rng: &mut ChaCha8Rng, n: usize) -> mominv::models::Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..(2.0 * std::f64::consts::PI)))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ok = angles.windows(2).all(|w| w[1] - w[0] > 0.3);
        ok &= angles[0] + 2.0 * std::f64::consts::PI - angles[n - 1] > 0.3;
        if !ok {
            continue;
        }
        let r = rng.gen_range(0.7..1.3);
        let vertices = angles
            .iter()
            .map(|&a| mominv::Complex64::from_polar(r, a))
            .collect();
        if let Ok(p) = mominv::models::Polygon::new(vertices) {
            return p;
        }
    }
}

fn bench_qdomain() -> Result<Vec<BenchRow>, CliError> {
    let zero = mominv::Complex64::new(0.0, 0.0);
    let domains = vec![
        ("disk-half", PlanarDomain::Disk(Disk { center: zero, radius: 0.5 }), 1),
        ("disk-unit", PlanarDomain::Disk(Disk { center: zero, radius: 1.0 }), 1),
        (
            "two-disks",
            PlanarDomain::DiskUnion(vec![
                Disk {
                    center: mominv::Complex64::new(0.8, 0.0),
                    radius: 0.3,
                },
                Disk {
                    center: mominv::Complex64::new(-0.8, 0.0),
                    radius: 0.3,
                },
            ]),
            2,
        ),
    ];
    let mut rows = Vec::new();
    for (label, domain, size) in domains {
        let table = forward::double_moments_domain(&domain, 4, 4)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let started = Instant::now();
        let outcome = inversion::invert_quadrature_domain(&table, 4, None);
        let runtime = started.elapsed().as_secs_f64() * 1e3;
        let (residual, condition) = match &outcome {
            Ok((_, _, report)) => (
                format!("{:e}", report.residual),
                format!("{:e}", report.condition),
            ),
            Err(e) => (format!("error:{}", e.name()), "none".into()),
        };
        rows.push(BenchRow {
            instance: label.to_string(),
            size,
            columns: vec![
                ("residual", residual),
                ("runtime_ms", format!("{runtime:.3}")),
                ("condition", condition),
            ],
        });
    }
    Ok(rows)
}
