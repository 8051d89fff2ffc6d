mod suites;
mod tables;

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_soergel::bimodule::{
    default_degree_bound, tensor_decompose, tensor_rank_oracle, total_graded_rank, ShiftedIndec,
};
use cyclic_soergel::cyclotomic::CycContext;
use cyclic_soergel::semisimple::{semisimple_check, SpectralReport};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "soergel",
    version,
    about = "Soergel-type bimodules for the cyclic reflection group of order d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Order of the cyclic group (d >= 2).
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Highest grading degree examined by graded checks (even, positive).
    /// Defaults to 2(2d+2).
    #[arg(long)]
    degree_bound: Option<usize>,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Numeric tolerance for the semisimplicity criterion.
    #[arg(long, default_value_t = 1e-6)]
    precision: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the tensor product of two shifted indecomposables.
    Decompose {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
        /// Compare graded ranks with the quotient-ring oracle.
        #[arg(long)]
        check: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Spectral semisimplicity check at a point or along v = exp(iθ).
    Semisimple {
        #[command(flatten)]
        common: Common,
        /// Complex literal such as `2`, `0.5+0.8660254i` or `-1i`.
        #[arg(long, conflicts_with = "v_grid", required_unless_present = "v_grid")]
        v: Option<String>,
        /// Angle sweep `start:stop:step` for θ.
        #[arg(long)]
        v_grid: Option<String>,
    },
    /// Export structure constants, census, Hom ranks and Hecke coefficients.
    Tables {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Presentation,
    Soergel,
    Ses,
    Hom,
    Categorification,
    Umodule,
    All,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub struct Config {
    pub ctx: Arc<CycContext>,
    pub degree_bound: usize,
    pub precision: f64,
}

impl Config {
    pub fn d(&self) -> usize {
        self.ctx.order()
    }
}

fn configure(c: &Common) -> Result<(Config, rayon::ThreadPool), Failure> {
    if c.d < 2 {
        return Err(usage(format!("--d must be at least 2, got {}", c.d)));
    }
    let degree_bound = c.degree_bound.unwrap_or_else(|| default_degree_bound(c.d));
    if degree_bound == 0 || !degree_bound.is_multiple_of(2) {
        return Err(usage(format!(
            "--degree-bound must be even and positive, got {degree_bound}"
        )));
    }
    if !(c.precision.is_finite() && c.precision > 0.0) {
        return Err(usage(format!(
            "--precision must be positive, got {}",
            c.precision
        )));
    }
    let ctx = CycContext::new(c.d).map_err(usage)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.jobs)
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;
    Ok((
        Config {
            ctx,
            degree_bound,
            precision: c.precision,
        },
        pool,
    ))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = stdout.flush();
            eprintln!("soergel: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Decompose {
            common,
            a,
            b,
            check,
        } => {
            let (cfg, _) = configure(&common)?;
            decompose(
                &cfg,
                common.format.unwrap_or(Format::Text),
                &a,
                &b,
                check,
                out,
            )
        }
        Command::Verify { common, suite } => {
            let (cfg, pool) = configure(&common)?;
            let results = pool.install(|| suites::run_suite(&cfg, suite));
            suites::print_results(&results, common.format.unwrap_or(Format::Text), out)
        }
        Command::Semisimple { common, v, v_grid } => {
            let (cfg, pool) = configure(&common)?;
            let format = common.format.unwrap_or(Format::Json);
            match (v, v_grid) {
                (Some(v), _) => semisimple_point(&cfg, format, &v, out),
                (None, Some(g)) => semisimple_grid(&cfg, &pool, format, &g, out),
                (None, None) => Err(usage("one of --v or --v-grid is required")),
            }
        }
        Command::Tables { common, out: dir } => {
            let (cfg, pool) = configure(&common)?;
            let t = pool
                .install(|| tables::build(&cfg))
                .map_err(Failure::Verification)?;
            tables::emit(
                &t,
                common.format.unwrap_or(Format::Text),
                dir.as_deref(),
                out,
            )
        }
    }
}

fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn decompose(
    cfg: &Config,
    format: Format,
    a: &str,
    b: &str,
    check: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let d = cfg.d();
    let a = ShiftedIndec::parse(d, a).map_err(usage)?;
    let b = ShiftedIndec::parse(d, b).map_err(usage)?;
    let list = tensor_decompose(&a, &b).map_err(|e| Failure::Verification(e.to_string()))?;
    match format {
        Format::Text => writeln!(out, "{list}")?,
        Format::Json => write_json(out, &list.to_records())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in list.to_records() {
                w.serialize(r).map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    if check {
        let oracle = tensor_rank_oracle(&cfg.ctx, &a, &b)
            .map_err(|e| Failure::Verification(e.to_string()))?;
        let predicted = total_graded_rank(&list);
        if oracle != predicted {
            return Err(Failure::Verification(format!(
                "graded rank of {a} ⊗ {b} is {oracle}, decomposition gives {predicted}"
            )));
        }
        // keep stdout machine-readable for json/csv
        eprintln!("check: graded rank {oracle} agrees with the quotient-ring oracle");
    }
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.replace('j', "i");
    let normalized = match t.as_str() {
        "i" | "+i" => "1i".to_string(),
        "-i" => "-1i".to_string(),
        _ => t,
    };
    normalized
        .parse::<Complex64>()
        .map_err(|_| usage(format!("malformed complex literal {s:?}")))
}

fn format_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}

fn spectral(cfg: &Config, v: Complex64) -> Result<SpectralReport, Failure> {
    semisimple_check(&cfg.ctx, v, cfg.precision).map_err(|e| match e {
        cyclic_soergel::semisimple::SemisimpleError::InvalidParameter(m) => Failure::Usage(m),
        other => Failure::Verification(other.to_string()),
    })
}

fn print_report_text(r: &SpectralReport, out: &mut impl Write) -> Result<(), Failure> {
    writeln!(
        out,
        "d={} v={} criterion={} verdict: {}",
        r.d,
        format_complex(Complex64::new(r.v[0], r.v[1])),
        r.criterion,
        r.verdict
    )?;
    for b in &r.blocks {
        let eig: Vec<String> = b
            .eigenvalues
            .iter()
            .map(|z| format_complex(Complex64::new(z[0], z[1])))
            .collect();
        writeln!(
            out,
            "  η=ζ^{} dim={} distinct={} [{}]",
            b.eta_exp,
            b.dim,
            b.distinct,
            eig.join(", ")
        )?;
    }
    Ok(())
}

fn semisimple_point(
    cfg: &Config,
    format: Format,
    v: &str,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let v = parse_complex(v)?;
    let report = spectral(cfg, v)?;
    match format {
        Format::Json => write_json(out, &report),
        Format::Text => print_report_text(&report, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            grid_csv_header(&mut w)?;
            grid_csv_row(
                &mut w,
                &GridPoint {
                    theta: v.arg(),
                    flagged: false,
                    nearest_k: 0,
                    report,
                },
            )?;
            w.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GridPoint {
    theta: f64,
    flagged: bool,
    nearest_k: usize,
    report: SpectralReport,
}

#[derive(Serialize)]
struct Band {
    k: usize,
    theta_critical: f64,
    thetas: Vec<f64>,
}

#[derive(Serialize)]
struct GridReport {
    d: usize,
    start: f64,
    stop: f64,
    step: f64,
    bands: Vec<Band>,
    points: Vec<GridPoint>,
}

fn parse_grid(s: &str) -> Result<(f64, f64, f64), Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || usage(format!("malformed grid {s:?}, expected start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(bad());
    }
    if (stop - start) / step > 1e6 {
        return Err(usage("grid has more than a million points"));
    }
    Ok((start, stop, step))
}

fn semisimple_grid(
    cfg: &Config,
    pool: &rayon::ThreadPool,
    format: Format,
    grid: &str,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let (start, stop, step) = parse_grid(grid)?;
    let d = cfg.d();
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    let thetas: Vec<f64> = (0..count).map(|n| start + n as f64 * step).collect();
    let points: Vec<GridPoint> = pool.install(|| {
        thetas
            .par_iter()
            .map(|&theta| {
                let report = spectral(cfg, Complex64::from_polar(1.0, theta))?;
                let (nearest_k, gap) = (1..d)
                    .map(|k| (k, (theta - k as f64 * PI / d as f64).abs()))
                    .fold(
                        (0, f64::INFINITY),
                        |best, x| if x.1 < best.1 { x } else { best },
                    );
                Ok(GridPoint {
                    theta,
                    flagged: gap <= step / 2.0,
                    nearest_k,
                    report,
                })
            })
            .collect::<Result<_, Failure>>()
    })?;
    let mut bands: Vec<Band> = Vec::new();
    for p in points.iter().filter(|p| p.flagged) {
        match bands.last_mut() {
            Some(b) if b.k == p.nearest_k => b.thetas.push(p.theta),
            _ => bands.push(Band {
                k: p.nearest_k,
                theta_critical: p.nearest_k as f64 * PI / d as f64,
                thetas: vec![p.theta],
            }),
        }
    }
    let grid = GridReport {
        d,
        start,
        stop,
        step,
        bands,
        points,
    };
    match format {
        Format::Json => write_json(out, &grid),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            grid_csv_header(&mut w)?;
            for p in &grid.points {
                grid_csv_row(&mut w, p)?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            for p in &grid.points {
                let mark = if p.flagged {
                    format!("  <- near {}π/{d}", p.nearest_k)
                } else {
                    String::new()
                };
                writeln!(out, "θ={:.6} verdict: {}{mark}", p.theta, p.report.verdict)?;
            }
            writeln!(out, "{} flagged band(s)", grid.bands.len())?;
            Ok(())
        }
    }
}

fn grid_csv_header<W: Write>(w: &mut csv::Writer<W>) -> Result<(), Failure> {
    w.write_record([
        "theta",
        "v_re",
        "v_im",
        "criterion",
        "verdict",
        "flagged",
        "nearest_k",
    ])
    .map_err(|e| Failure::Io(e.to_string()))
}

fn grid_csv_row<W: Write>(w: &mut csv::Writer<W>, p: &GridPoint) -> Result<(), Failure> {
    w.write_record([
        p.theta.to_string(),
        p.report.v[0].to_string(),
        p.report.v[1].to_string(),
        p.report.criterion.to_string(),
        p.report.verdict.clone(),
        p.flagged.to_string(),
        p.nearest_k.to_string(),
    ])
    .map_err(|e| Failure::Io(e.to_string()))
}
