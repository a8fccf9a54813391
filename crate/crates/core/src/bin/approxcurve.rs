//! Command-line front end: analyze | parametrize | distance | generate | plot.
//! Exit codes: 0 success (and rational verdicts), 2 not rational, 1 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use approxcurve::{
    cluster_decomposition, curvegen, distance_csv, distance_json, distance_stats,
    eps_singular_locus, implicitize, locus_json, param_json, parametrize, plot, poly::C64,
    BivarPoly, CurveError, PrecisionContext, Result, SimplePointRule,
};

const DIST_RANGE_DEFAULT: (f64, f64) = (-100.0, 100.0);
const PLOT_WINDOW_DEFAULT: (f64, f64) = (-5.0, 5.0);
const DIST_SAMPLES_DEFAULT: usize = 15;
const SWEEP_SAMPLES_DEFAULT: usize = 2000;
const PLOT_CELLS: usize = 400;

#[derive(Parser)]
#[command(
    name = "approxcurve",
    about = "Singularity analysis, rational parametrization, and distance \
             estimation for plane algebraic curves with approximate coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect the eps-singular locus, cluster it, and decide eps-rationality.
    Analyze(CommonArgs),
    /// Produce the rational parametrization of an eps-rational curve.
    Parametrize(ParamArgs),
    /// Estimate the distance between two curves (two polynomials in the input).
    Distance(CommonArgs),
    /// Generate the random test family of quartics with three double points.
    Generate(CommonArgs),
    /// Render a curve or a parametrization to SVG.
    Plot(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Tolerance in (0, 1); thresholds scale as epsilon times the coefficient norm.
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    /// Input file path, or an inline polynomial when no such file exists.
    #[arg(long, allow_hyphen_values = true)]
    input: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Lines per axis (distance) or sweep samples (plot).
    #[arg(long)]
    samples: Option<usize>,
    /// Probe directions per sample point for distance measurement.
    #[arg(long, default_value_t = 10)]
    directions: u32,
    /// Sampling range / plot window as "a,b".
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json, csv, or svg (per-command default).
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also emit the implicit equation of the output curve.
    #[arg(long)]
    implicitize: bool,
}

/// Validated run configuration shared by all subcommands.
struct RunConfig {
    epsilon: f64,
    input: Option<String>,
    seed: u64,
    samples: Option<usize>,
    directions: u32,
    range: Option<(f64, f64)>,
    out: Option<PathBuf>,
    format: Option<String>,
}

impl RunConfig {
    // Negated comparisons so NaN flag values fail the gates.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn from_args(a: &CommonArgs) -> Result<Self> {
        if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
            return Err(CurveError::Parse(format!(
                "epsilon {} outside (0, 1)",
                a.epsilon
            )));
        }
        if a.directions < 1 {
            return Err(CurveError::Parse("need at least one direction".into()));
        }
        if a.samples == Some(0) {
            return Err(CurveError::Parse("need at least one sample line".into()));
        }
        let range = match &a.range {
            None => None,
            Some(s) => {
                let parts: Vec<&str> = s.split(',').collect();
                let bad = || CurveError::Parse(format!("range '{}' is not of the form a,b", s));
                if parts.len() != 2 {
                    return Err(bad());
                }
                let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
                let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
                if !(lo < hi) {
                    return Err(CurveError::Parse(format!(
                        "range '{}' needs a < b",
                        s
                    )));
                }
                Some((lo, hi))
            }
        };
        Ok(RunConfig {
            epsilon: a.epsilon,
            input: a.input.clone(),
            seed: a.seed,
            samples: a.samples,
            directions: a.directions,
            range,
            out: a.out.clone(),
            format: a.format.clone(),
        })
    }

    /// Input file content, or the flag value itself as inline text.
    fn input_text(&self) -> Result<String> {
        let raw = self
            .input
            .as_ref()
            .ok_or_else(|| CurveError::Parse("missing --input".into()))?;
        if Path::new(raw).is_file() {
            Ok(std::fs::read_to_string(raw)?)
        } else {
            Ok(raw.clone())
        }
    }

    fn input_poly(&self) -> Result<BivarPoly> {
        BivarPoly::parse(self.input_text()?.trim())
    }

    /// Writes atomically when a path is set, otherwise prints to stdout.
    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            None => {
                print!("{}", content);
                if !content.ends_with('\n') {
                    println!();
                }
                Ok(())
            }
            Some(path) => write_atomic(path, content),
        }
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn cmd_analyze(cfg: &RunConfig) -> Result<i32> {
    // Analysis only needs a stable degree; the corner and infinity conditions
    // guard the parametrization stages and are checked there.
    let f = cfg.input_poly()?;
    let ctx = PrecisionContext::for_curve(&f, cfg.epsilon)?;
    let d = f.proper_degree(cfg.epsilon)?.ok_or_else(|| {
        CurveError::Assumption(
            "the top-degree form drops below the tolerance; the degree is not stable here".into(),
        )
    })?;
    let locus = eps_singular_locus(&f, &ctx)?;
    let clusters = cluster_decomposition(&locus.points, &ctx);
    // A negative deficiency is reported as a non-rational verdict, not a crash.
    let (rational, deficiency) = match approxcurve::is_eps_rational(&clusters, d) {
        Ok(pair) => pair,
        Err(CurveError::GenusBudget(g)) => (false, g),
        Err(e) => return Err(e),
    };
    let doc = locus_json(&locus, &clusters, deficiency, rational);
    cfg.emit(&format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(if rational { 0 } else { 2 })
}

fn cmd_parametrize(cfg: &RunConfig, with_implicit: bool) -> Result<i32> {
    let f = cfg.input_poly()?;
    let par = parametrize(&f, cfg.epsilon, &SimplePointRule::Auto, cfg.seed, None)?;
    let mut doc = param_json(&par);
    if with_implicit {
        let imp = implicitize(&par)?;
        doc["implicit"] = serde_json::Value::String(imp.to_text());
    }
    cfg.emit(&format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(0)
}

fn cmd_distance(cfg: &RunConfig) -> Result<i32> {
    let text = cfg.input_text()?;
    let polys: Vec<BivarPoly> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(BivarPoly::parse)
        .collect::<Result<_>>()?;
    if polys.len() != 2 {
        return Err(CurveError::Parse(format!(
            "distance needs exactly two polynomials, one per line; got {}",
            polys.len()
        )));
    }
    let (a, b) = cfg.range.unwrap_or(DIST_RANGE_DEFAULT);
    let n = cfg.samples.unwrap_or(DIST_SAMPLES_DEFAULT);
    let rep = distance_stats(
        &polys[0],
        &polys[1],
        a.round() as i64,
        b.round() as i64,
        n,
        cfg.directions,
        cfg.seed,
    )?;
    let out = match cfg.format.as_deref() {
        Some("csv") => distance_csv(&rep),
        Some("json") | None => format!("{}\n", serde_json::to_string_pretty(&distance_json(&rep))?),
        Some(other) => {
            return Err(CurveError::Parse(format!(
                "distance formats are json and csv, not '{}'",
                other
            )))
        }
    };
    cfg.emit(&out)?;
    Ok(0)
}

fn cmd_generate(cfg: &RunConfig) -> Result<i32> {
    let fam = curvegen::family(cfg.epsilon, cfg.seed)?;
    let mut lines = String::new();
    for g in &fam {
        lines.push_str(&g.f.to_text());
        lines.push('\n');
    }
    cfg.emit(&lines)?;
    if let Some(out) = &cfg.out {
        // Sidecar manifest: which grid slot and which draws made each line.
        let manifest: Vec<serde_json::Value> = fam
            .iter()
            .map(|g| {
                serde_json::json!({
                    "j": g.j, "i": g.i,
                    "draws": [g.draws.0, g.draws.1, g.draws.2, g.draws.3],
                })
            })
            .collect();
        let path = out.with_extension("manifest.json");
        write_atomic(&path, &format!("{}\n", serde_json::to_string_pretty(&manifest)?))?;
    }
    Ok(0)
}

fn cmd_plot(cfg: &RunConfig) -> Result<i32> {
    let text = cfg.input_text()?;
    let (lo, hi) = cfg.range.unwrap_or(PLOT_WINDOW_DEFAULT);
    if let Some("json" | "csv") = cfg.format.as_deref() {
        return Err(CurveError::Parse("plot emits svg only".into()));
    }
    let svg = if text.trim_start().starts_with('{') {
        // A parametrization document: reconstruct the coefficient vectors.
        let doc: serde_json::Value = serde_json::from_str(&text)?;
        let vec_of = |key: &str| -> Result<Vec<C64>> {
            doc[key]
                .as_array()
                .ok_or_else(|| CurveError::Parse(format!("missing '{}' array", key)))?
                .iter()
                .map(|p| {
                    let pair = p
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| CurveError::Parse(format!("bad pair in '{}'", key)))?;
                    Ok(C64::new(
                        pair[0].as_f64().unwrap_or(f64::NAN),
                        pair[1].as_f64().unwrap_or(f64::NAN),
                    ))
                })
                .collect()
        };
        let p1 = vec_of("p1")?;
        let p2 = vec_of("p2")?;
        let q = vec_of("q")?;
        let sweep = cfg.samples.unwrap_or(SWEEP_SAMPLES_DEFAULT);
        plot::param_curve_svg(&p1, &p2, &q, lo, hi, sweep)
    } else {
        let f = BivarPoly::parse(text.trim())?;
        let svg = plot::curve_svg(&f, lo, hi, PLOT_CELLS);
        if !svg.contains('L') {
            log::warn!("no curve branch crosses the window [{}, {}]^2", lo, hi);
        }
        svg
    };
    cfg.emit(&svg)?;
    Ok(0)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(&RunConfig::from_args(a)?),
        Command::Parametrize(a) => cmd_parametrize(&RunConfig::from_args(&a.common)?, a.implicitize),
        Command::Distance(a) => cmd_distance(&RunConfig::from_args(a)?),
        Command::Generate(a) => cmd_generate(&RunConfig::from_args(a)?),
        Command::Plot(a) => cmd_plot(&RunConfig::from_args(a)?),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("APPROXCURVE_LOG")).init();
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            let code = match e {
                CurveError::NotRational(_) | CurveError::GenusBudget(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
