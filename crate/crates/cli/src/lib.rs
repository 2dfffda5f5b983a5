//! Argument parsing and routing for the `zetaclt` binary.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};
use serde_json::{json, Value};

use zetaclt::dirichlet::{mollifier_coeffs, ParamOverrides, ParamSet};
use zetaclt::experiments::{self, CheckReport};
use zetaclt::primes::sieve_primes;
use zetaclt::statistics::{fmt17, gaussian_cdf, gaussian_pdf, SampleSet};
use zetaclt::{Error, VERSION};

/// Histogram range in normalised units.
pub const HIST_RANGE: (f64, f64) = (-4.0, 4.0);

const QUADRATURE_LADDER: [f64; 4] = [1e3, 1e4, 1e5, 1e6];
const SAMPLING_LADDER: [f64; 3] = [1e4, 1e6, 1e8];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Sample,
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Lemma1,
    Lemma4,
    MollifierDump,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, Parser)]
#[command(name = "zetaclt", version, about = "Desk-scale experiments on the value distribution of log|ζ|")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Base height; the experiments use t ∈ [T, 2T].
    #[arg(long = "T", default_value_t = 1e6)]
    pub t: f64,
    #[arg(long = "W")]
    pub w: Option<f64>,
    #[arg(long = "X")]
    pub x: Option<f64>,
    #[arg(long = "Y")]
    pub y: Option<f64>,
    /// Sets W = (σ₀ − ½)·log T.
    #[arg(long = "sigma0", conflicts_with = "w")]
    pub sigma0: Option<f64>,
    #[arg(long = "L1")]
    pub l1: Option<u32>,
    #[arg(long = "L2")]
    pub l2: Option<u32>,
    /// Sample size.
    #[arg(long = "N", default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Abscissa for prop1 and lemma4.
    #[arg(long, default_value_t = 0.6)]
    pub sigma: f64,
    /// Centre of the prop1 window (default 1.5·T).
    #[arg(long = "t")]
    pub t_point: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub h: u64,
    /// Twist denominator for lemma4, first power for lemma1.
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    /// Second power for lemma1.
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Relative quadrature tolerance per panel.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Histogram bins on [−4, 4] for `sample`.
    #[arg(long, default_value_t = 40)]
    pub bins: usize,
    /// Worker threads (default: all cores). Never changes results.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Comma-separated heights replacing --T; bare flag selects the default ladder.
    #[arg(long, num_args = 0..=1, default_missing_value = "default")]
    pub ladder: Option<String>,
}

impl RunConfig {
    pub fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            w: self.w,
            x: self.x,
            y: self.y,
            sigma0: self.sigma0,
            l1: self.l1,
            l2: self.l2,
        }
    }

    /// Heights to run: the ladder if given, else `T`.
    pub fn heights(&self) -> Result<Vec<f64>, Error> {
        let Some(spec) = &self.ladder else {
            return Ok(vec![self.t]);
        };
        if spec == "default" {
            return Ok(match self.command {
                Command::Sample | Command::MollifierDump => Vec::new(),
                Command::Prop2 | Command::Prop3 => SAMPLING_LADDER.to_vec(),
                _ => QUADRATURE_LADDER.to_vec(),
            })
            .and_then(|v: Vec<f64>| self.require_ladder_support(v));
        }
        let parsed: Result<Vec<f64>, _> = spec.split(',').map(|s| s.trim().parse::<f64>()).collect();
        let v = parsed.map_err(|_| Error::InvalidParams(format!("bad ladder `{spec}`")))?;
        self.require_ladder_support(v)
    }

    fn require_ladder_support(&self, v: Vec<f64>) -> Result<Vec<f64>, Error> {
        if matches!(self.command, Command::Sample | Command::MollifierDump) {
            return Err(Error::InvalidParams("--ladder is not available for this command".into()));
        }
        if v.is_empty() {
            return Err(Error::InvalidParams("empty ladder".into()));
        }
        Ok(v)
    }

    /// Run settings echoed into output headers. The thread count is left out
    /// since it never affects results.
    fn settings_line(&self) -> String {
        format!(
            "command={} N={} seed={} sigma={} t={} h={} k={} l={} eps={} tol={} bins={}",
            self.command.to_possible_value().expect("named").get_name(),
            self.n,
            self.seed,
            self.sigma,
            self.t_point.map_or("default".into(), |t| t.to_string()),
            self.h,
            self.k,
            self.l,
            self.eps,
            self.tol,
            self.bins
        )
    }
}

/// Parses `argv` (including the program name).
pub fn parse_config<I, S>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = RunConfig::try_parse_from(argv)?;
    if cfg.command == Command::Sample && cfg.bins == 0 {
        return Err(RunConfig::command().error(ErrorKind::ValueValidation, "--bins must be at least 1"));
    }
    Ok(cfg)
}

/// Exit status for a failed run: 2 for invalid input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::Precondition(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

/// Executes the routed experiment and returns the process exit status.
pub fn run(cfg: &RunConfig) -> i32 {
    let result = experiments::with_threads(cfg.threads, || execute(cfg)).and_then(|r| r);
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("zetaclt: {e}");
            exit_code(&e)
        }
    }
}

fn resolve(cfg: &RunConfig, t: f64) -> Result<ParamSet, Error> {
    let p = ParamSet::resolve(t, &cfg.overrides())?;
    log::info!("resolved parameters: {}", p.to_config_line());
    if p.clamped {
        log::info!("defaults for T = {t} were clamped");
    }
    Ok(p)
}

fn header(cfg: &RunConfig, params: &[ParamSet]) -> String {
    let mut s = format!("# zetaclt {VERSION}\n# {}\n", cfg.settings_line());
    for p in params {
        let _ = writeln!(s, "# params {}", p.to_config_line());
    }
    s
}

/// Files produced by a run: `(path suffix, contents)`; an empty suffix is the
/// primary output.
type Outputs = Vec<(&'static str, String)>;

fn execute(cfg: &RunConfig) -> Result<(), Error> {
    let outputs = match cfg.command {
        Command::Sample => sample(cfg)?,
        Command::MollifierDump => mollifier_dump(cfg)?,
        _ => {
            let mut reports = Vec::new();
            let mut params = Vec::new();
            for t in cfg.heights()? {
                let p = resolve(cfg, t)?;
                reports.extend(check(cfg, &p)?);
                params.push(p);
            }
            vec![("", render_reports(cfg, &params, &reports))]
        }
    };
    emit(cfg.out.as_deref(), outputs)
}

fn check(cfg: &RunConfig, p: &ParamSet) -> Result<Vec<CheckReport>, Error> {
    Ok(match cfg.command {
        Command::Prop1 => vec![experiments::check_prop1(p, cfg.t_point.unwrap_or(1.5 * p.t), cfg.sigma)?],
        Command::Prop2 => {
            let s = experiments::run_clt_sample(p, cfg.n, cfg.seed)?;
            vec![experiments::check_clt_from(&s)?, experiments::check_prop2_from(&s)?]
        }
        Command::Prop3 => vec![experiments::check_prop3(p, cfg.n, cfg.seed, cfg.eps)?],
        Command::Prop4 => vec![experiments::check_prop4(p, cfg.tol)?],
        Command::Lemma1 => {
            let k = u32::try_from(cfg.k).map_err(|_| Error::InvalidParams("k too large".into()))?;
            vec![experiments::check_lemma1(p, k, cfg.l, p.t)?]
        }
        Command::Lemma4 => vec![experiments::check_lemma4(p, cfg.h, cfg.k, cfg.sigma, p.t)?],
        Command::Sample | Command::MollifierDump => unreachable!("handled by execute"),
    })
}

fn render_reports(cfg: &RunConfig, params: &[ParamSet], reports: &[CheckReport]) -> String {
    match cfg.format {
        Format::Csv => {
            let mut s = header(cfg, params);
            let _ = writeln!(s, "{}", CheckReport::ledger_header());
            for r in reports {
                let _ = writeln!(s, "{}", r.ledger_row());
            }
            s
        }
        Format::Json => to_json(json!({
            "version": VERSION,
            "settings": cfg.settings_line(),
            "reports": reports,
        })),
    }
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// Equal-width histogram of the normalised values on [−4, 4].
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
    pub total: u64,
}

impl Histogram {
    pub fn new(values: &[f64], bins: usize) -> Self {
        let (lo, hi) = HIST_RANGE;
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0u64; bins];
        let (mut underflow, mut overflow) = (0, 0);
        for &v in values {
            if v < lo {
                underflow += 1;
            } else if v >= hi {
                overflow += 1;
            } else {
                let i = (((v - lo) / width) as usize).min(bins - 1);
                counts[i] += 1;
            }
        }
        Self {
            edges,
            counts,
            underflow,
            overflow,
            total: values.len() as u64,
        }
    }

    /// `(lo, hi, count, density, gaussian_density, gaussian_count)` per bin.
    pub fn rows(&self) -> Vec<(f64, f64, u64, f64, f64, f64)> {
        let n = self.total.max(1) as f64;
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let (a, b) = (self.edges[i], self.edges[i + 1]);
                let w = b - a;
                (
                    a,
                    b,
                    c,
                    c as f64 / (n * w),
                    gaussian_pdf(0.5 * (a + b)),
                    self.total as f64 * (gaussian_cdf(b) - gaussian_cdf(a)),
                )
            })
            .collect()
    }
}

fn normalised_log_zeta(set: &SampleSet) -> Result<(Vec<f64>, f64), Error> {
    let v = experiments::desk_variance(&set.params)?;
    Ok((set.log_abs_zeta().iter().map(|x| x / v.sqrt()).collect(), v))
}

fn sample(cfg: &RunConfig) -> Result<Outputs, Error> {
    if cfg.ladder.is_some() {
        cfg.heights()?;
    }
    let p = resolve(cfg, cfg.t)?;
    let set = experiments::run_clt_sample(&p, cfg.n, cfg.seed)?;
    let (values, variance) = normalised_log_zeta(&set)?;
    let hist = Histogram::new(&values, cfg.bins);
    let head = header(cfg, std::slice::from_ref(&p));
    Ok(match cfg.format {
        Format::Csv => {
            let mut main = head.clone();
            let _ = writeln!(main, "# rejections={}", set.rejected.len());
            for t in &set.rejected {
                let _ = writeln!(main, "# rejected_t={}", fmt17(*t));
            }
            let mut body = Vec::new();
            set.write_csv(&mut body)?;
            main.push_str(&String::from_utf8(body).expect("csv is utf-8"));
            let mut h = head;
            let _ = writeln!(
                h,
                "# histogram of log|zeta|/sqrt(v), v={} underflow={} overflow={} total={}",
                fmt17(variance),
                hist.underflow,
                hist.overflow,
                hist.total
            );
            h.push_str("bin_lo,bin_hi,count,density,gaussian_density,gaussian_count\n");
            for (a, b, c, d, g, gc) in hist.rows() {
                let _ = writeln!(h, "{},{},{c},{},{},{}", fmt17(a), fmt17(b), fmt17(d), fmt17(g), fmt17(gc));
            }
            if cfg.out.is_some() {
                vec![("", main), (".hist.csv", h)]
            } else {
                vec![("", format!("{main}\n{h}"))]
            }
        }
        Format::Json => {
            let bins: Vec<Value> = hist
                .rows()
                .into_iter()
                .map(|(a, b, c, d, g, gc)| {
                    json!({"lo": a, "hi": b, "count": c, "density": d, "gaussian_density": g, "gaussian_count": gc})
                })
                .collect();
            vec![(
                "",
                to_json(json!({
                    "version": VERSION,
                    "settings": cfg.settings_line(),
                    "samples": set,
                    "histogram": {
                        "normalization_variance": variance,
                        "underflow": hist.underflow,
                        "overflow": hist.overflow,
                        "total": hist.total,
                        "bins": bins,
                    },
                })),
            )]
        }
    })
}

fn mollifier_dump(cfg: &RunConfig) -> Result<Outputs, Error> {
    if cfg.ladder.is_some() {
        cfg.heights()?;
    }
    let p = resolve(cfg, cfg.t)?;
    let table = sieve_primes((p.x.floor() as u64).max(2))?;
    let m = mollifier_coeffs(&p, &table)?;
    Ok(vec![(
        "",
        match cfg.format {
            Format::Csv => {
                let mut s = header(cfg, std::slice::from_ref(&p));
                let mut body = Vec::new();
                m.m.write_csv(&mut body)?;
                s.push_str(&String::from_utf8(body).expect("csv is utf-8"));
                s
            }
            Format::Json => {
                let entries: Vec<Value> = m.m.entries().iter().map(|&(n, c)| json!([n.to_string(), c])).collect();
                to_json(json!({
                    "version": VERSION,
                    "settings": cfg.settings_line(),
                    "params": p,
                    "coefficients": entries,
                }))
            }
        },
    )])
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    if suffix.is_empty() {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Writes every output to a temporary file beside its target and renames all
/// of them only after each write succeeded.
fn emit(out: Option<&Path>, outputs: Outputs) -> Result<(), Error> {
    let Some(path) = out else {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        for (_, text) in outputs {
            lock.write_all(text.as_bytes())?;
        }
        return Ok(());
    };
    let mut staged = Vec::new();
    for (suffix, text) in outputs {
        let target = with_suffix(path, suffix);
        let dir = match target.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.flush()?;
        staged.push((tmp, target));
    }
    for (tmp, target) in staged {
        tmp.persist(&target).map_err(|e| Error::Io(e.error))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_counts_and_reference() {
        let h = Histogram::new(&[-5.0, -4.0, -0.1, 0.0, 0.1, 3.99, 4.0], 8);
        assert_eq!(h.counts, vec![1, 0, 0, 1, 2, 0, 0, 1]);
        assert_eq!((h.underflow, h.overflow, h.total), (1, 1, 7));
        let mass: f64 = h.rows().iter().map(|r| r.5).sum();
        assert!((mass / 7.0 - (gaussian_cdf(4.0) - gaussian_cdf(-4.0))).abs() < 1e-14);
    }

    #[test]
    fn suffix_replaces_extension() {
        assert_eq!(with_suffix(Path::new("/a/b/run.csv"), ".hist.csv"), PathBuf::from("/a/b/run.hist.csv"));
        assert_eq!(with_suffix(Path::new("run.csv"), ""), PathBuf::from("run.csv"));
    }
}
