//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the exit code with the text destined for stdout and stderr, so the binary
//! and the tests share one code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::biject::{audit, AuditReport, MapKind};
use crate::enumerate::{enumerate_ops, Constraint, EnumCaps};
use crate::error::{Error, Result};
use crate::numth::Rational;
use crate::poly::{parse_rational, pbar_derivative, pbar_poly, series_expand};
use crate::verify::{
    self, check_colored, check_ie11, check_ie7, check_ie8, check_le3, check_logconcave, check_th1,
    check_th3_grid, check_th4_grid, descent_certificate, roots_csv, roots_table, sandwich,
    BoundTriple, VerifyReport,
};

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "OVERPART_THREADS";

pub const DEFAULT_WIDTH: &str = "1/10000";
pub const DEFAULT_GRID: [&str; 5] = ["1", "3/2", "2", "5/2", "3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "overpart",
    version,
    about = "Exact computations with overpartitions and their polynomials"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    /// TOML file overriding enumeration caps, root width and grids.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Claim {
    Th1,
    Th3,
    Th4,
    Th5,
    Le3,
    Ie7,
    Ie8,
    Ie11,
    Logconcave,
    Descent,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the overpartition polynomial of degree N, or evaluate it.
    Poly {
        n: usize,
        /// Exact point "p/q" at which to evaluate.
        #[arg(long)]
        eval: Option<String>,
        /// Use the derivative instead.
        #[arg(long)]
        derivative: bool,
    },
    /// Coefficients of the generating function up to q^ORDER.
    Series { order: usize },
    /// List the overpartitions of N with K colors.
    Enumerate {
        n: u32,
        #[arg(long, short = 'k', default_value_t = 1)]
        colors: u32,
        /// Forbid the plain part SIZE in COLOR, written "SIZE" or "SIZE_COLOR"; repeatable.
        #[arg(long = "no-plain", value_name = "SIZE[_COLOR]")]
        no_plain: Vec<String>,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Audit one of the injections f, g1, g2, fk, gk over its full domain.
    Bijection {
        map: String,
        #[arg(long)]
        a: u32,
        /// Right-hand weight for f and fk.
        #[arg(long, default_value_t = 2)]
        b: u32,
        #[arg(long, short = 'k', default_value_t = 1)]
        k: u32,
    },
    /// Check one claim over a range.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        /// Upper end of the main range (largest a, or largest a + b for grids).
        #[arg(long)]
        amax: Option<u64>,
        /// Lower end of the range, where the claim has one.
        #[arg(long)]
        amin: Option<u64>,
        /// Upper end for claims indexed by n.
        #[arg(long)]
        nmax: Option<u64>,
        /// Comma-separated grid of rationals, each at least 1.
        #[arg(long, value_delimiter = ',')]
        xs: Option<Vec<String>>,
        /// Comma-separated color counts for th5.
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<u64>>,
    },
    /// Largest non-negative roots of the gap polynomials.
    Roots {
        #[arg(long, default_value_t = 10)]
        amax: usize,
        #[arg(long, default_value_t = 10)]
        bmax: usize,
        /// Bracket width as "p/q".
        #[arg(long)]
        width: Option<String>,
    },
    /// Exponential bounds and main term for pbar(n), for n from N to --to.
    Bounds {
        n: u64,
        #[arg(long)]
        to: Option<u64>,
    },
}

/// Settings read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Largest enumeration weight per color count, keyed by the count.
    #[serde(default)]
    pub caps: BTreeMap<String, u32>,
    pub cap_fallback: Option<u32>,
    pub width: Option<String>,
    pub xs: Option<Vec<String>>,
    pub ks: Option<Vec<u64>>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn enum_caps(&self) -> Result<EnumCaps> {
        let mut caps = EnumCaps::default();
        for (k, v) in &self.caps {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("config: cap key {k:?} is not a color count")))?;
            caps = caps.with_cap(k, *v);
        }
        if let Some(f) = self.cap_fallback {
            caps.fallback = f;
        }
        Ok(caps)
    }
}

/// Everything a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let outcome = worker_pool().and_then(|pool| pool.install(|| dispatch(&cli)));
    match outcome {
        Ok((ok, stdout)) => CliOutput {
            code: if ok { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let code = if matches!(e, Error::NotFound(_)) {
                1
            } else {
                2
            };
            CliOutput {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| {
            Error::Parse(format!("{THREADS_ENV} must be a thread count, got {v:?}"))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

fn load_config(path: &Option<PathBuf>) -> Result<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", p.display())))?;
            Config::from_toml(&text)
        }
    }
}

fn parse_list(xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s)).collect()
}

fn only_text_or_json(format: Format, what: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::Parse(format!(
            "csv output is not available for {what}"
        )));
    }
    Ok(())
}

fn json_line<T: Serialize>(out: &mut String, value: &T) -> Result<()> {
    let line = serde_json::to_string(value).map_err(|e| Error::Internal(e.to_string()))?;
    out.push_str(&line);
    out.push('\n');
    Ok(())
}

#[derive(Serialize)]
struct PolyOut<'a> {
    n: usize,
    derivative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<&'a crate::poly::Poly>,
}

#[derive(Serialize)]
struct EnumerateOut {
    n: u32,
    colors: u32,
    constraint: String,
    count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    items: Vec<crate::enumerate::Overpartition>,
}

fn parse_no_plain(spec: &str) -> Result<(u32, u32)> {
    let bad = || {
        Error::Parse(format!(
            "--no-plain expects SIZE or SIZE_COLOR, got {spec:?}"
        ))
    };
    let (s, c) = spec.split_once('_').unwrap_or((spec, "1"));
    Ok((s.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?))
}

/// Whether an audit matches what the corresponding lemma asserts.
pub fn audit_matches_claim(r: &AuditReport) -> bool {
    let equality_allowed = r.map_name == MapKind::G1 && r.a <= 2;
    r.well_defined && r.injective && (equality_allowed || !r.surjective)
}

fn report_text(r: &VerifyReport) -> String {
    let mut s = format!(
        "{}: {} ({} points checked, range {})\n",
        r.claim,
        if r.holds { "holds" } else { "FAILS" },
        r.checked,
        r.range
    );
    if !r.exceptions.is_empty() {
        let pts: Vec<&str> = r.exceptions.iter().map(|f| f.point.as_str()).collect();
        let _ = writeln!(s, "  equality at: {}", pts.join(", "));
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "  counterexample at {}: {}", c.point, c.detail);
    }
    for f in &r.inconclusive {
        let _ = writeln!(s, "  inconclusive at {}: {}", f.point, f.detail);
    }
    if let Some(t) = &r.tightest {
        let _ = writeln!(s, "  smallest relative slack {:e} at {}", t.slack, t.point);
    }
    if let Some(t) = r.threshold {
        let _ = writeln!(s, "  holds from {t} through the end of the range");
    }
    s
}

fn bounds_ok(t: &BoundTriple) -> bool {
    use crate::verify::Verdict::{Holds, Skipped};
    t.lower_verdict == Holds
        && t.upper_verdict == Holds
        && matches!(t.remainder_verdict, Holds | Skipped)
}

fn descent_report(nmax: u64) -> Result<VerifyReport> {
    let mut outcomes = Vec::new();
    let mut m = 4u64;
    while m - 1 <= nmax {
        let c = descent_certificate((m - 1) as usize)?;
        outcomes.push(verify::Outcome::new(
            c.n.to_string(),
            verify::Verdict::Holds,
            None,
            format!("x = {}, P_(n+1)(x) - P_n(x) = {}", c.x, c.gap),
        ));
        m *= 2;
    }
    Ok(verify::finish(
        "descent",
        format!("n = 2^s - 1 <= {nmax}, s >= 2"),
        outcomes,
        vec![],
    ))
}

fn dispatch(cli: &Cli) -> Result<(bool, String)> {
    let config = load_config(&cli.config)?;
    let format = cli.format;
    let mut out = String::new();
    let ok = match &cli.command {
        Command::Poly {
            n,
            eval,
            derivative,
        } => {
            only_text_or_json(format, "poly")?;
            let p = if *derivative {
                pbar_derivative(*n)?
            } else {
                pbar_poly(*n)
            };
            match eval {
                Some(x) => {
                    let xr = parse_rational(x)?;
                    let v = p.eval(&xr);
                    match format {
                        Format::Json => json_line(
                            &mut out,
                            &PolyOut {
                                n: *n,
                                derivative: *derivative,
                                x: Some(xr.to_string()),
                                value: Some(v.to_string()),
                                poly: None,
                            },
                        )?,
                        _ => {
                            let _ = writeln!(out, "{v}");
                        }
                    }
                }
                None => match format {
                    Format::Json => json_line(
                        &mut out,
                        &PolyOut {
                            n: *n,
                            derivative: *derivative,
                            x: None,
                            value: None,
                            poly: Some(&p),
                        },
                    )?,
                    _ => {
                        let _ = writeln!(out, "{p}");
                    }
                },
            }
            true
        }
        Command::Series { order } => {
            only_text_or_json(format, "series")?;
            let table = series_expand(*order);
            match format {
                Format::Json => json_line(&mut out, &table)?,
                _ => {
                    for (i, p) in table.coeff_polys.iter().enumerate() {
                        let _ = writeln!(out, "q^{i}: {p}");
                    }
                }
            }
            true
        }
        Command::Enumerate {
            n,
            colors,
            no_plain,
            count,
        } => {
            only_text_or_json(format, "enumerate")?;
            let mut c = Constraint::none();
            for spec in no_plain {
                let (s, col) = parse_no_plain(spec)?;
                c = c.and_no_plain(s, col);
            }
            let items = enumerate_ops(*n, *colors, &c, &config.enum_caps()?)?;
            match format {
                Format::Json => json_line(
                    &mut out,
                    &EnumerateOut {
                        n: *n,
                        colors: *colors,
                        constraint: c.to_string(),
                        count: items.len(),
                        items: if *count { Vec::new() } else { items },
                    },
                )?,
                _ => {
                    if !*count {
                        for o in &items {
                            let _ = writeln!(out, "{o}");
                        }
                    }
                    let _ = writeln!(out, "{}", items.len());
                }
            }
            true
        }
        Command::Bijection { map, a, b, k } => {
            only_text_or_json(format, "bijection")?;
            let kind: MapKind = map.parse()?;
            let report = audit(kind, *a, *b, *k, &config.enum_caps()?)?;
            match format {
                Format::Json => json_line(&mut out, &report)?,
                _ => {
                    let _ = writeln!(
                        out,
                        "{} a={} b={} k={}: domain {}, codomain {}, image {}",
                        report.map_name,
                        report.a,
                        report.b,
                        report.k,
                        report.domain_size,
                        report.codomain_size,
                        report.image_size
                    );
                    let _ = writeln!(
                        out,
                        "  well-defined {}, injective {}, surjective {}",
                        report.well_defined, report.injective, report.surjective
                    );
                    if let Some(w) = &report.unhit_witness {
                        let _ = writeln!(out, "  not in the image: {w}");
                    }
                    if let Some(d) = &report.defect {
                        let _ = writeln!(out, "  defect at {}: {}", d.element, d.reason);
                    }
                    if let Some((x, y)) = &report.collision_witness {
                        let _ = writeln!(out, "  collision: {x} and {y}");
                    }
                }
            }
            audit_matches_claim(&report)
        }
        Command::Verify {
            claim,
            amax,
            amin,
            nmax,
            xs,
            ks,
        } => {
            only_text_or_json(format, "verify")?;
            let xs = match xs.as_ref().or(config.xs.as_ref()) {
                Some(v) => parse_list(v)?,
                None => DEFAULT_GRID
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<_>>()?,
            };
            let ks = ks
                .clone()
                .or(config.ks.clone())
                .unwrap_or_else(|| vec![2, 3]);
            let report = match claim {
                Claim::Th1 => check_th1(nmax.or(*amax).unwrap_or(120) as usize)?,
                Claim::Th3 => check_th3_grid(nmax.unwrap_or(40) as usize, &xs)?,
                Claim::Th4 => check_th4_grid(amax.unwrap_or(40) as usize, &xs)?,
                Claim::Th5 => check_colored(amax.unwrap_or(40) as usize, &ks)?,
                Claim::Le3 => check_le3(nmax.unwrap_or(500))?,
                Claim::Ie7 => check_ie7(nmax.unwrap_or(500))?,
                Claim::Ie8 => check_ie8(amax.unwrap_or(93))?,
                Claim::Ie11 => check_ie11(amin.unwrap_or(2), amax.unwrap_or(500))?,
                Claim::Logconcave => check_logconcave(nmax.unwrap_or(500) as usize)?,
                Claim::Descent => descent_report(nmax.unwrap_or(31))?,
            };
            match format {
                Format::Json => json_line(&mut out, &report)?,
                _ => out.push_str(&report_text(&report)),
            }
            report.holds
        }
        Command::Roots { amax, bmax, width } => {
            let width = width
                .as_deref()
                .or(config.width.as_deref())
                .unwrap_or(DEFAULT_WIDTH);
            let table = roots_table(*amax, *bmax, &parse_rational(width)?)?;
            match format {
                Format::Csv => out.push_str(&roots_csv(&table)),
                Format::Json => {
                    for r in &table {
                        json_line(&mut out, r)?;
                    }
                }
                Format::Text => {
                    for a in 1..=*amax {
                        let row: Vec<&str> = table
                            .iter()
                            .filter(|r| r.a == a)
                            .map(|r| r.rounded.as_str())
                            .collect();
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                }
            }
            true
        }
        Command::Bounds { n, to } => {
            let hi = to.unwrap_or(*n);
            if hi < *n {
                return Err(Error::Domain(format!("--to {hi} is below n = {n}")));
            }
            let triples: Vec<BoundTriple> = (*n..=hi).map(sandwich).collect::<Result<_>>()?;
            match format {
                Format::Json => {
                    for t in &triples {
                        json_line(&mut out, t)?;
                    }
                }
                Format::Csv => {
                    out.push_str("n,lower,exact,upper,main_term,main_term_error,remainder_bound\n");
                    for t in &triples {
                        let _ = writeln!(
                            out,
                            "{},{:e},{},{:e},{:e},{:e},{:e}",
                            t.n,
                            t.lower,
                            t.exact,
                            t.upper,
                            t.main_term,
                            t.main_term_error,
                            t.remainder_bound
                        );
                    }
                }
                Format::Text => {
                    for t in &triples {
                        let _ = writeln!(
                            out,
                            "n={}: {:.6e} < {} < {:.6e}; |pbar - M| = {:.3e} <= {:.3e}",
                            t.n, t.lower, t.exact, t.upper, t.main_term_error, t.remainder_bound
                        );
                    }
                }
            }
            triples.iter().all(bounds_ok)
        }
    };
    Ok((ok, out))
}
