//! Command-line front end.
//!
//! [`dispatch`] parses arguments, runs one subcommand and returns the exit
//! status: 0 on success, 1 on usage errors, 2 when a computation fails and 3
//! when `selftest` finds a failing identity.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::combinat::{beta_table, SubsetSums};
use crate::eigen::{
    first_sign_threshold, genus4_lambda_p_symbols, genus4_sign_quadratic, lambda_p_formula,
    lambda_p_from_Q, scan_lambda_p, LambdaRow,
};
use crate::error::{Error, Result};
use crate::exactalg::eval::{
    digits_for_bits, horner, is_prime, primes_in, u_grid, UPoly, DEFAULT_PRECISION_BITS,
};
use crate::exactalg::{series_quotient, PolyX, QSqrt, Rat};
use crate::ingest::{builtin_delta, satake_u, tau_oracle, EigenformData};
use crate::lfactor::{classical_spin_Q, genus4_Q_closed, LiftSpec};
use crate::par::Exec;
use crate::series::{
    d_factor, dr_leading_identity, lambda_pr, load_appendix, threshold_C_r, verify_appendix,
    GSeries, NumeratorData, PartialFraction,
};

pub const DEFAULT_U_GRID: usize = 101;
pub const DEFAULT_PRIMES: &str = "2..997";
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ikeda",
    version,
    about = "Exact Hecke eigenvalue tables and sign checks for Ikeda lifts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Bits of precision used when rendering decimal values; arithmetic is
    /// always exact.
    #[arg(long, global = true, env = "IKEDA_PRECISION", default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision: u32,
    /// Run every scan on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

/// Where Satake traces come from.
#[derive(Debug, Clone, clap::Args)]
pub struct Source {
    /// Eigenform JSON file `{"weight_2k": K, "label": s, "ap": {"2": v, ...}}`.
    #[arg(long, conflicts_with = "builtin")]
    pub eigenform: Option<PathBuf>,
    /// Built-in eigenform (only `delta`).
    #[arg(long)]
    pub builtin: Option<String>,
    /// Weight 2k of the elliptic form when scanning a u-grid.
    #[arg(long)]
    pub weight_2k: Option<i64>,
    /// Number of equally spaced u values in [-2, 2] when no eigenform is given.
    #[arg(long, default_value_t = DEFAULT_U_GRID)]
    pub u_grid: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// alpha(r, j, n) and beta(r, j, n) over the spin product ranges.
    AlphaBetaTable {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Coefficients of the spin polynomial Q.
    QPoly {
        #[arg(long, default_value_t = 4)]
        genus: usize,
        /// Print coefficients as Laurent polynomials in a and q = sqrt(p).
        #[arg(long)]
        symbolic: bool,
        /// Evaluate at this prime instead.
        #[arg(long)]
        p: Option<u64>,
        /// Trace u = a + 1/a for numeric evaluation, e.g. `-1/3`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// lambda(p) for the genus-2n lift.
    LambdaPTable {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = DEFAULT_PRIMES)]
        primes: String,
        #[command(flatten)]
        source: Source,
    },
    /// First prime beyond which lambda(p) > 0 for every Satake value.
    Threshold {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<usize>,
    },
    /// lambda(p^r) for genus 4 from numerator data.
    LambdaPrTable {
        /// Genus-4 numerator JSON `{"genus": 4, "provenance": s, "e": [...]}`
        #[arg(long)]
        numerator: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
        #[arg(long, default_value = "2..97")]
        primes: String,
        #[command(flatten)]
        source: Source,
    },
    /// Check the transcribed genus-4 residue table.
    VerifyAppendix {
        /// Replacement table; the bundled one is used by default.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Empirical scan for primes with lambda(p^r) < 0.
    #[command(name = "c-r-threshold")]
    CRThreshold {
        /// Genus-4 numerator JSON, as for lambda-pr-table
        #[arg(long)]
        numerator: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        k: i64,
        #[arg(long, default_value = DEFAULT_PRIMES)]
        primes: String,
        #[arg(long, default_value_t = DEFAULT_U_GRID)]
        u_grid: usize,
        /// Also report the leading term of D(r) * lambda(p^r).
        #[arg(long)]
        leading: bool,
    },
    /// Run the identity suite.
    Selftest,
}

/// Rows plus a summary, emitted as CSV (rows only) or JSON (everything).
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Report<R> {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub rows: Vec<R>,
    pub summary: BTreeMap<String, String>,
}

impl<R: Serialize> Report<R> {
    fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.parameters.insert(k.into(), v.to_string());
        self
    }

    fn emit(&self, format: Format, output: Option<&Path>) -> Result<()> {
        let bytes = match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Json {
                    context: "report".into(),
                    source: e,
                })?;
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in &self.rows {
                    w.serialize(r)?;
                }
                w.into_inner().map_err(|e| Error::Io(e.into_error()))?
            }
        };
        match output {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().write_all(&bytes)?,
        }
        if format == Format::Csv {
            for (k, v) in &self.summary {
                eprintln!("{k}: {v}");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct AlphaBetaRow {
    pub n: usize,
    pub j: usize,
    pub r: i64,
    pub alpha: u64,
    pub beta: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CoefficientRow {
    pub power: usize,
    pub coefficient: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ValueRow {
    pub r: usize,
    pub p: u64,
    pub u: String,
    pub value: String,
    pub sign: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ThresholdRow {
    pub n: usize,
    pub p0: u64,
    pub bound_terms: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct AppendixOutRow {
    pub index: usize,
    pub rho: String,
    pub order: u32,
    pub symbolic: bool,
    pub max_rel_err: f64,
    pub points: usize,
    pub status: String,
    pub note: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CrOutRow {
    pub r: usize,
    pub k: i64,
    pub prime_hi: u64,
    pub u_grid: usize,
    pub scanned_points: usize,
    pub negative_points: usize,
    pub largest_negative_prime: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckRow {
    pub check: String,
    pub status: String,
    pub detail: String,
}

fn sign_str(v: &QSqrt) -> &'static str {
    match v.signum() {
        std::cmp::Ordering::Greater => "+",
        std::cmp::Ordering::Less => "-",
        std::cmp::Ordering::Equal => "0",
    }
}

/// `"lo..hi"` (inclusive) or a single prime.
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidArgument(format!("prime range {s:?} is not of the form LO..HI"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<u64>().map_err(|_| bad())?,
            b.trim_start_matches('=')
                .trim()
                .parse::<u64>()
                .map_err(|_| bad())?,
        ),
        None => {
            let p = s.trim().parse::<u64>().map_err(|_| bad())?;
            (p, p)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    let primes = primes_in(lo, hi);
    if primes.is_empty() {
        return Err(Error::InvalidArgument(format!("no primes in {s}")));
    }
    Ok(primes)
}

/// Parses `u` values such as `1/3` or `-2`.
fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| Error::InvalidArgument(format!("{s:?} is not a rational number")))
}

enum Traces {
    Form(EigenformData),
    Grid { k: i64, grid: Vec<QSqrt> },
}

impl Traces {
    fn resolve(src: &Source, max_p: u64) -> Result<Self> {
        let form = match (&src.eigenform, &src.builtin) {
            (Some(path), _) => Some(EigenformData::load(path)?),
            (None, Some(name)) if name.eq_ignore_ascii_case("delta") => Some(builtin_delta(max_p)?),
            (None, Some(name)) => {
                return Err(Error::InvalidArgument(format!(
                    "unknown built-in eigenform {name:?}"
                )))
            }
            (None, None) => None,
        };
        if let (Some(f), Some(w)) = (&form, src.weight_2k) {
            if f.weight_2k != w {
                return Err(Error::InvalidArgument(format!(
                    "--weight-2k {w} disagrees with the eigenform weight {}",
                    f.weight_2k
                )));
            }
        }
        match form {
            Some(f) => Ok(Traces::Form(f)),
            None => {
                let w = src.weight_2k.unwrap_or(12);
                if w < 2 || w % 2 != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "weight 2k = {w} must be even"
                    )));
                }
                if src.u_grid < 2 {
                    return Err(Error::InvalidArgument(
                        "the u-grid needs at least 2 points".into(),
                    ));
                }
                Ok(Traces::Grid {
                    k: w / 2,
                    grid: u_grid(src.u_grid),
                })
            }
        }
    }

    fn k(&self) -> i64 {
        match self {
            Traces::Form(f) => f.k(),
            Traces::Grid { k, .. } => *k,
        }
    }

    fn at(&self, p: u64) -> Result<Vec<QSqrt>> {
        match self {
            Traces::Form(f) => Ok(vec![satake_u(f, p)?.u]),
            Traces::Grid { grid, .. } => Ok(grid.clone()),
        }
    }

    fn check_primes(&self, primes: &[u64]) -> Result<()> {
        if let Traces::Form(f) = self {
            if let Some(p) = primes.iter().find(|p| !f.ap.contains_key(p)) {
                return Err(Error::MissingPrime(*p));
            }
        }
        Ok(())
    }
}

struct Ctx {
    format: Format,
    output: Option<PathBuf>,
    digits: usize,
    exec: Exec,
}

/// Runs the command line and returns the process exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let ctx = Ctx {
        format: cli.format,
        output: cli.output.clone(),
        digits: digits_for_bits(cli.precision),
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
    };
    match run(cli.command, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run(cmd: Command, ctx: &Ctx) -> Result<i32> {
    let out = ctx.output.as_deref();
    match cmd {
        Command::AlphaBetaTable { n } => {
            if n == 0 || n > 8 {
                return Err(Error::InvalidArgument(format!("n = {n} must lie in 1..=8")));
            }
            let ss = SubsetSums::new(n);
            let mut rep = Report::new("alpha-beta-table").param("n", n);
            rep.rows = beta_table(n)
                .rows()
                .map(|(j, r, beta)| AlphaBetaRow {
                    n,
                    j,
                    r,
                    alpha: ss.alpha(r, j as i64),
                    beta,
                })
                .collect();
            rep.emit(ctx.format, out)?;
        }
        Command::QPoly {
            genus,
            symbolic,
            p,
            u,
            source,
        } => {
            if genus == 0 || genus % 2 != 0 || genus > 8 {
                return Err(Error::InvalidArgument(format!(
                    "genus {genus} must be 2, 4, 6 or 8"
                )));
            }
            let q = classical_spin_Q(LiftSpec::new(genus / 2))?;
            let mut rep = Report::new("q-poly").param("genus", genus);
            if let (false, Some(p)) = (symbolic, p) {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                let traces = Traces::resolve(&source, p)?;
                let u = match (&u, &traces) {
                    (Some(s), Traces::Grid { .. }) => QSqrt::rational(parse_rat(s)?),
                    (None, Traces::Form(_)) => traces.at(p)?.remove(0),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "numeric q-poly needs exactly one of --u or an eigenform".into(),
                        ))
                    }
                };
                if u.abs() > QSqrt::int(2) {
                    return Err(Error::TraceOutOfRange(u.to_string()));
                }
                let k = traces.k();
                rep = rep
                    .param("p", p)
                    .param("k", k)
                    .param("u", u.to_sci(ctx.digits));
                for (power, c) in q.coeffs().iter().enumerate() {
                    let v = UPoly::from_symmetric(c)?.eval(p, k, &u);
                    rep.rows.push(CoefficientRow {
                        power,
                        coefficient: v.to_sci(ctx.digits),
                    });
                }
            } else {
                rep.rows = q
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(power, c)| CoefficientRow {
                        power,
                        coefficient: c.to_string(),
                    })
                    .collect();
            }
            rep.emit(ctx.format, out)?;
        }
        Command::LambdaPTable { n, primes, source } => {
            if n == 0 || n > 4 {
                return Err(Error::InvalidArgument(format!("n = {n} must lie in 1..=4")));
            }
            let primes = parse_primes(&primes)?;
            let traces = Traces::resolve(&source, *primes.last().unwrap())?;
            traces.check_primes(&primes)?;
            if let Traces::Form(f) = &traces {
                if let Some(w) = f.parity_warning(n) {
                    eprintln!("warning: {w}");
                }
                for &p in &primes {
                    satake_u(f, p)?;
                }
            }
            let k = traces.k();
            let rows = scan_lambda_p(
                n,
                k,
                &primes,
                |p| traces.at(p).expect("validated"),
                ctx.exec,
            );
            let mut rep = Report::new("lambda-p-table").param("n", n).param("k", k);
            summarize(&mut rep, &rows, ctx.digits);
            rep.rows = rows.iter().map(|r| value_row(1, r, ctx.digits)).collect();
            rep.emit(ctx.format, out)?;
        }
        Command::Threshold { n } => {
            let mut rep = Report::new("threshold");
            for n in n {
                if n == 0 || n > 4 {
                    return Err(Error::InvalidArgument(format!("n = {n} must lie in 1..=4")));
                }
                let t = first_sign_threshold(n);
                rep.rows.push(ThresholdRow {
                    n,
                    p0: t.p0,
                    bound_terms: t.bounds.len(),
                });
            }
            rep.emit(ctx.format, out)?;
        }
        Command::LambdaPrTable {
            numerator,
            r_max,
            primes,
            source,
        } => {
            let data = load_numerator(numerator.as_deref())?;
            if data.genus != 4 {
                return Err(Error::InvalidData(format!(
                    "numerator data is for genus {}, expected 4",
                    data.genus
                )));
            }
            let primes = parse_primes(&primes)?;
            let traces = Traces::resolve(&source, *primes.last().unwrap())?;
            traces.check_primes(&primes)?;
            let k = traces.k();
            let g = GSeries::genus4(r_max, ctx.exec)?;
            let mut rep = Report::new("lambda-pr-table")
                .param("k", k)
                .param("r_max", r_max)
                .param("numerator", &data.provenance);
            let mut all = Vec::new();
            for r in 0..=r_max {
                let up = UPoly::from_symmetric(&lambda_pr(Some(&data), &g, r)?)?;
                let rows: Vec<LambdaRow> = crate::par::map(ctx.exec, &primes, |&p| {
                    let c = up.specialize(p, k);
                    traces
                        .at(p)
                        .expect("validated")
                        .into_iter()
                        .map(|u| LambdaRow {
                            p,
                            value: horner(&c, &u),
                            u,
                        })
                        .collect::<Vec<_>>()
                })
                .into_iter()
                .flatten()
                .collect();
                rep.rows
                    .extend(rows.iter().map(|row| value_row(r, row, ctx.digits)));
                all.extend(rows);
            }
            summarize(&mut rep, &all, ctx.digits);
            rep.emit(ctx.format, out)?;
        }
        Command::VerifyAppendix { data, seed, points } => {
            if points == 0 {
                return Err(Error::InvalidArgument(
                    "need at least one evaluation point".into(),
                ));
            }
            let table = load_appendix(data.as_deref())?;
            let pf = PartialFraction::genus4()?;
            let report = verify_appendix(&table, &pf, seed, points)?;
            let mut rep = Report::new("verify-appendix")
                .param("seed", seed)
                .param("points", points);
            rep.rows = report
                .rows
                .iter()
                .map(|r| AppendixOutRow {
                    index: r.index,
                    rho: r.rho.to_string(),
                    order: r.order,
                    symbolic: r.symbolic,
                    max_rel_err: r.max_rel_err,
                    points: r.points,
                    status: if r.passed() { "match" } else { "mismatch" }.into(),
                    note: r.note.clone().unwrap_or_default(),
                })
                .collect();
            rep.summary
                .insert("a2_is_minus7_a1".into(), report.a2_is_minus7_a1.to_string());
            rep.summary.insert(
                "reconstruction_rel_err".into(),
                report.reconstruction_rel_err.to_string(),
            );
            rep.summary
                .insert("all_passed".into(), report.all_passed().to_string());
            rep.emit(ctx.format, out)?;
            if !report.all_passed() {
                eprintln!("error: appendix verification found mismatches");
                return Ok(2);
            }
        }
        Command::CRThreshold {
            numerator,
            r,
            k,
            primes,
            u_grid,
            leading,
        } => {
            let data = load_numerator(numerator.as_deref())?;
            let hi = *parse_primes(&primes)?.last().unwrap();
            let report = threshold_C_r(r, k, Some(&data), hi, u_grid, ctx.exec)?;
            let mut rep = Report::new("c-r-threshold").param("numerator", &data.provenance);
            rep.rows.push(CrOutRow {
                r,
                k,
                prime_hi: hi,
                u_grid,
                scanned_points: report.scanned_points,
                negative_points: report.negative_points,
                largest_negative_prime: report
                    .largest_negative_prime
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "none found".into()),
            });
            rep.summary.insert(
                "note".into(),
                "empirical scan over the stated range only; not a proven threshold".into(),
            );
            if leading {
                let g = GSeries::genus4(r, ctx.exec)?;
                let lam = lambda_pr(Some(&data), &g, r)?;
                if let Some((e, c)) = d_factor(r).leading_term_of_product(&lam) {
                    rep.summary
                        .insert("leading_q_exponent".into(), e.to_string());
                    rep.summary
                        .insert("leading_coefficient".into(), c.to_string());
                }
            }
            rep.emit(ctx.format, out)?;
        }
        Command::Selftest => {
            let checks = identity_suite(ctx.exec);
            let failed = checks.iter().any(|c| c.status != "PASS");
            let mut rep = Report::new("selftest");
            rep.rows = checks;
            rep.summary
                .insert("result".into(), if failed { "FAIL" } else { "PASS" }.into());
            rep.emit(ctx.format, out)?;
            return Ok(if failed { 3 } else { 0 });
        }
    }
    Ok(0)
}

fn load_numerator(path: Option<&Path>) -> Result<NumeratorData> {
    match path {
        Some(p) => NumeratorData::load(p),
        None => Err(Error::NumeratorDataRequired(
            "pass --numerator FILE with the coefficients e_i of P (genus 4)".into(),
        )),
    }
}

fn value_row(r: usize, row: &LambdaRow, digits: usize) -> ValueRow {
    ValueRow {
        r,
        p: row.p,
        u: row.u.to_sci(digits),
        value: row.value.to_sci(digits),
        sign: sign_str(&row.value).into(),
    }
}

fn summarize<R: Serialize>(rep: &mut Report<R>, rows: &[LambdaRow], digits: usize) {
    let min = rows
        .iter()
        .min_by(|a, b| a.value.partial_cmp(&b.value).expect("total order"));
    if let Some(m) = min {
        rep.summary
            .insert("min_value".into(), m.value.to_sci(digits));
        rep.summary.insert("min_at_p".into(), m.p.to_string());
        rep.summary.insert("min_at_u".into(), m.u.to_sci(digits));
    }
    let first_neg = rows
        .iter()
        .find(|r| r.value.signum() == std::cmp::Ordering::Less);
    rep.summary.insert(
        "first_negative".into(),
        first_neg
            .map(|r| format!("p = {}, u = {}", r.p, r.u.to_sci(digits)))
            .unwrap_or_else(|| "none".into()),
    );
    rep.summary.insert("rows".into(), rows.len().to_string());
}

fn check(name: &str, outcome: Result<bool>, detail: &str) -> CheckRow {
    let (status, detail) = match outcome {
        Ok(true) => ("PASS", detail.to_string()),
        Ok(false) => ("FAIL", detail.to_string()),
        Err(e) => ("FAIL", e.to_string()),
    };
    CheckRow {
        check: name.into(),
        status: status.into(),
        detail,
    }
}

/// The cross-module symbolic identities.
pub fn identity_suite(exec: Exec) -> Vec<CheckRow> {
    let mut out = Vec::new();
    out.push(check(
        "beta table (n = 2)",
        Ok({
            let t = beta_table(2);
            t.entries.len() == 10 && t.rows().all(|(_, _, b)| b == 1)
        }),
        "all ten genus-4 exponents equal 1",
    ));
    out.push(check(
        "spin product equals the genus-4 closed form",
        classical_spin_Q(LiftSpec::new(2)).map(|q| q == genus4_Q_closed()),
        "16 factors, generic k",
    ));
    out.push(check(
        "lambda(p) closed form equals Vieta (n = 1..3)",
        (1..=3)
            .map(|n| {
                classical_spin_Q(LiftSpec::new(n))
                    .map(|q| lambda_p_from_Q(&q) == lambda_p_formula(n))
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().all(|b| b)),
        "-[x^1] of Q",
    ));
    out.push(check(
        "genus-4 T(p) eigenvalue",
        Ok(genus4_lambda_p_symbols().t_p == lambda_p_formula(2)),
        "printed lambda(p) against the closed form",
    ));
    out.push(check(
        "small-prime quadratics positive",
        Ok(genus4_sign_quadratic(2).positive && genus4_sign_quadratic(3).positive),
        "exact minima over u in [-2, 2] at p = 2, 3",
    ));
    let pf = PartialFraction::genus4();
    out.push(check(
        "partial fractions reconstruct 1/Q",
        pf.as_ref()
            .map_err(clone_err)
            .and_then(|pf| pf.reconstruction_holds()),
        "first 16 series coefficients",
    ));
    out.push(check(
        "g(r) equals the series of 1/Q (r <= 12)",
        pf.as_ref().map_err(clone_err).and_then(|pf| {
            let series = series_quotient(&PolyX::one(), &genus4_Q_closed(), 12)?;
            Ok(pf.g_values(12, exec)? == series)
        }),
        "symbolic, generic k",
    ));
    out.push(check(
        "appendix residues",
        pf.as_ref().map_err(clone_err).and_then(|pf| {
            Ok(verify_appendix(&load_appendix(None)?, pf, DEFAULT_SEED, 5)?.all_passed())
        }),
        "16 rows symbolic and at 5 exact points; rows sum to 1/Q",
    ));
    out.push(check(
        "leading-coefficient identity",
        Ok(dr_leading_identity()),
        "a^25 - 2a^23 + 2a^19 - a^17 = a^17 (a^2-1)^3 (a^2+1)",
    ));
    out.push(check(
        "D(r) positivity certificate",
        Ok(d_factor(1).is_certified_positive()),
        "perfect-square bound for every prime p >= 2",
    ));
    out.push(check(
        "tau oracle",
        tau_oracle(4).map(|t| t[1..] == [1, -24, 252, -1472]),
        "q prod (1 - q^n)^24",
    ));
    out
}

fn clone_err(e: &Error) -> Error {
    Error::InvalidData(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_ranges() {
        assert_eq!(parse_primes("2..11").unwrap(), vec![2, 3, 5, 7, 11]);
        assert_eq!(parse_primes("7").unwrap(), vec![7]);
        assert!(parse_primes("8").is_err());
        assert!(parse_primes("10..2").is_err());
        assert!(parse_primes("a..b").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("-1/3").unwrap(), crate::exactalg::ratio(-1, 3));
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(dispatch(["ikeda", "no-such-command"]), 1);
        assert_eq!(dispatch(["ikeda", "threshold", "--n", "x"]), 1);
    }

    #[test]
    fn computation_errors_exit_two() {
        assert_eq!(dispatch(["ikeda", "lambda-pr-table"]), 2);
        assert_eq!(dispatch(["ikeda", "alpha-beta-table", "--n", "0"]), 2);
    }
}
