use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sesq_core::charsum;
use sesq_core::counting;
use sesq_core::curves::{self, ASCurve, CurveReport, Extremal};
use sesq_core::kernel::{EnumOptions, DEFAULT_CAP};
use sesq_core::matrix::BruteCaps;
use sesq_core::sesqui::{self, SesquiForm};
use sesq_core::verify::{self, Suite, VerifyOptions};
use sesq_core::{Error, FieldCtx, FieldSpec, LinPoly};

mod output;

use output::{Format, Output};

#[derive(Parser)]
#[command(name = "sesq", version, about = "Sesquilinear forms over F_{q^2n}: classification, counts, character sums, curves")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Largest field size any command may enumerate.
    #[arg(long, global = true, env = "SESQ_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Threads used by enumerations.
    #[arg(long, global = true, default_value_t = 1, value_parser = parse_workers)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl RunConfig {
    fn enumeration(&self) -> EnumOptions {
        EnumOptions { cap: self.cap, workers: self.workers }
    }
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("at least one worker is needed".into()),
        Ok(w) => Ok(w),
        Err(e) => Err(e.to_string()),
    }
}

/// `a`, `a..b` (exclusive) or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    start: u64,
    end: u64,
}

impl Span {
    fn iter(&self) -> std::ops::Range<u64> {
        self.start..self.end
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Span, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        if let Some((a, b)) = s.split_once("..=") {
            Ok(Span { start: num(a)?, end: num(b)? + 1 })
        } else if let Some((a, b)) = s.split_once("..") {
            Ok(Span { start: num(a)?, end: num(b)? })
        } else {
            let a = num(s)?;
            Ok(Span { start: a, end: a + 1 })
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    Monomial,
    Binomial,
}

#[derive(Args)]
struct FieldArg {
    /// Field as p^e^n, optionally with `:c0,...,c_D` modulus coefficients (low degree first).
    #[arg(long)]
    field: FieldSpec,
}

#[derive(Args)]
struct PolyArg {
    /// Coefficients a_0,...,a_{n-1} as hex element indices.
    #[arg(long = "L")]
    l: String,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the field F_{q^2n}.
    Field {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Equivalence class of sigma_L.
    Classify {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Counts N_c of sigma_L(x, x) = -c.
    Count {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "L", conflicts_with = "all", required_unless_present = "all")]
        l: Option<String>,
        /// Report every L (optionally sliced by --range).
        #[arg(long)]
        all: bool,
        #[arg(long)]
        range: Option<Span>,
        /// Restrict the table to one c in F_{q^2}.
        #[arg(long)]
        c: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// The character sum S(L).
    Ssum {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// Genus, point count and extremality of y^{q^2} - y = x L(x^q).
    Curve {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        poly: PolyArg,
        /// Recount the points by enumeration.
        #[arg(long)]
        brute: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[command(flatten)]
        field: FieldArg,
        /// Random L when the space is too large to enumerate.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// Enumerate every L when there are at most this many.
        #[arg(long, default_value_t = VerifyOptions::default().exhaustive_limit)]
        exhaustive_limit: u64,
        #[arg(long)]
        range: Option<Span>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Stream extremal curves as JSON lines.
    Search {
        kind: SearchKind,
        /// Field for monomial searches.
        #[arg(long, required_if_eq("kind", "monomial"))]
        field: Option<FieldSpec>,
        /// Base field F_q as p^e, for binomial searches.
        #[arg(long, required_if_eq("kind", "binomial"))]
        base: Option<String>,
        #[arg(long)]
        m: Option<Span>,
        #[arg(long)]
        l: Option<Span>,
        #[arg(long)]
        k: Option<Span>,
        /// Exponents i of a = g^i (monomial) or indices of nonzero delta (binomial).
        #[arg(long)]
        range: Option<Span>,
    },
}

/// A failed run: exit code and message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const UNCLASSIFIED: u8 = 3;
const CAP: u8 = 4;
const MISMATCH: u8 = 5;

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Internal(_) => CHECK_FAILED,
            Error::Unclassified(_) => UNCLASSIFIED,
            Error::CapExceeded { .. } => CAP,
            _ => USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::new(USAGE, format!("output: {e}"))
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sink: Box<dyn Write> = match &cli.run.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(USAGE);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut out = Output::new(sink, cli.run.format);
    let result = run(&cli, &mut out);
    let flushed = out.finish();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, out: &mut Output) -> Run {
    let cfg = &cli.run;
    match &cli.command {
        Command::Field { field } => cmd_field(&field.field.build()?, out),
        Command::Classify { field, poly } => {
            let ctx = field.field.build()?;
            cmd_classify(&LinPoly::parse(&ctx, &poly.l)?, out)
        }
        Command::Count { field, l, all, range, c, mode } => {
            let ctx = field.field.build()?;
            let c = c.as_deref().map(|s| ctx.parse_elem(s)).transpose()?;
            if let Some(c) = &c {
                if !ctx.in_k(c) {
                    return Err(Error::NotInSubfield(ctx.k_degree()).into());
                }
            }
            let polys: Vec<LinPoly> = if *all {
                let it = LinPoly::enumerate_all(&ctx);
                match range {
                    Some(r) => it.skip(r.start as usize).take(r.end.saturating_sub(r.start) as usize).collect(),
                    None => it.collect(),
                }
            } else {
                vec![LinPoly::parse(&ctx, l.as_deref().unwrap_or_default())?]
            };
            cmd_count(&polys, c.as_ref(), *mode, cfg, out)
        }
        Command::Ssum { field, poly, mode } => {
            let ctx = field.field.build()?;
            cmd_ssum(&LinPoly::parse(&ctx, &poly.l)?, *mode, cfg, out)
        }
        Command::Curve { field, poly, brute } => {
            let ctx = field.field.build()?;
            let curve = ASCurve::new(LinPoly::parse(&ctx, &poly.l)?)?;
            let opts = cfg.enumeration();
            let rep = curves::curve_report(&curve, brute.then_some(&opts))?;
            out.record(&rep)?;
            Ok(())
        }
        Command::Verify { suite, field, samples, seed, exhaustive_limit, range, m, l, k } => {
            let ctx = field.field.build()?;
            let opts = VerifyOptions {
                exhaustive_limit: *exhaustive_limit,
                samples: *samples,
                seed: *seed,
                range: range.map(|r| (r.start as usize, r.end as usize)),
                m: *m,
                l: *l,
                k: *k,
                enumeration: cfg.enumeration(),
                caps: BruteCaps::default(),
            };
            cmd_verify(*suite, &ctx, &opts, out)
        }
        Command::Search { kind: SearchKind::Monomial, field, m, range, .. } => {
            let ctx = field.as_ref().expect("required by clap").build()?;
            search_monomial(&ctx, *m, *range, out)
        }
        Command::Search { kind: SearchKind::Binomial, base, m, l, k, range, .. } => {
            let (p, e) = parse_base(base.as_deref().expect("required by clap"))?;
            search_binomial(p, e, *m, *l, *k, *range, out)
        }
    }
}

fn cmd_field(ctx: &FieldCtx, out: &mut Output) -> Run {
    let v = json!({
        "field": ctx.spec_string(),
        "p": ctx.p(),
        "e": ctx.e(),
        "n": ctx.n(),
        "q": ctx.q(),
        "degree": ctx.degree(),
        "size": ctx.size(),
        "modulus": ctx.modulus(),
        "generator": ctx.to_hex(&ctx.generator()),
    });
    out.record(&v)?;
    Ok(())
}

fn cmd_classify(l: &LinPoly, out: &mut Output) -> Run {
    let class = sesqui::classify_with(&SesquiForm::new(l.clone()), &BruteCaps::default())?;
    out.record(&class)?;
    Ok(())
}

fn cmd_count(polys: &[LinPoly], only: Option<&sesq_core::Elem>, mode: Mode, cfg: &RunConfig, out: &mut Output) -> Run {
    let opts = cfg.enumeration();
    let mut mismatches = Vec::new();
    for l in polys {
        let ctx = l.ctx();
        let keep = |c: &str| only.map_or(true, |w| ctx.to_hex(w) == c);
        if mode == Mode::Brute {
            let table = counting::nc_brute_table(l, &opts)?;
            let total: u64 = table.iter().map(|(_, n)| n).sum();
            let rows: Vec<Value> = table
                .iter()
                .map(|(c, n)| json!({ "c": ctx.to_hex(c), "brute": n }))
                .filter(|r| keep(r["c"].as_str().unwrap_or_default()))
                .collect();
            out.record(&json!({ "q": ctx.q(), "n": ctx.n(), "L": l.to_text(), "table": rows, "total_brute": total }))?;
            continue;
        }
        let mut rep = counting::count_report(l, None)?;
        if mode == Mode::Both {
            let brute = counting::nc_brute_table(l, &opts)?;
            for (row, (_, b)) in rep.table.iter_mut().zip(&brute) {
                row.brute = Some(*b);
                if *b as i128 != row.formula {
                    mismatches.push(format!("L = {}, c = {}: formula {}, brute {b}", rep.l, row.c, row.formula));
                }
            }
            rep.total_brute = Some(brute.iter().map(|(_, n)| n).sum());
        }
        rep.table.retain(|r| keep(&r.c));
        out.record(&rep)?;
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        for m in &mismatches {
            eprintln!("mismatch: {m}");
        }
        Err(Failure::new(MISMATCH, format!("{} count mismatches", mismatches.len())))
    }
}

#[derive(Serialize)]
struct SsumReport {
    q: u64,
    n: usize,
    #[serde(rename = "L")]
    l: String,
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bruteforce: Option<String>,
}

fn cmd_ssum(l: &LinPoly, mode: Mode, cfg: &RunConfig, out: &mut Output) -> Run {
    let formula = (mode != Mode::Brute).then(|| charsum::s_formula(l));
    let brute = match mode {
        Mode::Formula => None,
        _ => Some(charsum::s_bruteforce(l, &cfg.enumeration())?),
    };
    let rep = SsumReport {
        q: l.ctx().q(),
        n: l.n(),
        l: l.to_text(),
        r: charsum::s_rank(l),
        formula: formula.as_ref().map(charsum::describe),
        bruteforce: brute.as_ref().map(charsum::describe),
    };
    out.record(&rep)?;
    match (formula, brute) {
        (Some(f), Some(b)) if f != b => Err(Failure::new(MISMATCH, format!("S(L): formula {f}, enumeration {b}"))),
        _ => Ok(()),
    }
}

fn cmd_verify(suite: Suite, ctx: &FieldCtx, opts: &VerifyOptions, out: &mut Output) -> Run {
    let summary = verify::run_suite(suite, ctx, opts)?;
    out.record(&summary)?;
    if summary.passed() {
        Ok(())
    } else {
        for f in &summary.failures {
            eprintln!("counterexample: {f}");
        }
        Err(Failure::new(CHECK_FAILED, format!("{} of {} checks failed", summary.failed, summary.checked)))
    }
}

#[derive(Serialize)]
struct MonomialHit {
    a: String,
    exponent: u64,
    #[serde(flatten)]
    curve: CurveReport,
}

fn search_monomial(ctx: &FieldCtx, m: Option<Span>, range: Option<Span>, out: &mut Output) -> Run {
    let n = ctx.n() as u64;
    let order = ctx.size() - 1;
    let g = ctx.generator();
    let ms = m.unwrap_or(Span { start: 0, end: n });
    let exps = range.unwrap_or(Span { start: 0, end: order });
    for m in ms.iter().filter(|&m| m < n) {
        let m = m as usize;
        // the criterion depends on a = g^i only through i mod (q^{2d} - 1)
        let d = curves::monomial_params(ctx, &ctx.one(), m)?.d as u32;
        let period = (ctx.q() as u128).pow(2 * d) - 1;
        let mut extremal_residue = vec![false; period as usize];
        let mut a = ctx.one();
        for hit in extremal_residue.iter_mut() {
            *hit = curves::monomial_params(ctx, &a, m)?.extremal;
            a = ctx.mul(&a, &g);
        }
        let end = exps.end.min(order);
        if exps.start >= end {
            continue;
        }
        let mut a = ctx.pow(&g, exps.start as u128);
        for i in exps.start..end {
            if extremal_residue[(i as u128 % period) as usize] {
                let curve = ASCurve::new(LinPoly::monomial(ctx, m, a.clone()))?;
                let rep = curves::curve_report(&curve, None)?;
                if rep.status == Extremal::Neither {
                    return Err(Failure::new(
                        CHECK_FAILED,
                        format!("a = g^{i}, m = {m} meets the criterion but the curve is not extremal"),
                    ));
                }
                out.record(&MonomialHit { a: ctx.to_hex(&a), exponent: i, curve: rep })?;
            }
            a = ctx.mul(&a, &g);
        }
    }
    Ok(())
}

fn parse_base(s: &str) -> Result<(u64, u32), Failure> {
    let bad = || Failure::new(USAGE, format!("base field must look like p^e, got {s:?}"));
    let (p, e) = s.split_once('^').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?))
}

#[derive(Serialize)]
struct BinomialHit {
    m: usize,
    l: usize,
    k: usize,
    gamma: String,
    delta: String,
    /// "family" when the hypotheses hold, otherwise "extremal, construction-external".
    construction: &'static str,
    #[serde(flatten)]
    curve: CurveReport,
}

fn search_binomial(
    p: u64,
    e: u32,
    m: Option<Span>,
    l: Option<Span>,
    k: Option<Span>,
    range: Option<Span>,
    out: &mut Output,
) -> Run {
    let ms = m.unwrap_or(Span { start: 1, end: 2 });
    let ks = k.unwrap_or(Span { start: 1, end: 2 });
    let q = u64::try_from((p as u128).pow(e)).map_err(|_| Failure::new(USAGE, "q overflows"))?;
    for m in ms.iter() {
        let ls = l.unwrap_or(Span { start: 0, end: m });
        for l in ls.iter().filter(|&l| l < m) {
            for k in ks.iter() {
                let (m, l, k) = (m as usize, l as usize, k as usize);
                let params = curves::binomial_params(q, m, l, k)?;
                let n = u32::try_from(params.n).map_err(|_| Failure::new(USAGE, "n overflows"))?;
                let ctx = FieldCtx::build(p, e, n, None)?;
                let gamma = ctx.generator();
                let deltas: Vec<_> = ctx.subfield_elements(2 * (m - l) * e as usize).into_iter().skip(1).collect();
                let span = range.unwrap_or(Span { start: 0, end: deltas.len() as u64 });
                for (idx, delta) in deltas.iter().enumerate() {
                    if !span.iter().contains(&(idx as u64)) {
                        continue;
                    }
                    let hyp = curves::binomial_hypotheses(&ctx, delta, &params)?;
                    let dtext = ctx.to_hex(delta);
                    let (poly, construction) = if hyp.hold() {
                        let built = curves::binomial_construct(&ctx, &gamma, delta, &params)?;
                        (built.poly, "family")
                    } else {
                        let why = hyp.failure().unwrap_or_default();
                        eprintln!("rejected: m = {m}, l = {l}, k = {k}, delta = {dtext}: {why}");
                        (curves::binomial_poly(&ctx, &gamma, delta, m, l)?, "extremal, construction-external")
                    };
                    let rep = curves::curve_report(&ASCurve::new(poly)?, None)?;
                    if rep.status == Extremal::Neither {
                        continue;
                    }
                    out.record(&BinomialHit {
                        m,
                        l,
                        k,
                        gamma: ctx.to_hex(&gamma),
                        delta: dtext,
                        construction,
                        curve: rep,
                    })?;
                }
            }
        }
    }
    Ok(())
}
