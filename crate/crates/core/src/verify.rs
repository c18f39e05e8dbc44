//! Exhaustive or sampled verification suites, one per identity or count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charsum;
use crate::counting;
use crate::curves::{self, ASCurve, Extremal};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::kernel::EnumOptions;
use crate::linpoly::LinPoly;
use crate::matrix::{congruence_search, general_linear_group, BruteCaps};
use crate::sesqui::{self, build_ml, perm_p, BasisFrame, Hermitian, SesquiForm};

const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Rep,
    Adjoint,
    Equiv,
    Ssum,
    Count,
    Hermitian,
    Bound,
    Monomial,
    Binomial,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Rep,
        Suite::Adjoint,
        Suite::Equiv,
        Suite::Ssum,
        Suite::Count,
        Suite::Hermitian,
        Suite::Bound,
        Suite::Monomial,
        Suite::Binomial,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Rep => "rep",
            Suite::Adjoint => "adjoint",
            Suite::Equiv => "equiv",
            Suite::Ssum => "ssum",
            Suite::Count => "count",
            Suite::Hermitian => "hermitian",
            Suite::Bound => "bound",
            Suite::Monomial => "monomial",
            Suite::Binomial => "binomial",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Enumerate every `L` when there are at most this many.
    pub exhaustive_limit: u64,
    /// Number of random `L` otherwise.
    pub samples: usize,
    pub seed: u64,
    /// Slice of the case list to run.
    pub range: Option<(usize, usize)>,
    /// Restricts `bound` and `monomial` to this degree exponent; required by `binomial`.
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub enumeration: EnumOptions,
    pub caps: BruteCaps,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 8192,
            samples: 500,
            seed: 0x5e5_9e21,
            range: None,
            m: None,
            l: None,
            k: None,
            enumeration: EnumOptions::default(),
            caps: BruteCaps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub field: String,
    pub checked: u64,
    pub failed: u64,
    /// First few counterexamples.
    pub failures: Vec<String>,
    /// Suite-specific tallies, e.g. how many cases reached equality.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<(String, u64)>,
}

impl SuiteSummary {
    fn new(suite: Suite, ctx: &FieldCtx) -> SuiteSummary {
        SuiteSummary {
            suite: suite.name().into(),
            field: ctx.spec_string(),
            checked: 0,
            failed: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(what);
        }
    }

    /// Records an `Err` from a self-checking routine as a failure; cap errors propagate.
    fn outcome<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Result<Option<T>> {
        self.checked += 1;
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::CapExceeded { .. }) => Err(e),
            Err(e) => {
                self.fail(format!("{}: {e}", what()));
                Ok(None)
            }
        }
    }

    fn note(&mut self, key: &str, by: u64) {
        match self.notes.iter_mut().find(|(k, _)| k == key) {
            Some((_, v)) => *v += by,
            None => self.notes.push((key.into(), by)),
        }
    }
}

fn n_polys(ctx: &FieldCtx) -> Option<u64> {
    ctx.size().checked_pow(ctx.n() as u32)
}

/// Every `L` when few enough, else a seeded random sample.
pub fn case_list(ctx: &FieldCtx, opts: &VerifyOptions) -> Vec<LinPoly> {
    let all = match n_polys(ctx) {
        Some(total) if total <= opts.exhaustive_limit => LinPoly::enumerate_all(ctx).collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..opts.samples)
                .map(|_| {
                    let coeffs = (0..ctx.n()).map(|_| ctx.from_index(rng.gen_range(0..ctx.size()))).collect();
                    LinPoly::new(ctx, coeffs).expect("n coefficients")
                })
                .collect()
        }
    };
    slice(all, opts.range)
}

fn slice<T>(v: Vec<T>, range: Option<(usize, usize)>) -> Vec<T> {
    match range {
        None => v,
        Some((a, b)) => v.into_iter().skip(a).take(b.saturating_sub(a)).collect(),
    }
}

fn sample_elems(ctx: &FieldCtx, rng: &mut ChaCha8Rng, count: usize) -> Vec<Elem> {
    if ctx.size() <= count as u64 {
        ctx.elements().collect()
    } else {
        (0..count).map(|_| ctx.from_index(rng.gen_range(0..ctx.size()))).collect()
    }
}

pub fn run_suite(suite: Suite, ctx: &FieldCtx, opts: &VerifyOptions) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new(suite, ctx);
    match suite {
        Suite::Rep => rep(ctx, opts, &mut s)?,
        Suite::Adjoint => adjoint(ctx, opts, &mut s)?,
        Suite::Equiv => equiv(ctx, opts, &mut s)?,
        Suite::Ssum => ssum(ctx, opts, &mut s)?,
        Suite::Count => count(ctx, opts, &mut s)?,
        Suite::Hermitian => hermitian(ctx, opts, &mut s)?,
        Suite::Bound => bound(ctx, opts, &mut s)?,
        Suite::Monomial => monomial(ctx, opts, &mut s)?,
        Suite::Binomial => binomial(ctx, opts, &mut s)?,
    }
    Ok(s)
}

fn rep(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 1);
    for l in case_list(ctx, opts) {
        let form = SesquiForm::new(l.clone());
        let pairing = |u: &Elem, v: &Elem| ctx.trace(&ctx.mul(u, &l.eval(&ctx.frob_q(v))));
        match SesquiForm::from_pairing(ctx, pairing) {
            Ok(back) => s.check(back.poly() == &l, || format!("from_pairing({}) returned {}", l.to_text(), back.poly().to_text())),
            Err(e) => s.check(false, || format!("from_pairing({}): {e}", l.to_text())),
        }
        let points = sample_elems(ctx, &mut rng, 4096);
        let alternating = points.iter().all(|u| form.eval(u, u).is_zero());
        s.check(alternating == l.is_zero(), || format!("alternating = {alternating} for L = {}", l.to_text()));
    }
    Ok(())
}

fn adjoint(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 2);
    let p = perm_p(ctx, ctx.n());
    for l in case_list(ctx, opts) {
        let adj = l.adjoint();
        let text = l.to_text();
        s.check(adj.adjoint() == l, || format!("L** != L for {text}"));
        for a in ctx.k_elements() {
            let lhs = l.scale(&a).adjoint();
            let rhs = adj.scale(&ctx.frob_q(&a));
            s.check(lhs == rhs, || format!("(aL)* != a^q L* for L = {text}, a = {}", ctx.to_hex(&a)));
        }
        let ml = build_ml(&l);
        let lhs = build_ml(&adj);
        let rhs = &p * &ml.star();
        s.check(lhs == rhs, || format!("M_L* != P star(M_L) for {text}"));
        let us = sample_elems(ctx, &mut rng, 64);
        let vs = sample_elems(ctx, &mut rng, 64);
        let mut ok = true;
        for u in &us {
            for v in &vs {
                let left = ctx.trace(&ctx.mul(u, &adj.eval(&ctx.frob_q(v))));
                let right = ctx.frob_q(&ctx.trace(&ctx.mul(v, &l.eval(&ctx.frob_q(u)))));
                ok &= left == right;
            }
        }
        s.check(ok, || format!("Tr(u L*(v^q)) != Tr(v L(u^q))^q for {text}"));
    }
    Ok(())
}

fn equiv(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    let cases = case_list(ctx, opts);
    let frame = BasisFrame::standard(ctx);
    let k = ctx.k_degree();
    let group = general_linear_group(ctx, k, ctx.n(), &opts.caps)?;
    let mut nonsingular = Vec::new();
    for l in &cases {
        let form = SesquiForm::new(l.clone());
        let c = form.coeff_matrix(&frame);
        if ctx.n() == 2 && !l.is_zero() {
            let r = sesqui::classify_dim2(&form).and_then(|d| {
                let expected = d.expected_class(ctx)?;
                let got = sesqui::classify_with(&form, &opts.caps)?;
                Ok((expected, got))
            });
            if let Some((expected, got)) = s.outcome(r, || format!("n = 2 classification of {}", l.to_text()))? {
                if expected != got {
                    s.fail(format!("classify_dim2 {expected:?} vs classify {got:?} for {}", l.to_text()));
                }
            }
        }
        if c.rank() == ctx.n() {
            let class = sesqui::classify_with(&form, &opts.caps)?;
            nonsingular.push((l.to_text(), c, class));
        }
    }
    s.note("nonsingular", nonsingular.len() as u64);
    let mut classes = std::collections::HashSet::new();
    for (i, (t0, c0, k0)) in nonsingular.iter().enumerate() {
        classes.insert(k0.clone());
        for (t1, c1, k1) in &nonsingular[i..] {
            let decided = k0 == k1;
            let oracle = congruence_search(&group, c0, c1).is_some();
            s.check(decided == oracle, || format!("decider {decided}, oracle {oracle} for ({t0}, {t1})"));
        }
    }
    s.note("classes", classes.len() as u64);
    Ok(())
}

fn ssum(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    for l in case_list(ctx, opts) {
        let brute = s.outcome(charsum::s_bruteforce(&l, &opts.enumeration), || format!("S({})", l.to_text()))?;
        if let Some(b) = brute {
            let f = charsum::s_formula(&l);
            if b != f {
                s.fail(format!("S({}) = {b} by enumeration, {f} by formula", l.to_text()));
            }
        }
    }
    Ok(())
}

fn count(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    for l in case_list(ctx, opts) {
        let text = l.to_text();
        s.outcome(counting::count_report(&l, Some(&opts.enumeration)), || format!("N_c table for {text}"))?;
        if !matches!(SesquiForm::new(l.clone()).hermitian_lambda(), Hermitian::None) {
            s.note("hermitian", 1);
            hermitian_case(ctx, &l, s)?;
        }
    }
    Ok(())
}

fn hermitian_case(ctx: &FieldCtx, l: &LinPoly, s: &mut SuiteSummary) -> Result<()> {
    for c in ctx.k_elements() {
        let r = counting::nc_hermitian(l, &c).and_then(|h| Ok((h, counting::nc_formula(l, &c)?)));
        if let Some((h, f)) = s.outcome(r, || format!("Hermitian N_c for {}", l.to_text()))? {
            if h != f {
                s.fail(format!("Hermitian N_c = {h}, general {f} at c = {} for {}", ctx.to_hex(&c), l.to_text()));
            }
        }
    }
    Ok(())
}

fn hermitian(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    for l in case_list(ctx, opts) {
        if matches!(SesquiForm::new(l.clone()).hermitian_lambda(), Hermitian::None) {
            continue;
        }
        s.note("hermitian", 1);
        hermitian_case(ctx, &l, s)?;
        let brute = counting::nc_brute_table(&l, &opts.enumeration)?;
        for (c, b) in brute {
            let h = counting::nc_hermitian(&l, &c)?;
            s.check(h == BigInt::from(b), || format!("Hermitian N_c = {h}, enumeration {b} for {}", l.to_text()));
        }
    }
    Ok(())
}

fn monomials(ctx: &FieldCtx, opts: &VerifyOptions) -> Vec<(usize, Elem)> {
    let ms: Vec<usize> = match opts.m {
        Some(m) => vec![m],
        None => (0..ctx.n()).collect(),
    };
    let all: Vec<(usize, Elem)> = ms
        .into_iter()
        .filter(|&m| m < ctx.n())
        .flat_map(|m| ctx.elements().skip(1).map(move |a| (m, a)))
        .collect();
    slice(all, opts.range)
}

fn bound(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    let run = |s: &mut SuiteSummary, l: &LinPoly, m: usize| -> Result<bool> {
        let mut equal_at_zero = false;
        for c in ctx.k_elements() {
            let rep = s.outcome(counting::bound_check(l, m, &c), || format!("bound for {}", l.to_text()))?;
            if let Some(rep) = rep {
                if rep.equality {
                    s.note("equality", 1);
                    equal_at_zero |= c.is_zero();
                }
            }
        }
        Ok(equal_at_zero)
    };
    for (m, a) in monomials(ctx, opts) {
        let l = LinPoly::monomial(ctx, m, a.clone());
        let equal = run(s, &l, m)?;
        let params = curves::monomial_params(ctx, &a, m)?;
        s.check(equal == params.extremal, || {
            format!("equality {equal} but divisibility criterion {} for a = {}, m = {m}", params.extremal, ctx.to_hex(&a))
        });
    }
    for l in case_list(ctx, opts) {
        let Some(m) = l.top_index() else { continue };
        if opts.m.is_some_and(|want| want != m) {
            continue;
        }
        run(s, &l, m)?;
    }
    Ok(())
}

fn monomial(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    let brute = opts.enumeration.check(ctx).is_ok();
    for (m, a) in monomials(ctx, opts) {
        let what = || format!("a = {}, m = {m}", ctx.to_hex(&a));
        let Some(rep) = s.outcome(curves::monomial_counts(ctx, &a, m), what)? else { continue };
        if rep.extremal {
            s.note("extremal", 1);
        }
        let l = LinPoly::monomial(ctx, m, a.clone());
        if brute {
            let table = counting::nc_brute_table(&l, &opts.enumeration)?;
            let ok = table.iter().zip(&rep.counts.table).all(|((_, b), row)| *b as i128 == row.formula);
            s.check(ok, || format!("monomial table differs from enumeration for {}", what()));
        }
        let curve = ASCurve::new(l)?;
        let r = curves::curve_report(&curve, None);
        if let Some(cr) = s.outcome(r, what)? {
            let extremal = cr.status != Extremal::Neither;
            s.check(extremal == rep.extremal, || format!("curve status {:?} vs criterion for {}", cr.status, what()));
        }
    }
    Ok(())
}

fn binomial(ctx: &FieldCtx, opts: &VerifyOptions, s: &mut SuiteSummary) -> Result<()> {
    let (Some(m), Some(l), Some(k)) = (opts.m, opts.l, opts.k) else {
        return Err(Error::InvalidParameters("the binomial suite needs m, l and k".into()));
    };
    let params = curves::binomial_params(ctx.q(), m, l, k)?;
    if params.n != ctx.n() {
        return Err(Error::InvalidParameters(format!("(m, l, k) = ({m}, {l}, {k}) needs n = {}", params.n)));
    }
    let gamma = ctx.generator();
    let deltas = slice(ctx.subfield_elements(2 * (m - l) * ctx.e() as usize).into_iter().skip(1).collect(), opts.range);
    let brute = opts.enumeration.check(ctx).is_ok();
    for delta in deltas {
        let hyp = curves::binomial_hypotheses(ctx, &delta, &params)?;
        let dtext = ctx.to_hex(&delta);
        match curves::binomial_construct(ctx, &gamma, &delta, &params) {
            Ok(built) => {
                s.check(hyp.hold(), || format!("construction accepted δ = {dtext} against the hypotheses"));
                s.note(built.status.as_str(), 1);
                if brute {
                    let n0 = counting::nc_bruteforce(&built.poly, &ctx.zero(), &opts.enumeration)? as i128;
                    let q = ctx.q() as i128;
                    let expected = q.pow(2 * (ctx.n() as u32 - 1)) + built.predicted_deviation;
                    s.check(n0 == expected, || format!("N_0 = {n0} by enumeration, predicted {expected}, δ = {dtext}"));
                }
            }
            Err(Error::Hypothesis(why)) => {
                s.check(!hyp.hold(), || format!("hypotheses hold but construction refused: {why}"));
                s.note("rejected", 1);
            }
            Err(e @ Error::CapExceeded { .. }) => return Err(e),
            Err(e) => s.check(false, || format!("δ = {dtext}: {e}")),
        }
    }
    Ok(())
}
