//! Artin-Schreier curves `y^{q^2} - y = x L(x^q)` over `F_{q^{2n}}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::counting::{self, BoundSummary, CountReport, CountRow, RProfile};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::kernel::EnumOptions;
use crate::linpoly::LinPoly;
use crate::num;

/// `(q^2 - 1) q^{2m+1} / 2`.
pub fn genus(q: u64, m: usize) -> u128 {
    let q = q as u128;
    (q * q - 1) * num::pow(q, 2 * m as u32 + 1) / 2
}

/// Hasse-Weil window `q^{2n} + 1 -+ (q^2 - 1) q^{n+2m+1}`.
pub fn hw_window(q: u64, n: usize, m: usize) -> (i128, i128) {
    let q = q as i128;
    let centre = q.pow(2 * n as u32) + 1;
    let radius = (q * q - 1) * q.pow((n + 2 * m + 1) as u32);
    (centre - radius, centre + radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    Maximal,
    Minimal,
    Neither,
}

impl Extremal {
    pub fn as_str(&self) -> &'static str {
        match self {
            Extremal::Maximal => "maximal",
            Extremal::Minimal => "minimal",
            Extremal::Neither => "neither",
        }
    }
}

/// Extremality read off an `R` profile: extremal iff `R(v) = n - 2m - 1` for all `v`.
pub fn extremal_from_profile(n: usize, m: usize, profile: &RProfile) -> Extremal {
    let target = n as i64 - 2 * m as i64 - 1;
    if profile.entries.iter().all(|(_, r)| *r as i64 == target) {
        if n % 2 == 1 { Extremal::Maximal } else { Extremal::Minimal }
    } else {
        Extremal::Neither
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASCurve {
    l: LinPoly,
    m: usize,
}

impl ASCurve {
    pub fn new(l: LinPoly) -> Result<ASCurve> {
        let m = l
            .top_index()
            .ok_or_else(|| Error::InvalidParameters("L = 0 does not define a curve of this family".into()))?;
        Ok(ASCurve { l, m })
    }

    pub fn poly(&self) -> &LinPoly {
        &self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.l.ctx().q()
    }

    pub fn n(&self) -> usize {
        self.l.n()
    }

    pub fn genus(&self) -> u128 {
        genus(self.q(), self.m)
    }

    pub fn window(&self) -> (i128, i128) {
        hw_window(self.q(), self.n(), self.m)
    }

    fn points_from_zeros(&self, n0: i128) -> Result<i128> {
        let q = self.q() as i128;
        let points = 1 + q * q * n0;
        let (lo, hi) = self.window();
        if points < lo || points > hi {
            return Err(Error::Internal(format!("N = {points} outside the window [{lo}, {hi}]")));
        }
        Ok(points)
    }
}

/// `N = 1 + q^2 N_0` with `N_0` from the closed formula.
pub fn point_count(curve: &ASCurve) -> Result<i128> {
    let ctx = curve.l.ctx();
    let n0 = counting::nc_formula(&curve.l, &ctx.zero())?;
    let n0 = n0.to_i128().ok_or_else(|| Error::Overflow(format!("N_0 = {n0}")))?;
    curve.points_from_zeros(n0)
}

/// `N = 1 + q^2 N_0` with `N_0` counted by enumeration.
pub fn point_count_brute(curve: &ASCurve, opts: &EnumOptions) -> Result<i128> {
    let ctx = curve.l.ctx();
    let n0 = counting::nc_bruteforce(&curve.l, &ctx.zero(), opts)?;
    curve.points_from_zeros(n0 as i128)
}

pub fn classify_extremal(curve: &ASCurve) -> Extremal {
    extremal_from_profile(curve.n(), curve.m, &counting::r_profile(&curve.l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "L")]
    pub l: String,
    pub genus: u128,
    #[serde(rename = "N")]
    pub points: i128,
    pub window: (i128, i128),
    pub status: Extremal,
    pub verified_by: &'static str,
}

/// Point count and status; with `brute`, `N` is recounted and the status
/// checked against the window.
pub fn curve_report(curve: &ASCurve, brute: Option<&EnumOptions>) -> Result<CurveReport> {
    let status = classify_extremal(curve);
    let points = point_count(curve)?;
    let (lo, hi) = curve.window();
    let verified_by = match brute {
        Some(opts) => {
            let counted = point_count_brute(curve, opts)?;
            if counted != points {
                return Err(Error::Internal(format!("N mismatch: formula {points}, enumeration {counted}")));
            }
            let observed = if counted == hi {
                Extremal::Maximal
            } else if counted == lo {
                Extremal::Minimal
            } else {
                Extremal::Neither
            };
            if observed != status {
                return Err(Error::Internal(format!(
                    "profile says {}, point count says {}",
                    status.as_str(),
                    observed.as_str()
                )));
            }
            "bruteforce"
        }
        None => "profile",
    };
    Ok(CurveReport {
        q: curve.q(),
        n: curve.n(),
        m: curve.m,
        l: curve.l.to_text(),
        genus: curve.genus(),
        points,
        window: (lo, hi),
        status,
        verified_by,
    })
}

/// Derived quantities for `L = a x^{q^{2m}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialParams {
    pub m: usize,
    pub d: usize,
    pub alpha: Elem,
    /// `gcd(n/d, q+1)`.
    pub g: u64,
    /// `q + 1 - gcd(n/d, q+1)(q^d + 1)`.
    pub big_q: i128,
    /// `alpha^{(q+1)/gcd(n/d, q+1)} = 1`.
    pub first_branch: bool,
    /// `(2m+1)(q+1) | n` and `alpha = 1`.
    pub extremal: bool,
}

pub fn monomial_params(ctx: &FieldCtx, a: &Elem, m: usize) -> Result<MonomialParams> {
    let n = ctx.n();
    if a.is_zero() {
        return Err(Error::InvalidParameters("a must be nonzero".into()));
    }
    if m >= n {
        return Err(Error::InvalidParameters(format!("m = {m} must be below n = {n}")));
    }
    let q = ctx.q() as u128;
    let d = num::gcd(2 * m as u128 + 1, n as u128) as usize;
    let qd = num::pow(q, d as u32);
    let e1 = num::pow(q, 2 * m as u32 + 1) - 1;
    let e2 = (ctx.size() as u128 - 1) / (qd * qd - 1);
    let base = ctx.neg(&ctx.pow(a, e1));
    let alpha = ctx.pow(&base, e2);
    let g = num::gcd((n / d) as u128, q + 1);
    let big_q = (q + 1) as i128 - (g * (qd + 1)) as i128;
    let first_branch = ctx.pow(&alpha, (q + 1) / g) == ctx.one();
    let extremal = n % ((2 * m + 1) * (q as usize + 1)) == 0 && alpha == ctx.one();
    Ok(MonomialParams { m, d, alpha, g: g as u64, big_q, first_branch, extremal })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialReport {
    pub a: String,
    pub m: usize,
    pub d: usize,
    pub alpha: String,
    #[serde(rename = "Q")]
    pub big_q: i128,
    pub branch: u8,
    pub extremal: bool,
    pub counts: CountReport,
}

/// `N_c - q^{2(n-1)}` as displayed for monomials.
fn monomial_deviation(ctx: &FieldCtx, p: &MonomialParams, c: &Elem) -> BigRational {
    let n = ctx.n() as i64;
    let q = BigInt::from(ctx.q());
    let qp = |k: i64| -> BigRational {
        let mag = num_traits::pow(q.clone(), k.unsigned_abs() as usize);
        if k >= 0 { BigRational::from_integer(mag) } else { BigRational::new(BigInt::one(), mag) }
    };
    let sgn = |k: i64| BigRational::from_integer(if k.rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() });
    let bq = BigRational::from_integer(BigInt::from(p.big_q));
    let qm1 = BigRational::from_integer(&q - 1);
    if p.first_branch {
        if c.is_zero() {
            return sgn(n) * qm1 * qp(n - 2) * bq;
        }
        let common = sgn(n - 1) * qp(n - 2) * bq;
        let lhs = ctx.pow(&ctx.neg(&ctx.pow(c, ctx.q() as u128 - 1)), (ctx.n() / p.d) as u128);
        if lhs == p.alpha {
            sgn(n - 1) * qp(n + p.d as i64 - 1) + common
        } else {
            sgn(n) * qp(n - 1) + common
        }
    } else if c.is_zero() {
        sgn(n) * BigRational::from_integer(&q * &q - 1) * qp(n - 2)
    } else {
        sgn(n - 1) * qp(n - 2)
    }
}

/// Full `N_c` table for `L = a x^{q^{2m}}` from the monomial closed form, checked
/// against the general formula for every `c`.
pub fn monomial_counts(ctx: &FieldCtx, a: &Elem, m: usize) -> Result<MonomialReport> {
    let params = monomial_params(ctx, a, m)?;
    let l = LinPoly::monomial(ctx, m, a.clone());
    let general = counting::nc_table(&l)?;
    let q = BigInt::from(ctx.q());
    let base = BigRational::from_integer(num_traits::pow(q, 2 * (ctx.n() - 1)));
    let mut table = Vec::with_capacity(general.len());
    for (c, expect) in &general {
        let v = base.clone() + monomial_deviation(ctx, &params, c);
        if !v.is_integer() || v.to_integer() != *expect {
            return Err(Error::Internal(format!(
                "monomial table disagrees at c = {}: {v} vs {expect}",
                ctx.to_hex(c)
            )));
        }
        let formula = expect.to_i128().ok_or_else(|| Error::Overflow(expect.to_string()))?;
        table.push(CountRow { c: ctx.to_hex(c), formula, brute: None });
    }
    let total_formula: i128 = table.iter().map(|r| r.formula).sum();
    if total_formula != ctx.size() as i128 {
        return Err(Error::Internal(format!("monomial counts sum to {total_formula}")));
    }
    let bound = counting::bound_check(&l, m, &ctx.zero())?;
    if bound.equality != params.extremal {
        return Err(Error::Internal(format!(
            "divisibility criterion ({}) disagrees with the bound ({})",
            params.extremal, bound.equality
        )));
    }
    let counts = CountReport {
        q: ctx.q(),
        n: ctx.n(),
        l: l.to_text(),
        table,
        total_formula,
        total_brute: None,
        bound: Some(BoundSummary { m, rhs: bound.rhs, equality_at_zero: bound.equality }),
    };
    Ok(MonomialReport {
        a: ctx.to_hex(a),
        m,
        d: params.d,
        alpha: ctx.to_hex(&params.alpha),
        big_q: params.big_q,
        branch: if params.first_branch { 1 } else { 2 },
        extremal: params.extremal,
        counts,
    })
}

/// Derived integers for `gamma^{q^{2m+1}+1} delta x^{q^{2m}} - gamma^{q^{2l+1}+1} delta x^{q^{2l}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinomialParams {
    pub q: u64,
    pub m: usize,
    pub l: usize,
    pub k: usize,
    pub d: usize,
    pub s: u128,
    pub n: usize,
}

pub fn binomial_params(q: u64, m: usize, l: usize, k: usize) -> Result<BinomialParams> {
    if l >= m {
        return Err(Error::InvalidParameters(format!("need 0 <= l < m, got l = {l}, m = {m}")));
    }
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let qq = q as u128;
    let diff = (m - l) as u128;
    let sum = (m + l + 1) as u128;
    let d = num::gcd(diff, sum);
    let top = num::checked_pow(qq, 2 * diff as u32)
        .ok_or_else(|| Error::Overflow(format!("q^{}", 2 * diff)))?
        - 1;
    let qd1 = num::pow(qq, d as u32) + 1;
    let g = num::gcd(diff / d, qq + 1);
    if top % qd1 != 0 {
        return Err(Error::Internal("q^d + 1 does not divide q^{2(m-l)} - 1".into()));
    }
    let s = (top / qd1) * ((qq + 1) / g);
    let n = k as u128 * num::lcm(diff, sum * (qq + 1));
    Ok(BinomialParams { q, m, l, k, d: d as usize, s, n: n as usize })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinomialHypotheses {
    pub delta_sk_is_one: bool,
    pub delta_s_is_one: bool,
    pub k_coprime_to_q: bool,
}

impl BinomialHypotheses {
    pub fn hold(&self) -> bool {
        self.failure().is_none()
    }

    pub fn failure(&self) -> Option<&'static str> {
        if !self.delta_sk_is_one {
            Some("δ^{sk}≠1")
        } else if self.delta_s_is_one && self.k_coprime_to_q {
            Some("δ^s=1 and gcd(k,q)=1")
        } else {
            None
        }
    }
}

fn check_binomial_field(ctx: &FieldCtx, params: &BinomialParams) -> Result<()> {
    if ctx.q() != params.q || ctx.n() != params.n {
        return Err(Error::InvalidParameters(format!(
            "field has (q, n) = ({}, {}), parameters need ({}, {})",
            ctx.q(),
            ctx.n(),
            params.q,
            params.n
        )));
    }
    Ok(())
}

pub fn binomial_hypotheses(ctx: &FieldCtx, delta: &Elem, params: &BinomialParams) -> Result<BinomialHypotheses> {
    check_binomial_field(ctx, params)?;
    let sub = 2 * (params.m - params.l) * ctx.e() as usize;
    if delta.is_zero() || !ctx.in_subfield(delta, sub) {
        return Err(Error::NotInSubfield(sub));
    }
    let sk = params
        .s
        .checked_mul(params.k as u128)
        .ok_or_else(|| Error::Overflow("s k".into()))?;
    Ok(BinomialHypotheses {
        delta_sk_is_one: ctx.pow(delta, sk) == ctx.one(),
        delta_s_is_one: ctx.pow(delta, params.s) == ctx.one(),
        k_coprime_to_q: num::gcd(params.k as u128, params.q as u128) == 1,
    })
}

/// The binomial itself, without any hypothesis check.
pub fn binomial_poly(ctx: &FieldCtx, gamma: &Elem, delta: &Elem, m: usize, l: usize) -> Result<LinPoly> {
    if gamma.is_zero() {
        return Err(Error::InvalidParameters("gamma must be nonzero".into()));
    }
    if l >= m || m >= ctx.n() {
        return Err(Error::InvalidParameters(format!("need 0 <= l < m < n, got l = {l}, m = {m}")));
    }
    let q = ctx.q() as u128;
    let g = |j: usize| ctx.pow(gamma, num::pow(q, 2 * j as u32 + 1) + 1);
    let mut coeffs = vec![ctx.zero(); ctx.n()];
    coeffs[m] = ctx.mul(&g(m), delta);
    coeffs[l] = ctx.neg(&ctx.mul(&g(l), delta));
    LinPoly::new(ctx, coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialConstruction {
    pub poly: LinPoly,
    pub params: BinomialParams,
    /// `(-1)^{n-1} (q^2 - 1) q^{n+2m-1}`.
    pub predicted_deviation: i128,
    pub status: Extremal,
}

/// Builds the binomial after checking every hypothesis, then confirms the
/// extremal deviation with the kernel profile and the general count.
pub fn binomial_construct(
    ctx: &FieldCtx,
    gamma: &Elem,
    delta: &Elem,
    params: &BinomialParams,
) -> Result<BinomialConstruction> {
    let hyp = binomial_hypotheses(ctx, delta, params)?;
    if let Some(why) = hyp.failure() {
        return Err(Error::Hypothesis(why.into()));
    }
    let poly = binomial_poly(ctx, gamma, delta, params.m, params.l)?;
    let n = params.n;
    let rhs = counting::bound_rhs(params.q, n, params.m);
    let predicted_deviation = if n % 2 == 1 { rhs } else { -rhs };
    let profile = counting::r_profile(&poly);
    let status = extremal_from_profile(n, params.m, &profile);
    if status == Extremal::Neither {
        return Err(Error::Internal(format!("kernel profile {:?} is not extremal", profile.values())));
    }
    let bound = counting::bound_check(&poly, params.m, &ctx.zero())?;
    if !bound.equality || bound.deviation != predicted_deviation {
        return Err(Error::Internal(format!(
            "deviation {} differs from the predicted {predicted_deviation}",
            bound.deviation
        )));
    }
    Ok(BinomialConstruction { poly, params: *params, predicted_deviation, status })
}
