//! Zero counts `N_c` of `sigma_L(x, x) + c` over `F_{q^{2n}}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::kernel::{EnumOptions, QuadKernel};
use crate::linpoly::LinPoly;
use crate::sesqui::{Hermitian, SesquiForm};

/// The subgroup `U` of order `q + 1` in `F_{q^2}^*`, as successive powers of `h^{q-1}`.
pub fn enumerate_u(ctx: &FieldCtx) -> Vec<Elem> {
    ctx.unit_circle()
}

/// `R(v) = n - dim ker(v L* + L)` for every `v` in `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RProfile {
    pub entries: Vec<(Elem, usize)>,
    pub m_hint: Option<usize>,
}

impl RProfile {
    pub fn r(&self, v: &Elem) -> Option<usize> {
        self.entries.iter().find(|(u, _)| u == v).map(|(_, r)| *r)
    }

    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|(_, r)| *r).collect()
    }
}

pub fn r_profile(l: &LinPoly) -> RProfile {
    let ctx = l.ctx();
    let adj = l.adjoint();
    let entries = enumerate_u(ctx)
        .into_iter()
        .map(|v| {
            let m = adj.scale(&v).add(l).expect("same context");
            let r = l.n() - m.kernel().0;
            (v, r)
        })
        .collect();
    RProfile { entries, m_hint: l.top_index() }
}

fn q_pow(q: &BigInt, k: i64) -> BigRational {
    let mag = num_traits::pow(q.clone(), k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// `(-q)^{-r}`.
fn neg_q_inv_pow(q: &BigInt, r: usize) -> BigRational {
    let v = q_pow(q, -(r as i64));
    if r % 2 == 1 { -v } else { v }
}

fn integral(v: BigRational, what: &str) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Internal(format!("{what} is not an integer: {v}")))
    }
}

/// `N_c` from an `R` profile.
pub fn nc_from_profile(ctx: &FieldCtx, profile: &RProfile, c: &Elem) -> Result<BigInt> {
    if !ctx.in_k(c) {
        return Err(Error::NotInSubfield(ctx.k_degree()));
    }
    let n = ctx.n() as i64;
    let q = BigInt::from(ctx.q());
    let base = q_pow(&q, 2 * (n - 1));
    let sum = profile
        .entries
        .iter()
        .fold(BigRational::zero(), |acc, (_, r)| acc + neg_q_inv_pow(&q, *r));
    let value = if c.is_zero() {
        let qm1 = BigRational::from_integer(&q - 1);
        &base + qm1 * &base * sum
    } else {
        let qq = ctx.q() as u128;
        let v = ctx.neg(&ctx.pow(c, qq * qq - qq));
        let r = profile
            .r(&v)
            .ok_or_else(|| Error::Internal("-c^{1-q} is not in U".into()))?;
        &base + q_pow(&q, 2 * n - 1) * neg_q_inv_pow(&q, r) - &base * sum
    };
    integral(value, "N_c")
}

pub fn nc_formula(l: &LinPoly, c: &Elem) -> Result<BigInt> {
    nc_from_profile(l.ctx(), &r_profile(l), c)
}

/// `(c, N_c)` for every `c` in `F_{q^2}`, in `k_elements` order.
pub fn nc_table(l: &LinPoly) -> Result<Vec<(Elem, BigInt)>> {
    let profile = r_profile(l);
    l.ctx()
        .k_elements()
        .into_iter()
        .map(|c| {
            let v = nc_from_profile(l.ctx(), &profile, &c)?;
            Ok((c, v))
        })
        .collect()
}

/// `(c, #{u : Tr(u L(u^q)) = -c})` for every `c` in `F_{q^2}`.
pub fn nc_brute_table(l: &LinPoly, opts: &EnumOptions) -> Result<Vec<(Elem, u64)>> {
    let ctx = l.ctx();
    let kernel = QuadKernel::new(l);
    let counts = kernel.value_counts(opts)?;
    Ok(ctx
        .k_elements()
        .into_iter()
        .map(|c| {
            let target = ctx.neg(&c);
            let n = counts.iter().find(|(w, _)| *w == target).map(|(_, n)| *n).unwrap_or(0);
            (c, n)
        })
        .collect())
}

pub fn nc_bruteforce(l: &LinPoly, c: &Elem, opts: &EnumOptions) -> Result<u64> {
    let ctx = l.ctx();
    if !ctx.in_k(c) {
        return Err(Error::NotInSubfield(ctx.k_degree()));
    }
    let target = ctx.neg(c);
    let counts = QuadKernel::new(l).value_counts(opts)?;
    Ok(counts.into_iter().find(|(w, _)| *w == target).map(|(_, n)| n).unwrap_or(0))
}

/// Closed form of `N_c` for a `lambda`-Hermitian form, with `r = n - dim ker L`.
pub fn nc_hermitian(l: &LinPoly, c: &Elem) -> Result<BigInt> {
    let ctx = l.ctx();
    if !ctx.in_k(c) {
        return Err(Error::NotInSubfield(ctx.k_degree()));
    }
    let q = BigInt::from(ctx.q());
    let n = l.n();
    let lambda = match SesquiForm::new(l.clone()).hermitian_lambda() {
        Hermitian::None => return Err(Error::NotHermitian),
        Hermitian::Zero => {
            return Ok(if c.is_zero() { num_traits::pow(q, 2 * n) } else { BigInt::zero() });
        }
        Hermitian::Lambda(lambda) => lambda,
    };
    let r = n - l.kernel().0;
    let sign = |k: usize| if k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    let head = num_traits::pow(q.clone(), 2 * n - 1);
    let tail = |k: usize| -> BigRational { q_pow(&q, (2 * n) as i64 - r as i64 - 1) * BigRational::from_integer(sign(k)) };
    let value = if c.is_zero() {
        BigRational::from_integer(head) + tail(r) * BigRational::from_integer(&q - 1)
    } else if ctx.pow(c, ctx.q() as u128 - 1) == lambda {
        BigRational::from_integer(head) + tail(r + 1)
    } else {
        BigRational::zero()
    };
    integral(value, "Hermitian N_c")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub c: String,
    /// `N_c - q^{2(n-1)}`.
    pub deviation: i128,
    /// `(q^2 - 1) q^{n+2m-1}`.
    pub rhs: i128,
    pub equality: bool,
    /// `c = 0` and `dim ker(v L* + L) = 2m + 1` for every `v` in `U`.
    pub criterion: bool,
}

/// `(q^2 - 1) q^{n+2m-1}`.
pub fn bound_rhs(q: u64, n: usize, m: usize) -> i128 {
    let q = q as i128;
    (q * q - 1) * q.pow((n + 2 * m - 1) as u32)
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or_else(|| Error::Overflow(format!("{v} does not fit in i128")))
}

/// Checks `|N_c - q^{2(n-1)}| <= (q^2-1) q^{n+2m-1}` and the equality criterion.
pub fn bound_check(l: &LinPoly, m: usize, c: &Elem) -> Result<BoundReport> {
    let ctx = l.ctx();
    let n = l.n();
    match l.top_index() {
        Some(top) if top == m => {}
        found => {
            return Err(Error::DegreeMismatch { expected: m, found: found.unwrap_or(0) });
        }
    }
    let profile = r_profile(l);
    if let Some(bad) = profile.entries.iter().find(|(_, r)| n - r > 2 * m + 1) {
        return Err(Error::Internal(format!("dim ker(vL*+L) = {} exceeds 2m+1", n - bad.1)));
    }
    let nc = to_i128(&nc_from_profile(ctx, &profile, c)?)?;
    let q = ctx.q() as i128;
    let deviation = nc - q.pow(2 * (n as u32 - 1));
    let rhs = bound_rhs(ctx.q(), n, m);
    if deviation.abs() > rhs {
        return Err(Error::Internal(format!("bound violated: |{deviation}| > {rhs}")));
    }
    let equality = deviation.abs() == rhs;
    let criterion = c.is_zero() && profile.entries.iter().all(|(_, r)| n - r == 2 * m + 1);
    if equality != criterion {
        return Err(Error::Internal(format!(
            "equality ({equality}) disagrees with the kernel criterion ({criterion})"
        )));
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    if equality && deviation != sign * rhs {
        return Err(Error::Internal(format!("deviation {deviation} has the wrong sign")));
    }
    Ok(BoundReport { m, c: ctx.to_hex(c), deviation, rhs, equality, criterion })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub c: String,
    pub formula: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub m: usize,
    pub rhs: i128,
    pub equality_at_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub n: usize,
    #[serde(rename = "L")]
    pub l: String,
    pub table: Vec<CountRow>,
    pub total_formula: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_brute: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundSummary>,
}

/// Formula table for every `c`, optionally with brute-force counts, which must agree.
pub fn count_report(l: &LinPoly, brute: Option<&EnumOptions>) -> Result<CountReport> {
    let ctx = l.ctx();
    let formula = nc_table(l)?;
    let brute_table = brute.map(|o| nc_brute_table(l, o)).transpose()?;
    let mut table = Vec::with_capacity(formula.len());
    for (i, (c, f)) in formula.iter().enumerate() {
        let f = to_i128(f)?;
        let b = brute_table.as_ref().map(|t| t[i].1);
        if let Some(b) = b {
            if b as i128 != f {
                return Err(Error::Internal(format!(
                    "N_c mismatch at c = {}: formula {f}, enumeration {b}",
                    ctx.to_hex(c)
                )));
            }
        }
        table.push(CountRow { c: ctx.to_hex(c), formula: f, brute: b });
    }
    let total_formula: i128 = table.iter().map(|r| r.formula).sum();
    if total_formula != ctx.size() as i128 {
        return Err(Error::Internal(format!("counts sum to {total_formula}, not q^{{2n}}")));
    }
    let total_brute = brute_table.map(|t| t.iter().map(|(_, n)| n).sum());
    let bound = match l.top_index() {
        Some(m) => {
            let rep = bound_check(l, m, &ctx.zero())?;
            Some(BoundSummary { m, rhs: rep.rhs, equality_at_zero: rep.equality })
        }
        None => None,
    };
    Ok(CountReport { q: ctx.q(), n: l.n(), l: l.to_text(), table, total_formula, total_brute, bound })
}
