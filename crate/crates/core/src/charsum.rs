//! Exact additive character sums with values in `Z[zeta_p]`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::kernel::{EnumOptions, QuadKernel};
use crate::linpoly::LinPoly;
use crate::sesqui::SesquiForm;

/// Element `sum_i c_i zeta_p^i` of `Z[zeta_p]`, kept with `c_{p-1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloInt {
    p: u32,
    coords: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(p: u32) -> CycloInt {
        CycloInt { p, coords: vec![BigInt::zero(); p as usize] }
    }

    pub fn from_int(p: u32, v: impl Into<BigInt>) -> CycloInt {
        let mut z = CycloInt::zero(p);
        z.coords[0] = v.into();
        z.canonicalize();
        z
    }

    /// `zeta_p^k`.
    pub fn zeta_pow(p: u32, k: u64) -> CycloInt {
        let mut z = CycloInt::zero(p);
        z.coords[(k % p as u64) as usize] = BigInt::one();
        z.canonicalize();
        z
    }

    /// `sum_k counts[k] zeta_p^k`.
    pub fn from_counts(p: u32, counts: &[u64]) -> CycloInt {
        let mut z = CycloInt::zero(p);
        for (k, &c) in counts.iter().enumerate() {
            z.coords[k % p as usize] += c;
        }
        z.canonicalize();
        z
    }

    fn canonicalize(&mut self) {
        let top = self.coords[self.p as usize - 1].clone();
        if !top.is_zero() {
            for c in &mut self.coords {
                *c -= &top;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_integer(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.coords[0].clone())
    }

    pub fn add(&self, other: &CycloInt) -> CycloInt {
        assert_eq!(self.p, other.p);
        let mut z = CycloInt {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        };
        z.canonicalize();
        z
    }

    pub fn mul(&self, other: &CycloInt) -> CycloInt {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let mut z = CycloInt::zero(self.p);
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coords.iter().enumerate() {
                z.coords[(i + j) % p] += a * b;
            }
        }
        z.canonicalize();
        z
    }
}

fn k_trace_to_fp(ctx: &FieldCtx, w: &Elem, from: usize) -> Result<u64> {
    Ok(ctx.rel_trace(w, from, 1)?.coords()[0] as u64)
}

/// `psi(w) = zeta_p^{Tr_{F_q/F_p}(w)}` for `w` in `F_q`.
pub fn psi(ctx: &FieldCtx, w: &Elem) -> Result<CycloInt> {
    Ok(CycloInt::zeta_pow(ctx.p() as u32, k_trace_to_fp(ctx, w, ctx.e() as usize)?))
}

/// `chi(t) = zeta_p^{Tr_{F_{q^2}/F_p}(t)}` for `t` in `F_{q^2}`.
pub fn chi(ctx: &FieldCtx, t: &Elem) -> Result<CycloInt> {
    Ok(CycloInt::zeta_pow(ctx.p() as u32, k_trace_to_fp(ctx, t, ctx.k_degree())?))
}

/// `rho_L(u) = sigma_L(u, u)^q + sigma_L(u, u)`, an element of `F_q`.
pub fn rho_eval(l: &LinPoly, u: &Elem) -> Elem {
    let ctx = l.ctx();
    let s = SesquiForm::new(l.clone()).eval(u, u);
    ctx.add(&ctx.frob_q(&s), &s)
}

/// `sum_u psi(rho_L(u))` over the whole field, by field arithmetic.
pub fn s_sum_psi(l: &LinPoly, opts: &EnumOptions) -> Result<CycloInt> {
    let ctx = l.ctx();
    opts.check(ctx)?;
    let p = ctx.p();
    let e = ctx.e() as usize;
    let size = ctx.size();
    let parts = (opts.workers.max(1) as u64 * 4).min(size);
    let step = size.div_ceil(parts);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let partials: Vec<Result<Vec<u64>>> = pool.install(|| {
        (0..parts)
            .into_par_iter()
            .map(|i| {
                let mut counts = vec![0u64; p as usize];
                for idx in i * step..((i + 1) * step).min(size) {
                    let r = rho_eval(l, &ctx.from_index(idx));
                    counts[k_trace_to_fp(ctx, &r, e)? as usize] += 1;
                }
                Ok(counts)
            })
            .collect()
    });
    let mut total = CycloInt::zero(p as u32);
    for part in partials {
        total = total.add(&CycloInt::from_counts(p as u32, &part?));
    }
    Ok(total)
}

/// `sum_u chi(sigma_L(u, u))`, from the value histogram of `sigma_L(u, u)`.
pub fn s_sum_chi(l: &LinPoly, opts: &EnumOptions) -> Result<CycloInt> {
    let ctx = l.ctx();
    let p = ctx.p() as u32;
    let mut total = CycloInt::zero(p);
    for (w, count) in QuadKernel::new(l).value_counts(opts)? {
        let term = chi(ctx, &w)?.mul(&CycloInt::from_int(p, count));
        total = total.add(&term);
    }
    Ok(total)
}

/// `S(L)` by enumeration; both character-sum expressions must agree and be rational.
pub fn s_bruteforce(l: &LinPoly, opts: &EnumOptions) -> Result<BigInt> {
    let a = s_sum_psi(l, opts)?;
    let b = s_sum_chi(l, opts)?;
    if a != b {
        return Err(Error::Internal(format!("character sums disagree: {a:?} vs {b:?}")));
    }
    a.as_integer()
        .ok_or_else(|| Error::Internal(format!("character sum is not an integer: {a:?}")))
}

/// `n - dim ker(L* + L)`.
pub fn s_rank(l: &LinPoly) -> usize {
    let sym = l.adjoint().add(l).expect("same context");
    l.n() - sym.kernel().0
}

/// `S(L) = (-1)^r q^{2n-r}`.
pub fn s_formula(l: &LinPoly) -> BigInt {
    let r = s_rank(l);
    let q = BigInt::from(l.ctx().q());
    let mag = num_traits::pow(q, 2 * l.n() - r);
    if r % 2 == 1 { -mag } else { mag }
}

/// Sign-magnitude text of an integer-valued sum, used in reports.
pub fn describe(v: &BigInt) -> String {
    if v.is_negative() { format!("-{}", v.abs()) } else { v.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sesqui::{Hermitian, SesquiForm};
    use proptest::prelude::*;

    fn ctx(p: u64, e: u32, n: u32) -> FieldCtx {
        FieldCtx::build(p, e, n, None).unwrap()
    }

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn cyclo_canonical_form() {
        let one = CycloInt::from_int(3, 1);
        let sum = CycloInt::from_counts(3, &[1, 1, 1]);
        assert_eq!(sum, CycloInt::zero(3));
        assert!(one.is_integer());
        let z = CycloInt::zeta_pow(3, 2);
        assert_eq!(z.coords(), &[BigInt::from(-1), BigInt::from(-1), BigInt::zero()]);
        assert_eq!(z.mul(&CycloInt::zeta_pow(3, 1)), one);
        assert_eq!(CycloInt::zeta_pow(2, 1), CycloInt::from_int(2, -1));
    }

    #[test]
    fn psi_of_zero_is_one() {
        for (p, e) in [(2, 1), (3, 2), (5, 1)] {
            let c = ctx(p, e, 1);
            assert_eq!(psi(&c, &c.zero()).unwrap(), CycloInt::from_int(p as u32, 1));
        }
    }

    #[test]
    fn full_character_sums_vanish() {
        for (p, e, n) in [(2, 1, 2), (3, 1, 1), (2, 2, 1), (5, 1, 1), (3, 2, 1)] {
            let c = ctx(p, e, n);
            let p32 = p as u32;
            let s_psi = c
                .subfield_elements(e as usize)
                .iter()
                .fold(CycloInt::zero(p32), |acc, w| acc.add(&psi(&c, w).unwrap()));
            assert_eq!(s_psi, CycloInt::zero(p32));
            let s_chi = c
                .k_elements()
                .iter()
                .fold(CycloInt::zero(p32), |acc, w| acc.add(&chi(&c, w).unwrap()));
            assert_eq!(s_chi, CycloInt::zero(p32));
        }
    }

    #[test]
    fn norm_character_sum_is_minus_q() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
            let c = ctx(p, e, 1);
            let q = c.q() as u128;
            let total = c
                .k_elements()
                .iter()
                .fold(CycloInt::zero(p as u32), |acc, t| acc.add(&psi(&c, &c.pow(t, q + 1)).unwrap()));
            assert_eq!(total.as_integer(), Some(BigInt::from(-(c.q() as i64))), "q = {}", c.q());
        }
    }

    #[test]
    fn characters_are_additive_and_reject_outsiders() {
        let c = ctx(3, 1, 2);
        let fq = c.subfield_elements(1);
        for a in &fq {
            for b in &fq {
                assert_eq!(psi(&c, &c.add(a, b)).unwrap(), psi(&c, a).unwrap().mul(&psi(&c, b).unwrap()));
            }
        }
        let g = c.generator();
        assert!(matches!(psi(&c, &g), Err(Error::NotInSubfield(_))));
        assert!(matches!(chi(&c, &g), Err(Error::NotInSubfield(_))));
    }

    #[test]
    fn rho_is_quadratic_over_fq() {
        let c = ctx(3, 1, 1);
        let fq = c.subfield_elements(1);
        for l in LinPoly::enumerate_all(&c) {
            assert!(rho_eval(&l, &c.zero()).is_zero());
            for u in c.elements() {
                let r = rho_eval(&l, &u);
                assert!(c.in_subfield(&r, 1));
                for a in &fq {
                    let lhs = rho_eval(&l, &c.mul(a, &u));
                    assert_eq!(lhs, c.mul(&c.mul(a, a), &r));
                }
            }
        }
        let zero = LinPoly::zero(&ctx(2, 1, 2));
        for u in zero.ctx().elements() {
            assert!(rho_eval(&zero, &u).is_zero());
        }
    }

    #[test]
    fn zero_form_sums_to_field_size() {
        for (p, e, n) in [(2, 1, 2), (3, 1, 1), (2, 1, 3)] {
            let c = ctx(p, e, n);
            let z = LinPoly::zero(&c);
            assert_eq!(s_bruteforce(&z, &opts()).unwrap(), BigInt::from(c.size()));
            assert_eq!(s_formula(&z), BigInt::from(c.size()));
        }
    }

    #[test]
    fn brute_force_equals_formula_exhaustively() {
        for (p, e, n) in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (2, 2, 1), (5, 1, 1)] {
            let c = ctx(p, e, n);
            for l in LinPoly::enumerate_all(&c) {
                let s = s_bruteforce(&l, &opts()).unwrap();
                assert_eq!(s, s_formula(&l), "L = {l:?}");
                assert!(!s.is_zero());
            }
        }
    }

    #[test]
    fn brute_force_equals_formula_sampled_q2_n3() {
        let c = ctx(2, 1, 3);
        for (i, l) in LinPoly::enumerate_all(&c).enumerate() {
            if i % 97 != 0 {
                continue;
            }
            assert_eq!(s_bruteforce(&l, &opts()).unwrap(), s_formula(&l), "L = {l:?}");
        }
    }

    #[test]
    fn equal_rank_gives_equal_sums() {
        let c = ctx(2, 1, 2);
        let mut by_rank: std::collections::HashMap<usize, BigInt> = Default::default();
        for l in LinPoly::enumerate_all(&c) {
            let s = s_sum_psi(&l, &opts()).unwrap().as_integer().unwrap();
            let prev = by_rank.entry(s_rank(&l)).or_insert_with(|| s.clone());
            assert_eq!(*prev, s);
        }
        assert_eq!(by_rank.len(), 3);
    }

    #[test]
    fn invertible_hermitian_sums() {
        for (p, n) in [(2, 2), (3, 1), (3, 2)] {
            let c = ctx(p, 1, n);
            let minus_one = c.neg(&c.one());
            let expected = num_traits::pow(BigInt::from(-(p as i64)), n as usize);
            let mut seen = 0;
            for (i, l) in LinPoly::enumerate_all(&c).enumerate() {
                if n == 2 && p == 3 && i % 7 != 0 {
                    continue;
                }
                let Hermitian::Lambda(lambda) = SesquiForm::new(l.clone()).hermitian_lambda() else {
                    continue;
                };
                if lambda == minus_one || l.kernel().0 != 0 {
                    continue;
                }
                seen += 1;
                assert_eq!(s_bruteforce(&l, &opts()).unwrap(), expected, "L = {l:?}");
            }
            assert!(seen > 0, "no samples at p = {p}, n = {n}");
        }
    }

    #[test]
    fn cap_applies_to_brute_force() {
        let c = ctx(2, 1, 3);
        let small = EnumOptions { cap: 32, workers: 1 };
        assert!(matches!(
            s_bruteforce(&LinPoly::identity(&c), &small),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn sums_are_nonzero_integers(idx in proptest::collection::vec(0u64..81, 2)) {
            let c = ctx(3, 1, 2);
            let l = LinPoly::new(&c, idx.iter().map(|&i| c.from_index(i)).collect()).unwrap();
            let w = EnumOptions { workers: 3, ..EnumOptions::default() };
            let s = s_bruteforce(&l, &w).unwrap();
            prop_assert!(!s.is_zero());
            prop_assert_eq!(s, s_formula(&l));
        }
    }
}
