//! Univariate polynomials with coefficients in the ambient field.

use std::fmt;

use crate::field::{Elem, FieldCtx};

/// Dense polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct FPoly {
    ctx: FieldCtx,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex: Vec<String> = self.coeffs.iter().map(|c| self.ctx.to_hex(c)).collect();
        write!(f, "FPoly[{}]", hex.join(","))
    }
}

impl FPoly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<Elem>) -> FPoly {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        FPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &FieldCtx) -> FPoly {
        FPoly::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> FPoly {
        FPoly::new(ctx, vec![c])
    }

    pub fn one(ctx: &FieldCtx) -> FPoly {
        FPoly::constant(ctx, ctx.one())
    }

    /// `x - c`
    pub fn linear(ctx: &FieldCtx, c: &Elem) -> FPoly {
        FPoly::new(ctx, vec![ctx.neg(c), ctx.one()])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &FPoly) -> FPoly {
        let ctx = &self.ctx;
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = ctx.zero();
        let out = (0..len)
            .map(|i| {
                ctx.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        FPoly::new(ctx, out)
    }

    pub fn sub(&self, other: &FPoly) -> FPoly {
        self.add(&other.scale(&self.ctx.from_int(-1)))
    }

    pub fn scale(&self, c: &Elem) -> FPoly {
        let out = self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect();
        FPoly::new(&self.ctx, out)
    }

    pub fn mul(&self, other: &FPoly) -> FPoly {
        let ctx = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return FPoly::zero(ctx);
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        FPoly::new(ctx, out)
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &FPoly) -> (FPoly, FPoly) {
        let ctx = &self.ctx;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = ctx.inv(divisor.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FPoly::zero(ctx), self.clone());
        }
        let mut quot = vec![ctx.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let coef = ctx.mul(&rem[top], &lead_inv);
            if coef.is_zero() {
                continue;
            }
            let shift = top - dd;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = ctx.sub(&rem[shift + i], &ctx.mul(&coef, d));
            }
            quot[shift] = coef;
        }
        rem.truncate(dd);
        (FPoly::new(ctx, quot), FPoly::new(ctx, rem))
    }

    pub fn monic(&self) -> FPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.ctx.inv(l).unwrap()),
        }
    }

    pub fn gcd(&self, other: &FPoly) -> FPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let ctx = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
    }

    pub fn pow(&self, k: u32) -> FPoly {
        let mut acc = FPoly::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficients as hex element strings, constant term first.
    pub fn to_hex(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.ctx.to_hex(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let ctx = FieldCtx::build(3, 1, 1, None).unwrap();
        let elems: Vec<Elem> = ctx.elements().collect();
        let a = FPoly::new(&ctx, vec![elems[1].clone(), elems[4].clone(), elems[7].clone(), elems[2].clone()]);
        let b = FPoly::new(&ctx, vec![elems[5].clone(), elems[3].clone()]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_shared_roots() {
        let ctx = FieldCtx::build(2, 1, 2, None).unwrap();
        let g = ctx.generator();
        let r1 = FPoly::linear(&ctx, &g);
        let r2 = FPoly::linear(&ctx, &ctx.one());
        let r3 = FPoly::linear(&ctx, &ctx.mul(&g, &g));
        let a = r1.mul(&r2);
        let b = r1.mul(&r3);
        assert_eq!(a.gcd(&b), r1);
        assert!(a.eval(&g).is_zero());
    }
}
