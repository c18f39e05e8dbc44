//! `q^2`-linearized polynomials `L(x) = sum a_i x^{q^{2i}}`, `0 <= i < n`.

use std::fmt;

use crate::basis::VectorBasis;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::matrix::FMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinPoly {
    ctx: FieldCtx,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinPoly[{}]", self.to_text())
    }
}

impl LinPoly {
    /// Coefficients `a_0, a_1, ...`; missing high coefficients are zero.
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<Elem>) -> Result<LinPoly> {
        let n = ctx.n();
        if coeffs.len() > n {
            return Err(Error::PolyDegree(format!("{} coefficients, at most {n} allowed", coeffs.len())));
        }
        if coeffs.iter().any(|a| !ctx.owns(a)) {
            return Err(Error::MixedContexts);
        }
        coeffs.resize(n, ctx.zero());
        Ok(LinPoly { ctx: ctx.clone(), coeffs })
    }

    pub fn zero(ctx: &FieldCtx) -> LinPoly {
        LinPoly { ctx: ctx.clone(), coeffs: vec![ctx.zero(); ctx.n()] }
    }

    /// `L(x) = x`
    pub fn identity(ctx: &FieldCtx) -> LinPoly {
        LinPoly::monomial(ctx, 0, ctx.one())
    }

    /// `a x^{q^{2i}}`, exponent index taken mod `n`.
    pub fn monomial(ctx: &FieldCtx, i: usize, a: Elem) -> LinPoly {
        let mut l = LinPoly::zero(ctx);
        l.coeffs[i % ctx.n()] = a;
        l
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Elem {
        &self.coeffs[i]
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    /// Largest `i` with `a_i != 0`.
    pub fn top_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|a| !a.is_zero())
    }

    pub fn eval(&self, v: &Elem) -> Elem {
        let ctx = &self.ctx;
        let mut acc = ctx.zero();
        let mut power = v.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = ctx.frob_q2(&power);
            }
            if !a.is_zero() {
                acc = ctx.add(&acc, &ctx.mul(a, &power));
            }
        }
        acc
    }

    pub fn try_eval(&self, v: &Elem) -> Result<Elem> {
        if !self.ctx.owns(v) {
            return Err(Error::MixedContexts);
        }
        Ok(self.eval(v))
    }

    /// The adjoint `L*`, normalized so that coefficient `n-1-i` is `a_i^{q^{2(n-1-i)+1}}`.
    pub fn adjoint(&self) -> LinPoly {
        let ctx = &self.ctx;
        let n = self.n();
        let e = ctx.e() as i64;
        let mut out = vec![ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            let j = n - 1 - i;
            out[j] = ctx.frobenius(a, e * (2 * j as i64 + 1));
        }
        LinPoly { ctx: ctx.clone(), coeffs: out }
    }

    fn same_ctx(&self, other: &LinPoly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    /// Coefficient-wise `s0 L0 + s1 L1`.
    pub fn combine(l0: &LinPoly, s0: &Elem, l1: &LinPoly, s1: &Elem) -> Result<LinPoly> {
        l0.same_ctx(l1)?;
        let ctx = &l0.ctx;
        if !ctx.owns(s0) || !ctx.owns(s1) {
            return Err(Error::MixedContexts);
        }
        let coeffs = l0
            .coeffs
            .iter()
            .zip(&l1.coeffs)
            .map(|(a, b)| ctx.add(&ctx.mul(s0, a), &ctx.mul(s1, b)))
            .collect();
        Ok(LinPoly { ctx: ctx.clone(), coeffs })
    }

    pub fn add(&self, other: &LinPoly) -> Result<LinPoly> {
        LinPoly::combine(self, &self.ctx.one(), other, &self.ctx.one())
    }

    pub fn sub(&self, other: &LinPoly) -> Result<LinPoly> {
        LinPoly::combine(self, &self.ctx.one(), other, &self.ctx.from_int(-1))
    }

    pub fn scale(&self, s: &Elem) -> LinPoly {
        let coeffs = self.coeffs.iter().map(|a| self.ctx.mul(s, a)).collect();
        LinPoly { ctx: self.ctx.clone(), coeffs }
    }

    /// `(A o B)(x) = A(B(x))`, exponents reduced mod `x^{q^{2n}} - x`.
    pub fn compose(&self, inner: &LinPoly) -> Result<LinPoly> {
        self.same_ctx(inner)?;
        let ctx = &self.ctx;
        let n = self.n();
        let mut out = vec![ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in inner.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = ctx.mul(a, &ctx.frob_q2_pow(b, i));
                let k = (i + j) % n;
                out[k] = ctx.add(&out[k], &t);
            }
        }
        Ok(LinPoly { ctx: ctx.clone(), coeffs: out })
    }

    /// Matrix over `F_{q^2}` whose column `j` holds the coordinates of `L(b_j)`.
    pub fn to_matrix(&self, basis: &VectorBasis) -> Result<FMatrix> {
        if basis.ctx() != &self.ctx {
            return Err(Error::MixedContexts);
        }
        let n = self.n();
        let cols: Vec<Vec<Elem>> = basis.vectors().iter().map(|b| basis.coords(&self.eval(b))).collect();
        FMatrix::from_fn(&self.ctx, self.ctx.k_degree(), n, n, |i, j| cols[j][i].clone())
    }

    /// `F_{q^2}`-dimension and a basis of `ker L`.
    pub fn kernel(&self) -> (usize, Vec<Elem>) {
        let basis = VectorBasis::standard(&self.ctx);
        let m = self.to_matrix(&basis).expect("standard basis");
        let vecs: Vec<Elem> = m.kernel().iter().map(|c| basis.combine(c)).collect();
        (vecs.len(), vecs)
    }

    /// A basis of `im L`.
    pub fn image(&self) -> Vec<Elem> {
        let basis = VectorBasis::standard(&self.ctx);
        let m = self.to_matrix(&basis).expect("standard basis");
        let (r, pivots) = m.transpose().rref();
        (0..pivots.len()).map(|i| basis.combine(&r.row(i))).collect()
    }

    pub fn rank(&self) -> usize {
        self.n() - self.kernel().0
    }

    /// Comma-separated hex coefficients, `a_0` first.
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|a| self.ctx.to_hex(a)).collect::<Vec<_>>().join(",")
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<LinPoly> {
        let coeffs = s.split(',').map(|t| ctx.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        LinPoly::new(ctx, coeffs)
    }

    /// Every polynomial over the ambient field, `a_0` varying fastest.
    pub fn enumerate_all(ctx: &FieldCtx) -> impl Iterator<Item = LinPoly> + '_ {
        let size = ctx.size();
        let n = ctx.n() as u32;
        let total = size.checked_pow(n).expect("enumeration size overflows");
        (0..total).map(move |mut idx| {
            let coeffs = (0..n)
                .map(|_| {
                    let a = ctx.from_index(idx % size);
                    idx /= size;
                    a
                })
                .collect();
            LinPoly { ctx: ctx.clone(), coeffs }
        })
    }
}

#[cfg(test)]
mod tests;
