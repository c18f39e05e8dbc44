//! `F_{q^2}`-bases of the ambient field and coordinates with respect to them.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::matrix::FMatrix;

/// An `F_{q^2}`-basis `b_0..b_{n-1}` together with its trace-dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorBasis {
    ctx: FieldCtx,
    vectors: Vec<Elem>,
    dual: Vec<Elem>,
}

impl VectorBasis {
    /// Accepts `n` vectors iff their trace Gram matrix `Tr(b_i b_j)` is nonsingular.
    pub fn new(ctx: &FieldCtx, vectors: Vec<Elem>) -> Result<VectorBasis> {
        let n = ctx.n();
        if vectors.len() != n {
            return Err(Error::ShapeMismatch(format!("{} vectors for a basis of dimension {n}", vectors.len())));
        }
        if vectors.iter().any(|v| !ctx.owns(v)) {
            return Err(Error::MixedContexts);
        }
        let k = ctx.k_degree();
        let gram = FMatrix::from_fn(ctx, k, n, n, |i, j| ctx.trace(&ctx.mul(&vectors[i], &vectors[j])))?;
        let ginv = gram.inverse().map_err(|_| Error::DependentBasis)?;
        let dual = (0..n)
            .map(|j| {
                (0..n).fold(ctx.zero(), |acc, k| ctx.add(&acc, &ctx.mul(ginv.get(k, j), &vectors[k])))
            })
            .collect();
        Ok(VectorBasis { ctx: ctx.clone(), vectors, dual })
    }

    /// The power basis `1, g, ..., g^{n-1}` of the field generator.
    pub fn standard(ctx: &FieldCtx) -> VectorBasis {
        let g = ctx.generator();
        let mut v = Vec::with_capacity(ctx.n());
        let mut cur = ctx.one();
        for _ in 0..ctx.n() {
            v.push(cur.clone());
            cur = ctx.mul(&cur, &g);
        }
        VectorBasis::new(ctx, v).expect("generator powers form a basis")
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn vectors(&self) -> &[Elem] {
        &self.vectors
    }

    pub fn dual(&self) -> &[Elem] {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates `c_j = Tr(b_j^dual u)` so that `u = sum c_j b_j`.
    pub fn coords(&self, u: &Elem) -> Vec<Elem> {
        self.dual.iter().map(|d| self.ctx.trace(&self.ctx.mul(d, u))).collect()
    }

    pub fn combine(&self, coords: &[Elem]) -> Elem {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let ctx = &self.ctx;
        coords
            .iter()
            .zip(&self.vectors)
            .fold(ctx.zero(), |acc, (c, b)| ctx.add(&acc, &ctx.mul(c, b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        for (p, e, n) in [(2, 1, 2), (2, 1, 3), (3, 1, 2)] {
            let ctx = FieldCtx::build(p, e, n, None).unwrap();
            let b = VectorBasis::standard(&ctx);
            for u in ctx.elements().step_by(7) {
                let c = b.coords(&u);
                assert!(c.iter().all(|x| ctx.in_k(x)));
                assert_eq!(b.combine(&c), u);
            }
            for (i, v) in b.vectors().iter().enumerate() {
                let c = b.coords(v);
                for (j, x) in c.iter().enumerate() {
                    assert_eq!(*x, if i == j { ctx.one() } else { ctx.zero() });
                }
            }
        }
    }

    #[test]
    fn dependent_vectors_rejected() {
        let ctx = FieldCtx::build(2, 1, 2, None).unwrap();
        let k = ctx.k_elements();
        // two elements of F_4 are F_4-dependent
        let err = VectorBasis::new(&ctx, vec![ctx.one(), k[2].clone()]).unwrap_err();
        assert_eq!(err, Error::DependentBasis);
        assert!(matches!(VectorBasis::new(&ctx, vec![ctx.one()]), Err(Error::ShapeMismatch(_))));
    }
}
