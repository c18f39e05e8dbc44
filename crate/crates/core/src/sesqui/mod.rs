//! Sesquilinear forms `sigma_L(u, v) = Tr(u L(v^q))` of `F_{q^{2n}} / F_{q^2}`.

mod classify;
mod diag;
mod dim2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::VectorBasis;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linpoly::LinPoly;
use crate::matrix::FMatrix;

pub use classify::{classify, classify_matrix, classify_with, equivalent, reduce, FormClass, FormKind, Reduction};
pub use diag::{diagonalize, Diagonalization};
pub use dim2::{classify_dim2, Dim2Class};

/// Number of random triples used to spot-check a pairing oracle.
const SPOT_CHECKS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SesquiForm {
    l: LinPoly,
}

impl SesquiForm {
    pub fn new(l: LinPoly) -> SesquiForm {
        SesquiForm { l }
    }

    pub fn poly(&self) -> &LinPoly {
        &self.l
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.l.ctx()
    }

    pub fn n(&self) -> usize {
        self.l.n()
    }

    pub fn is_zero(&self) -> bool {
        self.l.is_zero()
    }

    pub fn eval(&self, u: &Elem, v: &Elem) -> Elem {
        let ctx = self.ctx();
        ctx.trace(&ctx.mul(u, &self.l.eval(&ctx.frob_q(v))))
    }

    pub fn try_eval(&self, u: &Elem, v: &Elem) -> Result<Elem> {
        let ctx = self.ctx();
        if !ctx.owns(u) || !ctx.owns(v) {
            return Err(Error::MixedContexts);
        }
        Ok(self.eval(u, v))
    }

    /// `sigma*`, represented by the adjoint polynomial.
    pub fn adjoint(&self) -> SesquiForm {
        SesquiForm { l: self.l.adjoint() }
    }

    /// Recovers the form from a pairing oracle with values in `F_{q^2}`.
    pub fn from_pairing(ctx: &FieldCtx, oracle: impl Fn(&Elem, &Elem) -> Elem) -> Result<SesquiForm> {
        let n = ctx.n();
        let basis = VectorBasis::standard(ctx);
        let betas = basis.vectors();
        let mut phi = Vec::with_capacity(n);
        for bi in betas {
            let mut acc = ctx.zero();
            for (bk, dk) in betas.iter().zip(basis.dual()) {
                let s = oracle(bk, bi);
                if !ctx.owns(&s) || !ctx.in_k(&s) {
                    return Err(Error::NotSesquilinear("oracle value outside F_{q^2}".into()));
                }
                acc = ctx.add(&acc, &ctx.mul(&s, dk));
            }
            phi.push(acc);
        }
        // L(b_i^q) = phi_i, with unknown coefficients a_k
        let e = ctx.e() as i64;
        let w = FMatrix::from_fn(ctx, ctx.degree(), n, n, |i, k| ctx.frobenius(&betas[i], e * (2 * k as i64 + 1)))?;
        let coeffs = w.inverse()?.apply(&phi);
        let form = SesquiForm::new(LinPoly::new(ctx, coeffs)?);

        let mut rng = ChaCha8Rng::seed_from_u64(0x5e5_0001);
        let size = ctx.size();
        let k = ctx.k_elements();
        for _ in 0..SPOT_CHECKS {
            let u = ctx.from_index(rng.gen_range(0..size));
            let u2 = ctx.from_index(rng.gen_range(0..size));
            let v = ctx.from_index(rng.gen_range(0..size));
            let c = &k[rng.gen_range(0..k.len())];
            let base = oracle(&u, &v);
            if oracle(&ctx.add(&u, &u2), &v) != ctx.add(&base, &oracle(&u2, &v)) {
                return Err(Error::NotSesquilinear("not additive in the first argument".into()));
            }
            if oracle(&ctx.mul(c, &u), &v) != ctx.mul(c, &base) {
                return Err(Error::NotSesquilinear("not linear in the first argument".into()));
            }
            if oracle(&u, &ctx.mul(c, &v)) != ctx.mul(&ctx.frob_q(c), &base) {
                return Err(Error::NotSesquilinear("not semilinear in the second argument".into()));
            }
            if form.eval(&u, &v) != base {
                return Err(Error::NotSesquilinear("oracle disagrees with its interpolation".into()));
            }
        }
        Ok(form)
    }

    /// Left and right radicals `(rad sigma, rad sigma*)`: the trace-orthogonal
    /// complement of `im L` and the preimage of `ker L` under `x -> x^q`.
    pub fn radicals(&self) -> (Subspace, Subspace) {
        let ctx = self.ctx();
        let basis = VectorBasis::standard(ctx);
        let image = self.l.image();
        let n = self.n();
        let left = if image.is_empty() {
            Subspace::whole(ctx)
        } else {
            let a = FMatrix::from_fn(ctx, ctx.k_degree(), image.len(), n, |t, j| {
                ctx.trace(&ctx.mul(&basis.vectors()[j], &image[t]))
            })
            .expect("trace values lie in F_{q^2}");
            Subspace::from_coords(ctx, &a.kernel())
        };
        let e = ctx.e() as i64;
        let right: Vec<Elem> = self.l.kernel().1.iter().map(|w| ctx.frobenius(w, -e)).collect();
        (left, Subspace::span(ctx, &right))
    }

    pub fn coeff_matrix(&self, frame: &BasisFrame) -> FMatrix {
        let ctx = self.ctx();
        let b = &frame.betas;
        FMatrix::from_fn(ctx, ctx.k_degree(), b.len(), b.len(), |i, j| self.eval(&b[i], &b[j]))
            .expect("form values lie in F_{q^2}")
    }

    /// `lambda` with `L* = lambda L`, if any.
    pub fn hermitian_lambda(&self) -> Hermitian {
        if self.is_zero() {
            return Hermitian::Zero;
        }
        let ctx = self.ctx();
        let adj = self.l.adjoint();
        let i = self.l.top_index().expect("nonzero");
        let lambda = ctx.div(adj.coeff(i), self.l.coeff(i)).expect("nonzero coefficient");
        if ctx.in_k(&lambda) && self.l.scale(&lambda) == adj {
            Hermitian::Lambda(lambda)
        } else {
            Hermitian::None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hermitian {
    /// The zero form is `lambda`-Hermitian for every `lambda`.
    Zero,
    Lambda(Elem),
    None,
}

/// `M_L` with `(i, j)` entry `a_{(j - i) mod n}^{q^{2i}}`.
pub fn build_ml(l: &LinPoly) -> FMatrix {
    let ctx = l.ctx();
    let n = l.n();
    FMatrix::from_fn(ctx, ctx.degree(), n, n, |i, j| ctx.frob_q2_pow(l.coeff((j + n - i) % n), i))
        .expect("ambient entries")
}

/// Cyclic permutation with ones at `(0, n-1)` and `(i, i-1)`.
pub fn perm_p(ctx: &FieldCtx, n: usize) -> FMatrix {
    FMatrix::from_fn(ctx, 1, n, n, |i, j| {
        if j == (i + n - 1) % n {
            ctx.one()
        } else {
            ctx.zero()
        }
    })
    .expect("prime-field entries")
}

/// A basis `b_1..b_n` with its matrix `B_{ij} = b_i^{q^{2j}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisFrame {
    betas: Vec<Elem>,
    b: FMatrix,
}

impl BasisFrame {
    pub fn new(ctx: &FieldCtx, betas: Vec<Elem>) -> Result<BasisFrame> {
        VectorBasis::new(ctx, betas.clone())?;
        let n = betas.len();
        let b = FMatrix::from_fn(ctx, ctx.degree(), n, n, |i, j| ctx.frob_q2_pow(&betas[i], j))?;
        Ok(BasisFrame { betas, b })
    }

    pub fn standard(ctx: &FieldCtx) -> BasisFrame {
        BasisFrame::new(ctx, VectorBasis::standard(ctx).vectors().to_vec()).expect("standard basis")
    }

    pub fn betas(&self) -> &[Elem] {
        &self.betas
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.b
    }

    /// The frame whose vectors have the given `F_{q^2}` coordinates (rows of `t`) in this one.
    pub fn transform(&self, t: &FMatrix) -> Result<BasisFrame> {
        let ctx = self.b.ctx();
        let basis = VectorBasis::new(ctx, self.betas.clone())?;
        let betas = t.row_vectors().iter().map(|r| basis.combine(r)).collect();
        BasisFrame::new(ctx, betas)
    }
}

/// An `F_{q^2}`-subspace held as reduced row-echelon coordinate rows
/// with respect to the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ctx: FieldCtx,
    rows: Vec<Vec<Elem>>,
}

impl Subspace {
    pub fn from_coords(ctx: &FieldCtx, vecs: &[Vec<Elem>]) -> Subspace {
        let n = ctx.n();
        if vecs.is_empty() {
            return Subspace { ctx: ctx.clone(), rows: Vec::new() };
        }
        let m = FMatrix::from_rows(ctx, ctx.k_degree(), vecs).expect("coordinates in F_{q^2}");
        assert_eq!(m.cols(), n, "coordinate length mismatch");
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { ctx: ctx.clone(), rows }
    }

    pub fn span(ctx: &FieldCtx, elems: &[Elem]) -> Subspace {
        let basis = VectorBasis::standard(ctx);
        let coords: Vec<Vec<Elem>> = elems.iter().map(|u| basis.coords(u)).collect();
        Subspace::from_coords(ctx, &coords)
    }

    pub fn whole(ctx: &FieldCtx) -> Subspace {
        let n = ctx.n();
        Subspace::from_coords(ctx, &FMatrix::identity(ctx, ctx.k_degree(), n).row_vectors())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn coord_rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn vectors(&self) -> Vec<Elem> {
        let basis = VectorBasis::standard(&self.ctx);
        self.rows.iter().map(|r| basis.combine(r)).collect()
    }

    pub fn contains(&self, u: &Elem) -> bool {
        let basis = VectorBasis::standard(&self.ctx);
        let mut rows = self.rows.clone();
        rows.push(basis.coords(u));
        Subspace::from_coords(&self.ctx, &rows).dim() == self.dim()
    }

    /// Rows spanning `{x : r . x = 0 for every row r}`.
    fn annihilator(&self) -> Vec<Vec<Elem>> {
        let n = self.ctx.n();
        if self.rows.is_empty() {
            return FMatrix::identity(&self.ctx, self.ctx.k_degree(), n).row_vectors();
        }
        FMatrix::from_rows(&self.ctx, self.ctx.k_degree(), &self.rows).unwrap().kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let constraints = [self.annihilator(), other.annihilator()].concat();
        if constraints.is_empty() {
            return Subspace::whole(&self.ctx);
        }
        let m = FMatrix::from_rows(&self.ctx, self.ctx.k_degree(), &constraints).unwrap();
        Subspace::from_coords(&self.ctx, &m.kernel())
    }
}
