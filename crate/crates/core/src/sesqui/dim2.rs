//! Closed-form classification for `n = 2`, `L = a x^{q^2} + b x`.

use super::classify::{FormClass, FormKind};
use super::SesquiForm;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::matrix::FMatrix;

/// Canonical descriptor of a nonzero form at `n = 2`.
///
/// The first four variants describe the conjugacy class of `C* C^{-1}` when
/// `N(a) != N(b)`; the last two cover `N(a) = N(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dim2Class {
    /// Distinct eigenvalues; the class is fixed by trace and determinant.
    Semisimple { trace: Elem, det: Elem },
    /// `C* C^{-1}` is the scalar `a^q b^{-1}`.
    Scalar(Elem),
    /// Nontrivial Jordan block with eigenvalue `(alpha - alpha^q) / 2 beta`, `q` odd.
    JordanOdd(Elem),
    /// Nontrivial Jordan block with eigenvalue `sqrt(beta^{q-1})`, `q` even.
    JordanEven(Elem),
    /// One-dimensional reduced part keyed by `a^q b^{-1}`.
    HermitianLine(Elem),
    /// The single class with coefficient matrix `[[0,0],[1,0]]`.
    SingularPair,
}

impl Dim2Class {
    pub fn label(&self) -> &'static str {
        match self {
            Dim2Class::Semisimple { .. } => "semisimple",
            Dim2Class::Scalar(_) => "scalar",
            Dim2Class::JordanOdd(_) => "jordan-odd",
            Dim2Class::JordanEven(_) => "jordan-even",
            Dim2Class::HermitianLine(_) => "hermitian-line",
            Dim2Class::SingularPair => "singular-pair",
        }
    }

    /// Representative matrix: of `C* C^{-1}` for the nonsingular cases,
    /// the reduced `1 x 1` conjugacy class for `HermitianLine`, and the
    /// coefficient matrix itself for `SingularPair`.
    pub fn canonical_matrix(&self, ctx: &FieldCtx) -> FMatrix {
        let k = ctx.k_degree();
        let z = ctx.zero();
        let o = ctx.one();
        let m = match self {
            Dim2Class::Semisimple { trace, det } => {
                FMatrix::from_rows(ctx, k, &[vec![z.clone(), ctx.neg(det)], vec![o, trace.clone()]])
            }
            Dim2Class::Scalar(c) => FMatrix::diagonal(ctx, k, &[c.clone(), c.clone()]),
            Dim2Class::JordanOdd(c) | Dim2Class::JordanEven(c) => {
                FMatrix::from_rows(ctx, k, &[vec![c.clone(), z], vec![o, c.clone()]])
            }
            Dim2Class::HermitianLine(key) => FMatrix::diagonal(ctx, k, &[key.clone()]),
            Dim2Class::SingularPair => FMatrix::from_rows(ctx, k, &[vec![z.clone(), z.clone()], vec![o, z]]),
        };
        m.expect("canonical entries lie in F_{q^2}")
    }

    /// The general classifier's output predicted by this descriptor.
    pub fn expected_class(&self, ctx: &FieldCtx) -> Result<FormClass> {
        let m = self.canonical_matrix(ctx);
        let base = FormClass {
            n: 2,
            rad_meet_dim: 0,
            kind: FormKind::Nonsingular,
            invariant_factors: None,
            canonical_matrix: None,
        };
        Ok(match self {
            Dim2Class::SingularPair => FormClass {
                kind: FormKind::SingularReduced,
                canonical_matrix: Some(m.to_text()),
                ..base
            },
            Dim2Class::HermitianLine(_) => FormClass {
                rad_meet_dim: 1,
                invariant_factors: Some(m.invariant_factors()?.to_hex()),
                ..base
            },
            _ => FormClass { invariant_factors: Some(m.invariant_factors()?.to_hex()), ..base },
        })
    }
}

pub fn classify_dim2(form: &SesquiForm) -> Result<Dim2Class> {
    if form.n() != 2 {
        return Err(Error::InvalidParameters(format!("n = 2 required, got n = {}", form.n())));
    }
    if form.is_zero() {
        return Err(Error::InvalidParameters("the zero form has no n = 2 descriptor".into()));
    }
    let ctx = form.ctx();
    let e = ctx.e() as i64;
    let fq = |x: &Elem, j: i64| ctx.frobenius(x, e * j);
    let (d, k) = (ctx.degree(), ctx.k_degree());
    let b = form.poly().coeff(0).clone();
    let a = form.poly().coeff(1).clone();
    let na = ctx.rel_norm(&a, d, k)?;
    let nb = ctx.rel_norm(&b, d, k)?;
    // a^{q+1} = b^{q^3+1}
    let hermitian = ctx.mul(&fq(&a, 1), &a) == ctx.mul(&fq(&b, 3), &b);
    if na == nb {
        return Ok(if hermitian {
            Dim2Class::HermitianLine(ctx.div(&fq(&a, 1), &b)?)
        } else {
            Dim2Class::SingularPair
        });
    }
    let alpha = ctx.rel_trace(&ctx.mul(&a, &fq(&b, 1)), d, k)?;
    let beta = ctx.sub(&na, &nb);
    let q = ctx.q() as u128;
    let trace = ctx.div(&ctx.sub(&alpha, &fq(&alpha, 1)), &beta)?;
    let beta_q1 = ctx.pow(&beta, q - 1);
    let det = ctx.neg(&beta_q1);
    let disc = ctx.add(&ctx.mul(&trace, &trace), &ctx.mul_int(&beta_q1, 4));
    if !disc.is_zero() {
        return Ok(Dim2Class::Semisimple { trace, det });
    }
    if hermitian {
        return Ok(Dim2Class::Scalar(ctx.div(&fq(&a, 1), &b)?));
    }
    Ok(if ctx.p() == 2 {
        Dim2Class::JordanEven(ctx.frobenius(&beta_q1, -1))
    } else {
        Dim2Class::JordanOdd(ctx.div(&trace, &ctx.from_int(2))?)
    })
}
