//! Diagonal coefficient matrices, with an explicit certifying frame.

use super::classify::reduce;
use super::{BasisFrame, SesquiForm};
use crate::basis::VectorBasis;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::matrix::FMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    /// Nonzero diagonal entries `d_1..d_r`.
    pub entries: Vec<Elem>,
    /// Frame whose coefficient matrix is `diag(d_1, .., d_r, 0, .., 0)`.
    pub frame: BasisFrame,
}

fn pair(ctx: &FieldCtx, c: &FMatrix, x: &[Elem], y: &[Elem]) -> Elem {
    let yq: Vec<Elem> = y.iter().map(|t| ctx.frob_q(t)).collect();
    let cy = c.apply(&yq);
    x.iter().zip(&cy).fold(ctx.zero(), |acc, (a, b)| ctx.add(&acc, &ctx.mul(a, b)))
}

fn lin_comb(ctx: &FieldCtx, coeffs: &[Elem], vecs: &[Vec<Elem>]) -> Vec<Elem> {
    let len = vecs[0].len();
    (0..len)
        .map(|j| {
            coeffs
                .iter()
                .zip(vecs)
                .fold(ctx.zero(), |acc, (c, v)| ctx.add(&acc, &ctx.mul(c, &v[j])))
        })
        .collect()
}

/// Orthogonal basis of a subspace on which the form is `mu`-Hermitian and nondegenerate.
fn orthogonalize(ctx: &FieldCtx, c: &FMatrix, mut vecs: Vec<Vec<Elem>>) -> Result<Vec<(Vec<Elem>, Elem)>> {
    let k_elems = ctx.k_elements();
    let mut out = Vec::new();
    while !vecs.is_empty() {
        let mut found = vecs.iter().find(|v| !pair(ctx, c, v, v).is_zero()).cloned();
        if found.is_none() {
            'outer: for i in 0..vecs.len() {
                for j in i + 1..vecs.len() {
                    for s in &k_elems {
                        let w: Vec<Elem> =
                            vecs[i].iter().zip(&vecs[j]).map(|(x, y)| ctx.add(x, &ctx.mul(s, y))).collect();
                        if !pair(ctx, c, &w, &w).is_zero() {
                            found = Some(w);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let v = found.ok_or_else(|| Error::Internal("degenerate eigenspace".into()))?;
        let t = pair(ctx, c, &v, &v);
        let functional: Vec<Elem> = vecs.iter().map(|w| pair(ctx, c, w, &v)).collect();
        let f = FMatrix::from_rows(ctx, ctx.k_degree(), &[functional])?;
        vecs = f.kernel().iter().map(|x| lin_comb(ctx, x, &vecs)).collect();
        out.push((v, t));
    }
    Ok(out)
}

/// Diagonal coefficient matrix when `rad sigma = rad sigma*` and `C* C^{-1}` of the
/// reduced part is diagonalizable with eigenvalues in the norm-one group.
pub fn diagonalize(form: &SesquiForm) -> Result<Option<Diagonalization>> {
    let ctx = form.ctx();
    let n = form.n();
    let basis = VectorBasis::standard(ctx);
    let c = form.coeff_matrix(&BasisFrame::standard(ctx));
    let red = reduce(&c);
    if red.left != red.right {
        return Ok(None);
    }
    let k = n - red.meet_dim();
    let cred = &red.reduced;
    let inv = cred
        .inverse()
        .map_err(|_| Error::Internal("reduced part singular although the radicals agree".into()))?;
    let psi = (&cred.star() * &inv).transpose();
    let units = ctx.unit_circle();
    let mut spaces = Vec::new();
    let mut total = 0;
    for mu in &units {
        let shifted = psi.sub(&FMatrix::identity(ctx, ctx.k_degree(), k).scale(mu))?;
        let space = shifted.kernel();
        total += space.len();
        if !space.is_empty() {
            spaces.push((mu.clone(), space));
        }
    }
    if total != k {
        return Ok(None);
    }

    let q = ctx.q() as u128;
    let mut k_sorted = ctx.k_elements();
    k_sorted.sort();
    let mut entries = Vec::with_capacity(k);
    let mut coords: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for (mu, space) in spaces {
        let d = k_sorted
            .iter()
            .find(|d| !d.is_zero() && ctx.pow(d, q - 1) == mu)
            .cloned()
            .ok_or_else(|| Error::Internal("no solution of d^{q-1} = mu".into()))?;
        for (v, t) in orthogonalize(ctx, cred, space)? {
            let ratio = ctx.div(&d, &t)?;
            let s = k_sorted
                .iter()
                .find(|s| !s.is_zero() && ctx.pow(s, q + 1) == ratio)
                .ok_or_else(|| Error::Internal("norm equation without solution".into()))?;
            let scaled: Vec<Elem> = v.iter().map(|x| ctx.mul(s, x)).collect();
            let rows: Vec<Vec<Elem>> = (0..k).map(|i| red.transform.row(i)).collect();
            coords.push(lin_comb(ctx, &scaled, &rows));
            entries.push(d.clone());
        }
    }
    coords.extend((k..n).map(|i| red.transform.row(i)));
    let frame = BasisFrame::new(ctx, coords.iter().map(|r| basis.combine(r)).collect())?;

    let mut expected = entries.clone();
    expected.resize(n, ctx.zero());
    if form.coeff_matrix(&frame) != FMatrix::diagonal(ctx, ctx.k_degree(), &expected)? {
        return Err(Error::Internal("diagonalizing frame failed certification".into()));
    }
    Ok(Some(Diagonalization { entries, frame }))
}
