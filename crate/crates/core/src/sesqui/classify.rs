//! Equivalence classes: split off `rad sigma ∩ rad sigma*`, then compare the
//! conjugacy class of `C* C^{-1}` of the reduced part.

use serde::Serialize;

use super::{BasisFrame, SesquiForm, Subspace};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::{congruence_orbit_min, general_linear_group, BruteCaps, FMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    Nonsingular,
    SingularReduced,
}

/// Equivalence class descriptor. Polynomials and matrices are rendered in hex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FormClass {
    pub n: usize,
    pub rad_meet_dim: usize,
    pub kind: FormKind,
    pub invariant_factors: Option<Vec<Vec<String>>>,
    pub canonical_matrix: Option<String>,
}

impl FormClass {
    /// Order of the reduced part.
    pub fn order(&self) -> usize {
        self.n - self.rad_meet_dim
    }
}

/// A coefficient matrix rewritten in a basis adapted to `W0 = rad sigma ∩ rad sigma*`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub left: Subspace,
    pub right: Subspace,
    pub meet: Subspace,
    /// Rows are coordinates of the new basis: complement first, then `W0`.
    pub transform: FMatrix,
    /// Leading block of `T C T*`, a coefficient matrix of the reduced form.
    pub reduced: FMatrix,
}

impl Reduction {
    pub fn meet_dim(&self) -> usize {
        self.meet.dim()
    }
}

/// Reduction of a coefficient matrix `C` (with `sigma(u, v) = u^T C v^q` in coordinates).
pub fn reduce(c: &FMatrix) -> Reduction {
    let ctx = c.ctx();
    let n = c.rows();
    let left = Subspace::from_coords(ctx, &c.left_kernel());
    let right_vecs: Vec<Vec<Elem>> = c
        .kernel()
        .iter()
        .map(|v| v.iter().map(|x| ctx.frob_q(x)).collect())
        .collect();
    let right = Subspace::from_coords(ctx, &right_vecs);
    let meet = left.intersect(&right);

    let mut pivots = Vec::new();
    for row in meet.coord_rows() {
        pivots.push(row.iter().position(|x| !x.is_zero()).expect("nonzero echelon row"));
    }
    let mut rows: Vec<Vec<Elem>> = (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|j| (0..n).map(|i| if i == j { ctx.one() } else { ctx.zero() }).collect())
        .collect();
    rows.extend(meet.coord_rows().iter().cloned());
    let transform = FMatrix::from_rows(ctx, ctx.k_degree(), &rows).expect("F_{q^2} coordinates");
    let full = &(&transform * c) * &transform.star();
    let k = n - meet.dim();
    let reduced = full.block(0, k, 0, k);
    Reduction { left, right, meet, transform, reduced }
}

pub fn classify(form: &SesquiForm) -> Result<FormClass> {
    classify_with(form, &BruteCaps::default())
}

pub fn classify_with(form: &SesquiForm, caps: &BruteCaps) -> Result<FormClass> {
    classify_matrix(&form.coeff_matrix(&BasisFrame::standard(form.ctx())), caps)
}

/// Class of the form with coefficient matrix `c` in any frame.
pub fn classify_matrix(c: &FMatrix, caps: &BruteCaps) -> Result<FormClass> {
    let ctx = c.ctx();
    let n = c.rows();
    let red = reduce(c);
    let k = n - red.meet_dim();
    let base = FormClass {
        n,
        rad_meet_dim: red.meet_dim(),
        kind: FormKind::Nonsingular,
        invariant_factors: None,
        canonical_matrix: None,
    };
    if let Ok(inv) = red.reduced.inverse() {
        let a = &red.reduced.star() * &inv;
        return Ok(FormClass { invariant_factors: Some(a.invariant_factors()?.to_hex()), ..base });
    }
    if k == 0 {
        return Ok(FormClass { invariant_factors: Some(Vec::new()), ..base });
    }
    let canonical = if k == 2 {
        // left and right radicals of the reduced part are distinct lines
        FMatrix::from_fn(ctx, ctx.k_degree(), 2, 2, |i, j| {
            if (i, j) == (1, 0) {
                ctx.one()
            } else {
                ctx.zero()
            }
        })?
    } else {
        let group = general_linear_group(ctx, ctx.k_degree(), k, caps).map_err(|e| match e {
            Error::CapExceeded { size, cap } => Error::Unclassified(format!(
                "singular reduced part of order {k}: |GL| = {size} exceeds the brute-force cap {cap}"
            )),
            other => other,
        })?;
        congruence_orbit_min(&group, &red.reduced)
    };
    Ok(FormClass {
        kind: FormKind::SingularReduced,
        canonical_matrix: Some(canonical.to_text()),
        ..base
    })
}

pub fn equivalent(f0: &SesquiForm, f1: &SesquiForm) -> Result<bool> {
    if f0.ctx() != f1.ctx() {
        return Err(Error::MixedContexts);
    }
    Ok(classify(f0)? == classify(f1)?)
}
