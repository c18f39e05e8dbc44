//! Dense matrices over a subfield `F_{p^k}` of the ambient field.
//!
//! Besides the usual Gaussian-elimination toolkit this module provides the
//! conjugate transpose `M*`, invariant factors of `xI - M` (the conjugacy
//! certificate) and brute-force searches over `GL_k` used as independent oracles.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::num;
use crate::poly::FPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    ctx: FieldCtx,
    sub_deg: usize,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialOrd for FMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shape first, then entries in row-major coordinate-lexicographic order.
impl Ord for FMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FMatrix[{}]", self.to_text())
    }
}

impl FMatrix {
    /// Builds a matrix whose entries must lie in `F_{p^sub_deg}`.
    pub fn new(ctx: &FieldCtx, sub_deg: usize, rows: usize, cols: usize, data: Vec<Elem>) -> Result<FMatrix> {
        if sub_deg == 0 || ctx.degree() % sub_deg != 0 {
            return Err(Error::NonDivisibleDegrees { from: ctx.degree(), to: sub_deg });
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for a in &data {
            if !ctx.owns(a) {
                return Err(Error::MixedContexts);
            }
            if sub_deg != ctx.degree() && !ctx.in_subfield(a, sub_deg) {
                return Err(Error::NotInSubfield(sub_deg));
            }
        }
        Ok(FMatrix { ctx: ctx.clone(), sub_deg, rows, cols, data })
    }

    /// Construction for entries already known to lie in the tagged subfield.
    pub(crate) fn from_parts(ctx: &FieldCtx, sub_deg: usize, rows: usize, cols: usize, data: Vec<Elem>) -> FMatrix {
        debug_assert_eq!(data.len(), rows * cols);
        FMatrix { ctx: ctx.clone(), sub_deg, rows, cols, data }
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        sub_deg: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Result<FMatrix> {
        let data = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        FMatrix::new(ctx, sub_deg, rows, cols, data)
    }

    pub fn from_rows(ctx: &FieldCtx, sub_deg: usize, rows: &[Vec<Elem>]) -> Result<FMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        FMatrix::new(ctx, sub_deg, rows.len(), cols, rows.concat())
    }

    pub fn identity(ctx: &FieldCtx, sub_deg: usize, n: usize) -> FMatrix {
        let data = (0..n * n)
            .map(|idx| if idx / n == idx % n { ctx.one() } else { ctx.zero() })
            .collect();
        FMatrix::from_parts(ctx, sub_deg, n, n, data)
    }

    pub fn zero(ctx: &FieldCtx, sub_deg: usize, rows: usize, cols: usize) -> FMatrix {
        FMatrix::from_parts(ctx, sub_deg, rows, cols, vec![ctx.zero(); rows * cols])
    }

    pub fn diagonal(ctx: &FieldCtx, sub_deg: usize, entries: &[Elem]) -> Result<FMatrix> {
        let n = entries.len();
        FMatrix::from_fn(ctx, sub_deg, n, n, |i, j| if i == j { entries[i].clone() } else { ctx.zero() })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn sub_deg(&self) -> usize {
        self.sub_deg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Re-tags the entry field, verifying membership when narrowing.
    pub fn retag(&self, sub_deg: usize) -> Result<FMatrix> {
        FMatrix::new(&self.ctx, sub_deg, self.rows, self.cols, self.data.clone())
    }

    /// Sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FMatrix {
        let data = (r0..r1)
            .flat_map(|i| (c0..c1).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        FMatrix::from_parts(&self.ctx, self.sub_deg, r1 - r0, c1 - c0, data)
    }

    fn joint_tag(&self, other: &FMatrix) -> usize {
        // entries of both lie in the compositum of the two subfields
        let a = self.sub_deg as u128;
        let b = other.sub_deg as u128;
        num::lcm(a, b) as usize
    }

    pub fn checked_mul(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ctx != other.ctx {
            return Err(Error::MixedContexts);
        }
        let ctx = &self.ctx;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ctx.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = ctx.add(&acc, &ctx.mul(a, other.get(k, j)));
                }
                data.push(acc);
            }
        }
        Ok(FMatrix::from_parts(ctx, self.joint_tag(other), self.rows, other.cols, data))
    }

    fn zip_with(&self, other: &FMatrix, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<FMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("entrywise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(FMatrix::from_parts(&self.ctx, self.joint_tag(other), self.rows, self.cols, data))
    }

    pub fn add(&self, other: &FMatrix) -> Result<FMatrix> {
        self.zip_with(other, |a, b| self.ctx.add(a, b))
    }

    pub fn sub(&self, other: &FMatrix) -> Result<FMatrix> {
        self.zip_with(other, |a, b| self.ctx.sub(a, b))
    }

    /// Multiplies every entry by `c`; the tag widens to hold `c`.
    pub fn scale(&self, c: &Elem) -> FMatrix {
        let data: Vec<Elem> = self.data.iter().map(|a| self.ctx.mul(a, c)).collect();
        let tag = smallest_tag(&self.ctx, c, self.sub_deg);
        FMatrix::from_parts(&self.ctx, tag, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> FMatrix {
        FMatrix::from_parts(
            &self.ctx,
            self.sub_deg,
            self.cols,
            self.rows,
            (0..self.cols * self.rows)
                .map(|idx| self.get(idx % self.rows, idx / self.rows).clone())
                .collect(),
        )
    }

    /// Entrywise `q`-th power.
    pub fn conjugate(&self) -> FMatrix {
        let data = self.data.iter().map(|a| self.ctx.frob_q(a)).collect();
        FMatrix::from_parts(&self.ctx, self.sub_deg, self.rows, self.cols, data)
    }

    /// `M*`: the transpose with every entry raised to the `q`-th power.
    pub fn star(&self) -> FMatrix {
        self.transpose().conjugate()
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let ctx = &self.ctx;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(ctx.zero(), |acc, j| ctx.add(&acc, &ctx.mul(self.get(i, j), &v[j])))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let ctx = &self.ctx;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = ctx.inv(&m[r * cols + c]).unwrap();
            for j in 0..cols {
                m[r * cols + j] = ctx.mul(&m[r * cols + j], &inv);
            }
            for i in 0..rows {
                if i == r || m[i * cols + c].is_zero() {
                    continue;
                }
                let f = m[i * cols + c].clone();
                for j in 0..cols {
                    let t = ctx.mul(&f, &m[r * cols + j]);
                    m[i * cols + j] = ctx.sub(&m[i * cols + j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (FMatrix::from_parts(ctx, self.sub_deg, rows, cols, m), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let ctx = &self.ctx;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ctx.zero(); self.cols];
                v[f] = ctx.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = ctx.neg(r.get(row, f));
                }
                v
            })
            .collect()
    }

    /// Basis of the left null space `{v : v^T M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Elem>> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Result<FMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let ctx = &self.ctx;
        let aug = FMatrix::from_fn(ctx, self.sub_deg, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                ctx.one()
            } else {
                ctx.zero()
            }
        })?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, 2 * n))
    }

    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let ctx = &self.ctx;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = ctx.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[i * n + c].is_zero()) else {
                return Ok(ctx.zero());
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = ctx.neg(&det);
            }
            let piv = m[c * n + c].clone();
            det = ctx.mul(&det, &piv);
            let inv = ctx.inv(&piv).unwrap();
            for i in c + 1..n {
                if m[i * n + c].is_zero() {
                    continue;
                }
                let f = ctx.mul(&m[i * n + c], &inv);
                for j in c..n {
                    let t = ctx.mul(&f, &m[c * n + j]);
                    m[i * n + j] = ctx.sub(&m[i * n + j], &t);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<FPoly> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("characteristic polynomial of a non-square matrix".into()));
        }
        let ctx = &self.ctx;
        let n = self.rows;
        let mut h: Vec<Vec<Elem>> = self.row_vectors();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let pivot_inv = ctx.inv(&h[j + 1][j]).unwrap();
            for k in j + 2..n {
                if h[k][j].is_zero() {
                    continue;
                }
                let t = ctx.mul(&h[k][j], &pivot_inv);
                for c in 0..n {
                    let s = ctx.mul(&t, &h[j + 1][c]);
                    h[k][c] = ctx.sub(&h[k][c], &s);
                }
                for row in h.iter_mut() {
                    let s = ctx.mul(&t, &row[k]);
                    row[j + 1] = ctx.add(&row[j + 1], &s);
                }
            }
        }
        let mut polys = vec![FPoly::one(ctx)];
        for m in 1..=n {
            let mut pm = FPoly::linear(ctx, &h[m - 1][m - 1]).mul(&polys[m - 1]);
            let mut prod = ctx.one();
            for i in (1..m).rev() {
                prod = ctx.mul(&prod, &h[i][i - 1]);
                let coef = ctx.mul(&h[i - 1][m - 1], &prod);
                if !coef.is_zero() {
                    pm = pm.sub(&polys[i - 1].scale(&coef));
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().unwrap())
    }

    /// Invariant factors of `xI - M` from a Smith normal form over `F[x]`.
    pub fn invariant_factors(&self) -> Result<InvariantFactors> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("invariant factors of a non-square matrix".into()));
        }
        let ctx = &self.ctx;
        let n = self.rows;
        let x = FPoly::new(ctx, vec![ctx.zero(), ctx.one()]);
        let a: Vec<Vec<FPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = FPoly::constant(ctx, ctx.neg(self.get(i, j)));
                        if i == j {
                            x.add(&c)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let mut factors: Vec<FPoly> = smith_diagonal(a)
            .into_iter()
            .filter(|f| f.degree().is_some_and(|d| d > 0))
            .collect();
        factors.sort_by_key(|f| f.degree());
        Ok(InvariantFactors { factors })
    }

    /// Text form: `;`-separated rows of `,`-separated hex entries.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.ctx.to_hex(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(ctx: &FieldCtx, sub_deg: usize, s: &str) -> Result<FMatrix> {
        let rows: Vec<Vec<Elem>> = s
            .split(';')
            .map(|r| r.split(',').map(|e| ctx.parse_elem(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        FMatrix::from_rows(ctx, sub_deg, &rows)
    }
}

fn smallest_tag(ctx: &FieldCtx, c: &Elem, current: usize) -> usize {
    let d = ctx.degree();
    let own = (1..=d).find(|&k| d % k == 0 && ctx.in_subfield(c, k)).unwrap_or(d);
    num::lcm(own as u128, current as u128) as usize
}

impl Mul for &FMatrix {
    type Output = FMatrix;

    fn mul(self, rhs: &FMatrix) -> FMatrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

fn smith_diagonal(mut a: Vec<Vec<FPoly>>) -> Vec<FPoly> {
    let n = a.len();
    let ctx_zero = |a: &Vec<Vec<FPoly>>| a[0][0].clone().sub(&a[0][0]);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, entry) in row.iter().enumerate().skip(t) {
                    if let Some(d) = entry.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                let zero = ctx_zero(&a);
                return (0..n).map(|i| if i < t { a[i][i].monic() } else { zero.clone() }).collect();
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                for k in t..n {
                    let s = q.mul(&a[t][k]);
                    a[i][k] = a[i][k].sub(&s);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let s = q.mul(&row[t]);
                    row[j] = row[j].sub(&s);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..n).find(|&i| {
                (t + 1..n).any(|j| !a[i][j].div_rem(&a[t][t]).1.is_zero())
            });
            match offender {
                Some(i) => {
                    for k in t..n {
                        a[t][k] = a[t][k].add(&a[i][k]);
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|i| a[i][i].monic()).collect()
}

/// Monic invariant factors `d_1 | d_2 | ...` of `xI - M`, constant factors dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<FPoly>,
}

impl InvariantFactors {
    pub fn total_degree(&self) -> usize {
        self.factors.iter().filter_map(FPoly::degree).sum()
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        self.factors
            .windows(2)
            .all(|w| w[1].div_rem(&w[0]).1.is_zero())
    }

    pub fn to_hex(&self) -> Vec<Vec<String>> {
        self.factors.iter().map(FPoly::to_hex).collect()
    }
}

/// Whether two square matrices are conjugate, decided by comparing invariant factors.
pub fn conjugacy_test(m0: &FMatrix, m1: &FMatrix) -> Result<bool> {
    if !m0.is_square() || !m1.is_square() || m0.rows != m1.rows {
        return Err(Error::ShapeMismatch("conjugacy test needs square matrices of equal order".into()));
    }
    Ok(m0.invariant_factors()? == m1.invariant_factors()?)
}

/// Limits for the exhaustive `GL_k` searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteCaps {
    pub max_order: usize,
    pub max_subfield: u64,
    pub max_group: u128,
}

impl Default for BruteCaps {
    fn default() -> Self {
        BruteCaps { max_order: 3, max_subfield: 9, max_group: 1 << 24 }
    }
}

/// `|GL_k(Q)|`
pub fn gl_order(field_size: u128, k: usize) -> u128 {
    let qk = num::pow(field_size, k as u32);
    (0..k).map(|i| qk - num::pow(field_size, i as u32)).product()
}

fn check_caps(ctx: &FieldCtx, sub_deg: usize, k: usize, caps: &BruteCaps) -> Result<()> {
    let fsize = ctx.subfield_size(sub_deg);
    if k > caps.max_order || fsize > caps.max_subfield {
        return Err(Error::CapExceeded {
            size: gl_order(fsize as u128, k.min(8)),
            cap: caps.max_group,
        });
    }
    let order = gl_order(fsize as u128, k);
    if order > caps.max_group {
        return Err(Error::CapExceeded { size: order, cap: caps.max_group });
    }
    Ok(())
}

/// Every element of `GL_k(F_{p^sub_deg})`, in a deterministic order.
pub fn general_linear_group(ctx: &FieldCtx, sub_deg: usize, k: usize, caps: &BruteCaps) -> Result<Vec<FMatrix>> {
    check_caps(ctx, sub_deg, k, caps)?;
    let field = ctx.subfield_elements(sub_deg);
    let vectors: Vec<Vec<Elem>> = all_vectors(&field, k);
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<Elem>> = Vec::new();
    extend_gl(ctx, sub_deg, k, &field, &vectors, &mut chosen, &mut out);
    Ok(out)
}

fn all_vectors(field: &[Elem], k: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                field.iter().map(move |a| {
                    let mut w = v.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn span(ctx: &FieldCtx, field: &[Elem], rows: &[Vec<Elem>], k: usize) -> HashSet<Vec<Elem>> {
    let mut set: HashSet<Vec<Elem>> = HashSet::new();
    set.insert(vec![ctx.zero(); k]);
    for r in rows {
        let mut next = HashSet::new();
        for v in &set {
            for a in field {
                let w: Vec<Elem> = v.iter().zip(r).map(|(x, y)| ctx.add(x, &ctx.mul(a, y))).collect();
                next.insert(w);
            }
        }
        set = next;
    }
    set
}

fn extend_gl(
    ctx: &FieldCtx,
    sub_deg: usize,
    k: usize,
    field: &[Elem],
    vectors: &[Vec<Elem>],
    chosen: &mut Vec<Vec<Elem>>,
    out: &mut Vec<FMatrix>,
) {
    if chosen.len() == k {
        out.push(FMatrix::from_parts(ctx, sub_deg, k, k, chosen.concat()));
        return;
    }
    let spanned = span(ctx, field, chosen, k);
    for v in vectors {
        if spanned.contains(v) {
            continue;
        }
        chosen.push(v.clone());
        extend_gl(ctx, sub_deg, k, field, vectors, chosen, out);
        chosen.pop();
    }
}

fn check_pair(c0: &FMatrix, c1: &FMatrix) -> Result<usize> {
    if !c0.is_square() || (c0.rows, c0.cols) != (c1.rows, c1.cols) {
        return Err(Error::ShapeMismatch("congruence needs square matrices of equal order".into()));
    }
    if c0.sub_deg != c1.sub_deg {
        return Err(Error::ShapeMismatch("matrices carry different subfield tags".into()));
    }
    Ok(c0.sub_deg)
}

/// Exhaustive search for `T` in `GL` with `C0 = T C1 T*`.
pub fn congruence_oracle(c0: &FMatrix, c1: &FMatrix, caps: &BruteCaps) -> Result<Option<FMatrix>> {
    let tag = check_pair(c0, c1)?;
    let group = general_linear_group(c0.ctx(), tag, c0.rows, caps)?;
    Ok(congruence_search(&group, c0, c1))
}

/// Same search over a precomputed group.
pub fn congruence_search(group: &[FMatrix], c0: &FMatrix, c1: &FMatrix) -> Option<FMatrix> {
    group.iter().find(|t| &(*t * c1) * &t.star() == *c0).cloned()
}

/// Smallest member of the congruence orbit `{T C T*}` of `c`.
pub fn congruence_orbit_min(group: &[FMatrix], c: &FMatrix) -> FMatrix {
    group
        .iter()
        .map(|t| &(t * c) * &t.star())
        .min()
        .unwrap_or_else(|| c.clone())
}

/// Exhaustive search for `S` in `GL` with `S M0 S^{-1} = M1`.
pub fn conjugacy_search(m0: &FMatrix, m1: &FMatrix, caps: &BruteCaps) -> Result<Option<FMatrix>> {
    let tag = check_pair(m0, m1)?;
    let group = general_linear_group(m0.ctx(), tag, m0.rows, caps)?;
    Ok(group.into_iter().find(|s| &(s * m0) == &(m1 * s)))
}

#[cfg(test)]
mod tests;
