//! Exhaustive evaluation of `x -> sigma_L(x, x)` over the whole field.
//!
//! Each `F_p`-coordinate of `sigma_L(x, x)` (taken against the trace-dual
//! coordinates `w -> Tr_{F_{q^2}/F_p}(h^j w)` of `F_{q^2}`) is a quadratic form `x^T A_j x`
//! over `F_p` in the coordinates of `x`. The sweep keeps `A_j x` up to date
//! incrementally, so each element costs `O(D)` word operations (one XOR and a
//! popcount in characteristic 2).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linpoly::LinPoly;

pub const DEFAULT_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest field size that may be enumerated.
    pub cap: u64,
    pub workers: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_CAP, workers: 1 }
    }
}

impl EnumOptions {
    pub fn check(&self, ctx: &FieldCtx) -> Result<()> {
        if ctx.size() > self.cap {
            return Err(Error::CapExceeded { size: ctx.size() as u128, cap: self.cap as u128 });
        }
        Ok(())
    }
}

/// The quadratic forms `A_j` of `x -> sigma_L(x, x)`.
pub struct QuadKernel {
    ctx: FieldCtx,
    /// `forms[j][b * D + a] = A_j(a, b)`, column-major.
    forms: Vec<Vec<u32>>,
    /// Key of each element of `F_{q^2}`, indexed like `ctx.k_elements()`.
    keys: Vec<usize>,
    k_elems: Vec<Elem>,
}

impl QuadKernel {
    pub fn new(l: &LinPoly) -> QuadKernel {
        let ctx = l.ctx().clone();
        let d = ctx.degree();
        let k = ctx.k_degree();
        let h = ctx.subfield_generator(k);
        let mut hj = Vec::with_capacity(k);
        let mut cur = ctx.one();
        for _ in 0..k {
            hj.push(cur.clone());
            cur = ctx.mul(&cur, &h);
        }
        let unit = |i: usize| {
            let mut c = vec![0u32; d];
            c[i] = 1;
            ctx.from_coords(&c).expect("unit coordinate vector")
        };
        let basis: Vec<Elem> = (0..d).map(unit).collect();
        let images: Vec<Elem> = basis.iter().map(|b| l.eval(&ctx.frob_q(b))).collect();
        let forms = hj
            .iter()
            .map(|h| {
                let mut m = vec![0u32; d * d];
                for (b, img) in images.iter().enumerate() {
                    let hw = ctx.mul(h, img);
                    for (a, beta) in basis.iter().enumerate() {
                        m[b * d + a] = ctx.abs_trace(&ctx.mul(beta, &hw));
                    }
                }
                m
            })
            .collect();
        let k_elems = ctx.k_elements();
        let p = ctx.p() as usize;
        let keys = k_elems
            .iter()
            .map(|w| {
                hj.iter()
                    .rev()
                    .fold(0usize, |acc, h| acc * p + k_trace(&ctx, &ctx.mul(h, w)) as usize)
            })
            .collect();
        QuadKernel { ctx, forms, keys, k_elems }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Histogram key of an element of `F_{q^2}`.
    pub fn key_of(&self, w: &Elem) -> usize {
        let i = self.k_elems.iter().position(|x| x == w).expect("element of F_{q^2}");
        self.keys[i]
    }

    /// Pairs `(w, #{x : sigma_L(x, x) = w})` over `F_{q^2}`, in `k_elements` order.
    pub fn value_counts(&self, opts: &EnumOptions) -> Result<Vec<(Elem, u64)>> {
        let hist = self.histogram(opts)?;
        Ok(self.k_elems.iter().zip(&self.keys).map(|(w, &key)| (w.clone(), hist[key])).collect())
    }

    /// Raw histogram over keys `sum_j c_j p^j`.
    pub fn histogram(&self, opts: &EnumOptions) -> Result<Vec<u64>> {
        opts.check(&self.ctx)?;
        let workers = opts.workers.max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        let size = self.ctx.size();
        let chunks = chunk_count(size, workers);
        let step = size.div_ceil(chunks);
        let ranges: Vec<(u64, u64)> = (0..chunks)
            .map(|i| (i * step, ((i + 1) * step).min(size)))
            .filter(|(a, b)| a < b)
            .collect();
        let bins = self.keys.len();
        let partials: Vec<Vec<u64>> = pool.install(|| {
            ranges
                .par_iter()
                .map(|&(start, end)| {
                    if self.ctx.p() == 2 {
                        self.sweep_binary(start, end, bins)
                    } else {
                        self.sweep_generic(start, end, bins)
                    }
                })
                .collect()
        });
        let mut hist = vec![0u64; bins];
        for part in partials {
            for (h, v) in hist.iter_mut().zip(part) {
                *h += v;
            }
        }
        Ok(hist)
    }

    fn sweep_generic(&self, start: u64, end: u64, bins: usize) -> Vec<u64> {
        let d = self.ctx.degree();
        let p = self.ctx.p() as u32;
        let mut hist = vec![0u64; bins];
        let mut x = vec![0u32; d];
        let mut rest = start;
        for xi in x.iter_mut() {
            *xi = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        // y[j][a] = (A_j x)_a
        let mut y: Vec<Vec<u32>> = self
            .forms
            .iter()
            .map(|m| {
                (0..d)
                    .map(|a| {
                        (0..d).fold(0u64, |acc, b| acc + m[b * d + a] as u64 * x[b] as u64) as u32 % p
                    })
                    .collect()
            })
            .collect();
        for _ in start..end {
            let mut key = 0usize;
            for yj in y.iter().rev() {
                let q = x.iter().zip(yj).fold(0u64, |acc, (&a, &b)| acc + a as u64 * b as u64) % p as u64;
                key = key * p as usize + q as usize;
            }
            hist[key] += 1;
            // odometer step: every touched digit changes by +1 mod p
            for b in 0..d {
                x[b] += 1;
                for (yj, m) in y.iter_mut().zip(&self.forms) {
                    let col = &m[b * d..(b + 1) * d];
                    for (ya, &c) in yj.iter_mut().zip(col) {
                        *ya = (*ya + c) % p;
                    }
                }
                if x[b] < p {
                    break;
                }
                x[b] = 0;
            }
        }
        hist
    }

    fn sweep_binary(&self, start: u64, end: u64, bins: usize) -> Vec<u64> {
        let d = self.ctx.degree();
        let cols: Vec<Vec<u64>> = self
            .forms
            .iter()
            .map(|m| {
                (0..d)
                    .map(|b| (0..d).fold(0u64, |acc, a| acc | ((m[b * d + a] as u64) << a)))
                    .collect()
            })
            .collect();
        let apply = |j: usize, x: u64| -> u64 {
            (0..d).filter(|b| x >> b & 1 == 1).fold(0u64, |acc, b| acc ^ cols[j][b])
        };
        let mut hist = vec![0u64; bins];
        // Gray-code order visits exactly the indices of [start, end) when the
        // range is aligned; otherwise walk it in aligned blocks.
        let mut pos = start;
        while pos < end {
            let align = if pos == 0 { 63 } else { pos.trailing_zeros() };
            let mut span = 1u64 << align.min(63);
            while pos + span > end {
                span >>= 1;
            }
            let bits = span.trailing_zeros();
            let mut x = pos;
            let mut y: Vec<u64> = (0..cols.len()).map(|j| apply(j, x)).collect();
            for i in 0..span {
                if i > 0 {
                    let b = i.trailing_zeros() as usize;
                    debug_assert!((b as u32) < bits);
                    x ^= 1 << b;
                    for (yj, c) in y.iter_mut().zip(&cols) {
                        *yj ^= c[b];
                    }
                }
                let key = y
                    .iter()
                    .rev()
                    .fold(0usize, |acc, yj| (acc << 1) | ((x & yj).count_ones() & 1) as usize);
                hist[key] += 1;
            }
            pos += span;
        }
        hist
    }
}

/// `Tr_{F_{q^2}/F_p}` of an element of `F_{q^2}`.
fn k_trace(ctx: &FieldCtx, w: &Elem) -> u32 {
    ctx.rel_trace(w, ctx.k_degree(), 1).expect("element of F_{q^2}").coords()[0]
}

fn chunk_count(size: u64, workers: usize) -> u64 {
    if workers <= 1 {
        return 1;
    }
    (workers as u64 * 8).min(size.max(1))
}

/// Reference sweep: evaluates `sigma_L(x, x)` with field arithmetic for every `x`.
pub fn naive_value_counts(l: &LinPoly, opts: &EnumOptions) -> Result<Vec<(Elem, u64)>> {
    let ctx = l.ctx();
    opts.check(ctx)?;
    let k_elems = ctx.k_elements();
    let mut counts = vec![0u64; k_elems.len()];
    for x in ctx.elements() {
        let v = ctx.trace(&ctx.mul(&x, &l.eval(&ctx.frob_q(&x))));
        let i = k_elems.iter().position(|w| *w == v).expect("value in F_{q^2}");
        counts[i] += 1;
    }
    Ok(k_elems.into_iter().zip(counts).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(ctx: &FieldCtx, idx: &[u64]) -> LinPoly {
        LinPoly::new(ctx, idx.iter().map(|&i| ctx.from_index(i % ctx.size())).collect()).unwrap()
    }

    #[test]
    fn kernel_matches_naive_sweep() {
        for (p, e, n) in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 1), (5, 1, 1), (2, 1, 3)] {
            let ctx = FieldCtx::build(p, e, n, None).unwrap();
            for seed in 0..6u64 {
                let idx: Vec<u64> = (0..n as u64).map(|i| seed * 37 + i * 11 + 1).collect();
                let l = lp(&ctx, &idx);
                let opts = EnumOptions::default();
                let fast = QuadKernel::new(&l).value_counts(&opts).unwrap();
                assert_eq!(fast, naive_value_counts(&l, &opts).unwrap(), "p={p} e={e} n={n} L={l:?}");
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        for (p, n) in [(2u64, 3u32), (3, 2)] {
            let ctx = FieldCtx::build(p, 1, n, None).unwrap();
            let l = lp(&ctx, &[5, 9, 13][..n as usize]);
            let k = QuadKernel::new(&l);
            let one = k.histogram(&EnumOptions { workers: 1, ..Default::default() }).unwrap();
            for w in [2, 3, 7] {
                assert_eq!(k.histogram(&EnumOptions { workers: w, ..Default::default() }).unwrap(), one);
            }
            assert_eq!(one.iter().sum::<u64>(), ctx.size());
        }
    }

    #[test]
    fn binary_and_generic_sweeps_agree() {
        let ctx = FieldCtx::build(2, 2, 2, None).unwrap();
        let l = lp(&ctx, &[77, 200]);
        let k = QuadKernel::new(&l);
        let bins = k.keys.len();
        for (a, b) in [(0, 256), (3, 250), (17, 18), (128, 256)] {
            assert_eq!(k.sweep_binary(a, b, bins), k.sweep_generic(a, b, bins), "range {a}..{b}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ctx = FieldCtx::build(2, 1, 3, None).unwrap();
        let l = LinPoly::identity(&ctx);
        let opts = EnumOptions { cap: 63, workers: 1 };
        assert_eq!(
            QuadKernel::new(&l).histogram(&opts),
            Err(Error::CapExceeded { size: 64, cap: 63 })
        );
    }
}
