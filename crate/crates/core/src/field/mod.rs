//! The ambient field `F_{q^{2n}}` with `q = p^e`, realised as `F_p[x]/(f)` for a
//! monic irreducible `f` of degree `2ne`.
//!
//! Elements are dense coordinate vectors in the polynomial basis. Every subfield
//! `F_{p^k}` (`k | 2ne`) is handled as the fixed set of the `p^k`-power map rather
//! than as a separate context, so elements of `F_q`, `F_{q^2}` and the ambient field
//! all share one representation.

pub mod prime_poly;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::num;

pub use text::FieldSpec;

pub(crate) type Coords = SmallVec<[u32; 8]>;

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

/// Largest supported characteristic; keeps lazy `u64` accumulation exact.
const MAX_PRIME: u64 = 1 << 31;

/// An element of the ambient field of one particular [`FieldCtx`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    ctx: u64,
    coords: Coords,
}

impl Elem {
    /// Polynomial-basis coordinates, constant term first.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn ctx_id(&self) -> u64 {
        self.ctx
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinate lexicographic order, constant coordinate compared first.
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .cmp(&other.ctx)
            .then_with(|| self.coords.as_slice().cmp(other.coords.as_slice()))
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem{:?}", self.coords.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Inner {
    id: u64,
    p: u32,
    e: u32,
    n: u32,
    degree: usize,
    size: u64,
    modulus: Vec<u32>,
    /// `reduce[k]` holds the coordinates of `x^(D+k) mod f`.
    reduce: Vec<Coords>,
    /// `frob[k]` is the row-major matrix of `u -> u^(p^k)` for `k < D`.
    frob: Vec<Vec<u32>>,
    /// Matrix of the trace onto `F_{q^2}`.
    trace_k: Vec<u32>,
    generator: Coords,
}

/// Immutable, cheaply clonable handle to a finite field `F_{q^{2n}}`.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for FieldCtx {}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id().hash(state);
    }
}

impl FieldCtx {
    /// Builds `F_{q^{2n}}` with `q = p^e`. When `modulus` is `None` the
    /// lexicographically smallest monic irreducible of degree `2ne` is used.
    pub fn build(p: u64, e: u32, n: u32, modulus: Option<&[u64]>) -> Result<FieldCtx> {
        if !num::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::Overflow(format!("characteristic {p} exceeds 2^31")));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidParameters("e and n must be positive".into()));
        }
        let degree = 2usize
            .checked_mul(e as usize)
            .and_then(|v| v.checked_mul(n as usize))
            .ok_or_else(|| Error::Overflow("extension degree".into()))?;
        let size = u32::try_from(degree)
            .ok()
            .and_then(|d| num::checked_pow(p as u128, d))
            .filter(|&s| s < (1u128 << 63))
            .ok_or_else(|| Error::Overflow(format!("{p}^{degree} does not fit in 63 bits")))?
            as u64;

        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                if m.len() != degree + 1 || m[degree] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: m.len().saturating_sub(1),
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidParameters(format!(
                        "modulus coefficients must be reduced mod {p}"
                    )));
                }
                if !prime_poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p as u32));
                }
                m.to_vec()
            }
            None => prime_poly::smallest_irreducible(p, degree),
        };
        let modulus: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();

        // x^D = -(f_0 + ... + f_{D-1} x^{D-1})
        let pp = p as u32;
        let mut reduce: Vec<Coords> = Vec::with_capacity(degree.saturating_sub(1));
        let mut cur: Coords = modulus[..degree].iter().map(|&c| (pp - c) % pp).collect();
        for _ in 0..degree.saturating_sub(1) {
            reduce.push(cur.clone());
            // multiply by x
            let top = cur[degree - 1] as u64;
            let mut next: Coords = SmallVec::from_elem(0, degree);
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            next[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    next[i] = ((next[i] as u64 + top * reduce[0][i] as u64) % p) as u32;
                }
            }
            cur = next;
        }

        let mut inner = Inner {
            id: NEXT_CTX_ID.fetch_add(1, AtomicOrdering::Relaxed),
            p: pp,
            e,
            n,
            degree,
            size,
            modulus,
            reduce,
            frob: Vec::new(),
            trace_k: Vec::new(),
            generator: SmallVec::new(),
        };

        // Frobenius matrices: column j of frob[1] is (x^j)^p.
        let identity: Vec<u32> = (0..degree * degree)
            .map(|idx| u32::from(idx / degree == idx % degree))
            .collect();
        let mut frob1 = vec![0u32; degree * degree];
        for j in 0..degree {
            let mut xj: Coords = SmallVec::from_elem(0, degree);
            xj[j] = 1;
            let img = inner.raw_pow(&xj, p as u128);
            for i in 0..degree {
                frob1[i * degree + j] = img[i];
            }
        }
        let mut frob = vec![identity];
        for k in 1..degree {
            let prev = &frob[k - 1];
            frob.push(mat_mul_fp(&frob1, prev, degree, p));
        }
        let k_step = 2 * e as usize;
        let mut trace_k = vec![0u32; degree * degree];
        for i in 0..n as usize {
            let m = &frob[(k_step * i) % degree];
            for (t, &v) in trace_k.iter_mut().zip(m) {
                *t = ((*t as u64 + v as u64) % p) as u32;
            }
        }
        inner.frob = frob;
        inner.trace_k = trace_k;
        inner.generator = inner.find_generator();

        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    pub fn p(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    /// Dimension of the ambient field over `F_{q^2}`.
    pub fn n(&self) -> usize {
        self.inner.n as usize
    }

    pub fn q(&self) -> u64 {
        (self.inner.p as u64).pow(self.inner.e)
    }

    /// Extension degree `2ne` of the ambient field over `F_p`.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Degree over `F_p` of the coefficient field `F_{q^2}`.
    pub fn k_degree(&self) -> usize {
        2 * self.inner.e as usize
    }

    /// Degree over `F_p` of `F_q`.
    pub fn q_degree(&self) -> usize {
        self.inner.e as usize
    }

    pub fn size(&self) -> u64 {
        self.inner.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}^{}:{}", self.inner.p, self.inner.e, self.inner.n, coeffs.join(","))
    }

    pub fn owns(&self, a: &Elem) -> bool {
        a.ctx == self.inner.id
    }

    #[inline]
    fn check(&self, a: &Elem) {
        assert_eq!(a.ctx, self.inner.id, "element from a different field context");
    }

    fn wrap(&self, coords: Coords) -> Elem {
        Elem { ctx: self.inner.id, coords }
    }

    pub fn zero(&self) -> Elem {
        self.wrap(SmallVec::from_elem(0, self.inner.degree))
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        let mut c: Coords = SmallVec::from_elem(0, self.inner.degree);
        c[0] = k.rem_euclid(self.inner.p as i64) as u32;
        self.wrap(c)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.inner.degree || coords.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidParameters(format!(
                "expected {} coordinates reduced mod {}",
                self.inner.degree, self.inner.p
            )));
        }
        Ok(self.wrap(SmallVec::from_slice(coords)))
    }

    /// Element with coordinates given by the base-`p` digits of `index`
    /// (constant coordinate is the least significant digit).
    pub fn from_index(&self, mut index: u64) -> Elem {
        let p = self.inner.p as u64;
        let mut c: Coords = SmallVec::from_elem(0, self.inner.degree);
        for slot in c.iter_mut() {
            *slot = (index % p) as u32;
            index /= p;
        }
        self.wrap(c)
    }

    pub fn index_of(&self, a: &Elem) -> u64 {
        self.check(a);
        let p = self.inner.p as u64;
        a.coords.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64)
    }

    /// The ambient field's variable `x` (or `x mod f` when the degree is 1).
    pub fn x(&self) -> Elem {
        let mut c: Coords = SmallVec::from_elem(0, self.inner.degree);
        if self.inner.degree > 1 {
            c[1] = 1;
        } else {
            c[0] = (self.inner.p - self.inner.modulus[0]) % self.inner.p;
        }
        self.wrap(c)
    }

    /// Fixed primitive element: the smallest element of full multiplicative order
    /// in coordinate lexicographic order.
    pub fn generator(&self) -> Elem {
        self.wrap(self.inner.generator.clone())
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.inner.size).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.check(a);
        self.check(b);
        let p = self.inner.p;
        let c = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        self.wrap(c)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.check(a);
        self.check(b);
        let p = self.inner.p;
        let c = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect();
        self.wrap(c)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.check(a);
        let p = self.inner.p;
        let c = a.coords.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect();
        self.wrap(c)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.check(a);
        self.check(b);
        self.wrap(self.inner.raw_mul(&a.coords, &b.coords))
    }

    /// Multiplication by an integer (prime-field scalar).
    pub fn mul_int(&self, a: &Elem, k: i64) -> Elem {
        self.check(a);
        let p = self.inner.p as u64;
        let k = k.rem_euclid(p as i64) as u64;
        let c = a.coords.iter().map(|&x| (x as u64 * k % p) as u32).collect();
        self.wrap(c)
    }

    pub fn pow(&self, a: &Elem, exp: u128) -> Elem {
        self.check(a);
        if exp == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        // the multiplicative group has order size - 1
        let mut reduced = exp % (self.inner.size as u128 - 1);
        if reduced == 0 {
            reduced = self.inner.size as u128 - 1;
        }
        self.wrap(self.inner.raw_pow(&a.coords, reduced))
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.inner.size as u128 - 2))
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked binary arithmetic: reports mixed contexts and division by zero as errors.
    pub fn try_binary(&self, op: BinOp, a: &Elem, b: &Elem) -> Result<Elem> {
        if !self.owns(a) || !self.owns(b) {
            return Err(Error::MixedContexts);
        }
        Ok(match op {
            BinOp::Add => self.add(a, b),
            BinOp::Sub => self.sub(a, b),
            BinOp::Mul => self.mul(a, b),
            BinOp::Div => self.div(a, b)?,
        })
    }

    pub fn try_pow(&self, a: &Elem, exp: u128) -> Result<Elem> {
        if !self.owns(a) {
            return Err(Error::MixedContexts);
        }
        Ok(self.pow(a, exp))
    }

    /// `u^(p^k)`; negative `k` applies the inverse automorphism.
    pub fn frobenius(&self, u: &Elem, k: i64) -> Elem {
        self.check(u);
        let d = self.inner.degree as i64;
        let k = k.rem_euclid(d) as usize;
        if k == 0 {
            return u.clone();
        }
        self.wrap(self.inner.apply(&self.inner.frob[k], &u.coords))
    }

    pub fn try_frobenius(&self, u: &Elem, k: i64) -> Result<Elem> {
        if !self.owns(u) {
            return Err(Error::MixedContexts);
        }
        Ok(self.frobenius(u, k))
    }

    /// The involution `u -> u^q`.
    pub fn frob_q(&self, u: &Elem) -> Elem {
        self.frobenius(u, self.inner.e as i64)
    }

    /// `u -> u^(q^2)`.
    pub fn frob_q2(&self, u: &Elem) -> Elem {
        self.frobenius(u, 2 * self.inner.e as i64)
    }

    /// `u -> u^(q^(2i))`.
    pub fn frob_q2_pow(&self, u: &Elem, i: usize) -> Elem {
        self.frobenius(u, (2 * self.inner.e as usize * i) as i64)
    }

    /// Whether `u` lies in `F_{p^k}` (requires `k | 2ne`).
    pub fn in_subfield(&self, u: &Elem, k: usize) -> bool {
        self.frobenius(u, k as i64) == *u
    }

    pub fn in_k(&self, u: &Elem) -> bool {
        self.in_subfield(u, self.k_degree())
    }

    fn check_degrees(&self, from: usize, to: usize) -> Result<()> {
        if to == 0 || from == 0 || from % to != 0 || self.inner.degree % from != 0 {
            return Err(Error::NonDivisibleDegrees { from, to });
        }
        Ok(())
    }

    /// Relative trace `F_{p^from} -> F_{p^to}`.
    pub fn rel_trace(&self, u: &Elem, from: usize, to: usize) -> Result<Elem> {
        if !self.owns(u) {
            return Err(Error::MixedContexts);
        }
        self.check_degrees(from, to)?;
        if !self.in_subfield(u, from) {
            return Err(Error::NotInSubfield(from));
        }
        let mut acc = self.zero();
        for i in 0..from / to {
            acc = self.add(&acc, &self.frobenius(u, (to * i) as i64));
        }
        if !self.in_subfield(&acc, to) {
            return Err(Error::Internal("trace left the target subfield".into()));
        }
        Ok(acc)
    }

    /// Relative norm `F_{p^from} -> F_{p^to}`.
    pub fn rel_norm(&self, u: &Elem, from: usize, to: usize) -> Result<Elem> {
        if !self.owns(u) {
            return Err(Error::MixedContexts);
        }
        self.check_degrees(from, to)?;
        if !self.in_subfield(u, from) {
            return Err(Error::NotInSubfield(from));
        }
        let mut acc = self.one();
        for i in 0..from / to {
            acc = self.mul(&acc, &self.frobenius(u, (to * i) as i64));
        }
        if !self.in_subfield(&acc, to) {
            return Err(Error::Internal("norm left the target subfield".into()));
        }
        Ok(acc)
    }

    /// The trace `Tr` of `F_{q^{2n}} / F_{q^2}`.
    pub fn trace(&self, u: &Elem) -> Elem {
        self.check(u);
        self.wrap(self.inner.apply(&self.inner.trace_k, &u.coords))
    }

    /// Absolute trace of `u` into `F_p`, as an integer residue.
    pub fn abs_trace(&self, u: &Elem) -> u32 {
        let mut acc = self.zero();
        for i in 0..self.inner.degree {
            acc = self.add(&acc, &self.frobenius(u, i as i64));
        }
        acc.coords[0]
    }

    pub fn subfield_size(&self, k: usize) -> u64 {
        (self.inner.p as u64).pow(k as u32)
    }

    /// A primitive element of `F_{p^k}`: `g^((p^D - 1)/(p^k - 1))`.
    pub fn subfield_generator(&self, k: usize) -> Elem {
        assert!(k > 0 && self.inner.degree % k == 0, "subfield degree must divide {}", self.inner.degree);
        let exp = (self.inner.size - 1) / (self.subfield_size(k) - 1);
        self.pow(&self.generator(), exp as u128)
    }

    /// Elements of `F_{p^k}`: zero followed by successive powers of its generator.
    pub fn subfield_elements(&self, k: usize) -> Vec<Elem> {
        let h = self.subfield_generator(k);
        let count = self.subfield_size(k) - 1;
        let mut out = Vec::with_capacity(count as usize + 1);
        out.push(self.zero());
        let mut cur = self.one();
        for _ in 0..count {
            out.push(cur.clone());
            cur = self.mul(&cur, &h);
        }
        out
    }

    pub fn k_elements(&self) -> Vec<Elem> {
        self.subfield_elements(self.k_degree())
    }

    /// The norm-one group `U = {u in F_{q^2} : u^{q+1} = 1}` as powers of `h^{q-1}`,
    /// `h` the generator of `F_{q^2}^*`.
    pub fn unit_circle(&self) -> Vec<Elem> {
        let q = self.q() as u128;
        let step = self.pow(&self.subfield_generator(self.k_degree()), q - 1);
        let mut out = Vec::with_capacity(q as usize + 1);
        let mut cur = self.one();
        for _ in 0..=q {
            out.push(cur.clone());
            cur = self.mul(&cur, &step);
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.inner.size as u128 - 1;
        let mut ord = group;
        for r in num::prime_factors_of_pow_minus_one(self.inner.p as u64, self.inner.degree as u32) {
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord as u64)
    }
}

impl Inner {
    fn raw_mul(&self, a: &[u32], b: &[u32]) -> Coords {
        let d = self.degree;
        let p = self.p as u64;
        let mut prod: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * d - 1);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x * y as u64;
            }
        }
        let mut out: SmallVec<[u64; 8]> = prod[..d].iter().map(|&v| v % p).collect();
        for (k, row) in self.reduce.iter().enumerate() {
            let coef = prod[d + k] % p;
            if coef == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o += coef * r as u64;
            }
        }
        out.iter().map(|&v| (v % p) as u32).collect()
    }

    fn raw_pow(&self, a: &[u32], mut exp: u128) -> Coords {
        let mut result: Coords = SmallVec::from_elem(0, self.degree);
        result[0] = 1;
        let mut base: Coords = SmallVec::from_slice(a);
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.raw_mul(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.raw_mul(&base, &base);
            }
        }
        result
    }

    fn apply(&self, m: &[u32], v: &[u32]) -> Coords {
        apply_fp(m, v, self.degree, self.p as u64)
    }

    fn find_generator(&self) -> Coords {
        let d = self.degree;
        let p = self.p as u64;
        let group = self.size as u128 - 1;
        let factors = num::prime_factors_of_pow_minus_one(p, d as u32);
        let mut one: Coords = SmallVec::from_elem(0, d);
        one[0] = 1;
        // walk coordinates with coords[0] as the most significant digit
        let mut cand: Coords = SmallVec::from_elem(0, d);
        loop {
            let mut i = d;
            loop {
                assert!(i > 0, "multiplicative group has a generator");
                i -= 1;
                cand[i] += 1;
                if (cand[i] as u64) < p {
                    break;
                }
                cand[i] = 0;
            }
            if factors.iter().all(|&r| self.raw_pow(&cand, group / r) != one) {
                return cand;
            }
        }
    }
}

fn apply_fp(m: &[u32], v: &[u32], d: usize, p: u64) -> Coords {
    (0..d)
        .map(|i| {
            let row = &m[i * d..(i + 1) * d];
            let s: u64 = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
            (s % p) as u32
        })
        .collect()
}

fn mat_mul_fp(a: &[u32], b: &[u32], d: usize, p: u64) -> Vec<u32> {
    let mut out = vec![0u32; d * d];
    for i in 0..d {
        for j in 0..d {
            let s: u64 = (0..d).map(|k| a[i * d + k] as u64 * b[k * d + j] as u64).sum();
            out[i * d + j] = (s % p) as u32;
        }
    }
    out
}

#[cfg(test)]
mod tests;
