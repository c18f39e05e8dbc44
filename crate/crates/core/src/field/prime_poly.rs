//! Dense polynomials over a prime field, used only to choose and validate moduli.

use crate::num;

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while a.len() > df {
        let top = a.len() - 1;
        let coef = a[top] * lead_inv % p;
        if coef != 0 {
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - coef * fi % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

fn pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    result
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Rabin's irreducibility test for a monic `f` over `F_p` (coefficients low-degree-first).
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = (f.len() - 1) as u32;
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^k) mod f for k = 0..=deg
    let mut frob = vec![rem(&x, &f, p)];
    for k in 1..=deg as usize {
        let next = pow_mod(&frob[k - 1], p, &f, p);
        frob.push(next);
    }
    if sub(&frob[deg as usize], &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in num::prime_factors(deg as u128) {
        let k = (deg as u128 / r) as usize;
        let g = gcd(&f, &sub(&frob[k], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `deg`,
/// comparing coefficients from the constant term upwards.
pub fn smallest_irreducible(p: u64, deg: usize) -> Vec<u64> {
    let mut tail = vec![0u64; deg];
    // x divides every candidate with c_0 = 0 once deg >= 2
    if deg >= 2 {
        tail[0] = 1;
    }
    // odometer over (c_0, ..., c_{deg-1}) with c_0 most significant
    loop {
        let mut f = tail.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut i = deg;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
        }
    }
}
