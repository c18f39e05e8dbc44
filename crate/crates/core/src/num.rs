//! Small integer helpers shared by the field and counting layers.

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn pow(base: u128, exp: u32) -> u128 {
    checked_pow(base, exp).expect("integer power overflow")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn push_prime_factors(mut n: u128, out: &mut Vec<u128>) {
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
}

/// Distinct prime factors of `p^k - 1`.
///
/// Splits `p^k - 1` into cyclotomic values `Φ_d(p)` for `d | k` and trial-divides
/// each piece, which keeps every trial division below `sqrt(p^(k/2))`.
pub fn prime_factors_of_pow_minus_one(p: u64, k: u32) -> Vec<u128> {
    let divisors: Vec<u32> = (1..=k).filter(|d| k % d == 0).collect();
    let mut phi_values: Vec<(u32, u128)> = Vec::new();
    for &d in &divisors {
        let mut value = pow(p as u128, d) - 1;
        for &(e, v) in &phi_values {
            if d % e == 0 {
                value /= v;
            }
        }
        phi_values.push((d, value));
    }
    let mut out = Vec::new();
    for (_, v) in phi_values {
        push_prime_factors(v, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Distinct prime factors of an arbitrary `n` by trial division.
pub fn prime_factors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    push_prime_factors(n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_match_trial_division() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=12u32 {
                if checked_pow(p as u128, k).unwrap() > 1 << 40 {
                    continue;
                }
                let n = pow(p as u128, k) - 1;
                if n <= 1 {
                    continue;
                }
                assert_eq!(prime_factors_of_pow_minus_one(p, k), prime_factors(n), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(4));
    }

    #[test]
    fn gcd_lcm() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(1, 6), 6);
    }
}
