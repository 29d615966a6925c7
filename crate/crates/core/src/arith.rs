//! Small exact integer helpers shared by the symbol and class code.

use num_integer::Integer;

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m <= 0 {
        return None;
    }
    let eg = a.rem_euclid(m).extended_gcd(&m);
    if eg.gcd != 1 {
        return None;
    }
    Some(eg.x.rem_euclid(m))
}

/// Splits `n = p^k * u` with `p ∤ u`. `n` must be nonzero.
pub fn split_valuation(n: i128, p: i128) -> (u32, i128) {
    debug_assert!(n != 0 && p > 1);
    let mut k = 0;
    let mut u = n;
    while u % p == 0 {
        u /= p;
        k += 1;
    }
    (k, u)
}

/// Distinct prime divisors of `|n|`, ascending. `n` must be nonzero.
pub fn prime_divisors(n: i128) -> Vec<u64> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// The first `count` rational primes in increasing order.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(u / p)` for an odd prime `p` not dividing `u`, via Euler's criterion.
pub fn legendre(u: i128, p: u64) -> i8 {
    let p128 = p as u128;
    let r = u.rem_euclid(p as i128) as u128;
    debug_assert!(r != 0);
    if pow_mod(r, (p128 - 1) / 2, p128) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(-1, 5), Some(4));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn primes_and_divisors() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(prime_divisors(-360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(split_valuation(-24, 2), (3, -3));
    }

    #[test]
    fn legendre_small() {
        // squares mod 7: 1, 2, 4
        let qr: Vec<i8> = (1..7).map(|u| legendre(u, 7)).collect();
        assert_eq!(qr, vec![1, 1, -1, 1, -1, -1]);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 3), -1);
    }
}
