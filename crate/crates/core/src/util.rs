//! Small integer helpers shared by the algebra modules.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let a = a.rem_euclid(m);
    let g = a.extended_gcd(&m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m))
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = num_integer::Roots::sqrt(&n);
    (r * r == n).then_some(r)
}

/// `base^exp` as u128, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_divisors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_divisors(4095), vec![3, 5, 7, 13]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_pow(3, 4, 5), 1);
        assert_eq!(mod_inv(3, 5), Some(2));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(mod_inv(-1, 7), Some(6));
        assert_eq!(exact_sqrt(16), Some(4));
        assert_eq!(exact_sqrt(15), None);
        assert_eq!(exact_sqrt(-4), None);
    }
}
