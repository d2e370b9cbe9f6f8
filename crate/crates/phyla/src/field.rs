//! The prime field F_p: validation and scalar arithmetic.
//!
//! Every scalar is stored reduced, i.e. in `0..p`. Arithmetic goes through
//! `u128` intermediates so any prime below 2^31 is safe even for long
//! accumulations.

use crate::error::Error;

/// Largest admissible prime. Products of two reduced scalars then fit far
/// inside `u128` even when thousands of them are accumulated.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Smallest admissible prime; small characteristic would interfere with the
/// idempotent-lifting and trace-form arguments used downstream.
pub const MIN_PRIME: u64 = 101;

/// A validated prime field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    /// Validates that `p` is a prime in `[MIN_PRIME, MAX_PRIME]`.
    pub fn new(p: u64) -> Result<FieldSpec, Error> {
        if p < MIN_PRIME || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::FieldNotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `(a + b) mod p` for reduced inputs.
#[inline]
pub fn fadd(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// `(a - b) mod p` for reduced inputs.
#[inline]
pub fn fsub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// `-a mod p` for reduced input.
#[inline]
pub fn fneg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// `(a * b) mod p` for reduced inputs.
#[inline]
pub fn fmul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `a^e mod p` by square-and-multiply.
pub fn fpow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = fmul(p, acc, a);
        }
        a = fmul(p, a, a);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero reduced scalar (Fermat).
#[inline]
pub fn finv(p: u64, a: u64) -> u64 {
    debug_assert!(a != 0, "inverse of zero");
    fpow(p, a, p - 2)
}

/// Reduces an arbitrary signed integer into `0..p`.
#[inline]
pub fn freduce(p: u64, a: i64) -> u64 {
    let m = a.rem_euclid(p as i64);
    m as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_primes() {
        assert_eq!(FieldSpec::new(101).unwrap().p(), 101);
        assert_eq!(FieldSpec::new(103).unwrap().p(), 103);
        assert_eq!(FieldSpec::new(65537).unwrap().p(), 65537);
    }

    #[test]
    fn rejects_non_primes_and_small_fields() {
        assert!(FieldSpec::new(100).is_err());
        assert!(FieldSpec::new(105).is_err());
        // Primes below the floor are rejected even though they are prime.
        assert!(FieldSpec::new(97).is_err());
        assert!(FieldSpec::new(2).is_err());
        assert!(FieldSpec::new(0).is_err());
    }

    #[test]
    fn scalar_arithmetic_round_trips() {
        let p = 101;
        for a in 1..p {
            assert_eq!(fmul(p, a, finv(p, a)), 1, "a = {a}");
        }
        assert_eq!(fadd(p, 100, 1), 0);
        assert_eq!(fsub(p, 0, 1), 100);
        assert_eq!(fneg(p, 1), 100);
        assert_eq!(freduce(p, -2), 99);
        assert_eq!(freduce(p, 202), 0);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let p = 101;
        let mut acc = 1;
        for e in 0..20 {
            assert_eq!(fpow(p, 7, e), acc);
            acc = fmul(p, acc, 7);
        }
    }
}
