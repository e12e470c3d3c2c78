//! Arithmetic in the prime field F_p.
//!
//! A [`PrimeField`] is a validated modulus; elements are plain `u64` values in
//! `[0, p)`. Every characteristic-p fact the rest of the crate leans on
//! (Fermat, Frobenius additivity, Lucas) assumes the modulus really is prime,
//! so construction checks primality up front.

use std::error::Error;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested modulus is 0, 1, or composite.
    NotPrime(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(n) => write!(f, "{n} is not a prime number"),
        }
    }
}

impl Error for FieldError {}

/// The field F_p for a machine-word prime p.
///
/// Cheap to copy; polynomials embed one so mixed-field operations can be
/// rejected instead of silently producing garbage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary unsigned value into `[0, p)`.
    pub fn reduce(&self, n: u64) -> u64 {
        n % self.p
    }

    /// Reduce a signed value into `[0, p)`.
    pub fn reduce_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b; // both < p <= 2^63 would overflow only for p > 2^63; reduce inputs first
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element, via Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64; the listed witnesses are known to be
/// exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        for n in [0u64, 1, 4, 6, 9, 15, 21, 25, 91, 561, 1_000_000] {
            assert_eq!(PrimeField::new(n), Err(FieldError::NotPrime(n)), "n = {n}");
        }
    }

    #[test]
    fn accepts_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 97, 65_537, 4_294_967_311] {
            assert!(PrimeField::new(p).is_ok(), "p = {p}");
        }
    }

    #[test]
    fn field_axioms_small_primes() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "a = {a}, p = {p}");
                    // Fermat: a^p = a.
                    assert_eq!(f.pow(a, p), a);
                }
                for b in 0..p {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    assert_eq!(f.mul(a, b), (a * b) % p);
                }
            }
        }
    }

    #[test]
    fn signed_reduction() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce_i64(-1), 6);
        assert_eq!(f.reduce_i64(-14), 0);
        assert_eq!(f.reduce_i64(15), 1);
    }
}
