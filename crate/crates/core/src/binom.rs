//! Binomial and multinomial coefficients mod p.
//!
//! Everything goes through Lucas's theorem digit by digit in base p; no
//! big-integer factorials anywhere. That keeps coefficients of divided-power
//! operators and of Frobenius-twisted expansions exact for arbitrarily large
//! arguments.

use std::error::Error;
use std::fmt;

use crate::field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionError {
    pub n: u64,
    pub sum: u64,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "multinomial parts sum to {} but n = {}", self.sum, self.n)
    }
}

impl Error for PartitionError {}

/// binom(n, k) for digits n, k < p, by the multiplicative formula.
fn binom_digit(field: PrimeField, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for j in 0..k {
        num = field.mul(num, field.reduce(n - j));
        den = field.mul(den, field.reduce(j + 1));
    }
    if num == 0 {
        0
    } else {
        field.mul(num, field.inv(den))
    }
}

/// binom(n, k) mod p via Lucas: the product of digit binomials in base p.
pub fn binom_mod_p(field: PrimeField, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let p = field.modulus();
    let mut n = n;
    let mut k = k;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let bd = binom_digit(field, n % p, k % p);
        if bd == 0 {
            return 0;
        }
        acc = field.mul(acc, bd);
        n /= p;
        k /= p;
    }
    acc
}

/// Multinomial coefficient n! / (k_1! ... k_m!) mod p, where the parts must
/// sum to n. Computed as a product of binomials of prefix sums, each reduced
/// with Lucas, which is the same integer identity evaluated mod p.
pub fn multinomial_mod_p(
    field: PrimeField,
    n: u64,
    parts: &[u64],
) -> Result<u64, PartitionError> {
    let mut sum: u64 = 0;
    for &k in parts {
        sum = sum.checked_add(k).ok_or(PartitionError { n, sum: u64::MAX })?;
    }
    if sum != n {
        return Err(PartitionError { n, sum });
    }
    let mut acc = 1u64;
    let mut prefix = 0u64;
    for &k in parts {
        prefix += k;
        acc = field.mul(acc, binom_mod_p(field, prefix, k));
        if acc == 0 {
            // A later zero factor cannot resurrect the product.
            return Ok(0);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Exact binomials small enough for u128, as an independent oracle.
    fn binom_exact(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for j in 0..k.min(n - k) {
            acc = acc * (n - j) as u128 / (j + 1) as u128;
        }
        acc
    }

    #[test]
    fn named_values() {
        // binom(6, 5) = 6 mod 13.
        assert_eq!(binom_mod_p(fp(13), 6, 5), 6);
        // multinomial(4; 2,1,1) = 12 = 2 mod 5.
        assert_eq!(multinomial_mod_p(fp(5), 4, &[2, 1, 1]).unwrap(), 2);
        // binom(p^e - p, (p^e - p^2)/(p+1)) at p = 3, e = 2: binom(6, 0) = 1.
        assert_eq!(binom_mod_p(fp(3), 6, 0), 1);
        // Same shape deeper in the tower: p = 3, e = 4 gives binom(78, 18) = 1.
        assert_eq!(binom_mod_p(fp(3), 78, 18), 1);
        // binom(5, 2) = 10 = 1 mod 3 (divided-power example feeder).
        assert_eq!(binom_mod_p(fp(3), 5, 2), 1);
    }

    #[test]
    fn lucas_matches_exact_oracle() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = fp(p);
            for n in 0..=40u64 {
                for k in 0..=n {
                    assert_eq!(
                        binom_mod_p(f, n, k),
                        (binom_exact(n, k) % p as u128) as u64,
                        "binom({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn pascal_recurrence_holds() {
        let f = fp(7);
        for n in 1..200u64 {
            for k in 1..=n {
                let lhs = binom_mod_p(f, n, k);
                let rhs = f.add(binom_mod_p(f, n - 1, k - 1), binom_mod_p(f, n - 1, k));
                assert_eq!(lhs, rhs, "Pascal at ({n},{k})");
            }
        }
    }

    #[test]
    fn multinomial_partition_check() {
        let e = multinomial_mod_p(fp(5), 4, &[2, 1]).unwrap_err();
        assert_eq!(e, PartitionError { n: 4, sum: 3 });
        assert_eq!(multinomial_mod_p(fp(5), 0, &[]).unwrap(), 1);
    }

    #[test]
    fn multinomial_agrees_with_repeated_binomials() {
        let f = fp(3);
        // multinomial(n; a, b, c) = binom(a+b, a? ...) product form vs direct Lucas
        // on a digit-carry case: multinomial(4; 2, 2) = 6 = 0 mod 3.
        assert_eq!(multinomial_mod_p(f, 4, &[2, 2]).unwrap(), 0);
        // Vandermonde-style spot check at p = 5.
        let f5 = fp(5);
        assert_eq!(multinomial_mod_p(f5, 6, &[2, 2, 2]).unwrap(), 90 % 5);
    }
}
