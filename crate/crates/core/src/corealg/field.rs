use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalars. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A field given as a context object.
///
/// Elements carry no reference to their field, so the same dense kernels can run
/// over the rationals, over a prime field chosen at runtime, or over rational
/// functions.
pub trait Field {
    type El: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, n: i64) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }

    fn from_usize(&self, n: usize) -> Self::El {
        self.from_i64(n as i64)
    }

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    /// Inverses of nonzero elements.
    fn batch_inv(&self, a: &[Self::El]) -> Vec<Self::El> {
        a.iter().map(|x| self.inv(x)).collect()
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type El = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        rat(n)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        assert!(!b.is_zero(), "division by zero");
        a / b
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
}

/// The prime field `Z/pZ` for an odd prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    // floor((2^128 - 1) / p), for Barrett reduction
    barrett: u128,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 63));
        PrimeField {
            p,
            barrett: u128::MAX / p as u128,
        }
    }

    #[inline]
    fn reduce_u128(&self, x: u128) -> u64 {
        // q underestimates x / p by at most a few units
        let (x1, x0) = (x >> 64, x & u64::MAX as u128);
        let (r1, r0) = (self.barrett >> 64, self.barrett & u64::MAX as u128);
        let q = x1 * r1 + ((x1 * r0) >> 64) + ((x0 * r1) >> 64);
        let p = self.p as u128;
        let mut r = x - q * p;
        while r >= p {
            r -= p;
        }
        r as u64
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        r.to_u64().expect("residue fits in u64")
    }

    /// Image of a rational whose denominator is invertible mod `p`.
    pub fn reduce_rational(&self, q: &Rational) -> Option<u64> {
        let d = self.reduce_bigint(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(&self.reduce_bigint(q.numer()), &self.inv(&d)))
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }
}

impl Field for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = (n as i128).rem_euclid(self.p as i128);
        r as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_u128(*a as u128 * *b as u128)
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero mod {}", self.p);
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(self.p as i128) as u64
    }
    fn batch_inv(&self, a: &[u64]) -> Vec<u64> {
        // one inversion and prefix products
        let mut prefix = Vec::with_capacity(a.len());
        let mut acc = 1u64;
        for x in a {
            prefix.push(acc);
            acc = self.mul(&acc, x);
        }
        let mut inv = self.inv(&acc);
        let mut out = vec![0u64; a.len()];
        for i in (0..a.len()).rev() {
            out[i] = self.mul(&inv, &prefix[i]);
            inv = self.mul(&inv, &a[i]);
        }
        out
    }
}

/// Primes just below 2^62, largest first.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let mut candidate: u64 = (1 << 62) - 1;
    std::iter::from_fn(move || loop {
        candidate -= 2;
        if is_prime_u64(candidate) {
            return Some(candidate);
        }
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
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
    fn prime_field_inverse() {
        let f = PrimeField::new(1_000_000_007);
        for a in [1u64, 2, 3, 999, 1_000_000_006] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 1_000_000_006);
    }

    #[test]
    fn barrett_matches_remainder() {
        let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
        for p in [3u64, 65_537, 1_000_000_007, (1 << 62) - 57, (1 << 63) - 25] {
            let f = PrimeField::new(p);
            for _ in 0..2000 {
                // xorshift
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let (a, b) = (x % p, x.rotate_left(29) % p);
                assert_eq!(f.mul(&a, &b), ((a as u128 * b as u128) % p as u128) as u64);
            }
            assert_eq!(f.mul(&(p - 1), &(p - 1)), 1);
        }
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < (1 << 62)));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(1_000_000_007));
    }
}
