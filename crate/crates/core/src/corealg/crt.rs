//! Chinese remaindering of coefficient vectors over word-size primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::field::{Field, PrimeField};
use super::Rational;

/// Incremental Garner reconstruction of a vector of integers.
#[derive(Clone, Debug)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Default for Crt {
    fn default() -> Self {
        Self::new()
    }
}

impl Crt {
    pub fn new() -> Self {
        Crt {
            modulus: BigInt::one(),
            values: Vec::new(),
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_empty(&self) -> bool {
        self.modulus.is_one()
    }

    /// Fold in residues modulo a new prime. Vectors of different length are padded with zeros.
    pub fn add(&mut self, p: u64, residues: &[u64]) {
        let f = PrimeField::new(p);
        let n = self.values.len().max(residues.len());
        self.values.resize(n, BigInt::zero());
        let m_mod = f.reduce_bigint(&self.modulus);
        let m_inv = f.inv(&m_mod);
        let pb = BigInt::from(p);
        for (i, v) in self.values.iter_mut().enumerate() {
            let r = residues.get(i).copied().unwrap_or(0);
            let vr = f.reduce_bigint(v);
            let t = f.mul(&f.sub(&r, &vr), &m_inv);
            if t != 0 {
                *v += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= pb;
    }

    /// Representatives in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values
            .iter()
            .map(|v| if v > &half { v - &self.modulus } else { v.clone() })
            .collect()
    }

    /// Symmetric representative of entry `i` alone.
    pub fn symmetric_at(&self, i: usize) -> Option<BigInt> {
        let v = self.values.get(i)?;
        let half = &self.modulus >> 1;
        Some(if v > &half { v - &self.modulus } else { v.clone() })
    }

    /// Rational reconstruction of every entry, `None` if some entry fails.
    pub fn rational(&self) -> Option<Vec<Rational>> {
        self.values
            .par_iter()
            .map(|v| rational_reconstruct(v, &self.modulus))
            .collect()
    }

    /// Rational reconstruction of entry `i` alone.
    pub fn rational_at(&self, i: usize) -> Option<Rational> {
        rational_reconstruct(self.values.get(i)?, &self.modulus)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }
}

/// Find `a/b` with `|a|, |b| <= sqrt(m/2)` and `a = b*u mod m`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
