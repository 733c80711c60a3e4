use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense;
use super::crt::Crt;
use super::field::{large_primes, PrimeField, Rational, Rationals};

const Q: Rationals = Rationals;

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        UniPoly {
            coeffs: dense::trimmed(&Q, coeffs),
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| Rational::from_integer(v.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `y - a`.
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        dense::degree::<Rationals>(&self.coeffs)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly {
            coeffs: dense::scale(&Q, &self.coeffs, c),
        }
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    /// Drop the lowest `k` coefficients (exact division by `var^k` when they vanish).
    pub fn shift_down(&self, k: usize) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        UniPoly {
            coeffs: dense::pow(&Q, &self.coeffs, e),
        }
    }

    pub fn divrem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        let (q, r) = dense::divrem(&Q, &self.coeffs, &b.coeffs);
        (UniPoly { coeffs: q }, UniPoly { coeffs: r })
    }

    pub fn rem(&self, b: &UniPoly) -> UniPoly {
        self.divrem(b).1
    }

    pub fn div_exact(&self, b: &UniPoly) -> Option<UniPoly> {
        dense::div_exact(&Q, &self.coeffs, &b.coeffs).map(|coeffs| UniPoly { coeffs })
    }

    pub fn monic(&self) -> UniPoly {
        UniPoly {
            coeffs: dense::monic(&Q, &self.coeffs),
        }
    }

    /// Monic gcd, with `gcd(0, 0) = 0`.
    /// Monic gcd. Large inputs go through word-size primes, which avoids the
    /// coefficient growth of Euclid over the rationals.
    pub fn gcd(&self, b: &UniPoly) -> UniPoly {
        if self.is_zero() || b.is_zero() || self.deg().min(b.deg()) < 6 {
            return UniPoly {
                coeffs: dense::gcd(&Q, &self.coeffs, &b.coeffs),
            };
        }
        modular_gcd(self, b)
    }

    /// `(g, s, t)` with `s*self + t*b = g` monic.
    pub fn xgcd(&self, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (g, s, t) = dense::xgcd(&Q, &self.coeffs, &b.coeffs);
        (
            UniPoly { coeffs: g },
            UniPoly { coeffs: s },
            UniPoly { coeffs: t },
        )
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly {
            coeffs: dense::derivative(&Q, &self.coeffs),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        dense::eval(&Q, &self.coeffs, x)
    }

    /// `p(var + s)`.
    pub fn taylor_shift(&self, s: &Rational) -> UniPoly {
        UniPoly {
            coeffs: dense::taylor_shift(&Q, &self.coeffs, s),
        }
    }

    /// `p(q(var))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `var^deg p * p(1/var)`; trailing zeros of `p` drop out of the result.
    pub fn reciprocal(&self) -> UniPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        UniPoly::new(v)
    }

    pub fn resultant(&self, b: &UniPoly) -> Rational {
        dense::resultant(&Q, &self.coeffs, &b.coeffs)
    }

    /// Positive rational `c` with `self / c` integral and of content 1.
    pub fn content(&self) -> Rational {
        rational_content(&self.coeffs)
    }

    /// Integer coefficients, content 1, positive leading coefficient.
    pub fn primitive_positive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Numerators, assuming integral coefficients.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        debug_assert!(self.is_integral());
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn to_string_var(&self, var: &str) -> String {
        format_uni(&self.coeffs, var)
    }
}

fn modular_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut crt = Crt::new();
    let mut best = usize::MAX;
    let mut last: Option<Vec<Rational>> = None;
    for p in large_primes() {
        let f = PrimeField::new(p);
        let red = |u: &UniPoly| -> Option<Vec<u64>> {
            u.coeffs.iter().map(|c| f.reduce_rational(c)).collect()
        };
        let (Some(ap), Some(bp)) = (red(a), red(b)) else {
            continue;
        };
        if ap.last() == Some(&0) || bp.last() == Some(&0) {
            continue;
        }
        let g = dense::gcd(&f, &ap, &bp);
        let d = g.len() - 1;
        if d == 0 {
            return UniPoly::one();
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            crt = Crt::new();
            last = None;
        }
        crt.add(p, &g);
        let Some(c) = crt.rational() else {
            continue;
        };
        // two primes in a row agree: worth a trial division
        if last.as_ref() == Some(&c) {
            let cand = UniPoly::new(c.clone());
            if a.rem(&cand).is_zero() && b.rem(&cand).is_zero() {
                return cand;
            }
        }
        last = Some(c);
    }
    unreachable!("the prime iterator is infinite")
}

/// Positive `gcd(numerators) / lcm(denominators)`; zero for an all-zero slice.
pub fn rational_content(c: &[Rational]) -> Rational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for x in c {
        if x.is_zero() {
            continue;
        }
        g = g.gcd(x.numer());
        l = l.lcm(x.denom());
    }
    if g.is_zero() {
        return Rational::zero();
    }
    Rational::new(g, l)
}

/// Human-readable form in descending powers, e.g. `y^3 - 14*y^2 + 63*y - 90`.
pub fn format_uni(c: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly {
            coeffs: dense::add(&Q, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        UniPoly {
            coeffs: dense::sub(&Q, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly {
            coeffs: dense::mul(&Q, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: dense::neg(&Q, &self.coeffs),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::field::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1])), p(&[1]));
        let a = &p(&[-2, 1]).pow(3) * &p(&[1, 1]);
        let b = &p(&[-2, 1]) * &p(&[3, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, p(&[-2, 1]));
        assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
        assert!(UniPoly::zero().gcd(&UniPoly::zero()).is_zero());
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[3, 2, 1]).reciprocal(), p(&[1, 2, 3]));
        assert_eq!(p(&[0, 0, 1]).reciprocal(), p(&[1]));
        let q = p(&[5, 0, -1, 2]);
        assert_eq!(q.reciprocal().reciprocal(), q);
    }

    #[test]
    fn primitive_positive_form() {
        let q = UniPoly::new(vec![rat(-3) / rat(2), rat(0), rat(-9) / rat(4)]);
        assert_eq!(q.primitive_positive(), p(&[2, 0, 3]));
    }

    #[test]
    fn formatting() {
        assert_eq!(p(&[-90, 63, -14, 1]).to_string_var("y"), "y^3 - 14*y^2 + 63*y - 90");
        assert_eq!(p(&[]).to_string_var("y"), "0");
        assert_eq!(p(&[0, -1]).to_string_var("y"), "-y");
    }
}
