//! The field `Q(x)` of rational functions, for the dense kernels.

use num_traits::{One, Zero};

use super::field::{rat, Field, Rational};
use super::poly::UniPoly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        } else {
            (num, den)
        };
        let lc = den.lc().recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn derivative(&self) -> Self {
        if self.den.deg() == 0 {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }
}

/// The field `Q(x)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RatFuncs;

impl Field for RatFuncs {
    type El = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_poly(UniPoly::one())
    }
    fn from_i64(&self, n: i64) -> RatFunc {
        RatFunc::from_poly(UniPoly::constant(rat(n)))
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return RatFunc::new(&a.num + &b.num, a.den.clone());
        }
        RatFunc::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: -&a.num,
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den.deg() == 0 && b.den.deg() == 0 {
            return RatFunc::from_poly(&a.num * &b.num);
        }
        RatFunc::new(&a.num * &b.num, &a.den * &b.den)
    }
    fn inv(&self, a: &RatFunc) -> RatFunc {
        assert!(!a.is_zero(), "inverse of zero");
        RatFunc::new(a.den.clone(), a.num.clone())
    }
    fn is_one(&self, a: &RatFunc) -> bool {
        a.den.deg() == 0 && a.num.deg() == 0 && a.num.coeff(0).is_one()
    }
}

impl RatFunc {
    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        Self::from_poly(UniPoly::constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_normalizes() {
        let f = RatFuncs;
        let x = RatFunc::from_poly(UniPoly::from_ints(&[0, 1]));
        let one = f.one();
        // 1/(1-x) + 1/(1+x) = 2/(1-x^2)
        let a = f.inv(&f.sub(&one, &x));
        let b = f.inv(&f.add(&one, &x));
        let s = f.add(&a, &b);
        assert_eq!(s, RatFunc::new(UniPoly::from_ints(&[-2]), UniPoly::from_ints(&[-1, 0, 1])));
        assert!(f.is_one(&f.mul(&s, &f.inv(&s))));
        // d/dx 1/(1-x) = 1/(1-x)^2
        assert_eq!(a.derivative(), f.mul(&a, &a));
    }
}
