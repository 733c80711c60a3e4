use std::fmt;

use super::{bi_gcd, BiPoly};
use num_traits::Zero;

use crate::corealg::Rational;
use crate::error::{Error, Result};

/// Reduced fraction of bivariate polynomials. The denominator has coprime integer
/// coefficients and the sign convention of [`BiPoly::normalize_numeric`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiRational {
    numer: BiPoly,
    denom: BiPoly,
}

/// Cancel common factors and fix the scaling of the denominator.
pub fn normalize_birational(a: &BiPoly, b: &BiPoly) -> Result<BiRational> {
    if b.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if a.is_zero() {
        return Ok(BiRational::zero());
    }
    let g = bi_gcd(a, b);
    let (a, b) = if g.bideg() == (0, 0) {
        (a.clone(), b.clone())
    } else {
        (
            a.div_exact(&g).expect("gcd divides numerator"),
            b.div_exact(&g).expect("gcd divides denominator"),
        )
    };
    Ok(BiRational::scaled(a, b))
}

impl BiRational {
    /// Rescale so the denominator is in normal form; assumes coprimality.
    fn scaled(a: BiPoly, b: BiPoly) -> Self {
        let nb = b.normalize_numeric();
        // nb = b / c for some rational c
        let (i, j, c0) = b.terms()[0].clone();
        let c = c0 / nb.coeff(i, j);
        BiRational {
            numer: a.scale(&c.recip()),
            denom: nb,
        }
    }

    pub fn new(a: &BiPoly, b: &BiPoly) -> Result<Self> {
        normalize_birational(a, b)
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiRational {
            numer: p,
            denom: BiPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn numer(&self) -> &BiPoly {
        &self.numer
    }

    pub fn denom(&self) -> &BiPoly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn add(&self, o: &BiRational) -> BiRational {
        if self.denom == o.denom {
            return normalize_birational(&(&self.numer + &o.numer), &self.denom).unwrap();
        }
        let n = &(&self.numer * &o.denom) + &(&o.numer * &self.denom);
        normalize_birational(&n, &(&self.denom * &o.denom)).unwrap()
    }

    pub fn neg(&self) -> BiRational {
        BiRational {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }

    pub fn sub(&self, o: &BiRational) -> BiRational {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiRational) -> BiRational {
        normalize_birational(&(&self.numer * &o.numer), &(&self.denom * &o.denom)).unwrap()
    }

    pub fn div(&self, o: &BiRational) -> Result<BiRational> {
        normalize_birational(&(&self.numer * &o.denom), &(&self.denom * &o.numer))
    }

    pub fn scale(&self, c: &Rational) -> BiRational {
        BiRational {
            numer: self.numer.scale(c),
            denom: self.denom.clone(),
        }
    }

    pub fn derivative_y(&self) -> BiRational {
        let n = &(&self.numer.derivative_y() * &self.denom)
            - &(&self.numer * &self.denom.derivative_y());
        normalize_birational(&n, &(&self.denom * &self.denom)).unwrap()
    }

    pub fn derivative_x(&self) -> BiRational {
        let n = &(&self.numer.derivative_x() * &self.denom)
            - &(&self.numer * &self.denom.derivative_x());
        normalize_birational(&n, &(&self.denom * &self.denom)).unwrap()
    }

    /// Value at a point, `None` where the denominator vanishes.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Option<Rational> {
        let d = self.denom.eval(x0, y0);
        if d.is_zero() {
            return None;
        }
        Some(self.numer.eval(x0, y0) / d)
    }

    pub fn to_string_vars(&self, xv: &str, yv: &str) -> String {
        let n = self.numer.to_string_vars(xv, yv);
        if self.denom == BiPoly::one() {
            n
        } else {
            format!("({n})/({})", self.denom.to_string_vars(xv, yv))
        }
    }
}

impl fmt::Debug for BiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiRational({})", self.to_string_vars("x", "y"))
    }
}

impl fmt::Display for BiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_vars("x", "y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::rat;

    #[test]
    fn normalization_examples() {
        let ym1 = BiPoly::from_terms(&[(1, 0, 1), (-1, 0, 0)]);
        let yp1 = BiPoly::from_terms(&[(1, 0, 1), (1, 0, 0)]);
        let f = normalize_birational(&(&ym1 * &yp1), &ym1).unwrap();
        assert_eq!(f.numer(), &yp1);
        assert_eq!(f.denom(), &BiPoly::one());

        let l = BiPoly::from_terms(&[(1, 0, 0), (-1, 1, 0), (-1, 0, 1)]);
        let f = normalize_birational(&(&BiPoly::x() * &l), &BiPoly::x()).unwrap();
        assert_eq!(f.numer(), &l);

        // scaling of the denominator moves into the numerator; the leading row
        // of 1 - x - y is negative, so the normal form is y + x - 1
        let f = normalize_birational(&BiPoly::one(), &l.scale(&rat(2))).unwrap();
        assert_eq!(f.denom(), &-&l);
        assert_eq!(f.numer(), &BiPoly::constant(rat(-1) / rat(2)));
        assert!(normalize_birational(&l, &BiPoly::zero()).is_err());
    }

    #[test]
    fn arithmetic() {
        let y = BiRational::from_poly(BiPoly::y());
        let inv = BiRational::one().div(&y).unwrap();
        let s = y.add(&inv); // (y^2+1)/y
        assert_eq!(s.denom(), &BiPoly::y());
        let d = inv.derivative_y();
        assert_eq!(d.numer(), &BiPoly::constant(rat(-1)));
        assert_eq!(d.denom(), &BiPoly::y().pow(2));
    }
}
