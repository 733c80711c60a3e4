//! Dense bivariate polynomials over the rationals.
//!
//! A [`BiPoly`] is stored by rows: row `j` is the coefficient of `y^j`, itself a
//! polynomial in `x`. `y` is always the main variable; callers pick names at print time.

mod gcd;
mod rational;
mod resultant;
mod sqf;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::corealg::dense;
use crate::corealg::{Rational, Rationals, UniPoly};
use crate::error::{Error, Result};

pub use gcd::{bi_gcd, content_x, primitive_part_y};
pub use rational::{normalize_birational, BiRational};
pub use resultant::{resultant_y, resultant_y_linear_z};
pub use sqf::{squarefree_bi, SqfDecompBi};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    rows: Vec<UniPoly>,
}

impl BiPoly {
    pub fn from_rows(mut rows: Vec<UniPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    /// From `(coefficient, x exponent, y exponent)` triples; repeated monomials add up.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let mut acc = BiPoly::zero();
        for &(c, i, j) in terms {
            acc = &acc + &BiPoly::monomial(Rational::from_integer(c.into()), i, j);
        }
        acc
    }

    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_x(UniPoly::constant(c))
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: usize, j: usize) -> Self {
        let mut rows = vec![UniPoly::zero(); j + 1];
        rows[j] = UniPoly::monomial(c, i);
        Self::from_rows(rows)
    }

    /// A polynomial in `x` alone.
    pub fn from_x(p: UniPoly) -> Self {
        Self::from_rows(vec![p])
    }

    /// A polynomial in `y` alone.
    pub fn from_y(p: &UniPoly) -> Self {
        Self::from_rows(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<UniPoly> {
        self.rows
    }

    pub fn row(&self, j: usize) -> UniPoly {
        self.rows.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.rows.get(j).map_or_else(Rational::zero, |r| r.coeff(i))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(0)
    }

    /// `(deg_x, deg_y)`.
    pub fn bideg(&self) -> (usize, usize) {
        (self.deg_x(), self.deg_y())
    }

    /// Coefficient of the highest power of `y`.
    pub fn lc_y(&self) -> UniPoly {
        self.rows.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn is_constant_in_y(&self) -> bool {
        self.rows.len() <= 1
    }

    /// Lowest power of `y` present.
    pub fn val_y(&self) -> Option<usize> {
        self.rows.iter().position(|r| !r.is_zero())
    }

    /// Lowest power of `x` present.
    pub fn val_x(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.valuation()).min()
    }

    /// Nonzero terms as `(x exponent, y exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn mul_x_poly(&self, p: &UniPoly) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r * p).collect())
    }

    /// Multiply by `x^i y^j`.
    pub fn shift(&self, i: usize, j: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![UniPoly::zero(); j];
        rows.extend(self.rows.iter().map(|r| r.shift_up(i)));
        Self::from_rows(rows)
    }

    /// Divide every row by `p`, which must divide all of them.
    pub fn div_x_poly(&self, p: &UniPoly) -> Option<Self> {
        let rows: Option<Vec<UniPoly>> = self.rows.iter().map(|r| r.div_exact(p)).collect();
        rows.map(Self::from_rows)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, r)| r.scale(&Rational::from_integer((j as i64).into())))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.derivative()).collect())
    }

    /// Specialize `x = x0`, giving a polynomial in `y`.
    pub fn eval_x(&self, x0: &Rational) -> UniPoly {
        UniPoly::new(self.rows.iter().map(|r| r.eval(x0)).collect())
    }

    /// Specialize `y = y0`, giving a polynomial in `x`.
    pub fn eval_y(&self, y0: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(y0) + r;
        }
        acc
    }

    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        self.eval_x(x0).eval(y0)
    }

    /// Substitute a polynomial in `x` for `y`.
    pub fn eval_y_poly(&self, p: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &(&acc * p) + r;
        }
        acc
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        let dx = self.deg_x();
        if self.is_zero() {
            return self.clone();
        }
        Self::from_rows(
            (0..=dx)
                .map(|i| UniPoly::new(self.rows.iter().map(|r| r.coeff(i)).collect()))
                .collect(),
        )
    }

    /// Exact quotient by `b` in `Q[x][y]`, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &BiPoly) -> Option<BiPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let db = b.deg_y();
        let lb = b.lc_y();
        let mut r = self.rows.clone();
        if r.len() <= db {
            // Only possible when b is constant in y
            return None;
        }
        let mut q = vec![UniPoly::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = std::mem::take(&mut r[k + db]);
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(&lb)?;
            for (j, bj) in b.rows.iter().enumerate().take(db) {
                r[k + j] = &r[k + j] - &(&c * bj);
            }
            q[k] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(BiPoly::from_rows(q))
    }

    /// Pseudo-remainder `prem(self, b)` in `Q[x][y]`.
    pub fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_y();
        let lb = b.lc_y();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_y() >= db {
            let k = r.deg_y() - db;
            let lr = r.lc_y();
            r = &r.mul_x_poly(&lb) - &b.mul_x_poly(&lr).shift(0, k);
        }
        r
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn numeric_content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for r in &self.rows {
            for c in r.coeffs() {
                if !c.is_zero() {
                    g = g.gcd(c.numer());
                    l = l.lcm(c.denom());
                }
            }
        }
        if g.is_zero() {
            Rational::zero()
        } else {
            Rational::new(g, l)
        }
    }

    /// Sign of the normal form: that of the lowest-`x` coefficient of the leading row.
    fn leading_sign_negative(&self) -> bool {
        let lc = self.lc_y();
        lc.valuation()
            .is_some_and(|v| lc.coeff(v).is_negative())
    }

    /// Integer coefficients with content 1, sign fixed so that the lowest-degree
    /// coefficient (in `x`) of the leading coefficient in `y` is positive.
    pub fn normalize_numeric(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.numeric_content();
        if self.leading_sign_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// The numeric normalization of the primitive part with respect to `y`.
    pub fn primitive_positive(&self) -> BiPoly {
        primitive_part_y(self).normalize_numeric()
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(|r| r.is_integral())
    }

    /// Sum of absolute values of all coefficients.
    pub fn norm1(&self) -> Rational {
        self.rows
            .iter()
            .flat_map(|r| r.coeffs().iter())
            .fold(Rational::zero(), |a, c| a + c.abs())
    }

    /// Canonical text: `y` descending, multi-term `x` coefficients in parentheses.
    pub fn to_string_vars(&self, xv: &str, yv: &str) -> String {
        format_bi(self, xv, yv)
    }

    /// Interpolate from values at distinct `x` nodes; each value is a polynomial in `y`.
    pub fn interp_x(nodes: &[Rational], values: &[UniPoly]) -> Result<BiPoly> {
        assert_eq!(nodes.len(), values.len());
        for (a, n) in nodes.iter().enumerate() {
            if nodes[..a].contains(n) {
                return Err(Error::DuplicateNode(n.to_string()));
            }
        }
        let dy = values.iter().map(|v| v.coeffs().len()).max().unwrap_or(0);
        let rows = (0..dy)
            .map(|j| {
                let ys: Vec<Rational> = values.iter().map(|v| v.coeff(j)).collect();
                UniPoly::new(dense::interpolate(&Rationals, nodes, &ys).expect("distinct nodes"))
            })
            .collect();
        Ok(BiPoly::from_rows(rows))
    }
}

/// `eval_x` under its conventional free-function name.
pub fn eval_x(p: &BiPoly, x0: &Rational) -> UniPoly {
    p.eval_x(x0)
}

pub fn interp_x(nodes: &[Rational], values: &[UniPoly]) -> Result<BiPoly> {
    BiPoly::interp_x(nodes, values)
}

/// Integer evaluation nodes 0, 1, -1, 2, -2, ...
pub fn integer_nodes() -> impl Iterator<Item = i64> {
    (0i64..).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

fn format_minor(p: &UniPoly, xv: &str) -> String {
    let mut out = String::new();
    for (i, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&format_term(&a.abs(), &[(xv, i)]));
    }
    out
}

fn format_term(mag: &Rational, vars: &[(&str, usize)]) -> String {
    let monos: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if monos.is_empty() {
        return mag.to_string();
    }
    let m = monos.join("*");
    if mag.is_one() {
        m
    } else {
        format!("{mag}*{m}")
    }
}

fn format_bi(p: &BiPoly, xv: &str, yv: &str) -> String {
    let mut out = String::new();
    for (j, r) in p.rows.iter().enumerate().rev() {
        let nz: Vec<(usize, &Rational)> = r
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if nz.is_empty() {
            continue;
        }
        let (neg, body) = if nz.len() == 1 {
            let (i, a) = nz[0];
            (a.is_negative(), format_term(&a.abs(), &[(xv, i), (yv, j)]))
        } else {
            let inner = format!("({})", format_minor(r, xv));
            let body = match j {
                0 => inner,
                1 => format!("{inner}*{yv}"),
                _ => format!("{inner}*{yv}^{j}"),
            };
            (false, body)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.to_string_vars("x", "y"))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_vars("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let z = UniPoly::zero();
        BiPoly::from_rows(
            (0..n)
                .map(|j| self.rows.get(j).unwrap_or(&z) + rhs.rows.get(j).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let z = UniPoly::zero();
        BiPoly::from_rows(
            (0..n)
                .map(|j| self.rows.get(j).unwrap_or(&z) - rhs.rows.get(j).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![UniPoly::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::from_rows(rows)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_rows(self.rows.iter().map(|r| -r).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::rat;

    #[test]
    fn eval_and_interp() {
        let p = BiPoly::from_terms(&[(1, 0, 0), (-1, 1, 0), (-1, 0, 1)]);
        assert_eq!(p.eval_x(&rat(0)), UniPoly::from_ints(&[1, -1]));
        let nodes: Vec<Rational> = (0..3).map(rat).collect();
        let vals: Vec<UniPoly> = nodes.iter().map(|_| UniPoly::from_ints(&[2, 0, 1])).collect();
        let c = BiPoly::interp_x(&nodes, &vals).unwrap();
        assert_eq!(c, BiPoly::from_y(&UniPoly::from_ints(&[2, 0, 1])));
        assert!(BiPoly::interp_x(&[rat(1), rat(1)], &vals[..2]).is_err());
    }

    #[test]
    fn exact_division() {
        let a = BiPoly::from_terms(&[(1, 0, 1), (-1, 1, 0)]);
        let b = BiPoly::from_terms(&[(1, 0, 1), (1, 0, 0), (3, 2, 0)]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!((&ab + &BiPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn canonical_text() {
        // (1-4t) D^2 - 1
        let p = BiPoly::from_terms(&[(1, 0, 2), (-4, 1, 2), (-1, 0, 0)]);
        assert_eq!(p.to_string_vars("t", "D"), "(1-4*t)*D^2 - 1");
        assert_eq!((-&p).normalize_numeric(), p);
        let q = BiPoly::from_terms(&[(-3, 2, 1), (1, 0, 0)]);
        assert_eq!(q.to_string_vars("x", "y"), "-3*x^2*y + 1");
    }

    #[test]
    fn swap_and_nodes() {
        let p = BiPoly::from_terms(&[(2, 3, 1), (5, 0, 2)]);
        assert_eq!(p.swap().swap(), p);
        assert_eq!(p.swap().bideg(), (2, 3));
        let n: Vec<i64> = integer_nodes().take(5).collect();
        assert_eq!(n, vec![0, 1, -1, 2, -2]);
    }
}
