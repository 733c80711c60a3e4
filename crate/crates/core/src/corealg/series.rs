use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::dense;
use super::field::{Field, Rational, Rationals};
use super::poly::UniPoly;
use crate::error::{Error, Result};

const Q: Rationals = Rationals;

// Generic kernels on coefficient slices. `n` is the output precision.

/// Inverse to precision `n`; `a[0]` must be invertible.
pub fn inv_kernel<F: Field>(f: &F, a: &[F::El], n: usize) -> Vec<F::El> {
    let i0 = f.inv(&a[0]);
    let mut g: Vec<F::El> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            g.push(i0.clone());
            continue;
        }
        let mut s = f.zero();
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            s = f.add(&s, &f.mul(&a[j], &g[k - j]));
        }
        g.push(f.neg(&f.mul(&s, &i0)));
    }
    g
}

/// `exp(a)` to precision `n`, assuming `a[0] = 0`. Uses `k g_k = sum j a_j g_{k-j}`.
pub fn exp_kernel<F: Field>(f: &F, a: &[F::El], n: usize) -> Vec<F::El> {
    let ja: Vec<F::El> = a
        .iter()
        .enumerate()
        .map(|(j, c)| f.mul(c, &f.from_usize(j)))
        .collect();
    let mut g: Vec<F::El> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            g.push(f.one());
            continue;
        }
        let mut s = f.zero();
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            if !f.is_zero(&ja[j]) {
                s = f.add(&s, &f.mul(&ja[j], &g[k - j]));
            }
        }
        g.push(f.div(&s, &f.from_usize(k)));
    }
    g
}

/// `log(a)` to precision `n`, assuming `a[0] = 1`.
pub fn log_kernel<F: Field>(f: &F, a: &[F::El], n: usize) -> Vec<F::El> {
    let get = |j: usize| a.get(j).cloned().unwrap_or_else(|| f.zero());
    let mut g: Vec<F::El> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            g.push(f.zero());
            continue;
        }
        // a * g' = a'  =>  k g_k = k a_k - sum_{j<k} j g_j a_{k-j}
        let mut s = f.mul(&get(k), &f.from_usize(k));
        for j in 1..k {
            let t = get(k - j);
            if !f.is_zero(&t) {
                s = f.sub(&s, &f.mul(&f.mul(&g[j], &f.from_usize(j)), &t));
            }
        }
        g.push(f.div(&s, &f.from_usize(k)));
    }
    g
}

/// Antiderivative with zero constant term, keeping precision `a.len()`.
pub fn integrate_kernel<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(f.zero());
    for k in 1..n {
        out.push(f.div(&a[k - 1], &f.from_usize(k)));
    }
    out
}

/// Power sums `p_0..p_{n-1}` of the roots of a nonzero polynomial `p`.
pub fn newton_kernel<F: Field>(f: &F, p: &[F::El], n: usize) -> Vec<F::El> {
    let p = dense::trimmed(f, p.to_vec());
    let d = p.len() - 1;
    let mut rp: Vec<F::El> = p.clone();
    rp.reverse();
    // rec_{d-1}(P') has coefficient j equal to (d-j) * p_{d-j}
    let rdp: Vec<F::El> = (0..d).map(|j| f.mul(&p[d - j], &f.from_usize(d - j))).collect();
    dense::mul_trunc(f, &rdp, &inv_kernel(f, &rp, n), n)
}

/// Monic degree-`d` polynomial from its power sums `s_0..s_d`.
pub fn from_newton_kernel<F: Field>(f: &F, s: &[F::El], d: usize) -> Vec<F::El> {
    // rec(P) = exp(-sum_{k>=1} s_k y^k / k)
    let mut h = vec![f.zero(); d + 1];
    for k in 1..=d {
        h[k] = f.neg(&f.div(&s[k], &f.from_usize(k)));
    }
    let mut r = exp_kernel(f, &h, d + 1);
    r.reverse();
    r
}

/// Power series truncated at a fixed precision (the coefficient count).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(&UniPoly::one(), n)
    }

    /// `1/(1-x)` to precision `n`.
    pub fn geometric(n: usize) -> Self {
        Self::new(vec![Rational::one(); n])
    }

    pub fn from_poly(p: &UniPoly, n: usize) -> Self {
        Self::new((0..n).map(|i| p.coeff(i)).collect())
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `S(k y)`.
    pub fn dilate(&self, k: i64) -> Self {
        let k = Rational::from_integer(k.into());
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= &k;
        }
        Self::new(out)
    }

    /// Formal derivative; precision drops by one.
    pub fn derivative(&self) -> Self {
        Self::new(dense_deriv(&self.coeffs))
    }

    /// Multiply by the variable; the top coefficient is lost.
    pub fn mul_x(&self) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return self.clone();
        }
        let mut v = vec![Rational::zero()];
        v.extend(self.coeffs[..n - 1].iter().cloned());
        Self::new(v)
    }

    /// Divide by the variable; the constant term must vanish, precision drops by one.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => Err(Error::OutOfRange(
                "division by the variable needs a zero constant term".into(),
            )),
            _ => Ok(Self::new(self.coeffs.iter().skip(1).cloned().collect())),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        series_inv(self)
    }
    pub fn exp(&self) -> Result<Self> {
        series_exp(self)
    }
    pub fn log(&self) -> Result<Self> {
        series_log(self)
    }
    pub fn integrate(&self) -> Self {
        series_integrate(self)
    }
}

fn dense_deriv(a: &[Rational]) -> Vec<Rational> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
        .collect()
}

pub fn series_inv(f: &TruncSeries) -> Result<TruncSeries> {
    match f.coeffs.first() {
        Some(c) if !c.is_zero() => Ok(TruncSeries::new(inv_kernel(&Q, &f.coeffs, f.precision()))),
        Some(_) => Err(Error::NotInvertible),
        None => Ok(f.clone()),
    }
}

pub fn series_exp(f: &TruncSeries) -> Result<TruncSeries> {
    match f.coeffs.first() {
        Some(c) if !c.is_zero() => Err(Error::ExpConstantTerm),
        _ => Ok(TruncSeries::new(exp_kernel(&Q, &f.coeffs, f.precision()))),
    }
}

pub fn series_log(f: &TruncSeries) -> Result<TruncSeries> {
    match f.coeffs.first() {
        Some(c) if c.is_one() => Ok(TruncSeries::new(log_kernel(&Q, &f.coeffs, f.precision()))),
        None => Ok(f.clone()),
        _ => Err(Error::LogConstantTerm),
    }
}

pub fn series_integrate(f: &TruncSeries) -> TruncSeries {
    TruncSeries::new(integrate_kernel(&Q, &f.coeffs))
}

/// Coefficientwise product.
pub fn hadamard(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    if a.precision() != b.precision() {
        return Err(Error::PrecisionMismatch(a.precision(), b.precision()));
    }
    Ok(TruncSeries::new(
        a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x * y).collect(),
    ))
}

/// Power sums of the roots of `p` (with multiplicity), to precision `n`.
pub fn newton_series(p: &UniPoly, n: usize) -> Result<TruncSeries> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(TruncSeries::new(newton_kernel(&Q, p.coeffs(), n)))
}

/// The monic polynomial of degree `d` with power sums `s`.
pub fn poly_from_newton(s: &TruncSeries, d: usize) -> Result<UniPoly> {
    if s.precision() < d + 1 {
        return Err(Error::InsufficientPrecision {
            need: d + 1,
            have: s.precision(),
        });
    }
    let d_rat = Rational::from_integer((d as i64).into());
    if s.coeffs[0] != d_rat {
        return Err(Error::InconsistentNewtonSeries(format!(
            "constant term {} differs from degree {d}",
            s.coeffs[0]
        )));
    }
    Ok(UniPoly::new(from_newton_kernel(&Q, &s.coeffs, d)))
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.coeffs.len())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.precision().min(rhs.precision());
        TruncSeries::new((0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.precision().min(rhs.precision());
        TruncSeries::new((0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.precision().min(rhs.precision());
        TruncSeries::new(dense::mul_trunc(&Q, &self.coeffs, &rhs.coeffs, n))
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
