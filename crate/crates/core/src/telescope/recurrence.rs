//! Linear ODEs with polynomial coefficients and the recurrences they induce.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::corealg::{rat, RatFunc, Rational, TruncSeries, UniPoly};
use crate::error::{Error, Result};

/// `sum_i coeffs[i](x) (d/dx)^i`, with integer coefficients of content 1. The
/// lowest-degree term of the top coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinODE {
    pub coeffs: Vec<UniPoly>,
}

impl LinODE {
    /// Normalizes; fails on the zero operator.
    pub fn new(coeffs: Vec<UniPoly>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let s = normalizer(&coeffs);
        Ok(LinODE {
            coeffs: coeffs.iter().map(|c| c.scale(&s)).collect(),
        })
    }

    /// Clear the denominators of `c`. Returns the operator and the polynomial `s`
    /// with `coeffs[i] = c[i] * s`.
    pub(crate) fn from_rational(c: &[RatFunc]) -> (Self, UniPoly) {
        let mut l = UniPoly::one();
        for ci in c {
            let g = l.gcd(ci.den());
            l = (&l * ci.den()).div_exact(&g).expect("gcd divides");
        }
        let polys: Vec<UniPoly> = c
            .iter()
            .map(|ci| ci.num() * &l.div_exact(ci.den()).expect("divides the lcm"))
            .collect();
        let mut g = UniPoly::zero();
        for p in &polys {
            g = g.gcd(p);
        }
        let l = l.div_exact(&g).expect("content divides");
        let polys: Vec<UniPoly> = polys.iter().map(|p| p.div_exact(&g).expect("divides")).collect();
        let s = normalizer(&polys);
        let ode = LinODE {
            coeffs: polys.iter().map(|p| p.scale(&s)).collect(),
        };
        (ode, l.scale(&s))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest degree of a coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    /// The operator applied to a truncated series; the result is exact to the
    /// precision of `s` minus the order.
    pub fn apply(&self, s: &TruncSeries) -> TruncSeries {
        let n = s.precision().saturating_sub(self.order());
        let mut acc = TruncSeries::zero(n);
        let mut d = s.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                d = d.derivative();
            }
            let term = &TruncSeries::from_poly(c, n) * &d.truncate(n);
            acc = &acc + &term;
        }
        acc
    }
}

/// Rational factor making the vector integral and primitive with the sign rule above.
fn normalizer(v: &[UniPoly]) -> Rational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for p in v {
        for c in p.coeffs() {
            if !c.is_zero() {
                g = g.gcd(c.numer());
                l = l.lcm(c.denom());
            }
        }
    }
    let s = Rational::new(l, g);
    let top = v.iter().rev().find(|p| !p.is_zero()).expect("nonzero");
    let low = top.coeff(top.valuation().expect("nonzero"));
    if low.is_negative() {
        -s
    } else {
        s
    }
}

/// `sum_k coeffs[k](n) u(n + k) = 0` for every `n >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRec {
    pub coeffs: Vec<UniPoly>,
    /// One more than the largest nonnegative integer root of the leading
    /// coefficient, 0 if there is none.
    pub singular_horizon: usize,
}

impl LinRec {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Initial terms `unroll` needs before the recurrence takes over.
    pub fn initial_terms(&self) -> usize {
        self.order() + self.singular_horizon
    }
}

/// `(m + k)(m + k - 1)...(m + k - i + 1)` as a polynomial in `m`.
fn falling(k: i64, i: usize) -> UniPoly {
    (0..i as i64).fold(UniPoly::one(), |acc, l| &acc * &UniPoly::from_ints(&[k - l, 1]))
}

/// Nonnegative integer roots of `p`, which has integer coefficients.
fn nonnegative_integer_roots(p: &UniPoly) -> Result<Vec<u64>> {
    let v = p.valuation().unwrap_or(0);
    let mut out = if v > 0 { vec![0] } else { Vec::new() };
    let q = p.shift_down(v);
    if q.deg() == 0 {
        return Ok(out);
    }
    let c0 = q.coeff(0).to_integer().abs();
    // Cauchy's bound on the size of the roots
    let lc = q.lc().abs();
    let bound = q.coeffs().iter().map(|c| c.abs() / &lc).fold(rat(0), |a, b| a.max(b)) + rat(1);
    let bound = bound.to_integer();
    let divisors: Vec<u64> = match bound.to_u64() {
        Some(b) if b <= 1_000_000 => (1..=b).filter(|k| (&c0 % k).is_zero()).collect(),
        _ => small_divisors(&c0)?,
    };
    out.extend(divisors.into_iter().filter(|&k| q.eval(&rat(k as i64)).is_zero()));
    Ok(out)
}

fn small_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .to_u128()
        .filter(|&v| v < 1u128 << 80)
        .ok_or_else(|| Error::Algorithm("constant term too large for root search".into()))?;
    let mut out = Vec::new();
    let mut k: u128 = 1;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            out.push(n / k);
        }
        k += 1;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out.into_iter().filter_map(|v| u64::try_from(v).ok()).collect())
}

/// The recurrence on the coefficients of power-series solutions.
pub fn ode_to_recurrence(ode: &LinODE) -> Result<LinRec> {
    // x^j (d/dx)^i sends u(m + i - j) (m+i-j)...(m-j+1) to x^m
    let mut terms: Vec<(i64, usize, Rational)> = Vec::new();
    for (i, c) in ode.coeffs.iter().enumerate() {
        for (j, cij) in c.coeffs().iter().enumerate() {
            if !cij.is_zero() {
                terms.push((i as i64 - j as i64, i, cij.clone()));
            }
        }
    }
    let smin = terms.iter().map(|t| t.0).min().expect("nonzero operator");
    let smax = terms.iter().map(|t| t.0).max().expect("nonzero operator");
    let mut coeffs = vec![UniPoly::zero(); (smax - smin + 1) as usize];
    for (s, i, c) in terms {
        let k = s - smin;
        coeffs[k as usize] = &coeffs[k as usize] + &falling(k, i).scale(&c);
    }
    let lead = coeffs.last().expect("nonempty");
    let singular_horizon = nonnegative_integer_roots(lead)?
        .into_iter()
        .max()
        .map_or(0, |r| r as usize + 1);
    Ok(LinRec {
        coeffs,
        singular_horizon,
    })
}

fn eval_int(p: &[BigInt], n: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * n + c)
}

fn check_initial(rec: &LinRec, initial: &TruncSeries, n: usize) -> Result<usize> {
    let need = rec.initial_terms().min(n);
    if initial.precision() < need {
        return Err(Error::InsufficientInitialTerms {
            need,
            have: initial.precision(),
        });
    }
    Ok(initial.precision().min(n))
}

/// First `n` terms of the sequence with the given initial terms.
pub fn unroll(rec: &LinRec, initial: &TruncSeries, n: usize) -> Result<TruncSeries> {
    let start = check_initial(rec, initial, n)?;
    if let Some(v) = unroll_integral(rec, &initial.coeffs()[..start], n) {
        return Ok(TruncSeries::new(v.into_iter().map(Rational::from_integer).collect()));
    }
    Ok(TruncSeries::new(unroll_rational(rec, &initial.coeffs()[..start], n)))
}

/// Same as [`unroll`], always in rational arithmetic.
pub fn unroll_rational_only(rec: &LinRec, initial: &TruncSeries, n: usize) -> Result<TruncSeries> {
    let start = check_initial(rec, initial, n)?;
    Ok(TruncSeries::new(unroll_rational(rec, &initial.coeffs()[..start], n)))
}

/// Integer arithmetic; `None` as soon as a division is inexact.
fn unroll_integral(rec: &LinRec, init: &[Rational], n: usize) -> Option<Vec<BigInt>> {
    if !init.iter().all(|c| c.is_integer()) || !rec.coeffs.iter().all(|c| c.is_integral()) {
        return None;
    }
    let r = rec.order();
    let polys: Vec<Vec<BigInt>> = rec.coeffs.iter().map(|c| c.integer_coeffs()).collect();
    let mut u: Vec<BigInt> = init.iter().map(|c| c.to_integer()).collect();
    u.reserve(n.saturating_sub(u.len()));
    while u.len() < n {
        let t = u.len();
        let m = BigInt::from(t - r);
        let mut acc = BigInt::zero();
        for k in 0..r {
            let c = eval_int(&polys[k], &m);
            if !c.is_zero() {
                acc += c * &u[t - r + k];
            }
        }
        let lead = eval_int(&polys[r], &m);
        let (q, rem) = (-acc).div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        u.push(q);
    }
    Some(u)
}

fn unroll_rational(rec: &LinRec, init: &[Rational], n: usize) -> Vec<Rational> {
    let r = rec.order();
    let mut u = init.to_vec();
    while u.len() < n {
        let t = u.len();
        let m = rat((t - r) as i64);
        let mut acc = Rational::zero();
        for k in 0..r {
            acc += rec.coeffs[k].eval(&m) * &u[t - r + k];
        }
        u.push(-acc / rec.coeffs[r].eval(&m));
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn central_binomial_recurrence() {
        // (1 - 4x) y' - 2y
        let ode = LinODE::new(vec![p(&[-2]), p(&[1, -4])]).unwrap();
        let rec = ode_to_recurrence(&ode).unwrap();
        // (n + 1) u(n+1) - (4n + 2) u(n)
        assert_eq!(rec.coeffs, vec![p(&[-2, -4]), p(&[1, 1])]);
        assert_eq!(rec.singular_horizon, 0);
        let s = unroll(&rec, &TruncSeries::from_ints(&[1]), 6).unwrap();
        assert_eq!(s, TruncSeries::from_ints(&[1, 2, 6, 20, 70, 252]));
    }

    #[test]
    fn exponential() {
        let ode = LinODE::new(vec![p(&[-1]), p(&[1])]).unwrap();
        let rec = ode_to_recurrence(&ode).unwrap();
        assert_eq!(rec.coeffs, vec![p(&[-1]), p(&[1, 1])]);
        let s = unroll(&rec, &TruncSeries::from_ints(&[1]), 5).unwrap();
        let expect: Vec<Rational> = [1, 1, 2, 6, 24].iter().map(|&k| rat(1) / rat(k)).collect();
        assert_eq!(s, TruncSeries::new(expect));
    }

    #[test]
    fn constant_sequence() {
        // u(n+1) - u(n): from (1 - x) y' - y
        let ode = LinODE::new(vec![p(&[-1]), p(&[1, -1])]).unwrap();
        let rec = ode_to_recurrence(&ode).unwrap();
        let s = unroll(&rec, &TruncSeries::from_ints(&[1]), 7).unwrap();
        assert_eq!(s, TruncSeries::from_ints(&[1; 7]));
    }

    #[test]
    fn singular_leading_coefficient() {
        // x y' - 2 y: solutions c x^2, recurrence (n - 2) u(n) = 0
        let ode = LinODE::new(vec![p(&[-2]), p(&[0, 1])]).unwrap();
        let rec = ode_to_recurrence(&ode).unwrap();
        assert_eq!(rec.order(), 0);
        assert_eq!(rec.singular_horizon, 3);
        assert!(unroll(&rec, &TruncSeries::from_ints(&[0, 0]), 6).is_err());
        let s = unroll(&rec, &TruncSeries::from_ints(&[0, 0, 5]), 6).unwrap();
        assert_eq!(s, TruncSeries::from_ints(&[0, 0, 5, 0, 0, 0]));
    }

    #[test]
    fn normalization() {
        let ode = LinODE::new(vec![p(&[3]), p(&[0, -6])]).unwrap();
        assert_eq!(ode.coeffs, vec![p(&[-1]), p(&[0, 2])]);
    }
}
