//! The polynomial whose roots are the sums of `c` roots of `P` with distinct indices.

mod modular;

use crate::corealg::series::{from_newton_kernel, newton_kernel};
use crate::corealg::{dense, Field, Rationals, TruncSeries, UniPoly};
use crate::error::{Error, Result};

pub use modular::pure_composed_sum_bi;

/// Output of a composed sum. `degree` is `binom(d, c)`, the degree in the main variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedSumResult<P> {
    pub poly: P,
    pub degree: usize,
    pub c: usize,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// `[z^c] exp(sum_{n=1}^c (-1)^(n-1) S(n y) z^n / n)` to precision `prec`.
pub(crate) fn psi_kernel<F: Field>(f: &F, s: &[F::El], c: usize, prec: usize) -> Vec<F::El> {
    // G_n(y) = (-1)^(n-1) S(n y) / n
    let g: Vec<Vec<F::El>> = (1..=c)
        .map(|n| {
            let nn = f.from_usize(n);
            let mut scale = f.inv(&nn);
            if n % 2 == 0 {
                scale = f.neg(&scale);
            }
            let mut pw = f.one();
            (0..prec)
                .map(|k| {
                    let v = f.mul(&f.mul(&s[k], &pw), &scale);
                    pw = f.mul(&pw, &nn);
                    v
                })
                .collect()
        })
        .collect();
    // k F_k = sum_{n=1}^k n G_n F_{k-n}
    let mut fz: Vec<Vec<F::El>> = vec![{
        let mut one = vec![f.zero(); prec];
        one[0] = f.one();
        one
    }];
    for k in 1..=c {
        let mut acc = vec![f.zero(); prec];
        for n in 1..=k {
            let prod = dense::mul_trunc(f, &g[n - 1], &fz[k - n], prec);
            let nn = f.from_usize(n);
            for (a, b) in acc.iter_mut().zip(prod) {
                *a = f.add(a, &f.mul(&nn, &b));
            }
        }
        let kinv = f.inv(&f.from_usize(k));
        fz.push(acc.iter().map(|a| f.mul(a, &kinv)).collect());
    }
    fz.pop().expect("c >= 1")
}

/// Monic `Sigma_c p` for `p` of exact degree `d >= c >= 1`.
pub(crate) fn composed_kernel<F: Field>(f: &F, p: &[F::El], c: usize) -> Vec<F::El> {
    let d = p.len() - 1;
    let big_d = binomial(d, c);
    let prec = big_d + 1;
    let n = newton_kernel(f, p, prec);
    // S = N ⊙ exp(y)
    let mut fact = f.one();
    let mut inv_fact = Vec::with_capacity(prec);
    let mut facts = Vec::with_capacity(prec);
    for k in 0..prec {
        if k > 0 {
            fact = f.mul(&fact, &f.from_usize(k));
        }
        facts.push(fact.clone());
        inv_fact.push(f.inv(&fact));
    }
    let s: Vec<F::El> = n.iter().zip(&inv_fact).map(|(a, b)| f.mul(a, b)).collect();
    let t = psi_kernel(f, &s, c, prec);
    let newton: Vec<F::El> = t.iter().zip(&facts).map(|(a, b)| f.mul(a, b)).collect();
    from_newton_kernel(f, &newton, big_d)
}

/// `Psi_c(S(y), S(2y), ..., S(cy))` truncated at precision `big_d + 1`.
pub fn psi_truncation(s: &TruncSeries, c: usize, big_d: usize) -> Result<TruncSeries> {
    if s.precision() < big_d + 1 {
        return Err(Error::InsufficientPrecision {
            need: big_d + 1,
            have: s.precision(),
        });
    }
    if c == 0 {
        return Err(Error::OutOfRange("c must be positive".into()));
    }
    Ok(TruncSeries::new(psi_kernel(&Rationals, s.coeffs(), c, big_d + 1)))
}

/// `Sigma_c p` over the rationals: monic of degree `binom(deg p, c)`.
pub fn pure_composed_sum(p: &UniPoly, c: usize) -> Result<ComposedSumResult<UniPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.deg();
    if c == 0 || c > d {
        return Err(Error::OutOfRange(format!("c = {c} must lie in 1..={d}")));
    }
    let poly = UniPoly::new(composed_kernel(&Rationals, p.coeffs(), c));
    let degree = binomial(d, c);
    debug_assert_eq!(poly.deg(), degree);
    Ok(ComposedSumResult { poly, degree, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::{newton_series, rat, Rational};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn from_roots(r: &[i64]) -> UniPoly {
        r.iter()
            .fold(UniPoly::one(), |acc, &a| &acc * &UniPoly::linear_root(rat(a)))
    }

    #[test]
    fn rational_roots() {
        let r = pure_composed_sum(&from_roots(&[1, 2, 4]), 2).unwrap();
        assert_eq!(r.poly, from_roots(&[3, 5, 6]));
        assert_eq!(r.poly.to_string_var("y"), "y^3 - 14*y^2 + 63*y - 90");
        assert_eq!(r.degree, 3);
    }

    #[test]
    fn edge_values_of_c() {
        let q = p(&[6, -5, 0, 2]);
        assert_eq!(pure_composed_sum(&q, 1).unwrap().poly, q.monic());
        // c = d: y - (sum of roots) = y + a_{d-1}/a_d
        assert_eq!(pure_composed_sum(&q, 3).unwrap().poly, p(&[0, 1]));
        assert_eq!(pure_composed_sum(&p(&[1, 0, 1]), 2).unwrap().poly, p(&[0, 1]));
        assert!(pure_composed_sum(&q, 4).is_err());
        assert!(pure_composed_sum(&q, 0).is_err());
    }

    #[test]
    fn psi_small_c() {
        let s = TruncSeries::from_ints(&[3, 1, 4, 1, 5]);
        assert_eq!(psi_truncation(&s, 1, 4).unwrap(), s);
        let two = psi_truncation(&s, 2, 4).unwrap();
        let expect = (&(&s * &s) - &s.dilate(2)).scale(&(rat(1) / rat(2)));
        assert_eq!(two, expect);
        assert!(psi_truncation(&s, 2, 5).is_err());
    }

    #[test]
    fn newton_identity_of_output() {
        let q = from_roots(&[1, -2, 5, 7]);
        let c = 2;
        let r = pure_composed_sum(&q, c).unwrap();
        let big_d = r.degree;
        let mut fact = rat(1);
        let inv_fact: Vec<Rational> = (0..=big_d)
            .map(|k| {
                if k > 0 {
                    fact *= rat(k as i64);
                }
                fact.recip()
            })
            .collect();
        let e = TruncSeries::new(inv_fact);
        let s = crate::corealg::hadamard(&newton_series(&q, big_d + 1).unwrap(), &e).unwrap();
        let lhs = crate::corealg::hadamard(&newton_series(&r.poly, big_d + 1).unwrap(), &e).unwrap();
        assert_eq!(lhs, psi_truncation(&s, c, big_d).unwrap());
    }
}
