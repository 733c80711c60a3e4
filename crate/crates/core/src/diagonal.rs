//! Annihilating polynomials for the diagonal of a bivariate rational function.
//!
//! The diagonal of `A/B` is the sum of the residues of `A(t/y, y) / (y B(t/y, y))`
//! at the poles tending to 0 with `t`. Its annihilator is the composed sum of the
//! residue polynomial over the number of such small branches.

use num_traits::Zero;

use crate::bivar::{squarefree_bi, BiPoly, BiRational};
use crate::composed::{binomial, pure_composed_sum_bi};
use crate::corealg::{squarefree_uni, Rational, TruncSeries, UniPoly};
use crate::error::{Error, Result};
use crate::residues::{
    algebraic_residues_pq, check_input, expand_quotient_in_t, full_squarefree_part,
    residue_factor, ResidueOptions,
};

/// Diagonal degree: the largest `i - j` over the monomials `x^i y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiagDegree {
    pub value: i64,
}

pub fn ddeg(p: &BiPoly) -> Result<DiagDegree> {
    p.terms()
        .iter()
        .map(|(i, j, _)| *i as i64 - *j as i64)
        .max()
        .map(|value| DiagDegree { value })
        .ok_or(Error::ZeroPolynomial)
}

/// `p~` with `p(x/y, y) = y^(-ddeg p) p~(x, y)`.
pub fn substitute_diag(p: &BiPoly) -> Result<(DiagDegree, BiPoly)> {
    let dd = ddeg(p)?;
    let terms: Vec<(usize, usize, Rational)> = p.terms();
    let mut out = BiPoly::zero();
    for (i, j, a) in terms {
        let e = (j as i64 - i as i64 + dd.value) as usize;
        out = &out + &BiPoly::monomial(a, i, e);
    }
    Ok((dd, out))
}

/// Squarefree part including factors free of `y`; 1 for constants.
fn squarefree_part_full(b: &BiPoly) -> Result<BiPoly> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if b.deg_y() > 0 {
        return Ok(full_squarefree_part(&squarefree_bi(b)?));
    }
    let r = b.row(0);
    if r.deg() == 0 {
        return Ok(BiPoly::one());
    }
    Ok(BiPoly::from_x(squarefree_uni(&r)?.squarefree_part()))
}

/// Number of distinct branches `y(t)` of `q(t, y) = 0` tending to 0 with `t`.
pub fn count_small_branches(q: &BiPoly) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.val_x() != Some(0) {
        return Err(Error::DivisibleBySeriesVariable);
    }
    let star = squarefree_part_full(q)?;
    let vx = star.val_x().expect("nonzero");
    let col: Vec<Rational> = star.rows().iter().map(|r| r.coeff(vx)).collect();
    Ok(UniPoly::new(col).valuation().unwrap_or(0))
}

/// Quantities governing the size of the diagonal annihilator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagBounds {
    pub d_x: usize,
    pub d_y: usize,
    pub c: usize,
    pub epsilon: usize,
}

impl DiagBounds {
    pub fn for_fraction(a: &BiPoly, b: &BiPoly) -> Result<Self> {
        let dx = a.deg_x().max(b.deg_x());
        let dy = a.deg_y().max(b.deg_y());
        let star = squarefree_part_full(b)?;
        let (sx, sy) = star.bideg();
        let alpha = alpha(a, b)?;
        let epsilon = usize::from(alpha < 0);
        let nsmall = count_small_branches(&star)?;
        let c = nsmall as i64 + ddeg(&star)?.value + epsilon as i64;
        let (dx, dy, sx, sy) = (dx as i64, dy as i64, sx as i64, sy as i64);
        let eps = epsilon as i64;
        let d_x = 2 * sx * (dx - sx + dy - sy + 1) + dx * (2 * (sx + sy + eps) - 1);
        Ok(DiagBounds {
            d_x: d_x.max(0) as usize,
            d_y: (sx + sy + eps) as usize,
            c: c.max(0) as usize,
            epsilon,
        })
    }

    /// `(D_x binom(D_y, c), binom(D_y, c))`.
    pub fn bideg_bound(&self) -> (usize, usize) {
        let b = binomial(self.d_y, self.c);
        (self.d_x * b, b)
    }
}

fn alpha(a: &BiPoly, b: &BiPoly) -> Result<i64> {
    let da = if a.is_zero() { 0 } else { ddeg(a)?.value };
    Ok(ddeg(b)?.value - da - 1)
}

/// Output of [`algebraic_diagonal`]. `phi` has minor variable `t` and main variable `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAnnihilator {
    pub phi: BiPoly,
    pub bounds: DiagBounds,
    /// `phi(t, Diag f)` was checked to vanish modulo `t` to this power.
    pub series_check_depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalOptions {
    /// Treat the pole at `y = 0` separately when the numerator needs a `y`-shift;
    /// gives a smaller degree in `Δ`.
    pub optimize: bool,
    /// Precision of the built-in series check, 0 to skip it.
    pub check_depth: usize,
}

impl Default for DiagonalOptions {
    fn default() -> Self {
        DiagonalOptions {
            optimize: false,
            check_depth: 24,
        }
    }
}

fn check_origin(b: &BiPoly) -> Result<()> {
    if b.coeff(0, 0).is_zero() {
        return Err(Error::SingularAtOrigin);
    }
    Ok(())
}

pub fn algebraic_diagonal(f: &BiRational) -> Result<DiagonalAnnihilator> {
    algebraic_diagonal_with(f, DiagonalOptions::default())
}

pub fn algebraic_diagonal_with(f: &BiRational, opts: DiagonalOptions) -> Result<DiagonalAnnihilator> {
    let (a, b) = (f.numer(), f.denom());
    check_origin(b)?;
    let bounds = DiagBounds::for_fraction(a, b)?;
    let phi = if a.is_zero() {
        BiPoly::y()
    } else {
        let (da, at) = substitute_diag(a)?;
        let (db, bt) = substitute_diag(b)?;
        let alpha = db.value - da.value - 1;
        let (p, q) = if alpha >= 0 {
            (at.shift(0, alpha as usize), bt.clone())
        } else {
            (at.clone(), bt.shift(0, (-alpha) as usize))
        };
        let g = BiRational::new(&p, &q)?;
        let (p, q) = (g.numer(), g.denom());
        if q.deg_y() == 0 {
            // no poles in y: the residue sum is 0
            BiPoly::y()
        } else if opts.optimize && alpha < 0 {
            optimized(p, q, &at, &bt, (-alpha) as usize)?
        } else {
            let c = count_small_branches(q)?;
            if c == 0 {
                BiPoly::y()
            } else {
                let r = algebraic_residues_pq(p, q, ResidueOptions::default())?;
                pure_composed_sum_bi(&r.poly, c)?.poly
            }
        }
    };
    let phi = phi.primitive_positive();
    let (bx, by) = bounds.bideg_bound();
    if opts.optimize && bounds.epsilon == 1 {
        // the shift by a rational function of t can raise the degree in t
        let cap = binomial(bounds.d_y - 1, bounds.c - 1);
        if phi.deg_y() > cap {
            return Err(Error::Algorithm(format!("degree in Δ exceeds {cap}")));
        }
    } else if phi.deg_x() > bx || phi.deg_y() > by {
        return Err(Error::Algorithm(format!(
            "bidegree {:?} exceeds the bound ({bx}, {by})",
            phi.bideg()
        )));
    }
    let depth = opts.check_depth;
    if depth > 0 && !vanishes_on_series(&phi, &diagonal_series_naive(f, depth)?) {
        return Err(Error::Algorithm("annihilator fails the series check".into()));
    }
    Ok(DiagonalAnnihilator {
        phi,
        bounds,
        series_check_depth: depth,
    })
}

/// The pole at `y = 0` handled separately: its residue `r` is rational in `t`.
fn optimized(p: &BiPoly, q: &BiPoly, at: &BiPoly, bt: &BiPoly, k: usize) -> Result<BiPoly> {
    // residue at 0 of y^-k A~/B~ is [y^(k-1)] A~/B~
    let num: Vec<BiPoly> = at.rows().iter().map(|r| BiPoly::from_x(r.clone())).collect();
    let den: Vec<BiPoly> = bt.rows().iter().map(|r| BiPoly::from_x(r.clone())).collect();
    let r = expand_quotient_in_t(&num, &den, k)?.pop().expect("k >= 1");
    check_input(p, q)?;
    let c = count_small_branches(q)?;
    let rest = c - 1;
    let phi_rest = if rest == 0 {
        BiPoly::y()
    } else {
        let sqf = squarefree_bi(q)?;
        let mut rz = BiPoly::one();
        for (qi, i) in &sqf.factors {
            let target = if qi.val_y() == Some(0) {
                qi.clone()
            } else {
                qi.div_exact(&BiPoly::y()).expect("y divides")
            };
            if target.deg_y() == 0 {
                continue;
            }
            rz = &rz * &residue_factor(p, q, qi, *i, &target)?;
        }
        pure_composed_sum_bi(&rz.primitive_positive(), rest)?.poly
    };
    shift_raw(&phi_rest, &r)
}

fn shift_raw(phi: &BiPoly, r: &BiRational) -> Result<BiPoly> {
    if r.numer().deg_y() > 0 || r.denom().deg_y() > 0 {
        return Err(Error::OutOfRange("shift must not depend on Δ".into()));
    }
    let u = r.numer().row(0);
    let v = r.denom().row(0);
    let n = phi.deg_y();
    // sum_j phi_j (v Δ - u)^j v^(n-j)
    let lin = BiPoly::from_rows(vec![-&u, v.clone()]);
    let mut out = BiPoly::zero();
    let mut lin_pow = BiPoly::one();
    for j in 0..=n {
        let vp = v.pow((n - j) as u32);
        out = &out + &(&lin_pow * &BiPoly::from_x(&phi.row(j) * &vp));
        lin_pow = &lin_pow * &lin;
    }
    Ok(out.primitive_positive())
}

/// `phi(t, Δ - r)` with denominators cleared; `r` is a rational function of `t`
/// that is finite at 0.
pub fn shift_annihilator(phi: &BiPoly, r: &BiRational) -> Result<BiPoly> {
    if r.denom().coeff(0, 0).is_zero() {
        return Err(Error::PoleAtOrigin("shift has a pole at t = 0".into()));
    }
    shift_raw(phi, r)
}

/// First `n` diagonal coefficients `f_{k,k}` by direct expansion.
pub fn diagonal_series_naive(f: &BiRational, n: usize) -> Result<TruncSeries> {
    let (a, b) = (f.numer(), f.denom());
    check_origin(b)?;
    let b00 = b.coeff(0, 0);
    let bterms: Vec<(usize, usize, Rational)> = b
        .terms()
        .into_iter()
        .filter(|(i, j, _)| (*i, *j) != (0, 0))
        .collect();
    // c[i][j] for i, j < n
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = a.coeff(i, j);
            for (k, l, bkl) in &bterms {
                if *k <= i && *l <= j {
                    let prev = &c[i - k][j - l];
                    if !prev.is_zero() {
                        s -= bkl * prev;
                    }
                }
            }
            c[i][j] = s / &b00;
        }
    }
    Ok(TruncSeries::new((0..n).map(|k| c[k][k].clone()).collect()))
}

fn vanishes_on_series(phi: &BiPoly, s: &TruncSeries) -> bool {
    let n = s.precision();
    let mut acc = TruncSeries::zero(n);
    for row in phi.rows().iter().rev() {
        acc = &(&acc * s) + &TruncSeries::from_poly(row, n);
    }
    acc.is_zero()
}

/// Does `phi(t, s) = 0 mod t^n` for the first `n` diagonal coefficients `s`?
///
/// The series is exact to order `n`, so the check is exact to the same order.
pub fn certify(f: &BiRational, phi: &DiagonalAnnihilator, n: usize) -> Result<bool> {
    if n <= phi.phi.deg_x() {
        return Err(Error::InsufficientPrecision {
            need: phi.phi.deg_x() + 1,
            have: n,
        });
    }
    Ok(vanishes_on_series(&phi.phi, &diagonal_series_naive(f, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::rat;

    fn b(terms: &[(i64, usize, usize)]) -> BiPoly {
        BiPoly::from_terms(terms)
    }

    fn one_minus_x_minus_y() -> BiPoly {
        b(&[(1, 0, 0), (-1, 1, 0), (-1, 0, 1)])
    }

    #[test]
    fn ddeg_examples() {
        assert_eq!(ddeg(&b(&[(1, 2, 1)])).unwrap().value, 1);
        assert_eq!(ddeg(&one_minus_x_minus_y()).unwrap().value, 1);
        assert!(ddeg(&BiPoly::zero()).is_err());
    }

    #[test]
    fn substitution_examples() {
        let (d, p) = substitute_diag(&one_minus_x_minus_y()).unwrap();
        assert_eq!(d.value, 1);
        assert_eq!(p, b(&[(1, 0, 1), (-1, 1, 0), (-1, 0, 2)]));
        let (d, p) = substitute_diag(&b(&[(3, 2, 5)])).unwrap();
        assert_eq!(d.value, -3);
        assert_eq!(p, b(&[(3, 2, 0)]));
    }

    #[test]
    fn small_branches() {
        assert_eq!(count_small_branches(&b(&[(1, 0, 1), (-1, 1, 0), (-1, 0, 2)])).unwrap(), 1);
        for d in 1..=3usize {
            let q = b(&[(1, 0, d), (-1, d, 0), (-1, 0, 2 * d + 1)]);
            assert_eq!(count_small_branches(&q).unwrap(), d);
        }
        assert_eq!(count_small_branches(&BiPoly::y()).unwrap(), 1);
        assert_eq!(count_small_branches(&BiPoly::y().pow(2)).unwrap(), 1);
        assert!(count_small_branches(&BiPoly::x()).is_err());
    }

    #[test]
    fn golden_central_binomials() {
        let f = BiRational::new(&BiPoly::one(), &one_minus_x_minus_y()).unwrap();
        let r = algebraic_diagonal(&f).unwrap();
        assert_eq!(r.phi.to_string_vars("t", "D"), "(1-4*t)*D^2 - 1");
        let s = diagonal_series_naive(&f, 5).unwrap();
        assert_eq!(s, TruncSeries::from_ints(&[1, 2, 6, 20, 70]));
        assert!(certify(&f, &r, 50).unwrap());
    }

    #[test]
    fn squared_denominator() {
        let f = BiRational::new(&BiPoly::one(), &one_minus_x_minus_y().pow(2)).unwrap();
        assert_eq!(
            diagonal_series_naive(&f, 4).unwrap(),
            TruncSeries::from_ints(&[1, 6, 30, 140])
        );
        let r = algebraic_diagonal(&f).unwrap();
        let l = b(&[(1, 0, 0), (-4, 1, 0)]);
        assert_eq!(r.phi, &(&l.pow(3) * &BiPoly::y().pow(2)) - &BiPoly::one());
    }

    #[test]
    fn rejects_singular_and_checks_certify() {
        let f = BiRational::new(&BiPoly::one(), &BiPoly::x()).unwrap();
        assert_eq!(algebraic_diagonal(&f), Err(Error::SingularAtOrigin));
        let g = BiRational::new(&BiPoly::one(), &one_minus_x_minus_y()).unwrap();
        let mut r = algebraic_diagonal(&g).unwrap();
        assert!(certify(&g, &r, 1).is_err());
        r.phi = &r.phi + &BiPoly::one();
        assert!(!certify(&g, &r, 20).unwrap());
    }

    #[test]
    fn constant_and_polynomial_inputs() {
        let f = BiRational::from_poly(BiPoly::constant(rat(5)));
        assert_eq!(
            diagonal_series_naive(&f, 3).unwrap(),
            TruncSeries::from_ints(&[5, 0, 0])
        );
        let r = algebraic_diagonal(&f).unwrap();
        assert_eq!(r.phi, b(&[(1, 0, 1), (-5, 0, 0)]));
        // y/(1-y) has no diagonal terms
        let g = BiRational::new(&BiPoly::y(), &b(&[(1, 0, 0), (-1, 0, 1)])).unwrap();
        assert_eq!(algebraic_diagonal(&g).unwrap().phi, BiPoly::y());
    }

    #[test]
    fn optimization_lowers_degree() {
        // x/(1-x-y): alpha < 0, the pole at 0 has residue -1
        let f = BiRational::new(&BiPoly::x(), &one_minus_x_minus_y()).unwrap();
        let plain = algebraic_diagonal(&f).unwrap();
        let opts = DiagonalOptions {
            optimize: true,
            ..Default::default()
        };
        let fast = algebraic_diagonal_with(&f, opts).unwrap();
        assert!(fast.phi.deg_y() < plain.phi.deg_y());
        assert!(certify(&f, &fast, 30).unwrap());
        assert!(certify(&f, &plain, 30).unwrap());
    }

    #[test]
    fn shift_examples() {
        let phi = b(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(shift_annihilator(&phi, &BiRational::zero()).unwrap(), phi);
        // Δ - t shifted by 1/(1 - t): (1-t)Δ - t(1-t) - 1
        let r = BiRational::new(&BiPoly::one(), &b(&[(1, 0, 0), (-1, 1, 0)])).unwrap();
        let s = shift_annihilator(&phi, &r).unwrap();
        let expect = b(&[(1, 0, 1), (-1, 1, 1), (-1, 1, 0), (1, 2, 0), (-1, 0, 0)]);
        assert_eq!(s, expect.primitive_positive());
        let bad = BiRational::new(&BiPoly::one(), &BiPoly::x()).unwrap();
        assert!(shift_annihilator(&phi, &bad).is_err());
    }
}
