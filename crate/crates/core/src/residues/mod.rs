//! A polynomial in `z` vanishing at every residue of a rational function in `y`,
//! with coefficients in `Q[x]`. Multiple poles are handled without the
//! exponential blowup of the classical multiple-pole resultant.

mod numeric;

use crate::bivar::{
    bi_gcd, primitive_part_y, resultant_y_linear_z, squarefree_bi, BiPoly, BiRational,
    SqfDecompBi,
};
use crate::corealg::{squarefree_uni, Rational, UniPoly};
use crate::error::{Error, Result};

pub use numeric::{verify_residues_numeric, NumericResidueReport};

/// Degree bounds on the residue polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBoundsResidues {
    pub z_bound: usize,
    pub x_bound: usize,
}

impl DegreeBoundsResidues {
    /// Bounds for `P/Q` with both parts of bidegree at most `(dx, dy)` and a squarefree
    /// part of `Q` of bidegree `(sx, sy)`.
    pub fn from_degrees(dx: usize, dy: usize, sx: usize, sy: usize) -> Self {
        let (dx, dy, sx, sy) = (dx as i64, dy as i64, sx as i64, sy as i64);
        let xb = 2 * sx * (dy + 1) + (2 * sy - 1) * dx - 2 * sx * sy;
        DegreeBoundsResidues {
            z_bound: sy as usize,
            x_bound: xb.max(0) as usize,
        }
    }
}

/// Output of [`algebraic_residues`]. `poly` has main variable `z` and minor variable `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePoly {
    pub poly: BiPoly,
    /// One factor per squarefree factor of the denominator, in increasing multiplicity.
    pub factors: Vec<BiPoly>,
    pub bounds: DegreeBoundsResidues,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResidueOptions {
    /// Replace the product by its squarefree part in `z`.
    pub squarefree: bool,
}

/// Truncated power series in `t` with polynomial coefficients.
fn taylor_in_t(p: &BiPoly, n: usize) -> Vec<BiPoly> {
    // [t^k] p(y + t) = p^(k)(y) / k!
    let mut out = Vec::with_capacity(n);
    let mut d = p.clone();
    for k in 0..n {
        if k > 0 {
            d = d.derivative_y().scale(&Rational::new(1.into(), (k as i64).into()));
        }
        out.push(d.clone());
    }
    out
}

fn mul_trunc_t(a: &[BiPoly], b: &[BiPoly], n: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// First `n` coefficients in `t` of `num(t) / den(t)`, each reduced.
/// `den[0]` must be nonzero.
pub fn expand_quotient_in_t(num: &[BiPoly], den: &[BiPoly], n: usize) -> Result<Vec<BiRational>> {
    let d0 = den.first().cloned().unwrap_or_else(BiPoly::zero);
    if d0.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let d0r = BiRational::from_poly(d0);
    let mut s: Vec<BiRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = BiRational::from_poly(num.get(j).cloned().unwrap_or_else(BiPoly::zero));
        for k in 1..=j {
            match den.get(k) {
                Some(dk) if !dk.is_zero() && !s[j - k].is_zero() => {
                    acc = acc.sub(&BiRational::from_poly(dk.clone()).mul(&s[j - k]));
                }
                _ => {}
            }
        }
        s.push(acc.div(&d0r)?);
    }
    Ok(s)
}

/// Coefficients `S_0..S_{i-1}` of `f(y + t)` in powers of `t`.
pub fn taylor_shift_coeffs(f: &BiRational, i: usize) -> Result<Vec<BiRational>> {
    let num = taylor_in_t(f.numer(), i);
    let den = taylor_in_t(f.denom(), i);
    expand_quotient_in_t(&num, &den, i)
}

/// Squarefree part of a univariate polynomial in `x` (monic), 1 for constants.
fn sqf_part_x(c: &UniPoly) -> UniPoly {
    if c.deg() == 0 {
        return UniPoly::one();
    }
    squarefree_uni(c).expect("nonzero").squarefree_part()
}

/// `Q*` including the squarefree part of the `x`-content.
pub(crate) fn full_squarefree_part(sqf: &SqfDecompBi) -> BiPoly {
    sqf.squarefree_part().mul_x_poly(&sqf_part_x(&sqf.content))
}

/// The residue factor for the squarefree factor `qi` of multiplicity `i` of `q`,
/// taking resultants against `target` (a divisor of `qi`).
pub(crate) fn residue_factor(
    p: &BiPoly,
    q: &BiPoly,
    qi: &BiPoly,
    i: usize,
    target: &BiPoly,
) -> Result<BiPoly> {
    let ui = q.div_exact(&qi.pow(i as u32)).expect("factor divides");
    // V_i(y, t) = (Q_i(y + t) - Q_i(y)) / t, truncated at t^i
    let qt = taylor_in_t(qi, i + 1);
    let vi: Vec<BiPoly> = qt[1..].to_vec();
    let mut vpow = vec![BiPoly::one()];
    for _ in 0..i {
        vpow = mul_trunc_t(&vpow, &vi, i);
    }
    let den = mul_trunc_t(&taylor_in_t(&ui, i), &vpow, i);
    let num = taylor_in_t(p, i);
    let s = expand_quotient_in_t(&num, &den, i)?;
    let last = &s[i - 1];
    let r = resultant_y_linear_z(last.numer(), last.denom(), target)?;
    Ok(primitive_part_y(&r))
}

/// Check that `p/q` is a valid input: coprime and not constant in `y`.
pub(crate) fn check_input(p: &BiPoly, q: &BiPoly) -> Result<()> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if q.deg_y() == 0 {
        return Err(Error::ConstantInMainVariable);
    }
    if !p.is_zero() && bi_gcd(p, q).deg_y() > 0 {
        return Err(Error::NotCoprime);
    }
    Ok(())
}

/// Residue polynomial of `p/q`, which must be coprime.
pub fn algebraic_residues_pq(p: &BiPoly, q: &BiPoly, opts: ResidueOptions) -> Result<ResiduePoly> {
    check_input(p, q)?;
    let sqf = squarefree_bi(q)?;
    let star = full_squarefree_part(&sqf);
    let (dx, dy) = (p.deg_x().max(q.deg_x()), p.deg_y().max(q.deg_y()));
    let bounds = DegreeBoundsResidues::from_degrees(dx, dy, star.deg_x(), star.deg_y());
    let mut factors = Vec::with_capacity(sqf.factors.len());
    for (qi, i) in &sqf.factors {
        factors.push(residue_factor(p, q, qi, *i, qi)?);
    }
    let mut poly = factors
        .iter()
        .fold(BiPoly::one(), |acc, r| &acc * r)
        .normalize_numeric();
    if opts.squarefree && poly.deg_y() > 0 {
        poly = full_squarefree_part(&squarefree_bi(&poly)?);
    }
    let poly = poly.primitive_positive();
    debug_assert!(poly.deg_y() <= bounds.z_bound && poly.deg_x() <= bounds.x_bound);
    Ok(ResiduePoly {
        poly,
        factors,
        bounds,
    })
}

/// Residue polynomial of `f`, whose denominator must depend on `y`.
pub fn algebraic_residues(f: &BiRational) -> Result<ResiduePoly> {
    algebraic_residues_pq(f.numer(), f.denom(), ResidueOptions::default())
}

pub fn algebraic_residues_with(f: &BiRational, opts: ResidueOptions) -> Result<ResiduePoly> {
    algebraic_residues_pq(f.numer(), f.denom(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::rat;

    fn bronstein_input(d: usize) -> BiRational {
        let q = BiPoly::from_terms(&[(1, 0, 1), (-1, 0, 2), (-1, 1, 0)]);
        BiRational::new(&BiPoly::y().pow(d as u32), &q.pow(d as u32 + 1)).unwrap()
    }

    #[test]
    fn golden_d1() {
        let r = algebraic_residues(&bronstein_input(1)).unwrap();
        // (1-4x)^3 z^2 - 1
        let l = BiPoly::from_terms(&[(1, 0, 0), (-4, 1, 0)]);
        let expect = &(&l.pow(3) * &BiPoly::y().pow(2)) - &BiPoly::one();
        assert_eq!(r.poly, expect);
        assert!(r.poly.deg_x() <= r.bounds.x_bound);
    }

    #[test]
    fn golden_d2() {
        let r = algebraic_residues(&bronstein_input(2)).unwrap();
        let l = BiPoly::from_terms(&[(1, 0, 0), (-4, 1, 0)]);
        let s = BiPoly::from_terms(&[(1, 0, 0), (2, 1, 0)]);
        let expect = &(&l.pow(5) * &BiPoly::y().pow(2)) - &s.pow(2);
        assert_eq!(r.poly, expect);
    }

    #[test]
    fn simple_poles_without_x() {
        let q = BiPoly::from_terms(&[(1, 0, 2), (-1, 0, 0)]);
        let r = algebraic_residues(&BiRational::new(&BiPoly::one(), &q).unwrap()).unwrap();
        // residues +-1/2: 4z^2 - 1
        assert_eq!(r.poly, BiPoly::from_terms(&[(4, 0, 2), (-1, 0, 0)]));
    }

    #[test]
    fn pure_pole_at_zero() {
        let f = BiRational::new(&BiPoly::one(), &BiPoly::y().pow(3)).unwrap();
        assert_eq!(algebraic_residues(&f).unwrap().poly, BiPoly::y());
    }

    #[test]
    fn taylor_examples() {
        let f = BiRational::from_poly(BiPoly::y().pow(2));
        let s = taylor_shift_coeffs(&f, 3).unwrap();
        let expect = [BiPoly::y().pow(2), BiPoly::y().scale(&rat(2)), BiPoly::one()];
        for (a, b) in s.iter().zip(expect) {
            assert_eq!(a.numer(), &b);
        }
        let g = bronstein_input(1);
        assert_eq!(taylor_shift_coeffs(&g, 1).unwrap()[0], g);
    }

    #[test]
    fn rejects_bad_input() {
        let q = BiPoly::from_terms(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(
            algebraic_residues_pq(&q, &q.pow(2), ResidueOptions::default()),
            Err(Error::NotCoprime)
        );
        assert_eq!(
            algebraic_residues_pq(&BiPoly::one(), &BiPoly::x(), ResidueOptions::default()),
            Err(Error::ConstantInMainVariable)
        );
    }
}
