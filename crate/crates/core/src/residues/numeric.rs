//! Floating-point cross-check: residues from complex roots and local series.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::ResiduePoly;
use crate::bivar::{squarefree_bi, BiRational};
use crate::corealg::{Rational, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct NumericResidueReport {
    /// Residues at every pole, in no particular order.
    pub residues: Vec<Complex64>,
    /// Largest relative value of the residue polynomial at a residue.
    pub max_residual: f64,
}

fn to_c(q: &Rational) -> Complex64 {
    Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
}

/// All complex roots of a polynomial with nonzero leading coefficient (Aberth iteration).
pub fn complex_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    // Cauchy bound for the initial circle
    let rad = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(rad * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = horner(&monic, z[i]);
            let dp = horner(&deriv, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Coefficients of `p(a + t)`.
fn shift_at(c: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let mut c = c.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1] * a;
            c[j] += t;
        }
    }
    c
}

/// Residue at a pole `a` of order `k` of `p/q`, using the local expansion.
fn local_residue(p: &[Complex64], q: &[Complex64], a: Complex64, k: usize) -> Complex64 {
    let ps = shift_at(p, a);
    let qs = shift_at(q, a);
    // the first k coefficients of q(a + t) vanish up to rounding
    let h: Vec<Complex64> = qs[k..].to_vec();
    let mut g = vec![Complex64::zero(); k];
    for j in 0..k {
        let mut s = ps.get(j).copied().unwrap_or_default();
        for l in 1..=j {
            s -= h.get(l).copied().unwrap_or_default() * g[j - l];
        }
        g[j] = s / h[0];
    }
    g[k - 1]
}

/// Evaluate the residue polynomial at `x = x0` and check it vanishes at every
/// numerically computed residue of `f(x0, y)`.
pub fn verify_residues_numeric(
    f: &BiRational,
    r: &ResiduePoly,
    x0: &Rational,
) -> Result<NumericResidueReport> {
    let q = f.denom();
    if q.lc_y().eval(x0).is_zero() {
        return Err(Error::BadPoint(format!("leading coefficient vanishes at {x0}")));
    }
    let sqf = squarefree_bi(q)?;
    let star = sqf.squarefree_part().eval_x(x0);
    if star.deg() != sqf.squarefree_part().deg_y() || star.gcd(&star.derivative()).deg() > 0 {
        return Err(Error::BadPoint(format!("poles collide at {x0}")));
    }
    let pc: Vec<Complex64> = f.numer().eval_x(x0).coeffs().iter().map(to_c).collect();
    let qc: Vec<Complex64> = q.eval_x(x0).coeffs().iter().map(to_c).collect();
    let mut residues = Vec::new();
    for (qi, k) in &sqf.factors {
        let qi0: Vec<Complex64> = qi.eval_x(x0).coeffs().iter().map(to_c).collect();
        for a in complex_roots(&qi0) {
            residues.push(local_residue(&pc, &qc, a, *k));
        }
    }
    let rz: UniPoly = r.poly.swap().eval_y(x0);
    let rc: Vec<Complex64> = rz.coeffs().iter().map(to_c).collect();
    let max_residual = residues
        .iter()
        .map(|&z| {
            let scale: f64 = rc
                .iter()
                .enumerate()
                .map(|(k, c)| c.norm() * z.norm().powi(k as i32))
                .sum();
            horner(&rc, z).norm() / scale.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    Ok(NumericResidueReport {
        residues,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::BiPoly;
    use crate::corealg::{rat, rat_frac};
    use crate::residues::algebraic_residues;

    #[test]
    fn residues_of_one_over_y2_minus_1() {
        let q = BiPoly::from_terms(&[(1, 0, 2), (-1, 0, 0)]);
        let f = BiRational::new(&BiPoly::one(), &q).unwrap();
        let r = algebraic_residues(&f).unwrap();
        let rep = verify_residues_numeric(&f, &r, &rat(0)).unwrap();
        let mut re: Vec<f64> = rep.residues.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 0.5).abs() < 1e-12 && (re[1] - 0.5).abs() < 1e-12);
        assert!(rep.max_residual < 1e-12);
    }

    #[test]
    fn bronstein_example_at_one_eighth() {
        let q = BiPoly::from_terms(&[(1, 0, 1), (-1, 0, 2), (-1, 1, 0)]);
        let f = BiRational::new(&BiPoly::y(), &q.pow(2)).unwrap();
        let r = algebraic_residues(&f).unwrap();
        let rep = verify_residues_numeric(&f, &r, &rat_frac(1, 8)).unwrap();
        assert_eq!(rep.residues.len(), 2);
        assert!(rep.max_residual < 1e-9);
        // x = 1/4 is where the two poles merge
        assert!(verify_residues_numeric(&f, &r, &rat_frac(1, 4)).is_err());
    }
}
