//! Helpers shared by the oracle and acceptance targets.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ratdiag::bivar::BiPoly;
use ratdiag::corealg::{Rational, UniPoly};

pub fn rand_bi(rng: &mut ChaCha8Rng, dx: usize, dy: usize, density: f64) -> BiPoly {
    let mut t = Vec::new();
    for i in 0..=dx {
        for j in 0..=dy {
            if rng.gen_bool(density) {
                t.push((rng.gen_range(-5..=5), i, j));
            }
        }
    }
    BiPoly::from_terms(&t)
}

pub fn subsets(n: usize, c: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, c: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, c, &mut Vec::new(), &mut out);
    out
}

/// `prod (y - sum of roots over S)` over all `c`-subsets `S`.
pub fn subset_sum_poly(roots: &[Rational], c: usize) -> UniPoly {
    subsets(roots.len(), c).iter().fold(UniPoly::one(), |acc, s| {
        let sum: Rational = s.iter().map(|&i| roots[i].clone()).sum();
        &acc * &UniPoly::new(vec![-sum, Rational::one()])
    })
}

/// Companion matrix of a monic polynomial.
fn companion(p: &UniPoly) -> Vec<Vec<Rational>> {
    let d = p.deg();
    let mut m = vec![vec![Rational::zero(); d]; d];
    for k in 0..d {
        if k + 1 < d {
            m[k + 1][k] = Rational::one();
        }
        m[k][d - 1] = -p.coeff(k);
    }
    m
}

/// Action of `A` on the `c`-th exterior power as a derivation. Its eigenvalues are
/// the sums of `c` eigenvalues of `A` with distinct indices.
fn additive_compound(a: &[Vec<Rational>], c: usize) -> Vec<Vec<Rational>> {
    let basis = subsets(a.len(), c);
    let index = |s: &[usize]| basis.iter().position(|b| b == s).unwrap();
    let n = basis.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (col, s) in basis.iter().enumerate() {
        for (pos, &j) in s.iter().enumerate() {
            for (k, row) in a.iter().enumerate() {
                let v = &row[j];
                if v.is_zero() || (k != j && s.contains(&k)) {
                    continue;
                }
                let mut t = s.clone();
                t[pos] = k;
                // sort back into place, counting transpositions
                let mut sign = 1;
                let mut i = pos;
                while i > 0 && t[i - 1] > t[i] {
                    t.swap(i - 1, i);
                    sign = -sign;
                    i -= 1;
                }
                while i + 1 < t.len() && t[i] > t[i + 1] {
                    t.swap(i, i + 1);
                    sign = -sign;
                    i += 1;
                }
                let r = index(&t);
                if sign > 0 {
                    m[r][col] += v;
                } else {
                    m[r][col] -= v;
                }
            }
        }
    }
    m
}

/// Characteristic polynomial by reduction to upper Hessenberg form.
fn charpoly(mut h: Vec<Vec<Rational>>) -> UniPoly {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| !h[i][k].is_zero()) else { continue };
        if p != k + 1 {
            h.swap(p, k + 1);
            for row in h.iter_mut() {
                row.swap(p, k + 1);
            }
        }
        for i in k + 2..n {
            if h[i][k].is_zero() {
                continue;
            }
            let f = &h[i][k] / &h[k + 1][k];
            for j in 0..n {
                let v = &f * &h[k + 1][j];
                h[i][j] -= v;
            }
            for row in h.iter_mut() {
                let v = &f * &row[i];
                row[k + 1] += v;
            }
        }
    }
    // p_m = det(y - H_m) for the leading m x m block
    let mut ps = vec![UniPoly::one()];
    for m in 1..=n {
        let mut p = &UniPoly::new(vec![-h[m - 1][m - 1].clone(), Rational::one()]) * &ps[m - 1];
        let mut prod = Rational::one();
        for i in (1..m).rev() {
            prod *= &h[i][i - 1];
            let t = &prod * &h[i - 1][m - 1];
            p = &p - &ps[i - 1].scale(&t);
        }
        ps.push(p);
    }
    ps.pop().unwrap()
}

/// The `c`-fold composed sum of a monic `p`, from linear algebra alone.
pub fn composed_sum_by_compound(p: &UniPoly, c: usize) -> UniPoly {
    charpoly(additive_compound(&companion(p), c))
}
