//! Library results checked against independent brute-force computations.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{composed_sum_by_compound, rand_bi, subset_sum_poly, subsets};
use ratdiag::bivar::{resultant_y, BiPoly, BiRational};
use ratdiag::composed::pure_composed_sum;
use ratdiag::corealg::{rat, Rational, TruncSeries, UniPoly};
use ratdiag::diagonal::{algebraic_diagonal, diagonal_series_naive};
use ratdiag::residues::{algebraic_residues, verify_residues_numeric};
use ratdiag::telescope::{telescoper, verify_telescoper};
use ratdiag::walks::{bridge_input, expand_walks, meander_input, naive_counts, StepSet};

/// Fraction-free Gaussian elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester determinant at formal degrees `a.len() - 1`, `b.len() - 1`.
fn sylvester_det(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    bareiss(rows)
}

/// Coefficients in `y` of an integer `p(x0, y)`, padded to `deg`.
fn int_row(p: &BiPoly, x0: i64, deg: usize) -> Vec<BigInt> {
    let u = p.eval_x(&rat(x0));
    (0..=deg).map(|j| u.coeff(j).to_integer()).collect()
}

#[test]
fn resultant_matches_sylvester() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let (px, py, qx, qy) = (rng.gen_range(0..=3), rng.gen_range(1..=4), rng.gen_range(0..=3), rng.gen_range(1..=4));
        let p = rand_bi(&mut rng, px, py, 0.6);
        let q = rand_bi(&mut rng, qx, qy, 0.6);
        if p.deg_y() == 0 || q.deg_y() == 0 {
            continue;
        }
        let r = resultant_y(&p, &q).unwrap();
        let bound = p.deg_x() * q.deg_y() + q.deg_x() * p.deg_y();
        // agreement at bound + 1 points pins the polynomial
        for x0 in -(bound as i64) / 2 - 1..=(bound as i64) / 2 + 1 {
            let det = sylvester_det(&int_row(&p, x0, p.deg_y()), &int_row(&q, x0, q.deg_y()));
            assert_eq!(r.eval(&rat(x0)), Rational::from_integer(det), "p={p} q={q} x0={x0}");
        }
    }
}

fn durand_kerner(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let a: Vec<Complex64> = c.iter().map(|v| Complex64::new(v / lc, 0.0)).collect();
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::new(0.4, 0.9).powu(k as u32)).collect();
    let eval = |x: Complex64| a.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c);
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::one();
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

#[test]
fn composed_sum_rational_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..15 {
        let d = rng.gen_range(1..=7);
        let roots: Vec<i64> = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
        let p = roots.iter().fold(UniPoly::one(), |acc, &r| &acc * &UniPoly::from_ints(&[-r, 1]));
        for c in 1..=d.min(4) {
            let expect = subsets(d, c).iter().fold(UniPoly::one(), |acc, s| {
                let sum: i64 = s.iter().map(|&i| roots[i]).sum();
                &acc * &UniPoly::from_ints(&[-sum, 1])
            });
            assert_eq!(pure_composed_sum(&p, c).unwrap().poly, expect, "roots {roots:?} c={c}");
        }
    }
}

#[test]
fn composed_sum_matches_additive_compound() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..12 {
        let d = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
        c.push(1);
        let p = UniPoly::from_ints(&c);
        for k in 1..=d.min(4) {
            assert_eq!(pure_composed_sum(&p, k).unwrap().poly, composed_sum_by_compound(&p, k), "p={p} c={k}");
        }
    }
    let roots: Vec<Rational> = [1, -2, 3, 3].iter().map(|&r| rat(r)).collect();
    let p = roots.iter().fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear_root(r.clone()));
    assert_eq!(composed_sum_by_compound(&p, 2), subset_sum_poly(&roots, 2));
}

#[test]
fn composed_sum_numeric_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let d = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
        c.push(1);
        let p = UniPoly::from_ints(&c);
        let roots = durand_kerner(&c.iter().map(|&v| v as f64).collect::<Vec<_>>());
        for k in 1..d {
            let out = pure_composed_sum(&p, k).unwrap().poly;
            assert_eq!(out.deg(), ratdiag::composed::binomial(d, k));
            let sums: Vec<Complex64> = subsets(d, k)
                .iter()
                .map(|s| s.iter().map(|&i| roots[i]).sum())
                .collect();
            // product of (y - sum) in floating point, rounded to integers
            let mut prod = vec![Complex64::one()];
            for s in &sums {
                let mut next = vec![Complex64::zero(); prod.len() + 1];
                for (i, a) in prod.iter().enumerate() {
                    next[i + 1] += a;
                    next[i] -= a * s;
                }
                prod = next;
            }
            for (i, a) in prod.iter().enumerate() {
                let exact = out.coeff(i).to_f64().unwrap();
                assert!(
                    (a.re - exact).abs() <= 1e-6 * exact.abs().max(1.0) && a.im.abs() < 1e-6 * exact.abs().max(1.0),
                    "p={p} c={k} coefficient {i}: {a} vs {exact}"
                );
            }
        }
    }
}

/// `[t^(m-1)] num(r + t) / rest(r + t)` over `Q`.
fn local_residue(num: &UniPoly, rest: &UniPoly, r: &Rational, m: usize) -> Rational {
    let shift = |p: &UniPoly| -> Vec<Rational> {
        // Taylor coefficients at r
        let mut out = Vec::new();
        let mut d = p.clone();
        let mut fact = Rational::one();
        for k in 0..m {
            if k > 0 {
                d = d.derivative();
                fact *= rat(k as i64);
            }
            out.push(d.eval(r) / &fact);
        }
        out
    };
    let (a, b) = (shift(num), shift(rest));
    // series division a / b to order m
    let mut q: Vec<Rational> = Vec::new();
    for k in 0..m {
        let mut s = a[k].clone();
        for j in 0..k {
            s -= &q[j] * &b[k - j];
        }
        q.push(s / &b[0]);
    }
    q[m - 1].clone()
}

#[test]
fn residues_exact_partial_fractions() {
    // q = (y - x)^2 (y + 1 - 2x) (y - 3)^3 with numerator 1 + x y
    let lin = |a: i64, b: i64| BiPoly::from_terms(&[(1, 0, 1), (a, 1, 0), (b, 0, 0)]);
    let factors = [(lin(-1, 0), 2usize), (lin(-2, 1), 1), (lin(0, -3), 3)];
    let q = factors.iter().fold(BiPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32));
    let p = BiPoly::from_terms(&[(1, 0, 0), (1, 1, 1)]);
    let f = BiRational::new(&p, &q).unwrap();
    let r = algebraic_residues(&f).unwrap();
    for x0 in [4i64, 5, -7] {
        let x0 = rat(x0);
        for (k, (fk, m)) in factors.iter().enumerate() {
            // root of y + a x + b
            let root = -(fk.coeff(1, 0) * &x0 + fk.coeff(0, 0));
            let rest = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(UniPoly::one(), |acc, (_, (g, e))| &acc * &g.eval_x(&x0).pow(*e as u32));
            let res = local_residue(&p.eval_x(&x0), &rest, &root, *m);
            let val = r.poly.eval(&x0, &res);
            assert!(val.is_zero(), "residue {res} at x = {x0}");
        }
    }
}

#[test]
fn residues_numeric() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 8 {
        let p = rand_bi(&mut rng, 2, 2, 0.6);
        let q = &rand_bi(&mut rng, 2, 2, 0.7) * &rand_bi(&mut rng, 1, 1, 0.9).pow(2);
        let Ok(f) = BiRational::new(&p, &q) else { continue };
        if f.denom().deg_y() == 0 || f.numer().is_zero() {
            continue;
        }
        let r = algebraic_residues(&f).unwrap();
        match verify_residues_numeric(&f, &r, &rat_frac(7, 3)) {
            Ok(rep) => {
                assert!(rep.max_residual < 1e-6, "{f}: {}", rep.max_residual);
                checked += 1;
            }
            Err(_) => continue,
        }
    }
}

fn rat_frac(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[test]
fn rothstein_trager_for_simple_poles() {
    // squarefree q: Res_y(p - z q_y, q) at sample points is proportional to R(x0, z0)
    let p = BiPoly::from_terms(&[(1, 0, 0), (2, 1, 1)]);
    let q = BiPoly::from_terms(&[(1, 0, 3), (-1, 1, 0), (1, 0, 1), (3, 1, 1)]);
    let f = BiRational::new(&p, &q).unwrap();
    let r = algebraic_residues(&f).unwrap().poly;
    let qy = q.derivative_y();
    let mut ratio: Option<Rational> = None;
    for x0 in [1i64, 2, 3] {
        for z0 in [-2i64, 1, 4] {
            let a = &p - &qy.scale(&rat(z0));
            let n = q.deg_y();
            let det = sylvester_det(&int_row(&a, x0, n - 1), &int_row(&q, x0, n));
            let v = r.eval(&rat(x0), &rat(z0));
            if v.is_zero() {
                assert!(det.is_zero());
                continue;
            }
            let k = Rational::from_integer(det) / v;
            match &ratio {
                None => ratio = Some(k),
                Some(k0) => assert_eq!(&k, k0, "x0={x0} z0={z0}"),
            }
        }
    }
}

/// Brute-force bivariate expansion of `a / b` and its diagonal.
fn diagonal_oracle(f: &BiRational, n: usize) -> Vec<Rational> {
    let (a, b) = (f.numer(), f.denom());
    let b00 = b.coeff(0, 0);
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = a.coeff(i, j);
            for k in 0..=i {
                for l in 0..=j {
                    if k + l > 0 {
                        s -= b.coeff(k, l) * &c[i - k][j - l];
                    }
                }
            }
            c[i][j] = s / &b00;
        }
    }
    (0..n).map(|i| c[i][i].clone()).collect()
}

#[test]
fn diagonal_series_and_annihilator() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 6 {
        let a = rand_bi(&mut rng, 1, 1, 0.6);
        let mut b = rand_bi(&mut rng, 1, 2, 0.6);
        if b.coeff(0, 0).is_zero() {
            b = &b + &BiPoly::one();
        }
        let Ok(f) = BiRational::new(&a, &b) else { continue };
        if f.numer().is_zero() || f.denom().deg_y() == 0 || f.denom().deg_x() == 0 {
            continue;
        }
        let n = 30;
        let diag = diagonal_oracle(&f, n);
        assert_eq!(diagonal_series_naive(&f, n).unwrap(), TruncSeries::new(diag.clone()));
        let phi = algebraic_diagonal(&f).unwrap().phi;
        if phi.deg_x() + 1 >= n {
            continue;
        }
        // phi(t, D(t)) mod t^n, by Horner in D over truncated series
        let s = TruncSeries::new(diag);
        let mut acc = TruncSeries::zero(n);
        for j in (0..=phi.deg_y()).rev() {
            acc = &(&acc * &s) + &TruncSeries::from_poly(&phi.row(j), n);
        }
        assert!(acc.is_zero(), "{f}: {phi}");
        done += 1;
    }
}

/// Every walk of length `n`, enumerated.
fn brute_force_walks(s: &StepSet, n: usize) -> (u64, u64, u64) {
    let steps = s.altitudes();
    let (mut bridges, mut excursions, mut meanders) = (0, 0, 0);
    let total = steps.len().pow(n as u32);
    for mut code in 0..total {
        let (mut alt, mut low) = (0i64, 0i64);
        for _ in 0..n {
            alt += steps[code % steps.len()];
            code /= steps.len();
            low = low.min(alt);
        }
        bridges += (alt == 0) as u64;
        excursions += (alt == 0 && low >= 0) as u64;
        meanders += (low >= 0) as u64;
    }
    (bridges, excursions, meanders)
}

#[test]
fn walks_against_enumeration() {
    for alt in [&[1, -1][..], &[1, 0, -1], &[2, 1, -2], &[3, -1]] {
        let s = StepSet::new(alt).unwrap();
        let c = naive_counts(&s, 9);
        for n in 0..=9 {
            let (b, e, m) = brute_force_walks(&s, n);
            assert_eq!(c.bridges[n], b.into(), "{s} n={n}");
            assert_eq!(c.excursions[n], e.into());
            assert_eq!(c.meanders[n], m.into());
        }
    }
    let s = StepSet::new(&[1, -1]).unwrap();
    let w = expand_walks(&s, 9).unwrap();
    for n in 0..=9 {
        let (b, e, m) = brute_force_walks(&s, n);
        assert_eq!(w.b.coeff(n), &rat(b as i64));
        assert_eq!(w.e.coeff(n), &rat(e as i64));
        assert_eq!(w.m.coeff(n), &rat(m as i64));
    }
}

#[test]
fn telescopers_kill_naive_series() {
    for alt in [&[1, -1][..], &[1, 0, -1], &[2, -1]] {
        let s = StepSet::new(alt).unwrap();
        let c = naive_counts(&s, 80);
        let to_series = |v: &[num_bigint::BigUint]| {
            TruncSeries::new(v.iter().map(|x| Rational::from_integer(BigInt::from(x.clone()))).collect())
        };
        let fb = bridge_input(&s);
        let tb = telescoper(&fb, s.amplitude()).unwrap();
        assert!(verify_telescoper(&fb, &tb));
        assert!(tb.ode.apply(&to_series(&c.bridges)).is_zero(), "{s}");
        let fm = meander_input(&s);
        let tm = telescoper(&fm, s.amplitude() + 1).unwrap();
        assert!(verify_telescoper(&fm, &tm));
        assert!(tm.ode.apply(&to_series(&c.negatives)).is_zero(), "{s}");
        assert!(c.negatives.iter().all(|v| !BigInt::from(v.clone()).is_negative()));
    }
}
