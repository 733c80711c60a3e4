use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{integer_nodes, BiPoly};
use crate::corealg::crt::Crt;
use crate::corealg::dense;
use crate::corealg::field::large_primes;
use crate::corealg::{Field, PrimeField, Rational, Rationals, UniPoly};
use crate::error::{Error, Result};

/// `Res_y(p, q)` as a polynomial in `x`, by evaluation at integer nodes and interpolation.
///
/// Both operands are taken at their full degree in `y`. Nodes where either leading
/// coefficient vanishes are skipped.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> Result<UniPoly> {
    if p.is_zero() || q.is_zero() {
        if p.deg_y() == 0 && q.deg_y() == 0 {
            return Err(Error::ConstantInMainVariable);
        }
        return Ok(UniPoly::zero());
    }
    let (dxp, dyp) = p.bideg();
    let (dxq, dyq) = q.bideg();
    if dyp == 0 && dyq == 0 {
        return Err(Error::ConstantInMainVariable);
    }
    let bound = dxp * dyq + dxq * dyp;
    let (lp, lq) = (p.lc_y(), q.lc_y());
    let nodes: Vec<Rational> = integer_nodes()
        .map(|k| Rational::from_integer(k.into()))
        .filter(|x| !lp.eval(x).is_zero() && !lq.eval(x).is_zero())
        .take(bound + 2)
        .collect();
    let at = |x: &Rational| {
        dense::resultant(&Rationals, p.eval_x(x).coeffs(), q.eval_x(x).coeffs())
    };
    let values: Vec<Rational> = nodes[..=bound].par_iter().map(at).collect();
    let r = UniPoly::new(
        dense::interpolate(&Rationals, &nodes[..=bound], &values).expect("distinct nodes"),
    );
    debug_assert!(r.deg() <= bound);
    debug_assert_eq!(r.eval(&nodes[bound + 1]), at(&nodes[bound + 1]));
    Ok(r)
}

/// Bivariate integer polynomial reduced modulo a prime, rows indexed by `y`.
struct ModBi {
    rows: Vec<Vec<u64>>,
}

impl ModBi {
    fn new(f: &PrimeField, rows: &[Vec<BigInt>]) -> Self {
        ModBi {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|c| f.reduce_bigint(c)).collect())
                .collect(),
        }
    }

    fn eval_x(&self, f: &PrimeField, x: u64) -> Vec<u64> {
        self.rows.iter().map(|r| dense::eval(f, r, &x)).collect()
    }
}

fn integer_rows(p: &BiPoly) -> Vec<Vec<BigInt>> {
    p.rows()
        .iter()
        .map(|r| r.coeffs().iter().map(|c| c.to_integer()).collect())
        .collect()
}

fn common_denominator(ps: &[&BiPoly]) -> BigInt {
    let mut l = BigInt::one();
    for p in ps {
        for r in p.rows() {
            for c in r.coeffs() {
                l = l.lcm(c.denom());
            }
        }
    }
    l
}

/// Resultant where `f` has formal degree `m`; `g` must keep its leading coefficient.
fn resultant_formal<F: Field>(fld: &F, f: &[F::El], m: usize, g: &[F::El]) -> F::El {
    let f = dense::trimmed(fld, f.to_vec());
    if f.is_empty() {
        return fld.zero();
    }
    let n = g.len() - 1;
    let mf = f.len() - 1;
    let mut r = dense::resultant(fld, &f, g);
    let drop = m - mf;
    if drop > 0 {
        r = fld.mul(&r, &fld.pow(&g[n], drop as u64));
        if (drop * n) % 2 == 1 {
            r = fld.neg(&r);
        }
    }
    r
}

fn bits(n: &BigInt) -> u64 {
    n.bits()
}

/// `Res_y(a - z*b, q)` as a polynomial in `z` with coefficients in `x`.
///
/// The result is returned as a [`BiPoly`] whose main variable is `z`. The first
/// argument is taken at formal degree `max(deg_y a, deg_y b)`; `q` must have
/// positive degree in `y`. Computed modulo enough primes to exceed a Hadamard-type
/// bound on the integer coefficients.
pub fn resultant_y_linear_z(a: &BiPoly, b: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    if q.is_zero() || q.deg_y() == 0 {
        return Err(Error::ConstantInMainVariable);
    }
    let n = q.deg_y();
    let m = a.deg_y().max(b.deg_y());
    if a.is_zero() && b.is_zero() {
        return Ok(BiPoly::zero());
    }
    let lam = common_denominator(&[a, b]);
    let mu = common_denominator(&[q]);
    let lam_r = Rational::from_integer(lam.clone());
    let mu_r = Rational::from_integer(mu.clone());
    let (ai, bi, qi) = (a.scale(&lam_r), b.scale(&lam_r), q.scale(&mu_r));
    let (ar, br, qr) = (integer_rows(&ai), integer_rows(&bi), integer_rows(&qi));

    // |coefficients| <= ||a - z b||_1^n ||q||_1^m
    let nf = (ai.norm1() + bi.norm1()).to_integer();
    let nq = qi.norm1().to_integer();
    let log_bound = bits(&nf) * n as u64 + bits(&nq) * m as u64 + 2;

    let bx = a.deg_x().max(b.deg_x()) * n + q.deg_x() * m;
    let bz = n;
    let lq = qr.last().expect("nonzero").clone();

    let image = |p: u64| -> Vec<u64> {
        let f = PrimeField::new(p);
        let (ma, mb, mq) = (ModBi::new(&f, &ar), ModBi::new(&f, &br), ModBi::new(&f, &qr));
        let lqm: Vec<u64> = lq.iter().map(|c| f.reduce_bigint(c)).collect();
        let xs: Vec<u64> = integer_nodes()
            .map(|k| f.from_i64(k))
            .filter(|x| dense::eval(&f, &lqm, x) != 0)
            .take(bx + 1)
            .collect();
        let zs: Vec<u64> = (0..=bz as i64).map(|k| f.from_i64(k)).collect();
        let zinterp = dense::Interpolator::new(&f, &zs).expect("distinct nodes");
        // per x node: coefficients in z
        let per_x: Vec<Vec<u64>> = xs
            .iter()
            .map(|&x0| {
                let (a0, b0, q0) = (ma.eval_x(&f, x0), mb.eval_x(&f, x0), mq.eval_x(&f, x0));
                let vals: Vec<u64> = zs
                    .iter()
                    .map(|z0| {
                        let len = a0.len().max(b0.len());
                        let fz: Vec<u64> = (0..len)
                            .map(|j| {
                                let aj = a0.get(j).copied().unwrap_or(0);
                                let bj = b0.get(j).copied().unwrap_or(0);
                                f.sub(&aj, &f.mul(z0, &bj))
                            })
                            .collect();
                        resultant_formal(&f, &fz, m, &q0)
                    })
                    .collect();
                let mut c = zinterp.interpolate(&f, &vals);
                c.resize(bz + 1, 0);
                c
            })
            .collect();
        // interpolate each z coefficient over x
        let interp = dense::Interpolator::new(&f, &xs).expect("distinct nodes");
        let mut flat = Vec::with_capacity((bz + 1) * (bx + 1));
        for k in 0..=bz {
            let ys: Vec<u64> = per_x.iter().map(|v| v[k]).collect();
            let mut c = interp.interpolate(&f, &ys);
            c.resize(bx + 1, 0);
            flat.extend(c);
        }
        flat
    };

    let mut crt = Crt::new();
    let mut primes = large_primes();
    while crt.modulus().bits() <= log_bound {
        let batch: Vec<u64> = (&mut primes).take(rayon::current_num_threads().max(1)).collect();
        let images: Vec<(u64, Vec<u64>)> = batch.into_par_iter().map(|p| (p, image(p))).collect();
        for (p, im) in images {
            crt.add(p, &im);
        }
    }
    let flat = crt.symmetric();
    // undo the scaling: Res(lam F, mu Q) = lam^n mu^m Res(F, Q)
    let scale = Rational::new(BigInt::one(), lam.pow(n as u32) * mu.pow(m as u32));
    let rows: Vec<UniPoly> = flat
        .chunks(bx + 1)
        .map(|c| UniPoly::from_bigints(c).scale(&scale))
        .collect();
    let r = BiPoly::from_rows(rows);
    debug_assert!(check_linear_z(a, b, q, m, &r));
    Ok(r)
}

fn check_linear_z(a: &BiPoly, b: &BiPoly, q: &BiPoly, m: usize, r: &BiPoly) -> bool {
    let lq = q.lc_y();
    let x0 = integer_nodes()
        .map(|k| Rational::from_integer((k + 7).into()))
        .find(|x| !lq.eval(x).is_zero())
        .unwrap();
    let z0 = Rational::new(BigInt::from(3), BigInt::from(2));
    let fz = (&a.eval_x(&x0) - &b.eval_x(&x0).scale(&z0)).into_coeffs();
    let direct = resultant_formal(&Rationals, &fz, m, q.eval_x(&x0).coeffs());
    r.eval(&x0, &z0) == direct
}
