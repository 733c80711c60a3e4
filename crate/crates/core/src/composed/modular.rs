//! `Sigma_c P` for `P` in `Q[x][y]`, by evaluation in `x` modulo word-size primes.
//!
//! The monic `Sigma_c P(x0, y)` has coefficients in `Q(x)` whose common denominator
//! `L(x)` divides a power of `a = lc_y P`. `L` is found modulo a few primes by
//! rational function reconstruction of a random linear combination of the
//! coefficients, then lifted to `Q[x]` through its chain of gcds with the
//! squarefree part of `a`. After that each prime only needs enough nodes to
//! interpolate the integral multiple `cont(a)^D prim(L) Sigma_c P`, and the images
//! are combined by Chinese remaindering until they stabilise and agree with a
//! fresh prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{binomial, composed_kernel, ComposedSumResult};
use crate::bivar::{integer_nodes, BiPoly};
use crate::corealg::crt::Crt;
use crate::corealg::dense::{self, Interpolator};
use crate::corealg::field::large_primes;
use crate::corealg::{squarefree_uni, Field, PrimeField, Rational, UniPoly};
use crate::error::{Error, Result};

/// Degrees of the denominator `L` and of `L * v` for the random combination `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Shape {
    dl: usize,
    dn: usize,
}

impl Shape {
    fn deg_x(&self) -> usize {
        self.dl.max(self.dn)
    }
}

/// Values of the monic `Sigma_c P(x_i, y)` modulo one prime.
struct Image {
    f: PrimeField,
    rows: Vec<Vec<u64>>,
    lc: Vec<u64>,
    c: usize,
    big_d: usize,
    weights: Vec<u64>,
    xs: Vec<u64>,
    sigmas: Vec<Vec<u64>>,
    node_iter: Box<dyn Iterator<Item = i64>>,
}

impl Image {
    fn new(p: u64, rows: &[Vec<BigInt>], c: usize, big_d: usize) -> Option<Self> {
        let f = PrimeField::new(p);
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|a| f.reduce_bigint(a)).collect())
            .collect();
        let lc = rows.last().expect("nonzero").clone();
        if lc.iter().all(|&a| a == 0) {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let weights = (0..=big_d).map(|_| rng.gen_range(1..p)).collect();
        Some(Image {
            f,
            rows,
            lc,
            c,
            big_d,
            weights,
            xs: Vec::new(),
            sigmas: Vec::new(),
            node_iter: Box::new(integer_nodes()),
        })
    }

    /// Make sure at least `n` nodes have been evaluated.
    fn ensure(&mut self, n: usize) {
        if self.xs.len() >= n {
            return;
        }
        let mut fresh = Vec::new();
        while self.xs.len() + fresh.len() < n {
            let k = self.node_iter.next().expect("infinite");
            let x = self.f.from_i64(k);
            if dense::eval(&self.f, &self.lc, &x) != 0 {
                fresh.push(x);
            }
        }
        let (f, rows, c) = (&self.f, &self.rows, self.c);
        let vals: Vec<Vec<u64>> = fresh
            .par_iter()
            .map(|x| {
                let p0: Vec<u64> = rows.iter().map(|r| dense::eval(f, r, x)).collect();
                composed_kernel(f, &p0, c)
            })
            .collect();
        self.xs.extend(fresh);
        self.sigmas.extend(vals);
    }

    fn combo(&self, i: usize) -> u64 {
        let f = &self.f;
        self.sigmas[i]
            .iter()
            .zip(&self.weights)
            .fold(0, |acc, (s, w)| f.add(&acc, &f.mul(s, w)))
    }

    /// `N/L` matching the combination at the first `k_total` nodes with `deg N < k`.
    fn reconstruct(&self, k_total: usize, k: usize) -> Option<(Vec<u64>, Vec<u64>)> {
        let vs: Vec<u64> = (0..k_total).map(|i| self.combo(i)).collect();
        ratrecon(&self.f, &self.xs[..k_total], &vs, k)
    }

    fn agrees(&self, n: &[u64], l: &[u64], i: usize) -> bool {
        let f = &self.f;
        let lv = dense::eval(f, l, &self.xs[i]);
        lv != 0 && f.mul(&self.combo(i), &lv) == dense::eval(f, n, &self.xs[i])
    }

    /// Degrees and the monic denominator, doubling the node count until the
    /// reconstruction is confirmed at two extra nodes.
    fn discover(&mut self, limit: usize) -> Result<(Shape, Vec<u64>)> {
        let mut k_total = 8;
        loop {
            self.ensure(k_total + 2);
            if let Some((n, l)) = self.reconstruct(k_total, k_total.div_ceil(2)) {
                if self.agrees(&n, &l, k_total) && self.agrees(&n, &l, k_total + 1) {
                    let shape = Shape {
                        dl: l.len() - 1,
                        dn: n.len().max(1) - 1,
                    };
                    return Ok((shape, l));
                }
            }
            k_total *= 2;
            if k_total > limit {
                return Err(Error::Algorithm(
                    "denominator reconstruction did not converge".into(),
                ));
            }
        }
    }

    /// The monic denominator for a known shape, `None` if this prime disagrees.
    fn denominator(&mut self, shape: Shape) -> Option<Vec<u64>> {
        let k_total = shape.dn + shape.dl + 1;
        self.ensure(k_total + 1);
        let (n, l) = self.reconstruct(k_total, shape.dn + 1)?;
        let ok = l.len() - 1 == shape.dl
            && n.len().max(1) - 1 == shape.dn
            && self.agrees(&n, &l, k_total);
        ok.then_some(l)
    }

    /// Coefficients of `mult * Sigma_c`, rows in `y` each padded to `m` entries,
    /// or `None` if the interpolants fail the check node.
    fn lifted(&mut self, mult: &[u64], m: usize) -> Option<Vec<u64>> {
        self.ensure(m + 1);
        let f = &self.f;
        let interp = Interpolator::new(f, &self.xs[..m]).expect("distinct nodes");
        let mv: Vec<u64> = self.xs.iter().map(|x| dense::eval(f, mult, x)).collect();
        let (xs, sig) = (&self.xs, &self.sigmas);
        let rows: Vec<Option<Vec<u64>>> = (0..=self.big_d)
            .into_par_iter()
            .map(|j| {
                let w: Vec<u64> = (0..xs.len()).map(|i| f.mul(&mv[i], &sig[i][j])).collect();
                let mut c = interp.interpolate(f, &w[..m]);
                let ok = (m..xs.len()).all(|i| dense::eval(f, &c, &xs[i]) == w[i]);
                c.resize(m, 0);
                ok.then_some(c)
            })
            .collect();
        let mut flat = Vec::with_capacity(m * (self.big_d + 1));
        for r in rows {
            flat.extend(r?);
        }
        Some(flat)
    }
}

/// Rational function reconstruction: `N/L` with `deg N < k`, `deg L <= xs.len() - k`,
/// `L` monic and nonzero at every node.
fn ratrecon(f: &PrimeField, xs: &[u64], vs: &[u64], k: usize) -> Option<(Vec<u64>, Vec<u64>)> {
    let v = dense::interpolate(f, xs, vs)?;
    let mut m = vec![1u64];
    for x in xs {
        m = dense::mul(f, &m, &[f.neg(x), 1]);
    }
    let (mut r0, mut r1) = (m, v);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while r1.len() > k {
        let (q, r) = dense::divrem(f, &r0, &r1);
        let t = dense::sub(f, &t0, &dense::mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let t1 = dense::trimmed(f, t1);
    if t1.is_empty() || t1.len() - 1 > xs.len() - k {
        return None;
    }
    if xs.iter().any(|x| dense::eval(f, &t1, x) == 0) {
        return None;
    }
    let inv = f.inv(t1.last().expect("nonzero"));
    Some((dense::scale(f, &r1, &inv), dense::scale(f, &t1, &inv)))
}

/// `S_1, S_2, ...` with `S_k` the product of the factors of `l` of multiplicity
/// at least `k`, each a monic divisor of the squarefree `a`.
fn gcd_chain(f: &PrimeField, a: &[u64], l: &[u64]) -> Vec<Vec<u64>> {
    let mut t = l.to_vec();
    let mut out = Vec::new();
    loop {
        let s = dense::gcd(f, a, &t);
        if s.len() <= 1 {
            return out;
        }
        t = dense::div_exact(f, &t, &s).expect("gcd divides");
        out.push(s);
    }
}

/// Lift the chains seen modulo several primes to monic divisors of `a` over `Q`.
fn lift_chain(a: &UniPoly, images: &[(u64, Vec<Vec<u64>>)]) -> Option<Vec<UniPoly>> {
    let len = images[0].1.len();
    let mut out: Vec<UniPoly> = Vec::with_capacity(len);
    for k in 0..len {
        let mut crt = Crt::new();
        for (p, chain) in images {
            crt.add(*p, &chain[k]);
        }
        let s = UniPoly::new(crt.rational()?);
        if s.is_zero() || !a.rem(&s).is_zero() {
            return None;
        }
        if let Some(prev) = out.last() {
            if !prev.rem(&s).is_zero() {
                return None;
            }
        }
        out.push(s);
    }
    Some(out)
}

fn integer_rows(p: &BiPoly) -> Vec<Vec<BigInt>> {
    let mut den = BigInt::one();
    for r in p.rows() {
        for a in r.coeffs() {
            den = den.lcm(a.denom());
        }
    }
    let s = Rational::from_integer(den);
    p.rows().iter().map(|r| r.scale(&s).integer_coeffs()).collect()
}

fn reduce(f: &PrimeField, p: &UniPoly) -> Option<Vec<u64>> {
    p.coeffs().iter().map(|a| f.reduce_rational(a)).collect()
}

/// Evaluation data shared by every prime.
struct Problem<'a> {
    rows: &'a [Vec<BigInt>],
    c: usize,
    big_d: usize,
    limit: usize,
}

impl Problem<'_> {
    fn image(&self, p: u64) -> Option<Image> {
        Image::new(p, self.rows, self.c, self.big_d)
    }
}

/// The exact monic denominator `L` over `Q`, from per-prime images.
fn exact_denominator(
    pb: &Problem,
    a: &UniPoly,
    shape: &mut Shape,
    first: (u64, Vec<u64>),
    primes: &mut impl Iterator<Item = u64>,
) -> Result<UniPoly> {
    if shape.dl == 0 {
        return Ok(UniPoly::one());
    }
    let a_sqf = squarefree_uni(a)?.squarefree_part();
    let mut images: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    let mut pending = Some(first);
    loop {
        let (p, l) = match pending.take() {
            Some(x) => x,
            None => {
                let p = primes.next().expect("enough primes");
                let Some(mut img) = pb.image(p) else {
                    continue;
                };
                match img.denominator(*shape) {
                    Some(l) => (p, l),
                    None => {
                        let (s2, l2) = img.discover(pb.limit)?;
                        if s2.dl >= shape.dl && s2.dn >= shape.dn && s2 != *shape {
                            // the earlier primes were unlucky
                            *shape = s2;
                            images.clear();
                            (p, l2)
                        } else {
                            continue;
                        }
                    }
                }
            }
        };
        let f = PrimeField::new(p);
        let Some(ap) = reduce(&f, &a_sqf) else {
            continue;
        };
        let chain = gcd_chain(&f, &ap, &l);
        let total: usize = chain.iter().map(|s| s.len() - 1).sum();
        if total != shape.dl {
            continue;
        }
        let profile = |ch: &[Vec<u64>]| ch.iter().map(|s| s.len()).collect::<Vec<_>>();
        if let Some((_, c0)) = images.first() {
            if profile(c0) != profile(&chain) {
                // a mismatch means an unlucky prime; keep the latest profile
                images.clear();
            }
        }
        images.push((p, chain));
        if let Some(ss) = lift_chain(&a_sqf, &images) {
            let l = ss.iter().fold(UniPoly::one(), |acc, s| &acc * s);
            if l.deg() == shape.dl {
                return Ok(l);
            }
        }
    }
}

/// Does the candidate `mult * Sigma_c` agree with a direct computation modulo `p`?
fn check_candidate(pb: &Problem, cand: &[BigInt], m: usize, p: u64) -> bool {
    let Some(mut img) = pb.image(p) else {
        return false;
    };
    let reduced: Vec<u64> = cand.iter().map(|a| img.f.reduce_bigint(a)).collect();
    // a node away from the ones used for interpolation
    img.node_iter = Box::new(integer_nodes().skip(2 * m + 17));
    img.ensure(1);
    let f = &img.f;
    let x = img.xs[0];
    let at: Vec<u64> = reduced.chunks(m).map(|r| dense::eval(f, r, &x)).collect();
    let lead = at[pb.big_d];
    if lead == 0 {
        return false;
    }
    let inv = f.inv(&lead);
    at.iter().zip(&img.sigmas[0]).all(|(a, s)| f.mul(a, &inv) == *s)
}

/// `Sigma_c p` with polynomial coefficients in `x`: the primitive polynomial in `y`
/// of degree `binom(deg_y p, c)` whose roots are the sums of `c` distinct roots of `p`.
pub fn pure_composed_sum_bi(p: &BiPoly, c: usize) -> Result<ComposedSumResult<BiPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (dx, d) = p.bideg();
    if c == 0 || c > d {
        return Err(Error::OutOfRange(format!("c = {c} must lie in 1..={d}")));
    }
    let big_d = binomial(d, c);
    let rows = integer_rows(p);
    let a = UniPoly::from_bigints(rows.last().expect("nonzero"));
    let pb = Problem {
        rows: &rows,
        c,
        big_d,
        limit: 4 * (dx * big_d + 4),
    };
    let mut primes = large_primes();

    let (mut shape, first) = loop {
        let q = primes.next().expect("enough primes");
        if let Some(mut img) = pb.image(q) {
            let (s, l) = img.discover(pb.limit)?;
            break (s, (q, l));
        }
    };
    let l = exact_denominator(&pb, &a, &mut shape, first, &mut primes)?;
    // cont(a)^D prim(L) Sigma_c is integral
    let mult = l
        .primitive_positive()
        .scale(&a.content().pow(big_d as i32));
    let mult_z = mult.integer_coeffs();
    let m = shape.deg_x() + 1;

    let mut crt = Crt::new();
    let mut prev: Option<Vec<BigInt>> = None;
    let mut probe_prev: Option<Vec<BigInt>> = None;
    loop {
        let q = primes.next().expect("enough primes");
        let Some(mut img) = pb.image(q) else {
            continue;
        };
        let mp: Vec<u64> = mult_z.iter().map(|v| img.f.reduce_bigint(v)).collect();
        let Some(im) = img.lifted(&mp, m) else {
            // a wrong degree guess fails the check node for every prime
            return Err(Error::Algorithm("composed sum interpolation check failed".into()));
        };
        crt.add(q, &im);
        let n = crt.len();
        let probe: Vec<BigInt> = (0..16)
            .map(|i| (i * 7919 + n - 1) % n)
            .chain(std::iter::once(n - 1))
            .map(|i| crt.symmetric_at(i).expect("in range"))
            .collect();
        let stable = probe_prev.as_ref() == Some(&probe);
        probe_prev = Some(probe);
        if !stable {
            continue;
        }
        let cand = crt.symmetric();
        if prev.as_ref() != Some(&cand) {
            prev = Some(cand);
            continue;
        }
        let fresh = primes.next().expect("enough primes");
        if !check_candidate(&pb, &cand, m, fresh) {
            continue;
        }
        let out_rows: Vec<UniPoly> = cand.chunks(m).map(UniPoly::from_bigints).collect();
        let poly = BiPoly::from_rows(out_rows).primitive_positive();
        debug_assert!(poly.deg_y() == big_d && poly.deg_x() <= dx * big_d);
        return Ok(ComposedSumResult {
            poly,
            degree: big_d,
            c,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composed::pure_composed_sum;
    use crate::corealg::rat;

    #[test]
    fn linear_roots_in_x() {
        // (y - x)(y - 2x)(y - x^2), pairwise sums 3x, x + x^2, 2x + x^2
        let f = |a: i64, b: usize| BiPoly::from_terms(&[(1, 0, 1), (-a, b, 0)]);
        let p = &(&f(1, 1) * &f(2, 1)) * &f(1, 2);
        let r = pure_composed_sum_bi(&p, 2).unwrap();
        let g = |terms: &[(i64, usize, usize)]| BiPoly::from_terms(terms);
        let expect = &(&f(3, 1) * &g(&[(1, 0, 1), (-1, 1, 0), (-1, 2, 0)]))
            * &g(&[(1, 0, 1), (-2, 1, 0), (-1, 2, 0)]);
        assert_eq!(r.poly, expect);
        assert_eq!(r.degree, 3);
    }

    #[test]
    fn nontrivial_denominator() {
        // x y^2 - y - 1: roots sum to 1/x, so Sigma_2 = y - 1/x, primitive x y - 1
        let p = BiPoly::from_terms(&[(1, 1, 2), (-1, 0, 1), (-1, 0, 0)]);
        let r = pure_composed_sum_bi(&p, 2).unwrap();
        assert_eq!(r.poly, BiPoly::from_terms(&[(1, 1, 1), (-1, 0, 0)]));
    }

    #[test]
    fn specializes_to_univariate() {
        let p = BiPoly::from_terms(&[(2, 0, 4), (-1, 1, 3), (3, 2, 1), (1, 0, 0), (-5, 1, 0)]);
        for c in 1..=4 {
            let r = pure_composed_sum_bi(&p, c).unwrap();
            for x0 in [rat(2), rat(-3), rat(5)] {
                let u = pure_composed_sum(&p.eval_x(&x0), c).unwrap().poly;
                let v = r.poly.eval_x(&x0);
                assert_eq!(v.monic(), u, "c = {c}, x = {x0}");
            }
        }
    }

    #[test]
    fn repeated_denominator_factors() {
        // leading coefficient x^2 (x - 1)^3, input scaled by 2/3
        let lc = BiPoly::from_x(UniPoly::from_ints(&[0, 0, -1, 3, -3, 1]));
        let p = &(&lc * &BiPoly::y().pow(3)) + &BiPoly::from_terms(&[(3, 0, 1), (-7, 1, 0), (1, 0, 0)]);
        let p = p.scale(&Rational::new(2.into(), 3.into()));
        for c in 1..=3 {
            let r = pure_composed_sum_bi(&p, c).unwrap();
            for x0 in [rat(2), rat(-3)] {
                let u = pure_composed_sum(&p.eval_x(&x0), c).unwrap().poly;
                assert_eq!(r.poly.eval_x(&x0).monic(), u, "c = {c}, x = {x0}");
            }
        }
    }
}
