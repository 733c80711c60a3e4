//! Dense univariate kernels over an arbitrary [`Field`].
//!
//! Polynomials are coefficient vectors, lowest degree first. Outputs are trimmed
//! (no trailing zeros); inputs need not be.

use super::field::Field;

pub fn trim<F: Field>(f: &F, a: &mut Vec<F::El>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn trimmed<F: Field>(f: &F, mut a: Vec<F::El>) -> Vec<F::El> {
    trim(f, &mut a);
    a
}

/// Degree of a trimmed polynomial, `None` for zero.
pub fn degree<F: Field>(a: &[F::El]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn scale<F: Field>(f: &F, a: &[F::El], c: &F::El) -> Vec<F::El> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trimmed(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trimmed(f, out)
}

/// Product truncated to the first `n` coefficients (not trimmed).
pub fn mul_trunc<F: Field>(f: &F, a: &[F::El], b: &[F::El], n: usize) -> Vec<F::El> {
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

pub fn pow<F: Field>(f: &F, a: &[F::El], mut e: u32) -> Vec<F::El> {
    let mut acc = vec![f.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

/// Euclidean division; panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> (Vec<F::El>, Vec<F::El>) {
    let b = trimmed(f, b.to_vec());
    let db = degree::<F>(&b).expect("division by zero polynomial");
    let mut r = trimmed(f, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv_lc = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(&r[k + db], &inv_lc);
        if !f.is_zero(&c) {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trimmed(f, q), trimmed(f, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    divrem(f, a, b).1
}

/// Quotient of an exact division, `None` if the remainder is nonzero.
pub fn div_exact<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Option<Vec<F::El>> {
    let (q, r) = divrem(f, a, b);
    r.is_empty().then_some(q)
}

pub fn monic<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    let a = trimmed(f, a.to_vec());
    match a.last() {
        None => a,
        Some(lc) => {
            let inv = f.inv(lc);
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let mut a = trimmed(f, a.to_vec());
    let mut b = trimmed(f, b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
pub fn xgcd<F: Field>(
    f: &F,
    a: &[F::El],
    b: &[F::El],
) -> (Vec<F::El>, Vec<F::El>, Vec<F::El>) {
    let (mut r0, mut r1) = (trimmed(f, a.to_vec()), trimmed(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, Vec::new(), Vec::new()),
        Some(lc) => {
            let inv = f.inv(lc);
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
    }
}

pub fn derivative<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_usize(i)))
        .collect();
    trimmed(f, out)
}

pub fn eval<F: Field>(f: &F, a: &[F::El], x: &F::El) -> F::El {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// `p(y + s)`.
pub fn taylor_shift<F: Field>(f: &F, a: &[F::El], s: &F::El) -> Vec<F::El> {
    let mut c = a.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = f.mul(&c[j + 1], s);
            c[j] = f.add(&c[j], &t);
        }
    }
    trimmed(f, c)
}

/// `lc(a)^deg(b) * prod b(alpha)` over the roots of `a`.
///
/// Inputs are taken at their actual degrees; the resultant of two constants is 1.
pub fn resultant<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> F::El {
    let mut a = trimmed(f, a.to_vec());
    let mut b = trimmed(f, b.to_vec());
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let mut acc = f.one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return f.mul(&acc, &f.pow(&b[0], m as u64));
        }
        if m == 0 {
            return f.mul(&acc, &f.pow(&a[0], n as u64));
        }
        let r = rem(f, &a, &b);
        if r.is_empty() {
            return f.zero();
        }
        let dr = r.len() - 1;
        if (m * n) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(&b[n], (m - dr) as u64));
        a = b;
        b = r;
    }
}

/// Interpolating polynomial through `(xs[i], ys[i])`; nodes must be distinct.
pub fn interpolate<F: Field>(f: &F, xs: &[F::El], ys: &[F::El]) -> Option<Vec<F::El>> {
    Some(Interpolator::new(f, xs)?.interpolate(f, ys))
}

/// Newton interpolation on fixed nodes, node differences inverted once.
pub struct Interpolator<F: Field> {
    xs: Vec<F::El>,
    // inv[k - 1][i - k] = 1 / (xs[i] - xs[i - k])
    inv: Vec<Vec<F::El>>,
}

impl<F: Field> Interpolator<F> {
    /// `None` if two nodes coincide.
    pub fn new(f: &F, xs: &[F::El]) -> Option<Self> {
        let n = xs.len();
        let mut diffs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for k in 1..n {
            for i in k..n {
                let d = f.sub(&xs[i], &xs[i - k]);
                if f.is_zero(&d) {
                    return None;
                }
                diffs.push(d);
            }
        }
        let mut flat = f.batch_inv(&diffs).into_iter();
        let inv = (1..n).map(|k| flat.by_ref().take(n - k).collect()).collect();
        Some(Interpolator {
            xs: xs.to_vec(),
            inv,
        })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn interpolate(&self, f: &F, ys: &[F::El]) -> Vec<F::El> {
        let n = self.xs.len();
        assert_eq!(n, ys.len());
        let mut dd = ys.to_vec();
        for k in 1..n {
            let row = &self.inv[k - 1];
            for i in (k..n).rev() {
                dd[i] = f.mul(&f.sub(&dd[i], &dd[i - 1]), &row[i - k]);
            }
        }
        // Horner on the Newton form, coefficients stored from the top
        let mut out: Vec<F::El> = Vec::with_capacity(n);
        for k in (0..n).rev() {
            // out = out * (x - xs[k]) + dd[k]
            out.push(f.zero());
            for i in (1..out.len()).rev() {
                let t = f.mul(&out[i - 1], &self.xs[k]);
                out[i] = f.sub(&out[i], &t);
            }
            let last = out.len() - 1;
            out[last] = f.add(&out[last], &dd[k]);
        }
        out.reverse();
        trimmed(f, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::field::{rat, PrimeField, Rationals};

    fn q(v: &[i64]) -> Vec<crate::Rational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Rationals;
        let a = q(&[5, -3, 0, 2, 7]);
        let b = q(&[1, 2, 3]);
        let (qq, r) = divrem(&f, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &qq, &b), &r), a);
    }

    #[test]
    fn resultant_of_linear_factors() {
        let f = Rationals;
        // Res(y-2, y-5) = (2-5) with the lc(a)^n prod b(alpha) convention
        assert_eq!(resultant(&f, &q(&[-2, 1]), &q(&[-5, 1])), rat(-3));
        // Res(y^2-1, y-3) = (1-3)(-1-3) = 8
        assert_eq!(resultant(&f, &q(&[-1, 0, 1]), &q(&[-3, 1])), rat(8));
        assert_eq!(resultant(&f, &q(&[-3, 1]), &q(&[-1, 0, 1])), rat(8));
        assert_eq!(resultant(&f, &q(&[-1, 1]), &q(&[-1, 0, 1])), rat(0));
    }

    #[test]
    fn xgcd_bezout() {
        let f = PrimeField::new(1_000_000_007);
        let a: Vec<u64> = vec![3, 1, 4, 1, 5];
        let b: Vec<u64> = vec![9, 2, 6];
        let (g, s, t) = xgcd(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
        assert_eq!(g, vec![1]);
    }

    #[test]
    fn interpolation_round_trip() {
        let f = Rationals;
        let p = q(&[1, -2, 0, 3]);
        let xs = q(&[0, 1, -1, 2]);
        let ys: Vec<_> = xs.iter().map(|x| eval(&f, &p, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys).unwrap(), p);
        assert!(interpolate(&f, &q(&[1, 1]), &q(&[0, 1])).is_none());
    }

    #[test]
    fn shift() {
        let f = Rationals;
        // (y+1)^2 = y^2 + 2y + 1
        assert_eq!(taylor_shift(&f, &q(&[0, 0, 1]), &rat(1)), q(&[1, 2, 1]));
    }
}
