//! Hermite reduction in `y` over `Q(x)`, and telescopers found by reducing
//! successive `x`-derivatives.

mod recurrence;

use crate::bivar::{BiPoly, BiRational};
use crate::corealg::dense;
use crate::corealg::{Field, RatFunc, RatFuncs, Rational, UniPoly};
use crate::error::{Error, Result};

pub use recurrence::{ode_to_recurrence, unroll, unroll_rational_only, LinODE, LinRec};

const K: RatFuncs = RatFuncs;

/// Polynomial in `y` with coefficients in `Q(x)`, lowest degree first.
type KPoly = Vec<RatFunc>;

/// `f = d/dy integrable_part + residual_numer / residual_denom`, where the
/// residual denominator is squarefree in `y` and the numerator has lower degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub integrable_part: BiRational,
    pub residual_numer: BiPoly,
    pub residual_denom: BiPoly,
}

/// A telescoper `L` and the certificate `g = certificate_numer / certificate_denom`
/// with `L f = d/dy g`. The certificate is not reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Telescoper {
    pub ode: LinODE,
    pub certificate_numer: BiPoly,
    pub certificate_denom: BiPoly,
}

impl Telescoper {
    /// The certificate in lowest terms.
    pub fn certificate(&self) -> Result<BiRational> {
        BiRational::new(&self.certificate_numer, &self.certificate_denom)
    }
}

/// Checks `L f = d/dy g` by cross-multiplication over `Q[x, y]`, with the
/// derivatives of `f = p/q` written over powers of `q`.
pub fn verify_telescoper(f: &BiRational, t: &Telescoper) -> bool {
    let (p, q) = (f.numer(), f.denom());
    let q_x = q.derivative_x();
    let r = t.ode.order();
    let mut lf = BiPoly::zero();
    let mut e = p.clone();
    for (i, c) in t.ode.coeffs.iter().enumerate() {
        if i > 0 {
            // d/dx (e / q^i) = (e_x q - i e q_x) / q^(i+1)
            e = &(&e.derivative_x() * q) - &(&e * &q_x).scale(&Rational::from_integer(i.into()));
        }
        if !c.is_zero() {
            lf = &lf + &(&e * &q.pow((r - i) as u32)).mul_x_poly(c);
        }
    }
    let (n, d) = (&t.certificate_numer, &t.certificate_denom);
    let dg = &(&n.derivative_y() * d) - &(n * &d.derivative_y());
    &lf * &(d * d) == &dg * &q.pow(r as u32 + 1)
}

fn to_k(p: &BiPoly) -> KPoly {
    p.rows().iter().map(|r| RatFunc::from_poly(r.clone())).collect()
}

/// `(N, l)` with `p = N / l`, `l` in `Q[x]`.
fn from_k(p: &[RatFunc]) -> (BiPoly, UniPoly) {
    let mut l = UniPoly::one();
    for c in p {
        let g = l.gcd(c.den());
        l = (&l * c.den()).div_exact(&g).expect("gcd divides");
    }
    let rows = p
        .iter()
        .map(|c| c.num() * &l.div_exact(c.den()).expect("divides the lcm"))
        .collect();
    (BiPoly::from_rows(rows), l)
}

fn k_fraction(num: &[RatFunc], den: &[RatFunc]) -> BiRational {
    let (n, ln) = from_k(num);
    let (d, ld) = from_k(den);
    BiRational::new(&n.mul_x_poly(&ld), &d.mul_x_poly(&ln)).expect("nonzero denominator")
}

fn d_dx(p: &[RatFunc]) -> KPoly {
    dense::trimmed(&K, p.iter().map(|c| c.derivative()).collect())
}

fn integrate_y(p: &[RatFunc]) -> KPoly {
    let mut out = vec![K.zero()];
    for (j, c) in p.iter().enumerate() {
        out.push(K.div(c, &K.from_usize(j + 1)));
    }
    dense::trimmed(&K, out)
}

/// `(s, t)` with `s a + t b = c` and `deg s < deg b`, for coprime `a`, `b`.
fn solve_bezout(a: &[RatFunc], b: &[RatFunc], c: &[RatFunc]) -> (KPoly, KPoly) {
    let (g, s, _) = dense::xgcd(&K, a, b);
    debug_assert!(g.len() == 1, "coprime");
    let s = dense::rem(&K, &dense::mul(&K, &s, c), b);
    let t = dense::div_exact(&K, &dense::sub(&K, c, &dense::mul(&K, &s, a)), b)
        .expect("exact by construction");
    (s, t)
}

/// Output of the reduction over `Q(x)`: `a/d = (g_num/g_den)' + rest/dstar`.
struct Reduced {
    g_num: KPoly,
    g_den: KPoly,
    rest: KPoly,
    dstar: KPoly,
}

/// Mack's linear version of Hermite reduction.
fn hermite_k(a: &[RatFunc], d: &[RatFunc]) -> Reduced {
    let inv = K.inv(d.last().expect("nonzero denominator"));
    let d = dense::scale(&K, d, &inv);
    let mut a = dense::scale(&K, a, &inv);
    let dm0 = dense::gcd(&K, &d, &dense::derivative(&K, &d));
    let ds = dense::div_exact(&K, &d, &dm0).expect("gcd divides");
    let mut dm = dm0.clone();
    let mut g_num: KPoly = Vec::new();
    while dm.len() > 1 {
        let dm_d = dense::derivative(&K, &dm);
        let dm2 = dense::gcd(&K, &dm, &dm_d);
        let dms = dense::div_exact(&K, &dm, &dm2).expect("gcd divides");
        let u = dense::neg(
            &K,
            &dense::div_exact(&K, &dense::mul(&K, &ds, &dm_d), &dm).expect("exact"),
        );
        let (b, c) = solve_bezout(&u, &dms, &a);
        let ratio = dense::div_exact(&K, &ds, &dms).expect("squarefree part divides");
        a = dense::sub(&K, &c, &dense::mul(&K, &dense::derivative(&K, &b), &ratio));
        let scale = dense::div_exact(&K, &dm0, &dm).expect("nested");
        g_num = dense::add(&K, &g_num, &dense::mul(&K, &b, &scale));
        dm = dm2;
    }
    let (q, rest) = dense::divrem(&K, &a, &ds);
    if !q.is_empty() {
        g_num = dense::add(&K, &g_num, &dense::mul(&K, &integrate_y(&q), &dm0));
    }
    Reduced {
        g_num,
        g_den: dm0,
        rest,
        dstar: ds,
    }
}

fn check_denominator(f: &BiRational) -> Result<()> {
    if f.denom().deg_y() == 0 {
        return Err(Error::ConstantInMainVariable);
    }
    Ok(())
}

pub fn hermite_reduce(f: &BiRational) -> Result<HermiteForm> {
    check_denominator(f)?;
    let r = hermite_k(&to_k(f.numer()), &to_k(f.denom()));
    let (n, ln) = from_k(&r.rest);
    let (d, ld) = from_k(&r.dstar);
    let form = HermiteForm {
        integrable_part: k_fraction(&r.g_num, &r.g_den),
        residual_numer: n.mul_x_poly(&ld),
        residual_denom: d.mul_x_poly(&ln),
    };
    debug_assert!(
        form.integrable_part
            .derivative_y()
            .add(&BiRational::new(&form.residual_numer, &form.residual_denom).expect("nonzero"))
            == *f,
        "Hermite identity"
    );
    Ok(form)
}

/// A solution `c` with `sum_{i<r} c_i v_i = -v_r` and `c_r = 1`, if one exists.
fn dependency(vs: &[KPoly], m: usize) -> Option<Vec<RatFunc>> {
    let r = vs.len() - 1;
    let entry = |v: &KPoly, k: usize| v.get(k).cloned().unwrap_or_else(|| K.zero());
    // rows: m equations, r unknowns plus the right-hand side
    let mut a: Vec<Vec<RatFunc>> = (0..m)
        .map(|k| {
            let mut row: Vec<RatFunc> = vs[..r].iter().map(|v| entry(v, k)).collect();
            row.push(K.neg(&entry(&vs[r], k)));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = K.inv(&a[row][col]);
        for v in a[row].iter_mut() {
            *v = K.mul(v, &inv);
        }
        for i in 0..m {
            if i != row && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in col..=r {
                    let t = K.mul(&factor, &a[row][j]);
                    a[i][j] = K.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|rw| !rw[r].is_zero()) {
        return None;
    }
    let mut c = vec![K.zero(); r];
    for (i, &col) in pivots.iter().enumerate() {
        c[col] = a[i][r].clone();
    }
    c.push(K.one());
    Some(c)
}

/// `sum_i c_i(x) d^i f / dx^i`.
pub fn apply_operator(ode: &LinODE, f: &BiRational) -> BiRational {
    let mut acc = BiRational::zero();
    let mut d = f.clone();
    for (i, c) in ode.coeffs.iter().enumerate() {
        if i > 0 {
            d = d.derivative_x();
        }
        if !c.is_zero() {
            acc = acc.add(&BiRational::from_poly(BiPoly::from_x(c.clone())).mul(&d));
        }
    }
    acc
}

/// `p^e`.
fn kpow(p: &[RatFunc], e: usize) -> KPoly {
    dense::pow(&K, p, e as u32)
}

/// The `x`-derivative of `n / (d s^i)` is `n' / (d s^(i+1))` with
/// `n' = n_x s - n (w + i s_x)`, where `w = d_x s / d`.
fn next_numer(n: &[RatFunc], s: &[RatFunc], s_x: &[RatFunc], w: &[RatFunc], i: usize) -> KPoly {
    let t = dense::add(&K, w, &dense::scale(&K, s_x, &K.from_usize(i)));
    dense::sub(&K, &dense::mul(&K, &d_dx(n), s), &dense::mul(&K, n, &t))
}

/// `d_x d * s / d`, exact because `s` is the squarefree part of `d`.
fn log_weight(d: &[RatFunc], s: &[RatFunc]) -> KPoly {
    dense::div_exact(&K, &dense::mul(&K, &d_dx(d), s), d).expect("squarefree part clears")
}

/// The telescoper of least order, searched incrementally up to `max_order`.
///
/// Each step reduces the `x`-derivative of the previous residual, so every
/// residual has the same squarefree denominator `s`. The certificate for step
/// `i` is kept over `dm s^i`, and the identity `L f = d/dy g` is checked
/// exactly over `Q(x)` before returning.
pub fn telescoper(f: &BiRational, max_order: usize) -> Result<Telescoper> {
    check_denominator(f)?;
    let q = to_k(f.denom());
    let inv = K.inv(q.last().expect("nonzero denominator"));
    let q = dense::scale(&K, &q, &inv);
    let p = dense::scale(&K, &to_k(f.numer()), &inv);
    let first = hermite_k(&p, &q);
    let qs = first.dstar.clone();
    let dm = first.g_den.clone();
    let qs_x = d_dx(&qs);
    let qs_y = dense::derivative(&K, &qs);
    let (_, qs_y_inv, _) = dense::xgcd(&K, &qs_y, &qs);
    let w_dm = log_weight(&dm, &qs);
    let m = qs.len() - 1;
    let mut residuals = vec![first.rest.clone()];
    // g_i = certs[i] / (dm qs^i)
    let mut certs = vec![first.g_num.clone()];
    let mut dm_pow = dm.clone();
    for r in 0..=max_order {
        if let Some(c) = dependency(&residuals, m) {
            return finish(f, &c, &dm, &qs, &certs);
        }
        if r == max_order {
            break;
        }
        // d/dx (a / qs) = (a_x qs - a qs_x) / qs^2
        let a = &residuals[r];
        let num = dense::sub(&K, &dense::mul(&K, &d_dx(a), &qs), &dense::mul(&K, a, &qs_x));
        // num / qs^2 = (b / qs)' + rest / qs with b = -num / qs_y mod qs
        let b = dense::neg(&K, &dense::rem(&K, &dense::mul(&K, &num, &qs_y_inv), &qs));
        let c = dense::div_exact(&K, &dense::add(&K, &num, &dense::mul(&K, &b, &qs_y)), &qs)
            .expect("exact by construction");
        let (quo, rest) = dense::divrem(&K, &dense::sub(&K, &c, &dense::derivative(&K, &b)), &qs);
        let h = dense::add(&K, &b, &dense::mul(&K, &integrate_y(&quo), &qs));
        let g = next_numer(&certs[r], &qs, &qs_x, &w_dm, r);
        let g = dense::add(&K, &g, &dense::mul(&K, &h, &dm_pow));
        dm_pow = dense::mul(&K, &dm_pow, &qs);
        residuals.push(rest);
        certs.push(g);
    }
    Err(Error::NoTelescoper(max_order))
}

/// Scales the dependency to a polynomial operator and checks the identity.
fn finish(
    f: &BiRational,
    c: &[RatFunc],
    dm: &[RatFunc],
    qs: &[RatFunc],
    certs: &[KPoly],
) -> Result<Telescoper> {
    let r = c.len() - 1;
    // g = cn / (dm qs^r)
    let mut cn: KPoly = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        if !ci.is_zero() {
            let term = dense::mul(&K, &certs[i], &kpow(qs, r - i));
            cn = dense::add(&K, &cn, &dense::scale(&K, &term, ci));
        }
    }
    let (ode, scale) = LinODE::from_rational(c);
    let cn = dense::scale(&K, &cn, &RatFunc::from_poly(scale));
    let den = dense::mul(&K, dm, &kpow(qs, r));
    let (n, ln) = from_k(&cn);
    let (d, ld) = from_k(&den);
    let t = Telescoper {
        ode,
        certificate_numer: n.mul_x_poly(&ld),
        certificate_denom: d.mul_x_poly(&ln),
    };
    if !verify_telescoper(f, &t) {
        return Err(Error::Algorithm("telescoper identity fails".into()));
    }
    Ok(t)
}
