//! Directed lattice walks with steps `(1, u)`: the naive counting recurrence and
//! expansion of bridges, excursions and meanders through telescopers.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::bivar::{BiPoly, BiRational};
use crate::corealg::{Rational, TruncSeries, UniPoly};
use crate::error::{Error, Result};
use crate::telescope::{ode_to_recurrence, telescoper, unroll, LinRec, Telescoper};

/// A set of steps `(1, u)`, stored by altitude.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepSet {
    altitudes: Vec<i64>,
}

impl StepSet {
    /// Needs at least one step going up and one going down.
    pub fn new(altitudes: &[i64]) -> Result<Self> {
        let set: BTreeSet<i64> = altitudes.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::InvalidStepSet("empty step set".into()));
        }
        let altitudes: Vec<i64> = set.into_iter().collect();
        if altitudes[0] >= 0 {
            return Err(Error::InvalidStepSet("no step goes down".into()));
        }
        if *altitudes.last().unwrap() <= 0 {
            return Err(Error::InvalidStepSet("no step goes up".into()));
        }
        if altitudes.iter().any(|u| u.unsigned_abs() > 1 << 20) {
            return Err(Error::InvalidStepSet("step too large".into()));
        }
        Ok(StepSet { altitudes })
    }

    /// Altitudes in increasing order.
    pub fn altitudes(&self) -> &[i64] {
        &self.altitudes
    }

    pub fn u_minus(&self) -> usize {
        self.altitudes[0].unsigned_abs() as usize
    }

    pub fn u_plus(&self) -> usize {
        *self.altitudes.last().unwrap() as usize
    }

    /// `u_minus + u_plus`.
    pub fn amplitude(&self) -> usize {
        self.u_minus() + self.u_plus()
    }

    /// `Gamma(1)`, the number of steps.
    pub fn gamma_at_one(&self) -> usize {
        self.altitudes.len()
    }

    /// `y^(u_minus) Gamma(y)`.
    pub fn gamma_poly(&self) -> UniPoly {
        let mut c = vec![0i64; self.amplitude() + 1];
        for &u in &self.altitudes {
            c[(u + self.u_minus() as i64) as usize] = 1;
        }
        UniPoly::from_ints(&c)
    }

    /// `y^(u_minus) - x y^(u_minus) Gamma(y)`, the cleared kernel.
    pub fn kernel(&self) -> BiPoly {
        let um = self.u_minus();
        let mut terms = vec![(1, 0, um)];
        for &u in &self.altitudes {
            terms.push((-1, 1, (u + um as i64) as usize));
        }
        BiPoly::from_terms(&terms)
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.altitudes.iter().map(|u| format!("(1,{u})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Counts `w(n, k)` for `n = 0..=N`. Row `n` covers altitudes from `low(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTable {
    confined: bool,
    u_minus: usize,
    rows: Vec<Vec<BigUint>>,
}

impl WalkTable {
    pub fn confined(&self) -> bool {
        self.confined
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Lowest altitude stored in row `n`.
    pub fn low(&self, n: usize) -> i64 {
        if self.confined {
            0
        } else {
            -((n * self.u_minus) as i64)
        }
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `w(n, k)`, zero outside the window.
    pub fn get(&self, n: usize, k: i64) -> BigUint {
        let i = k - self.low(n);
        if i < 0 {
            return BigUint::zero();
        }
        self.rows[n].get(i as usize).cloned().unwrap_or_default()
    }

    /// `w(n, 0)` for every `n`: bridges, or excursions when confined.
    pub fn at_zero(&self) -> Vec<BigUint> {
        (0..self.len()).map(|n| self.get(n, 0)).collect()
    }

    /// Row sums: all walks, or meanders when confined.
    pub fn totals(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Walks ending strictly below 0.
    pub fn negative_totals(&self) -> Vec<BigUint> {
        (0..self.len())
            .map(|n| {
                let m = (-self.low(n)) as usize;
                self.rows[n][..m.min(self.rows[n].len())].iter().sum()
            })
            .collect()
    }
}

/// Next row from `prev`, which starts at altitude `low_prev`; the new row starts at `low`.
fn step_row(s: &StepSet, prev: &[BigUint], low_prev: i64, low: i64, width: usize) -> Vec<BigUint> {
    let mut next = vec![BigUint::zero(); width];
    for (i, c) in prev.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = low_prev + i as i64;
        for &u in s.altitudes() {
            let j = k + u - low;
            if j >= 0 && (j as usize) < width {
                next[j as usize] += c;
            }
        }
    }
    next
}

/// Walk counts of length up to `n` by the direct recurrence
/// `w(n, k) = sum_u w(n - 1, k - u)`.
pub fn walk_counts_naive(s: &StepSet, n: usize, confined: bool) -> WalkTable {
    let mut t = WalkTable {
        confined,
        u_minus: s.u_minus(),
        rows: vec![vec![BigUint::one()]],
    };
    for m in 1..=n {
        let low = t.low(m);
        let width = (m * s.u_plus()) as i64 - low + 1;
        let next = step_row(s, &t.rows[m - 1], t.low(m - 1), low, width as usize);
        t.rows.push(next);
    }
    t
}

/// The four aggregates of the naive method, `n + 1` terms each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveCounts {
    pub bridges: Vec<BigUint>,
    pub excursions: Vec<BigUint>,
    pub meanders: Vec<BigUint>,
    pub negatives: Vec<BigUint>,
}

/// Like [`walk_counts_naive`] but keeps only the current rows.
pub fn naive_counts(s: &StepSet, n: usize) -> NaiveCounts {
    let mut full = vec![BigUint::one()];
    let mut conf = vec![BigUint::one()];
    let mut out = NaiveCounts {
        bridges: vec![BigUint::one()],
        excursions: vec![BigUint::one()],
        meanders: vec![BigUint::one()],
        negatives: vec![BigUint::zero()],
    };
    let (um, up) = (s.u_minus() as i64, s.u_plus() as i64);
    for m in 1..=n as i64 {
        let width = (m * (um + up) + 1) as usize;
        full = step_row(s, &full, -(m - 1) * um, -m * um, width);
        conf = step_row(s, &conf, 0, 0, (m * up + 1) as usize);
        let zero = (m * um) as usize;
        out.bridges.push(full[zero].clone());
        out.negatives.push(full[..zero].iter().sum());
        out.excursions.push(conf[0].clone());
        out.meanders.push(conf.iter().sum());
    }
    out
}

/// Bridge counts only, with rolling rows.
pub fn naive_bridges(s: &StepSet, n: usize) -> Vec<BigUint> {
    let mut full = vec![BigUint::one()];
    let mut out = vec![BigUint::one()];
    let (um, up) = (s.u_minus() as i64, s.u_plus() as i64);
    for m in 1..=n as i64 {
        let width = (m * (um + up) + 1) as usize;
        full = step_row(s, &full, -(m - 1) * um, -m * um, width);
        out.push(full[(m * um) as usize].clone());
    }
    out
}

/// `W / y` with the Laurent part cleared: `y^(u_minus - 1) / (y^(u_minus) (1 - x Gamma(y)))`.
pub fn bridge_input(s: &StepSet) -> BiRational {
    let num = BiPoly::monomial(Rational::one(), 0, s.u_minus() - 1);
    BiRational::new(&num, &s.kernel()).expect("kernel is nonzero")
}

/// `W / (1 - y)` cleared the same way.
pub fn meander_input(s: &StepSet) -> BiRational {
    let num = BiPoly::monomial(Rational::one(), 0, s.u_minus());
    let one_minus_y = BiPoly::from_terms(&[(1, 0, 0), (-1, 0, 1)]);
    BiRational::new(&num, &(&one_minus_y * &s.kernel())).expect("kernel is nonzero")
}

/// Bridges `b`, excursions `e`, meanders `m` and negative-endpoint totals `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkSeries {
    pub b: TruncSeries,
    pub e: TruncSeries,
    pub m: TruncSeries,
    pub a: TruncSeries,
}

impl WalkSeries {
    pub fn precision(&self) -> usize {
        self.b.precision()
    }

    /// Series straight from the naive counts.
    pub fn from_naive(c: &NaiveCounts) -> Self {
        WalkSeries {
            b: to_series(&c.bridges),
            e: to_series(&c.excursions),
            m: to_series(&c.meanders),
            a: to_series(&c.negatives),
        }
    }
}

fn to_series(v: &[BigUint]) -> TruncSeries {
    TruncSeries::new(v.iter().map(|c| Rational::from_integer(BigInt::from(c.clone()))).collect())
}

/// Telescopers and recurrences for the bridge and meander inputs.
#[derive(Clone, Debug)]
pub struct WalkRecurrences {
    pub bridge: Telescoper,
    pub bridge_rec: LinRec,
    pub meander: Telescoper,
    pub meander_rec: LinRec,
}

/// Runs the telescoper on both inputs. The bridge operator has order at most `d`.
pub fn walk_recurrences(s: &StepSet) -> Result<WalkRecurrences> {
    let d = s.amplitude();
    let bridge = telescoper(&bridge_input(s), d)?;
    if bridge.ode.order() > d {
        return Err(Error::Algorithm(format!("bridge telescoper order exceeds {d}")));
    }
    let meander = telescoper(&meander_input(s), d + 1)?;
    let bridge_rec = ode_to_recurrence(&bridge.ode)?;
    let meander_rec = ode_to_recurrence(&meander.ode)?;
    Ok(WalkRecurrences {
        bridge,
        bridge_rec,
        meander,
        meander_rec,
    })
}

/// `sum_{k >= 1} c_k x^k / k`, the antiderivative of `(c - c_0) / x`.
fn log_integral(c: &TruncSeries) -> TruncSeries {
    let mut out = vec![Rational::zero()];
    for k in 1..c.precision() {
        out.push(c.coeff(k) / Rational::from_integer(BigInt::from(k)));
    }
    TruncSeries::new(out)
}

fn check_counting(name: &str, s: &TruncSeries) -> Result<()> {
    for (i, c) in s.coeffs().iter().enumerate() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Algorithm(format!("{name}: coefficient {i} is {c}")));
        }
    }
    Ok(())
}

/// `b` from the bridge recurrence alone, `n + 1` terms.
pub fn expand_bridges(s: &StepSet, rec: &LinRec, n: usize) -> Result<TruncSeries> {
    let init = naive_bridges(s, rec.initial_terms().min(n + 1).saturating_sub(1));
    unroll(rec, &to_series(&init), n + 1)
}

/// Expansion to precision `n + 1` from precomputed recurrences.
pub fn expand_with(s: &StepSet, r: &WalkRecurrences, n: usize) -> Result<WalkSeries> {
    let need = r.bridge_rec.initial_terms().max(r.meander_rec.initial_terms());
    let init = naive_counts(s, need.min(n + 1).saturating_sub(1));
    let b = unroll(&r.bridge_rec, &to_series(&init.bridges), n + 1)?;
    let a = unroll(&r.meander_rec, &to_series(&init.negatives), n + 1)?;
    let e = log_integral(&b).exp()?;
    let m = &log_integral(&a).scale(&-Rational::one()).exp()?
        * &TruncSeries::new(geometric_coeffs(s.gamma_at_one(), n + 1));
    let out = WalkSeries { b, e, m, a };
    for (name, series) in [("B", &out.b), ("E", &out.e), ("M", &out.m), ("A", &out.a)] {
        check_counting(name, series)?;
    }
    Ok(out)
}

/// `1 / (1 - g x)`.
fn geometric_coeffs(g: usize, n: usize) -> Vec<Rational> {
    let g = BigInt::from(g);
    let mut p = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(Rational::from_integer(p.clone()));
        p *= &g;
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WalkOptions {
    /// Fall back to the naive method when no telescoper is found.
    pub naive_fallback: bool,
}

/// `B, E, M, A` to precision `n + 1`.
pub fn expand_walks(s: &StepSet, n: usize) -> Result<WalkSeries> {
    expand_walks_with(s, n, WalkOptions::default())
}

pub fn expand_walks_with(s: &StepSet, n: usize, opts: WalkOptions) -> Result<WalkSeries> {
    match walk_recurrences(s) {
        Ok(r) => expand_with(s, &r, n),
        Err(Error::NoTelescoper(_)) if opts.naive_fallback => {
            Ok(WalkSeries::from_naive(&naive_counts(s, n)))
        }
        Err(e) => Err(e),
    }
}

/// One line of [`bench_methods`].
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub naive: Duration,
    pub recurrence: Duration,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub steps: StepSet,
    pub precompute: Duration,
    pub rows: Vec<BenchRow>,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "steps {}  precompute {:.3?}", self.steps, self.precompute)?;
        writeln!(f, "{:>8} {:>12} {:>12} {:>6}", "N", "naive", "recurrence", "agree")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>8} {:>12.3?} {:>12.3?} {:>6}",
                r.n, r.naive, r.recurrence, r.agree
            )?;
        }
        Ok(())
    }
}

/// Best of `reps` runs.
pub fn time_min<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed());
        last = Some(v);
    }
    (best, last.unwrap())
}

/// Wall-clock of naive bridge counting against unrolling the bridge recurrence.
pub fn bench_methods(s: &StepSet, ns: &[usize]) -> Result<BenchReport> {
    let (precompute, r) = time_min(1, || walk_recurrences(s));
    let r = r?;
    let mut rows = Vec::new();
    for &n in ns {
        let (naive, nb) = time_min(1, || naive_bridges(s, n));
        let (recurrence, b) = time_min(3, || expand_bridges(s, &r.bridge_rec, n));
        let agree = b? == to_series(&nb);
        rows.push(BenchRow {
            n,
            naive,
            recurrence,
            agree,
        });
    }
    Ok(BenchReport {
        steps: s.clone(),
        precompute,
        rows,
    })
}
