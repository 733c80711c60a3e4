// Creative telescoping on the bridge generating function, then recurrence unrolling.

use std::error::Error;

use ratdiag::corealg::{Rational, TruncSeries};
use ratdiag::telescope::{ode_to_recurrence, telescoper, unroll, verify_telescoper};
use ratdiag::walks::{bridge_input, naive_bridges, StepSet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = StepSet::new(&[2, -1])?;
    let f = bridge_input(&s);
    println!("F = {}", f.to_string_vars("x", "y"));

    let t = telescoper(&f, s.amplitude())?;
    println!("order {}, coefficient degree {}", t.ode.order(), t.ode.degree());
    assert!(verify_telescoper(&f, &t));

    let rec = ode_to_recurrence(&t.ode)?;
    let init: Vec<Rational> = naive_bridges(&s, rec.initial_terms())
        .into_iter()
        .map(|c| Rational::from_integer(c.into()))
        .collect();
    let b = unroll(&rec, &TruncSeries::new(init), 31)?;
    println!("bridges: {b:?}");
    // length 3k bridges: binom(3k, k)
    assert_eq!(b.coeff(30).to_string(), "30045015");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
