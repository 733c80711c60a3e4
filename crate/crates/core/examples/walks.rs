// Bridges, excursions and meanders for a step set, two ways.

use std::error::Error;

use ratdiag::cli::parse_step_set;
use ratdiag::walks::{expand_walks, naive_counts, WalkSeries};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let s = parse_step_set("{(1,2),(1,1),(1,-2)}")?;
    let n = 60;
    let fast = expand_walks(&s, n)?;
    let naive = WalkSeries::from_naive(&naive_counts(&s, n));
    assert_eq!(fast, naive);

    let show = |name: &str, v: &ratdiag::corealg::TruncSeries| {
        let c: Vec<String> = v.coeffs()[..12].iter().map(|c| c.to_string()).collect();
        println!("{name:>11}: {}, ...", c.join(", "));
    };
    println!("steps {s}");
    show("bridges", &fast.b);
    show("excursions", &fast.e);
    show("meanders", &fast.m);
    println!("[x^{n}] meanders = {}", fast.m.coeff(n));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
