// Algebraic equation for the diagonal of a rational power series, with a series check.

use std::error::Error;

use ratdiag::cli::parse_rational;
use ratdiag::diagonal::{algebraic_diagonal_with, certify, diagonal_series_naive, DiagonalOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for expr in ["1/(1-x-y)", "1/(1-x-y-x*y)", "1/(1-x^2-y^3)"] {
        let f = parse_rational(expr)?;
        let phi = algebraic_diagonal_with(&f, DiagonalOptions::default())?;
        let (dt, dd) = phi.phi.bideg();
        println!("Diag {expr}: bidegree ({dt}, {dd}), bound {:?}", phi.bounds.bideg_bound());
        if dd <= 2 {
            println!("  {} = 0", phi.phi.to_string_vars("t", "D"));
        }
        let n = 40.max(dt + 1);
        let s = diagonal_series_naive(&f, 8)?;
        println!("  series {s:?}");
        assert!(certify(&f, &phi, n)?, "certificate failed for {expr}");
    }

    // optimized path on a numerator that needs a shift
    let f = parse_rational("x/(1-x-y)")?;
    let plain = algebraic_diagonal_with(&f, DiagonalOptions::default())?;
    let opt = algebraic_diagonal_with(&f, DiagonalOptions { optimize: true, ..Default::default() })?;
    println!("x/(1-x-y): plain {:?}, optimized {:?}", plain.phi.bideg(), opt.phi.bideg());
    assert!(certify(&f, &opt, 40.max(opt.phi.deg_x() + 1))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
