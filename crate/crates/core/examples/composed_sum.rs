// Polynomial whose roots are the sums of `c` distinct roots of `p`.

use std::error::Error;

use ratdiag::cli::parse_univariate;
use ratdiag::composed::{pure_composed_sum, pure_composed_sum_bi};
use ratdiag::corealg::UniPoly;
use ratdiag::bivar::BiPoly;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (p, var) = parse_univariate("y^4 - 10*y^2 + 1")?; // roots +-sqrt2 +-sqrt3
    for c in 1..=3 {
        let s = pure_composed_sum(&p, c)?;
        println!("Sigma_{c} p = {}", s.poly.to_string_var(&var));
    }
    // roots 1, 2, 4: pairwise sums 3, 5, 6
    let q = UniPoly::from_ints(&[-8, 14, -7, 1]);
    assert_eq!(pure_composed_sum(&q, 2)?.poly, UniPoly::from_ints(&[-90, 63, -14, 1]));

    // coefficients in Q(x): y^2 - x has roots +-sqrt(x), summing to 0
    let b = BiPoly::from_terms(&[(1, 0, 2), (-1, 1, 0)]);
    let s = pure_composed_sum_bi(&b, 2)?;
    println!("Sigma_2 (y^2 - x) = {}", s.poly.to_string_vars("x", "y"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
