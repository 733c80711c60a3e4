// Annihilating polynomial of the residues of a bivariate rational function.

use std::error::Error;

use ratdiag::bivar::BiPoly;
use ratdiag::cli::parse_rational;
use ratdiag::corealg::UniPoly;
use ratdiag::residues::{algebraic_residues_with, ResidueOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // y^2 / (y - y^2 - x)^3 has a triple pole on each branch of y - y^2 = x
    let f = parse_rational("y^2/(y-y^2-x)^3")?;
    let r = algebraic_residues_with(&f, ResidueOptions::default())?;
    println!("f = {}", f.to_string_vars("x", "y"));
    println!("R(x, z) = {}", r.poly.to_string_vars("x", "z"));
    println!("bounds: deg_z <= {}, deg_x <= {}", r.bounds.z_bound, r.bounds.x_bound);
    for (i, g) in r.factors.iter().enumerate() {
        println!("  factor {}: {}", i + 1, g.to_string_vars("x", "z"));
    }

    // (1-4x)^5 z^2 - (1+2x)^2
    let lead = BiPoly::from_x(UniPoly::from_ints(&[1, -4]).pow(5)).shift(0, 2);
    let tail = BiPoly::from_x(UniPoly::from_ints(&[1, 2]).pow(2));
    assert_eq!(r.poly, (&lead - &tail).primitive_positive());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
