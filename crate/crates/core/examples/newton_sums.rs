// Power sums of roots and back, plus truncated series exp and log.

use std::error::Error;

use ratdiag::corealg::{newton_series, poly_from_newton, series_exp, series_log, TruncSeries, UniPoly};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = UniPoly::from_ints(&[-6, 11, -6, 1]); // roots 1, 2, 3
    let s = newton_series(&p, 6)?;
    println!("power sums of the roots of {}: {s:?}", p.to_string_var("y"));
    assert_eq!(s, TruncSeries::from_ints(&[3, 6, 14, 36, 98, 276]));
    assert_eq!(poly_from_newton(&s, 3)?, p);

    let x = TruncSeries::from_ints(&[0, 1, 0, 0, 0, 0, 0, 0]);
    let e = series_exp(&x)?;
    println!("exp(x) = {e:?}");
    assert_eq!(series_log(&e)?, x);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
