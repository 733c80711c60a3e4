// Drives the command-line front end in-process, text and JSON.

use std::error::Error;

use ratdiag::cli::run;

fn call(args: &[&str]) -> Result<String, Box<dyn Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ratdiag").chain(args.iter().copied());
    let code = run(argv, &mut std::io::empty(), &mut out, &mut err);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)).into());
    }
    Ok(String::from_utf8(out)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for args in [
        &["diagonal", "1/(1-x-y)", "--series", "6", "--certify", "30"][..],
        &["residues", "1/(y^2-x)"],
        &["composed-sum", "y^3-7*y^2+14*y-8", "2"],
        &["walks", "2,1,-2", "-N", "10", "--all"],
        &["--json", "walks", "1,-1", "-N", "6", "--bridges"],
    ] {
        println!("$ ratdiag {}", args.join(" "));
        print!("{}", call(args)?);
    }
    // parse errors carry a position
    let mut out = Vec::new();
    let code = run(["ratdiag", "--json", "residues", "1/(y-"], &mut std::io::empty(), &mut out, &mut Vec::new());
    println!("exit {code}: {}", String::from_utf8_lossy(&out).trim());
    assert_eq!(code, ratdiag::cli::EXIT_PARSE);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
