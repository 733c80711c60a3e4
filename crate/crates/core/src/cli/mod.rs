//! Command-line front end.

pub mod parse;

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bivar::BiPoly;
use crate::composed::pure_composed_sum;
use crate::corealg::{Rational, TruncSeries, UniPoly};
use crate::diagonal::{algebraic_diagonal_with, certify, diagonal_series_naive, DiagonalOptions};
use crate::error::{Error, ErrorClass, Result};
use crate::residues::{algebraic_residues_with, ResidueOptions};
use crate::walks::{bench_methods, expand_walks, naive_counts, WalkSeries};

pub use parse::{parse_expr, parse_rational, parse_step_set, parse_univariate, Expr, ExprKind};

pub const JSON_SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_ALGORITHM: i32 = 4;

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "RATDIAG_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ratdiag", version, about = "Residues, composed sums, diagonals and walk series, exactly")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polynomial in z cancelling the residues of a rational function in x, y.
    Residues {
        /// Expression in x and y, or `-` for stdin.
        expr: String,
        /// Also print one factor per squarefree factor of the denominator.
        #[arg(long)]
        factors: bool,
        /// Squarefree output.
        #[arg(long)]
        squarefree: bool,
    },
    /// Polynomial whose roots are the sums of c distinct roots of the input.
    ComposedSum {
        /// Polynomial in one variable, or `-` for stdin.
        poly: String,
        c: usize,
    },
    /// Annihilating polynomial of the diagonal, in t and D.
    Diagonal {
        /// Expression in x and y, or `-` for stdin.
        expr: String,
        /// Print this many diagonal coefficients.
        #[arg(long, value_name = "N")]
        series: Option<usize>,
        /// Check the output against the diagonal modulo t^N.
        #[arg(long, value_name = "N")]
        certify: Option<usize>,
        /// Treat the pole at the origin separately.
        #[arg(long)]
        optimize: bool,
    },
    /// Counts of bridges, excursions and meanders.
    Walks(WalkArgs),
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    /// Altitudes like `2,1,-2` or pairs like `{(1,2),(1,1),(1,-2)}`.
    #[arg(allow_hyphen_values = true)]
    pub steps: String,
    /// Largest walk length.
    #[arg(short = 'N', long = "length")]
    pub n: usize,
    #[arg(long)]
    pub bridges: bool,
    #[arg(long)]
    pub excursions: bool,
    #[arg(long)]
    pub meanders: bool,
    #[arg(long)]
    pub all: bool,
    /// Use the direct recurrence only.
    #[arg(long)]
    pub naive: bool,
    /// Time the direct recurrence against the telescoper route.
    #[arg(long)]
    pub bench: bool,
}

pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Parse => EXIT_PARSE,
        ErrorClass::Precondition => EXIT_PRECONDITION,
        ErrorClass::Algorithm => EXIT_ALGORITHM,
    }
}

/// `[[x_exp, y_exp, "p/q"], ...]`.
pub fn poly_json(p: &BiPoly) -> Value {
    Value::Array(
        p.terms()
            .into_iter()
            .map(|(i, j, c)| json!([i, j, c.to_string()]))
            .collect(),
    )
}

/// Inverse of [`poly_json`].
pub fn poly_from_json(v: &Value) -> Option<BiPoly> {
    let mut acc = BiPoly::zero();
    for t in v.as_array()? {
        let t = t.as_array()?;
        let (i, j) = (t.first()?.as_u64()? as usize, t.get(1)?.as_u64()? as usize);
        let c: Rational = t.get(2)?.as_str()?.parse().ok()?;
        acc = &acc + &BiPoly::monomial(c, i, j);
    }
    Some(acc)
}

fn series_json(s: &TruncSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn series_text(s: &TruncSeries) -> String {
    let parts: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    parts.join(", ")
}

fn uni_to_bi(p: &UniPoly) -> BiPoly {
    BiPoly::from_y(p)
}

/// Text and JSON forms of one successful run; `ok` is false when a requested check failed.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn read_input(arg: &str, stdin: &mut dyn Read) -> Result<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| Error::OutOfRange(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

fn residues(expr: &str, factors: bool, squarefree: bool) -> Result<Report> {
    let f = parse_rational(expr)?;
    let r = algebraic_residues_with(&f, ResidueOptions { squarefree })?;
    let mut text = r.poly.to_string_vars("x", "z");
    if factors {
        for (i, q) in r.factors.iter().enumerate() {
            text.push_str(&format!("\nfactor {}: {}", i + 1, q.to_string_vars("x", "z")));
        }
    }
    let json = json!({
        "vars": ["x", "z"],
        "poly": poly_json(&r.poly),
        "factors": r.factors.iter().map(poly_json).collect::<Vec<_>>(),
        "bounds": {"z": r.bounds.z_bound, "x": r.bounds.x_bound},
    });
    Ok(Report { text, json, ok: true })
}

fn composed_sum(poly: &str, c: usize) -> Result<Report> {
    let (p, v) = parse_univariate(poly)?;
    let r = pure_composed_sum(&p, c)?;
    Ok(Report {
        text: r.poly.to_string_var(&v),
        json: json!({
            "var": v,
            "c": c,
            "degree": r.degree,
            "poly": poly_json(&uni_to_bi(&r.poly)),
        }),
        ok: true,
    })
}

fn diagonal(expr: &str, series: Option<usize>, cert: Option<usize>, optimize: bool) -> Result<Report> {
    let f = parse_rational(expr)?;
    let opts = DiagonalOptions {
        optimize,
        ..DiagonalOptions::default()
    };
    let d = algebraic_diagonal_with(&f, opts)?;
    let mut text = d.phi.to_string_vars("t", "D");
    let mut json = json!({
        "vars": ["t", "D"],
        "poly": poly_json(&d.phi),
        "bideg": [d.phi.deg_x(), d.phi.deg_y()],
    });
    if let Some(n) = series {
        let s = diagonal_series_naive(&f, n)?;
        text.push_str(&format!("\nseries: {}", series_text(&s)));
        json["series"] = series_json(&s);
    }
    let mut ok = true;
    if let Some(n) = cert {
        ok = certify(&f, &d, n)?;
        let verdict = if ok { "passed" } else { "FAILED" };
        text.push_str(&format!("\ncertify mod t^{n}: {verdict}"));
        json["certified"] = json!({"precision": n, "passed": ok});
    }
    Ok(Report { text, json, ok })
}

fn walks(a: &WalkArgs) -> Result<Report> {
    let s = parse_step_set(&a.steps)?;
    if a.bench {
        let mut ns: Vec<usize> = [a.n / 4, a.n / 2, a.n].into_iter().filter(|&n| n > 0).collect();
        ns.dedup();
        let r = bench_methods(&s, &ns)?;
        let ok = r.rows.iter().all(|row| row.agree);
        let rows: Vec<Value> = r
            .rows
            .iter()
            .map(|row| {
                json!({
                    "N": row.n,
                    "naive_seconds": row.naive.as_secs_f64(),
                    "recurrence_seconds": row.recurrence.as_secs_f64(),
                    "agree": row.agree,
                })
            })
            .collect();
        return Ok(Report {
            text: r.to_string().trim_end().to_string(),
            json: json!({
                "steps": s.altitudes(),
                "precompute_seconds": r.precompute.as_secs_f64(),
                "rows": rows,
            }),
            ok,
        });
    }
    let w = if a.naive {
        WalkSeries::from_naive(&naive_counts(&s, a.n))
    } else {
        expand_walks(&s, a.n)?
    };
    let any = a.bridges || a.excursions || a.meanders;
    let picked: Vec<(&str, &str, &TruncSeries)> = [
        ("B", "bridges", a.bridges, &w.b),
        ("E", "excursions", a.excursions, &w.e),
        ("M", "meanders", a.meanders, &w.m),
    ]
    .into_iter()
    .filter(|(_, _, flag, _)| *flag || a.all || !any)
    .map(|(short, long, _, series)| (short, long, series))
    .collect();
    let text = if picked.len() == 1 {
        series_text(picked[0].2)
    } else {
        picked
            .iter()
            .map(|(short, _, series)| format!("{short}: {}", series_text(series)))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let mut json = json!({"steps": s.altitudes(), "N": a.n});
    for (_, long, series) in &picked {
        json[*long] = series_json(series);
    }
    Ok(Report { text, json, ok: true })
}

fn error_json(e: &Error) -> Value {
    let class = match e.class() {
        ErrorClass::Parse => "parse",
        ErrorClass::Precondition => "precondition",
        ErrorClass::Algorithm => "algorithm",
    };
    let mut v = json!({"class": class, "message": e.to_string()});
    if let Error::Syntax { line, column, .. } | Error::UnknownVariable { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v
}

fn set_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let msg = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{msg}");
            } else {
                let _ = write!(err, "{msg}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_PARSE };
        }
    };
    set_threads();
    let result = match &cli.command {
        Command::Residues {
            expr,
            factors,
            squarefree,
        } => read_input(expr, stdin).and_then(|t| residues(&t, *factors, *squarefree)),
        Command::ComposedSum { poly, c } => read_input(poly, stdin).and_then(|t| composed_sum(&t, *c)),
        Command::Diagonal {
            expr,
            series,
            certify,
            optimize,
        } => read_input(expr, stdin).and_then(|t| diagonal(&t, *series, *certify, *optimize)),
        Command::Walks(a) => walks(a),
    };
    match result {
        Ok(r) => {
            if cli.json {
                let mut v = json!({"schema_version": JSON_SCHEMA_VERSION, "ok": r.ok});
                v["result"] = r.json;
                let _ = writeln!(out, "{v}");
            } else {
                let _ = writeln!(out, "{}", r.text);
            }
            if r.ok {
                EXIT_OK
            } else {
                if !cli.json {
                    let _ = writeln!(err, "error: certification failed");
                }
                EXIT_ALGORITHM
            }
        }
        Err(e) => {
            if cli.json {
                let v = json!({"schema_version": JSON_SCHEMA_VERSION, "ok": false, "error": error_json(&e)});
                let _ = writeln!(out, "{v}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            exit_code(e.class())
        }
    }
}
