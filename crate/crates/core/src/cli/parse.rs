//! Expressions over `Q` in named variables, and step sets.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::bivar::{BiPoly, BiRational};
use crate::corealg::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::walks::StepSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

/// A node with the position of its first character, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(message: impl Into<String>, line: usize, column: usize) -> Error {
    Error::Syntax {
        message: message.into(),
        line,
        column,
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
        } else if "+-*/^()".contains(c) {
            chars.next();
            column += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
        } else {
            return Err(syntax(format!("unexpected character `{c}`"), l0, c0));
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn node(kind: ExprKind, t: &Token) -> Expr {
        Expr {
            kind,
            line: t.line,
            column: t.column,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.at('+') || self.at('-') {
            let op = self.bump();
            let rhs = self.term()?;
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            let kind = if op.tok == Tok::Sym('+') {
                ExprKind::Add(a, b)
            } else {
                ExprKind::Sub(a, b)
            };
            lhs = Self::node(kind, &op);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.at('*') || self.at('/') {
            let op = self.bump();
            let rhs = self.unary()?;
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            let kind = if op.tok == Tok::Sym('*') {
                ExprKind::Mul(a, b)
            } else {
                ExprKind::Div(a, b)
            };
            lhs = Self::node(kind, &op);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.at('-') {
            let op = self.bump();
            let e = self.unary()?;
            return Ok(Self::node(ExprKind::Neg(Box::new(e)), &op));
        }
        if self.at('+') {
            self.bump();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.at('^') {
            let op = self.bump();
            let exp = self.unary()?;
            return Ok(Self::node(ExprKind::Pow(Box::new(base), Box::new(exp)), &op));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok(Self::node(ExprKind::Int(n.clone()), &t)),
            Tok::Ident(name) => {
                if !self.vars.contains(&name.as_str()) {
                    return Err(Error::UnknownVariable {
                        name: name.clone(),
                        line: t.line,
                        column: t.column,
                    });
                }
                Ok(Self::node(ExprKind::Var(name.clone()), &t))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.at(')') {
                    let p = self.peek();
                    return Err(syntax("expected `)`", p.line, p.column));
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(syntax("unexpected end of input", t.line, t.column)),
            Tok::Sym(c) => Err(syntax(format!("unexpected `{c}`"), t.line, t.column)),
        }
    }
}

/// Parses `text` with the given variable names.
pub fn parse_expr(text: &str, vars: &[&str]) -> Result<Expr> {
    let toks = lex(text)?;
    if toks.len() == 1 {
        return Err(syntax("empty expression", 1, 1));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax("unexpected trailing input", t.line, t.column));
    }
    Ok(e)
}

impl Expr {
    /// Variable names in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Int(_) => {}
            ExprKind::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            ExprKind::Neg(a) => a.collect_vars(out),
            ExprKind::Add(a, b)
            | ExprKind::Sub(a, b)
            | ExprKind::Mul(a, b)
            | ExprKind::Div(a, b)
            | ExprKind::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates with `x_var` as `x` and `y_var` as `y`.
    pub fn eval(&self, x_var: &str, y_var: &str) -> Result<BiRational> {
        Ok(match &self.kind {
            ExprKind::Int(n) => BiRational::from_poly(BiPoly::constant(Rational::from_integer(n.clone()))),
            ExprKind::Var(v) if v == x_var => BiRational::from_poly(BiPoly::x()),
            ExprKind::Var(v) if v == y_var => BiRational::from_poly(BiPoly::y()),
            ExprKind::Var(v) => {
                return Err(Error::UnknownVariable {
                    name: v.clone(),
                    line: self.line,
                    column: self.column,
                })
            }
            ExprKind::Neg(a) => a.eval(x_var, y_var)?.neg(),
            ExprKind::Add(a, b) => a.eval(x_var, y_var)?.add(&b.eval(x_var, y_var)?),
            ExprKind::Sub(a, b) => a.eval(x_var, y_var)?.sub(&b.eval(x_var, y_var)?),
            ExprKind::Mul(a, b) => a.eval(x_var, y_var)?.mul(&b.eval(x_var, y_var)?),
            ExprKind::Div(a, b) => {
                let d = b.eval(x_var, y_var)?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                a.eval(x_var, y_var)?.div(&d)?
            }
            ExprKind::Pow(a, b) => {
                let e = b.eval(x_var, y_var)?;
                let bad = || {
                    syntax("exponent must be a nonnegative integer", b.line, b.column)
                };
                if !e.denom().is_constant_in_y() || e.numer().deg_x() > 0 || e.numer().deg_y() > 0 {
                    return Err(bad());
                }
                let v = e.numer().coeff(0, 0) / e.denom().coeff(0, 0);
                if !v.is_integer() || v.is_negative() {
                    return Err(bad());
                }
                let k = v.to_integer().to_u32().filter(|k| *k <= 1 << 16).ok_or_else(bad)?;
                let base = a.eval(x_var, y_var)?;
                let mut acc = BiRational::one();
                for _ in 0..k {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
}

/// Parses and evaluates a rational function in `x` and `y`.
pub fn parse_rational(text: &str) -> Result<BiRational> {
    parse_expr(text, &["x", "y"])?.eval("x", "y")
}

/// `"2,1,-2"` or `"{(1,2),(1,1),(1,-2)}"`.
pub fn parse_step_set(text: &str) -> Result<StepSet> {
    let t = text.trim();
    let column = |rest: &str| text.len() - rest.len() + 1;
    let mut alts = Vec::new();
    if let Some(inner) = t.strip_prefix('{') {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| syntax("expected `}`", 1, text.len() + 1))?;
        let mut rest = inner.trim_start();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax("expected `(`", 1, column(rest)))?;
            let close = open.find(')').ok_or_else(|| syntax("expected `)`", 1, column(open)))?;
            let parts: Vec<&str> = open[..close].split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(syntax("expected a pair `(1,u)`", 1, column(rest)));
            }
            let a: i64 = parts[0].parse().map_err(|_| syntax("expected an integer", 1, column(open)))?;
            let u: i64 = parts[1].parse().map_err(|_| syntax("expected an integer", 1, column(open)))?;
            if a != 1 {
                return Err(Error::InvalidStepSet(format!("step ({a},{u}) is not of the form (1,u)")));
            }
            alts.push(u);
            rest = open[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return Err(syntax("expected `,`", 1, column(rest)));
            }
        }
    } else {
        let mut offset = 0;
        for part in t.split(',') {
            let p = part.trim();
            let u: i64 = p.parse().map_err(|_| {
                syntax(format!("expected an integer, found `{p}`"), 1, column(&t[offset..]))
            })?;
            alts.push(u);
            offset += part.len() + 1;
        }
    }
    StepSet::new(&alts)
}

/// A nonzero polynomial in one variable, and the name of that variable
/// (`y` when the input is constant).
pub fn parse_univariate(text: &str) -> Result<(UniPoly, String)> {
    let e = parse_expr(text, &["x", "y", "z", "t"])?;
    let names = e.variables();
    if names.len() > 1 {
        return Err(Error::OutOfRange(format!(
            "expected one variable, found {}",
            names.join(", ")
        )));
    }
    let v = names.first().cloned().unwrap_or_else(|| "y".into());
    let r = e.eval("", &v)?;
    let (n, d) = (r.numer(), r.denom());
    if d.deg_x() > 0 || d.deg_y() > 0 {
        return Err(Error::OutOfRange("expected a polynomial".into()));
    }
    let c = d.coeff(0, 0);
    let p = UniPoly::new((0..=n.deg_y()).map(|j| n.coeff(0, j) / &c).collect());
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok((p, v))
}
