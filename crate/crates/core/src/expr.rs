//! Arithmetic expressions over catalog parameters.
//!
//! Grammar: `+ − * /`, `^` with an integer exponent, unary minus,
//! parentheses, integer literals, identifiers, the imaginary unit `i`, and
//! the functions `poch(a,n)`, `qpoch(a,q,n)`, `fact(n)`, `binom(n,k)`,
//! `cis(θ)`, `sqrt(z)`, `exp(z)`. The last three and `i` need the numeric
//! field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::pochhammer::{binomial_coefficient, factorial, pochhammer, q_pochhammer, QLength};
use crate::scalar::{FieldKind, NumericScalar, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Imag,
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Imag => f.write_str("i"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    Op::Add => "+",
                    Op::Sub => "-",
                    Op::Mul => "*",
                    Op::Div => "/",
                    Op::Pow => "^",
                };
                write!(f, "({a}{s}{b})")
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s
                .parse()
                .map_err(|_| Error::Parse(format!("integer literal `{s}` out of range")))?;
            out.push(Tok::Int(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}` in `{}`", self.src)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.sum()?];
                    while self.eat(',') {
                        args.push(self.sum()?);
                    }
                    self.expect(')')?;
                    Ok(Expr::Call(name, args))
                } else if name == "i" {
                    Ok(Expr::Imag)
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(Error::Parse(format!("incomplete expression `{}`", self.src))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        src,
    };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(e)
}

fn arity(name: &str) -> Option<usize> {
    Some(match name {
        "poch" | "binom" => 2,
        "qpoch" => 3,
        "fact" | "cis" | "sqrt" | "exp" => 1,
        _ => return None,
    })
}

impl Expr {
    /// Free identifiers, excluding function names and `i`.
    pub fn identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(e) => e.collect(out),
            Expr::Bin(_, a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect(out)),
            Expr::Int(_) | Expr::Imag => {}
        }
    }

    pub fn depends_on(&self, name: &str) -> bool {
        self.identifiers().contains(name)
    }

    pub fn eval<S: Scalar>(&self, env: &BTreeMap<String, S>) -> Result<S> {
        match self {
            Expr::Int(v) => Ok(S::from_int(*v)),
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::MissingParameter(v.clone())),
            Expr::Imag => numeric_only::<S>("i").and_then(|_| S::from_complex(num_complex::Complex64::new(0.0, 1.0))),
            Expr::Neg(e) => Ok(-e.eval(env)?),
            Expr::Bin(op, a, b) => {
                let x = a.eval(env)?;
                let y = b.eval(env)?;
                match op {
                    Op::Add => Ok(x + y),
                    Op::Sub => Ok(x - y),
                    Op::Mul => Ok(x * y),
                    Op::Div => x.checked_div(&y),
                    Op::Pow => {
                        let e = y
                            .as_integer()
                            .ok_or_else(|| Error::invalid("exponent", format!("`{b}` must be an integer")))?;
                        x.powi(e)
                    }
                }
            }
            Expr::Call(name, args) => {
                match arity(name) {
                    Some(n) if n == args.len() => {}
                    Some(n) => {
                        return Err(Error::Parse(format!("{name} takes {n} arguments")));
                    }
                    None => return Err(Error::Parse(format!("unknown function `{name}`"))),
                }
                let vals: Vec<S> = args.iter().map(|a| a.eval(env)).collect::<Result<_>>()?;
                let count = |v: &S, what: &str| {
                    v.as_nonneg_int()
                        .ok_or_else(|| Error::invalid(what, format!("{name} needs a non-negative integer, got {v}")))
                };
                match name.as_str() {
                    "poch" => Ok(pochhammer(&vals[0], count(&vals[1], "n")?)),
                    "qpoch" => q_pochhammer(&vals[0], &vals[1], QLength::Finite(count(&vals[2], "n")?)),
                    "fact" => Ok(factorial(count(&vals[0], "n")?)),
                    "binom" => Ok(binomial_coefficient(count(&vals[0], "n")?, count(&vals[1], "k")?)),
                    _ => {
                        numeric_only::<S>(name)?;
                        let z = NumericScalar::from_complex(vals[0].to_complex())?;
                        let w = match name.as_str() {
                            "cis" => {
                                NumericScalar::from_complex((z.value() * num_complex::Complex64::new(0.0, 1.0)).exp())?
                            }
                            "sqrt" => z.sqrt(),
                            _ => z.exp(),
                        };
                        S::from_complex(w.value())
                    }
                }
            }
        }
    }
}

fn numeric_only<S: Scalar>(what: &str) -> Result<()> {
    if S::KIND == FieldKind::Exact {
        Err(Error::UnsupportedMode(format!("`{what}` needs the numeric field")))
    } else {
        Ok(())
    }
}

/// Parses and evaluates in one step.
pub fn eval_str<S: Scalar>(src: &str, env: &BTreeMap<String, S>) -> Result<S> {
    parse(src)?.eval(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    fn env(pairs: &[(&str, ExactScalar)]) -> BTreeMap<String, ExactScalar> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn arithmetic_and_precedence() {
        let e = env(&[("x", r(3, 1)), ("alpha", r(1, 2)), ("c", r(2, 5))]);
        assert_eq!(eval_str("-x-alpha", &e).unwrap(), r(-7, 2));
        assert_eq!(eval_str("1/c", &e).unwrap(), r(5, 2));
        assert_eq!(eval_str("1 + 2*3", &e).unwrap(), r(7, 1));
        assert_eq!(eval_str("(1-c)/c", &e).unwrap(), r(3, 2));
        assert_eq!(eval_str("c^2", &e).unwrap(), r(4, 25));
        assert_eq!(eval_str("c^-1", &e).unwrap(), r(5, 2));
        assert_eq!(eval_str("-c^2", &e).unwrap(), r(-4, 25));
        assert_eq!(eval_str("2^(x-1)", &e).unwrap(), r(4, 1));
    }

    #[test]
    fn functions() {
        let e = env(&[("alpha", r(3, 2)), ("n", r(2, 1)), ("q", r(1, 2))]);
        assert_eq!(eval_str("poch(alpha,n)/fact(n)", &e).unwrap(), r(15, 8));
        assert_eq!(eval_str("binom(5,n)", &e).unwrap(), r(10, 1));
        assert_eq!(eval_str("qpoch(q,q,n)", &e).unwrap(), r(3, 8));
        assert!(matches!(eval_str("cis(alpha)", &e), Err(Error::UnsupportedMode(_))));
        assert!(matches!(eval_str("i", &e), Err(Error::UnsupportedMode(_))));
        assert!(matches!(
            eval_str("fact(alpha)", &e),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(eval_str("poch(1)", &e).is_err());
        assert!(eval_str("nope(1)", &e).is_err());
    }

    #[test]
    fn numeric_functions() {
        let mut e = BTreeMap::new();
        e.insert(
            "theta".to_string(),
            NumericScalar::real(std::f64::consts::FRAC_PI_3).unwrap(),
        );
        let v: NumericScalar = eval_str("cis(theta)", &e).unwrap();
        assert!((v.re() - 0.5).abs() < 1e-15 && (v.im() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let w: NumericScalar = eval_str("1 + 2*i", &e).unwrap();
        assert_eq!((w.re(), w.im()), (1.0, 2.0));
        let s: NumericScalar = eval_str("sqrt(4)*exp(0)", &e).unwrap();
        assert_eq!(s.re(), 2.0);
    }

    #[test]
    fn errors() {
        let e = env(&[]);
        assert!(matches!(eval_str("x", &e), Err(Error::MissingParameter(_))));
        assert!(matches!(parse("1 +"), Err(Error::Parse(_))));
        assert!(matches!(parse("(1"), Err(Error::Parse(_))));
        assert!(matches!(parse("1 $ 2"), Err(Error::Parse(_))));
        assert!(matches!(parse("1 2"), Err(Error::Parse(_))));
        assert_eq!(eval_str("1/0", &e), Err(Error::DivisionByZero));
        assert!(eval_str("2^(1/2)", &e).is_err());
    }

    #[test]
    fn identifier_collection() {
        let ids = parse("poch(alpha,n)*c^x - i").unwrap().identifiers();
        let names: Vec<_> = ids.into_iter().collect();
        assert_eq!(names, vec!["alpha", "c", "n", "x"]);
        assert!(parse("q^(-N)").unwrap().depends_on("N"));
        assert!(!parse("1/c").unwrap().depends_on("x"));
    }
}
