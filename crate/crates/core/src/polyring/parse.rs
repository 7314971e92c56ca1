use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, VarSet};
use crate::error::{Error, Result};

/// Parses an expression into canonical form.
///
/// Grammar: integers, rationals `a/b`, variables, `+`, `-`, `*`, `^` with
/// integer exponents, and parentheses.  Implicit multiplication is not
/// allowed: `2x` is a syntax error.  The Unicode minus sign is accepted as a
/// synonym for `-`.  Positions in errors are 1-based character offsets.
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<Polynomial> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let poly = parser.expr()?;
    match parser.peek() {
        (Tok::End, _) => Ok(poly),
        (tok, at) => Err(syntax(at, format!("unexpected {}", tok.describe()))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{}`", n),
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, message: String) -> Error {
    Error::Syntax { position, message }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, at));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, at));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, at));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, at));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, at));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, at));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, at));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse::<BigInt>().expect("digit run");
                out.push((Tok::Int(n), start + 1));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.push((Tok::Ident(name), start + 1));
            }
            other => return Err(syntax(at, format!("unexpected character `{}`", other))),
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> (&Tok, usize) {
        let (tok, at) = &self.tokens[self.pos];
        (tok, *at)
    }

    fn bump(&mut self) -> (Tok, usize) {
        let item = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        item
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                (Tok::Plus, _) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.try_add(&rhs)?;
                }
                (Tok::Minus, _) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.try_sub(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while matches!(self.peek().0, Tok::Star) {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.try_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            (Tok::Minus, _) => {
                self.bump();
                let inner = self.factor()?;
                Ok(-&inner)
            }
            (Tok::Plus, _) => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if matches!(self.peek().0, Tok::Caret) {
            self.bump();
            let (tok, at) = self.bump();
            let e = match tok {
                Tok::Int(n) => u32::try_from(&n)
                    .map_err(|_| syntax(at, format!("exponent `{}` out of range", n)))?,
                other => {
                    return Err(syntax(
                        at,
                        format!("expected integer exponent, found {}", other.describe()),
                    ))
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (tok, at) = self.bump();
        match tok {
            Tok::LParen => {
                let inner = self.expr()?;
                let (tok, at) = self.bump();
                if tok != Tok::RParen {
                    return Err(syntax(
                        at,
                        format!("expected `)`, found {}", tok.describe()),
                    ));
                }
                Ok(inner)
            }
            Tok::Int(numer) => {
                // A following `/int` is a rational literal, nothing else.
                if matches!(self.peek().0, Tok::Slash) {
                    self.bump();
                    let (tok, at) = self.bump();
                    match tok {
                        Tok::Int(denom) => {
                            if denom.is_zero() {
                                return Err(syntax(at, "zero denominator".into()));
                            }
                            Ok(Polynomial::constant(self.vars, Rational::new(numer, denom)))
                        }
                        other => Err(syntax(
                            at,
                            format!("expected integer denominator, found {}", other.describe()),
                        )),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.vars,
                        Rational::from_integer(numer),
                    ))
                }
            }
            Tok::Ident(name) => {
                if !self.vars.contains(&name) {
                    return Err(Error::UnknownVariable(name));
                }
                Polynomial::variable(self.vars, &name)
            }
            other => Err(syntax(
                at,
                format!("expected a value, found {}", other.describe()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn vs_xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    #[test]
    fn parses_mixed_terms() {
        let vars = vs_xy();
        let p = parse_poly("x^2*y + 3/2*x - 7", &vars).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.to_string(), "x^2*y + 3/2*x - 7");
    }

    #[test]
    fn parses_zero() {
        let vars = vs_xy();
        let p = parse_poly("0", &vars).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn expands_parenthesized_square() {
        let vars = vs_xy();
        let p = parse_poly("(x+y)^2", &vars).unwrap();
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let vars = vs_xy();
        let err = parse_poly("2x", &vars).unwrap_err();
        match err {
            Error::Syntax { position, .. } => assert_eq!(position, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_variable() {
        let vars = vs_xy();
        assert!(matches!(
            parse_poly("x + z", &vars),
            Err(Error::UnknownVariable(name)) if name == "z"
        ));
    }

    #[test]
    fn unicode_minus_is_accepted() {
        let vars = vs_xy();
        let a = parse_poly("\u{2212}x \u{2212} y", &vars).unwrap();
        let b = parse_poly("-x - y", &vars).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_literals() {
        let vars = vs_xy();
        let p = parse_poly("3/2", &vars).unwrap();
        assert_eq!(p.constant_value().unwrap(), rat(3, 2));
        assert!(parse_poly("1/0", &vars).is_err());
    }

    #[test]
    fn print_parse_fixpoint() {
        let vars = vs_xy();
        for text in ["x^2*y + 3/2*x - 7", "(x+y)^3 - x*y", "-x - y", "0", "5/3"] {
            let p = parse_poly(text, &vars).unwrap();
            let printed = p.to_string();
            let q = parse_poly(&printed, &vars).unwrap();
            assert_eq!(p, q);
            assert_eq!(printed, q.to_string());
        }
    }
}
