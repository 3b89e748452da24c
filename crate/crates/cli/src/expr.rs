//! Surface syntax for scalars and polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*        juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! exponent := int | '-' int | '(' '-'? int ('/' int)? ')'
//! atom   := int | 'q' | 'x' int | 'x_' int | '(' expr ')'
//! ```
//!
//! Products keep the written order and are normal-ordered by the algebra
//! multiplication, so `x3 x1` and `x1 x3` differ. Division is by nonzero
//! scalars only; `q` may carry a half-integer exponent.

use num_bigint::BigInt;
use qharmonic::algebra::{PolyJson, TermJson};
use qharmonic::{Monomial, Poly, QScalar, Space};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] qharmonic::Error),
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

fn tokenize(text: &str) -> PResult<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let j = digits(i);
                let s: String = chars[i..j].iter().collect();
                i = j;
                Tok::Int(s.parse().expect("digits"))
            }
            'q' => {
                i += 1;
                Tok::Q
            }
            'x' => {
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                }
                let j = digits(i);
                if j == i {
                    return syntax(start, "expected a variable index after 'x'");
                }
                let s: String = chars[i..j].iter().collect();
                i = j;
                Tok::Var(s.parse().map_err(|_| ParseError::Syntax { pos: start, msg: "variable index too large".into() })?)
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                i += 1;
                match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                }
            }
            other => return syntax(start, format!("unexpected character '{other}'")),
        };
        out.push((start, tok));
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Val {
    Scalar(QScalar),
    Poly(Poly),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    space: Option<&'a Space>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> PResult<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            syntax(self.pos(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> PResult<Val> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.add(acc, rhs, false)?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.add(acc, rhs, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Val> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs)?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    acc = self.div(acc, rhs, pos)?;
                }
                Tok::Int(_) | Tok::Q | Tok::Var(_) | Tok::LParen => {
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<Val> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(match self.unary()? {
                    Val::Scalar(c) => Val::Scalar(-c),
                    Val::Poly(p) => Val::Poly(-p),
                })
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Val> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let (num, den) = self.exponent()?;
        match base {
            Val::Scalar(c) => {
                if den == 1 {
                    return Ok(Val::Scalar(c.powi(num).map_err(ParseError::from)?));
                }
                // Only powers of t admit a half-integer exponent.
                let shift = c.numerator().valuation() as i64 - c.denominator().valuation() as i64;
                if c != QScalar::t_pow(shift) || (shift * num) % 2 != 0 {
                    return syntax(pos, "half-integer exponents apply only to powers of q");
                }
                Ok(Val::Scalar(QScalar::t_pow(shift * num / 2)))
            }
            Val::Poly(p) => {
                if den != 1 || num < 0 {
                    return syntax(pos, "a polynomial may only be raised to a nonnegative integer power");
                }
                let e = u32::try_from(num).or_else(|_| syntax(pos, "exponent too large"))?;
                Ok(Val::Poly(p.pow(e)))
            }
        }
    }

    /// Exponent as `num / den` with `den ∈ {1, 2}`.
    fn exponent(&mut self) -> PResult<(i64, i64)> {
        let small = |p: &mut Self| -> PResult<i64> {
            let pos = p.pos();
            match p.bump() {
                Tok::Int(v) => i64::try_from(v).or_else(|_| syntax(pos, "exponent too large")),
                _ => syntax(pos, "expected an integer exponent"),
            }
        };
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let num = small(self)?;
                let mut den = 1;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let pos = self.pos();
                    den = small(self)?;
                    if den != 1 && den != 2 {
                        return syntax(pos, "exponent denominator must be 1 or 2");
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                let num = if neg { -num } else { num };
                Ok(if den == 2 && num % 2 == 0 { (num / 2, 1) } else { (num, den) })
            }
            Tok::Minus => {
                self.bump();
                Ok((-small(self)?, 1))
            }
            _ => Ok((small(self)?, 1)),
        }
    }

    fn atom(&mut self) -> PResult<Val> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(Val::Scalar(QScalar::from_bigint(v))),
            Tok::Q => Ok(Val::Scalar(QScalar::q())),
            Tok::Var(j) => {
                let Some(space) = self.space else {
                    return syntax(pos, "variables are not allowed in a scalar expression");
                };
                Ok(Val::Poly(Poly::generator(space, j)?))
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::End => syntax(pos, "unexpected end of input"),
            other => syntax(pos, format!("unexpected token {other:?}")),
        }
    }

    fn lift(&self, v: Val) -> Poly {
        match v {
            Val::Poly(p) => p,
            Val::Scalar(c) => Poly::constant(self.space.expect("polynomial context"), c),
        }
    }

    fn add(&self, a: Val, b: Val, subtract: bool) -> PResult<Val> {
        Ok(match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(if subtract { x - y } else { x + y }),
            (a, b) => {
                let (a, b) = (self.lift(a), self.lift(b));
                Val::Poly(if subtract { a.try_sub(&b)? } else { a.try_add(&b)? })
            }
        })
    }

    fn mul(&self, a: Val, b: Val) -> PResult<Val> {
        Ok(match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x * y),
            (Val::Scalar(x), Val::Poly(p)) | (Val::Poly(p), Val::Scalar(x)) => Val::Poly(p.scale(&x)),
            (Val::Poly(p), Val::Poly(r)) => Val::Poly(p.multiply(&r)?),
        })
    }

    fn div(&self, a: Val, b: Val, pos: usize) -> PResult<Val> {
        let d = match b {
            Val::Scalar(c) => c,
            Val::Poly(p) => match p.as_scalar() {
                Some(c) => c,
                None => return syntax(pos, "division is only by nonzero scalars"),
            },
        };
        if d.is_zero() {
            return syntax(pos, "division by zero");
        }
        let inv = d.inv()?;
        self.mul(a, Val::Scalar(inv))
    }
}

fn run(text: &str, space: Option<&Space>) -> PResult<Val> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, space };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return syntax(p.pos(), "unexpected trailing input");
    }
    Ok(v)
}

/// Parse a polynomial in the algebra of `space`.
pub fn parse_poly(text: &str, space: &Space) -> PResult<Poly> {
    let v = run(text, Some(space))?;
    Ok(match v {
        Val::Poly(p) => p,
        Val::Scalar(c) => Poly::constant(space, c),
    })
}

/// Parse an expression without variables.
pub fn parse_scalar(text: &str) -> PResult<QScalar> {
    match run(text, None)? {
        Val::Scalar(c) => Ok(c),
        Val::Poly(_) => unreachable!("variables are rejected in scalar context"),
    }
}

/// Rebuild a polynomial from its JSON interchange form.
pub fn poly_from_json(json: &PolyJson) -> PResult<Poly> {
    let space = Space::new(json.dim)?;
    let mut terms = Vec::with_capacity(json.terms.len());
    for TermJson { nu, coeff } in &json.terms {
        if nu.len() != json.dim {
            return Err(ParseError::Algebra(qharmonic::Error::InvalidArgument(format!(
                "exponent vector of length {} in N = {}",
                nu.len(),
                json.dim
            ))));
        }
        terms.push((Monomial::new(nu.clone()), parse_scalar(coeff)?));
    }
    Ok(Poly::from_terms(&space, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qharmonic::scalar::{qnum, QConvention};

    fn s(n: usize) -> Space {
        Space::new(n).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s3 = s(3);
        let p = parse_poly("x1^2 x3", &s3).unwrap();
        assert_eq!(p, Poly::monomial(&s3, Monomial::new(vec![2, 0, 1])));
        let p = parse_poly("x3 x1", &s3).unwrap();
        assert_eq!(p.to_string(), "x1 x3 + ((-1 + q)/q^(1/2)) x2^2");
        let p = parse_poly("(1-q)/(1+q) * x2", &s3).unwrap();
        let c = (QScalar::one() - QScalar::q()) / (QScalar::one() + QScalar::q());
        assert_eq!(p, Poly::generator(&s3, 2).unwrap().scale(&c));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("(1-q^2)/(1-q)").unwrap(), qnum(2, QConvention::Basic));
        assert_eq!(parse_scalar("q^(1/2)").unwrap(), QScalar::t_pow(1));
        assert_eq!(parse_scalar("1/q^(3/2)").unwrap(), QScalar::t_pow(-3));
        assert_eq!(parse_scalar("q^-2").unwrap(), QScalar::q_pow(-2));
        assert_eq!(parse_scalar("q^(-3/2)").unwrap(), QScalar::t_pow(-3));
        assert_eq!(parse_scalar("-1/3").unwrap(), QScalar::from_ratio(&num_rational::BigRational::new((-1).into(), 3.into())));
        assert_eq!(parse_scalar("2 - -3").unwrap(), QScalar::from_int(5));
        assert_eq!(parse_scalar("(q^2)^(1/2)").unwrap(), QScalar::q());
        assert_eq!(parse_scalar("-q^2").unwrap(), -QScalar::q_pow(2));
    }

    #[test]
    fn precedence_and_order() {
        let s4 = s(4);
        let a = parse_poly("x2 x1 + 2*x1^2", &s4).unwrap();
        let b = parse_poly("q^-1 x1 x2 + 2 x1 x1", &s4).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("1/3 x1", &s4).unwrap(), parse_poly("x1/3", &s4).unwrap());
        assert_eq!(parse_poly("(x1 + x2)^2", &s4).unwrap(), parse_poly("x1 x1 + x1 x2 + x2 x1 + x2 x2", &s4).unwrap());
        assert_eq!(parse_poly("x_4", &s4).unwrap(), Poly::generator(&s4, 4).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let s3 = s(3);
        assert_eq!(
            parse_poly("x1 + ", &s3),
            Err(ParseError::Syntax { pos: 5, msg: "unexpected end of input".into() })
        );
        assert!(matches!(parse_poly("x1 $ x2", &s3), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x4", &s3), Err(ParseError::Algebra(qharmonic::Error::IndexOutOfRange { .. }))));
        assert!(matches!(parse_poly("x0", &s3), Err(ParseError::Algebra(qharmonic::Error::IndexOutOfRange { .. }))));
        assert!(matches!(parse_poly("1/x1", &s3), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x1/(q-q)", &s3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x1^(1/2)", &s3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_scalar("2^(1/2)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_scalar("x1"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("(x1", &s3), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x1)", &s3), Err(ParseError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn json_round_trip() {
        let s3 = s(3);
        let p = parse_poly("x3 x1 - 1/3 + q^(1/2) x2", &s3).unwrap();
        assert_eq!(poly_from_json(&p.to_json()).unwrap(), p);
    }
}
