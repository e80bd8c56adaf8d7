//! Textual element expressions.
//!
//! Ring elements are written the way they are printed: integers (`3`, `-1`),
//! pairs for product rings (`(1,0)`), polynomials in the quotient generator
//! (`1+x`, `2*x^2`, `(1,0)*x`) and fractions for localized rings (`a/s`).
//! Parsing produces an [`ElemExpr`] which a ring then evaluates.

use crate::error::{syntax, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemExpr {
    Int(i64),
    Var,
    Tuple(Vec<ElemExpr>),
    Neg(Box<ElemExpr>),
    Add(Box<ElemExpr>, Box<ElemExpr>),
    Sub(Box<ElemExpr>, Box<ElemExpr>),
    Mul(Box<ElemExpr>, Box<ElemExpr>),
    Pow(Box<ElemExpr>, u32),
    Frac(Box<ElemExpr>, Box<ElemExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Var,
    Open,
    Close,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v = text[i..end]
                    .parse::<i64>()
                    .map_err(|_| syntax(text, "integer literal out of range"))?;
                out.push(Tok::Int(v));
            }
            'x' => {
                chars.next();
                out.push(Tok::Var);
            }
            _ => {
                chars.next();
                out.push(match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    other => return Err(syntax(text, format!("unexpected character `{other}`"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn frac(&mut self) -> Result<ElemExpr> {
        let num = self.sum()?;
        if self.eat(&Tok::Slash) {
            let den = self.sum()?;
            return Ok(ElemExpr::Frac(Box::new(num), Box::new(den)));
        }
        Ok(num)
    }

    fn sum(&mut self) -> Result<ElemExpr> {
        let mut acc = if self.eat(&Tok::Minus) {
            ElemExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = ElemExpr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = ElemExpr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ElemExpr> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = ElemExpr::Mul(Box::new(acc), Box::new(self.power()?));
            } else if matches!(self.peek(), Some(Tok::Var) | Some(Tok::Open)) {
                // juxtaposition: `2x`, `3(1,0)`
                acc = ElemExpr::Mul(Box::new(acc), Box::new(self.power()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<ElemExpr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.bump() {
                Some(Tok::Int(e)) if e >= 0 && e <= u32::MAX as i64 => {
                    return Ok(ElemExpr::Pow(Box::new(base), e as u32))
                }
                _ => return Err(syntax(self.text, "exponent must be a nonnegative integer")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ElemExpr> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(ElemExpr::Int(v)),
            Some(Tok::Var) => Ok(ElemExpr::Var),
            Some(Tok::Open) => {
                let mut items = vec![self.frac()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.frac()?);
                }
                if !self.eat(&Tok::Close) {
                    return Err(syntax(self.text, "missing `)`"));
                }
                if items.len() == 1 {
                    Ok(items.pop().unwrap())
                } else {
                    Ok(ElemExpr::Tuple(items))
                }
            }
            Some(t) => Err(syntax(self.text, format!("unexpected token {t:?}"))),
            None => Err(syntax(self.text, "unexpected end of input")),
        }
    }
}

/// Parses an element expression.
pub fn parse_element(text: &str) -> Result<ElemExpr> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(syntax(text, "empty element"));
    }
    let mut p = Parser { text, toks, pos: 0 };
    let e = p.frac()?;
    if p.pos != p.toks.len() {
        return Err(syntax(text, "trailing input"));
    }
    Ok(e)
}

/// Parses an integer polynomial in `x`, returning ascending coefficients.
///
/// Used for the monic relation of a polynomial quotient, where coefficients
/// are plain integers reduced later in the base ring.
pub fn parse_int_poly(text: &str) -> Result<Vec<i64>> {
    fn eval(e: &ElemExpr, text: &str) -> Result<Vec<i64>> {
        Ok(match e {
            ElemExpr::Int(v) => vec![*v],
            ElemExpr::Var => vec![0, 1],
            ElemExpr::Neg(a) => eval(a, text)?.into_iter().map(|c| -c).collect(),
            ElemExpr::Add(a, b) => combine(eval(a, text)?, eval(b, text)?, 1),
            ElemExpr::Sub(a, b) => combine(eval(a, text)?, eval(b, text)?, -1),
            ElemExpr::Mul(a, b) => {
                let (a, b) = (eval(a, text)?, eval(b, text)?);
                let mut out = vec![0i64; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                out
            }
            ElemExpr::Pow(a, k) => {
                let a = eval(a, text)?;
                let mut out = vec![1i64];
                for _ in 0..*k {
                    let mut next = vec![0i64; out.len() + a.len() - 1];
                    for (i, x) in out.iter().enumerate() {
                        for (j, y) in a.iter().enumerate() {
                            next[i + j] += x * y;
                        }
                    }
                    out = next;
                }
                out
            }
            ElemExpr::Tuple(_) | ElemExpr::Frac(..) => {
                return Err(syntax(text, "relation must be an integer polynomial in x"))
            }
        })
    }
    fn combine(mut a: Vec<i64>, b: Vec<i64>, sign: i64) -> Vec<i64> {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (i, c) in b.into_iter().enumerate() {
            a[i] += sign * c;
        }
        a
    }
    let mut coeffs = eval(&parse_element(text)?, text)?;
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Prints ascending integer coefficients as a polynomial in `x`, highest degree first.
pub fn format_int_poly(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push(if c < 0 { '-' } else { '+' });
        }
        let mono = match deg {
            0 => String::new(),
            1 => "x".to_string(),
            d => format!("x^{d}"),
        };
        if deg == 0 {
            out.push_str(&mag.to_string());
        } else if mag == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tuples_and_polynomials() {
        assert_eq!(
            parse_element("(1,0)").unwrap(),
            ElemExpr::Tuple(vec![ElemExpr::Int(1), ElemExpr::Int(0)])
        );
        assert!(matches!(parse_element("1+x").unwrap(), ElemExpr::Add(..)));
        assert!(matches!(parse_element("2x^2").unwrap(), ElemExpr::Mul(..)));
        assert!(matches!(parse_element("(1,0)/(1,1)").unwrap(), ElemExpr::Frac(..)));
        assert!(parse_element("(1,").is_err());
        assert!(parse_element("").is_err());
        assert!(parse_element("y").is_err());
    }

    #[test]
    fn integer_polynomials_round_trip() {
        assert_eq!(parse_int_poly("x^2 + x").unwrap(), vec![0, 1, 1]);
        assert_eq!(parse_int_poly("x^2+x+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_int_poly("(x+1)^2").unwrap(), vec![1, 2, 1]);
        for text in ["x^2", "x^3-2*x+5", "x^2+x+1", "3*x^4-x"] {
            let c = parse_int_poly(text).unwrap();
            assert_eq!(parse_int_poly(&format_int_poly(&c)).unwrap(), c);
        }
        assert_eq!(format_int_poly(&[0, 1, 1]), "x^2+x");
    }
}
