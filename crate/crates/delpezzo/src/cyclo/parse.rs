//! Parser for exact scalar literals.
//!
//! Accepts arithmetic expressions over the atoms
//!
//! * integers and rationals (`3`, `-1/2`),
//! * roots of unity (`zeta(8)`, `zeta(12)^5`, `i`),
//! * square roots of integers (`sqrt2`, `sqrt3`, `sqrt(5)`),
//!
//! combined with `+ - * / ^` and parentheses.  Every literal evaluates
//! to an exact [`CycNum`]; there is no approximate fallback.

use super::{sqrt_int, CycError, CycNum};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(src: &str) -> Result<Vec<Tok>, CycError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(digit) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(digit as u64))
                            .ok_or_else(|| CycError::BadLiteral(format!("integer overflow in `{src}`")))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            other => {
                return Err(CycError::BadLiteral(format!(
                    "unexpected character `{other}` in `{src}`"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), CycError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {t:?}")))
        }
    }

    fn err(&self, msg: &str) -> CycError {
        CycError::BadLiteral(format!("{msg} at token {} in `{}`", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<CycNum, CycError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, CycError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum, CycError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(Tok::Int(e)) = self.bump().cloned() else {
                return Err(self.err("expected integer exponent"));
            };
            let e = e as i64;
            if base.is_zero() && neg {
                return Err(self.err("zero to a negative power"));
            }
            return Ok(base.pow(if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn int_arg(&mut self) -> Result<u64, CycError> {
        self.expect(Tok::LParen)?;
        let Some(Tok::Int(v)) = self.bump().cloned() else {
            return Err(self.err("expected integer argument"));
        };
        self.expect(Tok::RParen)?;
        Ok(v)
    }

    fn atom(&mut self) -> Result<CycNum, CycError> {
        match self.bump().cloned() {
            Some(Tok::Int(v)) => Ok(CycNum::from_int(v as i64)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(CycNum::i()),
                "zeta" => {
                    let n = self.int_arg()?;
                    if n == 0 || n > u32::MAX as u64 {
                        return Err(self.err("invalid root of unity order"));
                    }
                    CycNum::zeta(n as u32)
                }
                "sqrt" => {
                    let n = self.int_arg()?;
                    sqrt_int(n as i64)
                }
                "sqrt2" => sqrt_int(2),
                "sqrt3" => sqrt_int(3),
                "sqrt5" => sqrt_int(5),
                "sqrt6" => sqrt_int(6),
                "sqrt7" => sqrt_int(7),
                other => Err(self.err(&format!("unknown name `{other}`"))),
            },
            _ => Err(self.err("expected a scalar atom")),
        }
    }
}

/// Parses a scalar literal into an exact cyclotomic number.
pub fn parse_scalar(src: &str) -> Result<CycNum, CycError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(CycError::BadLiteral("empty scalar".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        src,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_signs() {
        assert_eq!(parse_scalar("3").unwrap(), CycNum::from_int(3));
        assert_eq!(parse_scalar("-1/2").unwrap(), CycNum::from_ratio(-1, 2));
        assert_eq!(parse_scalar("2/4").unwrap(), CycNum::from_ratio(1, 2));
    }

    #[test]
    fn roots_of_unity() {
        let z = parse_scalar("zeta(8)^3").unwrap();
        assert_eq!(z, CycNum::zeta(8).unwrap().pow(3));
        assert_eq!(parse_scalar("zeta(8)^-1").unwrap(), CycNum::zeta(8).unwrap().pow(-1));
        assert_eq!(parse_scalar("i^2").unwrap(), CycNum::from_int(-1));
    }

    #[test]
    fn radicals_and_compounds() {
        let v = parse_scalar("sqrt2*sqrt3").unwrap();
        assert_eq!(&v * &v, CycNum::from_int(6));
        let w = parse_scalar("(1+i)^2").unwrap();
        assert_eq!(w, &CycNum::from_int(2) * &CycNum::i());
        let s = parse_scalar("sqrt(5)").unwrap();
        assert_eq!(&s * &s, CycNum::from_int(5));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("zeta(0)").is_err());
        assert!(parse_scalar("foo").is_err());
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
