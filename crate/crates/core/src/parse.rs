//! Expression front-end.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ['^' ['-'] nat]
//! primary := atom | '(' expr ')' | nat ['/' nat]
//! atom    := ('al' | 'be' | 'z' | 'q' | 'qb' | 'I') ['*']
//! ```
//!
//! A `*` directly after an atom is the postfix adjoint when the next token
//! cannot start a factor (`al*^2`, `be**al`, trailing `al*`); otherwise it is
//! the product (`al*be` is `al` times `be`). Postfix `*` on `q`/`qb` is
//! rejected. Negative exponents are only allowed on units such as `q`.

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::algebra::{Free, FreeElement, Generator};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at position {pos}")]
    BadCharacter { pos: usize, ch: char },
    #[error("unknown identifier {name:?} at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("expected {expected} at position {pos}, found {found:?}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("postfix '*' is not allowed on {name:?} (position {pos})")]
    InvalidAdjoint { pos: usize, name: String },
    #[error("negative exponent on a non-invertible factor at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("exponent too large at position {pos}")]
    ExponentOverflow { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Star,
    Plus,
    Minus,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn starts_factor(&self) -> bool {
        matches!(self, Tok::Ident(_) | Tok::Num(_) | Tok::LParen)
    }

    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Num(n) => n.to_string(),
            Tok::Star => "*".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Caret => "^".into(),
            Tok::Slash => "/".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        let tok = match ch {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut end = pos;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                out.push((pos, Tok::Num(text[pos..end].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = pos;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_alphanumeric() {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                out.push((pos, Tok::Ident(text[pos..end].to_string())));
                continue;
            }
            c => return Err(ParseError::BadCharacter { pos, ch: c }),
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.at + offset).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.toks.last().map(|(p, t)| p + t.describe().len()).unwrap_or(0))
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.at) {
            Some((pos, t)) => ParseError::Unexpected {
                pos: *pos,
                expected,
                found: t.describe(),
            },
            None => ParseError::UnexpectedEnd { expected },
        }
    }

    fn expr(&mut self) -> Result<FreeElement, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeElement, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let exp_pos = self.pos();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let n = match self.next() {
            Some((_, Tok::Num(n))) => n,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("exponent"));
            }
        };
        let n: u32 = n
            .try_into()
            .map_err(|_| ParseError::ExponentOverflow { pos: exp_pos })?;
        let base = if negative {
            let unit = base
                .terms()
                .next()
                .filter(|(w, _)| base.len() == 1 && w.is_empty())
                .and_then(|(_, c)| c.inverse_unit())
                .ok_or(ParseError::NegativeExponent { pos: exp_pos })?;
            Free::scalar(unit)
        } else {
            base
        };
        let mut acc = Free::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<FreeElement, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => {
                        self.at -= 1;
                        Err(self.unexpected("')'"))
                    }
                }
            }
            Some((_, Tok::Num(num))) => {
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let den_pos = self.pos();
                    match self.next() {
                        Some((_, Tok::Num(den))) => {
                            if den.is_zero() {
                                return Err(ParseError::ZeroDenominator { pos: den_pos });
                            }
                            value /= BigRational::from_integer(den);
                        }
                        _ => {
                            self.at -= 1;
                            return Err(self.unexpected("denominator"));
                        }
                    }
                }
                Ok(Free::scalar(Scalar::constant(value)))
            }
            Some((_, Tok::Ident(name))) => self.atom(pos, name),
            Some(_) => {
                self.at -= 1;
                Err(self.unexpected("a factor"))
            }
            None => Err(ParseError::UnexpectedEnd { expected: "a factor" }),
        }
    }

    fn postfix_star(&self) -> bool {
        self.peek() == Some(&Tok::Star) && !self.peek_at(1).is_some_and(Tok::starts_factor)
    }

    fn atom(&mut self, pos: usize, name: String) -> Result<FreeElement, ParseError> {
        let starred = self.postfix_star();
        if starred {
            self.at += 1;
        }
        let gen = |g: Generator| Free::letter(if starred { crate::algebra::Letter::star(g) } else { g });
        match name.as_str() {
            "al" => Ok(gen(Generator::Alpha)),
            "be" => Ok(gen(Generator::Beta)),
            "z" => Ok(Free::letter(Generator::Z)),
            "I" => Ok(Free::one()),
            "q" | "qb" if starred => Err(ParseError::InvalidAdjoint { pos, name }),
            "q" => Ok(Free::scalar(Scalar::q())),
            "qb" => Ok(Free::scalar(Scalar::qb())),
            _ => Err(ParseError::UnknownIdentifier { pos, name }),
        }
    }
}

/// Parses an expression into an unreduced free-algebra element.
pub fn parse_expr(text: &str) -> Result<FreeElement, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    if p.peek().is_none() {
        return Err(ParseError::UnexpectedEnd {
            expected: "an expression",
        });
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(out)
}

/// Parses a scalar-only expression (no algebra letters).
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let x = parse_expr(text)?;
    if let Some((w, _)) = x.terms().find(|(w, _)| !w.is_empty()) {
        return Err(ParseError::Unexpected {
            pos: 0,
            expected: "a scalar expression",
            found: format!("{w:?}"),
        });
    }
    Ok(x.coeff(&[]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator::*;

    fn w(letters: &[Generator]) -> FreeElement {
        Free::word(letters.to_vec(), Scalar::one())
    }

    #[test]
    fn star_between_atoms_is_product() {
        assert_eq!(parse_expr("be*al").unwrap(), w(&[Beta, Alpha]));
        assert_eq!(parse_expr("al*be*").unwrap(), w(&[Alpha, BetaStar]));
    }

    #[test]
    fn double_star_is_adjoint_then_product() {
        assert_eq!(parse_expr("be**al").unwrap(), w(&[BetaStar, Alpha]));
        assert_eq!(parse_expr("al*^2").unwrap(), w(&[AlphaStar, AlphaStar]));
    }

    #[test]
    fn rational_prefactor() {
        let x = parse_expr("(1/2)*(1+z)").unwrap();
        let expected = Free::from_terms([(vec![], Scalar::ratio(1, 2)), (vec![Z], Scalar::ratio(1, 2))]);
        assert_eq!(x, expected);
    }

    #[test]
    fn linear_combination_stays_unreduced() {
        let x = parse_expr("q*al*be - be*al").unwrap();
        let expected = Free::from_terms([
            (vec![Alpha, Beta], Scalar::q()),
            (vec![Beta, Alpha], Scalar::from_int(-1)),
        ]);
        assert_eq!(x, expected);
    }

    #[test]
    fn scalar_powers() {
        assert_eq!(parse_scalar("q^-2*qb").unwrap(), Scalar::q_pow(-2, 1));
        assert_eq!(
            parse_scalar("-1/8 + 1/8*q*qb").unwrap(),
            (Scalar::qqb() - Scalar::one()).scale(&crate::scalars::rational(1, 8))
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_expr("al + foo"),
            Err(ParseError::UnknownIdentifier {
                pos: 5,
                name: "foo".into()
            })
        );
        assert_eq!(
            parse_expr("q* + 1"),
            Err(ParseError::InvalidAdjoint {
                pos: 0,
                name: "q".into()
            })
        );
        assert!(matches!(parse_expr("al + "), Err(ParseError::UnexpectedEnd { .. })));
        assert!(matches!(parse_expr("(al"), Err(ParseError::UnexpectedEnd { .. })));
        assert_eq!(parse_expr("al % be"), Err(ParseError::BadCharacter { pos: 3, ch: '%' }));
        assert_eq!(parse_expr("al^-1"), Err(ParseError::NegativeExponent { pos: 3 }));
        assert_eq!(parse_expr("1/0"), Err(ParseError::ZeroDenominator { pos: 2 }));
        assert!(matches!(
            parse_expr("al be"),
            Err(ParseError::Unexpected { pos: 3, .. })
        ));
    }

    #[test]
    fn identity_and_self_adjoint_z() {
        assert_eq!(parse_expr("I").unwrap(), Free::one());
        assert_eq!(parse_expr("z*").unwrap(), w(&[Z]));
    }
}
