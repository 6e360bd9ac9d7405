//! Recursive-descent parser for polynomial text.
//!
//! Accepts the canonical grammar produced by [`format_poly`](super::format_poly)
//! (`z1^2 + 2*z1*z2`, `(1/2+1/2i)*z1`, `z1^-1` for Laurent input) and a few
//! conveniences on top: parenthesized sub-expressions with powers, a bare `i`
//! for the imaginary unit, implicit multiplication before variables,
//! parentheses and `i`, and `x` as an alternative variable letter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'z' | b'x' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "variable needs an index, e.g. z1".into(),
                    });
                }
                let idx = text[ds..i].parse::<usize>().map_err(|_| Error::Syntax {
                    pos: ds,
                    msg: "variable index too large".into(),
                })?;
                out.push((Tok::Var(idx), start));
                continue;
            }
            b'i' => out.push((Tok::I, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {:?}", text[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    nvars: usize,
    field: Field,
    laurent: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.nvars, c)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field, self.nvars);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Var(_)) | Some(Tok::I) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let atom_pos = self.offset();
        let (base, is_var) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.offset();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek() {
            Some(Tok::Int(n)) => n.to_i32().filter(|&e| e <= 1 << 20),
            _ => return self.err("expected an integer exponent"),
        }
        .ok_or(Error::Syntax {
            pos: exp_pos,
            msg: "exponent too large".into(),
        })?;
        self.pos += 1;
        if !negative {
            return Ok(base.pow(e as u32));
        }
        if !self.laurent {
            return Err(Error::NegativeExponent { pos: exp_pos });
        }
        if !is_var && base.len() != 1 {
            return Err(Error::Syntax {
                pos: atom_pos,
                msg: "negative power of a compound expression".into(),
            });
        }
        base.pow_laurent(-e)
    }

    fn atom(&mut self) -> Result<(Poly, bool)> {
        let Some((tok, pos)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => {
                let mut q = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let d = match self.peek() {
                        Some(Tok::Int(d)) if !d.is_zero() => d.clone(),
                        _ => return self.err("expected a positive denominator"),
                    };
                    self.pos += 1;
                    q /= BigRational::from_integer(d);
                }
                let c = Scalar::from_rational(self.field, &q).ok_or(Error::Syntax {
                    pos,
                    msg: format!("denominator vanishes in {}", self.field),
                })?;
                Ok((self.constant(c), false))
            }
            Tok::I => {
                if self.field != Field::GaussianRationals {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("imaginary unit is not available in {}", self.field),
                    });
                }
                Ok((self.constant(Scalar::imag_unit()), false))
            }
            Tok::Var(idx) => {
                if idx == 0 || idx > self.nvars {
                    return Err(Error::UnknownVariable {
                        index: idx,
                        pos,
                        nvars: self.nvars,
                    });
                }
                Ok((
                    Poly::monomial(Monomial::var(self.nvars, idx - 1), Scalar::one(self.field)),
                    true,
                ))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok((inner, false))
            }
            _ => Err(Error::Syntax {
                pos,
                msg: "expected a number, variable or '('".into(),
            }),
        }
    }
}

/// Parses polynomial text in `nvars` variables over `field`. Negative
/// exponents are accepted only when `laurent` is set.
pub fn parse_poly(text: &str, nvars: usize, field: Field, laurent: bool) -> Result<Poly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        nvars,
        field,
        laurent,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a scalar such as `-3/4`, `(1/2-2i)` or `1/2+1/3 i`.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let p = parse_poly(text, 0, field, false)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::format_poly;

    const Q: Field = Field::Rationals;
    const QI: Field = Field::GaussianRationals;

    #[test]
    fn canonical_round_trip() {
        for (text, n, f) in [
            ("z1^2 + 2*z1*z2", 2, Q),
            ("(1/2+1/2i)*z1", 1, QI),
            ("-z1^3*z2 + 1/3*z2^2 - 7", 2, Q),
            ("(0-1i)*z1*z2 + z2", 2, QI),
        ] {
            let p = parse_poly(text, n, f, false).unwrap();
            assert_eq!(format_poly(&p), text);
        }
        let p = parse_poly("z1^-1 + z1", 1, Q, true).unwrap();
        assert_eq!(format_poly(&p), "z1 + z1^-1");
    }

    #[test]
    fn conveniences() {
        let a = parse_poly("(z1+1i*z2)^2", 2, QI, false).unwrap();
        let b = parse_poly("z1^2 + (0+2i)*z1*z2 - z2^2", 2, QI, false).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("x1 x2 + 3i x1", 2, QI, false).unwrap();
        assert_eq!(c, parse_poly("z1*z2 + (0+3i)*z1", 2, QI, false).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("z1^-1", 1, Q, false).unwrap_err(),
            Error::NegativeExponent { pos: 3 }
        );
        assert_eq!(
            parse_poly("z1 + z3", 2, Q, false).unwrap_err(),
            Error::UnknownVariable {
                index: 3,
                pos: 5,
                nvars: 2
            }
        );
        assert!(matches!(
            parse_poly("z1 + ", 1, Q, false),
            Err(Error::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_poly("z1 # 2", 1, Q, false),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(parse_poly("i*z1", 1, Q, false).is_err());
        assert!(parse_poly("1/7", 0, Field::PrimeField(7), false).is_err());
    }

    #[test]
    fn scalars() {
        let s = parse_scalar("1/2+1/3 i", QI).unwrap();
        assert_eq!(s.to_plain_string(), "1/2+1/3 i");
        assert_eq!(parse_scalar("-3/6", Q).unwrap(), Scalar::ratio(Q, -1, 2));
        assert_eq!(
            parse_scalar("4", Field::PrimeField(3)).unwrap(),
            Scalar::from_i64(Field::PrimeField(3), 1)
        );
    }
}
