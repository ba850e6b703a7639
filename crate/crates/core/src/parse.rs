//! Parser for the textual element grammar.
//!
//! Elements are arithmetic expressions over integer literals, the symbol
//! `i` (Gaussian fields) or `t` (rational function fields):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' ['-'] digits)?
//! atom   := digits | 'i' | 't' | '(' expr ')'
//! ```
//!
//! so `50/3`, `-2/7`, `1/2-3/4*i` and `(t^2+1)/t` are all accepted and
//! evaluated exactly in the target field. Whitespace is ignored.

use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldKind};

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    field: &'a Field,
}

pub fn parse_element(text: &str, field: &Field) -> Result<FieldElement> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        field,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty element"));
    }
    let x = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected character '{}'", p.text[p.pos] as char),
        ));
    }
    Ok(x)
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)
                    .map_err(|_| Error::parse(at, "division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let digits = self.digits()?;
        let e: i64 = digits
            .parse()
            .map_err(|_| Error::parse(at + 1, "exponent out of range"))?;
        let e = if negative { -e } else { e };
        base.pow(e)
            .map_err(|_| Error::parse(at, "negative power of zero"))
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.text.get(start) {
                Some(&c) => Error::parse(start, format!("expected digits, found '{}'", c as char)),
                None => Error::parse(start, "expected digits, found end of input"),
            });
        }
        Ok(core::str::from_utf8(&self.text[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<FieldElement> {
        let at = match self.peek() {
            None => return Err(Error::parse(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        match self.text[at] {
            b'0'..=b'9' => {
                let n: BigInt = self.digits()?.parse().unwrap();
                self.field
                    .try_from_rational(&BigRational::from_integer(n))
                    .map_err(|e| Error::parse(at, format!("{e}")))
            }
            b'(' => {
                self.pos += 1;
                let x = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(x)
            }
            b'i' if self.field.kind() == FieldKind::GaussianInert => {
                self.pos += 1;
                Ok(self.field.imaginary_unit().unwrap())
            }
            b't' if self.field.kind() == FieldKind::RatFuncTadic => {
                self.pos += 1;
                Ok(self.field.variable().unwrap())
            }
            c => Err(Error::parse(
                at,
                format!("unexpected character '{}'", c as char),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    #[test]
    fn rationals() {
        let f = Field::rational_padic(5).unwrap();
        assert_eq!(f.parse("50/3").unwrap(), f.from_rational(ratio(50, 3)));
        assert_eq!(f.parse("-4/6").unwrap(), f.from_rational(ratio(-2, 3)));
        assert_eq!(f.parse("+7").unwrap(), f.from_int(7));
    }

    #[test]
    fn gaussians() {
        let g = Field::gaussian_inert(3).unwrap();
        let x = g.parse("2-3*i").unwrap();
        assert_eq!(x.to_element_string(), "2-3*i");
        assert_eq!(g.parse("-i").unwrap().to_element_string(), "-i");
        assert_eq!(
            g.parse("1/2+3/4*i").unwrap().to_element_string(),
            "1/2+3/4*i"
        );
    }

    #[test]
    fn rational_functions() {
        let r = Field::ratfunc_tadic(0).unwrap();
        let x = r.parse("(t^2+1)/t").unwrap();
        assert_eq!(x.to_element_string(), "(t^2+1)/(t)");
        assert_eq!(r.parse("t^-2").unwrap(), r.uniformizer_power(-2));
    }

    #[test]
    fn error_positions() {
        let f = Field::rational_padic(5).unwrap();
        assert_eq!(
            f.parse("5//3"),
            Err(Error::Parse {
                position: 2,
                message: "unexpected character '/'".into()
            })
        );
        assert!(matches!(
            f.parse("1/0"),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            f.parse("3*i"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(f.parse(""), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(
            f.parse("(1+2"),
            Err(Error::Parse { position: 4, .. })
        ));
        let r7 = Field::ratfunc_tadic(7).unwrap();
        assert!(matches!(r7.parse("1/7"), Err(Error::Parse { .. })));
    }
}
