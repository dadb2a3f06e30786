//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*'? power)*
//! power  := atom ('^' uint)?
//! atom   := uint | 'X' | 'a' | '(' expr ')'
//! ```
//!
//! Integers are reduced mod p. `a` is the class of `Y` in the coefficient
//! field, so over F_{p^d} one writes `(a+1)*X^2 + a`. Parenthesized products
//! and powers such as `(X^2+X+1)^2` are expanded.

use super::Polynomial;
use crate::error::{Error, Result};
use crate::gf::ExtensionField;

/// Upper bound on the degree of any intermediate result.
pub const MAX_PARSED_DEGREE: usize = 1 << 12;

const MAX_DEPTH: usize = 64;

pub fn parse_poly(text: &str, field: &ExtensionField) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        depth: 0,
    };
    let out = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a ExtensionField,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_atom(c: u8) -> bool {
        c.is_ascii_digit() || matches!(c, b'X' | b'x' | b'a' | b'(')
    }

    fn check_degree(&self, deg: usize) -> Result<()> {
        if deg > MAX_PARSED_DEGREE {
            Err(self.error("degree limit exceeded"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            let explicit = self.eat(b'*');
            match self.peek() {
                Some(c) if Self::starts_atom(c) => {
                    let rhs = self.power()?;
                    let deg = acc.degree().unwrap_or(0) + rhs.degree().unwrap_or(0);
                    self.check_degree(deg)?;
                    acc = acc.mul(&rhs);
                }
                _ if explicit => return Err(self.error("expected a factor after '*'")),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let mut e: u64 = 0;
        while let Some(c) = self.src.get(self.pos).copied().filter(u8::is_ascii_digit) {
            e = e
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| self.error("exponent overflow"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an exponent"));
        }
        let deg = base.degree().unwrap_or(0) as u128 * e as u128;
        if deg > MAX_PARSED_DEGREE as u128 {
            return Err(self.error("degree limit exceeded"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'X') | Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::x(field))
            }
            Some(b'a') => {
                self.pos += 1;
                Ok(Polynomial::constant(field.gen()))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = field.p() as u128;
                let mut v: u128 = 0;
                while let Some(c) = self.src.get(self.pos).copied().filter(u8::is_ascii_digit) {
                    v = (v * 10 + (c - b'0') as u128) % p;
                    self.pos += 1;
                }
                Ok(Polynomial::constant(field.from_u64(v as u64)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{ext_field, PrimeField};

    fn fp(p: u64) -> ExtensionField {
        ExtensionField::prime(PrimeField::new(p).unwrap())
    }

    #[test]
    fn basic_terms() {
        let f2 = fp(2);
        assert_eq!(parse_poly("X^3 + X^2", &f2).unwrap(), Polynomial::from_u64s(&f2, &[0, 0, 1, 1]));
        assert_eq!(parse_poly("X^2 + 1", &f2).unwrap(), Polynomial::from_u64s(&f2, &[1, 0, 1]));
        let f7 = fp(7);
        assert_eq!(parse_poly("3*X^2 + 10X + 8", &f7).unwrap(), Polynomial::from_u64s(&f7, &[1, 3, 3]));
        assert_eq!(parse_poly(" 0 ", &f7).unwrap(), Polynomial::zero(&f7));
        assert_eq!(parse_poly("-X", &f7).unwrap(), Polynomial::from_u64s(&f7, &[0, 6]));
    }

    #[test]
    fn products_and_powers_expand() {
        let f2 = fp(2);
        assert_eq!(
            parse_poly("(X^2+X+1)^2", &f2).unwrap(),
            Polynomial::from_u64s(&f2, &[1, 0, 1, 0, 1])
        );
        assert_eq!(
            parse_poly("X^2 (X+1)", &f2).unwrap(),
            Polynomial::from_u64s(&f2, &[0, 0, 1, 1])
        );
    }

    #[test]
    fn extension_coefficients() {
        let f4 = ext_field(PrimeField::new(2).unwrap(), 2).unwrap();
        let p = parse_poly("(a+1)*X^2 + a", &f4).unwrap();
        assert_eq!(p.coeff(2), f4.from_coeffs(&[1, 1]));
        assert_eq!(p.coeff(1), f4.zero());
        assert_eq!(p.coeff(0), f4.gen());
        // a^2 = a + 1 in F_4
        assert_eq!(parse_poly("a^2", &f4).unwrap(), parse_poly("a+1", &f4).unwrap());
    }

    #[test]
    fn huge_literals_reduce() {
        let f3 = fp(3);
        let p = parse_poly("100000000000000000000000000000000000000001 X", &f3).unwrap();
        // 10^41 + 1 = 1 + 1 = 2 mod 3
        assert_eq!(p, Polynomial::from_u64s(&f3, &[0, 2]));
        assert_eq!(parse_poly("a^18446744073709551615", &f3).unwrap(), Polynomial::zero(&f3));
    }

    #[test]
    fn rejects_malformed() {
        let f2 = fp(2);
        for bad in ["", "X^", "X +", "(X", "X)", "X * ", "Y", "X^99999999999999999999", "X^5000", "((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((((X))))))))))))))))))))))))))))))))))))))))))))))))))))))))))))))))))"] {
            assert!(matches!(parse_poly(bad, &f2), Err(Error::Parse { .. })), "{bad:?}");
        }
    }
}
