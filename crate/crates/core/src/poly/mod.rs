//! Dense univariate polynomials over F_p and F_{p^d}.

mod factor;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{ExtensionField, FieldElement, PrimeField};

pub use factor::{
    count_irreducibles, enumerate_irreducibles, find_root, Factorization, SquarefreeFactor,
};
pub use parse::{parse_poly, MAX_PARSED_DEGREE};

/// A polynomial with coefficients in one field, index `i` holding the
/// coefficient of `X^i`. Trailing zeros are always stripped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: ExtensionField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &ExtensionField, coeffs: Vec<FieldElement>) -> Self {
        assert!(coeffs.iter().all(|c| c.field() == field), "coefficient from a foreign field");
        let mut p = Polynomial {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// Builds a polynomial from integer coefficients (embedded via `Z -> F_p`).
    pub fn from_u64s(field: &ExtensionField, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn zero(field: &ExtensionField) -> Self {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &ExtensionField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The variable `X`.
    pub fn x(field: &ExtensionField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(&field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other).expect("same coefficient field");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other).expect("same coefficient field");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other).expect("same coefficient field");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        Self::new(&self.field, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Quotient and remainder, `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = &r[top] * &lead_inv;
            let shift = top - dd;
            for (i, m) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * m);
            }
            q[shift] = c;
        }
        r.truncate(dd);
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub(crate) fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        self.check(other).expect("same coefficient field");
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_u64(i as u64))
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// Horner evaluation at an element of the coefficient field.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(&self.field).rem(modulus)?;
        let mut b = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `self^q mod modulus` where `q` is the size of the coefficient field.
    pub(crate) fn pow_q_mod(&self, modulus: &Self) -> Self {
        let p = self.field.p();
        let mut h = self.rem(modulus).expect("nonzero modulus");
        for _ in 0..self.field.degree() {
            h = h.pow_mod(p, modulus).expect("nonzero modulus");
        }
        h
    }

    /// Applies `x -> x^(p^k)` to every coefficient.
    pub fn map_frobenius(&self, k: i64) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| c.frobenius(k)).collect())
    }

    /// Embeds a polynomial over F_p into `target`, which must have the same characteristic.
    pub fn lift(&self, target: &ExtensionField) -> Result<Self> {
        if self.field.degree() != 1 || self.field.p() != target.p() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::new(
            target,
            self.coeffs.iter().map(|c| target.from_u64(c.coeffs()[0])).collect(),
        ))
    }

    /// Integer coefficients of a polynomial over F_p.
    pub fn to_u64s(&self) -> Vec<u64> {
        assert_eq!(self.field.degree(), 1, "not a polynomial over a prime field");
        self.coeffs.iter().map(|c| c.coeffs()[0]).collect()
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field.base()
    }

    /// Parses the text grammar over the given field.
    pub fn parse(text: &str, field: &ExtensionField) -> Result<Self> {
        parse_poly(text, field)
    }

    pub fn factor(&self) -> Result<Factorization> {
        factor::factor(self)
    }

    pub fn squarefree_decomposition(&self) -> Result<Vec<SquarefreeFactor>> {
        factor::squarefree_decomposition(self)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        factor::is_irreducible(self)
    }
}

impl Ord for Polynomial {
    /// Degree first, then coefficients from the constant term upward.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let compound = cs.contains(' ') || (cs.contains('a') && cs.contains('*'));
            let coeff = if compound { format!("({cs})") } else { cs };
            match i {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if i == 1 {
                        f.write_str("X")?;
                    } else {
                        write!(f, "X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}
