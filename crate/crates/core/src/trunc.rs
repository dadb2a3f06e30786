//! Truncated polynomials: elements of `L[Y]/(Y^n)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{ExtensionField, FieldElement};
use crate::poly::Polynomial;

/// An element of `L[Y]/(Y^n)`, stored as exactly `n` coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    coeffs: Vec<FieldElement>,
}

impl TruncPoly {
    pub fn zero(field: &ExtensionField, n: usize) -> Self {
        assert!(n >= 1, "truncation length must be positive");
        TruncPoly {
            coeffs: vec![field.zero(); n],
        }
    }

    pub fn constant(c: FieldElement, n: usize) -> Self {
        let mut t = Self::zero(c.field(), n);
        t.coeffs[0] = c;
        t
    }

    pub fn one(field: &ExtensionField, n: usize) -> Self {
        Self::constant(field.one(), n)
    }

    /// The class of `Y` (zero when `n = 1`).
    pub fn var(field: &ExtensionField, n: usize) -> Self {
        let mut t = Self::zero(field, n);
        if n > 1 {
            t.coeffs[1] = field.one();
        }
        t
    }

    /// Takes the first `n` coefficients, padding with zeros.
    pub fn from_coeffs(field: &ExtensionField, coeffs: &[FieldElement], n: usize) -> Self {
        let mut t = Self::zero(field, n);
        for (slot, c) in t.coeffs.iter_mut().zip(coeffs) {
            assert!(c.field() == field, "coefficient from a foreign field");
            *slot = c.clone();
        }
        t
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> &ExtensionField {
        self.coeffs[0].field()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(FieldElement::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncPoly {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncPoly {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.len();
        let mut out = Self::zero(self.field(), n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.field(), self.len());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).expect("same shape");
            }
        }
        acc
    }

    /// Applies `x -> x^(p^k)` to every coefficient.
    pub fn map_frobenius(&self, k: i64) -> Self {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|c| c.frobenius(k)).collect(),
        }
    }

    /// `self(s) = sum_i self_i * s^i`, by Horner's rule.
    pub fn substitute(&self, s: &Self) -> Result<Self> {
        self.check(s)?;
        let n = self.len();
        let mut acc = Self::zero(self.field(), n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s)?;
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial over F_p at `self`.
    pub fn eval_fp_poly(&self, poly: &Polynomial) -> Result<Self> {
        let field = self.field().clone();
        let lifted = poly.lift(&field)?;
        let mut acc = Self::zero(&field, self.len());
        for c in lifted.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Ok(acc)
    }

    /// Coordinates over F_p in the basis `a^l Y^k`, index `k * d + l`.
    pub fn fp_coords(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .flat_map(|c| c.coeffs().iter().copied())
            .collect()
    }

    /// Inverse of [`TruncPoly::fp_coords`].
    pub fn from_fp_coords(field: &ExtensionField, n: usize, coords: &[u64]) -> Self {
        let d = field.degree();
        assert_eq!(coords.len(), n * d, "coordinate vector has the wrong length");
        TruncPoly {
            coeffs: coords.chunks(d).map(|c| field.from_coeffs(c)).collect(),
        }
    }
}

impl fmt::Display for TruncPoly {
    /// Polynomial in `Y`, lowest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            match i {
                0 => f.write_str(&cs)?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if i == 1 {
                        f.write_str("Y")?;
                    } else {
                        write!(f, "Y^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod Y^{}", self, self.len())
    }
}
