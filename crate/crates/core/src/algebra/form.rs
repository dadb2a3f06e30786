use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;

/// `n` copies of the local factor `F_{p^d}[Y]/(Y^j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormPart {
    pub d: usize,
    pub j: usize,
    pub n: usize,
}

impl FormPart {
    pub fn new(d: usize, j: usize, n: usize) -> Self {
        FormPart { d, j, n }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.d, self.j)
    }
}

/// The isomorphism invariant `prod_{(d,j)} (F_{p^d}[Y]/(Y^j))^{n_{d,j}}`.
///
/// Parts are sorted by `(d, j)` with no repeated key; the empty form is the
/// zero algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    p: PrimeField,
    parts: Vec<FormPart>,
}

impl CanonicalForm {
    /// Validates and sorts `parts`. Zero fields and repeated `(d, j)` keys are rejected.
    pub fn new(p: PrimeField, mut parts: Vec<FormPart>) -> Result<Self> {
        if let Some(bad) = parts.iter().find(|q| q.d == 0 || q.j == 0 || q.n == 0) {
            return Err(Error::InvalidForm(format!(
                "d, j and n must be positive, got (d={}, j={}, n={})",
                bad.d, bad.j, bad.n
            )));
        }
        let dim = parts.iter().try_fold(0usize, |acc, q| {
            q.n.checked_mul(q.d)?.checked_mul(q.j)?.checked_add(acc)
        });
        if dim.is_none() {
            return Err(Error::InvalidForm("dimension overflows".into()));
        }
        parts.sort();
        if let Some(w) = parts.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(Error::InvalidForm(format!(
                "repeated class (d={}, j={})",
                w[0].d, w[0].j
            )));
        }
        Ok(CanonicalForm { p, parts })
    }

    pub fn p(&self) -> PrimeField {
        self.p
    }

    pub fn parts(&self) -> &[FormPart] {
        &self.parts
    }

    /// Dimension over F_p: `sum n * d * j`.
    pub fn dimension(&self) -> usize {
        self.parts.iter().map(|q| q.n * q.d * q.j).sum()
    }

    /// Number of local factors: `sum n`.
    pub fn slot_count(&self) -> usize {
        self.parts.iter().map(|q| q.n).sum()
    }

    /// `(d, j)` of every slot, in slot order.
    pub fn slot_shapes(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .flat_map(|q| std::iter::repeat(q.key()).take(q.n))
            .collect()
    }

    /// Index of the first slot belonging to each part.
    pub fn part_offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, q| {
                let start = *acc;
                *acc += q.n;
                Some(start)
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FormJson::from(&AlgebraType::Quotient(self.clone())))
            .expect("plain data serializes")
    }

    /// Parses `{"p": .., "parts": [..]}`. The free-algebra tag is rejected here;
    /// use [`AlgebraType::from_json`] to accept it.
    pub fn from_json(text: &str) -> Result<Self> {
        match AlgebraType::from_json(text)? {
            AlgebraType::Quotient(f) => Ok(f),
            AlgebraType::Free(_) => Err(Error::InvalidForm(
                "the free algebra has no finite canonical form".into(),
            )),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let p = self.p.p();
        for (i, q) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            let field = if q.d == 1 {
                format!("F_{p}")
            } else {
                format!("F_{p}^{}", q.d)
            };
            let local = if q.j == 1 {
                field
            } else {
                format!("{field}[Y]/(Y^{})", q.j)
            };
            if q.n == 1 {
                f.write_str(&local)?;
            } else {
                write!(f, "({local})^{}", q.n)?;
            }
        }
        Ok(())
    }
}

/// Outcome of classifying a one-generator algebra: the polynomial ring itself
/// or a finite quotient with its canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraType {
    Free(PrimeField),
    Quotient(CanonicalForm),
}

impl AlgebraType {
    pub fn p(&self) -> PrimeField {
        match self {
            AlgebraType::Free(p) => *p,
            AlgebraType::Quotient(f) => f.p(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FormJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FormJson = serde_json::from_str(text)?;
        let p = PrimeField::new(raw.p)?;
        match (raw.free, raw.parts) {
            (Some(true), None) => Ok(AlgebraType::Free(p)),
            (None | Some(false), Some(parts)) => Ok(AlgebraType::Quotient(CanonicalForm::new(p, parts)?)),
            (Some(true), Some(_)) => Err(Error::InvalidForm("free algebra cannot carry parts".into())),
            (_, None) => Err(Error::InvalidForm("missing \"parts\"".into())),
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraType::Free(p) => write!(f, "{p}[X]"),
            AlgebraType::Quotient(form) => form.fmt(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<FormPart>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    free: Option<bool>,
}

impl From<&AlgebraType> for FormJson {
    fn from(t: &AlgebraType) -> Self {
        match t {
            AlgebraType::Free(p) => FormJson {
                p: p.p(),
                parts: None,
                free: Some(true),
            },
            AlgebraType::Quotient(f) => FormJson {
                p: f.p.p(),
                parts: Some(f.parts.clone()),
                free: None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn sorts_and_validates() {
        let f = CanonicalForm::new(f2(), vec![FormPart::new(1, 2, 1), FormPart::new(1, 1, 1)]).unwrap();
        assert_eq!(f.parts()[0], FormPart::new(1, 1, 1));
        assert_eq!(f.dimension(), 3);
        assert_eq!(f.slot_count(), 2);
        assert_eq!(f.slot_shapes(), vec![(1, 1), (1, 2)]);
        assert!(CanonicalForm::new(f2(), vec![FormPart::new(1, 1, 1), FormPart::new(1, 1, 2)]).is_err());
        assert!(CanonicalForm::new(f2(), vec![FormPart::new(1, 1, 0)]).is_err());
        assert!(CanonicalForm::new(f2(), vec![FormPart::new(usize::MAX, 2, 1)]).is_err());
    }

    #[test]
    fn json_shapes() {
        let f = CanonicalForm::new(f2(), vec![FormPart::new(2, 2, 1)]).unwrap();
        assert_eq!(f.to_json(), r#"{"p":2,"parts":[{"d":2,"j":2,"n":1}]}"#);
        assert_eq!(CanonicalForm::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(AlgebraType::Free(f2()).to_json(), r#"{"p":2,"free":true}"#);
        assert_eq!(AlgebraType::from_json(r#"{"p":2,"free":true}"#).unwrap(), AlgebraType::Free(f2()));
        assert!(CanonicalForm::from_json(r#"{"p":2,"free":true}"#).is_err());
        assert!(AlgebraType::from_json(r#"{"p":4,"parts":[]}"#).is_err());
        assert!(AlgebraType::from_json(r#"{"p":2,"parts":[{"d":1,"j":1,"n":1,"x":0}]}"#).is_err());
        assert!(AlgebraType::from_json(r#"{"p":2}"#).is_err());
    }

    #[test]
    fn display() {
        let f = CanonicalForm::new(f2(), vec![FormPart::new(1, 1, 2), FormPart::new(2, 3, 1)]).unwrap();
        assert_eq!(f.to_string(), "(F_2)^2 x F_2^2[Y]/(Y^3)");
    }
}
