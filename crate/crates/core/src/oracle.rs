//! Brute-force ground truth on `F_p[X]/(P)`, straight from the definitions.
//!
//! Everything here uses its own residue arithmetic on raw `u64` vectors and its
//! own elimination, sharing nothing with the field, factoring or classification
//! code it is meant to check.

use crate::error::{Error, Result};
use crate::gf::{ExtensionField, PrimeField};
use crate::poly::Polynomial;

/// Default bound on the number of residues a search may visit.
pub const DEFAULT_BRUTE_CAP: u64 = 1 << 22;

/// `F_p[X]/(P)` with `P` made monic; residues have length `deg P`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    p: u64,
    /// Monic, constant term first, length `deg + 1`.
    modulus: Vec<u64>,
}

impl QuotientAlgebra {
    pub fn new(poly: &Polynomial) -> Result<Self> {
        if poly.field().degree() != 1 {
            return Err(Error::FieldMismatch);
        }
        if poly.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let p = poly.field().p();
        let mut modulus = poly.to_u64s();
        let lead = *modulus.last().expect("nonconstant");
        let inv = inv_mod(lead, p);
        for c in &mut modulus {
            *c = mul_mod(*c, inv, p);
        }
        Ok(QuotientAlgebra { p, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The monic modulus as a polynomial.
    pub fn modulus(&self) -> Polynomial {
        self.to_polynomial(&self.modulus)
    }

    /// `p^dim`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (0..self.dimension()).try_fold(1u64, |acc, _| acc.checked_mul(self.p))
    }

    /// Residue number `idx`: base-p digits, constant term least significant.
    pub fn residue(&self, mut idx: u64) -> Vec<u64> {
        (0..self.dimension())
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    pub fn to_polynomial(&self, r: &[u64]) -> Polynomial {
        let fp = PrimeField::new(self.p).expect("validated on construction");
        Polynomial::from_u64s(&ExtensionField::prime(fp), r)
    }

    pub fn one(&self) -> Vec<u64> {
        let mut r = vec![0; self.dimension()];
        r[0] = 1 % self.p;
        r
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.dimension();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, self.p)) % self.p;
            }
        }
        // X^n = -(m_0 + ... + m_{n-1} X^{n-1})
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                let s = &mut prod[k - n + i];
                *s = (*s + self.p - mul_mod(c, m, self.p)) % self.p;
            }
        }
        prod.truncate(n);
        prod
    }

    /// `f(t)` for a coefficient list `f` (constant term first) over F_p.
    fn eval(&self, f: &[u64], t: &[u64]) -> Vec<u64> {
        let mut acc = vec![0; self.dimension()];
        for &c in f.iter().rev() {
            acc = self.mul(&acc, t);
            acc[0] = (acc[0] + c % self.p) % self.p;
        }
        acc
    }

    /// Whether `1, t, ..., t^{n-1}` are linearly independent, i.e. `X -> t`
    /// is bijective.
    fn substitution_invertible(&self, t: &[u64]) -> bool {
        let n = self.dimension();
        let mut rows = Vec::with_capacity(n);
        let mut pw = self.one();
        for _ in 0..n {
            rows.push(pw.clone());
            pw = self.mul(&pw, t);
        }
        rank_mod(&mut rows, self.p) == n
    }

    fn check_cap(&self, cap: u64) -> Result<u64> {
        match self.size() {
            Some(s) if s <= cap => Ok(s),
            _ => Err(Error::CapExceeded {
                what: "brute-force search space",
                size: format!("{}^{}", self.p, self.dimension()),
                cap,
            }),
        }
    }

    fn roots_of(&self, f: &[u64], cap: u64) -> Result<Vec<Vec<u64>>> {
        let size = self.check_cap(cap)?;
        Ok((0..size)
            .map(|i| self.residue(i))
            .filter(|t| self.eval(f, t).iter().all(|&c| c == 0))
            .collect())
    }
}

/// Every `t` with `P(t) = 0`: the images of `X` under the endomorphisms.
pub fn brute_endomorphisms(a: &QuotientAlgebra, cap: u64) -> Result<Vec<Polynomial>> {
    let roots = a.roots_of(&a.modulus, cap)?;
    Ok(roots.iter().map(|t| a.to_polynomial(t)).collect())
}

/// The endomorphisms whose substitution matrix is invertible.
pub fn brute_automorphisms(a: &QuotientAlgebra, cap: u64) -> Result<Vec<Polynomial>> {
    let roots = a.roots_of(&a.modulus, cap)?;
    Ok(roots
        .iter()
        .filter(|t| a.substitution_invertible(t))
        .map(|t| a.to_polynomial(t))
        .collect())
}

/// Every residue with `e^2 = e`.
pub fn brute_idempotents(a: &QuotientAlgebra, cap: u64) -> Result<Vec<Polynomial>> {
    let size = a.check_cap(cap)?;
    Ok((0..size)
        .map(|i| a.residue(i))
        .filter(|e| a.mul(e, e) == *e)
        .map(|e| a.to_polynomial(&e))
        .collect())
}

/// Whether some `t` in `b` has `P_a(t) = 0` and a bijective substitution.
pub fn brute_isomorphic(a: &QuotientAlgebra, b: &QuotientAlgebra, cap: u64) -> Result<bool> {
    if a.p != b.p {
        return Err(Error::PrimeMismatch(a.p, b.p));
    }
    if a.dimension() != b.dimension() {
        return Ok(false);
    }
    let size = b.check_cap(cap)?;
    Ok((0..size)
        .map(|i| b.residue(i))
        .any(|t| b.eval(&a.modulus, &t).iter().all(|&c| c == 0) && b.substitution_invertible(&t)))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // a^(p-2), p prime
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn rank_mod(rows: &mut [Vec<u64>], p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u64, coeffs: &[u64]) -> QuotientAlgebra {
        let f = ExtensionField::prime(PrimeField::new(p).unwrap());
        QuotientAlgebra::new(&Polynomial::from_u64s(&f, coeffs)).unwrap()
    }

    const CAP: u64 = DEFAULT_BRUTE_CAP;

    #[test]
    fn endomorphism_examples() {
        assert_eq!(brute_endomorphisms(&alg(2, &[0, 0, 1]), CAP).unwrap().len(), 2);
        assert_eq!(brute_endomorphisms(&alg(2, &[0, 1, 1]), CAP).unwrap().len(), 4);
        let single = brute_endomorphisms(&alg(5, &[2, 1]), CAP).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].to_u64s(), vec![3]);
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(brute_automorphisms(&alg(2, &[0, 1, 1]), CAP).unwrap().len(), 2);
        // (X^2 + X + 1)^2 = X^4 + X^2 + 1
        assert_eq!(brute_automorphisms(&alg(2, &[1, 0, 1, 0, 1]), CAP).unwrap().len(), 6);
        let f3 = brute_automorphisms(&alg(3, &[0, 0, 1]), CAP).unwrap();
        let imgs: Vec<_> = f3.iter().map(Polynomial::to_u64s).collect();
        assert_eq!(imgs, vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(brute_automorphisms(&alg(2, &[0, 0, 1, 1]), CAP).unwrap().len(), 1);
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(brute_idempotents(&alg(2, &[0, 0, 0, 1]), CAP).unwrap().len(), 2);
        assert_eq!(brute_idempotents(&alg(2, &[0, 1, 1]), CAP).unwrap().len(), 4);
        let e = brute_idempotents(&alg(3, &[1, 0, 1, 1]), CAP).unwrap();
        assert!(e.iter().any(Polynomial::is_zero));
        assert!(e.iter().any(Polynomial::is_one));
    }

    #[test]
    fn isomorphism_examples() {
        let x2 = alg(2, &[0, 0, 1]);
        assert!(brute_isomorphic(&x2, &alg(2, &[1, 0, 1]), CAP).unwrap());
        assert!(!brute_isomorphic(&x2, &alg(2, &[0, 1, 1]), CAP).unwrap());
        assert!(brute_isomorphic(&x2, &x2, CAP).unwrap());
        assert!(!brute_isomorphic(&x2, &alg(2, &[0, 0, 0, 1]), CAP).unwrap());
        assert!(brute_isomorphic(&x2, &alg(3, &[0, 0, 1]), CAP).is_err());
    }

    #[test]
    fn local_automorphisms_are_the_linear_substitutions() {
        // X^n over F_p: the invertible t are exactly lambda_1 X + ... with lambda_1 != 0
        for (p, n) in [(2u64, 3usize), (3, 3), (5, 2), (2, 5)] {
            let mut m = vec![0; n + 1];
            m[n] = 1;
            let a = alg(p, &m);
            let auts = brute_automorphisms(&a, CAP).unwrap();
            let expect = (p - 1) * p.pow((n - 2) as u32);
            assert_eq!(auts.len() as u64, expect);
            for t in auts {
                let c = t.to_u64s();
                assert_eq!(c[0], 0);
                assert_ne!(c[1], 0);
            }
        }
    }

    #[test]
    fn cap_is_a_hard_error() {
        let a = alg(2, &[0, 0, 0, 0, 1]);
        assert!(matches!(brute_idempotents(&a, 15), Err(Error::CapExceeded { .. })));
        assert_eq!(brute_idempotents(&a, 16).unwrap().len(), 2);
    }

    #[test]
    fn non_monic_modulus_is_normalized() {
        let a = alg(3, &[0, 0, 2]);
        assert_eq!(a.modulus().to_u64s(), vec![0, 0, 1]);
        assert_eq!(brute_automorphisms(&a, CAP).unwrap().len(), 2);
    }
}
