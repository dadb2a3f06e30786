//! `G_n(L)`: the automorphisms `X -> λ_1 X + ... + λ_{n-1} X^{n-1}` of
//! `L[X]/(X^n)`, and their extension by `Gal(L/F_p)`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::{ExtensionField, FieldElement};
use crate::trunc::TruncPoly;

/// The lower-triangular matrix `A(λ_1, ..., λ_{n-1})`, stored by its first
/// column. `n = 1` has no lambdas and stands for the identity of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GnMatrix {
    field: ExtensionField,
    n: usize,
    lambdas: Vec<FieldElement>,
}

impl GnMatrix {
    pub fn new(field: &ExtensionField, n: usize, lambdas: Vec<FieldElement>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAut("nilpotency length must be positive".into()));
        }
        if lambdas.len() != n - 1 {
            return Err(Error::LengthMismatch {
                expected: n - 1,
                got: lambdas.len(),
            });
        }
        if lambdas.iter().any(|l| l.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if lambdas.first().is_some_and(FieldElement::is_zero) {
            return Err(Error::InvalidAut("lambda_1 must be invertible".into()));
        }
        Ok(GnMatrix {
            field: field.clone(),
            n,
            lambdas,
        })
    }

    pub fn identity(field: &ExtensionField, n: usize) -> Self {
        let mut lambdas = vec![field.zero(); n.saturating_sub(1)];
        if let Some(first) = lambdas.first_mut() {
            *first = field.one();
        }
        GnMatrix {
            field: field.clone(),
            n,
            lambdas,
        }
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambdas(&self) -> &[FieldElement] {
        &self.lambdas
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.n)
    }

    /// `f(X) = λ_1 X + ... + λ_{n-1} X^{n-1}` in `L[X]/(X^n)`.
    pub fn series(&self) -> TruncPoly {
        let mut coeffs = Vec::with_capacity(self.n);
        coeffs.push(self.field.zero());
        coeffs.extend(self.lambdas.iter().cloned());
        TruncPoly::from_coeffs(&self.field, &coeffs, self.n)
    }

    /// The `(n-1) x (n-1)` matrix `(α_ij)`, row `i-1` and column `j-1`.
    ///
    /// `α_ij` is the sum of `λ_{i_1} ... λ_{i_j}` over compositions
    /// `i_1 + ... + i_j = i` into positive parts, which is the `X^i`
    /// coefficient of `f(X)^j`. Column `j` is computed as `f^j mod X^n`.
    pub fn entries(&self) -> Vec<Vec<FieldElement>> {
        let m = self.n.saturating_sub(1);
        let mut out = vec![vec![self.field.zero(); m]; m];
        if m == 0 {
            return out;
        }
        let f = self.series();
        let mut power = f.clone();
        for j in 0..m {
            for (i, row) in out.iter_mut().enumerate() {
                row[j] = power.coeff(i + 1).clone();
            }
            power = power.mul(&f).expect("same shape");
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// The ⋆ product: `β_k = sum_{i <= k} α_{k,i}(λ) λ'_i`.
    ///
    /// `A(self ⋆ other) = A(self) A(other)`, and as substitutions
    /// `f_{self ⋆ other} = f_self ∘ f_other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let alpha = self.entries();
        let betas = (0..self.n - 1)
            .map(|k| {
                (0..=k).fold(self.field.zero(), |acc, i| {
                    &acc + &(&alpha[k][i] * &other.lambdas[i])
                })
            })
            .collect();
        GnMatrix::new(&self.field, self.n, betas)
    }

    /// Inverse under ⋆, by forward substitution on `A(λ) μ = e_1`.
    pub fn inverse(&self) -> Self {
        let m = self.n.saturating_sub(1);
        if m == 0 {
            return self.clone();
        }
        let alpha = self.entries();
        let mut mu: Vec<FieldElement> = Vec::with_capacity(m);
        mu.push(self.lambdas[0].inv().expect("lambda_1 is invertible"));
        for k in 1..m {
            let partial = (0..k).fold(self.field.zero(), |acc, i| &acc + &(&alpha[k][i] * &mu[i]));
            let diag_inv = alpha[k][k].inv().expect("diagonal is a power of lambda_1");
            mu.push(-&(&partial * &diag_inv));
        }
        GnMatrix {
            field: self.field.clone(),
            n: self.n,
            lambdas: mu,
        }
    }

    /// Applies `x -> x^(p^k)` to every lambda.
    pub fn map_frobenius(&self, k: i64) -> Self {
        GnMatrix {
            field: self.field.clone(),
            n: self.n,
            lambdas: self.lambdas.iter().map(|l| l.frobenius(k)).collect(),
        }
    }

    /// `v(X) -> v(f(X))`.
    pub fn apply(&self, v: &TruncPoly) -> Result<TruncPoly> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        v.substitute(&self.series())
    }
}

/// `|G_n(F_q)|`: 1 for `n = 1`, else `(q - 1) q^(n-2)`.
pub fn gn_order(q: &BigUint, n: usize) -> BigUint {
    assert!(n >= 1, "nilpotency length must be positive");
    if n == 1 {
        return BigUint::from(1u32);
    }
    (q - 1u32) * q.pow((n - 2) as u32)
}

/// An automorphism `(M, σ)` of `L[Y]/(Y^n)` over F_p: Frobenius power `σ` on
/// the coefficients, then the substitution `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalAut {
    matrix: GnMatrix,
    frob: u32,
}

impl LocalAut {
    pub fn new(matrix: GnMatrix, frob: u32) -> Result<Self> {
        let d = matrix.field().degree();
        if frob as usize >= d {
            return Err(Error::InvalidAut(format!("Frobenius power {frob} not below degree {d}")));
        }
        Ok(LocalAut { matrix, frob })
    }

    pub fn identity(field: &ExtensionField, n: usize) -> Self {
        LocalAut {
            matrix: GnMatrix::identity(field, n),
            frob: 0,
        }
    }

    pub fn matrix(&self) -> &GnMatrix {
        &self.matrix
    }

    pub fn frob(&self) -> u32 {
        self.frob
    }

    pub fn field(&self) -> &ExtensionField {
        self.matrix.field()
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn is_identity(&self) -> bool {
        self.frob == 0 && self.matrix.is_identity()
    }

    /// `(M, σ)(M', σ') = (M ⋆ σ(M'), σ + σ')`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let d = self.field().degree() as u32;
        let twisted = other.matrix.map_frobenius(self.frob as i64);
        Ok(LocalAut {
            matrix: self.matrix.compose(&twisted)?,
            frob: (self.frob + other.frob) % d,
        })
    }

    /// `(M, σ)^{-1} = (σ^{-1}(M^{-1}), -σ)`.
    pub fn inverse(&self) -> Self {
        let d = self.field().degree() as u32;
        LocalAut {
            matrix: self.matrix.inverse().map_frobenius(-(self.frob as i64)),
            frob: (d - self.frob) % d,
        }
    }

    pub fn apply(&self, v: &TruncPoly) -> Result<TruncPoly> {
        if v.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        self.matrix.apply(&v.map_frobenius(self.frob as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{ext_field, PrimeField};

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn gn(field: &ExtensionField, ls: &[u64]) -> GnMatrix {
        GnMatrix::new(field, ls.len() + 1, ls.iter().map(|&c| field.from_u64(c)).collect()).unwrap()
    }

    #[test]
    fn entries_n3() {
        let f5 = ExtensionField::prime(fp(5));
        let m = gn(&f5, &[2, 3]);
        let e = m.entries();
        assert_eq!(e, vec![vec![f5.from_u64(2), f5.zero()], vec![f5.from_u64(3), f5.from_u64(4)]]);
        let id = GnMatrix::identity(&f5, 4).entries();
        for (i, row) in id.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn entry_three_two_is_twice_l1_l2() {
        let f7 = ExtensionField::prime(fp(7));
        let m = gn(&f7, &[3, 5, 6]);
        // α_32 = 2 λ_1 λ_2 = 30 = 2 mod 7
        assert_eq!(m.entries()[2][1], f7.from_u64(2));
    }

    #[test]
    fn star_product_example() {
        let f5 = ExtensionField::prime(fp(5));
        let c = gn(&f5, &[2, 1]).compose(&gn(&f5, &[3, 4])).unwrap();
        assert_eq!(c, gn(&f5, &[1, 4]));
        let a = gn(&f5, &[2, 1]);
        assert_eq!(a.compose(&GnMatrix::identity(&f5, 3)).unwrap(), a);
    }

    #[test]
    fn inverse_example() {
        let f5 = ExtensionField::prime(fp(5));
        let a = gn(&f5, &[2, 1]);
        assert_eq!(a.inverse(), gn(&f5, &[3, 3]));
        assert_eq!(a.compose(&a.inverse()).unwrap(), GnMatrix::identity(&f5, 3));
        let id = GnMatrix::identity(&f5, 3);
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn orders() {
        let o = |q: u32, n| gn_order(&BigUint::from(q), n);
        assert_eq!(o(2, 2), BigUint::from(1u32));
        assert_eq!(o(4, 2), BigUint::from(3u32));
        assert_eq!(o(3, 3), BigUint::from(6u32));
        assert_eq!(o(9, 1), BigUint::from(1u32));
    }

    #[test]
    fn rejects_singular_and_bad_shapes() {
        let f3 = ExtensionField::prime(fp(3));
        assert!(GnMatrix::new(&f3, 3, vec![f3.zero(), f3.one()]).is_err());
        assert!(GnMatrix::new(&f3, 3, vec![f3.one()]).is_err());
        let f4 = ext_field(fp(2), 2).unwrap();
        assert!(LocalAut::new(GnMatrix::identity(&f4, 2), 2).is_err());
        let a = GnMatrix::identity(&f3, 3);
        assert!(a.compose(&GnMatrix::identity(&f3, 2)).is_err());
    }

    #[test]
    fn local_aut_examples() {
        let f4 = ext_field(fp(2), 2).unwrap();
        let frob = LocalAut::new(GnMatrix::identity(&f4, 2), 1).unwrap();
        // Frobenius has order 2 on F_4
        assert!(frob.compose(&frob).unwrap().is_identity());
        // conjugating diag(a) by Frobenius gives diag(a^2) = diag(a + 1)
        let diag_a = LocalAut::new(GnMatrix::new(&f4, 2, vec![f4.gen()]).unwrap(), 0).unwrap();
        let conj = frob.compose(&diag_a).unwrap().compose(&frob.inverse()).unwrap();
        assert_eq!(conj.matrix().lambdas(), &[f4.from_coeffs(&[1, 1])]);
        assert_eq!(conj.frob(), 0);
        // applying Frobenius to the constant a gives a + 1
        let v = TruncPoly::constant(f4.gen(), 2);
        assert_eq!(frob.apply(&v).unwrap(), TruncPoly::constant(f4.from_coeffs(&[1, 1]), 2));
    }

    #[test]
    fn apply_to_x_gives_the_series() {
        let f9 = ext_field(fp(3), 2).unwrap();
        let m = GnMatrix::new(&f9, 4, vec![f9.gen(), f9.one(), f9.from_coeffs(&[2, 2])]).unwrap();
        let x = TruncPoly::var(&f9, 4);
        let aut = LocalAut::new(m.clone(), 0).unwrap();
        assert_eq!(aut.apply(&x).unwrap(), m.series());
        let id = LocalAut::identity(&f9, 4);
        let v = TruncPoly::from_coeffs(&f9, &[f9.one(), f9.gen(), f9.zero(), f9.gen()], 4);
        assert_eq!(id.apply(&v).unwrap(), v);
    }
}
