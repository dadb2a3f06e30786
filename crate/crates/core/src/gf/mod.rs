//! Exact arithmetic in F_p and F_{p^d}.
//!
//! `F_{p^d}` is always built as `F_p[Y]/(m(Y))` where `m` is the
//! lexicographically smallest monic irreducible of degree `d`, comparing
//! coefficients from the constant term upward. Two fields built with the same
//! `(p, d)` are therefore structurally equal. The class of `Y` is written `a`
//! in text form.

pub(crate) mod fpx;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// The prime field F_p for a machine-word prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            ((a as u128 + self.p as u128) - b as u128) as u64
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        acc
    };
    'outer: for &b in &BASES {
        let mut x = powm(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

struct FieldInner {
    base: PrimeField,
    d: usize,
    /// Monic, length d + 1.
    modulus: Vec<u64>,
}

/// `F_{p^d} = F_p[Y]/(m)` with the canonical modulus. Cheap to clone.
#[derive(Clone)]
pub struct ExtensionField(Arc<FieldInner>);

impl ExtensionField {
    /// Builds `F_{p^d}` with the canonical modulus.
    pub fn new(base: PrimeField, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let modulus = canonical_modulus(base, d);
        Ok(ExtensionField(Arc::new(FieldInner { base, d, modulus })))
    }

    /// F_p viewed as the degree-1 extension (modulus `Y`).
    pub fn prime(base: PrimeField) -> Self {
        ExtensionField(Arc::new(FieldInner {
            base,
            d: 1,
            modulus: vec![0, 1],
        }))
    }

    pub fn base(&self) -> PrimeField {
        self.0.base
    }

    pub fn p(&self) -> u64 {
        self.0.base.p()
    }

    pub fn degree(&self) -> usize {
        self.0.d
    }

    /// Coefficients of the modulus, constant term first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// `p^d` if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        let mut q: u64 = 1;
        for _ in 0..self.0.d {
            q = q.checked_mul(self.p())?;
        }
        Some(q)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.d],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The image of an integer under `Z -> F_p -> F_{p^d}`.
    pub fn from_u64(&self, c: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = self.base().reduce(c);
        e
    }

    /// The class of `Y`.
    pub fn gen(&self) -> FieldElement {
        self.from_coeffs(&[0, 1])
    }

    /// Reduces an arbitrary coefficient vector (constant term first) into the field.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let fp = self.base();
        let raw: Vec<u64> = coeffs.iter().map(|&c| fp.reduce(c)).collect();
        let r = fpx::rem(fp, &raw, &self.0.modulus);
        let mut e = self.zero();
        e.coeffs[..r.len()].copy_from_slice(&r);
        e
    }

    /// Element whose coefficients are the base-p digits of `idx`, constant term
    /// least significant.
    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        let p = self.p();
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        e
    }

    /// All field elements in index order. Panics if `p^d` overflows `u64`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.order().expect("field too large to enumerate");
        (0..q).map(move |i| self.from_index(i))
    }

    /// Labels of `Aut(F_{p^d}/F_p)`: label `k` is `x -> x^(p^k)`.
    pub fn automorphisms(&self) -> Vec<u32> {
        (0..self.0.d as u32).collect()
    }
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtensionField {}

impl Hash for ExtensionField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.base.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p(), self.degree(), self.0.modulus)
    }
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(f, "F_{}^{}", self.p(), self.degree())
        }
    }
}

/// Shorthand for [`ExtensionField::new`].
pub fn ext_field(p: PrimeField, d: usize) -> Result<ExtensionField> {
    ExtensionField::new(p, d)
}

fn canonical_modulus(fp: PrimeField, d: usize) -> Vec<u64> {
    let p = fp.p();
    // lower coefficients c_0..c_{d-1}, c_0 most significant in the ordering
    let mut lower = vec![0u64; d];
    if d > 1 {
        // c_0 = 0 means Y divides the candidate; skip that whole prefix
        lower[0] = 1;
    }
    loop {
        let mut cand = lower.clone();
        cand.push(1);
        if fpx::is_irreducible(fp, &cand) {
            return cand;
        }
        // increment with c_{d-1} as the fastest-moving digit
        let mut i = d;
        loop {
            // irreducibles exist in every degree, so the odometer never wraps
            i -= 1;
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
        }
    }
}

/// An element of some [`ExtensionField`].
///
/// Arithmetic operators panic if the operands come from different fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: ExtensionField,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    /// Coefficients in the basis `1, a, ..., a^{d-1}`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Inverse of [`ExtensionField::from_index`].
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    fn check(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed-field arithmetic: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<Self> {
        let fp = self.field.base();
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(self.field.from_u64(fp.inv(self.coeffs[0])?));
        }
        let mut raw = self.coeffs.clone();
        fpx::trim(&mut raw);
        let r = fpx::invmod(fp, &raw, self.field.modulus()).ok_or(Error::DivisionByZero)?;
        Ok(self.field.from_coeffs(&r))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// `x^(p^k)`, with `k` taken modulo the extension degree.
    pub fn frobenius(&self, k: i64) -> Self {
        let d = self.field.degree() as i64;
        let k = k.rem_euclid(d);
        let p = self.field.p();
        let mut x = self.clone();
        for _ in 0..k {
            x = x.pow(p);
        }
        x
    }
}

impl Ord for FieldElement {
    /// Orders by [`FieldElement::index`]: the highest coefficient is the most
    /// significant digit.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let fp = self.field.base();
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&x, &y)| fp.add(x, y))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let fp = self.field.base();
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&x, &y)| fp.sub(x, y))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let fp = self.field.base();
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![fp.mul(self.coeffs[0], rhs.coeffs[0])],
            };
        }
        let m = self.field.modulus();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
            }
        }
        // m is monic: Y^d = -(m_0 + ... + m_{d-1} Y^{d-1})
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for k in 0..d {
                prod[top - d + k] = fp.sub(prod[top - d + k], fp.mul(c, m[k]));
            }
        }
        prod.truncate(d);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let fp = self.field.base();
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| fp.neg(c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial in `a`, highest power first, e.g. `a^2 + 2*a + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("a")?,
                (1, c) => write!(f, "{c}*a")?,
                (i, 1) => write!(f, "a^{i}")?,
                (i, c) => write!(f, "{c}*a^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Exhaustive root search: a polynomial of degree 2 or 3 is irreducible iff
    /// it has no root.
    fn has_root(p: u64, m: &[u64]) -> bool {
        (0..p).any(|x| m.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn primality() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(ext_field(fp(2), 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(ext_field(fp(2), 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(ext_field(fp(3), 2).unwrap().modulus(), &[1, 0, 1]);
        // Y^3 + Y^2 + 1 precedes Y^3 + Y + 1 when c_1 is compared before c_2
        assert_eq!(ext_field(fp(2), 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert!(ext_field(fp(2), 0).is_err());
    }

    #[test]
    fn large_degree_moduli_are_quick() {
        let m = ext_field(fp(2), 31).unwrap();
        let mut expect = vec![0u64; 32];
        expect[0] = 1;
        expect[28] = 1;
        expect[31] = 1;
        assert_eq!(m.modulus(), expect.as_slice());
        assert_eq!(ext_field(fp(7), 32).unwrap().modulus()[..2], [1, 0]);
    }

    #[test]
    fn canonical_modulus_is_smallest_irreducible() {
        // enumerate monic quadratics and cubics, constant term most significant
        for p in [2u64, 3, 5] {
            for d in [2usize, 3] {
                let mut cands: Vec<Vec<u64>> = Vec::new();
                let total = p.pow(d as u32);
                for idx in 0..total {
                    let mut lower = vec![0u64; d];
                    let mut t = idx;
                    for i in (0..d).rev() {
                        lower[i] = t % p;
                        t /= p;
                    }
                    lower.push(1);
                    cands.push(lower);
                }
                let first = cands.into_iter().find(|m| !has_root(p, m)).unwrap();
                assert_eq!(ext_field(fp(p), d).unwrap().modulus(), first.as_slice());
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = ext_field(fp(7), 4).unwrap();
        let b = ext_field(fp(7), 4).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = ext_field(fp(2), 2).unwrap();
        let y = f4.gen();
        assert_eq!(&y * &y, f4.from_coeffs(&[1, 1]));
        assert_eq!(&y * &f4.one(), y);
        assert_eq!(y.frobenius(1), f4.from_coeffs(&[1, 1]));
    }

    #[test]
    fn f5_inverse() {
        let f5 = ExtensionField::prime(fp(5));
        assert_eq!(f5.from_u64(2).inv().unwrap(), f5.from_u64(3));
        assert_eq!(f5.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f4 = ext_field(fp(2), 2).unwrap();
        let f8 = ext_field(fp(2), 3).unwrap();
        assert_eq!(f4.one().try_add(&f8.one()), Err(Error::FieldMismatch));
        assert_eq!(f4.one().try_mul(&f8.one()), Err(Error::FieldMismatch));
    }

    fn small_fields() -> Vec<ExtensionField> {
        let mut out = Vec::new();
        for (p, dmax) in [(2u64, 6usize), (3, 3), (5, 2), (7, 2)] {
            for d in 1..=dmax {
                out.push(ext_field(fp(p), d).unwrap());
            }
        }
        out
    }

    #[test]
    fn inverse_exhaustive_small_fields() {
        for f in small_fields() {
            for x in f.elements().skip(1) {
                assert!((&x * &x.inv().unwrap()).is_one(), "{f} {x}");
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_map_fixing_exactly_the_prime_field() {
        for f in small_fields() {
            let els: Vec<_> = f.elements().collect();
            let fixed = els.iter().filter(|x| x.frobenius(1) == **x).count();
            assert_eq!(fixed as u64, f.p(), "{f}");
            for x in &els {
                assert_eq!(x.frobenius(0), *x);
                assert_eq!(x.frobenius(f.degree() as i64), *x);
                assert_eq!(x.frobenius(1).frobenius(f.degree() as i64 - 1), *x);
            }
            for x in els.iter().step_by(3) {
                for y in els.iter().step_by(5) {
                    assert_eq!((x + y).frobenius(1), x.frobenius(1) + y.frobenius(1));
                    assert_eq!((x * y).frobenius(1), x.frobenius(1) * y.frobenius(1));
                }
            }
        }
    }

    #[test]
    fn prime_field_fixed_by_frobenius() {
        let f7 = ExtensionField::prime(fp(7));
        for x in f7.elements() {
            assert_eq!(x.frobenius(3), x);
        }
    }

    #[test]
    fn automorphism_labels() {
        assert_eq!(ext_field(fp(2), 1).unwrap().automorphisms(), vec![0]);
        assert_eq!(ext_field(fp(2), 2).unwrap().automorphisms(), vec![0, 1]);
        assert_eq!(ext_field(fp(2), 3).unwrap().automorphisms(), vec![0, 1, 2]);
    }

    #[test]
    fn index_round_trip_and_order() {
        let f9 = ext_field(fp(3), 2).unwrap();
        for (i, x) in f9.elements().enumerate() {
            assert_eq!(x.index(), i as u64);
        }
        assert!(f9.gen() > f9.from_u64(2));
        assert_eq!(f9.from_coeffs(&[2, 1]).to_string(), "a + 2");
    }
}
