//! Squarefree, distinct-degree and equal-degree factorization over F_q,
//! plus the counting and enumeration of monic irreducibles over F_p.

use num_bigint::BigUint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::gf::{fpx, ExtensionField, FieldElement, PrimeField};

/// Seed of the equal-degree splitter's stream. Every call starts afresh.
const SPLIT_SEED: u64 = 0x6d6f_6e6f_6765_6e31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    pub factor: Polynomial,
    pub multiplicity: usize,
}

/// `unit * prod(factor^multiplicity)`, factors monic, irreducible, distinct
/// and sorted by `(degree, coefficients)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Polynomial {
        self.factors.iter().fold(Polynomial::constant(self.unit.clone()), |acc, (f, e)| {
            acc.mul(&f.pow(*e as u64))
        })
    }
}

pub(super) fn squarefree_decomposition(p: &Polynomial) -> Result<Vec<SquarefreeFactor>> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut out = Vec::new();
    sff(&p.monic(), 1, &mut out);
    out.sort_by_key(|s| s.multiplicity);
    // branches produce coprime parts; merge any equal multiplicities
    let mut merged: Vec<SquarefreeFactor> = Vec::new();
    for s in out {
        match merged.last_mut() {
            Some(last) if last.multiplicity == s.multiplicity => {
                last.factor = last.factor.mul(&s.factor);
            }
            _ => merged.push(s),
        }
    }
    Ok(merged)
}

fn sff(f: &Polynomial, scale: usize, out: &mut Vec<SquarefreeFactor>) {
    if f.is_constant() {
        return;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push(SquarefreeFactor {
                factor: fac,
                multiplicity: i * scale,
            });
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = pth_root(&c);
        sff(&root, scale * f.field().p() as usize, out);
    }
}

/// For `c` with zero derivative, the polynomial `r` with `r^p = c`.
fn pth_root(c: &Polynomial) -> Polynomial {
    let field = c.field();
    let p = field.p() as usize;
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|x| x.frobenius(-1))
        .collect();
    Polynomial::new(field, coeffs)
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal
/// degree: `(product, degree)`.
fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.field().clone();
    let x = Polynomial::x(&field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_q_mod(&rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

fn random_poly(field: &ExtensionField, below: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let d = field.degree();
    let coeffs = (0..below)
        .map(|_| {
            let raw: Vec<u64> = (0..d).map(|_| rng.next_u64()).collect();
            field.from_coeffs(&raw)
        })
        .collect();
    Polynomial::new(field, coeffs)
}

/// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles of degree `k`.
fn equal_degree(f: &Polynomial, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Polynomial>) {
    let n = f.degree().expect("nonzero");
    if n == k {
        out.push(f.clone());
        return;
    }
    let field = f.field().clone();
    let p = field.p();
    // F_{q^k} has degree m over F_p
    let m = field.degree() * k;
    loop {
        let r = random_poly(&field, n, rng);
        if r.is_constant() {
            continue;
        }
        let probe = if p == 2 {
            // absolute trace r + r^2 + ... + r^(2^(m-1))
            let mut s = r.clone();
            let mut tr = r.clone();
            for _ in 1..m {
                s = s.mul(&s).rem(f).expect("nonzero");
                tr = tr.add(&s);
            }
            tr
        } else {
            // r^((p^m - 1)/2) = (r * r^p * ... * r^(p^(m-1)))^((p-1)/2)
            let mut s = r.clone();
            let mut prod = r.clone();
            for _ in 1..m {
                s = s.pow_mod(p, f).expect("nonzero");
                prod = prod.mul(&s).rem(f).expect("nonzero");
            }
            prod.pow_mod((p - 1) / 2, f)
                .expect("nonzero")
                .sub(&Polynomial::one(&field))
        };
        let g = f.gcd(&probe);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(&g);
            equal_degree(&g, k, rng, out);
            equal_degree(&h, k, rng, out);
            return;
        }
    }
}

pub(super) fn factor(p: &Polynomial) -> Result<Factorization> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let unit = p.lead().expect("nonconstant").clone();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors = Vec::new();
    for sq in squarefree_decomposition(p)? {
        for (block, k) in distinct_degree(&sq.factor) {
            let mut pieces = Vec::new();
            equal_degree(&block, k, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|g| (g, sq.multiplicity)));
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Rabin's test over the coefficient field F_q.
pub(super) fn is_irreducible(p: &Polynomial) -> Result<bool> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let f = p.monic();
    let n = f.degree().expect("nonconstant");
    if n == 1 {
        return Ok(true);
    }
    let x = Polynomial::x(f.field());
    let mut frob = vec![x.rem(&f)?];
    for k in 0..n {
        let next = frob[k].pow_q_mod(&f);
        frob.push(next);
    }
    if !frob[n].sub(&x).is_zero() {
        return Ok(false);
    }
    for r in fpx::prime_divisors(n as u64) {
        let k = n / r as usize;
        if !f.gcd(&frob[k].sub(&x)).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut r = 2;
    while r * r <= n {
        if n % r == 0 {
            n /= r;
            if n % r == 0 {
                return 0;
            }
            sign = -sign;
        }
        r += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d` over F_p, by the
/// necklace formula `(1/d) * sum_{e | d} mu(e) p^(d/e)`.
pub fn count_irreducibles(p: PrimeField, d: usize) -> BigUint {
    assert!(d >= 1, "degree must be positive");
    let base = BigUint::from(p.p());
    let mut pos = BigUint::from(0u32);
    let mut neg = BigUint::from(0u32);
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let term = base.pow((d / e) as u32);
        match mobius(e as u64) {
            1 => pos += term,
            -1 => neg += term,
            _ => {}
        }
    }
    (pos - neg) / BigUint::from(d)
}

/// The first `count` monic irreducibles of degree `d` over F_p, in the order
/// that compares coefficients from the constant term upward.
pub fn enumerate_irreducibles(p: PrimeField, d: usize, count: usize) -> Result<Vec<Polynomial>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let available = count_irreducibles(p, d);
    if BigUint::from(count) > available {
        return Err(Error::Infeasible {
            p: p.p(),
            degree: d,
            needed: count,
            available,
        });
    }
    let field = ExtensionField::prime(p);
    let mut out = Vec::with_capacity(count);
    let mut lower = vec![0u64; d];
    while out.len() < count {
        let mut cand = lower.clone();
        cand.push(1);
        if fpx::is_irreducible(p, &cand) {
            out.push(Polynomial::from_u64s(&field, &cand));
            if out.len() == count {
                break;
            }
        }
        let mut i = d;
        loop {
            i -= 1;
            lower[i] += 1;
            if lower[i] < p.p() {
                break;
            }
            lower[i] = 0;
        }
    }
    Ok(out)
}

/// The smallest root (in [`FieldElement`] order) of an irreducible `q` over
/// F_p inside `target`, whose degree must equal `deg q`.
pub fn find_root(q: &Polynomial, target: &ExtensionField) -> Result<FieldElement> {
    let lifted = q.lift(target)?;
    if lifted.degree() != Some(target.degree()) {
        return Err(Error::FieldMismatch);
    }
    let f = lifted.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut linear = Vec::new();
    for (block, k) in distinct_degree(&f) {
        if k == 1 {
            equal_degree(&block, 1, &mut rng, &mut linear);
        }
    }
    linear
        .iter()
        .map(|l| -&l.coeff(0))
        .min()
        .ok_or(Error::FieldMismatch)
}
