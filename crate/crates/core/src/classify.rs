//! Canonical forms of `F_p[X]/(P)`, isomorphism testing, reconstruction of a
//! generator polynomial from a form, and explicit isomorphisms onto the
//! product carrier.
//!
//! Over F_p two residue fields `F_p[X]/(Q)` and `F_p[X]/(Q')` are isomorphic
//! exactly when `deg Q = deg Q'`, so a factor `Q^e` of `P` contributes one
//! copy of `F_{p^{deg Q}}[Y]/(Y^e)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::algebra::{AlgebraElement, AlgebraType, CanonicalForm, FormPart, ProductAlgebra};
use crate::error::{Error, Result};
use crate::gf::{ext_field, ExtensionField, PrimeField};
use crate::linalg::FpMatrix;
use crate::poly::{count_irreducibles, enumerate_irreducibles, find_root, Polynomial};
use crate::trunc::TruncPoly;

fn require_prime_field(p: &Polynomial) -> Result<()> {
    if p.field().degree() == 1 {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// Factors of `P` as `(Q, e)`, ordered to match the slot order of its
/// canonical form: by `(deg Q, e, Q)`.
fn slot_ordered_factors(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let mut factors = p.factor()?.factors;
    factors.sort_by(|(q1, e1), (q2, e2)| {
        (q1.degree(), e1).cmp(&(q2.degree(), e2)).then_with(|| q1.cmp(q2))
    });
    Ok(factors)
}

/// The canonical form of `F_p[X]/(P)` for nonconstant `P` over F_p.
pub fn classify(p: &Polynomial) -> Result<CanonicalForm> {
    require_prime_field(p)?;
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (q, e) in p.factor()?.factors {
        *counts.entry((q.degree().expect("nonconstant"), e)).or_default() += 1;
    }
    let parts = counts
        .into_iter()
        .map(|((d, j), n)| FormPart::new(d, j, n))
        .collect();
    let form = CanonicalForm::new(p.prime_field(), parts)?;
    debug_assert_eq!(form.dimension(), p.degree().unwrap());
    Ok(form)
}

/// Like [`classify`], but the zero polynomial yields the free algebra `F_p[X]`.
pub fn classify_type(p: &Polynomial) -> Result<AlgebraType> {
    if p.is_zero() {
        require_prime_field(p)?;
        return Ok(AlgebraType::Free(p.prime_field()));
    }
    Ok(AlgebraType::Quotient(classify(p)?))
}

/// Whether `F_p[X]/(P)` and `F_p[X]/(Q)` are isomorphic as F_p-algebras.
pub fn isomorphic(p: &Polynomial, q: &Polynomial) -> Result<bool> {
    if p.field().p() != q.field().p() {
        return Err(Error::PrimeMismatch(p.field().p(), q.field().p()));
    }
    Ok(classify(p)? == classify(q)?)
}

/// Whether every degree class fits under the irreducible count:
/// `sum_j n_{d,j} <= phi(p, d)` for all `d`.
pub fn is_monogenic(form: &CanonicalForm) -> bool {
    check_monogenic(form).is_ok()
}

fn check_monogenic(form: &CanonicalForm) -> Result<()> {
    for (d, needed) in needed_per_degree(form) {
        let available = count_irreducibles(form.p(), d);
        if BigUint::from(needed) > available {
            return Err(Error::Infeasible {
                p: form.p().p(),
                degree: d,
                needed,
                available,
            });
        }
    }
    Ok(())
}

fn needed_per_degree(form: &CanonicalForm) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for part in form.parts() {
        *out.entry(part.d).or_default() += part.n;
    }
    out
}

/// A monic `Q` with `F_p[X]/(Q)` of the given form.
///
/// For each degree `d`, distinct irreducibles of degree `d` are taken in
/// order and handed to the parts of that degree by increasing `j`; the
/// irreducibles of part `(d, j, n)` appear to the power `j`.
pub fn realize(form: &CanonicalForm) -> Result<Polynomial> {
    check_monogenic(form)?;
    let field = ExtensionField::prime(form.p());
    let mut out = Polynomial::one(&field);
    for (d, needed) in needed_per_degree(form) {
        let mut irreducibles = enumerate_irreducibles(form.p(), d, needed)?.into_iter();
        for part in form.parts().iter().filter(|q| q.d == d) {
            for q in irreducibles.by_ref().take(part.n) {
                out = out.mul(&q.pow(part.j as u64));
            }
        }
    }
    Ok(out)
}

/// A constructive isomorphism `F_p[X]/(Q^e) -> L[Y]/(Y^e)`, `X -> t = a + Y`
/// with `a` a root of `Q` in `L = F_{p^{deg Q}}`.
#[derive(Clone, Debug)]
pub struct LocalIsoWitness {
    pub q: Polynomial,
    pub e: usize,
    pub field: ExtensionField,
    pub t: TruncPoly,
    /// Row `i` holds the F_p coordinates of `t^i`, `0 <= i < deg(Q) * e`.
    pub change_of_basis: FpMatrix,
}

impl LocalIsoWitness {
    /// Image of a residue `g` of `F_p[X]/(Q^e)`.
    pub fn apply(&self, g: &Polynomial) -> Result<TruncPoly> {
        self.t.eval_fp_poly(g)
    }
}

pub fn local_iso_witness(q: &Polynomial, e: usize) -> Result<LocalIsoWitness> {
    require_prime_field(q)?;
    if e == 0 {
        return Err(Error::LengthMismatch { expected: 1, got: 0 });
    }
    if !q.is_irreducible()? {
        return Err(Error::InvalidForm(format!("{q} is not irreducible")));
    }
    let q = q.monic();
    let d = q.degree().expect("nonconstant");
    let field = ext_field(q.prime_field(), d)?;
    let a = find_root(&q, &field)?;
    let t = TruncPoly::constant(a, e).add(&TruncPoly::var(&field, e))?;
    // Q(t) = Q'(a) Y + O(Y^2), so Q(t)^e vanishes
    let q_of_t = t.eval_fp_poly(&q)?;
    if !q_of_t.coeff(0).is_zero() || !q_of_t.pow(e as u64).is_zero() {
        return Err(Error::RankDeficient { rank: 0, dim: d * e });
    }
    let dim = d * e;
    let mut rows = Vec::with_capacity(dim);
    let mut power = TruncPoly::one(&field, e);
    for _ in 0..dim {
        rows.push(power.fp_coords());
        power = power.mul(&t)?;
    }
    let change_of_basis = FpMatrix::from_rows(q.prime_field(), &rows)?;
    let rank = change_of_basis.rank();
    if rank != dim {
        return Err(Error::RankDeficient { rank, dim });
    }
    Ok(LocalIsoWitness {
        q,
        e,
        field,
        t,
        change_of_basis,
    })
}

/// One factor `Q^e` of the Chinese-remainder splitting of `F_p[X]/(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtComponent {
    pub factor: Polynomial,
    pub multiplicity: usize,
    /// `factor^multiplicity`.
    pub modulus: Polynomial,
}

impl CrtComponent {
    /// `g mod Q^e`.
    pub fn project(&self, g: &Polynomial) -> Result<Polynomial> {
        g.rem(&self.modulus)
    }
}

/// The components of `F_p[X]/(P) = prod F_p[X]/(Q_i^{e_i})`, in slot order.
pub fn crt_split(p: &Polynomial) -> Result<Vec<CrtComponent>> {
    require_prime_field(p)?;
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(slot_ordered_factors(p)?
        .into_iter()
        .map(|(q, e)| CrtComponent {
            modulus: q.pow(e as u64),
            factor: q,
            multiplicity: e,
        })
        .collect())
}

/// The isomorphism `F_p[X]/(P) -> carrier of classify(P)` obtained from the
/// CRT splitting followed by the local witnesses.
#[derive(Clone, Debug)]
pub struct ExplicitIsomorphism {
    modulus: Polynomial,
    algebra: ProductAlgebra,
    components: Vec<CrtComponent>,
    witnesses: Vec<LocalIsoWitness>,
}

impl ExplicitIsomorphism {
    pub fn new(p: &Polynomial) -> Result<Self> {
        let form = classify(p)?;
        let components = crt_split(p)?;
        let witnesses = components
            .iter()
            .map(|c| local_iso_witness(&c.factor, c.multiplicity))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExplicitIsomorphism {
            modulus: p.monic(),
            algebra: ProductAlgebra::new(&form),
            components,
            witnesses,
        })
    }

    pub fn algebra(&self) -> &ProductAlgebra {
        &self.algebra
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn components(&self) -> &[CrtComponent] {
        &self.components
    }

    pub fn witnesses(&self) -> &[LocalIsoWitness] {
        &self.witnesses
    }

    /// Image of the residue class of `g`.
    pub fn apply(&self, g: &Polynomial) -> Result<AlgebraElement> {
        let slots = self
            .components
            .iter()
            .zip(&self.witnesses)
            .map(|(c, w)| w.apply(&c.project(g)?))
            .collect::<Result<Vec<_>>>()?;
        self.algebra.element(slots)
    }

    /// Image of `X`.
    pub fn generator(&self) -> AlgebraElement {
        let x = Polynomial::x(self.modulus.field());
        self.apply(&x).expect("X maps into the carrier")
    }

    /// The residue of degree `< deg P` mapping to `y`.
    pub fn preimage(&self, y: &AlgebraElement) -> Result<Polynomial> {
        if y.algebra() != &self.algebra {
            return Err(Error::FormMismatch);
        }
        let g = self.generator();
        let dim = self.algebra.dimension();
        let mut rows = Vec::with_capacity(dim);
        let mut power = self.algebra.one();
        for _ in 0..dim {
            rows.push(power.fp_coords());
            power = power.mul(&g)?;
        }
        let m = FpMatrix::from_rows(self.algebra.form().p(), &rows)?;
        let coeffs = m.solve_left(&y.fp_coords())?;
        Ok(Polynomial::from_u64s(self.modulus.field(), &coeffs))
    }
}

/// A generator of the carrier and the rank of its first `dim` powers.
#[derive(Clone, Debug)]
pub struct GeneratorCertificate {
    pub element: AlgebraElement,
    /// Polynomial whose quotient ring the generator realizes.
    pub modulus: Polynomial,
    pub rank: usize,
    pub dimension: usize,
}

/// An element `g` of the carrier of `form` whose powers `1, g, g^2, ...` span it.
pub fn generator_element(form: &CanonicalForm) -> Result<GeneratorCertificate> {
    let modulus = realize(form)?;
    let iso = ExplicitIsomorphism::new(&modulus)?;
    let g = iso.generator();
    let dimension = form.dimension();
    let mut rows = Vec::with_capacity(dimension);
    let mut power = iso.algebra().one();
    for _ in 0..dimension {
        rows.push(power.fp_coords());
        power = power.mul(&g)?;
    }
    let rank = FpMatrix::from_rows(form.p(), &rows)?.rank();
    if rank != dimension {
        return Err(Error::RankDeficient { rank, dim: dimension });
    }
    Ok(GeneratorCertificate {
        element: g,
        modulus,
        rank,
        dimension,
    })
}

/// Every monogenic canonical form over F_p with `1 <= dimension <= max_dim`,
/// sorted by dimension and then by parts.
pub fn monogenic_forms(p: PrimeField, max_dim: usize) -> Vec<CanonicalForm> {
    let mut keys = Vec::new();
    for d in 1..=max_dim {
        for j in 1..=max_dim / d {
            keys.push((d, j));
        }
    }
    let phi: BTreeMap<usize, usize> = (1..=max_dim)
        .map(|d| {
            let c = count_irreducibles(p, d);
            (d, usize::try_from(c).unwrap_or(usize::MAX))
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_forms(&keys, 0, max_dim, &phi, &mut BTreeMap::new(), &mut chosen, &mut out, p);
    out.retain(|f: &CanonicalForm| f.dimension() >= 1);
    out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.parts().cmp(b.parts())));
    out
}

#[allow(clippy::too_many_arguments)]
fn collect_forms(
    keys: &[(usize, usize)],
    idx: usize,
    budget: usize,
    phi: &BTreeMap<usize, usize>,
    used: &mut BTreeMap<usize, usize>,
    chosen: &mut Vec<FormPart>,
    out: &mut Vec<CanonicalForm>,
    p: PrimeField,
) {
    if idx == keys.len() {
        out.push(CanonicalForm::new(p, chosen.clone()).expect("distinct keys"));
        return;
    }
    let (d, j) = keys[idx];
    collect_forms(keys, idx + 1, budget, phi, used, chosen, out, p);
    let mut n = 1;
    while n * d * j <= budget && used.get(&d).copied().unwrap_or(0) + n <= phi[&d] {
        *used.entry(d).or_default() += n;
        chosen.push(FormPart::new(d, j, n));
        collect_forms(keys, idx + 1, budget - n * d * j, phi, used, chosen, out, p);
        chosen.pop();
        *used.get_mut(&d).unwrap() -= n;
        n += 1;
    }
}
