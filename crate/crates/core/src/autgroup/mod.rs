//! Automorphism groups of finite products of local factors.
//!
//! For a canonical form with parts `(d, j, n)` the group is the product over
//! parts of `(G_j(F_{p^d}) ⋊ Gal) ≀ S_n`. Elements are [`ProductAut`]s: one
//! [`WreathElement`] per part, each a permutation of that part's slots and a
//! [`LocalAut`] for every slot.

mod gn;
mod json;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::algebra::{AlgebraElement, CanonicalForm, FormPart};
use crate::error::{Error, Result};
use crate::gf::{ext_field, fpx, ExtensionField, FieldElement};
use crate::trunc::TruncPoly;

pub use gn::{gn_order, GnMatrix, LocalAut};

/// Default bound on the group order accepted by [`enumerate_auts`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// An element of `(G_j(L) ⋊ Gal) ≀ S_n`.
///
/// `perm[k]` is the slot that slot `k` is sent to; the component landing in
/// slot `i` is transformed by `locals[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    part: FormPart,
    perm: Vec<usize>,
    locals: Vec<LocalAut>,
}

impl WreathElement {
    pub fn new(perm: Vec<usize>, locals: Vec<LocalAut>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::InvalidAut("empty permutation".into()));
        }
        if locals.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: locals.len(),
            });
        }
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidAut(format!("{perm:?} is not a permutation")));
            }
        }
        let (field, j) = (locals[0].field().clone(), locals[0].n());
        if locals.iter().any(|l| l.field() != &field || l.n() != j) {
            return Err(Error::InvalidAut("local automorphisms of different shapes".into()));
        }
        Ok(WreathElement {
            part: FormPart::new(field.degree(), j, n),
            perm,
            locals,
        })
    }

    pub fn identity(field: &ExtensionField, j: usize, n: usize) -> Self {
        WreathElement {
            part: FormPart::new(field.degree(), j, n),
            perm: (0..n).collect(),
            locals: vec![LocalAut::identity(field, j); n],
        }
    }

    pub fn part(&self) -> FormPart {
        self.part
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn locals(&self) -> &[LocalAut] {
        &self.locals
    }

    pub fn field(&self) -> &ExtensionField {
        self.locals[0].field()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &i)| k == i) && self.locals.iter().all(LocalAut::is_identity)
    }

    /// `self ∘ other`: `((f_i ∘ g_{σ^{-1}(i)}), σ ∘ τ)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.part != other.part || self.field() != other.field() {
            return Err(Error::FormMismatch);
        }
        let inv = invert_perm(&self.perm);
        let locals = (0..self.perm.len())
            .map(|i| self.locals[i].compose(&other.locals[inv[i]]))
            .collect::<Result<_>>()?;
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        Ok(WreathElement {
            part: self.part,
            perm,
            locals,
        })
    }

    pub fn inverse(&self) -> Self {
        let perm = invert_perm(&self.perm);
        // h_k = f_{σ(k)}^{-1}
        let locals = self.perm.iter().map(|&s| self.locals[s].inverse()).collect();
        WreathElement {
            part: self.part,
            perm,
            locals,
        }
    }

    /// Image of a tuple of components, one per slot of this part.
    pub fn apply(&self, comps: &[TruncPoly]) -> Result<Vec<TruncPoly>> {
        if comps.len() != self.perm.len() {
            return Err(Error::LengthMismatch {
                expected: self.perm.len(),
                got: comps.len(),
            });
        }
        let mut out = comps.to_vec();
        for (k, b) in comps.iter().enumerate() {
            let i = self.perm[k];
            out[i] = self.locals[i].apply(b)?;
        }
        Ok(out)
    }
}

fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (k, &i) in perm.iter().enumerate() {
        inv[i] = k;
    }
    inv
}

/// An F_p-algebra automorphism of the product algebra of `form`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductAut {
    form: CanonicalForm,
    blocks: Vec<WreathElement>,
}

impl ProductAut {
    /// Checks that block `i` has the shape of part `i` of `form`.
    pub fn new(form: &CanonicalForm, blocks: Vec<WreathElement>) -> Result<Self> {
        if blocks.len() != form.parts().len() {
            return Err(Error::LengthMismatch {
                expected: form.parts().len(),
                got: blocks.len(),
            });
        }
        for (b, part) in blocks.iter().zip(form.parts()) {
            if b.part != *part || b.field().p() != form.p().p() {
                return Err(Error::FormMismatch);
            }
        }
        Ok(ProductAut {
            form: form.clone(),
            blocks,
        })
    }

    pub fn identity(form: &CanonicalForm) -> Self {
        let blocks = form
            .parts()
            .iter()
            .map(|q| WreathElement::identity(&part_field(form, q), q.j, q.n))
            .collect();
        ProductAut {
            form: form.clone(),
            blocks,
        }
    }

    pub fn form(&self) -> &CanonicalForm {
        &self.form
    }

    pub fn blocks(&self) -> &[WreathElement] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(WreathElement::is_identity)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.form != other.form {
            return Err(Error::FormMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<_>>()?;
        Ok(ProductAut {
            form: self.form.clone(),
            blocks,
        })
    }

    pub fn inverse(&self) -> Self {
        ProductAut {
            form: self.form.clone(),
            blocks: self.blocks.iter().map(WreathElement::inverse).collect(),
        }
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.algebra().form() != &self.form {
            return Err(Error::FormMismatch);
        }
        let mut out = Vec::with_capacity(x.components().len());
        let mut rest = x.components();
        for b in &self.blocks {
            let (head, tail) = rest.split_at(b.perm.len());
            out.extend(b.apply(head)?);
            rest = tail;
        }
        x.algebra().element(out)
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    /// Parses the block/perm/locals JSON over F_p; the form is read off the blocks.
    pub fn from_json(p: crate::gf::PrimeField, text: &str) -> Result<Self> {
        json::from_json(p, text)
    }
}

impl fmt::Display for LocalAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        if n == 1 {
            f.write_str("id")?;
        } else {
            let series = self.matrix().series().to_string().replace('Y', "X");
            write!(f, "X -> {series}")?;
        }
        if self.frob() != 0 {
            write!(f, " after Frob^{}", self.frob())?;
        }
        Ok(())
    }
}

impl fmt::Display for ProductAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let q = b.part;
            write!(f, "(d={}, j={}) perm {:?}: ", q.d, q.j, b.perm)?;
            for (k, l) in b.locals.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "[{l}]")?;
            }
        }
        Ok(())
    }
}

fn part_field(form: &CanonicalForm, q: &FormPart) -> ExtensionField {
    ext_field(form.p(), q.d).expect("parts have positive degree")
}

pub fn gn_entries(m: &GnMatrix) -> Vec<Vec<FieldElement>> {
    m.entries()
}

pub fn gn_compose(a: &GnMatrix, b: &GnMatrix) -> Result<GnMatrix> {
    a.compose(b)
}

pub fn gn_invert(a: &GnMatrix) -> GnMatrix {
    a.inverse()
}

pub fn local_aut_compose(x: &LocalAut, y: &LocalAut) -> Result<LocalAut> {
    x.compose(y)
}

pub fn local_aut_apply(x: &LocalAut, v: &TruncPoly) -> Result<TruncPoly> {
    x.apply(v)
}

pub fn wreath_compose(x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
    x.compose(y)
}

pub fn aut_apply(g: &ProductAut, x: &AlgebraElement) -> Result<AlgebraElement> {
    g.apply(x)
}

/// `|Aut|`: the product over parts of `(d * |G_j(F_{p^d})|)^n * n!`.
pub fn aut_group_order(form: &CanonicalForm) -> BigUint {
    let p = BigUint::from(form.p().p());
    form.parts().iter().fold(BigUint::one(), |acc, q| {
        let local = BigUint::from(q.d) * gn_order(&p.pow(q.d as u32), q.j);
        let fact: BigUint = (1..=q.n).map(BigUint::from).product();
        acc * local.pow(q.n as u32) * fact
    })
}

/// A generator of `L^*`: the first element in index order whose
/// `(q-1)/r`-th power is not one for every prime `r | q - 1`.
pub fn multiplicative_generator(field: &ExtensionField) -> Result<FieldElement> {
    let q = field.order().ok_or_else(|| Error::CapExceeded {
        what: "field order",
        size: format!("{}^{}", field.p(), field.degree()),
        cap: u64::MAX,
    })?;
    let primes = fpx::prime_divisors(q - 1);
    let g = (1..q)
        .map(|i| field.from_index(i))
        .find(|g| primes.iter().all(|r| !g.pow((q - 1) / r).is_one()))
        .expect("the multiplicative group of a finite field is cyclic");
    Ok(g)
}

/// A generating set of the automorphism group, identities omitted.
///
/// Per part: adjacent slot transpositions; in the first slot, the Frobenius
/// (when `d > 1`), `X -> gX` for a generator `g` of `L^*` (when `j >= 2`), and
/// `X -> X + X^k` for `2 <= k < j`. That this set generates the whole group is
/// checked by closure in the tests, not proven.
pub fn aut_generators(form: &CanonicalForm) -> Result<Vec<ProductAut>> {
    let id = ProductAut::identity(form);
    let mut gens = Vec::new();
    for (b, q) in form.parts().iter().enumerate() {
        let field = part_field(form, q);
        let mut push = |w: WreathElement| {
            if !w.is_identity() {
                let mut g = id.clone();
                g.blocks[b] = w;
                gens.push(g);
            }
        };
        for k in 0..q.n.saturating_sub(1) {
            let mut w = WreathElement::identity(&field, q.j, q.n);
            w.perm.swap(k, k + 1);
            push(w);
        }
        let mut first_slot = |local: LocalAut| {
            let mut w = WreathElement::identity(&field, q.j, q.n);
            w.locals[0] = local;
            push(w);
        };
        if q.d > 1 {
            first_slot(LocalAut::new(GnMatrix::identity(&field, q.j), 1)?);
        }
        if q.j >= 2 {
            let mut lambdas = vec![field.zero(); q.j - 1];
            lambdas[0] = multiplicative_generator(&field)?;
            first_slot(LocalAut::new(GnMatrix::new(&field, q.j, lambdas)?, 0)?);
        }
        for k in 2..q.j {
            let mut lambdas = vec![field.zero(); q.j - 1];
            lambdas[0] = field.one();
            lambdas[k - 1] = field.one();
            first_slot(LocalAut::new(GnMatrix::new(&field, q.j, lambdas)?, 0)?);
        }
    }
    Ok(gens)
}

/// The subgroup generated by `gens`, by breadth-first closure from the
/// identity. Fails once more than `cap` elements have been found.
pub fn generated_subgroup(form: &CanonicalForm, gens: &[ProductAut], cap: u64) -> Result<HashSet<ProductAut>> {
    let id = ProductAut::identity(form);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x)?;
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded {
                        what: "generated subgroup",
                        size: format!("more than {cap}"),
                        cap,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Every automorphism, lazily, in a fixed order. Fails up front when the group
/// order exceeds `cap` or a residue field is too large to list.
pub fn enumerate_auts(form: &CanonicalForm, cap: u64) -> Result<AutIter> {
    let order = aut_group_order(form);
    if order > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "automorphism group order",
            size: order.to_string(),
            cap,
        });
    }
    let lists = form
        .parts()
        .iter()
        .map(|q| block_elements(&part_field(form, q), q.j, q.n))
        .collect::<Result<Vec<_>>>()?;
    Ok(AutIter {
        form: form.clone(),
        counter: vec![0; lists.len()],
        lists,
        remaining: order.to_u64().expect("bounded by cap"),
    })
}

/// Iterator returned by [`enumerate_auts`].
pub struct AutIter {
    form: CanonicalForm,
    lists: Vec<Vec<WreathElement>>,
    counter: Vec<usize>,
    remaining: u64,
}

impl Iterator for AutIter {
    type Item = ProductAut;

    fn next(&mut self) -> Option<ProductAut> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let blocks = self.counter.iter().zip(&self.lists).map(|(&c, l)| l[c].clone()).collect();
        for (c, l) in self.counter.iter_mut().zip(&self.lists) {
            *c += 1;
            if *c < l.len() {
                break;
            }
            *c = 0;
        }
        Some(ProductAut {
            form: self.form.clone(),
            blocks,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for AutIter {}

/// All of `G_j(L) ⋊ Gal`: Frobenius power outermost, then `λ_1 != 0`, then
/// the remaining lambdas in mixed-radix index order.
fn local_elements(field: &ExtensionField, j: usize) -> Result<Vec<LocalAut>> {
    let q = field.order().ok_or_else(|| Error::CapExceeded {
        what: "field order",
        size: format!("{}^{}", field.p(), field.degree()),
        cap: u64::MAX,
    })?;
    let mut matrices = Vec::new();
    if j == 1 {
        matrices.push(GnMatrix::identity(field, 1));
    } else {
        let tail = q.pow((j - 2) as u32);
        for first in 1..q {
            for mut idx in 0..tail {
                let mut lambdas = vec![field.from_index(first)];
                for _ in 0..j - 2 {
                    lambdas.push(field.from_index(idx % q));
                    idx /= q;
                }
                matrices.push(GnMatrix::new(field, j, lambdas)?);
            }
        }
    }
    let mut out = Vec::with_capacity(matrices.len() * field.degree());
    for frob in 0..field.degree() as u32 {
        for m in &matrices {
            out.push(LocalAut::new(m.clone(), frob)?);
        }
    }
    Ok(out)
}

fn block_elements(field: &ExtensionField, j: usize, n: usize) -> Result<Vec<WreathElement>> {
    let locals = local_elements(field, j)?;
    let s = locals.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut digits = vec![0usize; n];
        loop {
            out.push(WreathElement {
                part: FormPart::new(field.degree(), j, n),
                perm: perm.clone(),
                locals: digits.iter().map(|&i| locals[i].clone()).collect(),
            });
            let Some(pos) = digits.iter().position(|&x| x + 1 < s) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].fill(0);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let k = v.iter().rposition(|&x| x > v[i]).expect("v[i + 1] > v[i]");
    v.swap(i, k);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ProductAlgebra;
    use crate::gf::PrimeField;

    fn form(p: u64, parts: &[(usize, usize, usize)]) -> CanonicalForm {
        let parts = parts.iter().map(|&(d, j, n)| FormPart::new(d, j, n)).collect();
        CanonicalForm::new(PrimeField::new(p).unwrap(), parts).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(aut_group_order(&form(2, &[(1, 1, 1)])), BigUint::from(1u32));
        assert_eq!(aut_group_order(&form(2, &[(1, 1, 2)])), BigUint::from(2u32));
        assert_eq!(aut_group_order(&form(2, &[(2, 2, 1)])), BigUint::from(6u32));
        assert_eq!(aut_group_order(&form(3, &[(1, 3, 1)])), BigUint::from(6u32));
        assert_eq!(aut_group_order(&form(2, &[(1, 2, 2)])), BigUint::from(2u32));
        assert_eq!(aut_group_order(&form(2, &[])), BigUint::from(1u32));
    }

    #[test]
    fn generator_examples() {
        assert!(aut_generators(&form(2, &[(1, 1, 1)])).unwrap().is_empty());
        let f22 = form(2, &[(2, 2, 1)]);
        let gens = aut_generators(&f22).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(generated_subgroup(&f22, &gens, 100).unwrap().len(), 6);
    }

    #[test]
    fn generators_close_to_full_group() {
        for f in [
            form(2, &[(1, 1, 3), (2, 1, 1)]),
            form(2, &[(1, 4, 1)]),
            form(2, &[(2, 3, 1)]),
            form(2, &[(2, 5, 1)]),
            form(2, &[(3, 2, 1)]),
            form(3, &[(1, 3, 2)]),
            form(3, &[(2, 2, 1), (1, 1, 2)]),
            form(5, &[(1, 4, 1)]),
        ] {
            let order = aut_group_order(&f).to_u64().unwrap();
            let gens = aut_generators(&f).unwrap();
            assert_eq!(generated_subgroup(&f, &gens, 5000).unwrap().len() as u64, order, "{f}");
        }
    }

    #[test]
    fn enumeration_is_the_group() {
        for f in [form(2, &[(1, 2, 2)]), form(3, &[(1, 2, 1), (1, 1, 2)]), form(2, &[(2, 3, 1)])] {
            let all: Vec<_> = enumerate_auts(&f, 10_000).unwrap().collect();
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(all.len(), set.len());
            assert_eq!(BigUint::from(all.len()), aut_group_order(&f));
            for a in all.iter().take(20) {
                assert!(set.contains(&a.inverse()));
                for b in all.iter().rev().take(20) {
                    assert!(set.contains(&a.compose(b).unwrap()));
                }
            }
        }
        assert!(matches!(
            enumerate_auts(&form(2, &[(1, 1, 12)]), 1_000_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let f = form(2, &[(1, 2, 2), (2, 2, 1)]);
        let alg = ProductAlgebra::new(&f);
        let auts: Vec<_> = enumerate_auts(&f, 1000).unwrap().collect();
        let xs: Vec<_> = (0..alg.size().unwrap()).step_by(37).map(|i| alg.element_at(i)).collect();
        for (i, a) in auts.iter().enumerate().step_by(3) {
            let b = &auts[(i * 7 + 1) % auts.len()];
            let ab = a.compose(b).unwrap();
            for x in &xs {
                let lhs = ab.apply(x).unwrap();
                assert_eq!(lhs, a.apply(&b.apply(x).unwrap()).unwrap());
                let y = &xs[(i + 1) % xs.len()];
                assert_eq!(
                    a.apply(&x.mul(y).unwrap()).unwrap(),
                    a.apply(x).unwrap().mul(&a.apply(y).unwrap()).unwrap()
                );
                assert_eq!(a.inverse().apply(&a.apply(x).unwrap()).unwrap(), *x);
            }
        }
    }

    #[test]
    fn wreath_on_two_dual_numbers() {
        // (F_2[Y]/(Y^2))^2: G_2(F_2) is trivial, so the group is S_2.
        let f = form(2, &[(1, 2, 2)]);
        let alg = ProductAlgebra::new(&f);
        let auts: Vec<_> = enumerate_auts(&f, 10).unwrap().collect();
        assert_eq!(auts.len(), 2);
        let swap = auts.iter().find(|g| !g.is_identity()).unwrap();
        let x = alg.element_at(0b0111);
        let y = swap.apply(&x).unwrap();
        assert_eq!(y.components()[0], x.components()[1]);
        assert_eq!(y.components()[1], x.components()[0]);
    }

    #[test]
    fn multiplicative_generators() {
        for (p, d) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4)] {
            let field = ext_field(PrimeField::new(p).unwrap(), d).unwrap();
            let g = multiplicative_generator(&field).unwrap();
            let q = field.order().unwrap();
            let mut x = field.one();
            let mut order = 0;
            loop {
                x = &x * &g;
                order += 1;
                if x.is_one() {
                    break;
                }
            }
            assert_eq!(order, q - 1);
        }
    }

    #[test]
    fn permutations_in_lex_order() {
        let mut v = vec![0, 1, 2];
        let mut all = vec![v.clone()];
        while next_permutation(&mut v) {
            all.push(v.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }
}
