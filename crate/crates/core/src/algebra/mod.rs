//! The concrete carrier `prod (F_{p^d}[Y]/(Y^j))^{n_{d,j}}` of a canonical form.
//!
//! Slots are numbered in `(d, j)` order with the copies of one part
//! consecutive. Slot `s` holds a [`TruncPoly`] of length `j` over `F_{p^d}`.

mod form;

use std::fmt;
use std::sync::Arc;

pub use form::{AlgebraType, CanonicalForm, FormPart};

use crate::error::{Error, Result};
use crate::gf::{ext_field, ExtensionField};
use crate::trunc::TruncPoly;

/// Default bound on the slot count accepted by [`ProductAlgebra::idempotents`].
pub const DEFAULT_IDEMPOTENT_SLOT_CAP: usize = 20;

#[derive(Debug)]
struct Slot {
    field: ExtensionField,
    j: usize,
}

#[derive(Debug)]
struct Inner {
    form: CanonicalForm,
    slots: Vec<Slot>,
}

/// A finite product of local factors with its arithmetic. Cheap to clone.
#[derive(Clone, Debug)]
pub struct ProductAlgebra(Arc<Inner>);

impl PartialEq for ProductAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.form == other.0.form
    }
}

impl Eq for ProductAlgebra {}

impl ProductAlgebra {
    pub fn new(form: &CanonicalForm) -> Self {
        let mut slots = Vec::with_capacity(form.slot_count());
        for part in form.parts() {
            let field = ext_field(form.p(), part.d).expect("positive degree");
            for _ in 0..part.n {
                slots.push(Slot {
                    field: field.clone(),
                    j: part.j,
                });
            }
        }
        ProductAlgebra(Arc::new(Inner {
            form: form.clone(),
            slots,
        }))
    }

    pub fn form(&self) -> &CanonicalForm {
        &self.0.form
    }

    pub fn slot_count(&self) -> usize {
        self.0.slots.len()
    }

    pub fn dimension(&self) -> usize {
        self.0.form.dimension()
    }

    pub fn slot_field(&self, slot: usize) -> &ExtensionField {
        &self.0.slots[slot].field
    }

    pub fn slot_len(&self, slot: usize) -> usize {
        self.0.slots[slot].j
    }

    fn from_fn(&self, f: impl Fn(&Slot) -> TruncPoly) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            components: self.0.slots.iter().map(f).collect(),
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.from_fn(|s| TruncPoly::zero(&s.field, s.j))
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_fn(|s| TruncPoly::one(&s.field, s.j))
    }

    /// Builds an element from one truncated polynomial per slot.
    pub fn element(&self, components: Vec<TruncPoly>) -> Result<AlgebraElement> {
        if components.len() != self.slot_count() {
            return Err(Error::LengthMismatch {
                expected: self.slot_count(),
                got: components.len(),
            });
        }
        for (c, s) in components.iter().zip(&self.0.slots) {
            if c.len() != s.j {
                return Err(Error::LengthMismatch {
                    expected: s.j,
                    got: c.len(),
                });
            }
            if c.field() != &s.field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(AlgebraElement {
            algebra: self.clone(),
            components,
        })
    }

    /// The unit of slot `slot` and zero elsewhere.
    pub fn basis_idempotent(&self, slot: usize) -> Result<AlgebraElement> {
        if slot >= self.slot_count() {
            return Err(Error::SlotOutOfRange {
                slot,
                slots: self.slot_count(),
            });
        }
        let mut e = self.zero();
        let s = &self.0.slots[slot];
        e.components[slot] = TruncPoly::one(&s.field, s.j);
        Ok(e)
    }

    /// Sum of the basis idempotents of the slots whose bit is set in `mask`.
    fn indicator(&self, mask: u64) -> AlgebraElement {
        let mut e = self.zero();
        for (i, s) in self.0.slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e.components[i] = TruncPoly::one(&s.field, s.j);
            }
        }
        e
    }

    /// All `2^N` idempotents, `N` the slot count, as sums of basis idempotents.
    /// Element `k` of the list selects the slots given by the bits of `k`.
    pub fn idempotents(&self, slot_cap: usize) -> Result<Vec<AlgebraElement>> {
        let n = self.slot_count();
        if n > slot_cap || n >= 64 {
            return Err(Error::CapExceeded {
                what: "idempotent enumeration slot count",
                size: n.to_string(),
                cap: slot_cap as u64,
            });
        }
        Ok((0..1u64 << n).map(|mask| self.indicator(mask)).collect())
    }

    /// `E_1(a) = {x : a x = x}` for an idempotent `a`.
    pub fn eigenspace_one(&self, a: &AlgebraElement) -> Result<Eigenring> {
        if a.algebra != *self {
            return Err(Error::FormMismatch);
        }
        if !a.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        // idempotents of a local ring are 0 and 1
        let selected: Vec<usize> = a
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_one())
            .map(|(i, _)| i)
            .collect();
        let mut parts: Vec<FormPart> = Vec::new();
        for &s in &selected {
            let slot = &self.0.slots[s];
            let key = (slot.field.degree(), slot.j);
            match parts.last_mut() {
                Some(last) if last.key() == key => last.n += 1,
                _ => parts.push(FormPart::new(key.0, key.1, 1)),
            }
        }
        Ok(Eigenring {
            form: CanonicalForm::new(self.form().p(), parts)?,
            selected,
        })
    }

    /// Element with the given F_p coordinates, slots concatenated in order.
    pub fn from_fp_coords(&self, coords: &[u64]) -> Result<AlgebraElement> {
        if coords.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                got: coords.len(),
            });
        }
        let mut rest = coords;
        let mut components = Vec::with_capacity(self.slot_count());
        for s in &self.0.slots {
            let (head, tail) = rest.split_at(s.j * s.field.degree());
            components.push(TruncPoly::from_fp_coords(&s.field, s.j, head));
            rest = tail;
        }
        Ok(AlgebraElement {
            algebra: self.clone(),
            components,
        })
    }

    /// `p^dim`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        let p = self.form().p().p();
        (0..self.dimension()).try_fold(1u64, |acc, _| acc.checked_mul(p))
    }

    /// Element number `idx` in base-p coordinate order.
    pub fn element_at(&self, mut idx: u64) -> AlgebraElement {
        let p = self.form().p().p();
        let coords: Vec<u64> = (0..self.dimension())
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect();
        self.from_fp_coords(&coords).expect("dimension matches")
    }

    /// Every element; only for small algebras. Panics if `p^dim` overflows.
    pub fn elements(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        let size = self.size().expect("algebra too large to enumerate");
        (0..size).map(move |i| self.element_at(i))
    }
}

/// An element of a [`ProductAlgebra`].
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: ProductAlgebra,
    components: Vec<TruncPoly>,
}

impl std::hash::Hash for AlgebraElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.components.hash(state);
    }
}

impl AlgebraElement {
    pub fn algebra(&self) -> &ProductAlgebra {
        &self.algebra
    }

    pub fn components(&self) -> &[TruncPoly] {
        &self.components
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&TruncPoly, &TruncPoly) -> Result<TruncPoly>,
    ) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::FormMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            components,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, TruncPoly::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, TruncPoly::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, TruncPoly::mul)
    }

    /// Multiplication by an element of F_p.
    pub fn scalar_mul(&self, c: u64) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            components: self
                .components
                .iter()
                .map(|t| t.scale(&t.field().from_u64(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            components: self.components.iter().map(|t| t.pow(e)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TruncPoly::is_zero)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).expect("same algebra") == *self
    }

    /// Coordinates over F_p, slots concatenated in order.
    pub fn fp_coords(&self) -> Vec<u64> {
        self.components.iter().flat_map(TruncPoly::fp_coords).collect()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `E_1(a)`: the slots selected by an idempotent and the isomorphism type of
/// their product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenring {
    pub form: CanonicalForm,
    pub selected: Vec<usize>,
}

impl Eigenring {
    pub fn dimension(&self) -> usize {
        self.form.dimension()
    }
}
