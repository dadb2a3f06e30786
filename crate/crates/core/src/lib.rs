//! Classification, isomorphism testing and automorphism groups of
//! one-generator algebras `F_p[X]/(P)` over prime finite fields.
//!
//! Every such algebra is isomorphic to a product of local factors
//! `F_{p^d}[Y]/(Y^j)`, recorded as a [`CanonicalForm`]. Its automorphism group
//! is a product, over the `(d, j)` classes, of wreath products of
//! `G_j(F_{p^d}) ⋊ Gal(F_{p^d}/F_p)` by symmetric groups.

pub mod algebra;
pub mod autgroup;
pub mod classify;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod trunc;
pub mod verify;

pub use algebra::{AlgebraElement, AlgebraType, CanonicalForm, FormPart, ProductAlgebra};
pub use autgroup::{GnMatrix, LocalAut, ProductAut, WreathElement};
pub use error::{Error, Result};
pub use gf::{ext_field, ExtensionField, FieldElement, PrimeField};
pub use poly::{Factorization, Polynomial};
