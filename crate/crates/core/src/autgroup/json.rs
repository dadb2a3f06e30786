use serde::{Deserialize, Serialize};

use super::{GnMatrix, LocalAut, ProductAut, WreathElement};
use crate::algebra::{CanonicalForm, FormPart};
use crate::error::{Error, Result};
use crate::gf::{ext_field, PrimeField};

/// Residue-field degrees above this are refused when decoding, since building
/// the field means searching for its modulus.
pub const MAX_JSON_DEGREE: usize = 32;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutJson {
    blocks: Vec<BlockJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockJson {
    d: usize,
    j: usize,
    perm: Vec<usize>,
    locals: Vec<LocalJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalJson {
    frob: u32,
    lambdas: Vec<Vec<u64>>,
}

pub(super) fn to_json(g: &ProductAut) -> String {
    let blocks = g
        .blocks
        .iter()
        .map(|b| BlockJson {
            d: b.part.d,
            j: b.part.j,
            perm: b.perm.clone(),
            locals: b
                .locals
                .iter()
                .map(|l| LocalJson {
                    frob: l.frob(),
                    lambdas: l.matrix().lambdas().iter().map(|x| x.coeffs().to_vec()).collect(),
                })
                .collect(),
        })
        .collect();
    serde_json::to_string(&AutJson { blocks }).expect("plain data serializes")
}

pub(super) fn from_json(p: PrimeField, text: &str) -> Result<ProductAut> {
    let raw: AutJson = serde_json::from_str(text)?;
    let mut parts = Vec::with_capacity(raw.blocks.len());
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for b in raw.blocks {
        if b.d == 0 || b.j == 0 {
            return Err(Error::InvalidAut("d and j must be positive".into()));
        }
        if b.d > MAX_JSON_DEGREE {
            return Err(Error::InvalidAut(format!("degree {} above {MAX_JSON_DEGREE}", b.d)));
        }
        if b.perm.len() != b.locals.len() {
            return Err(Error::InvalidAut("perm and locals differ in length".into()));
        }
        // shape checks before the field is built
        for l in &b.locals {
            if l.lambdas.len() != b.j - 1 {
                return Err(Error::InvalidAut(format!("expected {} lambdas", b.j - 1)));
            }
            if let Some(c) = l.lambdas.iter().find(|c| c.len() != b.d) {
                return Err(Error::InvalidAut(format!("coefficient vector {c:?} must have length {}", b.d)));
            }
            if l.lambdas.iter().flatten().any(|&c| c >= p.p()) {
                return Err(Error::InvalidAut(format!("coefficients must lie in 0..{}", p.p())));
            }
        }
        let field = ext_field(p, b.d)?;
        let locals = b
            .locals
            .iter()
            .map(|l| {
                let lambdas = l.lambdas.iter().map(|c| field.from_coeffs(c)).collect();
                LocalAut::new(GnMatrix::new(&field, b.j, lambdas)?, l.frob)
            })
            .collect::<Result<Vec<_>>>()?;
        parts.push(FormPart::new(b.d, b.j, b.perm.len()));
        blocks.push(WreathElement::new(b.perm, locals)?);
    }
    if parts.windows(2).any(|w| w[0].key() >= w[1].key()) {
        return Err(Error::InvalidAut("blocks must be sorted by (d, j) without repeats".into()));
    }
    let form = CanonicalForm::new(p, parts)?;
    ProductAut::new(&form, blocks)
}
