//! The fuzz targets' properties on stable: every checked-in corpus seed, plus
//! random mutations of the seeds, must decode without panicking and round-trip.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use monogenic::{AlgebraType, ExtensionField, Polynomial, PrimeField, ProductAut};

const POLY_PRIMES: [u64; 5] = [2, 3, 5, 7, (1 << 61) - 1];
const AUT_PRIMES: [u64; 4] = [2, 3, 5, 7];

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read(entry.unwrap().path()).unwrap())
        .collect();
    out.sort();
    out
}

/// Returns whether the input decoded.
fn poly_case(data: &[u8]) -> bool {
    let Some((&sel, rest)) = data.split_first() else {
        return false;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return false;
    };
    let field = ExtensionField::prime(PrimeField::new(POLY_PRIMES[sel as usize % POLY_PRIMES.len()]).unwrap());
    match Polynomial::parse(text, &field) {
        Ok(f) => {
            assert_eq!(Polynomial::parse(&f.to_string(), &field).unwrap(), f, "{text:?}");
            true
        }
        Err(_) => false,
    }
}

fn form_case(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else {
        return false;
    };
    match AlgebraType::from_json(text) {
        Ok(t) => {
            assert_eq!(AlgebraType::from_json(&t.to_json()).unwrap(), t);
            true
        }
        Err(_) => false,
    }
}

fn aut_case(data: &[u8]) -> bool {
    let Some((&sel, rest)) = data.split_first() else {
        return false;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return false;
    };
    let p = PrimeField::new(AUT_PRIMES[sel as usize % AUT_PRIMES.len()]).unwrap();
    match ProductAut::from_json(p, text) {
        Ok(g) => {
            assert_eq!(ProductAut::from_json(p, &g.to_json()).unwrap(), g);
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
            true
        }
        Err(_) => false,
    }
}

#[test]
fn corpus_seeds_replay() {
    let polys = seeds("parse_poly");
    assert!(polys.iter().all(|s| poly_case(s)), "every polynomial seed should parse");
    let forms = seeds("parse_form_json");
    // the seeds include an infeasible form, which still decodes
    assert!(forms.iter().all(|s| form_case(s)));
    let auts = seeds("parse_aut_json");
    assert!(auts.iter().all(|s| aut_case(s)));
}

#[derive(Clone, Debug)]
enum Edit {
    Flip(usize, u8),
    Insert(usize, u8),
    Delete(usize),
}

fn mutate(seed: &[u8], edits: &[Edit]) -> Vec<u8> {
    let mut v = seed.to_vec();
    for e in edits {
        match *e {
            Edit::Flip(i, b) if !v.is_empty() => {
                let i = i % v.len();
                v[i] ^= b;
            }
            Edit::Insert(i, b) => v.insert(i % (v.len() + 1), b),
            Edit::Delete(i) if !v.is_empty() => {
                let i = i % v.len();
                v.remove(i);
            }
            _ => {}
        }
    }
    v
}

fn arb_edits() -> impl Strategy<Value = Vec<Edit>> {
    // bias inserted bytes toward the grammar's own alphabet
    let byte = prop_oneof![
        prop::sample::select(b"X0123456789+-*^() {}[]\",:adjnpfrobmlst".to_vec()),
        any::<u8>(),
    ];
    let edit = prop_oneof![
        (any::<usize>(), any::<u8>()).prop_map(|(i, b)| Edit::Flip(i, b)),
        (any::<usize>(), byte).prop_map(|(i, b)| Edit::Insert(i, b)),
        any::<usize>().prop_map(Edit::Delete),
    ];
    prop::collection::vec(edit, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn mutated_polynomials(idx in any::<usize>(), edits in arb_edits()) {
        let all = seeds("parse_poly");
        poly_case(&mutate(&all[idx % all.len()], &edits));
    }

    #[test]
    fn mutated_forms(idx in any::<usize>(), edits in arb_edits()) {
        let all = seeds("parse_form_json");
        form_case(&mutate(&all[idx % all.len()], &edits));
    }

    #[test]
    fn mutated_auts(idx in any::<usize>(), edits in arb_edits()) {
        let all = seeds("parse_aut_json");
        aut_case(&mutate(&all[idx % all.len()], &edits));
    }
}
