#![no_main]

use libfuzzer_sys::fuzz_target;
use monogenic::{PrimeField, ProductAut};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let p = PrimeField::new(PRIMES[sel as usize % PRIMES.len()]).unwrap();
    if let Ok(g) = ProductAut::from_json(p, text) {
        assert_eq!(ProductAut::from_json(p, &g.to_json()).unwrap(), g);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
    }
});
