#![no_main]

use libfuzzer_sys::fuzz_target;
use monogenic::{ExtensionField, Polynomial, PrimeField};

// first byte picks the characteristic, the rest is the expression
const PRIMES: [u64; 5] = [2, 3, 5, 7, (1 << 61) - 1];

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let p = PrimeField::new(PRIMES[sel as usize % PRIMES.len()]).unwrap();
    let field = ExtensionField::prime(p);
    if let Ok(f) = Polynomial::parse(text, &field) {
        let again = Polynomial::parse(&f.to_string(), &field).expect("display output parses");
        assert_eq!(again, f);
    }
});
