#![no_main]

use libfuzzer_sys::fuzz_target;
use monogenic::AlgebraType;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = AlgebraType::from_json(text) {
        assert_eq!(AlgebraType::from_json(&t.to_json()).unwrap(), t);
        if let AlgebraType::Quotient(form) = &t {
            let _ = (form.dimension(), form.slot_count(), form.to_string());
        }
    }
});
