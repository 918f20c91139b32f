//! Polynomial parsing never panics, and display output parses back to the
//! same value. Display drops an unused `y`, so values compare in two variables.
#![no_main]

use lapgraph_core::algebra::{CoeffField, LaurentPoly};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for field in [CoeffField::Integers, CoeffField::Rationals, CoeffField::gf2()] {
        if let Ok(p) = LaurentPoly::parse_in(text, field) {
            let again = LaurentPoly::parse_in(&p.to_string(), field).expect("display output parses");
            assert_eq!(again.to_two_vars(), p.to_two_vars());
            if !p.is_zero() {
                let n = p.normalize().expect("nonzero");
                assert_eq!(n.normalize().expect("nonzero"), n);
            }
        }
    }
});
