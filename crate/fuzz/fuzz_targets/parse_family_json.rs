//! Fuzzes the vector-family JSON decoder. Accepted families must
//! round-trip through the encoder and support small exact counts without
//! panicking or spinning (component parameters are attacker-controlled and
//! can be astronomically large).

#![no_main]

use libfuzzer_sys::fuzz_target;
use num_traits::One;
use qcapsid::vector_partitions::{direct_count, VectorFamily};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(family) = VectorFamily::from_json(text) else {
        return;
    };

    let emitted = family.to_json();
    let back = VectorFamily::from_json(&emitted).expect("emitted JSON reparses");
    assert_eq!(back.to_json(), emitted, "encoding is canonical");
    assert_eq!(back.name(), family.name());
    assert_eq!(back.components().len(), family.components().len());

    // Exact counting at tiny weights exercises every accepted component
    // kind end to end; the empty vector partition is always counted once.
    assert!(direct_count(&family, 0).expect("weight 0 is in range").is_one());
    for n in 1..=6 {
        let _ = direct_count(&family, n).expect("small weights are in range");
    }
});
