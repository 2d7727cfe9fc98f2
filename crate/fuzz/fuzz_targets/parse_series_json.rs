//! Fuzzes the series JSON decoder: anything it accepts must round-trip
//! byte-identically through the encoder.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcapsid::TruncatedSeries;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(series) = TruncatedSeries::from_json(text) else {
        return;
    };

    let emitted = series.to_json();
    let back = TruncatedSeries::from_json(&emitted).expect("emitted JSON reparses");
    assert_eq!(back, series);
    assert_eq!(back.to_json(), emitted, "encoding is canonical");

    // Cheap total accessors must not panic on any accepted value.
    assert_eq!(series.coeffs().len(), series.order() + 1);
    let _ = series.first_nonzero();
    let _ = series.is_integral();
    let _ = series.to_csv();
});
