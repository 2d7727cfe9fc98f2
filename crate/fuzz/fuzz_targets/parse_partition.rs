//! Fuzzes the multiplicity-notation partition parser and the cheap
//! structural operations that must never panic on parsed values.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qcapsid::bijection;
use qcapsid::partitions::{capsid_profile, is_capsid, CapsidSpec, Partition};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = text.parse::<Partition>() else {
        return;
    };

    // The canonical form must reparse to the same value.
    let display = p.to_string();
    let back: Partition = display.parse().expect("canonical form reparses");
    assert_eq!(back, p);

    // Conjugation is a weight-preserving involution, and the conjugate has
    // as many parts as the original's largest part. All of these run in
    // time proportional to the number of *distinct* parts, so huge part
    // values stay cheap.
    let conj = p.conjugate();
    assert_eq!(conj.weight(), p.weight());
    assert_eq!(conj.len(), p.largest_part().unwrap_or(0));
    assert_eq!(conj.conjugate(), p);

    // Membership predicates are total; on members the involution must
    // round-trip and preserve weight.
    let spec = CapsidSpec::new(5, 1, 2).expect("valid spec");
    if is_capsid(&spec, &p) {
        let (a, b) = capsid_profile(&spec, &p).expect("members have a profile");
        let image = bijection::apply(&spec, &p).expect("members map");
        assert_eq!(image.weight(), p.weight());
        let swapped = spec.swapped();
        assert_eq!(
            capsid_profile(&swapped, &image),
            Some((b, a)),
            "profile reverses"
        );
        assert_eq!(bijection::apply(&swapped, &image).expect("images map back"), p);
    }
});
