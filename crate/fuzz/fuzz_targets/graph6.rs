#![no_main]

use libfuzzer_sys::fuzz_target;
use oneplanar::graph6::{decode, decode_lines, encode};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = decode(text) {
        // Accepted strings are canonical: re-encoding gives them back.
        let s = encode(&g);
        assert_eq!(decode(&s).unwrap(), g);
    }
    let _ = decode_lines(text);
});
