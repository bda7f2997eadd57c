#![no_main]

use libfuzzer_sys::fuzz_target;
use oneplanar::drawing::format::{parse, write};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = parse(text) else { return };
    let _ = d.validate();
    let _ = d.faces();
    assert_eq!(parse(&write(&d)).unwrap(), d);
});
