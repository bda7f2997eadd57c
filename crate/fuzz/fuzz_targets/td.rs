#![no_main]

use libfuzzer_sys::fuzz_target;
use oneplanar::extremal::td::{parse, write};
use oneplanar::extremal::{check_td, gen_strip, ClassId};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(td) = parse(text) else { return };
    assert_eq!(parse(&write(&td)).unwrap(), td);
    let g = gen_strip(3).unwrap();
    let _ = check_td(&g, &td, ClassId::E3);
});
