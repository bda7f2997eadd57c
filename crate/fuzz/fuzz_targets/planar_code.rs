#![no_main]

use std::io::Cursor;

use libfuzzer_sys::fuzz_target;
use oneplanar::census::{write_planar_code, PlanarCodeReader};

fuzz_target!(|data: &[u8]| {
    let mut reader = PlanarCodeReader::new(Cursor::new(data));
    let mut graphs = Vec::new();
    for g in reader.by_ref() {
        match g {
            Ok(g) => graphs.push(g),
            Err(_) => return,
        }
    }
    // A stream that parses completely writes back to the same bytes.
    assert_eq!(write_planar_code(&graphs, reader.had_header()), data);
});
