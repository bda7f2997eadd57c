//! The fuzz targets' checks, run on the checked-in corpus and on random
//! mutations of it.

use std::fs;
use std::io::Cursor;
use std::path::PathBuf;

use oneplanar::census::{write_planar_code, PlanarCodeReader};
use oneplanar::drawing::format as drawing_format;
use oneplanar::extremal::{check_td, gen_strip, td, ClassId};
use oneplanar::graph6;
use proptest::prelude::*;

fn graph6_target(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = graph6::decode(text) {
        assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }
    let _ = graph6::decode_lines(text);
}

fn planar_code_target(data: &[u8]) {
    let mut reader = PlanarCodeReader::new(Cursor::new(data));
    let mut graphs = Vec::new();
    for g in reader.by_ref() {
        match g {
            Ok(g) => graphs.push(g),
            Err(_) => return,
        }
    }
    assert_eq!(write_planar_code(&graphs, reader.had_header()), data);
}

fn drawing_target(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = drawing_format::parse(text) else { return };
    let _ = d.validate();
    let _ = d.faces();
    assert_eq!(drawing_format::parse(&drawing_format::write(&d)).unwrap(), d);
}

fn td_target(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(t) = td::parse(text) else { return };
    assert_eq!(td::parse(&td::write(&t)).unwrap(), t);
    let _ = check_td(&gen_strip(3).unwrap(), &t, ClassId::E3);
}

const TARGETS: [(&str, fn(&[u8])); 4] =
    [("graph6", graph6_target), ("planar_code", planar_code_target), ("drawing", drawing_target), ("td", td_target)];

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|p| fs::read(p).unwrap()).collect()
}

#[test]
fn corpus_replays() {
    for (name, run) in TARGETS {
        let seeds = corpus(name);
        assert!(!seeds.is_empty(), "{name}");
        for s in &seeds {
            run(s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, ..ProptestConfig::default() })]

    #[test]
    fn mutated_seeds_never_panic(target in 0usize..4, seed in any::<prop::sample::Index>(), edits in prop::collection::vec((any::<prop::sample::Index>(), any::<u8>(), 0u8..3), 1..8)) {
        let (name, run) = TARGETS[target];
        let seeds = corpus(name);
        let mut data = seeds[seed.index(seeds.len())].clone();
        for (at, byte, op) in edits {
            let i = if data.is_empty() { 0 } else { at.index(data.len()) };
            match op {
                0 if !data.is_empty() => data[i] = byte,
                1 => data.insert(i, byte),
                _ if !data.is_empty() => { data.truncate(i); }
                _ => data.push(byte),
            }
        }
        run(&data);
    }

    #[test]
    fn random_bytes_never_panic(target in 0usize..4, data in prop::collection::vec(any::<u8>(), 0..200)) {
        (TARGETS[target].1)(&data);
    }
}
