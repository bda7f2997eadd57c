//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every criterion is evaluated in full and reported. The test itself
//! fails only if the set of failing criteria differs from `KNOWN_FAILING`,
//! so a regression and an unexpected fix both show up.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::time::{Duration, Instant};

use oneplanar::canon::{canonical_form, is_isomorphic};
use oneplanar::census::{self, read_planar_code, CensusFilter};
use oneplanar::connectivity::{count_nontrivial_separators, is_k_connected};
use oneplanar::count::{count_all_cliques, count_cliques_size};
use oneplanar::drawing::fixtures;
use oneplanar::extremal::{self, ALL_CLASSES};
use oneplanar::graph::{complement, complete, cube, cycle, join, path, Graph};
use oneplanar::oneplanarity::{decide_1planar, enumerate_7vertex_1planar, k4_plus_3_independent, Verdict};
use oneplanar::planarity::is_planar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot be met; see the per-criterion notes.
const KNOWN_FAILING: &[u32] = &[6];

const FORMULA_N: std::ops::RangeInclusive<usize> = 3..=21;
const FORMULA_LIMIT: Duration = Duration::from_secs(120);
const SEVEN_VERTEX_LIMIT: Duration = Duration::from_secs(10);
const VERDICT_LIMIT: Duration = Duration::from_secs(300);
const GSTAR_LIMIT: Duration = Duration::from_secs(60);
const GSTAR_N: std::ops::RangeInclusive<usize> = 12..=20;
const QUAD_N: std::ops::RangeInclusive<usize> = 8..=20;
const RANDOM_GRAPHS: u64 = 200;
const RANDOM_MAX_N: usize = 10;
const RELABEL_GRAPHS: u64 = 30;
const RELABEL_MAX_N: usize = 8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn planar_code(name: &str) -> census::PlanarCodeReader<File> {
    let path = format!("{}/fixtures/planar_code/{name}", env!("CARGO_MANIFEST_DIR"));
    read_planar_code(File::open(path).expect("fixture present"))
}

// Independent oracles.

/// Cliques of size `t` by checking every vertex subset.
fn naive_cliques(g: &Graph, t: usize) -> u64 {
    let n = g.n();
    (0u64..1 << n)
        .filter(|s| s.count_ones() as usize == t)
        .filter(|&s| (0..n).filter(|&v| s >> v & 1 == 1).all(|v| (g.row(v) | 1 << v) & s == s))
        .count() as u64
}

/// Vertex triples whose deletion leaves a disconnected graph, by union-find.
fn naive_separators(g: &Graph, k: usize) -> usize {
    let n = g.n();
    let mut count = 0;
    for s in 0u64..1 << n {
        if s.count_ones() as usize != k || n <= k {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (u, v) in g.edges() {
            if s >> u & 1 == 0 && s >> v & 1 == 0 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let roots: HashSet<usize> = (0..n).filter(|&v| s >> v & 1 == 0).map(|v| find(&mut parent, v)).collect();
        count += usize::from(roots.len() > 1);
    }
    count
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

// Criteria.

fn formula_tables() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for c in ALL_CLASSES {
        for n in FORMULA_N {
            pairs += 1;
            let gen = extremal::gen_class_members(c, n).unwrap();
            let want = c.extremal(n);
            let max = gen.members.iter().map(|m| c.count(&m.graph)).max();
            if max != Some(want) || gen.members.iter().any(|m| c.count(&m.graph) != want) {
                bad.push(format!("{c}({n})"));
            }
        }
    }
    let took = start.elapsed();
    outcome(
        bad.is_empty() && took < FORMULA_LIMIT,
        format!("{pairs} class/order pairs, mismatches {bad:?}, {:.1}s (limit {}s)", took.as_secs_f64(), FORMULA_LIMIT.as_secs()),
    )
}

fn seven_vertex_optimum() -> Outcome {
    let start = Instant::now();
    let all = enumerate_7vertex_1planar();
    let max = |f: &dyn Fn(&Graph) -> u128| all.iter().map(f).max().unwrap_or(0);
    let got = [
        max(&|g| g.m() as u128),
        max(&|g| count_cliques_size(g, 3) as u128),
        max(&|g| count_cliques_size(g, 4) as u128),
        max(&|g| count_cliques_size(g, 5) as u128),
        max(&|g| count_all_cliques(g)),
    ];
    let want = [19, 25, 16, 6, 72];
    let took = start.elapsed();
    outcome(
        got == want && took < SEVEN_VERTEX_LIMIT,
        format!(
            "{} graphs, max (edges, K3, K4, K5, all) = {got:?}, expected {want:?}, {:.2}s (limit {}s)",
            all.len(),
            took.as_secs_f64(),
            SEVEN_VERTEX_LIMIT.as_secs()
        ),
    )
}

fn verdicts() -> Outcome {
    let start = Instant::now();
    let k3 = complete(3).unwrap();
    let yes = [
        ("K6", complete(6).unwrap()),
        ("K3+C4", join(&k3, &cycle(4).unwrap()).unwrap()),
        ("K3+co(K1,3)", join(&k3, &complement(&join(&Graph::empty(1).unwrap(), &Graph::empty(3).unwrap()).unwrap())).unwrap()),
        ("K2,2,2,2", complement(&Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap())),
        ("K2+co(P6)", join(&complete(2).unwrap(), &complement(&path(6).unwrap())).unwrap()),
    ];
    let no = [("K7", complete(7).unwrap()), ("K4+3K1", k4_plus_3_independent()), ("C5+K3", join(&cycle(5).unwrap(), &k3).unwrap())];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, g) in &yes {
        let r = decide_1planar(g, None).unwrap();
        let expected_c = g.m() + 6 - 3 * g.n();
        let good = r.verdict == Verdict::OnePlanar
            && r.witness.as_ref().is_some_and(|w| {
                w.validate().is_ok() && w.is_simple() && w.graph() == g && w.crossing_count() == expected_c && w.is_rich()
            });
        ok &= good;
        notes.push(format!("{name}:{}", if good { format!("c={expected_c}") } else { "bad".into() }));
    }
    for (name, g) in &no {
        let good = decide_1planar(g, None).unwrap().verdict == Verdict::NotOnePlanar;
        ok &= good;
        notes.push(format!("{name}:{}", if good { "no" } else { "bad" }));
    }
    let took = start.elapsed();
    outcome(ok && took < VERDICT_LIMIT, format!("{}, {:.1}s (limit {}s)", notes.join(" "), took.as_secs_f64(), VERDICT_LIMIT.as_secs()))
}

fn face_profile(faces: &[Vec<usize>]) -> BTreeMap<usize, usize> {
    let mut p = BTreeMap::new();
    for f in faces {
        *p.entry(f.len()).or_insert(0) += 1;
    }
    p
}

fn drawing_fixtures() -> Outcome {
    let all = fixtures::one_drawings();
    let invalid: Vec<&str> = all.iter().filter(|(_, d)| d.validate().is_err()).map(|(n, _)| *n).collect();
    let k6_tris = fixtures::k6().facial_triangles();
    let disjoint = k6_tris.iter().any(|a| k6_tris.iter().any(|b| a.intersection(*b).is_empty()));
    let k2222 = fixtures::k2222();
    let (sk, emb) = fixtures::k2_p6c().true_planar_skeleton();
    let profile = face_profile(&emb.faces());
    let (cube_sk, _) = k2222.true_planar_skeleton();
    let checks = [
        ("all valid", invalid.is_empty()),
        ("K6 facial triangles = 2", k6_tris.len() == 2),
        ("K6 disjoint pair", disjoint),
        ("K2222 facial triangles = 0", k2222.facial_triangles().is_empty()),
        ("K2+co(P6) skeleton m = 13", sk.m() == 13),
        ("K2+co(P6) faces {3:2,4:5}", profile == BTreeMap::from([(3, 2), (4, 5)])),
        ("K2222 skeleton is the cube", is_isomorphic(&cube_sk, &cube())),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(failed.is_empty(), format!("{} fixtures, {} checks, failed {failed:?}", all.len(), checks.len()))
}

fn census_reproduction() -> Outcome {
    let cubes = census::census(planar_code("quad_c3_n8.pc"), &CensusFilter::quadrangulations(8)).unwrap();
    let eight = census::census(planar_code("planar_c3_n8.pc"), &CensusFilter::eight_vertex_skeletons()).unwrap();
    let (skeleton, _) = fixtures::k2_p6c().true_planar_skeleton();
    let eight_ok = eight.len() == 1 && eight[0].canonical == canonical_form(&skeleton);
    let eleven = census::census(planar_code("planar_c3_n11_e19.pc"), &CensusFilter::eleven_vertex_skeletons()).unwrap();
    let mut maxima = Vec::new();
    let mut below = true;
    for n in QUAD_N {
        let b = census::quadrangulation_separator_bound(planar_code(&format!("quad_c3_n{n}.pc")), n).unwrap();
        // At 8 vertices only the cube exists; it is settled by the cube count.
        if n > 8 {
            below &= b.below_required();
        }
        maxima.push(format!("{n}:{}/{}", b.max_observed.map_or("-".into(), |m| m.to_string()), b.required));
    }
    outcome(
        cubes.len() == 1 && eight_ok && eleven.len() == 3 && below,
        format!(
            "cube {} (want 1), 8-vertex filter {} matching skeleton {eight_ok} (want 1), 11-vertex filter {} (want 3), max/required {}",
            cubes.len(),
            eight.len(),
            eleven.len(),
            maxima.join(" ")
        ),
    )
}

/// The stated count is 4n - 14. The construction as described gives fewer
/// separators (2n - 14 from n = 14 on), which also matches the exhaustive
/// census maxima, so this check reports FAIL.
fn gstar_family() -> Outcome {
    let start = Instant::now();
    let mut structural = true;
    let mut counts = Vec::new();
    let mut exact = true;
    for n in GSTAR_N {
        let gs = extremal::gen_gstar(n).unwrap();
        let mut seen = Vec::new();
        for g in &gs {
            let quad = g.m() == 2 * n - 4 && g.is_bipartite() && is_planar(g) && is_k_connected(g, 3);
            structural &= quad;
            let s = naive_separators(g, 3);
            exact &= s == 4 * n - 14;
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        counts.push(format!("{n}:{}x{seen:?}/{}", gs.len(), 4 * n - 14));
    }
    let took = start.elapsed();
    outcome(
        structural && exact && took < GSTAR_LIMIT,
        format!(
            "3-connected planar quadrangulations {structural}; members x counts/expected {}; {:.1}s (limit {}s)",
            counts.join(" "),
            took.as_secs_f64(),
            GSTAR_LIMIT.as_secs()
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut clique_bad = 0;
    let mut sep_bad = 0;
    for _ in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(1..=RANDOM_MAX_N);
        let g = random_graph(&mut rng, n);
        for t in 0..=n {
            clique_bad += usize::from(count_cliques_size(&g, t) != naive_cliques(&g, t));
        }
        for k in 1..=3 {
            sep_bad += usize::from(count_nontrivial_separators(&g, k) != naive_separators(&g, k));
        }
        sep_bad += usize::from(census::separator3_count(&g) != naive_separators(&g, 3));
    }
    let mut unstable = 0;
    for _ in 0..RELABEL_GRAPHS {
        let n = rng.gen_range(5..=RELABEL_MAX_N);
        let g = random_graph(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let (a, b) = (decide_1planar(&g, None).unwrap(), decide_1planar(&g.permute(&perm), None).unwrap());
        unstable += usize::from(a.verdict != b.verdict || a.crossings_used != b.crossings_used);
    }
    outcome(
        clique_bad == 0 && sep_bad == 0 && unstable == 0,
        format!(
            "{RANDOM_GRAPHS} graphs n<={RANDOM_MAX_N}: clique mismatches {clique_bad}, separator mismatches {sep_bad}; {RELABEL_GRAPHS} graphs n<={RELABEL_MAX_N}: relabel-unstable verdicts {unstable}"
        ),
    )
}

fn stitch_arithmetic() -> Outcome {
    let mut tally = extremal::StitchTally::default();
    for c in ALL_CLASSES {
        for n in FORMULA_N {
            tally = tally.merge(extremal::gen_class_members(c, n).unwrap().tally);
        }
    }
    // Direct recount on stitches of the fixture drawings.
    let mut direct = 0;
    let mut direct_bad = 0;
    let parts = [fixtures::k6(), fixtures::k3_c4(), fixtures::k2_p6c()];
    for a in &parts {
        for b in &parts {
            for w in extremal::stitch_all(a, b).unwrap() {
                direct += 1;
                let (g1, g2) = (w.g.induced(w.g1), w.g.induced(w.g2));
                let ok = count_cliques_size(&w.g, 3) + 1 == count_cliques_size(&g1, 3) + count_cliques_size(&g2, 3)
                    && (4..=6).all(|t| count_cliques_size(&w.g, t) == count_cliques_size(&g1, t) + count_cliques_size(&g2, t))
                    && count_all_cliques(&w.g) + 8 == count_all_cliques(&g1) + count_all_cliques(&g2);
                direct_bad += usize::from(!ok);
            }
        }
    }
    outcome(
        tally.stitches > 0 && tally.arithmetic_failures == 0 && tally.size_failures == 0 && direct_bad == 0,
        format!(
            "{} generator stitches: arithmetic failures {}, size failures {}; {direct} fixture stitches: failures {direct_bad}",
            tally.stitches, tally.arithmetic_failures, tally.size_failures
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "formula tables", formula_tables),
        (2, "7-vertex optimum", seven_vertex_optimum),
        (3, "1-planarity verdicts", verdicts),
        (4, "drawing fixtures", drawing_fixtures),
        (5, "census reproduction", census_reproduction),
        (6, "capped-strip family", gstar_family),
        (7, "oracle equivalence", oracle_equivalence),
        (8, "stitch arithmetic", stitch_arithmetic),
    ];
    let mut failing = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        println!("{} criterion {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failing.push(id);
        }
    }
    assert_eq!(failing, KNOWN_FAILING, "failing criteria changed");
}
