//! Extremal 1-planar graphs: the classes maximising cliques of one size or
//! in total, their generation up to isomorphism, and membership tests.
//!
//! Members are built from small parts glued along triangles (and, for the
//! `K_6` class, along edges) following a tree. Each part must have a
//! drawing in which every gluing triangle is a face and every gluing edge
//! is uncrossed. For the `K_5` and `K_6` classes the generator returns the
//! edge-maximal members; every member is a spanning subgraph of one of them.

mod assemble;
pub mod families;
pub mod parts;
pub mod stitch;
pub mod td;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{canonical_form, find_isomorphism, CanonicalForm};
use crate::count::{count_all_cliques, count_cliques_size};
use crate::drawing::fixtures;
use crate::formulas::{f3, f_total, ft};
use crate::graph::{complete, path, strong_product, Graph, GraphError, VertexSet};
use crate::oneplanarity::{decide_1planar, DecideError, Verdict};

pub use assemble::{stitch_arithmetic_holds, StitchTally};
pub use families::{gen_apollonian, gen_gstar};
pub use parts::PartKind;
pub use stitch::{stitch, stitch_all, StitchError, StitchWitness};
pub use td::{check_td, verify_td, TdViolation, TreeDecomposition};

/// Largest order the generators accept.
pub const GEN_MAX: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    E3,
    E4,
    E5,
    E6,
    /// Maximum total number of cliques.
    E,
}

pub const ALL_CLASSES: [ClassId; 5] = [ClassId::E3, ClassId::E4, ClassId::E5, ClassId::E6, ClassId::E];

impl ClassId {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassId::E3 => "e3",
            ClassId::E4 => "e4",
            ClassId::E5 => "e5",
            ClassId::E6 => "e6",
            ClassId::E => "e",
        }
    }

    pub fn allowed_parts(self) -> &'static [PartKind] {
        use PartKind::*;
        match self {
            ClassId::E3 => &[K6, K3C4, K2P6c],
            ClassId::E4 | ClassId::E => &[K4, K5, K6, K3C4],
            ClassId::E5 | ClassId::E6 => &[K3, K4, W4, K5MinusEdge, K5, K6],
        }
    }

    /// The clique count the class maximises.
    pub fn count(self, g: &Graph) -> u128 {
        match self {
            ClassId::E3 => count_cliques_size(g, 3) as u128,
            ClassId::E4 => count_cliques_size(g, 4) as u128,
            ClassId::E5 => count_cliques_size(g, 5) as u128,
            ClassId::E6 => count_cliques_size(g, 6) as u128,
            ClassId::E => count_all_cliques(g),
        }
    }

    /// The maximum of [`ClassId::count`] over 1-planar graphs of order `n`.
    pub fn extremal(self, n: usize) -> u128 {
        match self {
            ClassId::E3 => f3(n) as u128,
            ClassId::E4 => ft(n, 4).expect("t in range") as u128,
            ClassId::E5 => ft(n, 5).expect("t in range") as u128,
            ClassId::E6 => ft(n, 6).expect("t in range") as u128,
            ClassId::E => f_total(n) as u128,
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassId {
    type Err = String;

    fn from_str(s: &str) -> Result<ClassId, String> {
        ALL_CLASSES
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown class `{s}` (expected e3, e4, e5, e6 or e)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremalError {
    #[error("generation is limited to {GEN_MAX} vertices, asked for {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// `K_3 ⊠ P_m`.
pub fn gen_strip(m: usize) -> Result<Graph, GraphError> {
    if m == 0 {
        return Graph::empty(0);
    }
    if 3 * m > crate::graph::MAX_VERTICES {
        return Err(GraphError::TooManyVertices(3 * m));
    }
    strong_product(&complete(3)?, &path(m)?)
}

/// A generated member with a decomposition certifying it.
#[derive(Debug, Clone)]
pub struct Member {
    pub graph: Graph,
    pub td: TreeDecomposition,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub members: Vec<Member>,
    pub tally: StitchTally,
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).expect("small");
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// Members given directly rather than by gluing, for orders where the
/// tree structure does not apply.
pub(crate) fn base_members(c: ClassId, n: usize) -> Option<Vec<Graph>> {
    let k = |n| vec![complete(n).expect("small")];
    match (c, n) {
        (ClassId::E3, 0..=2) | (ClassId::E4, 0..=3) => Some(all_graphs(n)),
        (ClassId::E3, 3..=6) | (ClassId::E4, 4..=6) | (ClassId::E, 0..=6) => Some(k(n)),
        (ClassId::E3, 7) => Some(vec![fixtures::k3_c4().graph().clone()]),
        (ClassId::E3, 8) => Some(vec![fixtures::k2222().graph().clone()]),
        (ClassId::E5 | ClassId::E6, 0..=5) => Some(k(n)),
        _ => None,
    }
}

/// Contains-a-spanning-copy test: is there a bijection mapping every edge
/// of `g` onto an edge of `h`?
pub fn is_spanning_subgraph(g: &Graph, h: &Graph) -> bool {
    let n = g.n();
    if n != h.n() || g.m() > h.m() {
        return false;
    }
    let (mut dg, mut dh) = (g.degree_sequence(), h.degree_sequence());
    dg.sort_unstable_by(|a, b| b.cmp(a));
    dh.sort_unstable_by(|a, b| b.cmp(a));
    if dg.iter().zip(&dh).any(|(a, b)| a > b) {
        return false;
    }
    // Order g's vertices so each one has many placed neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((g.row(v) & placed).count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        order.push(v);
        placed |= 1 << v;
    }
    fn go(g: &Graph, h: &Graph, order: &[usize], i: usize, f: &mut [usize], used: u64) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut cand = h.vertices().bits() & !used;
        for &u in &order[..i] {
            if g.has_edge(u, v) {
                cand &= h.row(f[u]);
            }
        }
        let mut bits = cand;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if h.degree(w) < g.degree(v) {
                continue;
            }
            f[v] = w;
            if go(g, h, order, i + 1, f, used | 1 << w) {
                return true;
            }
        }
        false
    }
    let mut f = vec![usize::MAX; n];
    go(g, h, &order, 0, &mut f, 0)
}

fn maximal_only(mut ms: Vec<Member>) -> Vec<Member> {
    ms.sort_by_key(|m| std::cmp::Reverse(m.graph.m()));
    let mut kept: Vec<Member> = Vec::new();
    for m in ms {
        if !kept.iter().any(|k| k.graph.m() > m.graph.m() && is_spanning_subgraph(&m.graph, &k.graph)) {
            kept.push(m);
        }
    }
    kept
}

fn dedup_members(assemblies: Vec<assemble::Assembly>) -> Vec<Member> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in assemblies {
        if seen.insert(canonical_form(&a.g)) {
            out.push(Member { td: a.decomposition(), graph: a.g });
        }
    }
    out
}

fn sort_members(ms: &mut [Member]) {
    ms.sort_by_cached_key(|m| (std::cmp::Reverse(m.graph.m()), canonical_form(&m.graph)));
}

type Cache = Mutex<HashMap<(ClassId, usize), Arc<Generated>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Everything glued from the parts allowed for `K_6` with the right number
/// of `K_6` parts, before keeping only maximal graphs.
fn k6_universe(n: usize) -> Arc<Generated> {
    static UNIVERSE: OnceLock<Mutex<HashMap<usize, Arc<Generated>>>> = OnceLock::new();
    let cell = UNIVERSE.get_or_init(Default::default);
    if let Some(g) = cell.lock().expect("lock").get(&n) {
        return g.clone();
    }
    let (asm, tally) = assemble::assemble(ClassId::E6, n);
    let generated = Arc::new(Generated { members: dedup_members(asm), tally });
    cell.lock().expect("lock").insert(n, generated.clone());
    generated
}

fn generate(c: ClassId, n: usize) -> Generated {
    if let Some(base) = base_members(c, n) {
        let mut members: Vec<Member> = base.into_iter().map(|g| Member { td: TreeDecomposition::single(g.vertices()), graph: g }).collect();
        sort_members(&mut members);
        return Generated { members, tally: StitchTally::default() };
    }
    let (mut members, tally) = match c {
        ClassId::E3 | ClassId::E4 | ClassId::E => {
            let (asm, tally) = assemble::assemble(c, n);
            (dedup_members(asm), tally)
        }
        ClassId::E6 => {
            let u = k6_universe(n);
            (maximal_only(u.members.clone()), u.tally)
        }
        ClassId::E5 => {
            let u = k6_universe(n);
            let want = ft(n, 5).expect("t in range");
            let hits = u.members.iter().filter(|m| count_cliques_size(&m.graph, 5) == want).cloned().collect();
            (maximal_only(hits), u.tally)
        }
    };
    sort_members(&mut members);
    Generated { members, tally }
}

/// Members of class `c` on `n` vertices with certifying decompositions.
/// Cached per `(c, n)`.
pub fn gen_class_members(c: ClassId, n: usize) -> Result<Arc<Generated>, ExtremalError> {
    if n > GEN_MAX {
        return Err(ExtremalError::TooLarge(n));
    }
    if let Some(g) = cache().lock().expect("lock").get(&(c, n)) {
        return Ok(g.clone());
    }
    let g = Arc::new(generate(c, n));
    cache().lock().expect("lock").insert((c, n), g.clone());
    Ok(g)
}

/// The `n`-vertex members of class `c` up to isomorphism, most edges
/// first. For `E5` and `E6` only the edge-maximal members.
pub fn gen_class(c: ClassId, n: usize) -> Result<Vec<Graph>, ExtremalError> {
    Ok(gen_class_members(c, n)?.members.iter().map(|m| m.graph.clone()).collect())
}

pub fn canonical_set(gs: &[Graph]) -> HashSet<CanonicalForm> {
    gs.iter().map(canonical_form).collect()
}

/// Is `g` 1-planar with the extremal count for `c`? Generated members
/// settle the question up to [`GEN_MAX`] vertices; anything not found
/// there is passed to the 1-planarity search when that is small enough.
pub fn membership(c: ClassId, g: &Graph) -> Result<bool, ExtremalError> {
    let n = g.n();
    if c.count(g) != c.extremal(n) {
        return Ok(false);
    }
    if n <= GEN_MAX {
        let gen = gen_class_members(c, n)?;
        let found = match c {
            ClassId::E5 | ClassId::E6 => gen.members.iter().any(|m| is_spanning_subgraph(g, &m.graph)),
            _ => {
                let cf = canonical_form(g);
                gen.members.iter().any(|m| canonical_form(&m.graph) == cf)
            }
        };
        if found || n > 12 {
            return Ok(found);
        }
    }
    Ok(decide_1planar(g, None)?.verdict == Verdict::OnePlanar)
}

/// A certifying decomposition for a generated member (in `g`'s labels).
pub fn tree_decomposition_witness(c: ClassId, g: &Graph) -> Option<TreeDecomposition> {
    let gen = gen_class_members(c, g.n()).ok()?;
    gen.members.iter().find_map(|m| find_isomorphism(&m.graph, g).map(|f| m.td.relabel(&f)))
}

/// Vertex sets of the parts of a decomposition, for display.
pub fn part_kinds(g: &Graph, td: &TreeDecomposition) -> Vec<Option<PartKind>> {
    td.parts.iter().map(|&p: &VertexSet| PartKind::identify(&g.induced(p))).collect()
}
