//! Builds graphs from allowed parts glued along adhesion cliques, one part
//! at a time, keeping one assembly per isomorphism class of the labelled
//! decomposition.

use std::collections::HashMap;

use rayon::prelude::*;

use super::parts::PartKind;
use super::td::TreeDecomposition;
use super::ClassId;
use crate::canon::{canonical_form_colored, CanonicalForm};
use crate::count::clique_profile;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone)]
pub(crate) struct Part {
    pub kind: PartKind,
    /// Local vertex `i` of the part graph is global vertex `map[i]`.
    pub map: Vec<usize>,
    pub set: VertexSet,
}

#[derive(Debug, Clone)]
pub(crate) struct Assembly {
    pub g: Graph,
    pub parts: Vec<Part>,
    /// Tree edges with their adhesion sets.
    pub tree: Vec<(usize, usize, VertexSet)>,
}

/// Tallies over every triangle gluing performed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StitchTally {
    pub stitches: u64,
    /// Clique profile of the result differs from the sum of the sides
    /// minus the shared triangle's cliques.
    pub arithmetic_failures: u64,
    /// The sides do not meet the size conditions for stitching in the class.
    pub size_failures: u64,
}

impl StitchTally {
    pub fn merge(self, o: StitchTally) -> StitchTally {
        StitchTally {
            stitches: self.stitches + o.stitches,
            arithmetic_failures: self.arithmetic_failures + o.arithmetic_failures,
            size_failures: self.size_failures + o.size_failures,
        }
    }
}

impl Assembly {
    fn root(kind: PartKind) -> Assembly {
        let g = kind.graph().clone();
        let n = g.n();
        Assembly { g, parts: vec![Part { kind, map: (0..n).collect(), set: (0..n).collect() }], tree: Vec::new() }
    }

    pub fn decomposition(&self) -> TreeDecomposition {
        let edges: Vec<(usize, usize)> = self.tree.iter().map(|&(s, t, _)| (s, t)).collect();
        TreeDecomposition::new(self.parts.iter().map(|p| p.set).collect(), &edges).expect("few parts")
    }

    fn count(&self, kind: PartKind) -> usize {
        self.parts.iter().filter(|p| p.kind == kind).count()
    }

    /// Clause (e) for part `p`.
    fn drawable(&self, p: usize) -> bool {
        let part = &self.parts[p];
        let info = part.kind.info();
        let local = |v: usize| part.map.iter().position(|&x| x == v).expect("in part");
        let mut tri = 0u64;
        let mut edges = 0u64;
        for &(_, _, a) in &self.tree {
            if !a.is_subset(part.set) {
                continue;
            }
            let l: Vec<usize> = a.iter().map(local).collect();
            if l.len() == 3 {
                tri |= 1 << info.triangle_index(VertexSet::from_slice(&l)).expect("triangle of part");
            }
            for i in 0..l.len() {
                for j in i + 1..l.len() {
                    edges |= 1 << info.edge_index(l[i], l[j]).expect("edge of part");
                }
            }
        }
        info.feasible(tri, edges)
    }

    /// Isomorphism-invariant key of the labelled decomposition.
    fn key(&self) -> CanonicalForm {
        let n = self.g.n();
        let k = self.parts.len();
        let total = n + k + self.tree.len();
        let mut h = Graph::empty(total).expect("key graph fits");
        let mut colors = vec![0u32; total];
        for (u, v) in self.g.edges() {
            h.add_edge(u, v);
        }
        for (i, p) in self.parts.iter().enumerate() {
            colors[n + i] = 1 + p.kind.index() as u32;
            for v in p.set.iter() {
                h.add_edge(n + i, v);
            }
        }
        for (j, &(s, t, a)) in self.tree.iter().enumerate() {
            let x = n + k + j;
            colors[x] = 20 + a.len() as u32;
            h.add_edge(x, n + s);
            h.add_edge(x, n + t);
            for v in a.iter() {
                h.add_edge(x, v);
            }
        }
        canonical_form_colored(&h, &colors)
    }

    fn attach(&self, p: usize, adhesion: &[usize], kind: PartKind, rep: &[usize]) -> Assembly {
        let info = kind.info();
        let n = self.g.n();
        let new = info.graph.n() - adhesion.len();
        let mut map = vec![usize::MAX; info.graph.n()];
        for (i, &l) in rep.iter().enumerate() {
            map[l] = adhesion[i];
        }
        let mut next = n;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let mut rows = self.g.rows().to_vec();
        rows.resize(n + new, 0);
        for (u, v) in info.graph.edges() {
            let (a, b) = (map[u], map[v]);
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        let g = Graph::from_rows(rows).expect("symmetric rows");
        let set: VertexSet = map.iter().copied().collect();
        let mut parts = self.parts.clone();
        parts.push(Part { kind, map, set });
        let mut tree = self.tree.clone();
        tree.push((p, parts.len() - 1, VertexSet::from_slice(adhesion)));
        Assembly { g, parts, tree }
    }
}

/// What the generator may build for one class and target size.
struct Rules {
    class: ClassId,
    n: usize,
}

impl Rules {
    fn kinds(&self) -> &'static [PartKind] {
        self.class.allowed_parts()
    }

    fn adhesion_sizes(&self) -> &'static [usize] {
        match self.class {
            ClassId::E5 | ClassId::E6 => &[2, 3],
            _ => &[3],
        }
    }

    /// Can an assembly still grow into an accepted one?
    fn viable(&self, a: &Assembly) -> bool {
        if a.g.n() > self.n {
            return false;
        }
        let k6 = a.count(PartKind::K6);
        match self.class {
            ClassId::E3 => {
                let c4 = a.count(PartKind::K3C4);
                let p6 = a.count(PartKind::K2P6c);
                (p6 == 0 && c4 <= 2) || (p6 == 1 && c4 == 0)
            }
            ClassId::E4 | ClassId::E => a.parts.len() - k6 <= 1,
            ClassId::E5 | ClassId::E6 => {
                let want = self.n.saturating_sub(3) / 3;
                k6 <= want && a.g.n() + 3 * (want - k6) <= self.n
            }
        }
    }

    fn accepted(&self, a: &Assembly) -> bool {
        a.g.n() == self.n
            && self.viable(a)
            && match self.class {
                ClassId::E5 | ClassId::E6 => a.count(PartKind::K6) == self.n.saturating_sub(3) / 3,
                _ => true,
            }
    }

    /// Size conditions for stitching two graphs of the given orders.
    fn stitch_sizes_ok(&self, n1: usize, n2: usize) -> bool {
        let (k1, s1, k2, s2) = (n1 / 3, n1 % 3, n2 / 3, n2 % 3);
        match self.class {
            ClassId::E3 => k1 >= 2 && k2 >= 2 && s1 + s2 <= 2,
            ClassId::E4 | ClassId::E | ClassId::E5 => k1 >= 1 && k2 >= 1 && (s1 == 0 || s2 == 0),
            ClassId::E6 => k1 >= 1 && k2 >= 1 && s1 + s2 <= 2,
        }
    }

    fn children(&self, a: &Assembly) -> (Vec<Assembly>, StitchTally) {
        let mut out = Vec::new();
        let mut tally = StitchTally::default();
        let n = a.g.n();
        for (p, part) in a.parts.iter().enumerate() {
            let info = part.kind.info();
            for &size in self.adhesion_sizes() {
                let cliques: Vec<Vec<usize>> = if size == 3 {
                    if part.kind == PartKind::K3 {
                        continue;
                    }
                    info.triangles.iter().map(|t| t.iter().map(|l| part.map[l]).collect()).collect()
                } else {
                    info.edges.iter().map(|&(u, v)| vec![part.map[u], part.map[v]]).collect()
                };
                for mut adhesion in cliques {
                    adhesion.sort_unstable();
                    let aset = VertexSet::from_slice(&adhesion);
                    if size == 3 && a.tree.iter().any(|&(_, _, b)| b == aset) {
                        continue;
                    }
                    for &kind in self.kinds() {
                        let kinfo = kind.info();
                        if kinfo.graph.n() <= size || n + kinfo.graph.n() - size > self.n {
                            continue;
                        }
                        let reps = if size == 3 { &kinfo.triangle_reps } else { &kinfo.edge_reps };
                        for rep in reps {
                            let child = a.attach(p, &adhesion, kind, rep);
                            if !self.viable(&child) || !child.drawable(p) || !child.drawable(child.parts.len() - 1) {
                                continue;
                            }
                            if size == 3 {
                                tally.stitches += 1;
                                if !stitch_arithmetic_holds(&a.g, &kinfo.graph, &child.g) {
                                    tally.arithmetic_failures += 1;
                                }
                                if !self.stitch_sizes_ok(n, kinfo.graph.n()) {
                                    tally.size_failures += 1;
                                }
                            }
                            out.push(child);
                        }
                    }
                }
            }
        }
        (out, tally)
    }
}

/// Cliques of a stitch are those of the two sides with the shared
/// triangle's eight cliques counted once.
pub fn stitch_arithmetic_holds(g1: &Graph, g2: &Graph, g: &Graph) -> bool {
    let (a, b, c) = (clique_profile(g1), clique_profile(g2), clique_profile(g));
    let shared = [1u64, 3, 3, 1];
    let len = a.len().max(b.len()).max(c.len());
    let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
    let total = |v: &[u64]| v.iter().sum::<u64>();
    (0..len).all(|t| at(&a, t) + at(&b, t) == at(&c, t) + shared.get(t).copied().unwrap_or(0))
        && total(&a) + total(&b) == total(&c) + 8
}

/// All accepted assemblies, one per isomorphism class of the labelled
/// decomposition, in a deterministic order.
pub(crate) fn assemble(class: ClassId, n: usize) -> (Vec<Assembly>, StitchTally) {
    let rules = Rules { class, n };
    let mut layer: Vec<Assembly> = rules.kinds().iter().map(|&k| Assembly::root(k)).filter(|a| rules.viable(a) && a.drawable(0)).collect();
    let mut accepted = Vec::new();
    let mut tally = StitchTally::default();
    while !layer.is_empty() {
        accepted.extend(layer.iter().filter(|a| rules.accepted(a)).cloned());
        let grown: Vec<(Vec<Assembly>, StitchTally)> = layer.par_iter().filter(|a| a.g.n() < n).map(|a| rules.children(a)).collect();
        let mut keyed: Vec<(CanonicalForm, Assembly)> = Vec::new();
        for (kids, t) in grown {
            tally = tally.merge(t);
            keyed.extend(kids.into_iter().map(|c| (CanonicalForm(Vec::new()), c)));
        }
        keyed.par_iter_mut().for_each(|(k, c)| *k = c.key());
        let mut seen: HashMap<CanonicalForm, ()> = HashMap::new();
        layer = keyed.into_iter().filter_map(|(k, c)| seen.insert(k, ()).is_none().then_some(c)).collect();
    }
    (accepted, tally)
}
