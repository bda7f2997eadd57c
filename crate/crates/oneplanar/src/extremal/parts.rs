//! Allowed parts for the tree-decomposition structure of extremal graphs,
//! with the facial-triangle and uncrossed-edge patterns their drawings allow.

use std::sync::OnceLock;

use crate::canon::find_isomorphism;
use crate::connectivity::triangles;
use crate::drawing::{fixtures, OneDrawing};
use crate::graph::{complete, Graph, VertexSet};
use crate::planarity::planarity_test;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartKind {
    K3,
    K4,
    /// Wheel with four spokes.
    W4,
    K5MinusEdge,
    K5,
    K6,
    K3C4,
    K2P6c,
    K2222,
}

pub const ALL_KINDS: [PartKind; 9] = [
    PartKind::K3,
    PartKind::K4,
    PartKind::W4,
    PartKind::K5MinusEdge,
    PartKind::K5,
    PartKind::K6,
    PartKind::K3C4,
    PartKind::K2P6c,
    PartKind::K2222,
];

impl PartKind {
    pub fn name(self) -> &'static str {
        match self {
            PartKind::K3 => "K3",
            PartKind::K4 => "K4",
            PartKind::W4 => "W4",
            PartKind::K5MinusEdge => "K5-e",
            PartKind::K5 => "K5",
            PartKind::K6 => "K6",
            PartKind::K3C4 => "K3+C4",
            PartKind::K2P6c => "K2+P6c",
            PartKind::K2222 => "K2222",
        }
    }

    pub fn index(self) -> usize {
        ALL_KINDS.iter().position(|&k| k == self).expect("listed")
    }

    pub fn info(self) -> &'static PartInfo {
        &catalog()[self.index()]
    }

    pub fn graph(self) -> &'static Graph {
        &self.info().graph
    }

    /// The kind whose graph is isomorphic to `g`, if any.
    pub fn identify(g: &Graph) -> Option<PartKind> {
        ALL_KINDS.into_iter().find(|k| {
            let h = k.graph();
            h.n() == g.n() && h.m() == g.m() && find_isomorphism(g, h).is_some()
        })
    }
}

/// A part graph with everything the assembler needs. Triangle and edge
/// masks index into `triangles` and `edges`.
#[derive(Debug)]
pub struct PartInfo {
    pub kind: PartKind,
    pub graph: Graph,
    pub triangles: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
    /// `(facial triangles, uncrossed edges)` of every drawing under every
    /// relabelling by an automorphism.
    pub profiles: Vec<(u64, u64)>,
    pub automorphisms: Vec<Vec<usize>>,
    /// One ordered triangle per automorphism orbit that some drawing makes
    /// facial.
    pub triangle_reps: Vec<Vec<usize>>,
    /// One ordered edge per automorphism orbit that some drawing leaves
    /// uncrossed.
    pub edge_reps: Vec<Vec<usize>>,
}

impl PartInfo {
    pub fn triangle_index(&self, t: VertexSet) -> Option<usize> {
        self.triangles.iter().position(|&x| x == t)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.iter().position(|&x| x == e)
    }

    /// Some drawing makes all triangles in `tri` facial and leaves all
    /// edges in `edges` uncrossed.
    pub fn feasible(&self, tri: u64, edges: u64) -> bool {
        self.profiles.iter().any(|&(f, u)| tri & !f == 0 && edges & !u == 0)
    }

    /// Masks of a requirement given as vertex sets in local labels.
    pub fn masks(&self, tris: &[VertexSet], edges: &[(usize, usize)]) -> Option<(u64, u64)> {
        let mut t = 0u64;
        for &x in tris {
            t |= 1 << self.triangle_index(x)?;
        }
        let mut e = 0u64;
        for &(u, v) in edges {
            e |= 1 << self.edge_index(u, v)?;
        }
        Some((t, e))
    }
}

fn wheel4() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)]).expect("small")
}

fn planar_drawing(g: &Graph) -> OneDrawing {
    let emb = planarity_test(g).expect("planar part");
    OneDrawing::planar(g.clone(), &emb).expect("embedding matches graph")
}

fn drawings(kind: PartKind) -> (Graph, Vec<OneDrawing>) {
    let fixture = |d: OneDrawing| (d.graph().clone(), vec![d]);
    match kind {
        PartKind::K3 | PartKind::K4 | PartKind::W4 => {
            let g = match kind {
                PartKind::K3 => complete(3).expect("small"),
                PartKind::K4 => complete(4).expect("small"),
                _ => wheel4(),
            };
            let d = planar_drawing(&g);
            (g, vec![d])
        }
        PartKind::K5MinusEdge => {
            let d = fixtures::k3_k2c();
            let g = d.graph().clone();
            let p = planar_drawing(&g);
            (g, vec![p, d])
        }
        PartKind::K5 => fixture(fixtures::k5()),
        PartKind::K6 => fixture(fixtures::k6()),
        PartKind::K3C4 => fixture(fixtures::k3_c4()),
        PartKind::K2P6c => fixture(fixtures::k2_p6c()),
        PartKind::K2222 => fixture(fixtures::k2222()),
    }
}

/// All automorphisms of a small graph, by backtracking.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, perm: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
        let v = perm.len();
        if v == g.n() {
            out.push(perm.clone());
            return;
        }
        for w in 0..g.n() {
            if used >> w & 1 == 1 || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(perm[u], w)) {
                perm.push(w);
                extend(g, perm, used | 1 << w, out);
                perm.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), 0, &mut out);
    out
}

fn orbit_reps(cliques: &[Vec<usize>], autos: &[Vec<usize>], keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for c in cliques {
        let k = c.len();
        let mut orders = Vec::new();
        permutations(c, &mut Vec::new(), &mut orders);
        for o in orders {
            if !keep(&o) {
                continue;
            }
            let min = autos.iter().map(|a| o.iter().map(|&v| a[v]).collect::<Vec<_>>()).min().expect("identity");
            debug_assert_eq!(min.len(), k);
            if !reps.contains(&min) {
                reps.push(min);
            }
        }
    }
    reps.sort();
    reps
}

pub(crate) fn permutations(items: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == items.len() {
        out.push(prefix.clone());
        return;
    }
    for &x in items {
        if !prefix.contains(&x) {
            prefix.push(x);
            permutations(items, prefix, out);
            prefix.pop();
        }
    }
}

fn build(kind: PartKind) -> PartInfo {
    let (graph, ds) = drawings(kind);
    let tris = triangles(&graph);
    let edges = graph.edges();
    let autos = automorphisms(&graph);
    let mut profiles = Vec::new();
    for d in &ds {
        assert!(d.is_valid(), "part drawing for {} validates", kind.name());
        let facial = d.facial_triangles();
        for a in &autos {
            let mut f = 0u64;
            for t in &facial {
                let i = tris.iter().position(|&x| x == t.map(a)).expect("triangle");
                f |= 1 << i;
            }
            let mut u = 0u64;
            for (i, &(x, y)) in edges.iter().enumerate() {
                // Edge (x, y) is the image of (a^-1 x, a^-1 y).
                let px = a.iter().position(|&z| z == x).expect("bijection");
                let py = a.iter().position(|&z| z == y).expect("bijection");
                if !d.is_crossed(crate::drawing::norm(px, py)) {
                    u |= 1 << i;
                }
            }
            profiles.push((f, u));
        }
    }
    profiles.sort_unstable();
    profiles.dedup();
    let info = PartInfo {
        kind,
        graph: graph.clone(),
        triangles: tris.clone(),
        edges: edges.clone(),
        profiles,
        automorphisms: autos.clone(),
        triangle_reps: Vec::new(),
        edge_reps: Vec::new(),
    };
    let tri_lists: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
    let edge_lists: Vec<Vec<usize>> = edges.iter().map(|&(u, v)| vec![u, v]).collect();
    let triangle_reps = orbit_reps(&tri_lists, &autos, |o| {
        let t = VertexSet::from_slice(o);
        info.masks(&[t], &[(o[0], o[1]), (o[1], o[2]), (o[0], o[2])]).is_some_and(|(t, e)| info.feasible(t, e))
    });
    let edge_reps = orbit_reps(&edge_lists, &autos, |o| info.masks(&[], &[(o[0], o[1])]).is_some_and(|(t, e)| info.feasible(t, e)));
    PartInfo { triangle_reps, edge_reps, ..info }
}

pub fn catalog() -> &'static [PartInfo] {
    static CATALOG: OnceLock<Vec<PartInfo>> = OnceLock::new();
    CATALOG.get_or_init(|| ALL_KINDS.iter().map(|&k| build(k)).collect())
}
