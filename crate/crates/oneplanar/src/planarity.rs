//! Planarity testing with embedding extraction.
//!
//! Each biconnected block is embedded by the Demoucron-Malgrange-Pertuiset
//! path-addition method; block embeddings are joined at cut vertices by
//! concatenating rotations.

use crate::connectivity::components;
use crate::graph::{BitIter, Graph};

/// Rotation system of a simple graph: `rotation[v]` lists the neighbours of
/// `v` in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    pub rotation: Vec<Vec<usize>>,
}

impl PlaneEmbedding {
    /// Face boundaries as vertex cycles. After arriving at `v` from `u`, a
    /// face continues to the neighbour following `u` in `rotation[v]`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        trace_faces(&self.rotation)
    }

    /// Euler characteristic check, per connected component.
    pub fn is_planar_embedding(&self, g: &Graph) -> bool {
        if !rotation_matches(g, &self.rotation) {
            return false;
        }
        let faces = self.faces();
        let comps = components(g, g.vertices().bits());
        let mut face_count = vec![0usize; comps.len()];
        let comp_of = |v: usize| comps.iter().position(|c| c.contains(v)).unwrap();
        for f in &faces {
            face_count[comp_of(f[0])] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            let v = c.len() as i64;
            let e = c.iter().map(|x| g.degree(x)).sum::<usize>() as i64 / 2;
            let f = if e == 0 { 1 } else { face_count[i] as i64 };
            v - e + f == 2
        })
    }
}

/// Whether each rotation is a permutation of the corresponding neighbourhood.
pub fn rotation_matches(g: &Graph, rotation: &[Vec<usize>]) -> bool {
    rotation.len() == g.n()
        && (0..g.n()).all(|v| {
            let set = rotation[v].iter().fold(0u64, |m, &u| m | 1 << u);
            rotation[v].len() == g.degree(v) && set == g.row(v)
        })
}

pub fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = rotation.len();
    let mut pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        for (i, &u) in rotation[v].iter().enumerate() {
            pos[v].push((u, i));
        }
        pos[v].sort_unstable();
    }
    let index = |v: usize, u: usize| -> usize {
        let k = pos[v].binary_search_by_key(&u, |p| p.0).expect("rotation is symmetric");
        pos[v][k].1
    };
    let mut used: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for s in 0..n {
        for i in 0..rotation[s].len() {
            if used[s][i] {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut k) = (s, i);
            while !used[u][k] {
                used[u][k] = true;
                face.push(u);
                let v = rotation[u][k];
                let j = (index(v, u) + 1) % rotation[v].len();
                u = v;
                k = j;
            }
            faces.push(face);
        }
    }
    faces
}

/// A planar rotation system for `g`, or `None` if `g` is not planar.
pub fn planarity_test(g: &Graph) -> Option<PlaneEmbedding> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let local = embed_block(g, block)?;
        for (v, rot) in local {
            rotation[v].extend(rot);
        }
    }
    Some(PlaneEmbedding { rotation })
}

pub fn is_planar(g: &Graph) -> bool {
    planarity_test(g).is_some()
}

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

/// Edge sets of the biconnected blocks (as adjacency masks per vertex,
/// packed into a list of edges).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(st: &mut St, v: usize, parent: usize) {
        st.time += 1;
        st.disc[v] = st.time;
        st.low[v] = st.time;
        for u in BitIter(st.g.row(v)) {
            if st.disc[u] == 0 {
                st.stack.push((v, u));
                dfs(st, u, v);
                st.low[v] = st.low[v].min(st.low[u]);
                if st.low[u] >= st.disc[v] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (v, u) {
                            break;
                        }
                    }
                    st.out.push(block);
                }
            } else if u != parent && st.disc[u] < st.disc[v] {
                st.stack.push((v, u));
                st.low[v] = st.low[v].min(st.disc[u]);
            }
        }
    }
    let n = g.n();
    let mut st = St { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if st.disc[v] == 0 {
            dfs(&mut st, v, usize::MAX);
        }
    }
    st.out
}

// ---------------------------------------------------------------------------
// Path addition on one block
// ---------------------------------------------------------------------------

fn embed_block(g: &Graph, edges: Vec<(usize, usize)>) -> Option<Vec<(usize, Vec<usize>)>> {
    let n = g.n();
    let mut badj = vec![0u64; n];
    let mut verts = 0u64;
    for &(u, v) in &edges {
        badj[u] |= 1 << v;
        badj[v] |= 1 << u;
        verts |= 1 << u | 1 << v;
    }
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(vec![(u, vec![v]), (v, vec![u])]);
    }
    let nb = verts.count_ones() as usize;
    if edges.len() > 3 * nb - 6 {
        return None;
    }
    let cycle = find_cycle(&badj, verts);
    let mut hadj = vec![0u64; n];
    let mut hverts = 0u64;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        hadj[a] |= 1 << b;
        hadj[b] |= 1 << a;
        hverts |= 1 << a;
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    loop {
        let frags = fragments(&badj, &hadj, verts, hverts);
        if frags.is_empty() {
            break;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| {
                    let mask = faces[k].iter().fold(0u64, |m, &v| m | 1 << v);
                    frag.attachments & !mask == 0
                })
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("non-empty fragment list");
        let path = fragment_path(&badj, &frags[fi]);
        for w in path.windows(2) {
            hadj[w[0]] |= 1 << w[1];
            hadj[w[1]] |= 1 << w[0];
        }
        for &v in &path {
            hverts |= 1 << v;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    // succ_v(u) = w for each consecutive u -> v -> w on a face.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[v].push((u, w));
        }
    }
    let mut out = Vec::new();
    for v in BitIter(verts) {
        let map = &succ[v];
        let start = map[0].0;
        let mut rot = vec![start];
        let mut cur = start;
        loop {
            let next = map.iter().find(|p| p.0 == cur).expect("complete rotation").1;
            if next == start {
                break;
            }
            rot.push(next);
            cur = next;
        }
        debug_assert_eq!(rot.len(), badj[v].count_ones() as usize);
        out.push((v, rot));
    }
    Some(out)
}

fn find_cycle(adj: &[u64], verts: u64) -> Vec<usize> {
    // DFS until a back edge closes a cycle.
    let start = verts.trailing_zeros() as usize;
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(start, BitIter(adj[start]))];
    depth[start] = 0;
    while let Some((v, it)) = stack.last_mut() {
        let v = *v;
        match it.next() {
            Some(u) => {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = v;
                    stack.push((u, BitIter(adj[u])));
                } else if u != parent[v] && depth[u] < depth[v] {
                    let mut cyc = vec![v];
                    let mut x = v;
                    while x != u {
                        x = parent[x];
                        cyc.push(x);
                    }
                    return cyc;
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    unreachable!("a block with two or more edges contains a cycle")
}

struct Fragment {
    /// Vertices of the fragment outside the embedded subgraph (0 for a chord).
    inner: u64,
    attachments: u64,
    chord: Option<(usize, usize)>,
}

fn fragments(badj: &[u64], hadj: &[u64], verts: u64, hverts: u64) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in BitIter(hverts) {
        for v in BitIter(badj[u] & hverts & !hadj[u] & crate::graph::above(u)) {
            out.push(Fragment { inner: 0, attachments: 1 << u | 1 << v, chord: Some((u, v)) });
        }
    }
    let mut rest = verts & !hverts;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= badj[v];
            }
            next &= verts & !hverts & !comp;
            comp |= next;
            frontier = next;
        }
        let mut att = 0;
        for v in BitIter(comp) {
            att |= badj[v] & hverts;
        }
        out.push(Fragment { inner: comp, attachments: att, chord: None });
        rest &= !comp;
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(badj: &[u64], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments.trailing_zeros() as usize;
    let others = frag.attachments & !(1 << a);
    let n = badj.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for c in BitIter(badj[a] & frag.inner) {
        prev[c] = a;
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        if let Some(b) = BitIter(badj[c] & others).next() {
            let mut path = vec![b, c];
            let mut x = c;
            while prev[x] != a {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for d in BitIter(badj[c] & frag.inner) {
            if prev[d] == usize::MAX {
                prev[d] = c;
                queue.push_back(d);
            }
        }
    }
    unreachable!("fragment of a block has two attachments joined through it")
}

/// Splits face `f` along `path` whose end vertices lie on `f`.
fn split_face(f: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = f.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = f.iter().position(|&x| x == a).unwrap();
    let j = f.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = vec![a];
    f1.extend_from_slice(inner);
    f1.push(b);
    let mut x = (j + 1) % k;
    while x != i {
        f1.push(f[x]);
        x = (x + 1) % k;
    }
    let mut f2 = vec![b];
    f2.extend(inner.iter().rev());
    f2.push(a);
    let mut x = (i + 1) % k;
    while x != j {
        f2.push(f[x]);
        x = (x + 1) % k;
    }
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn check(g: &Graph) -> bool {
        match planarity_test(g) {
            Some(e) => {
                assert!(e.is_planar_embedding(g), "bad embedding for {g:?}");
                true
            }
            None => false,
        }
    }

    #[test]
    fn named_graphs() {
        assert!(check(&cube()));
        assert_eq!(planarity_test(&cube()).unwrap().faces().len(), 6);
        assert!(!check(&complete(5).unwrap()));
        assert!(!check(&complete_multipartite(&[3, 3]).unwrap()));
        assert!(check(&complete(4).unwrap()));
        assert!(check(&complete_multipartite(&[2, 2, 2]).unwrap()));
        assert!(check(&path(5).unwrap()));
        assert!(check(&Graph::empty(3).unwrap()));
        let k5e = complete(5).unwrap().without_edge(0, 1);
        assert!(check(&k5e));
        let petersen = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert!(!check(&petersen));
    }

    #[test]
    fn blocks_joined_at_cut_vertices() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (6, 6 - 1)]).unwrap();
        assert!(check(&g));
        let bowtie_k4s = disjoint_union(&complete(4).unwrap(), &complete(4).unwrap()).unwrap().with_edge(3, 4).unwrap();
        assert!(check(&bowtie_k4s));
    }
}
