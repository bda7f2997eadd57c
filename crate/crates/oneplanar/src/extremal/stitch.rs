//! Gluing two 1-drawings along a facial triangle.

use std::collections::HashSet;

use thiserror::Error;

use crate::canon::canonical_form;
use crate::drawing::{norm, Edge, Node, OneDrawing};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StitchError {
    #[error("triangle {0:?} is not facial in drawing {1}")]
    NotFacial(Vec<usize>, usize),
    #[error("drawing {0} is not a valid simple 1-drawing")]
    BadDrawing(usize),
    #[error("stitch would have {0} vertices")]
    TooLarge(usize),
}

/// A stitch together with the data showing it is one.
#[derive(Debug, Clone)]
pub struct StitchWitness {
    pub g: Graph,
    /// Vertices of the first glued graph; they keep their labels.
    pub g1: VertexSet,
    /// Vertices of the second glued graph.
    pub g2: VertexSet,
    pub t: VertexSet,
    pub d: OneDrawing,
}

/// Tail nodes, in order, of a crossing-free 3-face on exactly `t`.
fn triangle_face(d: &OneDrawing, t: VertexSet) -> Option<Vec<usize>> {
    d.faces()
        .into_iter()
        .find(|f| !f.contains_crossing && f.degree() == 3 && VertexSet::from_slice(&f.nodes) == t)
        .map(|f| f.nodes)
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

/// Glues `d2` into the face of `d1` bounded by `t1`, identifying `t2[i]`
/// with `t1[i]`. Vertices of `d1` keep their labels; the other vertices of
/// `d2` follow in increasing order.
pub fn stitch(d1: &OneDrawing, t1: [usize; 3], d2: &OneDrawing, t2: [usize; 3]) -> Result<StitchWitness, StitchError> {
    for (i, d) in [d1, d2].into_iter().enumerate() {
        if !d.is_valid() || !d.is_simple() {
            return Err(StitchError::BadDrawing(i + 1));
        }
    }
    let (n1, n2) = (d1.graph().n(), d2.graph().n());
    let n = n1 + n2 - 3;
    if n > MAX_VERTICES {
        return Err(StitchError::TooLarge(n));
    }
    let s1 = VertexSet::from_slice(&t1);
    let s2 = VertexSet::from_slice(&t2);
    let f1 = triangle_face(d1, s1).ok_or_else(|| StitchError::NotFacial(t1.to_vec(), 1))?;
    if triangle_face(d2, s2).is_none() {
        return Err(StitchError::NotFacial(t2.to_vec(), 2));
    }

    let mut map2 = vec![usize::MAX; n2];
    for i in 0..3 {
        map2[t2[i]] = t1[i];
    }
    let mut next = n1;
    for slot in map2.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }

    // The second face must run against the first once glued.
    let reversed: Vec<usize> = f1.iter().rev().copied().collect();
    let mut d2 = d2.clone();
    let face2 = |d: &OneDrawing| d.faces().into_iter().filter(|f| !f.contains_crossing && f.degree() == 3).map(|f| f.nodes).find(|nodes| VertexSet::from_slice(nodes) == s2 && same_cycle(&reversed, &nodes.iter().map(|&v| map2[v]).collect::<Vec<_>>()));
    if face2(&d2).is_none() {
        d2 = d2.mirror();
    }
    debug_assert!(face2(&d2).is_some());

    let c1 = d1.crossing_count();
    let mut g = Graph::empty(n).map_err(|_| StitchError::TooLarge(n))?;
    for (u, v) in d1.graph().edges() {
        g.add_edge(u, v);
    }
    for (u, v) in d2.graph().edges() {
        if !g.has_edge(map2[u], map2[v]) {
            g.add_edge(map2[u], map2[v]);
        }
    }
    let m2 = |e: Edge| norm(map2[e.0], map2[e.1]);
    let mut crossings = d1.crossings().to_vec();
    crossings.extend(d2.crossings().iter().map(|&(a, b)| (m2(a), m2(b))));

    let node1 = |x: Node| x;
    let node2 = |x: Node| match x {
        Node::V(v) => Node::V(map2[v]),
        Node::X(j) => Node::X(c1 + j),
    };
    let r1 = d1.rotation_entries();
    let r2: Vec<Vec<(Node, Edge)>> = d2.rotation_entries().into_iter().map(|l| l.into_iter().map(|(q, e)| (node2(q), m2(e))).collect()).collect();
    let c2 = d2.crossing_count();
    let mut rotation: Vec<Vec<(Node, Edge)>> = vec![Vec::new(); n + c1 + c2];
    for (p, list) in r1.iter().enumerate() {
        let target = if p < n1 { p } else { n + (p - n1) };
        rotation[target] = list.iter().map(|&(q, e)| (node1(q), e)).collect();
    }
    for (p, list) in r2.iter().enumerate() {
        let target = if p < n2 { map2[p] } else { n + c1 + (p - n2) };
        if p < n2 && s2.contains(p) {
            continue;
        }
        rotation[target] = list.clone();
    }
    // Shared vertices: the face of d1 lies between `prev` and `succ`; the
    // second drawing's rotation goes into that gap.
    for i in 0..3 {
        let v = f1[i];
        let prev = f1[(i + 2) % 3];
        let succ = f1[(i + 1) % 3];
        let a = &r1[v];
        let at = |list: &[(Node, Edge)], w: usize| list.iter().position(|&(q, e)| q == Node::V(w) && e == norm(v, w)).expect("triangle edge in rotation");
        let start = at(a, succ);
        let mut merged: Vec<(Node, Edge)> = (0..a.len()).map(|k| a[(start + k) % a.len()]).collect();
        debug_assert_eq!(merged.last().map(|x| x.0), Some(Node::V(prev)));
        let v2 = t2[t1.iter().position(|&x| x == v).expect("shared")];
        let b = &r2[v2];
        let from = at(b, prev);
        let to = at(b, succ);
        let mut k = (from + 1) % b.len();
        while k != to {
            merged.push(b[k]);
            k = (k + 1) % b.len();
        }
        rotation[v] = merged;
    }
    let d = OneDrawing::new(g.clone(), crossings, rotation).expect("glued rotation resolves");
    debug_assert_eq!(d.validate(), Ok(()));
    let g1: VertexSet = (0..n1).collect();
    let g2 = map2.iter().copied().collect();
    Ok(StitchWitness { g, g1, g2, t: s1, d })
}

/// Every stitch of the two drawings over all pairs of facial triangles and
/// all six identifications, one per isomorphism class of the result.
pub fn stitch_all(d1: &OneDrawing, d2: &OneDrawing) -> Result<Vec<StitchWitness>, StitchError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in d1.facial_triangles() {
        let t1: Vec<usize> = a.to_vec();
        for b in d2.facial_triangles() {
            let base = b.to_vec();
            let mut orders = Vec::new();
            super::parts::permutations(&base, &mut Vec::new(), &mut orders);
            for o in orders {
                let w = stitch(d1, [t1[0], t1[1], t1[2]], d2, [o[0], o[1], o[2]])?;
                if seen.insert(canonical_form(&w.g)) {
                    out.push(w);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::connectivity::is_separator;
    use crate::drawing::fixtures;
    use crate::graph::{complete, path, strong_product};

    #[test]
    fn two_k6_make_a_strip() {
        let k6 = fixtures::k6();
        let ts = k6.facial_triangles();
        let all = stitch_all(&k6, &k6).unwrap();
        assert_eq!(all.len(), 1);
        let strip = strong_product(&complete(3).unwrap(), &path(3).unwrap()).unwrap();
        let w = stitch(&k6, ts[0].to_vec().try_into().unwrap(), &k6, ts[1].to_vec().try_into().unwrap()).unwrap();
        assert!(is_isomorphic(&w.g, &strip));
        assert_eq!(w.d.validate(), Ok(()));
        assert!(w.d.is_simple());
        assert_eq!(w.d.crossing_count(), 6);
        assert_eq!(w.g1.intersection(w.g2), w.t);
        assert_eq!(w.g1.union(w.g2), w.g.vertices());
        assert!(w.d.skeleton_separating_triangles().contains(&w.t));
        assert!(is_separator(&w.g, w.t));
    }

    #[test]
    fn two_ways_to_stitch_k3_c4() {
        let d = fixtures::k3_c4();
        let all = stitch_all(&d, &d).unwrap();
        assert_eq!(all.len(), 2);
        for w in &all {
            assert_eq!(w.g.n(), 11);
            assert_eq!(w.d.validate(), Ok(()));
            assert!(w.d.is_rich());
            // The remaining facial triangles of both sides survive.
            assert_eq!(w.d.facial_triangles().len(), 2);
        }
        assert!(!is_isomorphic(&all[0].g, &all[1].g));
        assert!(!all[0].d.weak_equivalent(&all[1].d));
    }

    #[test]
    fn rejects_non_facial() {
        let k6 = fixtures::k6();
        let e = stitch(&k6, [0, 1, 3], &k6, [0, 1, 2]).unwrap_err();
        assert!(matches!(e, StitchError::NotFacial(_, 1)));
        let k7 = fixtures::k7_two_drawing();
        assert_eq!(stitch(&k7, [0, 1, 2], &k6, [0, 1, 2]).unwrap_err(), StitchError::BadDrawing(1));
    }

    #[test]
    fn orientation_does_not_matter() {
        let k6 = fixtures::k6();
        let ts = k6.facial_triangles();
        let t0: [usize; 3] = ts[0].to_vec().try_into().unwrap();
        let t1: [usize; 3] = ts[1].to_vec().try_into().unwrap();
        for other in [k6.clone(), k6.mirror()] {
            let w = stitch(&k6, t0, &other, t1).unwrap();
            assert_eq!(w.d.validate(), Ok(()));
            let w = stitch(&k6, t0, &other, [t1[1], t1[0], t1[2]]).unwrap();
            assert_eq!(w.d.validate(), Ok(()));
        }
    }
}
