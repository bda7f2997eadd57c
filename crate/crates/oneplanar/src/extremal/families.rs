//! Two planar families: quadrangulations built from a strip of 4-faces
//! capped by two cubes, and Apollonian networks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExtremalError, GEN_MAX};
use crate::canon::canonical_form;
use crate::graph::{Graph, GraphError};

/// Adds a cube on the 4-face `f`: four new vertices, each joined to one
/// vertex of `f`, forming a 4-cycle among themselves.
fn cap(edges: &mut Vec<(usize, usize)>, next: &mut usize, f: &[usize]) {
    let base = *next;
    for i in 0..4 {
        edges.push((f[i], base + i));
        edges.push((base + i, base + (i + 1) % 4));
    }
    *next += 4;
}

/// All graphs of the family on `n` vertices (`12 ≤ n ≤ 24`), one per
/// isomorphism class, over every choice of the face grown next.
pub fn gen_gstar(n: usize) -> Result<Vec<Graph>, ExtremalError> {
    if n > GEN_MAX {
        return Err(ExtremalError::TooLarge(n));
    }
    if n < 12 {
        return Err(GraphError::Invalid(format!("the family starts at 12 vertices, asked for {n}")).into());
    }
    let steps = n - 12;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for choice in 0u32..1 << steps {
        // v0 v1 v2 v3 bound both faces of the starting 4-cycle.
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let f1 = vec![0, 1, 2, 3];
        let mut f2 = vec![0, 3, 2, 1];
        for i in 1..=steps {
            let v = i + 2;
            let w = i + 3;
            let j = f2.iter().position(|&x| x == v).expect("newest vertex is on the growing face");
            let u = f2[(j + 2) % 4];
            edges.push((v, w));
            edges.push((u, w));
            let a = vec![v, f2[(j + 1) % 4], u, w];
            let b = vec![u, f2[(j + 3) % 4], v, w];
            f2 = if choice >> (i - 1) & 1 == 0 { a } else { b };
        }
        let mut next = steps + 4;
        cap(&mut edges, &mut next, &f1);
        cap(&mut edges, &mut next, &f2);
        debug_assert_eq!(next, n);
        let g = Graph::from_edges(n, &edges)?;
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out.sort_by_cached_key(canonical_form);
    Ok(out)
}

/// `K_3` followed by `n - 3` insertions of a vertex into a face, the faces
/// picked by a generator seeded with `seed`.
pub fn gen_apollonian(n: usize, seed: u64) -> Result<Graph, ExtremalError> {
    if n > GEN_MAX {
        return Err(ExtremalError::TooLarge(n));
    }
    if n < 3 {
        return Err(GraphError::Invalid(format!("an Apollonian network has at least 3 vertices, asked for {n}")).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    Ok(Graph::from_edges(n, &edges)?)
}
