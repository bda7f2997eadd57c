//! Exact 1-planarity testing for small graphs.
//!
//! The search deepens over the number of crossings `c`. At each level it
//! enumerates matchings of `c` pairs of vertex-disjoint edges in
//! lexicographic order, deciding edges one at a time (uncrossed, or paired
//! with a later edge) and pruning as soon as the planarization of the
//! decided part is non-planar.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::count::count_subgraphs_iso;
use crate::drawing::{planarization_graph, Edge, OneDrawing, Violation};
use crate::graph::{complete, join, Graph};
use crate::planarity::{is_planar, planarity_test};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    OnePlanar,
    NotOnePlanar,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::OnePlanar => "one-planar",
            Verdict::NotOnePlanar => "not-one-planar",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    pub witness: Option<OneDrawing>,
    pub crossings_used: usize,
    /// Crossing counts whose levels were searched, in order.
    pub levels_searched: Vec<usize>,
    pub planarity_tests: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("search budget exceeded after {tests} planarity tests")]
    BudgetExceeded { tests: u64 },
    #[error("graph has {n} vertices, search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("expected a 7-vertex graph, got {0} vertices")]
    WrongOrder(usize),
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    pub max_crossings: Option<usize>,
    pub max_planarity_tests: Option<u64>,
    pub time_limit: Option<Duration>,
    pub max_vertices: usize,
    /// Prune by counting dummy corners not closed by an uncrossed edge.
    pub corner_pruning: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { max_crossings: None, max_planarity_tests: None, time_limit: None, max_vertices: 16, corner_pruning: true }
    }
}

pub fn decide_1planar(g: &Graph, max_crossings: Option<usize>) -> Result<DecisionOutcome, DecideError> {
    decide_1planar_with(g, &DecideOptions { max_crossings, ..DecideOptions::default() })
}

pub fn decide_1planar_with(g: &Graph, opts: &DecideOptions) -> Result<DecisionOutcome, DecideError> {
    let n = g.n();
    if n > opts.max_vertices {
        return Err(DecideError::TooLarge { n, cap: opts.max_vertices });
    }
    let budget = Budget {
        tests: AtomicU64::new(0),
        limit: opts.max_planarity_tests.unwrap_or(u64::MAX),
        deadline: opts.time_limit.map(|t| Instant::now() + t),
        stop: AtomicBool::new(false),
    };
    let mut levels = Vec::new();
    budget.tests.fetch_add(1, Ordering::Relaxed);
    if let Some(emb) = planarity_test(g) {
        let d = OneDrawing::planar(g.clone(), &emb).expect("embedding matches graph");
        return Ok(DecisionOutcome { verdict: Verdict::OnePlanar, witness: Some(d), crossings_used: 0, levels_searched: vec![0], planarity_tests: 1 });
    }
    levels.push(0);
    let edges = g.edges();
    let lo = (g.m() + 6).saturating_sub(3 * n).max(1);
    let hi = n.saturating_sub(2).min(opts.max_crossings.unwrap_or(usize::MAX));
    for c in lo..=hi {
        levels.push(c);
        match search_level(g, &edges, c, &budget, opts.corner_pruning) {
            LevelResult::Found(pairs) => {
                let witness = finish_witness(g, pairs);
                let tests = budget.tests.load(Ordering::Relaxed);
                return Ok(DecisionOutcome {
                    verdict: Verdict::OnePlanar,
                    crossings_used: witness.crossing_count(),
                    witness: Some(witness),
                    levels_searched: levels,
                    planarity_tests: tests,
                });
            }
            LevelResult::Exhausted => {}
            LevelResult::Aborted => return Err(DecideError::BudgetExceeded { tests: budget.tests.load(Ordering::Relaxed) }),
        }
    }
    Ok(DecisionOutcome {
        verdict: Verdict::NotOnePlanar,
        witness: None,
        crossings_used: 0,
        levels_searched: levels,
        planarity_tests: budget.tests.load(Ordering::Relaxed),
    })
}

struct Budget {
    tests: AtomicU64,
    limit: u64,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Budget {
    /// Counts one planarity test; false once the budget is spent.
    fn charge(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let t = self.tests.fetch_add(1, Ordering::Relaxed) + 1;
        let over = t > self.limit || (t.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() > d));
        if over {
            self.stop.store(true, Ordering::Relaxed);
        }
        !over
    }
}

enum LevelResult {
    Found(Vec<(Edge, Edge)>),
    Exhausted,
    Aborted,
}

#[derive(Clone)]
struct State {
    /// `partner[i]`: `None` undecided, `Some(i)` uncrossed, `Some(j)` paired.
    partner: Vec<Option<usize>>,
    next: usize,
    pairs: Vec<(usize, usize)>,
    planarization: Graph,
    /// Dummy corners whose two ends are not joined by an uncrossed edge.
    bad_corners: usize,
}

struct Level<'a> {
    g: &'a Graph,
    edges: &'a [Edge],
    c: usize,
    budget: &'a Budget,
    /// Cap on bad corners, `None` when the bound does not apply.
    corner_cap: Option<usize>,
}

enum Step {
    Found(Vec<(usize, usize)>),
    Exhausted,
    Aborted,
}

impl Level<'_> {
    fn disjoint(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.edges[i], self.edges[j]);
        a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
    }

    fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).ok()
    }

    /// Bad corners added by crossing edges `i` and `j`: corners of the new
    /// dummy, plus corners of earlier dummies whose side is `i` or `j`.
    fn corner_cost(&self, s: &State, i: usize, j: usize) -> usize {
        let (a, b) = (self.edges[i], self.edges[j]);
        let mut cost = 0;
        for p in [a.0, a.1] {
            for q in [b.0, b.1] {
                match self.edge_index(p, q) {
                    None => cost += 1,
                    Some(k) if matches!(s.partner[k], Some(t) if t != k) => cost += 1,
                    _ => {}
                }
            }
        }
        for &(x, y) in &s.pairs {
            let (e, f) = (self.edges[x], self.edges[y]);
            for k in [i, j] {
                let (p, q) = self.edges[k];
                let side = |p: usize, q: usize| (p == e.0 || p == e.1) && (q == f.0 || q == f.1);
                if side(p, q) || side(q, p) {
                    cost += 1;
                }
            }
        }
        cost
    }

    fn first_undecided(&self, s: &State) -> Option<usize> {
        (s.next..self.edges.len()).find(|&i| s.partner[i].is_none())
    }

    /// Children of `s` in search order, already pruned.
    fn children(&self, s: &State) -> Result<Vec<State>, ()> {
        let Some(i) = self.first_undecided(s) else {
            return Ok(Vec::new());
        };
        let undecided = s.partner[i..].iter().filter(|p| p.is_none()).count();
        let need = self.c - s.pairs.len();
        let mut out = Vec::new();
        let (u, v) = self.edges[i];
        // Leave edge i uncrossed.
        if 2 * need < undecided {
            let mut t = s.clone();
            t.partner[i] = Some(i);
            t.next = i + 1;
            t.planarization.add_edge(u, v);
            if !self.budget.charge() {
                return Err(());
            }
            if is_planar(&t.planarization) {
                out.push(t);
            }
        }
        // Pair edge i with a later undecided edge.
        if need > 0 {
            let n = self.g.n();
            let x = n + s.pairs.len();
            for j in i + 1..self.edges.len() {
                if s.partner[j].is_some() || !self.disjoint(i, j) {
                    continue;
                }
                let bad = s.bad_corners + self.corner_cost(s, i, j);
                if self.corner_cap.is_some_and(|cap| bad > cap) {
                    continue;
                }
                let mut t = s.clone();
                t.bad_corners = bad;
                t.partner[i] = Some(j);
                t.partner[j] = Some(i);
                t.next = i + 1;
                t.pairs.push((i, j));
                let (a, b) = self.edges[j];
                for w in [u, v, a, b] {
                    t.planarization.add_edge(w, x);
                }
                if !self.budget.charge() {
                    return Err(());
                }
                if is_planar(&t.planarization) {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    fn is_complete(&self, s: &State) -> bool {
        s.pairs.len() == self.c && self.first_undecided(s).is_none()
    }

    fn dfs(&self, s: State) -> Step {
        if self.is_complete(&s) {
            return Step::Found(s.pairs);
        }
        let Ok(children) = self.children(&s) else {
            return Step::Aborted;
        };
        for t in children {
            match self.dfs(t) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn search_level(g: &Graph, edges: &[Edge], c: usize, budget: &Budget, corner_pruning: bool) -> LevelResult {
    let n = g.n();
    // Sum of (degree - 3) over the faces of a connected planarization is
    // its Euler slack, and a face of degree d holds at most d / 2 dummy
    // corners, so at most twice the slack corners can be bad.
    let slack = (3 * (n + c)).saturating_sub(6 + g.m() + 2 * c);
    let corner_cap = (corner_pruning && crate::connectivity::is_connected(g)).then_some(2 * slack);
    let level = Level { g, edges, c, budget, corner_cap };
    let root = State {
        partner: vec![None; edges.len()],
        next: 0,
        pairs: Vec::new(),
        planarization: Graph::empty(n + c).expect("within vertex cap"),
        bad_corners: 0,
    };
    // Expand breadth-first, keeping search order, until there is enough
    // work to spread across threads.
    let target = 8 * rayon::current_num_threads().max(1);
    let mut frontier = vec![root];
    for _ in 0..edges.len() {
        if frontier.len() >= target {
            break;
        }
        let mut next = Vec::new();
        let mut grew = false;
        for s in frontier {
            if level.is_complete(&s) {
                return LevelResult::Found(to_pairs(edges, &s.pairs));
            }
            match level.children(&s) {
                Err(()) => return LevelResult::Aborted,
                Ok(ch) => {
                    grew |= !ch.is_empty();
                    next.extend(ch);
                }
            }
        }
        frontier = next;
        if !grew || frontier.is_empty() {
            break;
        }
    }
    let found = frontier.into_par_iter().map(|s| level.dfs(s)).find_map_first(|r| match r {
        Step::Exhausted => None,
        other => Some(other),
    });
    match found {
        Some(Step::Found(p)) => LevelResult::Found(to_pairs(edges, &p)),
        Some(Step::Aborted) => LevelResult::Aborted,
        _ if budget.stop.load(Ordering::Relaxed) => LevelResult::Aborted,
        _ => LevelResult::Exhausted,
    }
}

fn to_pairs(edges: &[Edge], pairs: &[(usize, usize)]) -> Vec<(Edge, Edge)> {
    pairs.iter().map(|&(i, j)| (edges[i], edges[j])).collect()
}

/// Embeds the planarization and turns it into a drawing. A dummy whose
/// rotation does not alternate marks a crossing that can be removed
/// locally; it is dropped and the rest re-embedded.
fn finish_witness(g: &Graph, mut pairs: Vec<(Edge, Edge)>) -> OneDrawing {
    loop {
        let p = planarization_graph(g, &pairs).expect("pairs are disjoint edges");
        let emb = planarity_test(&p).expect("search only accepts planar planarizations");
        let d = OneDrawing::from_planarization(g.clone(), pairs.clone(), &emb.rotation).expect("consistent planarization");
        match d.validate() {
            Ok(()) => return d,
            Err(Violation::Touching(i)) => {
                pairs.remove(i);
            }
            Err(e) => panic!("planarization embedding produced an invalid drawing: {e}"),
        }
    }
}

/// `K_4` joined with three independent vertices.
pub fn k4_plus_3_independent() -> Graph {
    join(&complete(4).unwrap(), &Graph::empty(3).unwrap()).unwrap()
}

/// 1-planarity of a 7-vertex graph by excluding a `K_4 + 3K_1` subgraph.
pub fn decide_7vertex(g: &Graph) -> Result<bool, DecideError> {
    if g.n() != 7 {
        return Err(DecideError::WrongOrder(g.n()));
    }
    if g.m() < 18 {
        return Ok(true);
    }
    Ok(count_subgraphs_iso(g, &k4_plus_3_independent()).expect("pattern has 7 vertices") == 0)
}

/// The two edge-maximal 7-vertex 1-planar graphs: `K_3 + C_4` and
/// `K_3 + complement(K_{1,3})`.
pub fn maximal_7vertex() -> [Graph; 2] {
    use crate::graph::{complement, complete_multipartite, cycle};
    let k3 = complete(3).unwrap();
    [join(&k3, &cycle(4).unwrap()).unwrap(), join(&k3, &complement(&complete_multipartite(&[1, 3]).unwrap())).unwrap()]
}

/// Isomorphism classes of 7-vertex 1-planar graphs: every spanning
/// subgraph of the two maximal ones, ordered by edge count then canonical
/// form.
pub fn enumerate_7vertex_1planar() -> Vec<Graph> {
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut layer: Vec<Graph> = Vec::new();
    for g in maximal_7vertex() {
        if seen.insert(canonical_form(&g)) {
            layer.push(g);
        }
    }
    let mut out = Vec::new();
    while !layer.is_empty() {
        let mut next: Vec<(CanonicalForm, Graph)> = Vec::new();
        for g in &layer {
            for (u, v) in g.edges() {
                let h = g.without_edge(u, v);
                let key = canonical_form(&h);
                if seen.insert(key.clone()) {
                    next.push((key, h));
                }
            }
        }
        out.append(&mut layer);
        next.sort_by(|a, b| a.0.cmp(&b.0));
        layer = next.into_iter().map(|(_, g)| g).collect();
    }
    out.sort_by(|a, b| b.m().cmp(&a.m()).then_with(|| canonical_form(a).cmp(&canonical_form(b))));
    out
}

/// True iff `g` is 1-planar and no single added edge keeps it 1-planar.
pub fn is_edge_maximal_1planar(g: &Graph) -> Result<bool, DecideError> {
    if decide_1planar(g, None)?.verdict != Verdict::OnePlanar {
        return Ok(false);
    }
    let mut tried: HashSet<CanonicalForm> = HashSet::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let h = g.with_edge(u, v).expect("in range");
            if !tried.insert(canonical_form(&h)) {
                continue;
            }
            if decide_1planar(&h, None)?.verdict == Verdict::OnePlanar {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn small_verdicts() {
        let k6 = decide_1planar(&complete(6).unwrap(), None).unwrap();
        assert_eq!(k6.verdict, Verdict::OnePlanar);
        assert_eq!(k6.crossings_used, 3);
        let w = k6.witness.unwrap();
        assert_eq!(w.validate(), Ok(()));
        assert!(w.is_simple() && w.is_rich());
        assert_eq!(decide_1planar(&complete(7).unwrap(), None).unwrap().verdict, Verdict::NotOnePlanar);
        let planar = decide_1planar(&cube(), None).unwrap();
        assert_eq!(planar.crossings_used, 0);
        assert_eq!(planar.witness.unwrap().validate(), Ok(()));
    }

    #[test]
    fn max_crossings_limits_the_search() {
        let out = decide_1planar(&complete(6).unwrap(), Some(2)).unwrap();
        assert_eq!(out.verdict, Verdict::NotOnePlanar);
    }

    #[test]
    fn budget_is_reported() {
        let opts = DecideOptions { max_planarity_tests: Some(3), ..DecideOptions::default() };
        let err = decide_1planar_with(&k4_plus_3_independent(), &opts).unwrap_err();
        assert!(matches!(err, DecideError::BudgetExceeded { .. }));
    }

    #[test]
    fn seven_vertex_rule() {
        let [a, b] = maximal_7vertex();
        assert!(decide_7vertex(&a).unwrap());
        assert!(decide_7vertex(&b).unwrap());
        assert!(!decide_7vertex(&k4_plus_3_independent()).unwrap());
        assert!(!decide_7vertex(&complete(7).unwrap()).unwrap());
        assert!(decide_7vertex(&complete(6).unwrap()).is_err());
    }
}
