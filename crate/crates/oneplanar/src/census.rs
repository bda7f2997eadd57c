//! Censuses over streams of embedded planar graphs in `planar_code`.
//!
//! A stream is an optional 15-byte header `>>planar_code<<` followed by
//! records: one byte `n`, then for each vertex `1..=n` its neighbours in
//! rotation order (1-based bytes), each list closed by a 0 byte.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::io::{self, BufReader, Read};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::connectivity::is_k_connected;
use crate::extremal::gen_gstar;
use crate::formulas::f3;
use crate::graph::{Graph, VertexSet};
use crate::planarity::trace_faces;

pub const HEADER: &[u8; 15] = b">>planar_code<<";

/// A planar graph with its rotation system and traced faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedPlanarGraph {
    pub graph: Graph,
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<Vec<usize>>,
}

impl EmbeddedPlanarGraph {
    /// Checks Euler's formula and that every face has degree at least 3
    /// (for graphs with at least 3 vertices).
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<EmbeddedPlanarGraph, String> {
        if !crate::planarity::rotation_matches(&graph, &rotation) {
            return Err("rotation does not match the adjacency".into());
        }
        let faces = trace_faces(&rotation);
        let (v, e, f) = (graph.n() as i64, graph.m() as i64, faces.len() as i64);
        if graph.n() > 0 && crate::connectivity::is_connected(&graph) && v - e + f != 2 {
            return Err(format!("Euler's formula fails: {v} - {e} + {f} != 2"));
        }
        if graph.n() >= 3 && faces.iter().any(|f| f.len() < 3) {
            return Err("face of degree below 3".into());
        }
        Ok(EmbeddedPlanarGraph { graph, rotation, faces })
    }

    /// Face degree → number of faces.
    pub fn face_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for f in &self.faces {
            *out.entry(f.len()).or_insert(0) += 1;
        }
        out
    }

    pub fn max_face_degree(&self) -> usize {
        self.faces.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_quadrangulation(&self) -> bool {
        !self.faces.is_empty() && self.faces.iter().all(|f| f.len() == 4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarCodeError {
    #[error("byte {offset}: record truncated")]
    Truncated { offset: u64 },
    #[error("byte {offset}: neighbour {value} out of range for {n} vertices")]
    OutOfRange { offset: u64, value: u8, n: usize },
    #[error("byte {offset}: {message}")]
    Invalid { offset: u64, message: String },
    #[error("read failed: {0}")]
    Io(String),
}

impl From<io::Error> for PlanarCodeError {
    fn from(e: io::Error) -> Self {
        PlanarCodeError::Io(e.to_string())
    }
}

/// Streaming reader; yields one graph per record.
pub struct PlanarCodeReader<R: Read> {
    inner: BufReader<R>,
    pending: VecDeque<u8>,
    offset: u64,
    header: Option<bool>,
    failed: bool,
}

impl<R: Read> PlanarCodeReader<R> {
    pub fn new(r: R) -> Self {
        PlanarCodeReader { inner: BufReader::new(r), pending: VecDeque::new(), offset: 0, header: None, failed: false }
    }

    /// Whether the stream began with the header (known after the first read).
    pub fn had_header(&self) -> bool {
        self.header == Some(true)
    }

    fn raw(&mut self) -> Result<Option<u8>, PlanarCodeError> {
        let mut b = [0u8; 1];
        loop {
            match self.inner.read(&mut b) {
                Ok(0) => return Ok(None),
                Ok(_) => return Ok(Some(b[0])),
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }

    fn byte(&mut self) -> Result<Option<u8>, PlanarCodeError> {
        let b = match self.pending.pop_front() {
            Some(b) => Some(b),
            None => self.raw()?,
        };
        if b.is_some() {
            self.offset += 1;
        }
        Ok(b)
    }

    fn check_header(&mut self) -> Result<(), PlanarCodeError> {
        if self.header.is_some() {
            return Ok(());
        }
        while self.pending.len() < HEADER.len() {
            match self.raw()? {
                Some(b) => self.pending.push_back(b),
                None => break,
            }
        }
        let found = self.pending.iter().eq(HEADER.iter());
        if found {
            self.pending.clear();
            self.offset += HEADER.len() as u64;
        }
        self.header = Some(found);
        Ok(())
    }

    fn record(&mut self) -> Result<Option<EmbeddedPlanarGraph>, PlanarCodeError> {
        self.check_header()?;
        let start = self.offset;
        let Some(n) = self.byte()? else {
            return Ok(None);
        };
        let n = n as usize;
        if n > crate::graph::MAX_VERTICES {
            return Err(PlanarCodeError::Invalid { offset: start, message: format!("{n} vertices exceed the limit of {}", crate::graph::MAX_VERTICES) });
        }
        let mut rotation = vec![Vec::new(); n];
        let mut rows = vec![0u64; n];
        for (v, list) in rotation.iter_mut().enumerate() {
            loop {
                let at = self.offset;
                let Some(b) = self.byte()? else {
                    return Err(PlanarCodeError::Truncated { offset: at });
                };
                if b == 0 {
                    break;
                }
                let u = b as usize - 1;
                if u >= n || u == v {
                    return Err(PlanarCodeError::OutOfRange { offset: at, value: b, n });
                }
                if rows[v] >> u & 1 == 1 {
                    return Err(PlanarCodeError::Invalid { offset: at, message: format!("repeated neighbour {b} of vertex {}", v + 1) });
                }
                rows[v] |= 1 << u;
                list.push(u);
            }
        }
        for v in 0..n {
            for u in 0..n {
                if rows[v] >> u & 1 != rows[u] >> v & 1 {
                    return Err(PlanarCodeError::Invalid { offset: start, message: format!("asymmetric adjacency between {} and {}", v + 1, u + 1) });
                }
            }
        }
        let graph = Graph::from_rows(rows).map_err(|e| PlanarCodeError::Invalid { offset: start, message: e.to_string() })?;
        EmbeddedPlanarGraph::new(graph, rotation).map(Some).map_err(|message| PlanarCodeError::Invalid { offset: start, message })
    }
}

impl<R: Read> Iterator for PlanarCodeReader<R> {
    type Item = Result<EmbeddedPlanarGraph, PlanarCodeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.record() {
            Ok(Some(g)) => Some(Ok(g)),
            Ok(None) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

pub fn read_planar_code<R: Read>(r: R) -> PlanarCodeReader<R> {
    PlanarCodeReader::new(r)
}

/// Encodes one record.
pub fn encode_record(g: &EmbeddedPlanarGraph, out: &mut Vec<u8>) {
    out.push(g.graph.n() as u8);
    for list in &g.rotation {
        out.extend(list.iter().map(|&u| (u + 1) as u8));
        out.push(0);
    }
}

pub fn write_planar_code<'a>(graphs: impl IntoIterator<Item = &'a EmbeddedPlanarGraph>, header: bool) -> Vec<u8> {
    let mut out = Vec::new();
    if header {
        out.extend_from_slice(HEADER);
    }
    for g in graphs {
        encode_record(g, &mut out);
    }
    out
}

/// Counts vertex triples whose removal disconnects `g`, by growing one
/// component from the first surviving vertex.
pub fn separator3_count(g: &Graph) -> usize {
    let n = g.n();
    if n < 5 {
        return 0;
    }
    let all = g.vertices().bits();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let rest = all & !(1 << a | 1 << b | 1 << c);
                let start = rest.trailing_zeros() as usize;
                let mut seen = 1u64 << start;
                let mut frontier = seen;
                while frontier != 0 && seen != rest {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let new = g.row(v) & rest & !seen;
                    seen |= new;
                    frontier |= new;
                }
                if seen != rest {
                    count += 1;
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusFilter {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub three_connected: Option<bool>,
    pub max_face_degree: Option<usize>,
    pub quadrangulation: bool,
    /// Exact number of faces of each listed degree.
    pub faces_of_degree: Vec<(usize, usize)>,
    pub min_separators: Option<usize>,
}

impl CensusFilter {
    /// 3-connected quadrangulations on `n` vertices.
    pub fn quadrangulations(n: usize) -> CensusFilter {
        CensusFilter { n: Some(n), three_connected: Some(true), quadrangulation: true, ..Default::default() }
    }

    /// 8 vertices, 13 edges, 3-connected, faces of degree at most 4 and at
    /// least eight separating triples.
    pub fn eight_vertex_skeletons() -> CensusFilter {
        CensusFilter {
            n: Some(8),
            m: Some(13),
            three_connected: Some(true),
            max_face_degree: Some(4),
            min_separators: Some(8),
            ..Default::default()
        }
    }

    /// 11 vertices, eight 4-faces and otherwise triangles, 3-connected, at
    /// least fifteen separating triples.
    pub fn eleven_vertex_skeletons() -> CensusFilter {
        CensusFilter {
            n: Some(11),
            three_connected: Some(true),
            max_face_degree: Some(4),
            faces_of_degree: vec![(4, 8)],
            min_separators: Some(15),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    /// Position in the input stream, from 0.
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub face_profile: BTreeMap<usize, usize>,
    pub three_connected: bool,
    pub sep3_count: usize,
    pub flags: Vec<&'static str>,
    pub canonical: CanonicalForm,
}

impl CensusRecord {
    pub fn face_profile_string(&self) -> String {
        self.face_profile.iter().map(|(d, c)| format!("{d}:{c}")).collect::<Vec<_>>().join(" ")
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.index,
            self.n,
            self.m,
            self.face_profile_string(),
            self.three_connected,
            self.sep3_count,
            self.flags.join("|")
        )
    }
}

pub const CSV_HEADER: &str = "index,n,m,face_profile,three_connected,sep3_count,flags";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Parse(#[from] PlanarCodeError),
    #[error("record {index} has {found} vertices, expected {expected}")]
    MixedOrder { index: usize, expected: usize, found: usize },
}

fn gstar_forms(n: usize) -> HashSet<CanonicalForm> {
    gen_gstar(n).map(|gs| gs.iter().map(canonical_form).collect()).unwrap_or_default()
}

/// Applies `filter`; `None` if the graph fails it. The cheap conditions
/// run first and the separator count only when needed.
fn evaluate(index: usize, g: &EmbeddedPlanarGraph, filter: &CensusFilter, gstar: &HashSet<CanonicalForm>) -> Option<CensusRecord> {
    let (n, m) = (g.graph.n(), g.graph.m());
    if filter.n.is_some_and(|x| x != n) || filter.m.is_some_and(|x| x != m) {
        return None;
    }
    let quad = g.is_quadrangulation();
    if filter.quadrangulation && !quad {
        return None;
    }
    if filter.max_face_degree.is_some_and(|x| g.max_face_degree() > x) {
        return None;
    }
    let profile = g.face_profile();
    if filter.faces_of_degree.iter().any(|&(d, c)| profile.get(&d).copied().unwrap_or(0) != c) {
        return None;
    }
    let three = is_k_connected(&g.graph, 3);
    if filter.three_connected.is_some_and(|x| x != three) {
        return None;
    }
    let seps = separator3_count(&g.graph);
    if filter.min_separators.is_some_and(|x| seps < x) {
        return None;
    }
    let canonical = canonical_form(&g.graph);
    let mut flags = Vec::new();
    if quad {
        flags.push("quadrangulation");
    }
    if g.graph.is_bipartite() {
        flags.push("bipartite");
    }
    if gstar.contains(&canonical) {
        flags.push("gstar");
    }
    Some(CensusRecord { index, n, m, face_profile: profile, three_connected: three, sep3_count: seps, flags, canonical })
}

const CHUNK: usize = 1024;

/// One record per graph passing `filter`, in input order. Graphs are read
/// and evaluated a chunk at a time.
pub fn census<R: Read>(reader: PlanarCodeReader<R>, filter: &CensusFilter) -> Result<Vec<CensusRecord>, CensusError> {
    let mut out = Vec::new();
    let mut gstar_cache: BTreeMap<usize, HashSet<CanonicalForm>> = BTreeMap::new();
    let mut chunk: Vec<(usize, EmbeddedPlanarGraph)> = Vec::with_capacity(CHUNK);
    let mut flush = |chunk: &mut Vec<(usize, EmbeddedPlanarGraph)>, out: &mut Vec<CensusRecord>| {
        for (_, g) in chunk.iter() {
            let n = g.graph.n();
            if (12..=crate::extremal::GEN_MAX).contains(&n) && g.is_quadrangulation() {
                gstar_cache.entry(n).or_insert_with(|| gstar_forms(n));
            }
        }
        let cache = &gstar_cache;
        let empty = HashSet::new();
        let recs: Vec<Option<CensusRecord>> = chunk.par_iter().map(|(i, g)| evaluate(*i, g, filter, cache.get(&g.graph.n()).unwrap_or(&empty))).collect();
        out.extend(recs.into_iter().flatten());
        chunk.clear();
    };
    for (i, g) in reader.enumerate() {
        chunk.push((i, g?));
        if chunk.len() == CHUNK {
            flush(&mut chunk, &mut out);
        }
    }
    flush(&mut chunk, &mut out);
    Ok(out)
}

/// Largest separator count among 3-connected quadrangulations of one
/// order, against the count that would be needed to reach the extremal
/// triangle number without a separating triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorBound {
    pub n: usize,
    pub graphs: usize,
    pub max_observed: Option<usize>,
    /// `f3(n) - 4(n - 2)`.
    pub required: i64,
}

impl SeparatorBound {
    /// Every observed count stays below the requirement (vacuous for an
    /// empty stream).
    pub fn below_required(&self) -> bool {
        self.max_observed.is_none_or(|m| (m as i64) < self.required)
    }
}

pub fn required_separators(n: usize) -> i64 {
    f3(n) as i64 - 4 * (n as i64 - 2)
}

pub fn quadrangulation_separator_bound<R: Read>(reader: PlanarCodeReader<R>, n: usize) -> Result<SeparatorBound, CensusError> {
    let recs = all_records(reader, n)?;
    Ok(SeparatorBound { n, graphs: recs.len(), max_observed: recs.iter().map(|r| r.1).max(), required: required_separators(n) })
}

/// `(canonical form, separator count)` of every graph, insisting on order `n`.
fn all_records<R: Read>(reader: PlanarCodeReader<R>, n: usize) -> Result<Vec<(CanonicalForm, usize)>, CensusError> {
    let mut out = Vec::new();
    let mut chunk = Vec::with_capacity(CHUNK);
    let flush = |chunk: &mut Vec<EmbeddedPlanarGraph>, out: &mut Vec<(CanonicalForm, usize)>| {
        let part: Vec<_> = chunk.par_iter().map(|g| (canonical_form(&g.graph), separator3_count(&g.graph))).collect();
        out.extend(part);
        chunk.clear();
    };
    for (i, g) in reader.enumerate() {
        let g = g?;
        if g.graph.n() != n {
            return Err(CensusError::MixedOrder { index: i, expected: n, found: g.graph.n() });
        }
        chunk.push(g);
        if chunk.len() == CHUNK {
            flush(&mut chunk, &mut out);
        }
    }
    flush(&mut chunk, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximiserReport {
    pub n: usize,
    pub graphs: usize,
    pub max_separators: Option<usize>,
    /// Canonical forms of the graphs attaining the maximum.
    pub argmax: Vec<CanonicalForm>,
    /// Separator count shared by the capped-strip family at this order, if
    /// it is defined and constant there.
    pub gstar_value: Option<usize>,
    pub gstar_members: usize,
    /// All maximisers belong to the capped-strip family.
    pub argmax_in_gstar: bool,
    /// All capped-strip members are maximisers.
    pub gstar_in_argmax: bool,
}

pub fn maximiser_report<R: Read>(reader: PlanarCodeReader<R>, n: usize) -> Result<MaximiserReport, CensusError> {
    let recs = all_records(reader, n)?;
    let max = recs.iter().map(|r| r.1).max();
    let mut argmax: Vec<CanonicalForm> = recs.iter().filter(|r| Some(r.1) == max).map(|r| r.0.clone()).collect();
    argmax.sort();
    argmax.dedup();
    let gstar = gen_gstar(n).unwrap_or_default();
    let values: Vec<usize> = gstar.iter().map(separator3_count).collect();
    let gstar_value = values.first().copied().filter(|v| values.iter().all(|x| x == v));
    let forms: HashSet<CanonicalForm> = gstar.iter().map(canonical_form).collect();
    let argmax_set: HashSet<&CanonicalForm> = argmax.iter().collect();
    Ok(MaximiserReport {
        n,
        graphs: recs.len(),
        max_separators: max,
        argmax_in_gstar: !gstar.is_empty() && argmax.iter().all(|c| forms.contains(c)),
        gstar_in_argmax: !gstar.is_empty() && forms.iter().all(|c| argmax_set.contains(c)),
        argmax,
        gstar_value,
        gstar_members: gstar.len(),
    })
}

/// Checks the cube-uniqueness claim without external input: all graphs on
/// `n ≤ 8` vertices with `2n - 4` edges that are planar, bipartite and
/// 3-connected, up to isomorphism. Edges are chosen across every
/// bipartition with vertex 0 on the first side.
pub fn brute_force_quadrangulations(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "brute force is limited to 8 vertices");
    if n < 4 {
        return Vec::new();
    }
    let m = 2 * n - 4;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for side in 0u32..1 << (n - 1) {
        let a = (side << 1) as u64;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| (a >> u & 1) != (a >> v & 1)).collect();
        if pairs.len() < m {
            continue;
        }
        crate::connectivity::for_each_subset(pairs.len(), m, |mask| {
            let edges: Vec<(usize, usize)> = crate::graph::BitIter(mask).map(|i| pairs[i]).collect();
            let g = Graph::from_edges(n, &edges).expect("small");
            if g.degree_sequence().iter().all(|&d| d >= 3) && is_k_connected(&g, 3) && crate::planarity::is_planar(&g) && seen.insert(canonical_form(&g)) {
                out.push(g);
            }
            true
        });
    }
    out
}

/// Vertex sets for display.
pub fn separating_triples(g: &Graph) -> Vec<VertexSet> {
    crate::connectivity::nontrivial_separators(g, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cube;
    use crate::planarity::planarity_test;

    fn embedded(g: &Graph) -> EmbeddedPlanarGraph {
        EmbeddedPlanarGraph::new(g.clone(), planarity_test(g).unwrap().rotation).unwrap()
    }

    #[test]
    fn cube_round_trip() {
        let c = embedded(&cube());
        for header in [true, false] {
            let bytes = write_planar_code([&c], header);
            let mut r = read_planar_code(bytes.as_slice());
            let back: Vec<_> = r.by_ref().collect::<Result<_, _>>().unwrap();
            assert_eq!(r.had_header(), header);
            assert_eq!(back.len(), 1);
            assert_eq!(back[0].graph.n(), 8);
            assert_eq!(back[0].graph.m(), 12);
            assert_eq!(back[0].face_profile(), BTreeMap::from([(4, 6)]));
            assert_eq!(write_planar_code(&back, header), bytes);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let c = embedded(&cube());
        let mut bytes = write_planar_code([&c, &c], true);
        bytes.truncate(bytes.len() - 3);
        let res: Vec<_> = read_planar_code(bytes.as_slice()).collect();
        assert_eq!(res.len(), 2);
        assert!(res[0].is_ok());
        let first = 15 + (1 + 8 + 24) as u64;
        assert!(matches!(res[1], Err(PlanarCodeError::Truncated { offset }) if offset > first));

        let bad = [3u8, 2, 3, 0, 1, 9, 0, 1, 2, 0];
        assert!(matches!(read_planar_code(&bad[..]).next(), Some(Err(PlanarCodeError::OutOfRange { offset: 5, value: 9, n: 3 }))));
        let asym = [3u8, 2, 3, 0, 1, 0, 2, 0];
        assert!(matches!(read_planar_code(&asym[..]).next(), Some(Err(PlanarCodeError::Invalid { offset: 0, .. }))));
        assert!(read_planar_code(&[][..]).next().is_none());
    }

    #[test]
    fn separator_counts_agree() {
        for g in [cube(), crate::graph::complete(6).unwrap(), crate::graph::cycle(7).unwrap()] {
            assert_eq!(separator3_count(&g), crate::connectivity::count_nontrivial_separators(&g, 3));
        }
    }

    #[test]
    fn cube_is_the_only_small_quadrangulation() {
        let qs = brute_force_quadrangulations(8);
        assert_eq!(qs.len(), 1);
        assert!(crate::canon::is_isomorphic(&qs[0], &cube()));
        assert!(brute_force_quadrangulations(7).is_empty());
    }
}
