//! Framed 4-valent graphs, rotating circuits and medial graphs.
//!
//! Half-edges are dense: vertex `v` owns half-edges `4v..4v+4` in cyclic
//! order, and half-edges two slots apart are opposite. The only stored data
//! is the edge matching `mate`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chord_diagram::{FramedChordDiagram, Label, Sign};

pub type HalfEdge = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} has {found} half-edges, expected 4")]
    WrongValence { vertex: usize, found: usize },
    #[error("half-edge {0} belongs to more than one vertex")]
    SharedHalfEdge(usize),
    #[error("half-edge {0} is not in any edge")]
    DanglingHalfEdge(usize),
    #[error("half-edge {0} is in more than one edge")]
    HalfEdgeInTwoEdges(usize),
    #[error("edge uses half-edge {0}, which belongs to no vertex")]
    UnknownHalfEdge(usize),
    #[error("edge joins half-edge {0} to itself")]
    DegenerateEdge(usize),
    #[error("graph is disconnected (vertex {0} unreachable from vertex 0)")]
    Disconnected(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("circuit does not match the graph: {0}")]
    MismatchedCircuit(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dart {0} is used inconsistently by the plane graph")]
    BadDart(usize),
    #[error("rotation system is not planar: V - E + F = {0}")]
    NotPlanar(i64),
}

/// Checks the raw incidence data of a framed 4-graph. Half-edge ids are
/// arbitrary; each vertex lists its four half-edges in cyclic order.
pub fn validate(vertices: &[Vec<usize>], edges: &[(usize, usize)]) -> Result<(), GraphError> {
    FramedFourGraph::new(vertices, edges).map(|_| ())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FramedFourGraph {
    mate: Vec<HalfEdge>,
}

impl FramedFourGraph {
    /// Builds a graph from arbitrary half-edge ids, renumbering them densely
    /// in vertex order.
    pub fn new(vertices: &[Vec<usize>], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut dense: HashMap<usize, HalfEdge> = HashMap::new();
        for (v, hs) in vertices.iter().enumerate() {
            if hs.len() != 4 {
                return Err(GraphError::WrongValence { vertex: v, found: hs.len() });
            }
            for (slot, &h) in hs.iter().enumerate() {
                if dense.insert(h, 4 * v + slot).is_some() {
                    return Err(GraphError::SharedHalfEdge(h));
                }
            }
        }
        let mut mate = vec![usize::MAX; 4 * vertices.len()];
        for &(x, y) in edges {
            if x == y {
                return Err(GraphError::DegenerateEdge(x));
            }
            let dx = *dense.get(&x).ok_or(GraphError::UnknownHalfEdge(x))?;
            let dy = *dense.get(&y).ok_or(GraphError::UnknownHalfEdge(y))?;
            for (d, name) in [(dx, x), (dy, y)] {
                if mate[d] != usize::MAX {
                    return Err(GraphError::HalfEdgeInTwoEdges(name));
                }
            }
            mate[dx] = dy;
            mate[dy] = dx;
        }
        if let Some(d) = mate.iter().position(|&m| m == usize::MAX) {
            return Err(GraphError::DanglingHalfEdge(vertices[d / 4][d % 4]));
        }
        let g = FramedFourGraph { mate };
        g.check_connected()?;
        Ok(g)
    }

    /// Builds a graph from a dense matching (`mate[mate[h]] == h`).
    pub fn from_mates(mate: Vec<HalfEdge>) -> Result<Self, GraphError> {
        if mate.len() % 4 != 0 {
            return Err(GraphError::WrongValence { vertex: mate.len() / 4, found: mate.len() % 4 });
        }
        let n = mate.len() / 4;
        let vertices: Vec<Vec<usize>> = (0..n).map(|v| (4 * v..4 * v + 4).collect()).collect();
        let mut edges = Vec::new();
        for (h, &m) in mate.iter().enumerate() {
            if m >= mate.len() {
                return Err(GraphError::UnknownHalfEdge(m));
            }
            if mate[m] != h {
                return Err(GraphError::HalfEdgeInTwoEdges(m));
            }
            if h <= m {
                edges.push((h, m));
            }
        }
        Self::new(&vertices, &edges)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let n = self.vertex_count();
        if n == 0 {
            return Ok(());
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in 4 * v..4 * v + 4 {
                let w = self.mate[h] / 4;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(GraphError::Disconnected(v)),
            None => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len() / 4
    }

    pub fn edge_count(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.mate.len()
    }

    #[inline]
    pub fn mate(&self, h: HalfEdge) -> HalfEdge {
        self.mate[h]
    }

    #[inline]
    pub fn vertex_of(h: HalfEdge) -> usize {
        h / 4
    }

    #[inline]
    pub fn opposite(h: HalfEdge) -> HalfEdge {
        (h & !3) | ((h + 2) & 3)
    }

    /// Edges as `(x, y)` with `x < y`, ascending.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        (0..self.mate.len()).filter(|&h| h < self.mate[h]).map(|h| (h, self.mate[h])).collect()
    }

    /// Partner of `h` at its vertex under one of the two rotating pairings:
    /// `false` pairs slots {0,1},{2,3}; `true` pairs {1,2},{3,0}.
    #[inline]
    fn partner(h: HalfEdge, pairing: bool) -> HalfEdge {
        let slot = h & 3;
        let other = if pairing { 3 - slot } else { slot ^ 1 };
        (h & !3) | other
    }

    /// Closed walks obtained from a fixed rotating pairing at every vertex.
    /// Each walk is a list of `(out, in)` edge traversals.
    fn walks(&self, pairing: &[bool]) -> Vec<Vec<(HalfEdge, HalfEdge)>> {
        let mut used = vec![false; self.mate.len()];
        let mut walks = Vec::new();
        for start in 0..self.mate.len() {
            if used[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut out = start;
            loop {
                let inc = self.mate[out];
                used[out] = true;
                used[inc] = true;
                walk.push((out, inc));
                out = Self::partner(inc, pairing[inc / 4]);
                if out == start {
                    break;
                }
            }
            walks.push(walk);
        }
        walks
    }

    /// The deterministic rotating circuit: every vertex starts with the
    /// pairing that joins its lowest half-edge to the next one, then walks
    /// are merged at the lowest vertex shared by two walks until one remains.
    pub fn rotating_circuit(&self) -> Result<RotatingCircuit, GraphError> {
        self.rotating_circuit_from(&vec![false; self.vertex_count()])
    }

    /// Same merging procedure from an arbitrary initial pairing choice.
    pub fn rotating_circuit_from(&self, initial: &[bool]) -> Result<RotatingCircuit, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        assert_eq!(initial.len(), self.vertex_count(), "one pairing choice per vertex");
        let mut pairing = initial.to_vec();
        loop {
            let walks = self.walks(&pairing);
            if walks.len() == 1 {
                let steps = walks.into_iter().next().unwrap();
                return Ok(RotatingCircuit { steps });
            }
            let mut walk_of = vec![0usize; self.mate.len()];
            for (w, walk) in walks.iter().enumerate() {
                for &(o, i) in walk {
                    walk_of[o] = w;
                    walk_of[i] = w;
                }
            }
            // the two passages through v are {4v, partner(4v)} and the rest
            let v = (0..self.vertex_count())
                .find(|&v| {
                    let h = 4 * v;
                    let other = (0..4).map(|s| h + s).find(|&x| x != h && x != Self::partner(h, pairing[v])).unwrap();
                    walk_of[h] != walk_of[other]
                })
                .expect("a connected graph with several walks has a shared vertex");
            pairing[v] = !pairing[v];
        }
    }

    /// Orientation with two opposite outgoing and two opposite incoming
    /// half-edges at every vertex, as a list of directed edges `(out, in)`.
    pub fn source_target(&self) -> Option<Vec<(HalfEdge, HalfEdge)>> {
        // polarity true = outgoing
        let mut pol: Vec<Option<bool>> = vec![None; self.mate.len()];
        for root in 0..self.mate.len() {
            if pol[root].is_some() {
                continue;
            }
            pol[root] = Some(true);
            let mut queue = VecDeque::from([root]);
            while let Some(h) = queue.pop_front() {
                let p = pol[h].unwrap();
                let base = h & !3;
                let same_pair = h % 2;
                let mut constraints = vec![(self.mate[h], !p)];
                for s in 0..4 {
                    constraints.push((base + s, if s % 2 == same_pair { p } else { !p }));
                }
                for (x, want) in constraints {
                    match pol[x] {
                        None => {
                            pol[x] = Some(want);
                            queue.push_back(x);
                        }
                        Some(have) if have != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(
            self.edges()
                .into_iter()
                .map(|(x, y)| if pol[x] == Some(true) { (x, y) } else { (y, x) })
                .collect(),
        )
    }

    pub fn source_target_check(&self) -> bool {
        self.source_target().is_some()
    }

    /// Framed chord diagram of a rotating circuit. Chord `v + 1` records the
    /// two passages through vertex `v`; it is positive when the half-edges
    /// leaving the vertex on the two passages are opposite.
    pub fn chord_diagram_of(&self, circuit: &RotatingCircuit) -> Result<FramedChordDiagram, GraphError> {
        circuit.check(self)?;
        let steps = &circuit.steps;
        let mut first_out: Vec<Option<HalfEdge>> = vec![None; self.vertex_count()];
        let mut signs = BTreeMap::new();
        let mut word = Vec::with_capacity(steps.len());
        for i in 0..steps.len() {
            let inc = steps[i].1;
            let out = steps[(i + 1) % steps.len()].0;
            let v = inc / 4;
            let label = v as Label + 1;
            word.push(label);
            match first_out[v] {
                None => first_out[v] = Some(out),
                Some(o) => {
                    let sign = if out == Self::opposite(o) { Sign::Pos } else { Sign::Neg };
                    signs.insert(label, sign);
                }
            }
        }
        Ok(FramedChordDiagram::new(word, signs).expect("every vertex is visited twice"))
    }

    /// Chord diagram of the deterministic circuit.
    pub fn chord_diagram(&self) -> Result<FramedChordDiagram, GraphError> {
        self.chord_diagram_of(&self.rotating_circuit()?)
    }

    /// A graph realising the diagram: chord `i` (by index) becomes vertex
    /// `i`, entered at slot 0 and left at slot 1 on the first passage, and
    /// left through slot 3 (positive) or slot 2 (negative) on the second.
    pub fn from_chord_diagram(d: &FramedChordDiagram) -> FramedFourGraph {
        let ends = d.endpoints();
        let signs = d.sign_vec();
        let n = d.word().len();
        let mut passage = vec![(0usize, 0usize); n];
        for (i, &(a, b)) in ends.iter().enumerate() {
            passage[a] = (4 * i, 4 * i + 1);
            passage[b] = match signs[i] {
                Sign::Pos => (4 * i + 2, 4 * i + 3),
                Sign::Neg => (4 * i + 3, 4 * i + 2),
            };
        }
        let mut mate = vec![0; 4 * ends.len()];
        for p in 0..n {
            let out = passage[p].1;
            let inc = passage[(p + 1) % n].0;
            mate[out] = inc;
            mate[inc] = out;
        }
        FramedFourGraph { mate }
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.vertex_count() {
            let h = 4 * v;
            s.push_str(&format!("v{v}: h{} h{} h{} h{}\n", h, h + 1, h + 2, h + 3));
        }
        for (x, y) in self.edges() {
            s.push_str(&format!("e: h{x} h{y}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        text.parse()
    }
}

impl fmt::Debug for FramedFourGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FramedFourGraph{:?}", self.edges())
    }
}

fn parse_half_edge(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.strip_prefix('h')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| GraphError::Parse { line, msg: format!("expected h<number>, got {tok:?}") })
}

impl FromStr for FramedFourGraph {
    type Err = GraphError;

    /// `v<i>: h<a> h<b> h<c> h<d>` per vertex, `e: h<x> h<y>` per edge,
    /// `#` starts a comment. Vertices are ordered by `i`.
    fn from_str(text: &str) -> Result<Self, GraphError> {
        let mut vertices: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut edges = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (head, rest) = body
                .split_once(':')
                .ok_or_else(|| GraphError::Parse { line, msg: "missing ':'".into() })?;
            let hs = rest.split_whitespace().map(|t| parse_half_edge(t, line)).collect::<Result<Vec<_>, _>>()?;
            let head = head.trim();
            if head == "e" {
                if hs.len() != 2 {
                    return Err(GraphError::Parse { line, msg: format!("edge needs 2 half-edges, got {}", hs.len()) });
                }
                edges.push((hs[0], hs[1]));
            } else if let Some(id) = head.strip_prefix('v').and_then(|i| i.parse::<usize>().ok()) {
                if vertices.insert(id, hs).is_some() {
                    return Err(GraphError::Parse { line, msg: format!("vertex v{id} defined twice") });
                }
            } else {
                return Err(GraphError::Parse { line, msg: format!("unknown line kind {head:?}") });
            }
        }
        let vs: Vec<Vec<usize>> = vertices.into_values().collect();
        FramedFourGraph::new(&vs, &edges)
    }
}

/// A closed walk through every edge once, turning (never going straight) at
/// every vertex. Stored as `(out, in)` edge traversals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotatingCircuit {
    steps: Vec<(HalfEdge, HalfEdge)>,
}

impl RotatingCircuit {
    pub fn new(g: &FramedFourGraph, steps: Vec<(HalfEdge, HalfEdge)>) -> Result<Self, GraphError> {
        let c = RotatingCircuit { steps };
        c.check(g)?;
        Ok(c)
    }

    pub fn steps(&self) -> &[(HalfEdge, HalfEdge)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices in visiting order.
    pub fn vertex_sequence(&self) -> Vec<usize> {
        self.steps.iter().map(|&(_, i)| i / 4).collect()
    }

    fn check(&self, g: &FramedFourGraph) -> Result<(), GraphError> {
        let bad = |m: String| Err(GraphError::MismatchedCircuit(m));
        if self.steps.len() != g.edge_count() {
            return bad(format!("{} traversals for {} edges", self.steps.len(), g.edge_count()));
        }
        let mut used = vec![false; g.half_edge_count()];
        for (i, &(out, inc)) in self.steps.iter().enumerate() {
            if out >= g.half_edge_count() || g.mate(out) != inc {
                return bad(format!("step {i} ({out}, {inc}) is not an edge"));
            }
            if used[out] || used[inc] {
                return bad(format!("edge ({out}, {inc}) traversed twice"));
            }
            used[out] = true;
            used[inc] = true;
            let next_out = self.steps[(i + 1) % self.steps.len()].0;
            if next_out / 4 != inc / 4 || next_out == inc || next_out == FramedFourGraph::opposite(inc) {
                return bad(format!("step {i} does not turn at vertex {}", inc / 4));
            }
        }
        Ok(())
    }
}

/// A connected graph with a rotation system (counter-clockwise dart order at
/// each vertex). Darts are dense `0..2E`; `edges[e]` holds the two darts of
/// edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl PlaneGraph {
    pub fn new(rotation: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let darts = 2 * edges.len();
        let mut at = vec![usize::MAX; darts];
        for (v, ds) in rotation.iter().enumerate() {
            for &d in ds {
                if d >= darts || at[d] != usize::MAX {
                    return Err(GraphError::BadDart(d));
                }
                at[d] = v;
            }
        }
        let mut in_edge = vec![false; darts];
        for &(a, b) in &edges {
            for d in [a, b] {
                if d >= darts || in_edge[d] {
                    return Err(GraphError::BadDart(d));
                }
                in_edge[d] = true;
            }
        }
        if let Some(d) = at.iter().position(|&v| v == usize::MAX) {
            return Err(GraphError::BadDart(d));
        }
        let p = PlaneGraph { rotation, edges };
        if p.rotation.is_empty() {
            return Err(GraphError::Empty);
        }
        // connectivity over vertices
        let mut seen = vec![false; p.rotation.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let twin = p.twins();
        while let Some(v) = stack.pop() {
            for &d in &p.rotation[v] {
                let w = at[twin[d]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::Disconnected(v));
        }
        let euler = p.rotation.len() as i64 - p.edges.len() as i64 + p.faces().len() as i64;
        if euler != 2 {
            return Err(GraphError::NotPlanar(euler));
        }
        Ok(p)
    }

    /// The cycle C_n drawn in the plane.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        // edge i joins vertex i (dart 2i) to vertex i+1 (dart 2i+1)
        let rotation = (0..n).map(|v| vec![2 * v, (2 * (v + n - 1) + 1) % (2 * n)]).collect();
        let edges = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::new(rotation, edges)
    }

    /// One vertex with one loop.
    pub fn single_loop() -> Self {
        Self::new(vec![vec![0, 1]], vec![(0, 1)]).expect("a plane loop")
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn edge_darts(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn twins(&self) -> Vec<usize> {
        let mut twin = vec![0; 2 * self.edges.len()];
        for &(a, b) in &self.edges {
            twin[a] = b;
            twin[b] = a;
        }
        twin
    }

    /// (next, prev) in the rotation for every dart.
    fn neighbours(&self) -> (Vec<usize>, Vec<usize>) {
        let n = 2 * self.edges.len();
        let (mut next, mut prev) = (vec![0; n], vec![0; n]);
        for ds in &self.rotation {
            for (i, &d) in ds.iter().enumerate() {
                let nx = ds[(i + 1) % ds.len()];
                next[d] = nx;
                prev[nx] = d;
            }
        }
        (next, prev)
    }

    /// Face boundaries traced by `d -> next(twin(d))`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let twin = self.twins();
        let (next, _) = self.neighbours();
        let mut seen = vec![false; twin.len()];
        let mut faces = Vec::new();
        for start in 0..twin.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = next[twin[d]];
            }
            faces.push(face);
        }
        faces
    }

    /// Medial graph: one vertex per edge, one medial edge per corner.
    ///
    /// For edge `e` with darts `(a, b)` the medial vertex has half-edges, in
    /// cyclic order, at the corners `(prev b, b)`, `(a, next a)`,
    /// `(prev a, a)`, `(b, next b)`; the two strands crossing at the edge
    /// midpoint are the opposite pairs.
    pub fn medial(&self) -> Result<FramedFourGraph, GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut toward_next = vec![0; 2 * self.edges.len()];
        let mut toward_prev = vec![0; 2 * self.edges.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            toward_prev[b] = 4 * e;
            toward_next[a] = 4 * e + 1;
            toward_prev[a] = 4 * e + 2;
            toward_next[b] = 4 * e + 3;
        }
        let (next, _) = self.neighbours();
        let mut mate = vec![0; 4 * self.edges.len()];
        for d in 0..next.len() {
            let (x, y) = (toward_next[d], toward_prev[next[d]]);
            mate[x] = y;
            mate[y] = x;
        }
        FramedFourGraph::from_mates(mate)
    }

    /// Inserts a new edge whose two darts go right after `after_a` and
    /// `after_b` in their rotations (after `after_a`'s new dart when both
    /// anchors coincide). Returns the new graph unvalidated-for-planarity
    /// errors included.
    pub fn with_edge_after(&self, after_a: usize, after_b: usize) -> Result<PlaneGraph, GraphError> {
        let (da, db) = (2 * self.edges.len(), 2 * self.edges.len() + 1);
        let mut rotation = self.rotation.clone();
        insert_after(&mut rotation, after_a, da);
        insert_after(&mut rotation, if after_a == after_b { da } else { after_b }, db);
        let mut edges = self.edges.clone();
        edges.push((da, db));
        PlaneGraph::new(rotation, edges)
    }

    /// Adds a pendant edge to a new vertex, inserted after `after` (or at an
    /// isolated vertex when the graph has no edges yet).
    pub fn with_leaf_after(&self, vertex: usize, after: Option<usize>) -> Result<PlaneGraph, GraphError> {
        let (da, db) = (2 * self.edges.len(), 2 * self.edges.len() + 1);
        let mut rotation = self.rotation.clone();
        match after {
            Some(d) => insert_after(&mut rotation, d, da),
            None => rotation[vertex].push(da),
        }
        rotation.push(vec![db]);
        let mut edges = self.edges.clone();
        edges.push((da, db));
        PlaneGraph::new(rotation, edges)
    }

    /// Corners of each face: the dart after which a new dart may be inserted
    /// to land inside that face.
    pub fn face_corners(&self) -> Vec<Vec<usize>> {
        let twin = self.twins();
        // walking d -> next(twin d) passes the corner (twin d, next(twin d))
        self.faces().into_iter().map(|f| f.into_iter().map(|d| twin[d]).collect()).collect()
    }
}

fn insert_after(rotation: &mut [Vec<usize>], anchor: usize, dart: usize) {
    for ds in rotation.iter_mut() {
        if let Some(i) = ds.iter().position(|&d| d == anchor) {
            ds.insert(i + 1, dart);
            return;
        }
    }
    panic!("anchor dart {anchor} not found");
}

/// The single-vertex plane graph with no edges, as a starting point for
/// growth.
pub fn plane_point() -> PlaneGraph {
    PlaneGraph { rotation: vec![Vec::new()], edges: Vec::new() }
}
