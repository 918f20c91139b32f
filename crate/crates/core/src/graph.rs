//! Finite multigraphs, voltage graphs over `Z^d`, their finite covers and
//! rectangular restrictions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::algebra::{CoeffField, IntMatrix, LaurentMatrix, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("rank {0} not supported; expected 0, 1 or 2")]
    BadRank(usize),
    #[error("edge {edge:?} has {got} voltage entries, expected {expected}")]
    VoltageArity { edge: String, expected: usize, got: usize },
    #[error("operation needs rank {expected}, graph has rank {got}")]
    RankMismatch { expected: String, got: usize },
    #[error("sublattice has index zero")]
    ZeroIndex,
    #[error("bad sublattice spec {0:?}; expected n or a,b,c,d")]
    BadSublattice(String),
    #[error("rectangle is empty")]
    EmptyRectangle,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

/// Oriented edge between vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Finite multigraph with named vertices and edges, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_ix: HashMap<String, usize>,
    edge_ix: HashMap<String, usize>,
}

impl FiniteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertex names and `(name, tail, head)` triples.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        let mut g = FiniteGraph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (e, t, h) in edges {
            g.add_edge_by_name(e, t, h)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if self.vertex_ix.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_ix.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn add_edge(&mut self, name: &str, tail: usize, head: usize) -> Result<usize, GraphError> {
        if self.edge_ix.contains_key(name) {
            return Err(GraphError::DuplicateEdge(name.to_string()));
        }
        for v in [tail, head] {
            if v >= self.vertices.len() {
                return Err(GraphError::OutOfRange(v));
            }
        }
        let i = self.edges.len();
        self.edges.push(Edge { name: name.to_string(), tail, head });
        self.edge_ix.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn add_edge_by_name(&mut self, name: &str, tail: &str, head: &str) -> Result<usize, GraphError> {
        let t = self.vertex_index(tail).ok_or_else(|| GraphError::UnknownVertex(tail.to_string()))?;
        let h = self.vertex_index(head).ok_or_else(|| GraphError::UnknownVertex(head.to_string()))?;
        self.add_edge(name, t, h)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_ix.get(name).copied()
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edge_ix.get(name).copied()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Degree with each loop counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.tail == v) as usize + (e.head == v) as usize).sum()
    }

    /// `|V| x |E|`: +1 at the head, -1 at the tail; loop columns vanish.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut q = IntMatrix::zeros(self.num_vertices(), self.num_edges());
        for (j, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                q[(e.head, j)] += 1;
                q[(e.tail, j)] -= 1;
            }
        }
        q
    }

    /// `D - A`, where a loop adds 2 to both the degree and the adjacency diagonal.
    pub fn laplacian(&self) -> IntMatrix {
        let mut l = IntMatrix::zeros(self.num_vertices(), self.num_vertices());
        for e in &self.edges {
            if !e.is_loop() {
                l[(e.tail, e.tail)] += 1;
                l[(e.head, e.head)] += 1;
                l[(e.tail, e.head)] -= 1;
                l[(e.head, e.tail)] -= 1;
            }
        }
        l
    }

    /// Vertex sets of the components, each ascending, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Full subgraph on `verts`, in the given vertex order; edge order kept.
    pub fn induced(&self, verts: &[usize]) -> FiniteGraph {
        let mut map = vec![usize::MAX; self.num_vertices()];
        let mut g = FiniteGraph::new();
        for &v in verts {
            map[v] = g.add_vertex(&self.vertices[v]).expect("distinct names");
        }
        for e in &self.edges {
            if map[e.tail] != usize::MAX && map[e.head] != usize::MAX {
                g.add_edge(&e.name, map[e.tail], map[e.head]).expect("distinct names");
            }
        }
        g
    }

    /// Same graph with edge `e` reversed.
    pub fn reverse_edge(&self, e: usize) -> FiniteGraph {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.tail, &mut edge.head);
        g
    }

    /// Canonical string for isomorphism-free comparisons: sorted degree
    /// sequence plus sorted multiset of sorted adjacency-multiplicity rows.
    pub fn degree_adjacency_certificate(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.num_vertices();
        let mut degs: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut rows: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = self
                    .edges
                    .iter()
                    .filter_map(|e| match (e.tail == v, e.head == v) {
                        (true, true) => Some(usize::MAX),
                        (true, false) => Some(self.degree(e.head)),
                        (false, true) => Some(self.degree(e.tail)),
                        _ => None,
                    })
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        degs.sort_unstable();
        rows.sort();
        (degs, rows)
    }
}

/// Quotient graph with `Z^d` voltages, `d` in `{0, 1, 2}`.
///
/// An edge with voltage `s` runs from the lift of its tail in the base cell to
/// the lift of its head translated by `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageGraph {
    base: FiniteGraph,
    rank: usize,
    voltages: Vec<[i64; 2]>,
}

impl VoltageGraph {
    pub fn new(base: FiniteGraph, rank: usize, voltages: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        if rank > 2 {
            return Err(GraphError::BadRank(rank));
        }
        if voltages.len() != base.num_edges() {
            return Err(GraphError::VoltageArity {
                edge: format!("<{} edges>", base.num_edges()),
                expected: base.num_edges(),
                got: voltages.len(),
            });
        }
        let mut vs = Vec::with_capacity(voltages.len());
        for (e, v) in base.edges().iter().zip(&voltages) {
            if v.len() != rank {
                return Err(GraphError::VoltageArity { edge: e.name.clone(), expected: rank, got: v.len() });
            }
            let mut a = [0i64; 2];
            a[..rank].copy_from_slice(v);
            vs.push(a);
        }
        Ok(VoltageGraph { base, rank, voltages: vs })
    }

    /// All voltages zero.
    pub fn trivial(base: FiniteGraph, rank: usize) -> Result<Self, GraphError> {
        let m = base.num_edges();
        Self::new(base, rank, vec![vec![0; rank]; m])
    }

    pub fn base(&self) -> &FiniteGraph {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn voltage(&self, e: usize) -> &[i64] {
        &self.voltages[e][..self.rank]
    }

    fn volt2(&self, e: usize) -> [i64; 2] {
        self.voltages[e]
    }

    /// Reverses edge `e`, negating its voltage; the periodic graph is unchanged.
    pub fn reverse_edge(&self, e: usize) -> VoltageGraph {
        let mut g = self.clone();
        g.base = self.base.reverse_edge(e);
        g.voltages[e] = [-self.voltages[e][0], -self.voltages[e][1]];
        g
    }

    /// Quotient with the vertices in `drop` removed.
    pub fn delete_vertices(&self, drop: &[usize]) -> VoltageGraph {
        let keep: Vec<usize> = (0..self.base.num_vertices()).filter(|v| !drop.contains(v)).collect();
        let sub = self.base.induced(&keep);
        let voltages = self
            .base
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| !drop.contains(&e.tail) && !drop.contains(&e.head))
            .map(|(i, _)| self.voltage(i).to_vec())
            .collect();
        VoltageGraph::new(sub, self.rank, voltages).expect("consistent arity")
    }

    /// `L(x) = D - A(x)` (or `L(x, y)`) over the integers.
    ///
    /// A loop of voltage `s` contributes `2 - x^s - x^-s` to its diagonal entry.
    pub fn laplacian_poly(&self) -> Result<LaurentMatrix, GraphError> {
        if self.rank == 0 {
            return Err(GraphError::RankMismatch { expected: "1 or 2".into(), got: 0 });
        }
        let z = CoeffField::Integers;
        let nv = self.rank;
        let n = self.base.num_vertices();
        let mut m = LaurentMatrix::zeros(n, n, nv, z);
        let mono = |s: [i64; 2], sign: i64| {
            LaurentPoly::monomial(BigInt::from(sign), (s[0], s[1]), nv, z)
        };
        let add = |m: &mut LaurentMatrix, i: usize, j: usize, p: LaurentPoly| {
            let v = m.get(i, j) + &p;
            m.set(i, j, v);
        };
        for (k, e) in self.base.edges().iter().enumerate() {
            let s = self.volt2(k);
            let neg = [-s[0], -s[1]];
            add(&mut m, e.tail, e.tail, LaurentPoly::constant(1, nv, z));
            add(&mut m, e.head, e.head, LaurentPoly::constant(1, nv, z));
            add(&mut m, e.tail, e.head, mono(s, -1));
            add(&mut m, e.head, e.tail, mono(neg, -1));
        }
        Ok(m)
    }

    /// The finite cover `G_Λ`, coset-major: vertex `v@c` has index `c * n + v`,
    /// edge `e@c` has index `c * m + e`.
    pub fn cover_graph(&self, lam: &SublatticeSpec) -> Result<FiniteGraph, GraphError> {
        let lattice = lam.reduced(self.rank)?;
        let cosets = lattice.cosets();
        let n = self.base.num_vertices();
        let mut g = FiniteGraph::new();
        for c in &cosets {
            for v in self.base.vertices() {
                g.add_vertex(&format!("{v}@{}", lattice.label(c)))?;
            }
        }
        for (ci, c) in cosets.iter().enumerate() {
            for (k, e) in self.base.edges().iter().enumerate() {
                let s = self.volt2(k);
                let target = lattice.coset_index(&[c[0] + s[0], c[1] + s[1]]);
                g.add_edge(
                    &format!("{}@{}", e.name, lattice.label(c)),
                    ci * n + e.tail,
                    target * n + e.head,
                )?;
            }
        }
        Ok(g)
    }

    /// Full subgraph of the periodic graph on translates in `rect`, ordered
    /// translate-major with translates in lexicographic order.
    pub fn restriction_subgraph(&self, rect: &RectangleSpec) -> Result<FiniteGraph, GraphError> {
        let cells = rect.cells(self.rank)?;
        let n = self.base.num_vertices();
        let index: HashMap<[i64; 2], usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut g = FiniteGraph::new();
        for c in &cells {
            for v in self.base.vertices() {
                g.add_vertex(&format!("{v}@{}", cell_label(c, self.rank)))?;
            }
        }
        for (ci, c) in cells.iter().enumerate() {
            for (k, e) in self.base.edges().iter().enumerate() {
                let s = self.volt2(k);
                if let Some(&cj) = index.get(&[c[0] + s[0], c[1] + s[1]]) {
                    g.add_edge(
                        &format!("{}@{}", e.name, cell_label(c, self.rank)),
                        ci * n + e.tail,
                        cj * n + e.head,
                    )?;
                }
            }
        }
        Ok(g)
    }

    /// Edges of the periodic graph leaving `rect` from a translate inside it.
    pub fn wrapping_edge_count(&self, rect: &RectangleSpec) -> Result<usize, GraphError> {
        let cells = rect.cells(self.rank)?;
        let inside: std::collections::HashSet<[i64; 2]> = cells.iter().copied().collect();
        let mut count = 0;
        for c in &cells {
            for k in 0..self.base.num_edges() {
                let s = self.volt2(k);
                if !inside.contains(&[c[0] + s[0], c[1] + s[1]]) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

fn cell_label(c: &[i64; 2], rank: usize) -> String {
    match rank {
        0 => "0".to_string(),
        1 => c[0].to_string(),
        _ => format!("{},{}", c[0], c[1]),
    }
}

/// Finite-index sublattice `Λ` of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SublatticeSpec {
    /// `nZ`.
    Cyclic(i64),
    /// Columns of `[[a, b], [c, d]]` generate `Λ ⊂ Z^2`.
    Plane([[i64; 2]; 2]),
}

impl SublatticeSpec {
    /// `n Z^2`.
    pub fn square(n: i64) -> Self {
        SublatticeSpec::Plane([[n, 0], [0, n]])
    }

    pub fn index(&self) -> Result<u64, GraphError> {
        let r = match self {
            SublatticeSpec::Cyclic(n) => n.unsigned_abs(),
            SublatticeSpec::Plane(m) => (m[0][0] as i128 * m[1][1] as i128
                - m[0][1] as i128 * m[1][0] as i128)
                .unsigned_abs() as u64,
        };
        if r == 0 {
            return Err(GraphError::ZeroIndex);
        }
        Ok(r)
    }

    fn reduced(&self, rank: usize) -> Result<ReducedLattice, GraphError> {
        self.index()?;
        match (self, rank) {
            (_, 0) => Ok(ReducedLattice { rank: 0, a: 1, b: 0, c: 1 }),
            (SublatticeSpec::Cyclic(n), 1) => Ok(ReducedLattice { rank: 1, a: n.abs(), b: 0, c: 1 }),
            (SublatticeSpec::Plane(m), 2) => {
                // Column operations bring the generators to (a, b), (0, c).
                let (p, q) = ((m[0][0], m[1][0]), (m[0][1], m[1][1]));
                let e = m[0][0].extended_gcd(&m[0][1]);
                let g = e.gcd;
                let u1 = (g, e.x * p.1 + e.y * q.1);
                let (k1, k2) = (m[0][0] / g, m[0][1] / g);
                // k2 * col1 - k1 * col2 has zero first coordinate.
                let c = (k2 * p.1 - k1 * q.1).abs();
                let (mut a, mut b) = (u1.0, u1.1);
                if a < 0 {
                    a = -a;
                    b = -b;
                }
                Ok(ReducedLattice { rank: 2, a, b: b.mod_floor(&c), c })
            }
            (SublatticeSpec::Cyclic(_), r) | (SublatticeSpec::Plane(_), r) => {
                Err(GraphError::RankMismatch { expected: self.rank_name(), got: r })
            }
        }
    }

    fn rank_name(&self) -> String {
        match self {
            SublatticeSpec::Cyclic(_) => "1".into(),
            SublatticeSpec::Plane(_) => "2".into(),
        }
    }
}

impl FromStr for SublatticeSpec {
    type Err = GraphError;

    /// `n` or row-major `a,b,c,d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadSublattice(s.to_string());
        let parts: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if parts.iter().any(|v| v.unsigned_abs() > 1 << 20) {
            return Err(bad());
        }
        let spec = match parts.as_slice() {
            [n] => SublatticeSpec::Cyclic(*n),
            [a, b, c, d] => SublatticeSpec::Plane([[*a, *b], [*c, *d]]),
            _ => return Err(bad()),
        };
        let r = spec.index()?;
        if r > 1 << 24 {
            return Err(bad());
        }
        Ok(spec)
    }
}

impl fmt::Display for SublatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublatticeSpec::Cyclic(n) => write!(f, "{n}"),
            SublatticeSpec::Plane(m) => write!(f, "{},{},{},{}", m[0][0], m[0][1], m[1][0], m[1][1]),
        }
    }
}

/// Lattice with basis `(a, b)`, `(0, c)`, `a, c > 0`, `0 <= b < c`.
/// Rank 1 uses `a` alone.
struct ReducedLattice {
    rank: usize,
    a: i64,
    b: i64,
    c: i64,
}

impl ReducedLattice {
    fn cosets(&self) -> Vec<[i64; 2]> {
        match self.rank {
            0 => vec![[0, 0]],
            1 => (0..self.a).map(|i| [i, 0]).collect(),
            _ => (0..self.a).flat_map(|i| (0..self.c).map(move |j| [i, j])).collect(),
        }
    }

    fn coset_index(&self, s: &[i64; 2]) -> usize {
        match self.rank {
            0 => 0,
            1 => s[0].mod_floor(&self.a) as usize,
            _ => {
                let i = s[0].mod_floor(&self.a);
                let q = (s[0] - i) / self.a;
                let j = (s[1] - q * self.b).mod_floor(&self.c);
                (i * self.c + j) as usize
            }
        }
    }

    fn label(&self, c: &[i64; 2]) -> String {
        cell_label(c, self.rank)
    }
}

/// Box `[0, n_1 - 1] x ... x [0, n_d - 1]` of translates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleSpec {
    pub sizes: Vec<usize>,
}

impl RectangleSpec {
    pub fn new(sizes: Vec<usize>) -> Self {
        RectangleSpec { sizes }
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cells(&self, rank: usize) -> Result<Vec<[i64; 2]>, GraphError> {
        if self.sizes.len() != rank || rank == 0 {
            return Err(GraphError::RankMismatch { expected: self.sizes.len().to_string(), got: rank });
        }
        if self.is_empty() {
            return Err(GraphError::EmptyRectangle);
        }
        Ok(match rank {
            1 => (0..self.sizes[0] as i64).map(|i| [i, 0]).collect(),
            _ => (0..self.sizes[0] as i64)
                .flat_map(|i| (0..self.sizes[1] as i64).map(move |j| [i, j]))
                .collect(),
        })
    }
}
