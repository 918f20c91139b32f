//! Plane graphs given by rotation systems: faces, Dehn colorings, medial
//! tracing and the residue basis of the bicycle space.
//!
//! Darts are numbered `2e` (tail end of edge `e`) and `2e + 1` (head end).
//! `σ` sends a dart to its counterclockwise successor at the same vertex and
//! the face permutation is `σ ∘ α`, where `α` swaps the two ends of an edge.
//! With this convention the face traced from a dart lies on its right.

mod medial;

pub use medial::{
    medial_components, medial_components_voltage, shank_basis, Crossing, MedialComponent,
    VoltageMedialReport,
};

use std::collections::VecDeque;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{CoeffField, Scalar};
use crate::graph::{FiniteGraph, VoltageGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("plane graphs need rank 0 or 1, got {0}")]
    Rank(usize),
    #[error("bad rotation system: {0}")]
    BadRotation(String),
    #[error("rotation system is not planar: component {component} has Euler characteristic {euler}")]
    NotPlanar { component: usize, euler: i64 },
    #[error("graph must be connected")]
    Disconnected,
    #[error("vertex coloring is not conservative (edge {0})")]
    NonConservative(String),
    #[error("face {0} out of range")]
    BadFace(usize),
    #[error("medial component {0} out of range")]
    BadComponent(usize),
    #[error("not an annulus embedding: {0}")]
    NotAnnulus(String),
    #[error("residues do not form a basis of the bicycle space")]
    ShankMismatch,
    #[error("coloring has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Which end of an edge a dart sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn token(self) -> &'static str {
        match self {
            End::Tail => "t",
            End::Head => "h",
        }
    }
}

pub fn dart(edge: usize, end: End) -> usize {
    2 * edge + (end == End::Head) as usize
}

pub fn dart_edge(d: usize) -> usize {
    d / 2
}

pub fn dart_end(d: usize) -> End {
    if d.is_multiple_of(2) {
        End::Tail
    } else {
        End::Head
    }
}

/// Boundary walk of one face as the darts whose right side it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<usize>,
}

/// Voltage graph of rank 0 or 1 with a counterclockwise rotation at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: VoltageGraph,
    rotation: Vec<Vec<usize>>,
    /// `(vertex, position in its rotation)` per dart.
    place: Vec<(usize, usize)>,
}

impl PlaneGraph {
    pub fn new(graph: VoltageGraph, rotation: Vec<Vec<usize>>) -> Result<Self, PlanarError> {
        if graph.rank() > 1 {
            return Err(PlanarError::Rank(graph.rank()));
        }
        let g = graph.base();
        if rotation.len() != g.num_vertices() {
            return Err(PlanarError::BadRotation(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                g.num_vertices()
            )));
        }
        let mut place = vec![(usize::MAX, 0); 2 * g.num_edges()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                let name = || format!("{}.{}", g.edge(dart_edge(d)).name, dart_end(d).token());
                if d >= place.len() {
                    return Err(PlanarError::BadRotation(format!("dart {d} does not exist")));
                }
                if place[d].0 != usize::MAX {
                    return Err(PlanarError::BadRotation(format!("{} listed twice", name())));
                }
                let e = g.edge(dart_edge(d));
                let owner = if dart_end(d) == End::Tail { e.tail } else { e.head };
                if owner != v {
                    return Err(PlanarError::BadRotation(format!(
                        "{} is not incident to {}",
                        name(),
                        g.vertex_name(v)
                    )));
                }
                place[d] = (v, i);
            }
        }
        if let Some(d) = place.iter().position(|p| p.0 == usize::MAX) {
            return Err(PlanarError::BadRotation(format!(
                "{}.{} missing from rotations",
                g.edge(dart_edge(d)).name,
                dart_end(d).token()
            )));
        }
        Ok(PlaneGraph { graph, rotation, place })
    }

    pub fn from_finite(g: FiniteGraph, rotation: Vec<Vec<usize>>) -> Result<Self, PlanarError> {
        let vg = VoltageGraph::trivial(g, 0).expect("rank 0");
        Self::new(vg, rotation)
    }

    pub fn graph(&self) -> &FiniteGraph {
        self.graph.base()
    }

    pub fn voltage_graph(&self) -> &VoltageGraph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn num_darts(&self) -> usize {
        self.place.len()
    }

    pub fn dart_vertex(&self, d: usize) -> usize {
        self.place[d].0
    }

    pub fn alpha(&self, d: usize) -> usize {
        d ^ 1
    }

    pub fn sigma(&self, d: usize) -> usize {
        let (v, i) = self.place[d];
        let rot = &self.rotation[v];
        rot[(i + 1) % rot.len()]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let (v, i) = self.place[d];
        let rot = &self.rotation[v];
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Voltage gained walking along the dart's edge away from its vertex.
    pub fn dart_voltage(&self, d: usize) -> i64 {
        if self.graph.rank() == 0 {
            return 0;
        }
        let s = self.graph.voltage(dart_edge(d))[0];
        match dart_end(d) {
            End::Tail => s,
            End::Head => -s,
        }
    }

    /// Faces: orbits of `σ ∘ α` started at the least unvisited dart, followed
    /// by one empty face per isolated vertex.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = vec![false; self.num_darts()];
        let mut out = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.sigma(self.alpha(d));
            }
            out.push(Face { darts });
        }
        for rot in &self.rotation {
            if rot.is_empty() {
                out.push(Face { darts: Vec::new() });
            }
        }
        out
    }

    /// Face index on the right of each dart.
    pub fn face_of_dart(&self, faces: &[Face]) -> Vec<usize> {
        let mut f = vec![0; self.num_darts()];
        for (i, face) in faces.iter().enumerate() {
            for &d in &face.darts {
                f[d] = i;
            }
        }
        f
    }

    /// `V - E + F` for each connected component, in component order.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        let g = self.graph();
        let comps = g.connected_components();
        let mut comp_of = vec![0; g.num_vertices()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut chi: Vec<i64> = comps.iter().map(|c| c.len() as i64).collect();
        for e in g.edges() {
            chi[comp_of[e.tail]] -= 1;
        }
        let faces = self.faces();
        for f in &faces {
            if let Some(&d) = f.darts.first() {
                chi[comp_of[self.dart_vertex(d)]] += 1;
            }
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            if rot.is_empty() {
                chi[comp_of[v]] += 1;
            }
        }
        chi
    }

    /// Every component is a sphere.
    pub fn check_planar(&self) -> Result<(), PlanarError> {
        for (component, euler) in self.euler_characteristics().into_iter().enumerate() {
            if euler != 2 {
                return Err(PlanarError::NotPlanar { component, euler });
            }
        }
        Ok(())
    }

    /// Net voltage around each face boundary.
    pub fn face_windings(&self, faces: &[Face]) -> Vec<i64> {
        faces
            .iter()
            .map(|f| f.darts.iter().map(|&d| self.dart_voltage(d)).sum())
            .collect()
    }

    /// Planar, and the face windings are either all zero or one `+1`, one
    /// `-1` and the rest zero: the two punctures of the annulus.
    pub fn check_annulus(&self) -> Result<(), PlanarError> {
        if self.graph.rank() != 1 {
            return Err(PlanarError::Rank(self.graph.rank()));
        }
        self.check_planar()?;
        let w = self.face_windings(&self.faces());
        let plus = w.iter().filter(|&&x| x == 1).count();
        let minus = w.iter().filter(|&&x| x == -1).count();
        let zero = w.iter().filter(|&&x| x == 0).count();
        let ok = zero == w.len() || (plus == 1 && minus == 1 && zero + 2 == w.len());
        if !ok {
            return Err(PlanarError::NotAnnulus(format!("face windings {w:?}")));
        }
        Ok(())
    }
}

/// Vertex and face colors satisfying the Dehn condition on every edge, with
/// the base face colored 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnColoring {
    pub field: CoeffField,
    pub base_face: usize,
    pub vertex: Vec<Scalar>,
    pub face: Vec<Scalar>,
}

/// Whether `α(head) + γ(left) = α(tail) + γ(right)` holds on every edge, with
/// sides taken relative to the edge's orientation.
pub fn is_dehn_coloring(pg: &PlaneGraph, dc: &DehnColoring) -> bool {
    let f = dc.field;
    let faces = pg.faces();
    let fod = pg.face_of_dart(&faces);
    if dc.face.len() != faces.len() || dc.vertex.len() != pg.graph().num_vertices() {
        return false;
    }
    pg.graph().edges().iter().enumerate().all(|(e, edge)| {
        let right = fod[dart(e, End::Tail)];
        let left = fod[dart(e, End::Head)];
        f.add(&dc.vertex[edge.head], &dc.face[left]) == f.add(&dc.vertex[edge.tail], &dc.face[right])
    }) && dc.face[dc.base_face].is_zero()
}

/// Integrates a conservative vertex coloring over the dual graph from the
/// base face. Crossing from the right of dart `d` to its left adds
/// `α(vertex(d)) - α(vertex(α d))`.
pub fn dehn_extend(
    pg: &PlaneGraph,
    field: CoeffField,
    alpha: &[Scalar],
    base_face: usize,
) -> Result<DehnColoring, PlanarError> {
    let g = pg.graph();
    if alpha.len() != g.num_vertices() {
        return Err(PlanarError::LengthMismatch { expected: g.num_vertices(), got: alpha.len() });
    }
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    let faces = pg.faces();
    if base_face >= faces.len() {
        return Err(PlanarError::BadFace(base_face));
    }
    let fod = pg.face_of_dart(&faces);
    let alpha: Vec<Scalar> = alpha.iter().map(|a| field.reduce(a).expect("valid field element")).collect();
    let mut gamma: Vec<Option<Scalar>> = vec![None; faces.len()];
    gamma[base_face] = Some(field.zero());
    let mut queue = VecDeque::from([base_face]);
    while let Some(fi) = queue.pop_front() {
        let here = gamma[fi].clone().expect("colored");
        for &d in &faces[fi].darts {
            let od = pg.alpha(d);
            let step = field.sub(&alpha[pg.dart_vertex(d)], &alpha[pg.dart_vertex(od)]);
            let there = field.add(&here, &step);
            let target = fod[od];
            match &gamma[target] {
                None => {
                    gamma[target] = Some(there);
                    queue.push_back(target);
                }
                Some(existing) if *existing != there => {
                    return Err(PlanarError::NonConservative(g.edge(dart_edge(d)).name.clone()));
                }
                Some(_) => {}
            }
        }
    }
    let dc = DehnColoring {
        field,
        base_face,
        vertex: alpha,
        face: gamma.into_iter().map(|c| c.expect("connected dual")).collect(),
    };
    Ok(dc)
}

/// Forgets the face colors.
pub fn dehn_restrict(dc: &DehnColoring) -> Vec<Scalar> {
    dc.vertex.clone()
}
