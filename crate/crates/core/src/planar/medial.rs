//! Straight-ahead walks of the medial graph.
//!
//! A corner `c` is the angle at `vertex(c)` from dart `c` to `σ(c)`; it is a
//! medial edge joining the midpoints of `edge(c)` and `edge(σ c)`. A walk
//! state traverses a corner forward (toward `σ c`) or backward (toward `c`).
//! At a midpoint the walk crosses the edge and leaves on the opposite side at
//! the other end:
//!
//! * `Forward(c)` crosses `edge(σ c)` away from `σ c` and continues as
//!   `Backward(σ⁻¹(α(σ c)))`;
//! * `Backward(c)` crosses `edge(c)` away from `c` and continues as
//!   `Forward(α c)`.

use num_traits::{One, Zero};

use super::{dart_edge, dart_end, End, PlanarError, PlaneGraph};
use crate::algebra::{CoeffField, Scalar};
use crate::colorings::{bicycle_basis, ColoringBasis};

/// One passage of a medial curve through an edge midpoint, moving along the
/// edge away from end `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub edge: usize,
    pub from: End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedialComponent {
    pub crossings: Vec<Crossing>,
    /// Edges crossed exactly once, ascending.
    pub residue: Vec<usize>,
    /// Net voltage along one traversal; 0 for finite graphs.
    pub winding: i64,
}

impl MedialComponent {
    /// Residue as a vector over `GF(2)` indexed by edge.
    pub fn residue_vector(&self, num_edges: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); num_edges];
        for &e in &self.residue {
            v[e] = Scalar::one();
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Forward,
    Backward,
}

fn trace(pg: &PlaneGraph) -> Vec<MedialComponent> {
    let m = pg.graph().num_edges();
    let mut seen = vec![false; pg.num_darts()];
    let mut out = Vec::new();
    for start in 0..pg.num_darts() {
        if seen[start] {
            continue;
        }
        let mut crossings = Vec::new();
        let mut winding = 0i64;
        let (mut c, mut dir) = (start, Dir::Forward);
        loop {
            seen[c] = true;
            let (from_dart, next) = match dir {
                Dir::Forward => {
                    let s = pg.sigma(c);
                    (s, (pg.sigma_inv(pg.alpha(s)), Dir::Backward))
                }
                Dir::Backward => (c, (pg.alpha(c), Dir::Forward)),
            };
            crossings.push(Crossing { edge: dart_edge(from_dart), from: dart_end(from_dart) });
            winding += pg.dart_voltage(from_dart);
            (c, dir) = next;
            if c == start && dir == Dir::Forward {
                break;
            }
        }
        let mut count = vec![0u32; m];
        for x in &crossings {
            count[x.edge] += 1;
        }
        let residue = (0..m).filter(|&e| count[e] == 1).collect();
        out.push(MedialComponent { crossings, residue, winding });
    }
    for rot in pg.rotation.iter() {
        if rot.is_empty() {
            out.push(MedialComponent { crossings: Vec::new(), residue: Vec::new(), winding: 0 });
        }
    }
    out
}

/// Medial components, started at the least untraversed corner; isolated
/// vertices contribute one empty component each, last.
pub fn medial_components(pg: &PlaneGraph) -> Vec<MedialComponent> {
    trace(pg)
}

/// Medial curves of an annulus quotient, with their lifts counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageMedialReport {
    pub components: Vec<MedialComponent>,
    /// `Σ |winding|`: noncompact components of the periodic medial graph.
    pub noncompact: u64,
    /// Quotient curves of winding 0: orbits of compact components.
    pub compact_orbits: usize,
}

pub fn medial_components_voltage(pg: &PlaneGraph) -> Result<VoltageMedialReport, PlanarError> {
    if pg.voltage_graph().rank() != 1 {
        return Err(PlanarError::Rank(pg.voltage_graph().rank()));
    }
    let components = trace(pg);
    let noncompact = components.iter().map(|c| c.winding.unsigned_abs()).sum();
    let compact_orbits = components.iter().filter(|c| c.winding == 0).count();
    Ok(VoltageMedialReport { components, noncompact, compact_orbits })
}

/// Residues of every medial component except `base`, over `GF(2)`; checked
/// to be a basis of the bicycle space.
pub fn shank_basis(pg: &PlaneGraph, base: usize) -> Result<ColoringBasis, PlanarError> {
    let g = pg.graph();
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    let comps = trace(pg);
    if base >= comps.len() {
        return Err(PlanarError::BadComponent(base));
    }
    let m = g.num_edges();
    let vectors: Vec<Vec<Scalar>> = comps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != base)
        .map(|(_, c)| c.residue_vector(m))
        .collect();
    let gf2 = CoeffField::gf2();
    let bicycles = bicycle_basis(g, gf2).map_err(|_| PlanarError::ShankMismatch)?;
    let basis = ColoringBasis { field: gf2, ambient: m, vectors };
    if basis.dim() != bicycles.dim() || !bicycles.spans_same(&basis.vectors) {
        return Err(PlanarError::ShankMismatch);
    }
    Ok(basis)
}
