//! Conservative vertex colorings, cut/cycle/bicycle spaces and conservative
//! edge colorings of finite graphs over a field.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{span_eq, CoeffField, FieldMatrix, Scalar};
use crate::graph::FiniteGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("coloring has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the two bicycle computations disagree ({0} vs {1} dimensions)")]
    MethodMismatch(usize, usize),
}

/// Vectors spanning a coloring space; `ambient` is the coordinate count.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoringBasis {
    pub field: CoeffField,
    pub ambient: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

impl ColoringBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn spans_same(&self, other: &[Vec<Scalar>]) -> bool {
        span_eq(self.field, self.ambient, &self.vectors, other)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut with = self.vectors.clone();
        with.push(v.to_vec());
        FieldMatrix::from_row_vectors(self.field, self.ambient, &with).rank() == self.dim()
    }
}

/// Outcome of the two conditions on an edge coloring. The cycle condition is
/// checked first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeCondition {
    Conservative,
    FailsCycle,
    FailsKirchhoff,
}

fn laplacian_over(g: &FiniteGraph, f: CoeffField) -> FieldMatrix {
    g.laplacian().to_field(f)
}

/// Basis of `ker L`: the component indicators first, then kernel vectors that
/// enlarge the span, in nullspace order.
pub fn conservative_vertex_basis(g: &FiniteGraph, f: CoeffField) -> ColoringBasis {
    let n = g.num_vertices();
    let mut vectors: Vec<Vec<Scalar>> = g
        .connected_components()
        .into_iter()
        .map(|comp| {
            let mut v = vec![Scalar::zero(); n];
            for i in comp {
                v[i] = f.one();
            }
            v
        })
        .collect();
    for cand in laplacian_over(g, f).nullspace() {
        let mut trial = vectors.clone();
        trial.push(cand.clone());
        if FieldMatrix::from_row_vectors(f, n, &trial).rank() > vectors.len() {
            vectors = trial;
        }
    }
    ColoringBasis { field: f, ambient: n, vectors }
}

/// Kernel vectors of `L` vanishing at `base`.
pub fn based_vertex_basis(
    g: &FiniteGraph,
    f: CoeffField,
    base: usize,
) -> Result<ColoringBasis, ColoringError> {
    let n = g.num_vertices();
    if base >= n {
        return Err(ColoringError::BadVertex(base));
    }
    if !g.is_connected() {
        return Err(ColoringError::Disconnected);
    }
    let l = laplacian_over(g, f);
    let mut rows: Vec<Vec<Scalar>> = (0..n).map(|i| l.row(i)).collect();
    let mut pin = vec![Scalar::zero(); n];
    pin[base] = f.one();
    rows.push(pin);
    let vectors = FieldMatrix::from_row_vectors(f, n, &rows).nullspace();
    Ok(ColoringBasis { field: f, ambient: n, vectors })
}

/// `β = Qᵀα`: an edge from `u` to `v` gets `α(v) - α(u)`.
pub fn edge_from_vertex(
    g: &FiniteGraph,
    f: CoeffField,
    alpha: &[Scalar],
) -> Result<Vec<Scalar>, ColoringError> {
    check_len(g.num_vertices(), alpha.len())?;
    Ok(g.edges().iter().map(|e| f.sub(&alpha[e.head], &alpha[e.tail])).collect())
}

fn check_len(expected: usize, got: usize) -> Result<(), ColoringError> {
    if expected != got {
        return Err(ColoringError::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Checks the cycle condition on fundamental cycles of a spanning forest,
/// then the Kirchhoff condition `Qβ = 0`.
pub fn is_conservative_edge(
    g: &FiniteGraph,
    f: CoeffField,
    beta: &[Scalar],
) -> Result<EdgeCondition, ColoringError> {
    check_len(g.num_edges(), beta.len())?;
    if !satisfies_cycle_condition(g, f, beta) {
        return Ok(EdgeCondition::FailsCycle);
    }
    let mut net = vec![Scalar::zero(); g.num_vertices()];
    for (e, b) in g.edges().iter().zip(beta) {
        net[e.head] = f.add(&net[e.head], b);
        net[e.tail] = f.sub(&net[e.tail], b);
    }
    if net.iter().all(Zero::is_zero) {
        Ok(EdgeCondition::Conservative)
    } else {
        Ok(EdgeCondition::FailsKirchhoff)
    }
}

/// `β` is a potential difference: integrate along a spanning forest and
/// compare on every remaining edge.
fn satisfies_cycle_condition(g: &FiniteGraph, f: CoeffField, beta: &[Scalar]) -> bool {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.tail].push(i);
        adj[e.head].push(i);
    }
    let mut pot: Vec<Option<Scalar>> = vec![None; n];
    for root in 0..n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(f.zero());
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let pu = pot[u].clone().expect("visited");
            for &ei in &adj[u] {
                let e = g.edge(ei);
                let (w, pw) = if e.tail == u {
                    (e.head, f.add(&pu, &beta[ei]))
                } else {
                    (e.tail, f.sub(&pu, &beta[ei]))
                };
                if pot[w].is_none() {
                    pot[w] = Some(pw);
                    stack.push(w);
                }
            }
        }
    }
    g.edges().iter().zip(beta).all(|(e, b)| {
        let diff = f.sub(pot[e.head].as_ref().unwrap(), pot[e.tail].as_ref().unwrap());
        diff == *b
    })
}

/// Bicycle space as `Qᵀ(ker L)`, reduced to canonical row-echelon basis.
pub fn bicycle_basis_via_kernel(g: &FiniteGraph, f: CoeffField) -> ColoringBasis {
    let m = g.num_edges();
    let images: Vec<Vec<Scalar>> = laplacian_over(g, f)
        .nullspace()
        .iter()
        .map(|a| edge_from_vertex(g, f, a).expect("length matches"))
        .collect();
    let vectors = FieldMatrix::from_row_vectors(f, m, &images).row_space_basis();
    ColoringBasis { field: f, ambient: m, vectors }
}

/// Bicycle space as `rowspace(Q) ∩ ker Q`, reduced to canonical basis.
pub fn bicycle_basis_via_intersection(g: &FiniteGraph, f: CoeffField) -> ColoringBasis {
    let m = g.num_edges();
    let q = g.incidence_matrix().to_field(f);
    let cut = q.row_space_basis();
    let cycle = q.nullspace();
    // Columns u_1..u_a, -n_1..-n_b; kernel vectors give the intersection.
    let k = cut.len() + cycle.len();
    let mut sys = FieldMatrix::zeros(f, m, k);
    for (j, u) in cut.iter().enumerate() {
        for (i, x) in u.iter().enumerate() {
            sys.set(i, j, x.clone());
        }
    }
    for (j, v) in cycle.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            sys.set(i, cut.len() + j, f.neg(x));
        }
    }
    let combos: Vec<Vec<Scalar>> = sys
        .nullspace()
        .iter()
        .map(|c| {
            (0..m)
                .map(|i| {
                    cut.iter()
                        .zip(c)
                        .fold(f.zero(), |acc, (u, a)| f.add(&acc, &f.mul(&u[i], a)))
                })
                .collect()
        })
        .collect();
    let vectors = FieldMatrix::from_row_vectors(f, m, &combos).row_space_basis();
    ColoringBasis { field: f, ambient: m, vectors }
}

/// Bicycle space, computed both ways; the two must agree.
pub fn bicycle_basis(g: &FiniteGraph, f: CoeffField) -> Result<ColoringBasis, ColoringError> {
    let a = bicycle_basis_via_kernel(g, f);
    let b = bicycle_basis_via_intersection(g, f);
    if a.vectors != b.vectors {
        return Err(ColoringError::MethodMismatch(a.dim(), b.dim()));
    }
    Ok(a)
}

/// `ker Qᵀ`: vertex colorings with zero induced edge coloring.
pub fn cut_kernel(g: &FiniteGraph, f: CoeffField) -> ColoringBasis {
    let vectors = g.incidence_matrix().transpose().to_field(f).nullspace();
    ColoringBasis { field: f, ambient: g.num_vertices(), vectors }
}

/// Whether `a` and `b` differ by a constant on each component.
pub fn equivalent_colorings(g: &FiniteGraph, f: CoeffField, a: &[Scalar], b: &[Scalar]) -> bool {
    g.connected_components().iter().all(|comp| {
        let d0 = f.sub(&a[comp[0]], &b[comp[0]]);
        comp.iter().all(|&v| f.sub(&a[v], &b[v]) == d0)
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> FiniteGraph {
        FiniteGraph::from_names(
            &["v1", "v2", "v3", "v4"],
            &[
                ("e1", "v1", "v2"),
                ("e2", "v2", "v3"),
                ("e3", "v3", "v1"),
                ("e4", "v1", "v4"),
                ("e5", "v2", "v4"),
                ("e6", "v3", "v4"),
            ],
        )
        .unwrap()
    }

    fn vecf(f: CoeffField, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn k4_vertex_spaces() {
        let gf2 = CoeffField::gf2();
        assert_eq!(conservative_vertex_basis(&k4(), gf2).dim(), 3);
        assert_eq!(conservative_vertex_basis(&k4(), CoeffField::Rationals).dim(), 1);
        let based = based_vertex_basis(&k4(), gf2, 0).unwrap();
        assert!(based.spans_same(&[vecf(gf2, &[0, 1, 1, 0]), vecf(gf2, &[0, 0, 1, 1])]));
        assert_eq!(based_vertex_basis(&k4(), CoeffField::Rationals, 0).unwrap().dim(), 0);
    }

    #[test]
    fn edgeless_and_single_vertex() {
        let g = FiniteGraph::from_names(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(conservative_vertex_basis(&g, CoeffField::Rationals).dim(), 3);
        assert!(matches!(
            based_vertex_basis(&g, CoeffField::Rationals, 0),
            Err(ColoringError::Disconnected)
        ));
        let one = FiniteGraph::from_names(&["a"], &[]).unwrap();
        assert_eq!(based_vertex_basis(&one, CoeffField::Rationals, 0).unwrap().dim(), 0);
    }

    #[test]
    fn k4_residue_vectors() {
        let gf2 = CoeffField::gf2();
        let b1 = edge_from_vertex(&k4(), gf2, &vecf(gf2, &[0, 1, 1, 0])).unwrap();
        assert_eq!(b1, vecf(gf2, &[1, 0, 1, 0, 1, 1]));
        let b2 = edge_from_vertex(&k4(), gf2, &vecf(gf2, &[0, 1, 0, 1])).unwrap();
        assert_eq!(b2, vecf(gf2, &[1, 1, 0, 1, 0, 1]));
        let c = edge_from_vertex(&k4(), gf2, &vecf(gf2, &[1, 1, 1, 1])).unwrap();
        assert!(c.iter().all(Zero::is_zero));
        assert_eq!(is_conservative_edge(&k4(), gf2, &b1).unwrap(), EdgeCondition::Conservative);
    }

    #[test]
    fn triangle_edge_conditions() {
        let q = CoeffField::Rationals;
        let t = FiniteGraph::from_names(
            &["a", "b", "c"],
            &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")],
        )
        .unwrap();
        assert_eq!(is_conservative_edge(&t, q, &vecf(q, &[1, 1, 1])).unwrap(), EdgeCondition::FailsCycle);
        assert_eq!(is_conservative_edge(&t, q, &vecf(q, &[1, 0, 0])).unwrap(), EdgeCondition::FailsCycle);
        assert_eq!(is_conservative_edge(&t, q, &vecf(q, &[0, 0, 0])).unwrap(), EdgeCondition::Conservative);
        // a gradient fails only Kirchhoff
        assert_eq!(
            is_conservative_edge(&t, q, &vecf(q, &[1, -1, 0])).unwrap(),
            EdgeCondition::FailsKirchhoff
        );
    }

    #[test]
    fn k4_bicycles() {
        let gf2 = CoeffField::gf2();
        let b = bicycle_basis(&k4(), gf2).unwrap();
        assert_eq!(b.dim(), 2);
        assert!(b.spans_same(&[vecf(gf2, &[1, 0, 1, 0, 1, 1]), vecf(gf2, &[1, 1, 0, 1, 0, 1])]));
        assert_eq!(bicycle_basis(&k4(), CoeffField::Rationals).unwrap().dim(), 0);
    }

    #[test]
    fn cut_kernel_is_constants_on_connected_graphs() {
        let k = cut_kernel(&k4(), CoeffField::Rationals);
        assert!(k.spans_same(&[vecf(CoeffField::Rationals, &[1, 1, 1, 1])]));
    }

    #[test]
    fn reversing_an_edge_negates_its_coordinate() {
        let q = CoeffField::Rationals;
        let alpha = vecf(q, &[0, 2, 5, 7]);
        let b = edge_from_vertex(&k4(), q, &alpha).unwrap();
        let r = edge_from_vertex(&k4().reverse_edge(2), q, &alpha).unwrap();
        assert_eq!(r[2], -b[2].clone());
        assert_eq!(r[0], b[0]);
    }
}
