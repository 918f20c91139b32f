//! Spanning trees, cycle-rooted spanning forests, annular connectivity and
//! growth of tree counts along covers and restrictions.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{det_laurent, int_det, AlgebraError, CoeffField, LaurentPoly};
use crate::graph::{FiniteGraph, GraphError, RectangleSpec, SublatticeSpec, VoltageGraph};

/// Largest quotient edge count accepted by the subset enumerations.
pub const MAX_BRUTE_EDGES: usize = 20;
/// Largest quotient vertex count accepted by [`annular_connectivity`].
pub const MAX_BRUTE_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanningError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("restriction {0} is disconnected")]
    DisconnectedRestriction(String),
    #[error("operation needs rank {expected}, graph has rank {got}")]
    Rank { expected: usize, got: usize },
    #[error("{what} = {got} exceeds the brute-force limit {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error("annular connectivity is {0}, expected 1")]
    NotKappaOne(usize),
    #[error("pieces of the quotient minus the cut vertex span more than one period")]
    NotAChain,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Natural log of a positive integer, accurate for any size.
pub fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Spanning trees of a connected graph: the determinant of the Laplacian with
/// its last row and column deleted.
pub fn tree_count(g: &FiniteGraph) -> Result<BigInt, SpanningError> {
    if !g.is_connected() {
        return Err(SpanningError::Disconnected);
    }
    let n = g.num_vertices();
    if n <= 1 {
        return Ok(BigInt::one());
    }
    let l = g.laplacian();
    Ok(int_det(&l.minor_matrix(n - 1, n - 1))?.abs())
}

/// `T(G)`: product of tree counts over connected components.
pub fn complexity(g: &FiniteGraph) -> BigInt {
    g.connected_components()
        .iter()
        .map(|c| tree_count(&g.induced(c)).expect("component is connected"))
        .product()
}

/// Potentials `p` with `p(head) = p(tail) + s` along a spanning forest of
/// `vg`; `None` if some cycle has nonzero net voltage. Rank 1 only.
fn voltage_potentials(vg: &VoltageGraph, alive: &[bool], edges: &[usize]) -> Option<Vec<i64>> {
    let g = vg.base();
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for &k in edges {
        let e = g.edge(k);
        if !alive[e.tail] || !alive[e.head] {
            continue;
        }
        let s = vg.voltage(k)[0];
        adj[e.tail].push((e.head, k, s));
        adj[e.head].push((e.tail, k, -s));
    }
    let mut pot: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if !alive[root] || pot[root].is_some() {
            continue;
        }
        pot[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let pu = pot[u].expect("visited");
            for &(w, _, s) in &adj[u] {
                match pot[w] {
                    None => {
                        pot[w] = Some(pu + s);
                        queue.push_back(w);
                    }
                    Some(pw) if pw != pu + s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(pot.into_iter().map(|p| p.unwrap_or(0)).collect())
}

/// Cycle-rooted spanning forests with every cycle essential, by component
/// count, and the Forman sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrsfReport {
    /// `counts[k - 1] = C_k`.
    pub counts: Vec<BigInt>,
    /// `Σ C_k (2 - x - x^-1)^k`.
    pub reconstruction: LaurentPoly,
    /// `Σ_F Π_cycles (2 - x^w - x^-w)` with `w` the cycle's net voltage;
    /// equals `det L(x)` for every quotient.
    pub weighted: LaurentPoly,
    /// Every counted cycle has net voltage `±1`.
    pub unit_windings: bool,
}

impl CrsfReport {
    pub fn c(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::zero();
        }
        self.counts.get(k - 1).cloned().unwrap_or_default()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Net voltages of the cycles of a subgraph in which every component has as
/// many edges as vertices; `None` otherwise.
fn unicyclic_windings(vg: &VoltageGraph, subset: &[usize]) -> Option<Vec<i64>> {
    let g = vg.base();
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut extra: Vec<Option<usize>> = vec![None; n];
    let mut tree = Vec::with_capacity(subset.len());
    for &k in subset {
        let e = g.edge(k);
        let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
        if a == b {
            if extra[a].is_some() {
                return None;
            }
            extra[a] = Some(k);
        } else {
            parent[a] = b;
            if let Some(x) = extra[a] {
                if extra[b].is_some() {
                    return None;
                }
                extra[b] = Some(x);
            }
            tree.push(k);
        }
    }
    let alive = vec![true; n];
    let pot = voltage_potentials(vg, &alive, &tree).expect("forest has no cycles");
    let mut windings = Vec::new();
    for (v, &ex) in extra.iter().enumerate() {
        if find(&mut parent, v) == v {
            let k = ex?;
            let e = g.edge(k);
            windings.push(pot[e.tail] + vg.voltage(k)[0] - pot[e.head]);
        }
    }
    Some(windings)
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn rank_one(vg: &VoltageGraph) -> Result<(), SpanningError> {
    if vg.rank() != 1 {
        return Err(SpanningError::Rank { expected: 1, got: vg.rank() });
    }
    Ok(())
}

/// Enumerates edge subsets of size `|V|` whose components are unicyclic with
/// nonzero winding.
pub fn crsf_coefficients(vg: &VoltageGraph) -> Result<CrsfReport, SpanningError> {
    rank_one(vg)?;
    let (n, m) = (vg.base().num_vertices(), vg.base().num_edges());
    if m > MAX_BRUTE_EDGES {
        return Err(SpanningError::TooLarge { what: "edge count", got: m, limit: MAX_BRUTE_EDGES });
    }
    let z = CoeffField::Integers;
    let cyc = |w: i64| &(&LaurentPoly::constant(2, 1, z) - &LaurentPoly::x_pow(w, 1, z)) - &LaurentPoly::x_pow(-w, 1, z);
    let mut counts = vec![BigInt::zero(); n];
    let mut weighted = LaurentPoly::zero(1, z);
    let mut unit_windings = true;
    if n > 0 && n <= m {
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            if let Some(ws) = unicyclic_windings(vg, &subset) {
                if ws.iter().all(|&w| w != 0) {
                    counts[ws.len() - 1] += 1;
                    unit_windings &= ws.iter().all(|w| w.abs() == 1);
                    let term = ws.iter().fold(LaurentPoly::constant(1, 1, z), |acc, &w| &acc * &cyc(w));
                    weighted = &weighted + &term;
                }
            }
            if !next_combination(&mut subset, m) {
                break;
            }
        }
    }
    let base = cyc(1);
    let mut reconstruction = LaurentPoly::zero(1, z);
    for (i, c) in counts.iter().enumerate() {
        reconstruction = &reconstruction + &base.pow(i as u32 + 1).scale(c);
    }
    Ok(CrsfReport { counts, reconstruction, weighted, unit_windings })
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        if k == 0 || !next_combination(&mut c, n) {
            break;
        }
    }
    out
}

/// No cycle of the quotient restricted to `alive` has nonzero net voltage.
fn no_essential_cycle(vg: &VoltageGraph, alive: &[bool]) -> bool {
    let all: Vec<usize> = (0..vg.base().num_edges()).collect();
    voltage_potentials(vg, alive, &all).is_some()
}

/// Least `|S|` such that deleting `S` leaves no essential cycle, with the
/// lexicographically first such `S`.
pub fn annular_cut(vg: &VoltageGraph) -> Result<Vec<usize>, SpanningError> {
    rank_one(vg)?;
    let n = vg.base().num_vertices();
    if n > MAX_BRUTE_VERTICES {
        return Err(SpanningError::TooLarge { what: "vertex count", got: n, limit: MAX_BRUTE_VERTICES });
    }
    for k in 0..=n {
        for s in subsets_of_size(n, k) {
            let mut alive = vec![true; n];
            for &v in &s {
                alive[v] = false;
            }
            if no_essential_cycle(vg, &alive) {
                return Ok(s);
            }
        }
    }
    unreachable!("deleting every vertex leaves no cycle")
}

/// `κ`: minimal size of an annular cut set.
pub fn annular_connectivity(vg: &VoltageGraph) -> Result<usize, SpanningError> {
    Ok(annular_cut(vg)?.len())
}

/// Splits a `κ = 1` quotient at its cut vertex `v` into the fundamental piece
/// `H` of the chain `⋯ * H_ν * H_{ν+1} * ⋯`.
///
/// Each component of `Ḡ - v` is lifted with potentials normalized so the
/// lowest level at which it meets a lift of `v` is 0; it must meet no level
/// beyond 1. Edge ends at level 0 go to `v''`, at level 1 to `v'`; loops at
/// `v` of voltage `±1` become edges `v'' v'`, other loops are dropped.
pub fn kappa_one_split(vg: &VoltageGraph) -> Result<FiniteGraph, SpanningError> {
    let cut = annular_cut(vg)?;
    if cut.len() != 1 {
        return Err(SpanningError::NotKappaOne(cut.len()));
    }
    let v = cut[0];
    let g = vg.base();
    let n = g.num_vertices();
    let mut alive = vec![true; n];
    alive[v] = false;
    let all: Vec<usize> = (0..g.num_edges()).collect();
    let mut pot = voltage_potentials(vg, &alive, &all).expect("no essential cycle off the cut vertex");
    let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let sub = g.induced(&rest);
    // Level of v reached from u through edge k, relative to u's potential.
    let level = |pot: &[i64], k: usize| -> i64 {
        let e = g.edge(k);
        let s = vg.voltage(k)[0];
        if e.tail == v {
            pot[e.head] - s
        } else {
            pot[e.tail] + s
        }
    };
    for comp in sub.connected_components() {
        let members: Vec<usize> = comp.iter().map(|&i| rest[i]).collect();
        let touching: Vec<usize> = (0..g.num_edges())
            .filter(|&k| {
                let e = g.edge(k);
                !e.is_loop() && (e.tail == v || e.head == v) && (members.contains(&e.tail) || members.contains(&e.head))
            })
            .collect();
        let lo = touching.iter().map(|&k| level(&pot, k)).min().unwrap_or(0);
        for &u in &members {
            pot[u] -= lo;
        }
        if touching.iter().any(|&k| level(&pot, k) > 1) {
            return Err(SpanningError::NotAChain);
        }
    }
    let mut h = FiniteGraph::new();
    let mut index = vec![0usize; n];
    for &u in &rest {
        index[u] = h.add_vertex(g.vertex_name(u))?;
    }
    let low = h.add_vertex(&format!("{}''", g.vertex_name(v)))?;
    let high = h.add_vertex(&format!("{}'", g.vertex_name(v)))?;
    for (k, e) in g.edges().iter().enumerate() {
        let s = vg.voltage(k)[0];
        let end = |lvl: i64| if lvl == 0 { low } else { high };
        match (e.tail == v, e.head == v) {
            (true, true) => {
                if s.abs() == 1 {
                    h.add_edge(&e.name, low, high)?;
                } else if s != 0 {
                    return Err(SpanningError::NotAChain);
                }
            }
            (true, false) => {
                h.add_edge(&e.name, end(level(&pot, k)), index[e.head])?;
            }
            (false, true) => {
                h.add_edge(&e.name, index[e.tail], end(level(&pot, k)))?;
            }
            (false, false) => {
                h.add_edge(&e.name, index[e.tail], index[e.head])?;
            }
        }
    }
    Ok(h)
}

/// `|V̄| log(2|Ē|/|V̄|)`.
pub fn grimmett_bound(vg: &VoltageGraph) -> Result<f64, SpanningError> {
    let g = vg.base();
    if !g.is_connected() || g.num_vertices() == 0 {
        return Err(SpanningError::Disconnected);
    }
    let (n, m) = (g.num_vertices() as f64, g.num_edges() as f64);
    Ok(n * (2.0 * m / n).ln())
}

/// `Δ_0 = det L(x)` (or `det L(x, y)`), normalized over `Z`; zero if singular.
pub fn delta0(vg: &VoltageGraph) -> Result<LaurentPoly, SpanningError> {
    let d = det_laurent(&vg.laplacian_poly()?)?;
    if d.is_zero() {
        return Ok(d);
    }
    Ok(d.normalize()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    Covers,
    Restrictions,
}

impl GrowthMode {
    pub fn name(self) -> &'static str {
        match self {
            GrowthMode::Covers => "covers",
            GrowthMode::Restrictions => "restrictions",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    /// Sublattice index for covers; vertex count for restrictions.
    pub r: u64,
    pub trees: BigInt,
    /// `(1/r) log T`.
    pub normalized_log: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub mode: GrowthMode,
    pub rows: Vec<GrowthRow>,
    /// `m(Δ_0)` for covers, `m(Δ_0)/k` for restrictions with `k` vertex orbits.
    pub reference: f64,
}

impl GrowthReport {
    /// `normalized_log - reference` per row.
    pub fn gaps(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.normalized_log - self.reference).collect()
    }
}

fn row(r: u64, trees: BigInt) -> GrowthRow {
    let normalized_log = if trees.is_zero() { f64::NEG_INFINITY } else { ln_big(&trees) / r as f64 };
    GrowthRow { r, trees, normalized_log }
}

/// `T(G_Λ)` along `schedule`; rows sorted by index. Disconnected covers are
/// counted by complexity.
pub fn growth_covers(
    vg: &VoltageGraph,
    schedule: &[SublatticeSpec],
    reference: f64,
) -> Result<GrowthReport, SpanningError> {
    let rows: Result<Vec<GrowthRow>, SpanningError> = schedule
        .par_iter()
        .map(|lam| {
            let cover = vg.cover_graph(lam)?;
            Ok(row(lam.index()?, complexity(&cover)))
        })
        .collect();
    let mut rows = rows?;
    rows.sort_by_key(|r| r.r);
    Ok(GrowthReport { mode: GrowthMode::Covers, rows, reference })
}

/// `τ(G|_R)` along `schedule`, normalized by the vertex count `s`.
pub fn growth_restrictions(
    vg: &VoltageGraph,
    schedule: &[RectangleSpec],
    reference: f64,
) -> Result<GrowthReport, SpanningError> {
    let rows: Result<Vec<GrowthRow>, SpanningError> = schedule
        .par_iter()
        .map(|rect| {
            let sub = vg.restriction_subgraph(rect)?;
            let t = tree_count(&sub).map_err(|_| SpanningError::DisconnectedRestriction(format!("{:?}", rect.sizes)))?;
            Ok(row(sub.num_vertices() as u64, t))
        })
        .collect();
    let mut rows = rows?;
    rows.sort_by_key(|r| r.r);
    Ok(GrowthReport { mode: GrowthMode::Restrictions, rows, reference })
}

/// `start, 2 start, 4 start, …` below `max`, then `max`.
pub fn doubling(start: u64, max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = start.max(1);
    while n < max {
        out.push(n);
        n *= 2;
    }
    if max >= 1 {
        out.push(max);
    }
    out
}

/// `nZ` for rank 1, `n × n` squares for rank 2, with `n` from [`doubling`].
pub fn cover_schedule(rank: usize, start: u64, max: u64) -> Vec<SublatticeSpec> {
    doubling(start, max)
        .into_iter()
        .map(|n| if rank == 1 { SublatticeSpec::Cyclic(n as i64) } else { SublatticeSpec::square(n as i64) })
        .collect()
}

/// Rectangles `[0, n-1]^d` with `n` from [`doubling`].
pub fn restriction_schedule(rank: usize, start: u64, max: u64) -> Vec<RectangleSpec> {
    doubling(start, max).into_iter().map(|n| RectangleSpec::new(vec![n as usize; rank])).collect()
}
