//! Replays the identities relating Laplacian polynomials, colorings, medial
//! curves, spanning trees and Mahler measure on one input graph.

use std::fmt;

use crate::algebra::{elementary_divisor, first_nonzero_divisor, CoeffField, LaurentMatrix, LaurentPoly};
use crate::colorings::{bicycle_basis_via_intersection, bicycle_basis_via_kernel, conservative_vertex_basis, is_conservative_edge, EdgeCondition};
use crate::format::ParsedGraph;
use crate::graph::{FiniteGraph, VoltageGraph};
use crate::mahler::mahler;
use crate::planar::{dehn_extend, dehn_restrict, is_dehn_coloring, medial_components, medial_components_voltage, shank_basis, PlaneGraph};
use crate::spanning::{
    annular_connectivity, complexity, cover_schedule, crsf_coefficients, delta0, grimmett_bound, growth_covers,
    kappa_one_split, tree_count, MAX_BRUTE_EDGES, MAX_BRUTE_VERTICES,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Largest cover: `n` for rank 1, `n × n` for rank 2. Defaults to 64 and 8.
    pub max_cover: Option<u64>,
    pub fibers: usize,
    /// Allowed `|(1/r) log T - m(Δ_0)|` at the largest cover.
    pub growth_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_cover: None, fibers: 1024, growth_tolerance: 0.05 }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.checks.push(CheckResult { name, status, detail: detail.into() });
    }

    fn skip(&mut self, name: &'static str, why: impl Into<String>) {
        self.checks.push(CheckResult { name, status: CheckStatus::Skip, detail: why.into() });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(f, "{}  {:width$}  {}", c.status, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Runs every check applicable to the rank and planarity of `g`.
pub fn run_verify(g: &ParsedGraph, opts: &VerifyOptions) -> Result<VerifyReport, Error> {
    let mut rep = VerifyReport::default();
    finite_checks(&mut rep, g.finite());
    match (g.voltage(), g.plane()) {
        (None, Some(pg)) => plane_checks(&mut rep, pg),
        (None, None) => rep.skip("plane", "no rotation system"),
        (Some(vg), pg) => voltage_checks(&mut rep, vg, pg, opts)?,
    }
    Ok(rep)
}

fn finite_checks(rep: &mut VerifyReport, g: &FiniteGraph) {
    let l = g.laplacian();
    if g.has_loops() {
        let sums = (0..l.rows()).all(|i| l.row(i).iter().sum::<num_bigint::BigInt>() == 0.into());
        rep.push("laplacian", sums && l.is_symmetric(), "row sums 0, symmetric (graph has loops)");
    } else {
        let q = g.incidence_matrix();
        rep.push("laplacian", q.mul(&q.transpose()) == l, "L = Q Q^T");
    }
    for f in [CoeffField::gf2(), CoeffField::Rationals] {
        let a = bicycle_basis_via_kernel(g, f);
        let b = bicycle_basis_via_intersection(g, f);
        rep.push(
            "bicycle-methods",
            a.dim() == b.dim() && a.spans_same(&b.vectors),
            format!("over {f}: dim {} vs {}", a.dim(), b.dim()),
        );
    }
    if g.is_connected() && g.num_vertices() > 1 {
        let n = g.num_vertices();
        let first = crate::algebra::int_det(&l.minor_matrix(0, 0)).map(|d| num_traits::Signed::abs(&d));
        let last = tree_count(g);
        let ok = matches!((&first, &last), (Ok(a), Ok(b)) if a == b);
        rep.push("matrix-tree", ok, format!("tau = {} (rows 1 and {n} deleted agree)", last.map(|t| t.to_string()).unwrap_or_default()));
    } else {
        rep.push("complexity", true, format!("T = {}", complexity(g)));
    }
}

fn plane_checks(rep: &mut VerifyReport, pg: &PlaneGraph) {
    let g = pg.graph();
    if let Err(e) = pg.check_planar() {
        rep.push("planar", false, e.to_string());
        return;
    }
    rep.push("planar", true, format!("{} faces", pg.faces().len()));
    if !g.is_connected() {
        rep.skip("shank-basis", "graph is disconnected");
        return;
    }
    let comps = medial_components(pg);
    let gf2 = CoeffField::gf2();
    let all_bicycles = comps.iter().all(|c| is_conservative_edge(g, gf2, &c.residue_vector(g.num_edges())).ok() == Some(EdgeCondition::Conservative));
    rep.push("residues-are-bicycles", all_bicycles, format!("{} medial components", comps.len()));
    let bad: Vec<usize> = (0..comps.len()).filter(|&b| shank_basis(pg, b).is_err()).collect();
    rep.push("shank-basis", bad.is_empty(), if bad.is_empty() { "every base component".to_string() } else { format!("fails for bases {bad:?}") });
    let f = CoeffField::prime(5).expect("5 is prime");
    let basis = conservative_vertex_basis(g, f);
    let ok = basis.vectors.iter().all(|a| match dehn_extend(pg, f, a, 0) {
        Ok(dc) => is_dehn_coloring(pg, &dc) && dehn_restrict(&dc) == *a,
        Err(_) => false,
    });
    rep.push("dehn-roundtrip", ok, format!("over GF(5), {} basis colorings", basis.dim()));
}

fn divisor_chain(m: &LaurentMatrix, field: CoeffField) -> Result<Vec<LaurentPoly>, Error> {
    (0..m.rows()).map(|k| elementary_divisor(m, k, field).map_err(Error::from)).collect()
}

fn voltage_checks(rep: &mut VerifyReport, vg: &VoltageGraph, pg: Option<&PlaneGraph>, opts: &VerifyOptions) -> Result<(), Error> {
    let l = vg.laplacian_poly()?;
    rep.push("adjoint", l.substitute_inverse() == l.transpose(), "L(x^-1) = L(x)^T");
    let base = vg.base().laplacian();
    let at_one = (0..l.rows()).all(|i| (0..l.cols()).all(|j| l.get(i, j).eval_at_one() == base[(i, j)]));
    rep.push("evaluation", at_one, "L(1) = D - A of the quotient");
    let chain = divisor_chain(&l, CoeffField::Integers)?;
    let recip = chain.iter().all(|d| d.is_zero() || d.is_reciprocal());
    rep.push("reciprocity", recip, format!("{} Laplacian polynomials", chain.len()));
    let divides = chain.windows(2).all(|w| w[0].is_zero() || w[1].divides(&w[0]));
    rep.push("divisor-chain", divides, "Δ_{k+1} | Δ_k");
    let d0 = delta0(vg)?;
    rep.push("delta0", true, format!("Δ_0 = {d0}"));
    if vg.rank() == 1 {
        let sq = LaurentPoly::from_coeffs(&[1, -2, 1], CoeffField::Integers);
        rep.push("x-1-squared", d0.is_zero() || sq.divides(&d0), "(x-1)^2 | Δ_0");
    } else {
        rep.push("vanishes-at-one", d0.eval_at_one() == 0.into(), "Δ_0(1,1) = 0");
    }
    let gf2 = CoeffField::gf2();
    let d0_2 = elementary_divisor(&l, 0, gf2)?;
    let reduced = d0.with_field(gf2);
    let agree = if d0_2.is_zero() { reduced.is_zero() } else { !reduced.is_zero() && reduced.normalize()? == d0_2 };
    let shown = if d0_2.is_zero() { "Δ_0 ≡ 0 mod 2".to_string() } else { format!("Δ_0 = {d0_2} over GF(2)") };
    rep.push("delta0-mod-2", agree, shown);
    let m0 = if d0.is_zero() { None } else { Some(mahler(&d0, opts.fibers)?) };
    match (&m0, grimmett_bound(vg)) {
        (Some(m), Ok(b)) => rep.push("grimmett", b >= m.value, format!("bound {b:.6} >= m(Δ_0) {:.6}", m.value)),
        (None, _) => rep.skip("grimmett", "Δ_0 = 0"),
        (_, Err(e)) => rep.skip("grimmett", e.to_string()),
    }
    match &m0 {
        Some(m) => {
            let max = opts.max_cover.unwrap_or(if vg.rank() == 1 { 64 } else { 8 });
            let sched = cover_schedule(vg.rank(), if vg.rank() == 1 { 4 } else { 2 }, max);
            let growth = growth_covers(vg, &sched, m.value)?;
            match (growth.rows.last(), growth.gaps().last()) {
                (Some(row), Some(gap)) => rep.push(
                    "growth",
                    gap.abs() < opts.growth_tolerance,
                    format!("r = {}: (1/r) log T = {:.6}, m(Δ_0) = {:.6}, gap {:.4} (tolerance {})", row.r, row.normalized_log, m.value, gap, opts.growth_tolerance),
                ),
                _ => rep.skip("growth", "empty schedule"),
            }
        }
        None => rep.skip("growth", "Δ_0 = 0"),
    }
    if vg.rank() != 1 {
        for name in ["forman", "annulus", "degree-kappa", "kappa-one", "medial-degree", "medial-orbits"] {
            rep.skip(name, "rank 1 only");
        }
        return Ok(());
    }
    if vg.base().num_edges() <= MAX_BRUTE_EDGES {
        let crsf = crsf_coefficients(vg)?;
        let weighted = crsf.weighted.normalize().ok() == d0.normalize().ok();
        let classic = crsf.reconstruction.normalize().ok() == d0.normalize().ok();
        let counts: Vec<String> = crsf.counts.iter().map(|c| c.to_string()).collect();
        let detail = format!("C_k = [{}]; Σ C_k (2-x-x^-1)^k {} Δ_0; winding-weighted sum {} Δ_0", counts.join(", "), if classic { "=" } else { "≠" }, if weighted { "=" } else { "≠" });
        rep.push("forman", weighted && (classic || !crsf.unit_windings), detail);
    } else {
        rep.skip("forman", format!("more than {MAX_BRUTE_EDGES} edges"));
    }
    let Some(pg) = pg else {
        for name in ["annulus", "degree-kappa", "kappa-one", "medial-degree", "medial-orbits"] {
            rep.skip(name, "no rotation system");
        }
        return Ok(());
    };
    if let Err(e) = pg.check_annulus() {
        rep.push("annulus", false, e.to_string());
        return Ok(());
    }
    rep.push("annulus", true, "planar with two punctured faces");
    if vg.base().num_vertices() <= MAX_BRUTE_VERTICES && !d0.is_zero() {
        let kappa = annular_connectivity(vg)?;
        let deg = d0.with_field(CoeffField::Rationals).degree_span()?.0;
        rep.push("degree-kappa", deg == 2 * kappa as i64, format!("deg Δ_0 = {deg}, κ = {kappa}"));
        if kappa == 1 {
            let h = kappa_one_split(vg)?;
            let t = tree_count(&h)?;
            let want = LaurentPoly::from_coeffs(&[1, -2, 1], CoeffField::Integers).scale(&t);
            rep.push("kappa-one", want == d0, format!("τ(H) = {t}"));
        } else {
            rep.skip("kappa-one", format!("κ = {kappa}"));
        }
    } else {
        rep.skip("degree-kappa", "too many vertices or Δ_0 = 0");
        rep.skip("kappa-one", "too many vertices or Δ_0 = 0");
    }
    let medial = medial_components_voltage(pg)?;
    let (s, ds) = first_nonzero_divisor(&l, gf2)?;
    let deg = if ds.is_zero() { 0 } else { ds.degree_span()?.0 };
    rep.push("medial-degree", deg as u64 == medial.noncompact, format!("deg Δ_{s} over GF(2) = {deg}, noncompact components = {}", medial.noncompact));
    rep.push("medial-orbits", s == medial.compact_orbits, format!("s = {s}, closed-component orbits = {}", medial.compact_orbits));
    Ok(())
}
