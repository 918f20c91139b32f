use std::fmt::Write as _;
use std::path::Path;

use lapgraph_core::algebra::{elementary_divisor, format_scalar, CoeffField, LaurentMatrix, LaurentPoly, Scalar};
use lapgraph_core::colorings::{bicycle_basis, conservative_vertex_basis};
use lapgraph_core::format::{parse_graph_file, ParsedGraph};
use lapgraph_core::graph::{FiniteGraph, SublatticeSpec, VoltageGraph};
use lapgraph_core::mahler::{mahler, MahlerResult};
use lapgraph_core::planar::{dart_edge, dart_end, dehn_extend, medial_components, medial_components_voltage, shank_basis, MedialComponent, PlaneGraph};
use lapgraph_core::spanning::{
    annular_cut, complexity, cover_schedule, crsf_coefficients, delta0, growth_covers, growth_restrictions,
    kappa_one_split, restriction_schedule, tree_count, GrowthReport,
};
use lapgraph_core::verify::{run_verify, VerifyOptions};
use serde_json::{json, Value};

use crate::table::Table;
use crate::{Command, Mode};

pub struct Output {
    pub text: String,
    /// Exit status 0.
    pub ok: bool,
}

fn done(text: String) -> Result<Output, String> {
    Ok(Output { text, ok: true })
}

fn emit(json: bool, value: Value, text: String) -> Result<Output, String> {
    if json {
        done(format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
    } else {
        done(text)
    }
}

fn load(path: &Path) -> Result<ParsedGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn voltage(g: &ParsedGraph) -> Result<&VoltageGraph, String> {
    g.voltage().ok_or_else(|| "this command needs a voltage graph (a `d 1` or `d 2` line)".to_string())
}

fn field(s: &str) -> Result<CoeffField, String> {
    s.parse().map_err(|e: lapgraph_core::algebra::AlgebraError| e.to_string())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run(cmd: &Command, json: bool) -> Result<Output, String> {
    match cmd {
        Command::Delta { file, field: f, k } => delta(&load(file)?, field(f)?, *k, json),
        Command::Bicycle { file, field: f } => bicycle(load(file)?.finite(), field(f)?, json),
        Command::Medial { file, base_component, base_face, field: f } => {
            let g = load(file)?;
            let pg = g.plane().ok_or("this command needs a rotation system (`rot` lines)")?;
            medial(pg, *base_component, *base_face, field(f)?, json)
        }
        Command::Trees { file, cover } => trees(&load(file)?, cover.as_deref(), json),
        Command::Growth { file, mode, max, fibers } => growth(voltage(&load(file)?)?, *mode, *max, *fibers, json),
        Command::Crsf { file } => crsf(voltage(&load(file)?)?, json),
        Command::Kappa { file } => kappa(voltage(&load(file)?)?, json),
        Command::Mahler { poly, from_graph, fibers } => {
            let f = match (poly, from_graph) {
                (Some(p), _) => p.parse::<LaurentPoly>().map_err(err)?,
                (None, Some(path)) => delta0(voltage(&load(path)?)?).map_err(err)?,
                (None, None) => return Err("give --poly or --from-graph".into()),
            };
            let m = mahler(&f, *fibers).map_err(err)?;
            emit(json, mahler_json(&f, &m), mahler_text(&f, &m))
        }
        Command::Verify { file, max, fibers } => {
            let g = load(file)?;
            let opts = VerifyOptions { max_cover: *max, fibers: *fibers, ..VerifyOptions::default() };
            let rep = run_verify(&g, &opts).map_err(err)?;
            let checks: Vec<Value> = rep
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "status": c.status.to_string(), "detail": c.detail}))
                .collect();
            let value = json!({"passed": rep.passed(), "checks": checks});
            let text = format!("{rep}{}\n", if rep.passed() { "all checks passed" } else { "some checks FAILED" });
            let mut out = emit(json, value, text)?;
            out.ok = rep.passed();
            Ok(out)
        }
    }
}

/// `L(x)` for voltage graphs; the integer Laplacian as constants otherwise.
fn laplacian_matrix(g: &ParsedGraph) -> Result<LaurentMatrix, String> {
    if let Some(vg) = g.voltage() {
        return vg.laplacian_poly().map_err(err);
    }
    let l = g.finite().laplacian();
    let rows = (0..l.rows())
        .map(|i| {
            l.row(i)
                .iter()
                .map(|c| LaurentPoly::monomial(c.clone(), (0, 0), 1, CoeffField::Integers))
                .collect()
        })
        .collect();
    LaurentMatrix::from_rows(rows).map_err(err)
}

fn matrix_strings(m: &LaurentMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

fn delta(g: &ParsedGraph, f: CoeffField, k: Option<usize>, json: bool) -> Result<Output, String> {
    let l = laplacian_matrix(g)?;
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..l.rows()).collect(),
    };
    let mut divisors = Vec::new();
    for &k in &ks {
        divisors.push((k, elementary_divisor(&l, k, f).map_err(err)?));
    }
    let cells = matrix_strings(&l);
    let mut text = String::from("L =\n");
    let mut t = Table::new(&vec![""; l.cols()]);
    for r in &cells {
        t.row(r.clone());
    }
    for line in t.render().lines().skip(1) {
        let _ = writeln!(text, "  {line}");
    }
    let _ = writeln!(text, "field {f}");
    let mut t = Table::new(&["k", "delta_k"]);
    for (k, d) in &divisors {
        t.row(vec![k.to_string(), d.to_string()]);
    }
    text.push_str(&t.render());
    let value = json!({
        "field": f.to_string(),
        "laplacian": cells,
        "divisors": divisors.iter().map(|(k, d)| json!({"k": k, "delta": d.to_string()})).collect::<Vec<_>>(),
    });
    emit(json, value, text)
}

fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn bicycle(g: &FiniteGraph, f: CoeffField, json: bool) -> Result<Output, String> {
    let b = bicycle_basis(g, f).map_err(err)?;
    let names: Vec<&str> = g.edges().iter().map(|e| e.name.as_str()).collect();
    let mut text = format!("bicycle space over {f}: dimension {}\n", b.dim());
    if b.dim() > 0 {
        let mut t = Table::new(&names);
        for v in &b.vectors {
            t.row(vector_strings(v));
        }
        text.push_str(&t.render());
    }
    let value = json!({
        "field": f.to_string(),
        "dimension": b.dim(),
        "edges": names,
        "basis": b.vectors.iter().map(|v| vector_strings(v)).collect::<Vec<_>>(),
    });
    emit(json, value, text)
}

fn crossings(pg: &PlaneGraph, c: &MedialComponent) -> Vec<String> {
    c.crossings.iter().map(|x| format!("{}.{}", pg.graph().edge(x.edge).name, x.from.token())).collect()
}

fn residue_names(pg: &PlaneGraph, c: &MedialComponent) -> Vec<String> {
    c.residue.iter().map(|&e| pg.graph().edge(e).name.clone()).collect()
}

fn medial(pg: &PlaneGraph, base: usize, base_face: usize, f: CoeffField, json: bool) -> Result<Output, String> {
    let g = pg.graph();
    let rank = pg.voltage_graph().rank();
    let comps = if rank == 1 { medial_components_voltage(pg).map_err(err)?.components } else { medial_components(pg) };
    let mut text = String::new();
    let mut t = Table::new(&["component", "length", "winding", "residue"]);
    for (i, c) in comps.iter().enumerate() {
        t.row(vec![i.to_string(), c.crossings.len().to_string(), c.winding.to_string(), residue_names(pg, c).join(" ")]);
    }
    text.push_str(&t.render());
    let mut value = json!({
        "components": comps.iter().map(|c| json!({
            "crossings": crossings(pg, c),
            "winding": c.winding,
            "residue": residue_names(pg, c),
        })).collect::<Vec<_>>(),
    });
    if rank == 1 {
        let r = medial_components_voltage(pg).map_err(err)?;
        let _ = writeln!(text, "noncompact components {}, closed-component orbits {}", r.noncompact, r.compact_orbits);
        value["noncompact"] = json!(r.noncompact);
        value["compact_orbits"] = json!(r.compact_orbits);
        return emit(json, value, text);
    }
    if !g.is_connected() {
        return emit(json, value, text);
    }
    let shank = shank_basis(pg, base).map_err(err)?;
    let _ = writeln!(text, "residues without component {base} form a basis of the GF(2) bicycle space (dimension {})", shank.dim());
    value["shank_basis"] = json!(shank.vectors.iter().map(|v| vector_strings(v)).collect::<Vec<_>>());
    let faces = pg.faces();
    let mut dehn = Vec::new();
    let mut t = Table::new(&["coloring", "vertices", "faces"]);
    for (i, a) in conservative_vertex_basis(g, f).vectors.iter().enumerate() {
        let dc = dehn_extend(pg, f, a, base_face).map_err(err)?;
        t.row(vec![i.to_string(), vector_strings(&dc.vertex).join(" "), vector_strings(&dc.face).join(" ")]);
        dehn.push(json!({"vertex": vector_strings(&dc.vertex), "face": vector_strings(&dc.face)}));
    }
    let _ = writeln!(text, "Dehn colorings over {f}, face {base_face} colored 0 ({} faces):", faces.len());
    text.push_str(&t.render());
    value["faces"] = json!(faces
        .iter()
        .map(|fc| fc.darts.iter().map(|&d| format!("{}.{}", g.edge(dart_edge(d)).name, dart_end(d).token())).collect::<Vec<_>>())
        .collect::<Vec<_>>());
    value["dehn"] = json!(dehn);
    emit(json, value, text)
}

fn trees(g: &ParsedGraph, cover: Option<&str>, json: bool) -> Result<Output, String> {
    let (graph, label) = match cover {
        Some(spec) => {
            let lam: SublatticeSpec = spec.parse().map_err(err)?;
            (voltage(g)?.cover_graph(&lam).map_err(err)?, format!("cover {lam}"))
        }
        None => (g.finite().clone(), "graph".to_string()),
    };
    let comps = graph.connected_components().len();
    let t = complexity(&graph);
    let text = format!(
        "{label}: {} vertices, {} edges, {comps} component(s)\ncomplexity T = {t}\n",
        graph.num_vertices(),
        graph.num_edges()
    );
    let value = json!({
        "graph": label,
        "vertices": graph.num_vertices(),
        "edges": graph.num_edges(),
        "components": comps,
        "complexity": t.to_string(),
        "tree_count": tree_count(&graph).ok().map(|t| t.to_string()),
    });
    emit(json, value, text)
}

fn growth_output(rep: &GrowthReport, json: bool) -> Result<Output, String> {
    let gaps = rep.gaps();
    let mut t = Table::new(&["r", "T", "(1/r) log T", "gap"]);
    for (row, gap) in rep.rows.iter().zip(&gaps) {
        t.row(vec![row.r.to_string(), row.trees.to_string(), format!("{:.10}", row.normalized_log), format!("{gap:+.6}")]);
    }
    let text = format!("mode {}, reference {:.10}\n{}", rep.mode.name(), rep.reference, t.render());
    let value = json!({
        "mode": rep.mode.name(),
        "reference": rep.reference,
        "rows": rep.rows.iter().zip(&gaps).map(|(r, g)| json!({
            "r": r.r,
            "trees": r.trees.to_string(),
            "normalized_log": r.normalized_log,
            "gap": g,
        })).collect::<Vec<_>>(),
    });
    emit(json, value, text)
}

fn growth(vg: &VoltageGraph, mode: Mode, max: u64, fibers: usize, json: bool) -> Result<Output, String> {
    let d0 = delta0(vg).map_err(err)?;
    let m = mahler(&d0, fibers).map_err(err)?.value;
    let rep = match mode {
        Mode::Covers => growth_covers(vg, &cover_schedule(vg.rank(), 2, max), m),
        Mode::Restrictions => {
            let k = vg.base().num_vertices() as f64;
            growth_restrictions(vg, &restriction_schedule(vg.rank(), 2, max), m / k)
        }
    }
    .map_err(err)?;
    growth_output(&rep, json)
}

fn crsf(vg: &VoltageGraph, json: bool) -> Result<Output, String> {
    let r = crsf_coefficients(vg).map_err(err)?;
    let d0 = delta0(vg).map_err(err)?;
    let same = |p: &LaurentPoly| !d0.is_zero() && p.normalize().ok().as_ref() == Some(&d0);
    let mut t = Table::new(&["k", "C_k"]);
    for (i, c) in r.counts.iter().enumerate() {
        t.row(vec![(i + 1).to_string(), c.to_string()]);
    }
    let text = format!(
        "{}sum C_k (2-x-x^-1)^k = {}\nwinding-weighted sum = {}\ndelta_0 = {d0}\nmatches delta_0: {} (weighted: {})\n",
        t.render(),
        r.reconstruction,
        r.weighted,
        same(&r.reconstruction),
        same(&r.weighted)
    );
    let value = json!({
        "counts": r.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "reconstruction": r.reconstruction.to_string(),
        "weighted": r.weighted.to_string(),
        "unit_windings": r.unit_windings,
        "delta0": d0.to_string(),
        "matches": same(&r.reconstruction),
        "weighted_matches": same(&r.weighted),
    });
    emit(json, value, text)
}

fn kappa(vg: &VoltageGraph, json: bool) -> Result<Output, String> {
    let cut = annular_cut(vg).map_err(err)?;
    let names: Vec<&str> = cut.iter().map(|&v| vg.base().vertex_name(v)).collect();
    let mut text = format!("kappa = {}\ncut set: {}\n", cut.len(), names.join(" "));
    let mut value = json!({"kappa": cut.len(), "cut": names});
    if cut.len() == 1 {
        let h = kappa_one_split(vg).map_err(err)?;
        let t = tree_count(&h).map_err(err)?;
        let _ = writeln!(text, "split graph H: {} vertices, {} edges, tau(H) = {t}", h.num_vertices(), h.num_edges());
        value["tau_split"] = json!(t.to_string());
    }
    emit(json, value, text)
}

fn mahler_text(f: &LaurentPoly, m: &MahlerResult) -> String {
    let fibers = if m.samples > 0 { format!(", fibers {}", m.samples) } else { String::new() };
    format!("m({f}) = {:.10}\nmethod {}, error estimate {:.3e}{fibers}\n", m.value, m.method.name(), m.error_estimate)
}

fn mahler_json(f: &LaurentPoly, m: &MahlerResult) -> Value {
    json!({
        "polynomial": f.to_string(),
        "value": m.value,
        "method": m.method.name(),
        "error_estimate": m.error_estimate,
        "samples": m.samples,
    })
}
