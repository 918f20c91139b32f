#![allow(dead_code)]

use std::collections::VecDeque;

use lapgraph_core::algebra::{CoeffField, Scalar};
use lapgraph_core::format::{parse_graph_file, ParsedGraph};
use lapgraph_core::graph::{FiniteGraph, VoltageGraph};
use lapgraph_core::planar::{dart, End, PlaneGraph};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data(name: &str) -> ParsedGraph {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_graph_file(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Connected multigraph: a random spanning tree plus `extra` random edges,
/// loops allowed when `loops` is set.
pub fn connected_graph(rng: &mut impl Rng, n: usize, extra: usize, loops: bool) -> FiniteGraph {
    let mut g = FiniteGraph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    let mut e = 0;
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (t, h) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        g.add_edge(&format!("e{e}"), t, h).unwrap();
        e += 1;
    }
    let mut added = 0;
    let extra = if n < 2 && !loops { 0 } else { extra };
    while added < extra {
        let t = rng.gen_range(0..n);
        let h = rng.gen_range(0..n);
        if t == h && !loops {
            continue;
        }
        g.add_edge(&format!("e{e}"), t, h).unwrap();
        e += 1;
        added += 1;
    }
    g
}

/// Any multigraph, possibly disconnected.
pub fn any_graph(rng: &mut impl Rng, n: usize, m: usize) -> FiniteGraph {
    let mut g = FiniteGraph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    for e in 0..m {
        let t = rng.gen_range(0..n);
        let h = rng.gen_range(0..n);
        g.add_edge(&format!("e{e}"), t, h).unwrap();
    }
    g
}

pub fn voltage_graph(rng: &mut impl Rng, g: FiniteGraph, rank: usize, spread: i64) -> VoltageGraph {
    let volts = (0..g.num_edges()).map(|_| (0..rank).map(|_| rng.gen_range(-spread..=spread)).collect()).collect();
    VoltageGraph::new(g, rank, volts).unwrap()
}

/// Connected plane graph grown by pendant edges and face chords, so every
/// step preserves the sphere embedding.
pub fn plane_graph(rng: &mut impl Rng, n: usize, chords: usize) -> PlaneGraph {
    let mut g = FiniteGraph::new();
    let mut rot: Vec<Vec<usize>> = Vec::new();
    g.add_vertex("v0").unwrap();
    rot.push(Vec::new());
    for i in 1..n {
        let v = rng.gen_range(0..i);
        let w = g.add_vertex(&format!("v{i}")).unwrap();
        let outward = rng.gen_bool(0.5);
        let e = if outward {
            g.add_edge(&format!("e{}", g.num_edges()), v, w).unwrap()
        } else {
            g.add_edge(&format!("e{}", g.num_edges()), w, v).unwrap()
        };
        let (dv, dw) = if outward { (dart(e, End::Tail), dart(e, End::Head)) } else { (dart(e, End::Head), dart(e, End::Tail)) };
        let pos = rng.gen_range(0..=rot[v].len());
        rot[v].insert(pos, dv);
        rot.push(vec![dw]);
    }
    for _ in 0..chords {
        let pg = PlaneGraph::from_finite(g.clone(), rot.clone()).unwrap();
        let faces = pg.faces();
        let nonempty: Vec<_> = faces.iter().filter(|f| !f.darts.is_empty()).collect();
        if nonempty.is_empty() {
            break;
        }
        let face = &nonempty[rng.gen_range(0..nonempty.len())].darts;
        // Corners of the face sit just before each of its darts.
        let a = face[rng.gen_range(0..face.len())];
        let b = face[rng.gen_range(0..face.len())];
        let (va, vb) = (pg.dart_vertex(a), pg.dart_vertex(b));
        let e = g.add_edge(&format!("e{}", g.num_edges()), va, vb).unwrap();
        let (t, h) = (dart(e, End::Tail), dart(e, End::Head));
        let at = rot[va].iter().position(|&d| d == a).unwrap();
        rot[va].insert(at, t);
        let bt = rot[vb].iter().position(|&d| d == b).unwrap();
        rot[vb].insert(bt, h);
    }
    let pg = PlaneGraph::from_finite(g, rot).unwrap();
    pg.check_planar().expect("generator keeps the embedding planar");
    pg
}

/// Rank-1 annulus quotient: a plane graph whose voltages cross a dual path
/// between two distinct faces once, plus a random coboundary.
pub fn annulus_quotient(rng: &mut impl Rng, n: usize, chords: usize) -> Option<PlaneGraph> {
    let pg = plane_graph(rng, n, chords);
    let g = pg.graph().clone();
    let faces = pg.faces();
    if faces.len() < 2 {
        return None;
    }
    let fod = pg.face_of_dart(&faces);
    let from = rng.gen_range(0..faces.len());
    let mut to = rng.gen_range(0..faces.len() - 1);
    if to >= from {
        to += 1;
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; faces.len()];
    let mut seen = vec![false; faces.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(f) = queue.pop_front() {
        for &d in &faces[f].darts {
            let other = fod[d ^ 1];
            if !seen[other] {
                seen[other] = true;
                prev[other] = Some((f, d));
                queue.push_back(other);
            }
        }
    }
    let mut volts = vec![0i64; g.num_edges()];
    let mut f = to;
    while let Some((p, d)) = prev[f] {
        // Unit voltage on the crossed edge: +1 to the face of its tail dart.
        let e = d >> 1;
        volts[e] += if d & 1 == 0 { 1 } else { -1 };
        f = p;
    }
    let potential: Vec<i64> = (0..g.num_vertices()).map(|_| rng.gen_range(-1..=1)).collect();
    for (e, edge) in g.edges().iter().enumerate() {
        volts[e] += potential[edge.head] - potential[edge.tail];
    }
    let rot = (0..g.num_vertices()).map(|v| pg.rotation(v).to_vec()).collect();
    let vg = VoltageGraph::new(g, 1, volts.into_iter().map(|s| vec![s]).collect()).unwrap();
    let out = PlaneGraph::new(vg, rot).unwrap();
    out.check_annulus().expect("one puncture of each sign");
    Some(out)
}

/// Spanning trees by checking every `(n-1)`-subset of edges for acyclicity.
pub fn brute_tree_count(g: &FiniteGraph) -> u64 {
    let n = g.num_vertices();
    let m = g.num_edges();
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut ok = true;
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (a, b) = (find(&mut parent, g.edge(e).tail), find(&mut parent, g.edge(e).head));
                if a == b {
                    ok = false;
                    break;
                }
                parent[a] = b;
            }
        }
        count += ok as u64;
    }
    count
}

pub fn fields() -> [CoeffField; 3] {
    [CoeffField::gf2(), CoeffField::Prime(3), CoeffField::Rationals]
}

/// `Q v = 0` over the field.
pub fn is_cycle(g: &FiniteGraph, f: CoeffField, v: &[Scalar]) -> bool {
    let mut flow = vec![f.zero(); g.num_vertices()];
    for (e, edge) in g.edges().iter().enumerate() {
        flow[edge.head] = f.add(&flow[edge.head], &v[e]);
        flow[edge.tail] = f.sub(&flow[edge.tail], &v[e]);
    }
    flow.iter().all(Zero::is_zero)
}
