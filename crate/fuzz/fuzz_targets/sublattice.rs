//! Sublattice specs: parsing never panics, accepted specs have a consistent
//! index, and small covers have `index * |V|` vertices.
#![no_main]

use lapgraph_core::graph::{FiniteGraph, SublatticeSpec, VoltageGraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<SublatticeSpec>() else { return };
    let Ok(index) = spec.index() else { return };
    if index == 0 || index > 4096 {
        return;
    }
    let rank = match spec {
        SublatticeSpec::Cyclic(_) => 1,
        SublatticeSpec::Plane(_) => 2,
    };
    let g = FiniteGraph::from_names(&["a", "b"], &[("e", "a", "b"), ("l", "a", "a")]).expect("valid");
    let volts = vec![vec![1; rank], vec![-1; rank]];
    let vg = VoltageGraph::new(g, rank, volts).expect("valid");
    let cover = vg.cover_graph(&spec).expect("positive index");
    assert_eq!(cover.num_vertices() as u64, 2 * index);
    assert_eq!(cover.num_edges() as u64, 2 * index);
});
