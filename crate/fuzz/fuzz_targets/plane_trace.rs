//! Face and medial tracing on any accepted rotation system: no panics, and
//! every dart lies on exactly one face and is crossed by the medial curves.
#![no_main]

use lapgraph_core::format::parse_graph_file;
use lapgraph_core::planar::{medial_components, medial_components_voltage};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = parse_graph_file(text) else { return };
    let Some(pg) = g.plane() else { return };
    if pg.num_darts() > 512 {
        return;
    }
    let faces = pg.faces();
    let on_faces: usize = faces.iter().map(|f| f.darts.len()).sum();
    assert_eq!(on_faces, pg.num_darts());
    let _ = pg.check_planar();
    let comps = if pg.voltage_graph().rank() == 1 {
        let _ = pg.check_annulus();
        medial_components_voltage(pg).expect("rank 1").components
    } else {
        medial_components(pg)
    };
    let crossings: usize = comps.iter().map(|c| c.crossings.len()).sum();
    assert_eq!(crossings, pg.num_darts());
});
