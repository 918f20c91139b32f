//! Parsing never panics, and accepted files survive a write/parse round trip.
#![no_main]

use lapgraph_core::format::{parse_graph_file, write_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_file(text) {
        let again = parse_graph_file(&write_graph(&g)).expect("written files parse");
        assert_eq!(again, g);
    }
});
