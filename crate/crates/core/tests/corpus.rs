mod common;

use lapgraph_core::format::{parse_graph_file, write_graph};
use lapgraph_core::graph::SublatticeSpec;
use lapgraph_core::spanning::{complexity, delta0, ln_big, tree_count};
use num_bigint::BigInt;
use num_traits::{One, Zero};

const FILES: [&str; 6] = ["ladder.lap", "girder.lap", "circulant12.lap", "grid.lap", "mitsubishi.lap", "k4.lap"];

fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// `(n/2) ((2+√3)^n + (2-√3)^n - 2)` via the integer recurrence `s_n = 4 s_{n-1} - s_{n-2}`.
fn prism_trees(n: u64) -> BigInt {
    let (mut s0, mut s1) = (BigInt::from(2), BigInt::from(4));
    for _ in 1..n {
        let s2 = BigInt::from(4) * &s1 - &s0;
        s0 = s1;
        s1 = s2;
    }
    BigInt::from(n) * (s1 - 2) / 2
}

#[test]
fn files_round_trip() {
    for f in FILES {
        let g = common::data(f);
        let again = parse_graph_file(&write_graph(&g)).unwrap();
        assert_eq!(again, g, "{f}");
    }
}

#[test]
fn ladder_covers_are_prisms() {
    let vg = common::data("ladder.lap").voltage().unwrap().clone();
    for n in 3..=20 {
        let cover = vg.cover_graph(&SublatticeSpec::Cyclic(n as i64)).unwrap();
        assert_eq!(tree_count(&cover).unwrap(), prism_trees(n), "n = {n}");
    }
}

#[test]
fn circulant_covers_follow_fibonacci() {
    let vg = common::data("circulant12.lap").voltage().unwrap().clone();
    for n in 5..=30 {
        let cover = vg.cover_graph(&SublatticeSpec::Cyclic(n as i64)).unwrap();
        assert_eq!(tree_count(&cover).unwrap(), BigInt::from(n) * fibonacci(n).pow(2), "n = {n}");
    }
}

#[test]
fn torus_covers_match_eigenvalue_product() {
    let vg = common::data("grid.lap").voltage().unwrap().clone();
    for n in 2..=8 {
        let cover = vg.cover_graph(&SublatticeSpec::square(n)).unwrap();
        let mut log = 0.0;
        for j in 0..n {
            for k in 0..n {
                if (j, k) != (0, 0) {
                    let t = |a: i64| (2.0 * std::f64::consts::PI * a as f64 / n as f64).cos();
                    log += (4.0 - 2.0 * t(j) - 2.0 * t(k)).ln();
                }
            }
        }
        let want = log - 2.0 * (n as f64).ln();
        let got = ln_big(&complexity(&cover));
        assert!((got - want).abs() < 1e-9 * want, "n = {n}: {got} vs {want}");
    }
}

#[test]
fn delta0_is_nonzero_on_connected_quotients() {
    for f in ["ladder.lap", "girder.lap", "circulant12.lap", "grid.lap", "mitsubishi.lap"] {
        let vg = common::data(f).voltage().unwrap().clone();
        assert!(!delta0(&vg).unwrap().is_zero(), "{f}");
    }
}
