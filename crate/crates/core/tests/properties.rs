mod common;

use lapgraph_core::algebra::{elementary_divisor, first_nonzero_divisor, CoeffField, LaurentPoly};
use lapgraph_core::colorings::{
    bicycle_basis_via_intersection, bicycle_basis_via_kernel, conservative_vertex_basis,
};
use lapgraph_core::planar::{
    dehn_extend, dehn_restrict, is_dehn_coloring, medial_components, medial_components_voltage, shank_basis,
};
use lapgraph_core::spanning::{complexity, delta0, tree_count};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matrix_tree_matches_brute_force(seed in any::<u64>(), n in 1usize..=6, extra in 0usize..=4) {
        let mut rng = common::rng(seed);
        let g = if rng.gen_bool(0.8) {
            common::connected_graph(&mut rng, n, extra, true)
        } else {
            common::any_graph(&mut rng, n, (n + extra).min(9))
        };
        prop_assume!(g.num_edges() <= 9);
        let brute = common::brute_tree_count(&g);
        if g.is_connected() {
            prop_assert_eq!(tree_count(&g).unwrap(), BigInt::from(brute));
            prop_assert_eq!(complexity(&g), BigInt::from(brute));
        } else {
            prop_assert_eq!(brute, 0);
            prop_assert!(tree_count(&g).is_err());
            let per_component: u64 = g
                .connected_components()
                .iter()
                .map(|c| common::brute_tree_count(&g.induced(c)))
                .product();
            prop_assert_eq!(complexity(&g), BigInt::from(per_component));
        }
    }

    #[test]
    fn bicycle_methods_agree(seed in any::<u64>(), n in 1usize..=7, m in 0usize..=10) {
        let mut rng = common::rng(seed);
        let g = common::any_graph(&mut rng, n, m);
        for f in common::fields() {
            let a = bicycle_basis_via_kernel(&g, f);
            let b = bicycle_basis_via_intersection(&g, f);
            prop_assert!(a.spans_same(&b.vectors), "over {}", f);
            for v in &a.vectors {
                prop_assert!(common::is_cycle(&g, f, v));
            }
        }
    }

    #[test]
    fn residues_are_bicycles(seed in any::<u64>(), n in 1usize..=7, chords in 0usize..=7) {
        let mut rng = common::rng(seed);
        let pg = common::plane_graph(&mut rng, n, chords);
        let g = pg.graph();
        let b = bicycle_basis_via_kernel(g, CoeffField::gf2());
        for c in medial_components(&pg) {
            prop_assert!(b.contains(&c.residue_vector(g.num_edges())));
        }
    }

    #[test]
    fn shank_basis_spans_bicycles(seed in any::<u64>(), n in 1usize..=7, chords in 0usize..=7) {
        let mut rng = common::rng(seed);
        let pg = common::plane_graph(&mut rng, n, chords);
        let comps = medial_components(&pg).len();
        let b = bicycle_basis_via_intersection(pg.graph(), CoeffField::gf2());
        for base in 0..comps {
            let s = shank_basis(&pg, base).unwrap();
            prop_assert_eq!(s.dim() + 1, comps);
            prop_assert!(s.spans_same(&b.vectors));
        }
    }

    #[test]
    fn dehn_roundtrip_over_gf5(seed in any::<u64>(), n in 1usize..=7, chords in 0usize..=7) {
        let f = CoeffField::Prime(5);
        let mut rng = common::rng(seed);
        let pg = common::plane_graph(&mut rng, n, chords);
        let basis = conservative_vertex_basis(pg.graph(), f);
        let faces = pg.faces().len();
        let mut alpha = vec![f.zero(); pg.graph().num_vertices()];
        for v in &basis.vectors {
            let k = f.from_i64(rng.gen_range(0..5));
            for (a, x) in alpha.iter_mut().zip(v) {
                *a = f.add(a, &f.mul(&k, x));
            }
        }
        let base = rng.gen_range(0..faces);
        let dc = dehn_extend(&pg, f, &alpha, base).unwrap();
        prop_assert!(is_dehn_coloring(&pg, &dc));
        prop_assert_eq!(dehn_restrict(&dc), alpha);
    }

    #[test]
    fn laplacian_polynomials_are_reciprocal(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=3, rank in 1usize..=2) {
        let mut rng = common::rng(seed);
        let g = common::connected_graph(&mut rng, n, extra, true);
        let vg = common::voltage_graph(&mut rng, g, rank, 2);
        let l = vg.laplacian_poly().unwrap();
        let mut prev: Option<LaurentPoly> = None;
        for k in 0..n {
            let d = elementary_divisor(&l, k, CoeffField::Integers).unwrap();
            prop_assert!(d.is_reciprocal());
            if let Some(p) = &prev {
                prop_assert!(d.divides(p) || p.is_zero());
            }
            prev = Some(d);
        }
        let d0 = delta0(&vg).unwrap();
        if rank == 1 {
            let sq = LaurentPoly::from_coeffs(&[1, -2, 1], CoeffField::Integers);
            prop_assert!(sq.divides(&d0));
        } else {
            prop_assert!(d0.eval_at_one().is_zero());
        }
    }

    #[test]
    fn normalize_is_idempotent_and_unit_invariant(
        terms in proptest::collection::vec(((-3i64..=3, -3i64..=3), -5i64..=5), 1..6),
        shift in (-4i64..=4, -4i64..=4),
        negate in any::<bool>(),
    ) {
        for field in [CoeffField::Integers, CoeffField::Rationals, CoeffField::Prime(7)] {
            let f = LaurentPoly::from_terms(2, field, terms.iter().map(|&(e, c)| (e, BigInt::from(c))));
            prop_assume!(!f.is_zero());
            let n = f.normalize().unwrap();
            prop_assert_eq!(n.normalize().unwrap(), n.clone());
            let mut g = f.shift(shift.0, shift.1);
            if negate {
                g = g.scale(&BigInt::from(-1));
            }
            prop_assert_eq!(g.normalize().unwrap(), n);
        }
    }

    #[test]
    fn cover_of_trivial_voltages_is_disjoint_copies(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=3, copies in 1i64..=4) {
        let mut rng = common::rng(seed);
        let g = common::connected_graph(&mut rng, n, extra, false);
        let vg = common::voltage_graph(&mut rng, g.clone(), 1, 0);
        let cover = vg.cover_graph(&lapgraph_core::graph::SublatticeSpec::Cyclic(copies)).unwrap();
        prop_assert_eq!(cover.connected_components().len() as i64, copies);
        let t = tree_count(&g).unwrap();
        prop_assert_eq!(complexity(&cover), num_traits::pow(t, copies as usize));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn medial_curves_match_gf2_divisors_on_annuli(seed in any::<u64>(), n in 1usize..=5, chords in 1usize..=5) {
        let mut rng = common::rng(seed);
        let Some(pg) = common::annulus_quotient(&mut rng, n, chords) else {
            return Ok(());
        };
        prop_assume!(pg.graph().num_edges() <= 8);
        let m = medial_components_voltage(&pg).unwrap();
        let l = pg.voltage_graph().laplacian_poly().unwrap();
        let (s, ds) = first_nonzero_divisor(&l, CoeffField::gf2()).unwrap();
        let deg = ds.degree_span().unwrap().0;
        prop_assert_eq!(deg as u64, m.noncompact);
        prop_assert_eq!(s, m.compact_orbits);
    }
}
