//! Graph-level invariants on random small `GP(q², m)`, checked against the
//! raw definition `u ~ v ⇔ u − v is a nonzero m-th power`.

use std::collections::BTreeSet;

use gpaley::campaign::list_pairs;
use gpaley::ffield::Elem;
use gpaley::geometry::{is_mary_line, mary_lines_through};
use gpaley::gpgraph::{
    enumerate_maximal_cliques, enumerate_rooted, is_maximal_clique, verify_automorphism, Automorphism, Clique,
    EnumLimits, GpGraph, Maximality,
};
use proptest::prelude::*;

fn pairs() -> Vec<(u64, u32)> {
    list_pairs(3, 27)
}

/// `u − v` is a nonzero `m`-th power, by searching for a root.
fn adjacent_by_definition(g: &GpGraph, u: Elem, v: Elem) -> bool {
    let f = g.field();
    let diff = f.sub(u, v);
    !diff.is_zero() && f.nonzero_elements().any(|y| f.pow(y, g.m() as i64).unwrap() == diff)
}

fn graph_and_vertices() -> impl Strategy<Value = (u64, u32, u32, u32)> {
    prop::sample::select(pairs()).prop_flat_map(|(q, m)| {
        let order = (q * q) as u32;
        (Just(q), Just(m), 0..order, 0..order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_matches_definition((q, m, a, b) in graph_and_vertices()) {
        let g = GpGraph::for_q(q, m).unwrap();
        let (u, v) = (Elem::from_index(a), Elem::from_index(b));
        prop_assert_eq!(g.adjacent(u, v), adjacent_by_definition(&g, u, v));
        prop_assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
        prop_assert_eq!(g.neighbourhood(u).contains(v.index() as usize), g.adjacent(u, v));
    }

    #[test]
    fn mary_lines_are_cliques((q, m, a, _) in graph_and_vertices()) {
        let g = GpGraph::for_q(q, m).unwrap();
        let pt = Elem::from_index(a);
        let lines = mary_lines_through(&g, pt);
        prop_assert_eq!(lines.len(), g.w() as usize);
        for line in &lines {
            prop_assert!(is_mary_line(&g, line));
            prop_assert_eq!(line.points().len(), q as usize);
            prop_assert!(g.is_clique(line.points()));
        }
        // Neighbours of pt are exactly the other points on its m-ary lines.
        let on_lines: BTreeSet<Elem> = lines.iter().flat_map(|l| l.points().iter().copied()).filter(|&x| x != pt).collect();
        let neighbours: BTreeSet<Elem> = g.neighbours(pt).into_iter().collect();
        prop_assert_eq!(on_lines, neighbours);
    }

    #[test]
    fn maximality_witness_extends((q, m, a, b) in graph_and_vertices()) {
        let g = GpGraph::for_q(q, m).unwrap();
        let (u, v) = (Elem::from_index(a), Elem::from_index(b));
        if u == v || !g.adjacent(u, v) {
            return Ok(());
        }
        let mut clique = vec![u, v];
        clique.sort_unstable();
        // Grow greedily; every witness must extend the clique.
        loop {
            match is_maximal_clique(&g, &clique) {
                Maximality::Maximal => break,
                Maximality::Extendable { witness } => {
                    prop_assert!(!clique.contains(&witness));
                    prop_assert!(clique.iter().all(|&x| g.adjacent(x, witness)));
                    clique.push(witness);
                    clique.sort_unstable();
                }
            }
        }
        prop_assert!(Clique::new(&g, clique.clone()).is_ok());
        prop_assert!(g.vertices().all(|x| clique.contains(&x) || clique.iter().any(|&y| !g.adjacent(x, y))));
    }
}

#[test]
fn affine_and_frobenius_maps_are_automorphisms() {
    for (q, m) in [(5u64, 3u32), (9, 2), (9, 5), (13, 7)] {
        let g = GpGraph::for_q(q, m).unwrap();
        let f = g.field();
        let a = f.from_log(m as u64 * 3);
        for e in 0..f.degree() {
            let map = Automorphism::new(&g, a, f.beta(), e).unwrap();
            assert!(verify_automorphism(&g, &map), "q={q} m={m} e={e}");
        }
        let non_power = f.beta();
        assert!(Automorphism::new(&g, non_power, Elem::ZERO, 0).is_err());
    }
}

#[test]
fn rooted_enumeration_realises_the_full_spectrum() {
    for (q, m) in pairs().into_iter().filter(|&(q, _)| q <= 13) {
        let g = GpGraph::for_q(q, m).unwrap();
        let full = enumerate_maximal_cliques(&g, &EnumLimits::default(), false).unwrap();
        let rooted = enumerate_rooted(&g, &EnumLimits::default());
        assert_eq!(full.sizes(), rooted.sizes(), "q={q} m={m}");
        let root = [Elem::ZERO, Elem::ONE];
        let through_root: BTreeSet<Vec<Elem>> = full
            .cliques
            .iter()
            .filter(|c| root.iter().all(|&r| c.contains(r)))
            .map(|c| c.vertices().to_vec())
            .collect();
        let rooted_set: BTreeSet<Vec<Elem>> = rooted.cliques.iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(through_root, rooted_set, "q={q} m={m}");
    }
}
