//! Clique constructions, neighbourhood structure and the counterexample
//! family through the public API.

use gpaley::cliquezoo::{
    alpha_fq_one_construction, alpha_q0_construction, check_nearly_maximal, classify_shared_neighbourhood,
    counterexample_family, fq_alpha_construction, fq_neighbourhood, nearly_maximal_bound, neighbourhood_profile,
    q0_construction, subfield_construction, CliqueZooError, NeighbourhoodClass,
};
use gpaley::ffield::Elem;
use gpaley::gpgraph::GpGraph;
use proptest::prelude::*;

fn graph(q: u64, m: u32) -> GpGraph {
    GpGraph::for_q(q, m).unwrap()
}

#[test]
fn construction_sizes() {
    let g = graph(5, 2);
    let r = fq_alpha_construction(&g).unwrap();
    assert_eq!(r.clique.len(), 3);
    assert!(r.is_maximal());

    let g = graph(11, 3);
    assert_eq!(fq_alpha_construction(&g).unwrap().clique.len(), 5);
    assert_eq!(alpha_fq_one_construction(&g).unwrap().clique.len(), 5);
    assert_eq!(q0_construction(&g).unwrap().clique.len(), 5);
    assert_eq!(alpha_q0_construction(&g).unwrap().clique.len(), 5);

    assert_eq!(alpha_fq_one_construction(&graph(7, 4)).unwrap().clique.len(), 3);
    let g = graph(11, 4);
    assert!(matches!(
        alpha_fq_one_construction(&g),
        Err(CliqueZooError::PreconditionFailed(_))
    ));
    assert!(matches!(
        q0_construction(&g),
        Err(CliqueZooError::PreconditionFailed(_))
    ));
    assert_eq!(alpha_q0_construction(&g).unwrap().clique.len(), 3);
}

#[test]
fn pencil_clique_in_729_is_not_maximal() {
    let g = graph(27, 7);
    let r = fq_alpha_construction(&g).unwrap();
    // 7 divides (27 + 1)/2, so −α is included.
    assert_eq!(r.clique.len(), 5);
    assert!(r.clique.contains(g.field().neg(g.field().alpha())));
    let w = r.maximality.witness().expect("non-maximal");
    assert!(r.clique.vertices().iter().all(|&v| g.adjacent(v, w)));
}

#[test]
fn neighbourhood_examples() {
    let g = graph(11, 3);
    assert_eq!(fq_neighbourhood(&g, g.field().alpha()).len(), 3);

    let g = graph(27, 7);
    let f = g.field();
    let f3 = f.subfield(1).unwrap();
    let u = f.subfield(2).unwrap().into_iter().find(|x| !f3.contains(x)).unwrap();
    let p = neighbourhood_profile(&g, u).unwrap();
    assert_eq!(p.n_of_u, f3);
    assert!(matches!(p.classification, NeighbourhoodClass::FpCosetUnion { .. }));
    assert_eq!(
        neighbourhood_profile(&g, f.one()).unwrap_err(),
        CliqueZooError::VertexInSubfield(f.one())
    );

    let shared = classify_shared_neighbourhood(&g, u, f.add(u, f.one())).unwrap();
    assert_eq!(shared.label(), "HORIZONTAL");
}

#[test]
fn nearly_maximal_examples() {
    assert_eq!(nearly_maximal_bound(11, 3), 5);
    let g = graph(11, 3);
    let r = check_nearly_maximal(&g, g.field().alpha()).unwrap();
    assert!(r.pass && r.contained);
    assert!(r.extension_sizes.iter().all(|&s| s <= 5));

    // gcd(q − 1, w − 2) = 1: N(u) ∪ {u} is already maximal.
    let g = graph(5, 2);
    let r = check_nearly_maximal(&g, g.field().alpha()).unwrap();
    assert_eq!(r.extension_sizes, vec![3]);

    // gcd = 2: the unique maximal extension adds u^q.
    let g = graph(7, 2);
    let u = g.field().alpha();
    let r = check_nearly_maximal(&g, u).unwrap();
    assert_eq!(r.extension_sizes, vec![g.w() as usize + 1]);
}

#[test]
fn counterexample_r3_census() {
    let r = counterexample_family(3, true, false).unwrap();
    assert!(r.pass);
    assert_eq!(r.sizes, Some(vec![9, 27]));
    assert!(!r.sizes.as_ref().unwrap().contains(&5));
}

#[test]
fn counterexample_r5_subfield() {
    let r = counterexample_family(5, false, false).unwrap();
    assert!(r.pass && r.subfield_maximal);
    assert_eq!((r.q, r.m), (125, 21));
    let g = graph(125, 21);
    let sub = subfield_construction(&g, 2).unwrap();
    assert_eq!(sub.clique.len(), 25);
    assert!(sub.is_maximal());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbourhood_invariants(
        (q, m, u) in prop::sample::select(gpaley::campaign::list_pairs(3, 49))
            .prop_flat_map(|(q, m)| (Just(q), Just(m), 0..(q * q) as u32))
    ) {
        let g = graph(q, m);
        let f = g.field();
        let u = Elem::from_index(u);
        prop_assume!(!f.is_in_fq(u));
        let n = fq_neighbourhood(&g, u);
        prop_assert_eq!(n.len() + 1, g.w() as usize);
        prop_assert_eq!(&n, &fq_neighbourhood(&g, f.frobenius(u)));
        // N(u) is what an exhaustive scan of F_q finds.
        let scan: Vec<Elem> = f.fq_elements().filter(|&x| g.is_connection(f.sub(u, x))).collect();
        let mut scan_sorted = scan;
        scan_sorted.sort_unstable();
        prop_assert_eq!(n, scan_sorted);
    }
}
