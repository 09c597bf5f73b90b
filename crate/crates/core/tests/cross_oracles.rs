use hardpart::complex::{alternating_sum_enumerated, gamma_delta_o, DEFAULT_FACE_BUDGET};
use hardpart::grid::induced_delete;
use hardpart::morse::{check_acyclic, mo_matching, morse_consistency};
use hardpart::transfer::partition_function;
use hardpart::*;
use proptest::prelude::*;

fn small_graph(fi: usize, m: usize, n: usize, drop: &[usize]) -> Option<Graph> {
    let family = Family::ALL[fi];
    let (r, c) = family.layout(m, n);
    if r * c > 20 {
        return None;
    }
    let g = family.build(m, n).ok()?;
    let live = g.live_vertices();
    let drop: Vec<usize> = drop.iter().filter_map(|&d| live.get(d % live.len().max(1)).copied()).collect();
    induced_delete(&g, &drop).ok()
}

fn first_vertex_greedy(g: &Graph) -> Vec<usize> {
    let mut o: Vec<usize> = Vec::new();
    for v in g.occupiable() {
        if o.iter().all(|&u| !g.has_edge(u, v)) {
            o.push(v);
        }
    }
    o
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn euler_characteristic_three_ways(fi in 0usize..7, m in 1usize..5, n in 1usize..5, drop in prop::collection::vec(0usize..32, 0..3)) {
        let Some(g) = small_graph(fi, m, n, &drop) else { return Ok(()) };
        let c = independence_complex(&g, DEFAULT_FACE_BUDGET).unwrap();
        let h = homology_profile(&c);
        let z = alternating_sum(&g).unwrap();
        prop_assert_eq!(z, alternating_sum_enumerated(&g).unwrap());
        prop_assert_eq!(z, -h.euler());
        prop_assert_eq!(z, -c.reduced_euler());
    }

    #[test]
    fn transfer_agrees_with_enumeration(fi in 0usize..7, m in 1usize..5, n in 1usize..6) {
        let family = Family::ALL[fi];
        let g = family.build(m, n).unwrap();
        prop_assume!(g.occupiable().len() <= 22);
        let (z, _) = partition_function(family, m, n, 5000).unwrap();
        prop_assert_eq!(z, alternating_sum_enumerated(&g).unwrap());
    }

    #[test]
    fn suspension_and_cone(fi in 0usize..7, m in 1usize..4, n in 1usize..5) {
        let Some(g) = small_graph(fi, m, n, &[]) else { return Ok(()) };
        let c = independence_complex(&g, DEFAULT_FACE_BUDGET).unwrap();
        let h = homology_profile(&c);
        let hs = homology_profile(&c.susp());
        prop_assert_eq!(hs.nonzero(), h.shifted(1).nonzero());
        prop_assert!(homology_profile(&c.cone()).is_acyclic());
    }

    #[test]
    fn independent_set_matching(fi in 0usize..7, m in 1usize..4, n in 1usize..5) {
        let Some(g) = small_graph(fi, m, n, &[]) else { return Ok(()) };
        let o = first_vertex_greedy(&g);
        let (c, matching, x) = mo_matching(&g, &o, DEFAULT_FACE_BUDGET).unwrap();
        check_acyclic(&c, &matching).unwrap();
        prop_assert!(morse_consistency(&c, &matching).is_ok());
        let oc = gamma_delta_o(&g, &o, DEFAULT_FACE_BUDGET).unwrap();
        prop_assert_eq!(oc.x.len(), x.len());
        if oc.delta.is_full_simplex() && oc.delta.support() != 0 {
            prop_assert_eq!(homology_profile(&c).nonzero(), homology_profile(&oc.gamma.susp()).nonzero());
        }
    }
}

#[test]
fn tabulated_homology() {
    let cases = [
        (Family::SquareCyl, 3, 4, vec![(2, 3)]),
        (Family::SquareCyl, 2, 6, vec![(2, 1)]),
        (Family::SquareCyl, 1, 9, vec![(2, 2)]),
        (Family::HexCyl, 2, 2, vec![(2, 3)]),
        (Family::HexTorus, 2, 2, vec![(1, 3)]),
    ];
    for (family, m, n, want) in cases {
        let c = independence_complex(&family.build(m, n).unwrap(), DEFAULT_FACE_BUDGET).unwrap();
        let h = homology_profile(&c);
        assert_eq!(h.nonzero(), want, "{} {m} {n}", family.name());
        assert!(!h.has_torsion());
    }
}
