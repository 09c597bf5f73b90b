use hardpart::complex::{alternating_sum, DEFAULT_FACE_BUDGET};
use hardpart::morse::{check_acyclic, evaluate_tree, morse_consistency, tree_generators, validate_tree, TreeFamily};

fn run(family: TreeFamily, m: usize) {
    let gen = tree_generators(family, m).unwrap();
    validate_tree(&gen.graph, &gen.tree).unwrap();
    let ev = evaluate_tree(&gen.graph, &gen.tree, 12_000_000).unwrap();
    check_acyclic(&ev.complex, &ev.matching).unwrap();
    let (count, dim) = family.predicted_critical(m);
    let by_dim = ev.critical_by_dim();
    assert_eq!(by_dim.len(), 1, "{family:?} m={m}: {by_dim:?}");
    assert_eq!(by_dim.get(&dim), Some(&count), "{family:?} m={m}");
    let mut predicted: Vec<u64> = gen.predicted.iter().map(|f| f.iter().fold(0u64, |a, &v| a | 1 << ev.complex.labels().iter().position(|&l| l == v).unwrap())).collect();
    predicted.sort_unstable();
    assert_eq!(predicted, ev.critical);
    let euler: i128 = by_dim.iter().map(|(&p, &u)| if p % 2 == 0 { u as i128 } else { -(u as i128) }).sum();
    assert_eq!(euler, -alternating_sum(&gen.graph).unwrap());
}

#[test]
fn generated_trees_up_to_eight_rows() {
    for family in [TreeFamily::Cyl2, TreeFamily::Cyl3, TreeFamily::Cyl4, TreeFamily::Hex2] {
        for m in 1..=8 {
            run(family, m);
        }
    }
}

#[test]
fn morse_inequalities_small() {
    for family in TreeFamily::ALL {
        for m in 1..=4 {
            let gen = tree_generators(family, m).unwrap();
            let ev = evaluate_tree(&gen.graph, &gen.tree, DEFAULT_FACE_BUDGET).unwrap();
            let rep = morse_consistency(&ev.complex, &ev.matching).unwrap();
            let (count, dim) = family.predicted_critical(m);
            assert_eq!(rep.wedge, Some((dim, count)));
            assert_eq!(rep.betti.get(&dim), Some(&count));
        }
    }
}
