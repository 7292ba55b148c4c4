use hamming_terwilliger::hamming::*;
use hamming_terwilliger::{HammingGraph, Matrix, Rational};
use proptest::prelude::*;

fn graph(d: usize, q: usize) -> HammingGraph {
    HammingGraph::new(d, q).unwrap()
}

/// Neighbour sums straight from the definition of adjacency.
fn neighbor_sum(g: &HammingGraph, v: &[Rational]) -> Vec<Rational> {
    (0..g.vertex_count())
        .map(|x| {
            let vx = g.vertex(x);
            (0..g.vertex_count())
                .filter(|&y| hamming_distance(g, &vx, &g.vertex(y)).unwrap() == 1)
                .map(|y| v[y].clone())
                .sum()
        })
        .collect()
}

#[test]
fn q_polynomial_for_small_cases() {
    for d in 1..=3 {
        for q in [3, 4] {
            let g = graph(d, q);
            let report = q_polynomial_check(&g, &idempotents(&g).unwrap()).unwrap();
            assert!(report.all_passed(), "D={d} q={q}: {:?}", report.first_failure);
        }
    }
}

#[test]
fn idempotent_ranks() {
    for d in 1..=3 {
        for q in [3, 4] {
            let g = graph(d, q);
            for (i, e) in idempotents(&g).unwrap().iter().enumerate() {
                assert_eq!(e.rank(), binomial(d, i) * (q - 1).pow(i as u32));
            }
        }
    }
}

#[test]
fn krawtchouk_values_at_zero_are_shell_sizes() {
    for (d, q) in [(3, 3), (4, 5)] {
        let g = graph(d, q);
        for i in 0..=d {
            let k = krawtchouk(d, q, i, 0);
            assert_eq!(k, g.shell_size(i).into());
        }
    }
}

#[test]
fn intersection_numbers_for_small_cases() {
    for (d, q) in [(1, 3), (2, 3), (3, 3), (2, 5), (3, 4)] {
        let t = intersection_numbers(&graph(d, q)).unwrap();
        for i in 0..=d {
            assert_eq!(t.a[i] + t.b[i] + t.c[i], d * (q - 1));
        }
    }
}

#[test]
fn materialization_cap_from_builder() {
    let g = graph(4, 3).with_cap(80);
    assert!(adjacency(&g).is_err());
    assert_eq!(adjacency_operator(&g).dim(), 81);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operator_equals_neighbor_sum(d in 1usize..=3, q in 3usize..=5, seed in proptest::collection::vec(-3i64..=3, 125)) {
        let g = graph(d, q);
        let v: Vec<Rational> = seed.into_iter().cycle().take(g.vertex_count()).map(Rational::from_int).collect();
        prop_assert_eq!(adjacency_operator(&g).apply(&v).unwrap(), neighbor_sum(&g, &v));
    }

    #[test]
    fn components_sum_back(d in 1usize..=3, q in 3usize..=4, seed in proptest::collection::vec(-3i64..=3, 64)) {
        let g = graph(d, q);
        let v: Vec<Rational> = seed.into_iter().cycle().take(g.vertex_count()).map(Rational::from_int).collect();
        let parts = idempotent_components(&g, &v).unwrap();
        let mut total = vec![Rational::zero(); v.len()];
        for p in &parts {
            for (t, x) in total.iter_mut().zip(p) {
                *t += x;
            }
        }
        prop_assert_eq!(&total, &v);
        let op = adjacency_operator(&g);
        for (i, p) in parts.iter().enumerate() {
            let theta = Rational::from_int(g.theta(i));
            let expected: Vec<Rational> = p.iter().map(|x| x * &theta).collect();
            prop_assert_eq!(op.apply(p).unwrap(), expected);
        }
    }

    #[test]
    fn dual_adjacency_matches_distance(d in 1usize..=3, q in 3usize..=5, x in 0usize..125) {
        let g = graph(d, q);
        let x = x % g.vertex_count();
        let dist = hamming_distance(&g, &vec![0; d], &g.vertex(x)).unwrap();
        let diag = dual_adjacency_diagonal(&g);
        prop_assert_eq!(diag[x].clone(), Rational::from_int((d * (q - 1)) as i64 - (q * dist) as i64));
    }
}

#[test]
fn text_format_round_trip_for_scheme_matrices() {
    let g = graph(2, 3);
    for m in idempotents(&g).unwrap() {
        assert_eq!(Matrix::from_text(&m.to_text()).unwrap(), m);
    }
}
