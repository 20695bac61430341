use cozero::families::pqr_reduced_degree;
use cozero::ideal::ideal_equality_congruence_check;
use cozero::{CozeroGraph, IdealLattice, PolyElement, RingContext};
use num_integer::Integer;
use proptest::prelude::*;

fn lattice(n: u64) -> IdealLattice {
    IdealLattice::enumerate(&RingContext::new(n).unwrap()).unwrap()
}

#[test]
fn records_partition_the_vertices() {
    for n in 2..=48 {
        let l = lattice(n);
        let ctx = l.ctx();
        let mut seen = vec![0usize; l.len()];
        for e in ctx.non_units().filter(|e| !e.is_zero()) {
            let i = l.class_of(e).unwrap();
            seen[i] += 1;
            assert_eq!(
                ctx.principal_ideal(e),
                l.ideals()[i].element_set,
                "n = {n}, e = {e}"
            );
        }
        for (i, rec) in l.ideals().iter().enumerate() {
            assert_eq!(seen[i], rec.weight, "n = {n}");
            assert_eq!(l.generators(i).len(), rec.weight);
            assert_eq!(l.generators(i)[0], rec.canonical_generator);
        }
        let sets: std::collections::HashSet<_> =
            l.ideals().iter().map(|r| &r.element_set).collect();
        assert_eq!(
            sets.len(),
            l.len(),
            "records must be distinct ideals, n = {n}"
        );
    }
}

#[test]
fn inclusion_is_a_partial_order() {
    for n in [8u64, 12, 16, 18, 24, 27, 30, 36] {
        let l = lattice(n);
        let k = l.len();
        for i in 0..k {
            assert!(l.is_included(i, i));
            for j in 0..k {
                let subset = l.ideals()[i]
                    .element_set
                    .is_subset(&l.ideals()[j].element_set);
                assert_eq!(l.is_included(i, j), subset);
                if i != j {
                    assert!(
                        !(l.is_included(i, j) && l.is_included(j, i)),
                        "antisymmetry, n = {n}"
                    );
                }
                for m in 0..k {
                    if l.is_included(i, j) && l.is_included(j, m) {
                        assert!(l.is_included(i, m), "transitivity, n = {n}");
                    }
                }
            }
        }
    }
}

#[test]
fn principal_ideals_are_closed_under_sum_and_product() {
    for n in [6u64, 9, 12] {
        let l = lattice(n);
        let ctx = l.ctx();
        for rec in l.ideals() {
            let members: Vec<PolyElement> = rec.element_set.iter().collect();
            for &x in &members {
                for &y in &members {
                    assert!(rec.element_set.contains(ctx.add(x, y)));
                }
                for r in ctx.elements() {
                    assert!(rec.element_set.contains(ctx.mul(r, x)));
                }
            }
        }
    }
}

#[test]
fn graph_adjacency_is_class_incomparability() {
    for n in [6u64, 8, 9, 10, 12, 16, 18, 20] {
        let l = lattice(n);
        let g = CozeroGraph::build(l.ctx()).unwrap();
        let class: Vec<usize> = g
            .vertices()
            .iter()
            .map(|&v| l.class_of(v).unwrap())
            .collect();
        let reduced = l.reduced_graph();
        for i in 0..g.vertex_count() {
            for j in 0..g.vertex_count() {
                if i != j {
                    assert_eq!(
                        g.is_adjacent(i, j),
                        l.incomparable(class[i], class[j]),
                        "n = {n}"
                    );
                }
            }
            // Every vertex of a class has the class's weighted degree.
            assert_eq!(g.degree(i), reduced.weighted_degree(class[i]), "n = {n}");
        }
    }
}

#[test]
fn two_prime_frames_have_seven_vertices_and_nine_edges() {
    for n in [6u64, 10, 14, 15, 21, 22, 35] {
        let r = lattice(n).reduced_graph();
        assert_eq!((r.vertex_count(), r.edge_count()), (7, 9), "n = {n}");
    }
}

#[test]
fn three_prime_frame_degrees() {
    for n in [30u64, 42] {
        let r = lattice(n).reduced_graph();
        assert_eq!(r.vertex_count(), 25);
        for (i, label) in r.labels.iter().enumerate() {
            let idx: Vec<usize> = label
                .chars()
                .filter_map(|c| c.to_digit(10))
                .map(|d| d as usize)
                .collect();
            assert_eq!(
                r.degree(i),
                pqr_reduced_degree(idx[0], idx[1], idx[2]),
                "{label}"
            );
        }
    }
}

#[test]
fn prime_power_frames_have_an_isolated_class() {
    for (n, p, k) in [
        (4u64, 2u64, 2u32),
        (8, 2, 3),
        (9, 3, 2),
        (16, 2, 4),
        (25, 5, 2),
        (27, 3, 3),
        (32, 2, 5),
        (49, 7, 2),
    ] {
        let l = lattice(n);
        let r = l.reduced_graph();
        let isolated: Vec<usize> = (0..r.vertex_count())
            .filter(|&i| r.degree(i) == 0)
            .collect();
        assert_eq!(isolated.len(), 1, "n = {n}");
        assert_eq!(
            r.generators[isolated[0]],
            PolyElement::new(p.pow(k - 1), 0),
            "n = {n}"
        );
    }
}

fn unit_mod(n: u64) -> impl Strategy<Value = u64> {
    (1..n).prop_filter("unit", move |u| u.gcd(&n) == 1)
}

proptest! {
    // For (k, l) = (0, 1) and (1, 2) the unit congruence decides equality.
    #[test]
    fn congruence_decides_ideal_equality(
        p in prop::sample::select(vec![2u64, 3, 5]),
        kl in prop::sample::select(vec![(0u32, 1u32), (1, 2)]),
        seed in any::<[u64; 4]>(),
    ) {
        let n = p.pow(3);
        let ctx = RingContext::new(n).unwrap();
        let pick = |s: u64| {
            let units: Vec<u64> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
            units[(s % units.len() as u64) as usize]
        };
        let (a1, b1, a2, b2) = (pick(seed[0]), pick(seed[1]), pick(seed[2]), pick(seed[3]));
        let (congruent, equal) =
            ideal_equality_congruence_check(&ctx, kl.0, kl.1, (a1, b1), (a2, b2)).unwrap();
        prop_assert_eq!(congruent, equal);
    }

    // For (k, l) = (0, 2) equality is governed by the modulus p, not p^2.
    #[test]
    fn outer_congruence_uses_modulus_p(
        a1 in unit_mod(27), b1 in unit_mod(27), a2 in unit_mod(27), b2 in unit_mod(27),
    ) {
        let ctx = RingContext::new(27).unwrap();
        let (_, equal) = ideal_equality_congruence_check(&ctx, 0, 2, (a1, b1), (a2, b2)).unwrap();
        let lhs = (a2 * b1) as i64 - (a1 * b2) as i64;
        prop_assert_eq!(equal, lhs.rem_euclid(3) == 0);
    }
}

#[test]
fn outer_congruence_counterexample() {
    // <x + 9> = <x + 36 mod 27 = 9 * 4>: equal ideals whose generators are
    // not congruent modulo p^(l-k) = 9.
    let ctx = RingContext::new(27).unwrap();
    let (congruent, equal) = ideal_equality_congruence_check(&ctx, 0, 2, (1, 1), (1, 4)).unwrap();
    assert!(equal);
    assert!(!congruent);
}
