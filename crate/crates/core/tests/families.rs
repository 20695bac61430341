use cozero::families::{check_tables, closed_form, two_primes_matrix, TWO_PRIMES_MATRIX_ORDER};
use cozero::spectrum::{compare_multisets, structural_spectrum_of, JoinInstance};
use cozero::{
    closed_form_spectrum, family_tables, Error, Family, IdealLattice, RingContext, DEFAULT_TOL,
};

const TOL: f64 = DEFAULT_TOL;
const MAX_N: u64 = 64;

fn supported() -> impl Iterator<Item = (RingContext, Family)> {
    (2..=MAX_N).filter_map(|n| {
        let ctx = RingContext::new(n).unwrap();
        Family::detect(&ctx).map(|f| (ctx, f))
    })
}

#[test]
fn table_labels_name_exactly_the_reduced_vertices() {
    for (ctx, family) in supported() {
        let lattice = IdealLattice::enumerate(&ctx).unwrap();
        let graph = lattice.reduced_graph();
        let mut table: Vec<String> = family_tables(&ctx)
            .unwrap()
            .into_iter()
            .map(|r| r.label)
            .collect();
        let mut labels = graph.labels.clone();
        table.sort();
        labels.sort();
        assert_eq!(table, labels, "n={} ({family})", ctx.n());
        assert_eq!(family.record_count(), labels.len(), "n={}", ctx.n());
        assert_eq!(
            family.vertex_count() as usize,
            ctx.vertex_count(),
            "n={}",
            ctx.n()
        );
    }
}

#[test]
fn published_cardinalities_match_enumeration() {
    for (ctx, _) in supported() {
        let lattice = IdealLattice::enumerate(&ctx).unwrap();
        for row in check_tables(&lattice).unwrap() {
            assert!(row.cardinality_ok(), "n={}: {row:?}", ctx.n());
        }
    }
}

#[test]
fn two_prime_and_square_times_prime_degrees_match_enumeration() {
    for (ctx, family) in supported() {
        if !matches!(
            family,
            Family::TwoPrimes { .. } | Family::SquareTimesPrime { .. }
        ) {
            continue;
        }
        let lattice = IdealLattice::enumerate(&ctx).unwrap();
        for row in check_tables(&lattice).unwrap() {
            assert!(row.degree_ok(), "n={}: {row:?}", ctx.n());
        }
    }
}

#[test]
fn two_prime_closed_form_matches_structural() {
    for n in (6..=150).filter(|&n| {
        matches!(
            Family::detect(&RingContext::new(n).unwrap()),
            Some(Family::TwoPrimes { .. })
        )
    }) {
        let ctx = RingContext::new(n).unwrap();
        let cf = closed_form_spectrum(&ctx, TOL).unwrap();
        let lattice = IdealLattice::enumerate(&ctx).unwrap();
        let s = structural_spectrum_of(&lattice, TOL).unwrap();
        let r = compare_multisets(&cf, &s, TOL).unwrap();
        assert!(r.matches, "n={n}: deviation {}", r.worst_deviation);
    }
}

#[test]
fn prime_closed_form_matches_structural() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let ctx = RingContext::new(p).unwrap();
        let cf = closed_form_spectrum(&ctx, TOL).unwrap();
        let s = structural_spectrum_of(&IdealLattice::enumerate(&ctx).unwrap(), TOL).unwrap();
        assert!(compare_multisets(&cf, &s, TOL).unwrap().matches, "p={p}");
    }
}

#[test]
fn two_prime_matrix_is_the_vertex_weighted_quotient() {
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 5), (3, 7), (5, 7)] {
        let ctx = RingContext::new(p * q).unwrap();
        let graph = IdealLattice::enumerate(&ctx).unwrap().reduced_graph();
        let quotient = JoinInstance::from_reduced_graph(&graph, TOL)
            .quotient_matrix()
            .vertex_weighted;
        let idx: Vec<usize> = TWO_PRIMES_MATRIX_ORDER
            .iter()
            .map(|l| graph.index_of_label(l).unwrap())
            .collect();
        let published = two_primes_matrix(p, q);
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                assert_eq!(
                    published[(r, c)],
                    quotient[(i, j)],
                    "n={}: ({r}, {c})",
                    p * q
                );
            }
        }
    }
}

#[test]
fn closed_form_dimension_is_reported_faithfully() {
    // Whatever a closed form claims, its multiplicities must be non-negative
    // and add up to what it says; refusals are typed.
    for (ctx, _) in supported() {
        match closed_form(&ctx) {
            Ok(cf) => {
                let s = cf.spectrum(TOL).unwrap();
                assert_eq!(s.dimension(), cf.dimension(), "n={}", ctx.n());
                assert!(cf.entries.iter().all(|e| e.multiplicity > 0));
            }
            Err(Error::DegenerateParameters { .. }) => {
                assert!(
                    ctx.factorization().iter().any(|&(p, _)| p == 2),
                    "n={}",
                    ctx.n()
                )
            }
            Err(e) => panic!("n={}: {e}", ctx.n()),
        }
    }
}

#[test]
fn unsupported_moduli_are_rejected() {
    for n in [16u64, 32, 36, 60, 64] {
        let ctx = RingContext::new(n).unwrap();
        assert_eq!(Family::detect(&ctx), None, "n={n}");
        assert_eq!(
            family_tables(&ctx).unwrap_err(),
            Error::UnsupportedFamily(n)
        );
        assert!(matches!(
            closed_form_spectrum(&ctx, TOL),
            Err(Error::UnsupportedFamily(_))
        ));
    }
}
