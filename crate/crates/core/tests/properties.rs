use std::sync::Arc;

use leavitt::analysis::{diagonal_analyze, is_projection};
use leavitt::parse::parse_expression;
use leavitt::sample::{self, PathTable};
use leavitt::{AlgebraElement, Exec, Graph, StarRing};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graphs() -> Vec<Arc<Graph>> {
    vec![
        Arc::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &[]).unwrap()),
        Arc::new(
            Graph::build(
                &["u", "v", "w"],
                &[
                    ("a", "u", "u"),
                    ("b", "u", "v"),
                    ("c", "u", "w"),
                    ("d", "v", "w"),
                ],
                &[],
            )
            .unwrap(),
        ),
        Arc::new(
            Graph::build(
                &["u", "v"],
                &[("f", "u", "v"), ("g", "u", "u"), ("h", "v", "u")],
                &["u"],
            )
            .unwrap(),
        ),
    ]
}

fn ring() -> impl Strategy<Value = StarRing> {
    prop::sample::select(StarRing::ALL.to_vec())
}

fn pair(seed: u64, gi: usize, ring: StarRing) -> (AlgebraElement, AlgebraElement) {
    let g = &graphs()[gi];
    let table = PathTable::new(g, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (
        sample::element(&mut rng, g, ring, &table, 4, 3),
        sample::element(&mut rng, g, ring, &table, 4, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn results_are_in_normal_form(seed: u64, gi in 0usize..3, ring in ring()) {
        let (a, b) = pair(seed, gi, ring);
        let g = a.graph().clone();
        for x in [&a, &b, &a.mul(&b).unwrap(), &a.star(), &a.sub(&b).unwrap()] {
            prop_assert!(x.terms().all(|(m, c)| m.is_normal(&g) && !c.is_zero()));
        }
    }

    #[test]
    fn parallel_product_matches_sequential(seed: u64, gi in 0usize..3) {
        let (a, b) = pair(seed, gi, StarRing::GaussianIntegers);
        let big_a = a.add(&a.mul(&b).unwrap()).unwrap();
        let big_b = b.add(&b.star().mul(&a).unwrap()).unwrap();
        prop_assert_eq!(
            big_a.mul_with(&big_b, Exec::Sequential).unwrap(),
            big_a.mul_with(&big_b, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn display_parses_back(seed: u64, gi in 0usize..3, ring in ring()) {
        let (a, b) = pair(seed, gi, ring);
        let x = a.mul(&b).unwrap();
        let back = parse_expression(&x.to_string(), x.graph(), ring).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn scalars_commute_with_star(seed: u64, gi in 0usize..3) {
        let ring = StarRing::GaussianIntegers;
        let (a, _) = pair(seed, gi, ring);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let s = sample::coefficient(&mut rng, ring, 3);
        prop_assert_eq!(a.scale(&s).unwrap().star(), a.star().scale(&s.conj()).unwrap());
    }

    #[test]
    fn conjugated_projections_stay_diagonal(seed: u64, gi in 0usize..2) {
        let g = &graphs()[gi];
        let table = PathTable::new(g, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ring in [StarRing::Integers, StarRing::GaussianIntegers] {
            for p in sample::projection_chain(&mut rng, g, ring, &table, 3) {
                prop_assert!(is_projection(&p));
                prop_assert!(diagonal_analyze(&p).unwrap().member);
            }
        }
    }
}
