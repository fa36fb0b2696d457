//! Cross-module invariants checked at random rational points.
//!
//! Everything here is exact: a property either holds identically or the
//! construction is wrong, so failures are never flaky.

use proptest::prelude::*;
use routh_core::{
    central_volume, closed_form_volume, cyclic_blocks, first_kind_volume,
    inclusion_exclusion_volume, inclusion_exclusion_volume_naive, oracle_subset_volume,
    subset_volume, ChainTable, CycleRatios, ExactRational, ProductRegime,
};

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d).unwrap()
}

fn arb_positive_rational() -> impl Strategy<Value = ExactRational> {
    (1i64..=9, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn arb_cycle(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CycleRatios> {
    n.prop_flat_map(|len| {
        prop::collection::vec(arb_positive_rational(), len)
            .prop_map(|ratios| CycleRatios::new(ratios).unwrap())
    })
}

/// Classical closed form for the triangle, usable in both product regimes:
/// `(1 - xyz)^2 / ((1+x+xy)(1+y+yz)(1+z+zx))`.
fn classical_triangle_central(x: &CycleRatios) -> ExactRational {
    assert_eq!(x.n(), 3);
    let one = ExactRational::one;
    let numerator = (one() - x.product()).pow(2);
    let mut denominator = one();
    for i in 1..=3 {
        denominator *= one() + x.ratio(i) + &(x.ratio(i) * x.ratio(i + 1));
    }
    numerator / denominator
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangle_central_volume_matches_classical_formula(x in arb_cycle(3..=3)) {
        prop_assert_eq!(central_volume(&x).value, classical_triangle_central(&x));
    }

    #[test]
    fn inclusion_exclusion_agrees_with_closed_form(x in arb_cycle(4..=6)) {
        if x.product().cmp_exact(&ExactRational::one()) != std::cmp::Ordering::Less {
            prop_assert_eq!(
                inclusion_exclusion_volume(&x).unwrap(),
                closed_form_volume(&x).unwrap()
            );
        }
    }

    #[test]
    fn memoized_enumeration_matches_naive(x in arb_cycle(4..=6)) {
        prop_assert_eq!(
            inclusion_exclusion_volume(&x).unwrap(),
            inclusion_exclusion_volume_naive(&x).unwrap()
        );
    }

    #[test]
    fn central_volume_is_rotation_invariant(x in arb_cycle(3..=6), shift in 0usize..6) {
        prop_assert_eq!(central_volume(&x).value, central_volume(&x.rotated(shift)).value);
    }

    #[test]
    fn reversal_reduction_is_an_involution(x in arb_cycle(3..=6)) {
        let reversed = x.reversed_reciprocal();
        prop_assert_eq!(reversed.reversed_reciprocal(), x.clone());
        prop_assert_eq!(central_volume(&x).value, central_volume(&reversed).value);
        prop_assert_eq!(first_kind_volume(&x), first_kind_volume(&reversed));
    }

    #[test]
    fn unit_product_degenerates(x in arb_cycle(3..=5)) {
        // rescale the last ratio so the product is exactly 1
        let mut ratios = x.ratios().to_vec();
        let partial: ExactRational = ratios[..x.n() - 1].iter().cloned().product();
        ratios[x.n() - 1] = partial.recip().unwrap();
        let y = CycleRatios::new(ratios).unwrap();

        let report = central_volume(&y);
        prop_assert!(report.value.is_zero());
        prop_assert_eq!(report.product_regime, ProductRegime::Eq1);
        if y.n() % 2 == 0 {
            prop_assert!(first_kind_volume(&y).is_zero());
        } else {
            prop_assert!(first_kind_volume(&y).is_positive());
        }
    }

    #[test]
    fn first_kind_vanishes_only_at_even_unit_product(x in arb_cycle(3..=6)) {
        let vanishes = first_kind_volume(&x).is_zero();
        let unit_even = x.n() % 2 == 0 && x.product().is_one();
        prop_assert_eq!(vanishes, unit_even);
    }

    #[test]
    fn subset_volume_agrees_with_coordinate_oracle(
        x in arb_cycle(4..=5),
        mask in 1u64..30,
    ) {
        let n = x.n();
        let full = (1u64 << n) - 1;
        let mask = mask % full;
        if mask != 0 {
            let elements: Vec<usize> =
                (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            prop_assert_eq!(
                subset_volume(&x, &elements).unwrap(),
                oracle_subset_volume(&x, &elements).unwrap()
            );
        }
    }

    #[test]
    fn chain_points_have_unit_coordinate_sum(x in arb_cycle(3..=5)) {
        let chain = ChainTable::build(&x).unwrap();
        for i in 1..=x.n() {
            for j in 0..=x.n() - 1 {
                let mut sum = ExactRational::zero();
                for c in chain.point(i, j).coords() {
                    sum += c;
                }
                prop_assert!(sum.is_one());
            }
        }
    }

    #[test]
    fn block_decompositions_partition_without_adjacency(
        n in 4usize..=10,
        mask in 1u64..1023,
    ) {
        let full = (1u64 << n) - 1;
        let mask = mask & full;
        if mask != 0 && mask != full {
            let elements: Vec<usize> =
                (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            let decomposition = cyclic_blocks(n, &elements).unwrap();

            let mut seen = vec![false; n + 1];
            for block in decomposition.blocks() {
                prop_assert!(block.len() < n);
                for member in block.members(n) {
                    prop_assert!(!seen[member], "blocks overlap");
                    seen[member] = true;
                }
            }
            for e in &elements {
                prop_assert!(seen[*e], "element missing from its decomposition");
            }
            prop_assert_eq!(seen.iter().filter(|&&s| s).count(), elements.len());

            // maximality: the predecessor and successor of a block are outside I
            for block in decomposition.blocks() {
                let before = (block.start() + n - 2) % n + 1;
                let end = block.members(n).last().unwrap();
                let after = end % n + 1;
                prop_assert!(!elements.contains(&before));
                prop_assert!(!elements.contains(&after));
            }

            // sorted by start
            let starts: Vec<usize> =
                decomposition.blocks().iter().map(|b| b.start()).collect();
            let mut sorted = starts.clone();
            sorted.sort_unstable();
            prop_assert_eq!(starts, sorted);
        }
    }
}
