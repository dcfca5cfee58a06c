//! Exhaustive verification of the gadget builders against the independent
//! pattern-feasibility checker, plus the delta-matroid and exchange-partition
//! properties of their feasible families, and the forbidden-pattern grid.

use factorum_core::DegreeConstraint;
use factorum_solver::{
    build_interval_gadget, build_parity_gadget, feasible_stub_family, is_delta_matroid,
    obstruction_check, partition_witness, realized_set, ObstructionVerdict,
};

#[test]
fn interval_builder_realizes_exactly_its_parameters() {
    for d in 0..=6u32 {
        for lo in 0..=d {
            for hi in lo..=d {
                let gadget = build_interval_gadget(lo, hi, d).unwrap();
                let realized = realized_set(&gadget).unwrap();
                let expected = DegreeConstraint::interval(d, lo, hi).unwrap();
                assert_eq!(realized, expected, "interval lo={lo} hi={hi} d={d}");
                assert_eq!(realized, *gadget.modeled());
            }
        }
    }
}

#[test]
fn parity_builder_realizes_exactly_its_parameters() {
    for d in 0..=6u32 {
        for lo in 0..=d {
            for hi in (lo..=d).filter(|h| (h - lo) % 2 == 0) {
                let gadget = build_parity_gadget(lo, hi, d).unwrap();
                let realized = realized_set(&gadget).unwrap();
                let expected = DegreeConstraint::parity_interval(d, lo, hi).unwrap();
                assert_eq!(realized, expected, "parity lo={lo} hi={hi} d={d}");
                assert_eq!(realized, *gadget.modeled());
            }
        }
    }
}

/// The builders' feasibility is a function of pattern size alone, so their
/// families are symmetric; and those families satisfy the exchange axiom.
#[test]
fn builder_families_are_symmetric_delta_matroids() {
    for d in 0..=4u32 {
        for lo in 0..=d {
            for hi in lo..=d {
                let mut gadgets = vec![build_interval_gadget(lo, hi, d).unwrap()];
                if (hi - lo) % 2 == 0 {
                    gadgets.push(build_parity_gadget(lo, hi, d).unwrap());
                }
                for gadget in gadgets {
                    let family = feasible_stub_family(&gadget).unwrap();
                    for &w in family.members() {
                        assert!(gadget.modeled().contains(w.count_ones()));
                    }
                    let expected: usize = (0..1u64 << d)
                        .filter(|w| gadget.modeled().contains(w.count_ones()))
                        .count();
                    assert_eq!(family.len(), expected, "family must be symmetric");
                    assert!(is_delta_matroid(&family).unwrap());
                }
            }
        }
    }
}

/// Every feasible pair admits the exchange partition; the union checks run
/// inside partition_witness, the structure checks run here.
#[test]
fn exchange_partition_exists_for_every_feasible_pair() {
    let mut checked = 0usize;
    for d in 0..=4u32 {
        for lo in 0..=d {
            for hi in lo..=d {
                let mut gadgets = vec![build_interval_gadget(lo, hi, d).unwrap()];
                if (hi - lo) % 2 == 0 {
                    gadgets.push(build_parity_gadget(lo, hi, d).unwrap());
                }
                for gadget in gadgets {
                    let family = feasible_stub_family(&gadget).unwrap();
                    for &v1 in family.members() {
                        for &v2 in family.members() {
                            let witness = partition_witness(&gadget, v1, v2).unwrap();
                            let masks = witness.part_masks();
                            let mut union = 0u64;
                            for &p in &masks {
                                assert_eq!(union & p, 0, "parts must be disjoint");
                                union |= p;
                            }
                            assert_eq!(union, v1 ^ v2, "parts must cover the difference");
                            if v1 == v2 {
                                assert!(masks.is_empty());
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 2000, "only {checked} pairs checked");
}

/// Parity gadgets can never toggle a single stub: that would realize an
/// off-parity pattern. Intervals with slack can.
#[test]
fn partition_granularity_follows_the_constraint_kind() {
    let interval = build_interval_gadget(0, 2, 2).unwrap();
    let w = partition_witness(&interval, 0b00, 0b11).unwrap();
    assert_eq!((w.singles.len(), w.pairs.len()), (2, 0));

    let parity = build_parity_gadget(0, 2, 2).unwrap();
    let w = partition_witness(&parity, 0b00, 0b11).unwrap();
    assert_eq!((w.singles.len(), w.pairs.len()), (0, 1));
}

#[test]
fn forbidden_patterns_across_the_arity_grid() {
    for p in 0..=3u32 {
        for arity in p + 3..=10 {
            let t1 = DegreeConstraint::type1(arity, p).unwrap();
            assert_eq!(
                obstruction_check(&t1).unwrap(),
                ObstructionVerdict::NotRealizable,
                "type-1 p={p} arity={arity}"
            );
            let t2 = DegreeConstraint::type2(arity, p).unwrap();
            assert_eq!(
                obstruction_check(&t2).unwrap(),
                ObstructionVerdict::NotRealizable,
                "type-2 p={p} arity={arity}"
            );
        }
    }
}

#[test]
fn intervals_and_parity_intervals_are_never_flagged() {
    for arity in 0..=10u32 {
        for lo in 0..=arity {
            for hi in lo..=arity {
                let interval = DegreeConstraint::interval(arity, lo, hi).unwrap();
                assert_eq!(
                    obstruction_check(&interval).unwrap(),
                    ObstructionVerdict::RealizableConsistent
                );
                if (hi - lo) % 2 == 0 {
                    let parity = DegreeConstraint::parity_interval(arity, lo, hi).unwrap();
                    assert_eq!(
                        obstruction_check(&parity).unwrap(),
                        ObstructionVerdict::RealizableConsistent
                    );
                }
            }
        }
    }
}

/// No gadget this artifact builds realizes a flagged set: the builders only
/// emit intervals and parity intervals, and their realized sets confirm it.
#[test]
fn builders_never_produce_a_flagged_set() {
    for d in 0..=5u32 {
        for lo in 0..=d {
            for hi in lo..=d {
                let mut gadgets = vec![build_interval_gadget(lo, hi, d).unwrap()];
                if (hi - lo) % 2 == 0 {
                    gadgets.push(build_parity_gadget(lo, hi, d).unwrap());
                }
                for gadget in gadgets {
                    let realized = realized_set(&gadget).unwrap();
                    assert_eq!(
                        obstruction_check(&realized).unwrap(),
                        ObstructionVerdict::RealizableConsistent
                    );
                }
            }
        }
    }
}
