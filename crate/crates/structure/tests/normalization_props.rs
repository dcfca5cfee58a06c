//! Randomized invariants of the factor-pair normalization: the output is
//! degree forced, its signed weight telescopes to the factor gap, and its
//! vertex expansion tracks symmetric-difference degrees exactly.

mod common;

use common::{all_factors, random_instance, rng};
use factorum_structure::{is_key_instance, normalize};
use rand::Rng;

#[test]
fn normalization_preserves_weights_and_degrees() {
    let mut processed = 0;
    for seed in 0..2000u64 {
        if processed >= 220 {
            break;
        }
        let mut r = rng(0x6e30_0000 + seed);
        let inst = random_instance(&mut r, 8, 12, 0.5);
        let factors = all_factors(&inst);
        if factors.is_empty() {
            continue;
        }
        let f = &factors[r.gen_range(0..factors.len())];
        let g = &factors[r.gen_range(0..factors.len())];
        let norm = normalize(&inst, f, g).unwrap();
        processed += 1;

        assert!(is_key_instance(norm.key().instance()));
        assert_eq!(norm.signed_total(), g.weight() - f.weight());

        let delta = f.edges().sym_diff(g.edges()).unwrap();
        let key = norm.key().instance();
        for v in inst.graph().vertices() {
            let shadow: usize = norm
                .expansion(v)
                .iter()
                .map(|&x| key.graph().degree(x))
                .sum();
            assert_eq!(shadow, delta.degree_in(inst.graph(), v));
        }

        let mut mapped: Vec<usize> =
            key.graph().edge_ids().map(|e| norm.original_edge(e)).collect();
        mapped.sort_unstable();
        assert_eq!(mapped, delta.to_vec());
        for e in key.graph().edge_ids() {
            let orig = norm.original_edge(e);
            let expect = if g.edges().contains(orig) {
                inst.weight(orig).clone()
            } else {
                -inst.weight(orig).clone()
            };
            assert_eq!(key.weight(e), &expect);
        }
    }
    assert!(processed >= 220, "only {processed} factor pairs were exercised");
}
