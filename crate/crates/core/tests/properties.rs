use ordcomp::checks::{self, subsets_of};
use ordcomp::generators;
use ordcomp::oracle::{brute_cuts, brute_solve};
use ordcomp::{
    build_equation, global_character, macneille_completion, solve, BitSet, Carrier, Limits, Poset, Subset,
};
use proptest::prelude::*;

fn poset() -> impl Strategy<Value = Poset> {
    (1usize..=7, 0u32..=100, any::<u64>()).prop_map(|(n, d, s)| generators::random(n, d, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_extensive_monotone(p in poset()) {
        let n = p.len();
        for a in subsets_of(n) {
            let c = p.closure_bits(&a);
            prop_assert!(a.is_subset(&c));
            prop_assert_eq!(p.closure_bits(&c), c.clone());
            for x in 0..n {
                let mut b = a.clone();
                b.insert(x);
                prop_assert!(c.is_subset(&p.closure_bits(&b)));
            }
        }
    }

    #[test]
    fn completion_matches_brute_force(p in poset()) {
        let c = macneille_completion(&p, &Limits::default()).unwrap();
        let mut fast: Vec<BitSet> = (0..c.len()).map(|i| c.cut_bits(i).clone()).collect();
        let mut slow: Vec<BitSet> = brute_cuts(&p).unwrap().into_iter().map(|s| s.bits().clone()).collect();
        fast.sort_by(BitSet::canonical_cmp);
        slow.sort_by(BitSet::canonical_cmp);
        prop_assert_eq!(fast, slow);
        let cc = macneille_completion(c.order(), &Limits::default()).unwrap();
        prop_assert!(checks::self_complete(&cc));
    }

    #[test]
    fn solver_agrees_with_brute_force(x in 1usize..=5, y in 1usize..=5, d in 0u32..=100, seed in any::<u64>()) {
        let map = generators::random_equation(x, y, d, seed).unwrap();
        let eq = build_equation(map, &Limits::default()).unwrap();
        let yc = eq.codomain_completion();
        let mut hits = 0;
        for k in 0..yc.len() {
            let target = Subset::from_bits(eq.codomain(), yc.cut_bits(k).clone()).unwrap();
            let fast = solve(&eq, &target).unwrap();
            let slow = brute_solve(&eq, &target).unwrap();
            prop_assert_eq!(fast.solvable, slow.is_some());
            if let (Some(s), Some(b)) = (fast.solution, slow) {
                prop_assert_eq!(eq.quotient_completion().cut_bits(s), b.bits());
                hits += 1;
            }
        }
        let g = global_character(&eq);
        prop_assert_eq!(g.surjective, hits == yc.len());
        prop_assert_eq!(g.covers_codomain, g.surjective);
    }
}

#[test]
fn theorem_suites_see_both_outcomes() {
    let limits = Limits::default();
    let batch = checks::equation_batch(100, 0, &limits).unwrap();
    let (mut solvable, mut unsolvable, mut surjective) = (0, 0, 0);
    for (_, eq) in &batch {
        let yc = eq.codomain_completion();
        for k in 0..yc.len() {
            let target = Subset::from_bits(eq.codomain(), yc.cut_bits(k).clone()).unwrap();
            if solve(&eq, &target).unwrap().solvable {
                solvable += 1;
            } else {
                unsolvable += 1;
            }
        }
        if global_character(eq).surjective {
            surjective += 1;
        }
    }
    assert!(solvable > 50 && unsolvable > 50, "{solvable} solvable, {unsolvable} unsolvable");
    assert!(surjective > 5 && surjective < 95, "{surjective} surjective");
    assert!(batch.iter().all(|(_, eq)| eq.domain().len() <= 6 && eq.codomain().len() <= 6));
}
