use proptest::prelude::*;

use uclab::accounting::{
    hyper_accounts, local_characterization, pure_lower_bound, rising_accounts, sp_counts, spurious_monotonicity,
};
use uclab::antichain::{augment_step, augmentable_closure, foils_partition_upset, symmetric_chains, Direction};
use uclab::bounds::{average_report, frankl_witness, irreducible_bound, removal_trace};
use uclab::harness::{lookup, replay, run_cases, Case, Outcome};
use uclab::rising::{rise, star_any, star_criterion_agrees, transcript_assertions};
use uclab::setfam::{parse_fam, write_fam};
use uclab::{GroundSet, SetFamily, SubsetMask, Word};

fn any_family(max_n: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u32..1 << n, 1..=2 * n)
            .prop_map(move |ms| SetFamily::new(GroundSet::new(n).unwrap(), ms.into_iter().map(SubsetMask)).unwrap())
    })
}

fn union_closed(max_n: usize) -> impl Strategy<Value = SetFamily> {
    any_family(max_n).prop_map(|f| f.close_under_union().unwrap())
}

fn with_word(families: impl Strategy<Value = SetFamily>) -> impl Strategy<Value = (SetFamily, Word)> {
    families.prop_flat_map(|f| {
        let order: Vec<usize> = (0..f.n()).collect();
        (Just(f), Just(order).prop_shuffle().prop_map(|o| Word::new(o).unwrap()))
    })
}

fn all_hold(list: &[uclab::Assertion]) -> Result<(), TestCaseError> {
    let failed: Vec<&str> = list.iter().filter(|a| !a.holds).map(|a| a.name.as_str()).collect();
    prop_assert!(failed.is_empty(), "failed: {:?}", failed);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_is_idempotent_and_monotone(f in any_family(6), extra in 0u32..64) {
        let c = f.close_under_union().unwrap();
        prop_assert!(c.is_union_closed());
        prop_assert_eq!(c.close_under_union().unwrap(), c.clone());
        let bigger = f.union(&SetFamily::new(f.ground().clone(), [SubsetMask(extra & f.ground().full().bits())]).unwrap());
        prop_assert!(c.is_subfamily_of(&bigger.close_under_union().unwrap()));
    }

    #[test]
    fn upsets_extremes_and_ideals(f in union_closed(6)) {
        let up = f.upset();
        prop_assert!(up.is_upward_closed());
        prop_assert!(f.is_subfamily_of(&up));
        let (lo, hi) = f.extremes().unwrap();
        prop_assert!(lo.is_antichain() && hi.is_antichain());
        prop_assert_eq!(f.ideal(&lo), f.clone());
        prop_assert!(f.ideal(&hi).is_subfamily_of(&f));
    }

    #[test]
    fn irreducibles_generate(f in union_closed(6)) {
        let j = f.join_irreducibles().unwrap();
        prop_assert!(j.is_union_independent());
        prop_assert_eq!(j.close_under_union().unwrap(), f.clone());
        prop_assert!(f.minimal().is_subfamily_of(&j));
    }

    #[test]
    fn fam_format_round_trips(f in any_family(8)) {
        prop_assert_eq!(parse_fam(&write_fam(&f)).unwrap(), f);
    }

    #[test]
    fn rising_on_union_closed((f, w) in with_word(union_closed(7))) {
        let t = rise(&f, &w).unwrap();
        prop_assert_eq!(t.image().len(), f.len());
        prop_assert!(t.image().is_upward_closed());
        all_hold(&transcript_assertions(&t))?;
    }

    #[test]
    fn rising_on_any_family((f, w) in with_word(any_family(7))) {
        let t = rise(&f, &w).unwrap();
        prop_assert_eq!(t.image().len(), f.len());
        all_hold(&transcript_assertions(&t))?;
        for (g, eta) in t.forward_pairs() {
            prop_assert!(g.is_subset_of(eta));
        }
    }

    #[test]
    fn star_is_below_and_criterion_agrees(h in any_family(5), z in 0u32..32) {
        let z = SubsetMask(z & h.ground().full().bits());
        prop_assert!(star_any(&h, z).is_subset_of(z));
        prop_assert!(star_criterion_agrees(&h));
    }

    #[test]
    fn balance_for_any_family(h in any_family(7), a in 0usize..7) {
        prop_assume!(a < h.n());
        prop_assert!(sp_counts(&h, a).unwrap().balance_holds());
    }

    #[test]
    fn rising_accounts_hold((f, w) in with_word(union_closed(6))) {
        let acc = rising_accounts(&f, &w).unwrap();
        all_hold(&acc.assertions())?;
        prop_assert!(local_characterization(&f, &w).unwrap().violations.is_empty());
        all_hold(&pure_lower_bound(&f, &w).unwrap().assertions(&acc))?;
    }

    #[test]
    fn hyper_accounts_hold(f in union_closed(5)) {
        all_hold(&hyper_accounts(&f).unwrap().assertions())?;
    }

    #[test]
    fn monotonicity_witness_is_valid(f in union_closed(4)) {
        let members: Vec<SubsetMask> = f.iter().collect();
        let (small, large) = (members[0], members[members.len() - 1]);
        if small.is_subset_of(large) {
            let w = spurious_monotonicity(&f, small, large).unwrap();
            prop_assert_eq!(w.len(), f.n());
        }
    }

    #[test]
    fn bounds_below_average((f, w) in with_word(union_closed(6)), pick in any::<u64>()) {
        all_hold(&average_report(&f, &f.minimal(), &w).unwrap().assertions())?;
        let members: Vec<SubsetMask> = f.iter().collect();
        let s = f.with_members(members.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, &m)| m));
        if !s.is_empty() {
            all_hold(&average_report(&f, &s.minimal(), &w).unwrap().assertions())?;
        }
    }

    #[test]
    fn frankl_witness_exists(f in union_closed(8)) {
        prop_assume!(f.len() > 1 || !f.members()[0].is_empty());
        prop_assert!(frankl_witness(&f).unwrap().is_some());
    }

    #[test]
    fn removal_traces((f, w) in with_word(any_family(6)), idx in any::<prop::sample::Index>()) {
        prop_assume!(f.len() >= 2);
        let m = f.members()[idx.index(f.len())];
        let t = removal_trace(&f, m, &w).unwrap();
        all_hold(&t.assertions())?;
        if t.irreducible {
            prop_assert!(t.k() <= 1);
        }
    }

    #[test]
    fn irreducible_counts((f, w) in with_word(union_closed(7))) {
        all_hold(&irreducible_bound(&f, &w).unwrap().assertions())?;
    }

    #[test]
    fn augmentation_never_loses(f in any_family(6)) {
        let a = f.minimal();
        prop_assert!(foils_partition_upset(&a).unwrap());
        let closed = augmentable_closure(&a).unwrap();
        prop_assert!(closed.is_augmentable());
        prop_assert!(closed.antichain.is_antichain());
        if a.n() % 2 == 0 {
            for dir in [Direction::Up, Direction::Down] {
                let next = augment_step(&closed, dir).unwrap();
                prop_assert!(next.antichain.is_antichain());
                prop_assert!(next.objective >= closed.objective);
            }
        }
    }

    #[test]
    fn specular_is_an_involution(n in 1usize..=10, z in any::<u32>()) {
        let scd = symmetric_chains(n).unwrap();
        let z = SubsetMask(z & ((1 << n) - 1));
        let s = scd.specular(z);
        prop_assert_eq!(z.len() + s.len(), n);
        prop_assert_eq!(scd.specular(s), z);
        if 2 * z.len() < n {
            prop_assert!(z.is_strict_subset_of(s));
        }
    }

    #[test]
    fn failures_replay(f in any_family(4)) {
        prop_assume!(!f.is_union_closed());
        let check = lookup("accounts").unwrap();
        let (report, _) = run_cases(&check, &[Case { family: f, word: None }]);
        let cx = report.first_counterexample.unwrap();
        prop_assert_eq!(replay(&cx).unwrap(), Outcome::Fail(cx.failed.clone()));
    }
}
