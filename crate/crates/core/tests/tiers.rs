use proptest::prelude::*;

use lgb_core::{
    count_degree, generic_hilbert_series, lgb_improved, lgb_improved_with, InstanceSpec,
    LgbOptions, Tier,
};

fn small_spec() -> impl Strategy<Value = InstanceSpec> {
    (1usize..=7, prop::collection::vec(1u32..=3, 1..=8)).prop_filter_map(
        "bounded",
        |(n, mut ds)| {
            ds.sort_unstable();
            let spec = InstanceSpec::new(n, ds).ok()?;
            (count_degree(n, lgb_core::degree_bound(&spec)) <= 20_000).then_some(spec)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn higher_tiers_check_fewer_candidates(spec in small_spec()) {
        let runs: Vec<_> = Tier::ALL.iter().map(|&t| lgb_improved(&spec, t).unwrap()).collect();
        for k in 0..3 {
            for (a, b) in runs[k].traces.iter().zip(&runs[k + 1].traces) {
                prop_assert!(b.candidates_checked <= a.candidates_checked, "{spec} tier {} d={}", k + 1, a.d);
            }
        }
        for (t3, t4) in runs[3].traces.iter().zip(&runs[4].traces) {
            prop_assert_eq!(t3.candidates_checked, t4.candidates_checked);
            prop_assert!(t4.relevant_generators <= t3.relevant_generators);
        }
        for r in &runs[1..] {
            prop_assert_eq!(&r.leading_monomials, &runs[0].leading_monomials);
        }
    }

    #[test]
    fn traces_follow_the_generic_series(spec in small_spec()) {
        let r = lgb_improved(&spec, Tier::T4).unwrap();
        let target = generic_hilbert_series(&spec, r.degree_bound as usize + 1);
        prop_assert_eq!(r.traces.len() as u32, r.degree_bound);
        for t in &r.traces {
            let d = t.d as usize;
            prop_assert_eq!(t.n_d as i128, t.b_d_size as i128 - target.value(d));
            prop_assert_eq!(t.n_d as usize, r.leading_monomials.generators_of_degree(t.d).len());
        }
    }

    #[test]
    fn work_counters_are_deterministic(spec in small_spec(), threads in 1usize..=3) {
        let a = lgb_improved_with(&spec, LgbOptions { tier: Tier::T4, threads }).unwrap();
        let b = lgb_improved_with(&spec, LgbOptions { tier: Tier::T4, threads: 1 }).unwrap();
        prop_assert_eq!(a.result, b.result);
        prop_assert_eq!(a.work, b.work);
    }
}
