use ordtopo_core::fixtures;
use ordtopo_core::lab::io::{to_json, PosetFile};
use ordtopo_core::lab::{
    analyze_poset, generate_poset, oracle_search_with, poset_disagreements, run_fixtures, Mutation, RunConfig, Which,
};
use ordtopo_core::reflections::{decomposition_check, Equation, ModelContext};
use ordtopo_core::scott::{scott_space, xizhao_model};
use ordtopo_core::systems::{classify, FiniteSystems, Tri};
use proptest::prelude::*;

#[test]
fn fixture_reports_pass_and_keep_field_order() {
    let s = run_fixtures(&RunConfig::default()).unwrap();
    assert!(s.pass());
    let text = to_json(&s.reports[1]);
    let keys = [
        "\"schema_version\"",
        "\"command\"",
        "\"input\"",
        "\"families\"",
        "\"max_families\"",
        "\"panel\"",
        "\"equations\"",
        "\"checks\"",
        "\"witnesses\"",
        "\"pass\"",
    ];
    let pos: Vec<usize> =
        keys.iter().map(|k| text.find(&format!("\n  {k}:")).unwrap_or_else(|| panic!("{k}"))).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
    assert!(!text.contains("\"timing\""));
}

#[test]
fn timing_is_opt_in() {
    let cfg = RunConfig { timing: true, which: Which::parse("EQ0").unwrap(), ..RunConfig::default() };
    let r = analyze_poset("t", "fixture", &fixtures::vee(), &cfg).unwrap();
    assert!(r.timing.is_some());
}

#[test]
fn mutated_witness_replays() {
    let cfg = RunConfig { seed: 2, max_size: 6, trials: 5, ..RunConfig::default() };
    let r = oracle_search_with(&cfg, Mutation::IrrDropsCarrier).unwrap();
    let d = r.disagreements.first().expect("mutation is visible");
    let text = serde_json::to_string(d.instance.as_ref().unwrap()).unwrap();
    let back: PosetFile = serde_json::from_str(&text).unwrap();
    let p = back.to_poset().unwrap();
    let (_, again) = poset_disagreements(&p, Mutation::IrrDropsCarrier).unwrap();
    assert!(again.iter().any(|(path, _)| path == &d.path));
    assert!(poset_disagreements(&p, Mutation::None).unwrap().1.is_empty());
}

#[test]
fn eq1_on_chain_family() {
    for n in 1..=6 {
        let ctx = ModelContext::new(&fixtures::chain(n)).unwrap();
        assert!(decomposition_check(&ctx, Equation::Eq1).unwrap().holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_models_obey_pair_law(seed in any::<u64>(), trial in 0u64..1000) {
        let cfg = RunConfig { seed, max_size: 6, ..RunConfig::default() };
        let p = generate_poset(&cfg, trial).unwrap();
        let h = xizhao_model(&p).unwrap();
        for (i, &(x, e)) in h.pairs().iter().enumerate() {
            for (j, &(y, d)) in h.pairs().iter().enumerate() {
                let law = (e == d && p.leq(x, y)) || (y == d && p.leq(x, d));
                prop_assert_eq!(h.poset().leq(i, j), law);
            }
        }
        let max = h.maxima();
        prop_assert!(h.poset().is_lower_set(h.poset().carrier().minus(max)));
    }

    #[test]
    fn scott_spaces_classify_all_true(seed in any::<u64>()) {
        let cfg = RunConfig { seed, max_size: 6, ..RunConfig::default() };
        let p = generate_poset(&cfg, 0).unwrap();
        let x = scott_space(&p).unwrap();
        let panel = classify(&FiniteSystems::new(&x).unwrap()).unwrap();
        prop_assert!(panel.preserved().iter().all(|(_, v)| *v == Tri::True));
        prop_assert_eq!(panel.h_model.value, Tri::True);
    }
}
