use iterupd::logic::{form_of, WorldSet};
use iterupd::scenario::{parse_scenario, print_scenario};
use iterupd::search::{oracle_op1, random_scenario, OrderStyle, RandomParams};
use iterupd::states::{validate_state, Scenario, ScriptStep};
use iterupd::update::{apply_strategy, op1_update, update_belief_set, Op1, Scripted, UpdateStrategy};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = RandomParams> {
    (any::<u64>(), 2usize..=3, 1usize..=3, any::<bool>()).prop_map(|(seed, atoms, belief_size, partial)| {
        RandomParams {
            seed,
            atoms,
            belief_size,
            style: if partial { OrderStyle::Partial } else { OrderStyle::TotalLayered },
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn success_inclusion_and_consistency(p in params(), code in any::<u64>()) {
        let sc = random_scenario(p).unwrap();
        let size = sc.universe.size();
        let phi = WorldSet::from_code(size, code % (1 << size));
        for s in &sc.states {
            let out = update_belief_set(s, &phi);
            prop_assert!(out.is_subset(&phi));
            if s.belief().is_subset(&phi) {
                prop_assert_eq!(&out, s.belief());
            }
            if !s.belief().is_empty() && !phi.is_empty() {
                prop_assert!(!out.is_empty());
            }
        }
    }

    #[test]
    fn hierarchy_operator_matches_rank_oracle(p in params(), code in any::<u64>()) {
        let sc = random_scenario(p).unwrap();
        let size = sc.universe.size();
        let phi = WorldSet::from_code(size, code % (1 << size));
        let s = &sc.states[0];
        let ours = op1_update(s, &phi);
        let oracle = oracle_op1(&sc.universe, s, &form_of(&phi, &sc.universe)).unwrap();
        prop_assert!(ours.same_content(&oracle));
        prop_assert!(validate_state(&ours).is_valid());
    }

    #[test]
    fn generated_scenarios_print_and_parse_back(p in params()) {
        let sc = random_scenario(p).unwrap();
        let text = print_scenario(&sc);
        let back = parse_scenario(&text).unwrap();
        prop_assert_eq!(&back.states, &sc.states);
        prop_assert_eq!(print_scenario(&back), text);
    }
}

#[test]
fn generator_output_is_valid_for_a_thousand_seeds() {
    for seed in 0..1000 {
        let sc = random_scenario(RandomParams::varied(seed)).unwrap();
        for s in &sc.states {
            assert!(validate_state(s).is_valid(), "seed {seed}: {}", s.id());
        }
        let scripted = Scripted::from_scenario(&sc).unwrap();
        for step in &sc.script {
            let from = sc.state(&step.from).unwrap();
            let phi = iterupd::logic::models(&step.formula, &sc.universe).unwrap();
            let next = apply_strategy(&scripted, from, &phi).unwrap();
            assert_eq!(next.id(), step.to);
        }
    }
}

/// A script that records the hierarchy operator's own results behaves like it.
#[test]
fn script_of_hierarchy_results_is_the_hierarchy_operator() {
    let mut checked = 0;
    for seed in 0..25 {
        let base = random_scenario(RandomParams::varied(seed)).unwrap();
        let s = base.states[0].clone();
        let mut sc = Scenario::new(base.universe.clone());
        sc.states.push(s.clone());
        let inputs: Vec<WorldSet> = (0..4).map(|k| WorldSet::from_code(8, (seed * 37 + k * 61 + 1) % 256)).collect();
        for (k, phi) in inputs.iter().enumerate() {
            if sc.script.iter().any(|st| iterupd::logic::models(&st.formula, &sc.universe).unwrap() == *phi) {
                continue;
            }
            let next = op1_update(&s, phi).with_id(format!("N{k}"));
            sc.states.push(next.clone());
            sc.script.push(ScriptStep {
                from: s.id().to_string(),
                formula: form_of(phi, &sc.universe),
                to: next.id().to_string(),
            });
        }
        let scripted = Scripted::from_scenario(&sc).unwrap();
        for phi in &inputs {
            let a = scripted.next_state(&s, phi).unwrap();
            let b = Op1.next_state(&s, phi).unwrap();
            assert!(a.same_content(&b));
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
}
