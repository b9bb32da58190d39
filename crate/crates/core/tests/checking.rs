use iterupd::conditions::{check_cr, Condition};
use iterupd::postulates::{classes, CheckOptions, Checker, Coverage, Postulate};
use iterupd::search::{random_scenario, RandomParams};
use iterupd::update::{apply_strategy, Composite, Scripted};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn violations_replay(seed in 0u64..10_000) {
        let sc = random_scenario(RandomParams::varied(seed)).unwrap();
        let composite = Composite::from_scenario(&sc).unwrap();
        let checker = Checker::new(&composite, &sc.universe);
        let s = &sc.states[0];
        for p in [Postulate::C1, Postulate::C2, Postulate::Nat] {
            let report = checker.check(s, p).unwrap();
            for v in &report.violations {
                let again = checker.replay(s, v).unwrap();
                let w = again.violation.expect("replayed instance is violated again");
                prop_assert_eq!(&w.expected, &v.expected);
                prop_assert_eq!(&w.actual, &v.actual);
            }
        }
    }

    #[test]
    fn postulate_and_condition_agree_per_input(seed in 0u64..10_000) {
        let sc = random_scenario(RandomParams::varied(seed)).unwrap();
        let scripted = Scripted::from_scenario(&sc).unwrap();
        let checker = Checker::new(&scripted, &sc.universe).with_options(CheckOptions {
            coverage: Coverage::ScriptedOnly,
            ..CheckOptions::default()
        });
        let s = &sc.states[0];
        for phi in classes(&sc.universe) {
            let Some(verdicts) = checker.iterated_at(s, &phi).unwrap() else { continue };
            let next = apply_strategy(&scripted, s, &phi).unwrap();
            for c in Condition::ALL {
                let cr = check_cr(s, &next, &phi, c, 1).unwrap();
                prop_assert_eq!(cr.holds, verdicts.outcomes[&c.postulate()].holds(), "{} at {:?}", c, phi);
            }
        }
    }
}
