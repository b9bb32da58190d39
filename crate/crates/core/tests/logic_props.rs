use iterupd::logic::{form_of, models, parse_formula, Formula, Universe, WorldSet};
use proptest::prelude::*;

fn universe() -> Universe {
    Universe::with_atoms(&["p", "q", "r"]).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::atom),
        prop::collection::btree_set(0u32..8, 0..4)
            .prop_map(|ws| Formula::Worlds(ws.into_iter().map(|w| format!("w{w}")).collect())),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn world_set() -> impl Strategy<Value = WorldSet> {
    (0u64..256).prop_map(|code| WorldSet::from_code(8, code))
}

proptest! {
    #[test]
    fn connectives_are_set_operations(a in formula(), b in formula()) {
        let u = universe();
        let (ma, mb) = (models(&a, &u).unwrap(), models(&b, &u).unwrap());
        prop_assert_eq!(models(&Formula::not(a.clone()), &u).unwrap(), ma.complement());
        prop_assert_eq!(models(&Formula::and(a.clone(), b.clone()), &u).unwrap(), ma.intersection(&mb));
        prop_assert_eq!(models(&Formula::or(a.clone(), b.clone()), &u).unwrap(), ma.union(&mb));
        prop_assert_eq!(
            models(&Formula::implies(a.clone(), b.clone()), &u).unwrap(),
            ma.complement().union(&mb)
        );
        let iff = models(&Formula::iff(a, b), &u).unwrap();
        prop_assert_eq!(iff.is_subset(&ma.complement().union(&mb)), true);
        prop_assert_eq!(iff.len() + ma.difference(&mb).len() + mb.difference(&ma).len(), 8);
    }

    #[test]
    fn pointwise_evaluation_agrees_with_models(f in formula()) {
        let u = universe();
        let m = models(&f, &u).unwrap();
        for w in u.worlds() {
            prop_assert_eq!(f.evaluate(&u, w).unwrap(), m.contains(w));
        }
    }

    #[test]
    fn canonical_sentence_round_trips(set in world_set()) {
        let u = universe();
        prop_assert_eq!(models(&form_of(&set, &u), &u).unwrap(), set);
    }

    #[test]
    fn printing_and_parsing_are_stable(f in formula()) {
        let u = universe();
        let printed = f.to_string();
        let parsed = parse_formula(&printed, &u).unwrap();
        prop_assert_eq!(models(&parsed, &u).unwrap(), models(&f, &u).unwrap());
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn set_algebra_laws(a in world_set(), b in world_set()) {
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
        prop_assert_eq!(a.intersects(&b), !a.is_disjoint(&b));
    }
}

#[test]
fn every_class_has_a_distinct_canonical_sentence() {
    let u = universe();
    let mut seen = std::collections::HashSet::new();
    for set in WorldSet::all_subsets(8) {
        assert!(seen.insert(form_of(&set, &u).to_string()));
    }
    assert_eq!(seen.len(), 256);
}
