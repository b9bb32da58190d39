use iterupd::logic::{World, WorldSet};
use iterupd::orders::{validate, Preorder};
use proptest::prelude::*;

const SIZE: u32 = 8;

fn pairs() -> impl Strategy<Value = Vec<(World, World)>> {
    prop::collection::vec((0..SIZE, 0..SIZE).prop_map(|(a, b)| (World(a), World(b))), 0..20)
}

fn preorder() -> impl Strategy<Value = Preorder> {
    pairs().prop_map(|p| Preorder::closure(&WorldSet::full(SIZE), &p).unwrap())
}

/// A total preorder from a rank per world.
fn ranked() -> impl Strategy<Value = (Vec<u8>, Preorder)> {
    prop::collection::vec(0u8..4, SIZE as usize).prop_map(|ranks| {
        let mut layers = Vec::new();
        for r in 0..4 {
            let layer = WorldSet::from_worlds(
                SIZE,
                (0..SIZE).filter(|&w| ranks[w as usize] == r).map(World),
            );
            if !layer.is_empty() {
                layers.push(layer);
            }
        }
        let order = Preorder::from_layers(&WorldSet::full(SIZE), &layers).unwrap();
        (ranks, order)
    })
}

fn subset() -> impl Strategy<Value = WorldSet> {
    (0u64..256).prop_map(|code| WorldSet::from_code(SIZE, code))
}

proptest! {
    #[test]
    fn closure_is_a_valid_preorder_containing_its_pairs(p in pairs()) {
        let order = Preorder::closure(&WorldSet::full(SIZE), &p).unwrap();
        prop_assert!(validate(&order.relation(), false).is_valid());
        for &(a, b) in &p {
            prop_assert!(order.leq(a, b));
        }
    }

    #[test]
    fn strict_part_is_irreflexive_and_transitive(o in preorder()) {
        for a in 0..SIZE {
            prop_assert!(!o.strict(World(a), World(a)));
            for b in 0..SIZE {
                for c in 0..SIZE {
                    if o.strict(World(a), World(b)) && o.strict(World(b), World(c)) {
                        prop_assert!(o.strict(World(a), World(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn minima_are_undominated_and_cover(o in preorder(), n in subset()) {
        let m = o.minimal(&n);
        prop_assert!(m.is_subset(&n));
        prop_assert_eq!(m.is_empty(), n.is_empty());
        for x in m.iter() {
            prop_assert!(n.iter().all(|y| !o.strict(y, x)));
        }
        // finite preorders: every element sits above some minimal one
        for y in n.iter() {
            prop_assert!(m.iter().any(|x| o.leq(x, y)));
        }
        prop_assert_eq!(o.min_set(&n).unwrap(), m);
    }

    #[test]
    fn total_minima_are_the_lowest_rank((ranks, o) in ranked(), n in subset()) {
        let lowest = n.iter().map(|w| ranks[w.index()]).min();
        let expected = WorldSet::from_worlds(
            SIZE,
            n.iter().filter(|w| Some(ranks[w.index()]) == lowest),
        );
        prop_assert_eq!(o.minimal(&n), expected);
        prop_assert!(o.is_total());
    }

    #[test]
    fn layers_rebuild_the_order((_, o) in ranked()) {
        let layers = o.layers().unwrap();
        let again = Preorder::from_layers(&WorldSet::full(SIZE), &layers).unwrap();
        prop_assert_eq!(again.pairs(), o.pairs());
    }
}
