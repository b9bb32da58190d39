//! Naive recomputations used for differential testing. Nothing here calls
//! into the update module.

use crate::logic::{Formula, LogicError, Universe, World, WorldSet};
use crate::orders::{Preorder, Relation};
use crate::states::BeliefState;

/// Models by evaluating the formula world by world.
fn pointwise_models(f: &Formula, universe: &Universe) -> Result<Vec<World>, LogicError> {
    let mut out = Vec::new();
    for w in universe.worlds() {
        if f.evaluate(universe, w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// `Bel(S ▽ φ)` by scanning, for each model `x`, every other model for one
/// strictly below it under some believed world's order.
pub fn oracle_update(universe: &Universe, s: &BeliefState, phi: &Formula) -> Result<WorldSet, LogicError> {
    let models = pointwise_models(phi, universe)?;
    let mut out = WorldSet::empty(universe.size());
    for &x in &models {
        let kept = s.belief().iter().any(|w| {
            let order = &s.orders()[&w];
            !models.iter().any(|&y| order.leq(y, x) && !order.leq(x, y))
        });
        if kept {
            out.insert(x);
        }
    }
    Ok(out)
}

/// The hierarchy operator recomputed from ranks: 0 for the key world, 1 for
/// other models, 2 for the rest; `a ≤ b` iff rank(a) ≤ rank(b).
pub fn oracle_op1(universe: &Universe, s: &BeliefState, phi: &Formula) -> Result<BeliefState, LogicError> {
    let belief = oracle_update(universe, s, phi)?;
    let models = pointwise_models(phi, universe)?;
    let all = universe.all();
    let orders = belief
        .iter()
        .map(|w| {
            let rank = |x: World| {
                if x == w {
                    0
                } else if models.contains(&x) {
                    1
                } else {
                    2
                }
            };
            let mut rel = Relation::empty(&all);
            for a in universe.worlds() {
                for b in universe.worlds() {
                    if rank(a) <= rank(b) {
                        rel.set(a, b);
                    }
                }
            }
            (w, Preorder::try_from_relation(&rel).expect("ranks give a preorder"))
        })
        .collect();
    Ok(BeliefState::new(format!("{}*", s.id()), belief, orders))
}
