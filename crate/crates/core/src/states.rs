//! Belief states and their collections of faithful preorders.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{Formula, Universe, World, WorldSet};
use crate::orders::Preorder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("world {world} is not in the belief set of state `{state}`")]
    NotInBelief { state: String, world: World },
    #[error("state `{state}` has no preorder for world {world}")]
    MissingOrder { state: String, world: World },
    #[error(
        "declared singleton preorder at {world} differs from the one in state `{state}`: \
         declared {declared:?}, state has {compound:?}"
    )]
    SingletonMismatch {
        state: String,
        world: World,
        declared: Vec<(World, World)>,
        compound: Vec<(World, World)>,
    },
    #[error("state `{state}` is not valid: {report}")]
    Invalid { state: String, report: StateReport },
}

/// The family ≤^S_w, keyed by the worlds of the belief set.
pub type PreorderCollection = BTreeMap<World, Preorder>;

/// A belief set together with one preorder per believed world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefState {
    id: String,
    belief: WorldSet,
    orders: PreorderCollection,
}

impl BeliefState {
    /// Builds a state without validating it; see [`validate_state`].
    pub fn new(id: impl Into<String>, belief: WorldSet, orders: PreorderCollection) -> Self {
        BeliefState {
            id: id.into(),
            belief,
            orders,
        }
    }

    /// Builds a state and rejects it unless [`validate_state`] passes.
    pub fn validated(
        id: impl Into<String>,
        belief: WorldSet,
        orders: PreorderCollection,
    ) -> Result<Self, StateError> {
        let state = Self::new(id, belief, orders);
        let report = validate_state(&state);
        if report.is_valid() {
            Ok(state)
        } else {
            Err(StateError::Invalid {
                state: state.id,
                report,
            })
        }
    }

    /// The state with no believed worlds.
    pub fn empty(id: impl Into<String>, universe_size: u32) -> Self {
        Self::new(id, WorldSet::empty(universe_size), BTreeMap::new())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn belief(&self) -> &WorldSet {
        &self.belief
    }

    pub fn orders(&self) -> &PreorderCollection {
        &self.orders
    }

    pub fn order(&self, w: World) -> Option<&Preorder> {
        self.orders.get(&w)
    }

    pub fn universe_size(&self) -> u32 {
        self.belief.universe_size()
    }

    /// Same belief set and same preorders, ignoring the label.
    pub fn same_content(&self, other: &BeliefState) -> bool {
        self.belief == other.belief && self.orders == other.orders
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unfaithful {
    pub world: World,
    /// Other worlds that are not strictly above `world`.
    pub witnesses: Vec<World>,
}

/// Structural problems with a belief state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StateReport {
    /// Believed worlds without a preorder.
    pub missing_orders: Vec<World>,
    /// Preorders keyed by worlds outside the belief set.
    pub extra_orders: Vec<World>,
    /// Preorders whose domain is not the whole universe (or a different universe).
    pub partial_domains: Vec<World>,
    pub unfaithful: Vec<Unfaithful>,
}

impl StateReport {
    pub fn is_valid(&self) -> bool {
        self.missing_orders.is_empty()
            && self.extra_orders.is_empty()
            && self.partial_domains.is_empty()
            && self.unfaithful.is_empty()
    }
}

impl fmt::Display for StateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let mut parts = Vec::new();
        if !self.missing_orders.is_empty() {
            parts.push(format!("no preorder for {}", list(&self.missing_orders)));
        }
        if !self.extra_orders.is_empty() {
            parts.push(format!("preorders for unbelieved {}", list(&self.extra_orders)));
        }
        if !self.partial_domains.is_empty() {
            parts.push(format!(
                "preorders not over the whole universe at {}",
                list(&self.partial_domains)
            ));
        }
        for u in &self.unfaithful {
            parts.push(format!(
                "preorder at {} is not faithful ({} not strictly above it)",
                u.world,
                list(&u.witnesses)
            ));
        }
        f.write_str(&parts.join("; "))
    }
}

fn list(worlds: &[World]) -> String {
    worlds.iter().map(World::to_string).collect::<Vec<_>>().join(", ")
}

/// Checks that the orders are keyed exactly by the believed worlds, that every
/// order covers the universe, and that each is faithful to its key.
pub fn validate_state(s: &BeliefState) -> StateReport {
    let mut report = StateReport::default();
    let full = WorldSet::full(s.universe_size());
    for w in s.belief.iter() {
        if !s.orders.contains_key(&w) {
            report.missing_orders.push(w);
        }
    }
    for (&w, order) in &s.orders {
        if !s.belief.contains(w) {
            report.extra_orders.push(w);
            continue;
        }
        if order.domain() != &full {
            report.partial_domains.push(w);
            continue;
        }
        if !order.is_faithful_to(w) {
            report.unfaithful.push(Unfaithful {
                world: w,
                witnesses: order.faithfulness_witnesses(w),
            });
        }
    }
    report
}

/// The singleton state at `w`: belief `{w}` and the single order `≤^S_w`.
///
/// `declared` holds singleton orders written down separately; when one exists
/// for `w` it has to coincide with the state's own entry.
pub fn singleton_projection(
    s: &BeliefState,
    w: World,
    declared: Option<&PreorderCollection>,
) -> Result<BeliefState, StateError> {
    if !s.belief.contains(w) {
        return Err(StateError::NotInBelief {
            state: s.id.clone(),
            world: w,
        });
    }
    let order = s.orders.get(&w).ok_or_else(|| StateError::MissingOrder {
        state: s.id.clone(),
        world: w,
    })?;
    if let Some(declared) = declared.and_then(|d| d.get(&w)) {
        if declared != order {
            return Err(StateError::SingletonMismatch {
                state: s.id.clone(),
                world: w,
                declared: declared.pairs(),
                compound: order.pairs(),
            });
        }
    }
    if s.belief.len() == 1 {
        return Ok(s.clone());
    }
    let mut orders = BTreeMap::new();
    orders.insert(w, order.clone());
    Ok(BeliefState::new(
        format!("{}@{}", s.id, w),
        WorldSet::singleton(s.universe_size(), w),
        orders,
    ))
}

/// One `from --formula--> to` line of a script.
#[derive(Clone, Debug, PartialEq)]
pub struct ScriptStep {
    pub from: String,
    pub formula: Formula,
    pub to: String,
}

/// A chain of updates starting at a named state.
#[derive(Clone, Debug, PartialEq)]
pub struct UpdatePath {
    pub start: String,
    pub steps: Vec<Formula>,
}

/// Which single-instance verdict an `expect` line asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedVerdict {
    Holds,
    Violated,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpectKind {
    /// The belief set reached by following `path`.
    Belief { path: UpdatePath, expected: WorldSet },
    /// A single postulate instance, `start --φ-->` or `start --φ--> --ϕ-->`.
    Postulate {
        postulate: crate::postulates::Postulate,
        verdict: ExpectedVerdict,
        path: UpdatePath,
    },
    /// Updating the belief set of `initial` with the orders of `updated`.
    Rodrigues {
        initial: String,
        updated: String,
        phi: Formula,
        varphi: Formula,
        expected: WorldSet,
    },
}

/// One line of an `expect` block.
#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    /// Strategy named on the line; the composite strategy otherwise.
    pub strategy: Option<crate::update::StrategyKind>,
    pub kind: ExpectKind,
}

/// Everything a scenario file describes.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub universe: Universe,
    /// Declaration order is kept.
    pub states: Vec<BeliefState>,
    pub singletons: PreorderCollection,
    pub script: Vec<ScriptStep>,
    pub expectations: Vec<Expectation>,
}

impl Scenario {
    pub fn new(universe: Universe) -> Self {
        Scenario {
            universe,
            states: Vec::new(),
            singletons: BTreeMap::new(),
            script: Vec::new(),
            expectations: Vec::new(),
        }
    }

    pub fn state(&self, id: &str) -> Option<&BeliefState> {
        self.states.iter().find(|s| s.id() == id)
    }

    /// Declared singleton orders, or `None` when there are none.
    pub fn declared_singletons(&self) -> Option<&PreorderCollection> {
        (!self.singletons.is_empty()).then_some(&self.singletons)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::Preorder;

    fn ws(idx: &[u32]) -> WorldSet {
        WorldSet::from_indices(8, idx)
    }

    fn layered(layers: &[&[u32]]) -> Preorder {
        let layers: Vec<WorldSet> = layers.iter().map(|l| ws(l)).collect();
        Preorder::from_layers(&WorldSet::full(8), &layers).unwrap()
    }

    fn two_world_state() -> BeliefState {
        let mut orders = BTreeMap::new();
        orders.insert(World(0), layered(&[&[0], &[4], &[1, 2, 3, 5, 6, 7]]));
        orders.insert(World(4), layered(&[&[4], &[0], &[1, 2, 3, 5, 6, 7]]));
        BeliefState::new("S", ws(&[0, 4]), orders)
    }

    #[test]
    fn layered_single_world_state_is_valid() {
        let mut orders = BTreeMap::new();
        orders.insert(World(0), layered(&[&[0], &[2, 4], &[1, 3, 5, 6, 7]]));
        let s = BeliefState::new("S", ws(&[0]), orders);
        assert!(validate_state(&s).is_valid());
    }

    #[test]
    fn missing_key_is_reported() {
        let mut orders = BTreeMap::new();
        orders.insert(World(0), layered(&[&[0], &[4], &[1, 2, 3, 5, 6, 7]]));
        let s = BeliefState::new("S", ws(&[0, 4]), orders);
        let report = validate_state(&s);
        assert_eq!(report.missing_orders, vec![World(4)]);
        assert!(BeliefState::validated("S", ws(&[0, 4]), s.orders().clone()).is_err());
    }

    #[test]
    fn tie_with_key_world_is_unfaithful() {
        let mut orders = BTreeMap::new();
        orders.insert(World(0), layered(&[&[0, 1], &[2, 3, 4, 5, 6, 7]]));
        let s = BeliefState::new("S", ws(&[0]), orders);
        let report = validate_state(&s);
        assert_eq!(
            report.unfaithful,
            vec![Unfaithful {
                world: World(0),
                witnesses: vec![World(1)]
            }]
        );
    }

    #[test]
    fn partial_domain_and_extra_keys() {
        let mut orders = BTreeMap::new();
        orders.insert(World(0), Preorder::identity(&ws(&[0, 1])));
        orders.insert(World(3), layered(&[&[3], &[0, 1, 2, 4, 5, 6, 7]]));
        let report = validate_state(&BeliefState::new("S", ws(&[0]), orders));
        assert_eq!(report.partial_domains, vec![World(0)]);
        assert_eq!(report.extra_orders, vec![World(3)]);
    }

    #[test]
    fn empty_state_is_valid() {
        assert!(validate_state(&BeliefState::empty("E", 8)).is_valid());
    }

    #[test]
    fn projection_keeps_the_entry() {
        let s = two_world_state();
        let p = singleton_projection(&s, World(4), None).unwrap();
        assert_eq!(p.belief(), &ws(&[4]));
        assert_eq!(p.order(World(4)), s.order(World(4)));
        assert!(validate_state(&p).is_valid());
        let again = singleton_projection(&p, World(4), None).unwrap();
        assert!(again.same_content(&p));
        assert!(matches!(
            singleton_projection(&s, World(2), None),
            Err(StateError::NotInBelief { .. })
        ));
    }

    #[test]
    fn declared_singleton_must_match() {
        let s = two_world_state();
        let mut declared = BTreeMap::new();
        declared.insert(World(4), layered(&[&[4], &[0, 1, 2, 3, 5, 6, 7]]));
        assert!(matches!(
            singleton_projection(&s, World(4), Some(&declared)),
            Err(StateError::SingletonMismatch { .. })
        ));
        declared.insert(World(4), s.order(World(4)).unwrap().clone());
        assert!(singleton_projection(&s, World(4), Some(&declared)).is_ok());
    }
}
