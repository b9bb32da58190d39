//! Update operators on belief states.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::logic::{models, Formula, LogicError, Universe, World, WorldSet};
use crate::orders::Preorder;
use crate::states::{validate_state, BeliefState, Scenario, StateReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpdateError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("world {world} does not satisfy the new information")]
    NotAModel { world: World },
    #[error("strategy `{strategy}` has no next state for `{state}` updated by {phi:?}")]
    Unscripted {
        strategy: String,
        state: String,
        phi: WorldSet,
    },
    #[error("strategy `{strategy}` produced belief set {actual:?} for `{state}`, but the preorders give {expected:?}")]
    BeliefMismatch {
        strategy: String,
        state: String,
        expected: WorldSet,
        actual: WorldSet,
    },
    #[error("strategy `{strategy}` produced an invalid state `{state}`: {report}")]
    InvalidResult {
        strategy: String,
        state: String,
        report: StateReport,
    },
    #[error("no preorder for world {0}")]
    MissingOrder(World),
    #[error("unknown state `{0}`")]
    UnknownState(String),
}

/// `∪_{w ∈ Bel(S)} min(φ, ≤^S_w)` for a class of models `phi`.
pub fn update_belief_set(s: &BeliefState, phi: &WorldSet) -> WorldSet {
    let mut out = WorldSet::empty(phi.universe_size());
    for order in s.orders().values() {
        out.union_with(&order.minimal(phi));
    }
    out
}

/// The belief set of `S ▽ φ` determined by the state's preorders.
pub fn semantic_update_belief(
    universe: &Universe,
    s: &BeliefState,
    phi: &Formula,
) -> Result<WorldSet, UpdateError> {
    Ok(update_belief_set(s, &models(phi, universe)?))
}

/// The three-way split of the universe around a model `w` of φ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hierarchy {
    /// `{w}`
    pub h0: WorldSet,
    /// `[φ] \ {w}`
    pub h1: WorldSet,
    /// `[¬φ]`
    pub h2: WorldSet,
}

impl Hierarchy {
    /// Non-empty layers, bottom first.
    pub fn layers(&self) -> Vec<WorldSet> {
        [&self.h0, &self.h1, &self.h2]
            .into_iter()
            .filter(|l| !l.is_empty())
            .cloned()
            .collect()
    }

    pub fn order(&self) -> Preorder {
        let domain = WorldSet::full(self.h0.universe_size());
        Preorder::from_layers(&domain, &self.layers()).expect("hierarchy partitions the universe")
    }
}

pub fn hierarchy(w: World, phi: &WorldSet) -> Result<Hierarchy, UpdateError> {
    if !phi.contains(w) {
        return Err(UpdateError::NotAModel { world: w });
    }
    let h0 = WorldSet::singleton(phi.universe_size(), w);
    Ok(Hierarchy {
        h1: phi.difference(&h0),
        h2: phi.complement(),
        h0,
    })
}

/// Label given to states produced by an operator rather than a script.
pub fn derived_id(from: &str, phi: &WorldSet) -> String {
    format!("{from}*{phi:?}")
}

/// The hierarchy operator: the new belief set is the semantic update, and
/// every new belief world `w` gets the order `{w} < [φ]\{w} < [¬φ]`.
pub fn op1_update(s: &BeliefState, phi: &WorldSet) -> BeliefState {
    let belief = update_belief_set(s, phi);
    let orders = belief
        .iter()
        .map(|w| (w, hierarchy(w, phi).expect("belief worlds are models").order()))
        .collect();
    BeliefState::new(derived_id(s.id(), phi), belief, orders)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Op1,
    Scripted,
    Composite,
    Custom,
}

/// A way of producing `S ▽ φ` together with its preorder collection.
///
/// Strategies work on classes of models; formula-level entry points compute
/// `models` first.
pub trait UpdateStrategy {
    fn name(&self) -> &str;

    fn kind(&self) -> StrategyKind;

    /// `Bel(S ▽ φ)`. The default reads it off the state's own preorders.
    fn update_belief(&self, s: &BeliefState, phi: &WorldSet) -> Result<WorldSet, UpdateError> {
        Ok(update_belief_set(s, phi))
    }

    /// The full next state. May fail where the strategy is partial.
    fn next_state(&self, s: &BeliefState, phi: &WorldSet) -> Result<BeliefState, UpdateError>;

    /// Whether `next_state` is defined at `(s, phi)`.
    fn defines(&self, _s: &BeliefState, _phi: &WorldSet) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Op1;

impl UpdateStrategy for Op1 {
    fn name(&self) -> &str {
        "op1"
    }

    fn kind(&self) -> StrategyKind {
        StrategyKind::Op1
    }

    fn next_state(&self, s: &BeliefState, phi: &WorldSet) -> Result<BeliefState, UpdateError> {
        Ok(op1_update(s, phi))
    }
}

/// Next states read from a scenario script, keyed by source state and the
/// models of the update formula.
#[derive(Clone, Debug)]
pub struct Scripted {
    steps: HashMap<(String, WorldSet), BeliefState>,
}

impl Scripted {
    pub fn from_scenario(scenario: &Scenario) -> Result<Self, UpdateError> {
        let mut steps = HashMap::new();
        for step in &scenario.script {
            let to = scenario
                .state(&step.to)
                .ok_or_else(|| UpdateError::UnknownState(step.to.clone()))?;
            if scenario.state(&step.from).is_none() {
                return Err(UpdateError::UnknownState(step.from.clone()));
            }
            let phi = models(&step.formula, &scenario.universe)?;
            steps.insert((step.from.clone(), phi), to.clone());
        }
        Ok(Scripted { steps })
    }

    /// Model classes scripted for `state`, ascending.
    pub fn scripted_for(&self, state: &str) -> Vec<WorldSet> {
        let mut out: Vec<WorldSet> = self
            .steps
            .keys()
            .filter(|(from, _)| from == state)
            .map(|(_, phi)| phi.clone())
            .collect();
        out.sort();
        out
    }

    fn lookup(&self, s: &BeliefState, phi: &WorldSet) -> Option<&BeliefState> {
        self.steps.get(&(s.id().to_string(), phi.clone()))
    }
}

impl UpdateStrategy for Scripted {
    fn name(&self) -> &str {
        "scripted"
    }

    fn kind(&self) -> StrategyKind {
        StrategyKind::Scripted
    }

    fn next_state(&self, s: &BeliefState, phi: &WorldSet) -> Result<BeliefState, UpdateError> {
        self.lookup(s, phi).cloned().ok_or_else(|| UpdateError::Unscripted {
            strategy: self.name().to_string(),
            state: s.id().to_string(),
            phi: phi.clone(),
        })
    }

    fn defines(&self, s: &BeliefState, phi: &WorldSet) -> bool {
        self.lookup(s, phi).is_some()
    }
}

/// Scripted steps where the script has one, the hierarchy operator elsewhere.
#[derive(Clone, Debug)]
pub struct Composite {
    scripted: Scripted,
}

impl Composite {
    pub fn new(scripted: Scripted) -> Self {
        Composite { scripted }
    }

    pub fn from_scenario(scenario: &Scenario) -> Result<Self, UpdateError> {
        Ok(Self::new(Scripted::from_scenario(scenario)?))
    }

    pub fn is_scripted(&self, s: &BeliefState, phi: &WorldSet) -> bool {
        self.scripted.defines(s, phi)
    }
}

impl UpdateStrategy for Composite {
    fn name(&self) -> &str {
        "composite"
    }

    fn kind(&self) -> StrategyKind {
        StrategyKind::Composite
    }

    fn next_state(&self, s: &BeliefState, phi: &WorldSet) -> Result<BeliefState, UpdateError> {
        match self.scripted.lookup(s, phi) {
            Some(next) => Ok(next.clone()),
            None => Ok(op1_update(s, phi)),
        }
    }
}

/// Runs the strategy and checks its output against the preorder semantics
/// and the faithfulness requirements.
pub fn apply_strategy(
    strategy: &dyn UpdateStrategy,
    s: &BeliefState,
    phi: &WorldSet,
) -> Result<BeliefState, UpdateError> {
    let next = strategy.next_state(s, phi)?;
    let expected = update_belief_set(s, phi);
    if next.belief() != &expected {
        return Err(UpdateError::BeliefMismatch {
            strategy: strategy.name().to_string(),
            state: s.id().to_string(),
            expected,
            actual: next.belief().clone(),
        });
    }
    let report = validate_state(&next);
    if !report.is_valid() {
        return Err(UpdateError::InvalidResult {
            strategy: strategy.name().to_string(),
            state: next.id().to_string(),
            report,
        });
    }
    Ok(next)
}

/// Formula-level [`apply_strategy`].
pub fn apply_formula(
    strategy: &dyn UpdateStrategy,
    universe: &Universe,
    s: &BeliefState,
    phi: &Formula,
) -> Result<BeliefState, UpdateError> {
    apply_strategy(strategy, s, &models(phi, universe)?)
}

/// Updates the initial belief set `psi` with the preorders obtained after
/// a previous update: `∪_{w ∈ ψ} min(ϕ, ≤^φ_w)`.
pub fn rodrigues_update(
    psi: &WorldSet,
    orders: &BTreeMap<World, Preorder>,
    varphi: &WorldSet,
) -> Result<WorldSet, UpdateError> {
    let mut out = WorldSet::empty(psi.universe_size());
    for w in psi.iter() {
        let order = orders.get(&w).ok_or(UpdateError::MissingOrder(w))?;
        out.union_with(&order.minimal(varphi));
    }
    Ok(out)
}
