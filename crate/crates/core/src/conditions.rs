//! Semantic conditions on pairs of preorder collections, and the harness
//! comparing them with the iterated postulates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{Universe, World, WorldSet};
use crate::postulates::{classes, CheckError, CheckOptions, Checker, Coverage, Postulate, Violation, MAX_CHECK_WORLDS};
use crate::states::{validate_state, BeliefState};
use crate::update::{update_belief_set, StrategyKind, UpdateError, UpdateStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    CR1,
    CR2,
    CR3,
    CR4,
    NatR,
    LexR,
    IndR,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::CR1,
        Condition::CR2,
        Condition::CR3,
        Condition::CR4,
        Condition::NatR,
        Condition::LexR,
        Condition::IndR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::CR1 => "CR1",
            Condition::CR2 => "CR2",
            Condition::CR3 => "CR3",
            Condition::CR4 => "CR4",
            Condition::NatR => "NatR",
            Condition::LexR => "LexR",
            Condition::IndR => "IndR",
        }
    }

    /// The iterated postulate this condition characterizes.
    pub fn postulate(self) -> Postulate {
        match self {
            Condition::CR1 => Postulate::C1,
            Condition::CR2 => Postulate::C2,
            Condition::CR3 => Postulate::C3,
            Condition::CR4 => Postulate::C4,
            Condition::NatR => Postulate::Nat,
            Condition::LexR => Postulate::Lex,
            Condition::IndR => Postulate::Ind,
        }
    }

    pub fn for_postulate(p: Postulate) -> Option<Condition> {
        Self::ALL.iter().copied().find(|c| c.postulate() == p)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown condition `{0}`")]
pub struct UnknownCondition(pub String);

impl FromStr for Condition {
    type Err = UnknownCondition;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_end_matches('▽');
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(trimmed))
            .ok_or_else(|| UnknownCondition(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("`{next}` does not hold the update of `{state}`: its belief set is {actual:?}, the preorders give {expected:?}")]
    BeliefMismatch {
        state: String,
        next: String,
        expected: WorldSet,
        actual: WorldSet,
    },
    #[error("state `{0}` is not valid")]
    InvalidState(String),
    #[error("exhaustive checking is limited to {MAX_CHECK_WORLDS} worlds, the universe has {0}")]
    TooManyWorlds(u32),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Update(#[from] UpdateError),
}

/// Which part of a condition a witness breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// A source minimum that no target order keeps minimal.
    Forth,
    /// A target minimum that no source order has as minimal.
    Back,
    /// The consequent about `[φ]` fails.
    Consequent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrFailure {
    pub n: WorldSet,
    pub direction: Direction,
    /// The unmatched minimal world, when there is one.
    pub world: Option<World>,
    /// The order the world is (or is not) minimal under.
    pub at: Option<World>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrReport {
    pub condition: Condition,
    pub state: String,
    pub next_state: String,
    pub phi: WorldSet,
    pub holds: bool,
    /// Sets `N` in the condition's range.
    pub candidates: u64,
    /// Of those, the ones meeting the guard.
    pub guarded: u64,
    /// Candidates excluded by the guard; they satisfy the condition vacuously.
    pub vacuous: u64,
    pub failure_count: u64,
    pub failures: Vec<CrFailure>,
}

/// `min(N, ≤_w)` for every believed world `w`.
fn minima(s: &BeliefState, n: &WorldSet) -> Vec<(World, WorldSet)> {
    s.orders().iter().map(|(&w, p)| (w, p.minimal(n))).collect()
}

/// Forth and back between the two collections on `n`.
fn forth_back(source: &[(World, WorldSet)], target: &[(World, WorldSet)], failures: &mut Vec<CrFailure>, n: &WorldSet) {
    for (w, mins) in source {
        for x in mins.iter() {
            if !target.iter().any(|(_, m)| m.contains(x)) {
                failures.push(CrFailure {
                    n: n.clone(),
                    direction: Direction::Forth,
                    world: Some(x),
                    at: Some(*w),
                });
            }
        }
    }
    for (w, mins) in target {
        for x in mins.iter() {
            if !source.iter().any(|(_, m)| m.contains(x)) {
                failures.push(CrFailure {
                    n: n.clone(),
                    direction: Direction::Back,
                    world: Some(x),
                    at: Some(*w),
                });
            }
        }
    }
}

/// Every target order's minima lie in `phi`.
fn all_inside(target: &[(World, WorldSet)], phi: &WorldSet, failures: &mut Vec<CrFailure>, n: &WorldSet) {
    for (w, mins) in target {
        if let Some(x) = mins.difference(phi).first() {
            failures.push(CrFailure {
                n: n.clone(),
                direction: Direction::Consequent,
                world: Some(x),
                at: Some(*w),
            });
        }
    }
}

/// Evaluates one set `N`; `None` when the guard excludes it.
fn judge_set(
    which: Condition,
    s: &BeliefState,
    next: &BeliefState,
    phi: &WorldSet,
    after_phi: &WorldSet,
    n: &WorldSet,
) -> Option<Vec<CrFailure>> {
    let source = minima(s, n);
    let target = minima(next, n);
    let mut failures = Vec::new();
    let some_source_meets = source.iter().any(|(_, m)| m.intersects(phi));
    match which {
        Condition::CR1 | Condition::CR2 => forth_back(&source, &target, &mut failures, n),
        Condition::NatR => {
            // min([φ], ≤_w) ∩ N = ∅ for every w
            if after_phi.intersects(n) {
                return None;
            }
            forth_back(&source, &target, &mut failures, n);
        }
        Condition::CR3 => {
            if !source.iter().all(|(_, m)| m.is_subset(phi)) {
                return None;
            }
            all_inside(&target, phi, &mut failures, n);
        }
        Condition::CR4 => {
            if !some_source_meets {
                return None;
            }
            if !target.iter().any(|(_, m)| m.intersects(phi)) {
                failures.push(CrFailure {
                    n: n.clone(),
                    direction: Direction::Consequent,
                    world: None,
                    at: None,
                });
            }
        }
        Condition::LexR => {
            if !n.intersects(phi) {
                return None;
            }
            all_inside(&target, phi, &mut failures, n);
        }
        Condition::IndR => {
            if !some_source_meets {
                return None;
            }
            all_inside(&target, phi, &mut failures, n);
        }
    }
    Some(failures)
}

/// The sets `N` a condition quantifies over before its guard applies.
fn range(which: Condition, phi: &WorldSet) -> WorldSet {
    match which {
        Condition::CR1 => phi.clone(),
        Condition::CR2 => phi.complement(),
        _ => WorldSet::full(phi.universe_size()),
    }
}

/// Checks a condition between `s` and `next = s ▽ φ` over every relevant `N`.
pub fn check_cr(
    s: &BeliefState,
    next: &BeliefState,
    phi: &WorldSet,
    which: Condition,
    failure_limit: usize,
) -> Result<CrReport, ConditionError> {
    if phi.universe_size() > MAX_CHECK_WORLDS {
        return Err(ConditionError::TooManyWorlds(phi.universe_size()));
    }
    for st in [s, next] {
        if !validate_state(st).is_valid() {
            return Err(ConditionError::InvalidState(st.id().to_string()));
        }
    }
    let after_phi = update_belief_set(s, phi);
    if next.belief() != &after_phi {
        return Err(ConditionError::BeliefMismatch {
            state: s.id().to_string(),
            next: next.id().to_string(),
            expected: after_phi,
            actual: next.belief().clone(),
        });
    }
    let mut report = CrReport {
        condition: which,
        state: s.id().to_string(),
        next_state: next.id().to_string(),
        phi: phi.clone(),
        holds: true,
        candidates: 0,
        guarded: 0,
        vacuous: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for n in range(which, phi).subsets() {
        report.candidates += 1;
        match judge_set(which, s, next, phi, &after_phi, &n) {
            None => report.vacuous += 1,
            Some(failures) => {
                report.guarded += 1;
                if !failures.is_empty() {
                    report.holds = false;
                    report.failure_count += failures.len() as u64;
                    let room = failure_limit.saturating_sub(report.failures.len());
                    report.failures.extend(failures.into_iter().take(room));
                }
            }
        }
    }
    Ok(report)
}

/// Checks a condition for raw sets of worlds chosen by the caller.
pub fn check_cr_for_sets(
    s: &BeliefState,
    next: &BeliefState,
    phi: &WorldSet,
    which: Condition,
    sets: &[WorldSet],
) -> Vec<(WorldSet, Option<Vec<CrFailure>>)> {
    let after_phi = update_belief_set(s, phi);
    sets.iter()
        .map(|n| (n.clone(), judge_set(which, s, next, phi, &after_phi, n)))
        .collect()
}

/// Both verdicts at one `(state, φ)` that disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub state: String,
    pub phi: WorldSet,
    pub postulate_holds: bool,
    pub condition_holds: bool,
    pub postulate_witness: Option<Violation>,
    pub condition_witness: Option<CrFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub postulate: Postulate,
    pub condition: Condition,
    pub instances: u64,
    pub both_hold: u64,
    pub both_violated: u64,
    /// Instances where the postulate's antecedent held for some second input.
    pub postulate_non_vacuous: u64,
    /// Instances where some `N` met the condition's guard.
    pub condition_non_vacuous: u64,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub strategy: String,
    pub strategy_kind: StrategyKind,
    pub coverage: Coverage,
    pub states: Vec<String>,
    /// `(state, φ)` instances evaluated.
    pub instances: u64,
    /// First-step inputs outside the strategy's script.
    pub skipped: u64,
    pub pairs: Vec<PairSummary>,
}

impl HarnessReport {
    pub fn disagreement_count(&self) -> usize {
        self.pairs.iter().map(|p| p.disagreements.len()).sum()
    }
}

/// Compares each postulate with its semantic condition at every state and
/// first-step input.
pub fn equivalence_harness(
    strategy: &dyn UpdateStrategy,
    universe: &Universe,
    states: &[BeliefState],
    pairs: &[Postulate],
    coverage: Coverage,
) -> Result<HarnessReport, ConditionError> {
    let checker = Checker::new(strategy, universe).with_options(CheckOptions {
        coverage,
        ..CheckOptions::default()
    });
    let mut summaries: Vec<PairSummary> = pairs
        .iter()
        .map(|&p| PairSummary {
            postulate: p,
            condition: Condition::for_postulate(p).expect("iterated postulate"),
            instances: 0,
            both_hold: 0,
            both_violated: 0,
            postulate_non_vacuous: 0,
            condition_non_vacuous: 0,
            disagreements: Vec::new(),
        })
        .collect();
    let mut report = HarnessReport {
        strategy: strategy.name().to_string(),
        strategy_kind: strategy.kind(),
        coverage,
        states: states.iter().map(|s| s.id().to_string()).collect(),
        instances: 0,
        skipped: 0,
        pairs: Vec::new(),
    };
    for s in states {
        if !validate_state(s).is_valid() {
            return Err(ConditionError::InvalidState(s.id().to_string()));
        }
        for phi in classes(universe) {
            let Some(verdicts) = checker.iterated_at(s, &phi)? else {
                report.skipped += 1;
                continue;
            };
            report.instances += 1;
            for summary in summaries.iter_mut() {
                let outcome = &verdicts.outcomes[&summary.postulate];
                let cr = check_cr(s, &verdicts.next_state, &phi, summary.condition, 1)?;
                summary.instances += 1;
                if outcome.applicable > 0 {
                    summary.postulate_non_vacuous += 1;
                }
                if cr.guarded > 0 {
                    summary.condition_non_vacuous += 1;
                }
                match (outcome.holds(), cr.holds) {
                    (true, true) => summary.both_hold += 1,
                    (false, false) => summary.both_violated += 1,
                    _ => summary.disagreements.push(Disagreement {
                        state: s.id().to_string(),
                        phi: phi.clone(),
                        postulate_holds: outcome.holds(),
                        condition_holds: cr.holds,
                        postulate_witness: outcome.first.clone(),
                        condition_witness: cr.failures.first().cloned(),
                    }),
                }
            }
        }
    }
    report.pairs = summaries;
    Ok(report)
}
