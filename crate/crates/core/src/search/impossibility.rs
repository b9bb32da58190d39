//! Finite replay of the argument that no collection of preorders after the
//! update can satisfy the first (or second) iterated condition for a
//! particular eight-world state.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::conditions::{check_cr_for_sets, Condition};
use crate::logic::{Universe, World, WorldSet};
use crate::orders::{enumerate_preorders, Preorder};
use crate::states::BeliefState;
use crate::update::update_belief_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// The constraint sets lie inside the new information.
    C1,
    /// The constraint sets lie outside it.
    C2,
}

impl Variant {
    pub fn condition(self) -> Condition {
        match self {
            Variant::C1 => Condition::CR1,
            Variant::C2 => Condition::CR2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::C1 => "c1",
            Variant::C2 => "c2",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(Variant::C1),
            "c2" => Ok(Variant::C2),
            _ => Err(format!("unknown variant `{s}` (expected c1 or c2)")),
        }
    }
}

/// The three forth-constraint families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    N0,
    N1,
    N2,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::N0, Family::N1, Family::N2];

    /// The pair of worlds, as 0-based indices.
    fn indices(self) -> [u32; 2] {
        match self {
            Family::N0 => [3, 4],
            Family::N1 => [4, 5],
            Family::N2 => [3, 5],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "N0" => Ok(Family::N0),
            "N1" => Ok(Family::N1),
            "N2" => Ok(Family::N2),
            _ => Err(format!("unknown constraint family `{s}` (expected N0, N1 or N2)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Survivor {
    /// Non-reflexive pairs `a ≤ b` on the three contested worlds, by name.
    pub pairs: Vec<(String, String)>,
    /// Whether the embedded full preorder passes the condition on every set used.
    pub replays: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub variant: Variant,
    pub dropped: Vec<Family>,
    pub belief: Vec<String>,
    pub phi: Vec<String>,
    pub after_phi: Vec<String>,
    /// Human-readable derivation of each constraint.
    pub constraints: Vec<String>,
    /// Reflexive relations on the contested worlds that were tested for transitivity.
    pub relations_examined: u64,
    pub candidates: u64,
    pub survivors: Vec<Survivor>,
}

/// The eight-world state: believed worlds w1, w2 with two chains.
pub fn impossibility_state() -> (Universe, BeliefState) {
    let universe = Universe::abstract_worlds(8, 1).expect("eight worlds");
    let chain = |order: [u32; 8]| {
        let layers: Vec<WorldSet> = order.iter().map(|&i| WorldSet::from_indices(8, &[i - 1])).collect();
        Preorder::from_layers(&universe.all(), &layers).expect("a chain is a total preorder")
    };
    let orders = [
        (World(0), chain([1, 2, 3, 4, 6, 5, 7, 8])),
        (World(1), chain([2, 1, 3, 5, 6, 4, 7, 8])),
    ]
    .into_iter()
    .collect();
    let state = BeliefState::validated("S", WorldSet::from_indices(8, &[0, 1]), orders)
        .expect("both chains are faithful");
    (universe, state)
}

pub fn impossibility_phi(variant: Variant) -> WorldSet {
    match variant {
        Variant::C1 => WorldSet::from_indices(8, &[2, 3, 4, 5]),
        Variant::C2 => WorldSet::from_indices(8, &[2]),
    }
}

/// Enumerates every candidate order on {w4, w5, w6} for the single world of
/// the updated belief set and keeps those compatible with the forth
/// constraints of the kept families and the back condition on {w4, w5, w6}.
pub fn replay_impossibility(variant: Variant, dropped: &[Family]) -> SearchOutcome {
    let (u, s) = impossibility_state();
    let phi = impossibility_phi(variant);
    let after_phi = update_belief_set(&s, &phi);
    let names = |set: &WorldSet| u.names(set);
    let mut constraints = Vec::new();
    let side = match variant {
        Variant::C1 => "inside",
        Variant::C2 => "outside",
    };
    constraints.push(format!(
        "updated belief set {} (the minimum of {} under both chains)",
        u.format_set(&after_phi),
        u.format_set(&phi)
    ));

    let contested = WorldSet::from_indices(8, &[3, 4, 5]);
    let kept: Vec<Family> = Family::ALL.iter().copied().filter(|f| !dropped.contains(f)).collect();
    let mut forth = Vec::new();
    for family in &kept {
        let n = WorldSet::from_indices(8, &family.indices());
        let mut required = WorldSet::empty(8);
        let mut sources = Vec::new();
        for (&w, order) in s.orders() {
            let m = order.minimal(&n);
            sources.push(format!("{} at {}", u.format_set(&m), u.name(w)));
            required.union_with(&m);
        }
        constraints.push(format!(
            "{family} = {} lies {side} the new information; its minima are {}; forth needs {} minimal under the order at {}",
            u.format_set(&n),
            sources.join(" and "),
            u.format_set(&required),
            u.names(&after_phi).join(", "),
        ));
        forth.push((n, required));
    }
    let n3 = contested.clone();
    let mut allowed = WorldSet::empty(8);
    for order in s.orders().values() {
        allowed.union_with(&order.minimal(&n3));
    }
    constraints.push(format!(
        "N3 = {}: back allows only {} to be minimal under the order at {}",
        u.format_set(&n3),
        u.format_set(&allowed),
        u.names(&after_phi).join(", "),
    ));

    let mut candidates = 0;
    let mut survivors = Vec::new();
    for candidate in enumerate_preorders(&contested).expect("three worlds") {
        candidates += 1;
        let forth_ok = forth
            .iter()
            .all(|(n, required)| required.is_subset(&candidate.minimal(n)));
        let back_ok = candidate.minimal(&n3).is_subset(&allowed);
        if forth_ok && back_ok {
            let mut sets: Vec<WorldSet> = forth.iter().map(|(n, _)| n.clone()).collect();
            sets.push(n3.clone());
            survivors.push(Survivor {
                pairs: candidate
                    .pairs()
                    .into_iter()
                    .map(|(a, b)| (u.name(a), u.name(b)))
                    .collect(),
                replays: replays(variant, &s, &phi, &after_phi, &candidate, &sets),
            });
        }
    }
    constraints.push(format!("{} of {candidates} candidate orders survive", survivors.len()));

    SearchOutcome {
        variant,
        dropped: dropped.to_vec(),
        belief: names(s.belief()),
        phi: names(&phi),
        after_phi: names(&after_phi),
        constraints,
        relations_examined: 1 << 6,
        candidates,
        survivors,
    }
}

/// Embeds a candidate as `w3 < candidate < rest` and runs the condition on `sets`.
fn replays(
    variant: Variant,
    s: &BeliefState,
    phi: &WorldSet,
    after_phi: &WorldSet,
    candidate: &Preorder,
    sets: &[WorldSet],
) -> bool {
    let full = WorldSet::full(8);
    let Some(bottom) = after_phi.first() else {
        return false;
    };
    let contested = candidate.domain().clone();
    let rest = full.difference(&contested).difference(after_phi);
    let mut pairs: Vec<(World, World)> = full.iter().map(|x| (bottom, x)).collect();
    pairs.extend(candidate.pairs());
    for a in contested.iter() {
        pairs.extend(rest.iter().map(|b| (a, b)));
    }
    for a in rest.iter() {
        pairs.extend(rest.iter().map(|b| (a, b)));
    }
    let order = Preorder::closure(&full, &pairs).expect("all endpoints are worlds");
    let next = BeliefState::new("S'", after_phi.clone(), [(bottom, order)].into_iter().collect());
    check_cr_for_sets(s, &next, phi, variant.condition(), sets)
        .iter()
        .all(|(_, failures)| failures.as_ref().map_or(true, |f| f.is_empty()))
}
