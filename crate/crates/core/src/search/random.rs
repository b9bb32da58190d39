//! Seeded generation of small scenarios.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::logic::{form_of, Universe, World, WorldSet};
use crate::orders::Preorder;
use crate::states::{BeliefState, Scenario, ScriptStep};
use crate::update::update_belief_set;

const ATOM_NAMES: [&str; 3] = ["p", "q", "r"];

/// Scripted next states attached to the generated start state.
pub const SCRIPTED_STEPS: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrderStyle {
    #[default]
    TotalLayered,
    Partial,
}

impl fmt::Display for OrderStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderStyle::TotalLayered => "total-layered",
            OrderStyle::Partial => "partial",
        })
    }
}

impl FromStr for OrderStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "total-layered" | "total" => Ok(OrderStyle::TotalLayered),
            "partial" => Ok(OrderStyle::Partial),
            _ => Err(format!("unknown order style `{s}` (expected total-layered or partial)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("atoms must be 2 or 3, got {0}")]
    Atoms(usize),
    #[error("belief size must be between 1 and 3, got {0}")]
    BeliefSize(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub seed: u64,
    pub atoms: usize,
    pub belief_size: usize,
    pub style: OrderStyle,
}

impl RandomParams {
    pub fn new(seed: u64) -> Self {
        RandomParams {
            seed,
            atoms: 3,
            belief_size: 2,
            style: OrderStyle::TotalLayered,
        }
    }

    /// Parameters varied by seed: belief size cycles through 1..=3 and the
    /// order style alternates.
    pub fn varied(seed: u64) -> Self {
        RandomParams {
            seed,
            atoms: 3,
            belief_size: 1 + (seed % 3) as usize,
            style: if seed % 2 == 0 {
                OrderStyle::TotalLayered
            } else {
                OrderStyle::Partial
            },
        }
    }
}

/// A random total preorder with `w` alone at the bottom.
fn layered_order(rng: &mut ChaCha8Rng, full: &WorldSet, w: World) -> Preorder {
    let size = full.universe_size();
    let mut others: Vec<World> = full.iter().filter(|&x| x != w).collect();
    others.shuffle(rng);
    let depth = rng.gen_range(1..=others.len().max(1));
    let mut layers = vec![WorldSet::empty(size); depth + 1];
    layers[0].insert(w);
    for x in others {
        layers[rng.gen_range(1..=depth)].insert(x);
    }
    layers.retain(|l| !l.is_empty());
    Preorder::from_layers(full, &layers).expect("layers partition the universe")
}

/// Random pairs among the other worlds, closed, with `w` forced below all.
fn partial_order(rng: &mut ChaCha8Rng, full: &WorldSet, w: World) -> Preorder {
    let others: Vec<World> = full.iter().filter(|&x| x != w).collect();
    let mut pairs: Vec<(World, World)> = full.iter().map(|x| (w, x)).collect();
    for &a in &others {
        for &b in &others {
            if a != b && rng.gen_bool(0.2) {
                pairs.push((a, b));
            }
        }
    }
    Preorder::closure(full, &pairs).expect("endpoints are worlds")
}

fn random_order(rng: &mut ChaCha8Rng, style: OrderStyle, full: &WorldSet, w: World) -> Preorder {
    match style {
        OrderStyle::TotalLayered => layered_order(rng, full, w),
        OrderStyle::Partial => partial_order(rng, full, w),
    }
}

/// `w` below everything, the rest ordered as `base` orders them.
fn natural_order(full: &WorldSet, w: World, base: &Preorder) -> Preorder {
    let rest = full.difference(&WorldSet::singleton(full.universe_size(), w));
    let mut pairs: Vec<(World, World)> = full.iter().map(|x| (w, x)).collect();
    pairs.extend(base.restrict(&rest).expect("rest lies in the domain").pairs());
    Preorder::closure(full, &pairs).expect("endpoints are worlds")
}

/// A start state `S` over atoms p, q(, r) with scripted next states `S1..`.
///
/// The next states alternate between three shapes: each new world keeps the
/// order of a source world it came from (with itself moved to the bottom),
/// a two-layer order, and a fresh random order in the requested style.
pub fn random_scenario(params: RandomParams) -> Result<Scenario, GenerateError> {
    if !(2..=3).contains(&params.atoms) {
        return Err(GenerateError::Atoms(params.atoms));
    }
    if !(1..=3).contains(&params.belief_size) {
        return Err(GenerateError::BeliefSize(params.belief_size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let universe = Universe::with_atoms(&ATOM_NAMES[..params.atoms]).expect("valid atoms");
    let full = universe.all();
    let size = universe.size();

    let mut worlds: Vec<World> = universe.worlds().collect();
    worlds.shuffle(&mut rng);
    let belief = WorldSet::from_worlds(size, worlds[..params.belief_size].iter().copied());
    let orders: BTreeMap<World, Preorder> = belief
        .iter()
        .map(|w| (w, random_order(&mut rng, params.style, &full, w)))
        .collect();
    let start = BeliefState::new("S", belief, orders);

    let mut scenario = Scenario::new(universe.clone());
    let mut used = Vec::new();
    for k in 0..SCRIPTED_STEPS {
        let phi = loop {
            let code = rng.gen_range(1..1u64 << size);
            let phi = WorldSet::from_code(size, code);
            if !used.contains(&phi) {
                break phi;
            }
        };
        used.push(phi.clone());
        let after = update_belief_set(&start, &phi);
        let next_orders: BTreeMap<World, Preorder> = after
            .iter()
            .map(|w2| {
                let order = match k % 3 {
                    0 => {
                        let source = start
                            .orders()
                            .values()
                            .find(|o| o.minimal(&phi).contains(w2))
                            .expect("every new world is minimal somewhere");
                        natural_order(&full, w2, source)
                    }
                    1 => {
                        let rest = full.difference(&WorldSet::singleton(size, w2));
                        Preorder::from_layers(&full, &[WorldSet::singleton(size, w2), rest])
                            .expect("two layers partition the universe")
                    }
                    _ => random_order(&mut rng, params.style, &full, w2),
                };
                (w2, order)
            })
            .collect();
        let id = format!("S{}", k + 1);
        scenario.states.push(BeliefState::new(id.clone(), after, next_orders));
        scenario.script.push(ScriptStep {
            from: "S".to_string(),
            formula: form_of(&phi, &universe),
            to: id,
        });
    }
    scenario.states.insert(0, start);
    Ok(scenario)
}
