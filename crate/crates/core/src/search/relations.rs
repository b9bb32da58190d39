//! Implications between the iterated postulates, checked instance by instance.

use std::fmt;

use serde::Serialize;

use crate::postulates::{classes, CheckError, CheckOptions, Checker, Coverage, Postulate, Violation};
use crate::states::Scenario;
use crate::update::{Op1, Scripted, UpdateError, UpdateStrategy};

use super::random::{random_scenario, GenerateError, RandomParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub antecedent: Postulate,
    pub consequent: Postulate,
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.antecedent, self.consequent)
    }
}

pub const IMPLICATIONS: [Implication; 4] = [
    Implication {
        antecedent: Postulate::Lex,
        consequent: Postulate::Ind,
    },
    Implication {
        antecedent: Postulate::Ind,
        consequent: Postulate::C3,
    },
    Implication {
        antecedent: Postulate::Ind,
        consequent: Postulate::C4,
    },
    Implication {
        antecedent: Postulate::Nat,
        consequent: Postulate::C2,
    },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationWitness {
    pub seed: u64,
    pub strategy: String,
    pub state: String,
    pub phi: crate::logic::WorldSet,
    pub consequent_violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationTally {
    pub implication: String,
    pub strategy: String,
    pub instances: u64,
    /// Instances where the antecedent held.
    pub antecedent_held: u64,
    /// Of those, instances where the antecedent held with at least one applicable second input.
    pub non_vacuous: u64,
    pub violations: Vec<ImplicationWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub seeds: Vec<u64>,
    pub tallies: Vec<ImplicationTally>,
}

impl RelationsReport {
    pub fn violation_count(&self) -> usize {
        self.tallies.iter().map(|t| t.violations.len()).sum()
    }

    pub fn tally(&self, strategy: &str, implication: Implication) -> Option<&ImplicationTally> {
        let label = implication.to_string();
        self.tallies
            .iter()
            .find(|t| t.strategy == strategy && t.implication == label)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RelationsError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Update(#[from] UpdateError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Evaluates every implication at every `(S, φ)` of the scenario generated
/// from each seed, under the hierarchy operator and under the script.
pub fn check_relations(seeds: &[u64]) -> Result<RelationsReport, RelationsError> {
    let mut tallies: Vec<ImplicationTally> = ["op1", "scripted"]
        .iter()
        .flat_map(|strategy| {
            IMPLICATIONS.iter().map(move |imp| ImplicationTally {
                implication: imp.to_string(),
                strategy: strategy.to_string(),
                instances: 0,
                antecedent_held: 0,
                non_vacuous: 0,
                violations: Vec::new(),
            })
        })
        .collect();
    for &seed in seeds {
        let scenario = random_scenario(RandomParams::varied(seed))?;
        let scripted = Scripted::from_scenario(&scenario)?;
        let runs: [(&dyn UpdateStrategy, Coverage); 2] =
            [(&Op1, Coverage::Total), (&scripted, Coverage::ScriptedOnly)];
        for (k, (strategy, coverage)) in runs.into_iter().enumerate() {
            let offset = k * IMPLICATIONS.len();
            tally_scenario(seed, &scenario, strategy, coverage, &mut tallies[offset..offset + IMPLICATIONS.len()])?;
        }
    }
    Ok(RelationsReport {
        seeds: seeds.to_vec(),
        tallies,
    })
}

fn tally_scenario(
    seed: u64,
    scenario: &Scenario,
    strategy: &dyn UpdateStrategy,
    coverage: Coverage,
    tallies: &mut [ImplicationTally],
) -> Result<(), RelationsError> {
    let checker = Checker::new(strategy, &scenario.universe).with_options(CheckOptions {
        coverage,
        ..CheckOptions::default()
    });
    let s = &scenario.states[0];
    for phi in classes(&scenario.universe) {
        let Some(verdicts) = checker.iterated_at(s, &phi)? else {
            continue;
        };
        for (imp, tally) in IMPLICATIONS.iter().zip(tallies.iter_mut()) {
            let ante = &verdicts.outcomes[&imp.antecedent];
            let cons = &verdicts.outcomes[&imp.consequent];
            tally.instances += 1;
            if ante.holds() {
                tally.antecedent_held += 1;
                if ante.applicable > 0 {
                    tally.non_vacuous += 1;
                }
                if !cons.holds() {
                    tally.violations.push(ImplicationWitness {
                        seed,
                        strategy: strategy.name().to_string(),
                        state: s.id().to_string(),
                        phi: phi.clone(),
                        consequent_violation: cons.first.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn few_seeds_no_violations() {
        let report = check_relations(&[0, 1, 2, 3]).unwrap();
        assert_eq!(report.violation_count(), 0);
        let lex = report.tally("op1", IMPLICATIONS[0]).unwrap();
        assert!(lex.non_vacuous > 0);
    }
}
