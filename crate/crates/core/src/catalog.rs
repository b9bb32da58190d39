//! Built-in scenarios: the bookshop table, the warehouse alarm, the glasses
//! on a table, and the comparison with re-updating the initial belief set.

use serde::Serialize;
use thiserror::Error;

use crate::logic::Universe;
use crate::scenario::{evaluate_expectations, parse_scenario, EvalError, ExpectationResult, Outcome, ScenarioError};
use crate::states::Scenario;

/// One row per atom: its value in w0, w1, ... as `⊤`/`⊥`.
type WorldTable = &'static [(&'static str, &'static str)];

const BOOKSHOP: WorldTable = &[("b", "⊥⊥⊥⊥⊤⊤⊤⊤"), ("n", "⊥⊥⊤⊤⊥⊥⊤⊤"), ("t", "⊥⊤⊥⊤⊥⊤⊥⊤")];
const ALARM: WorldTable = &[("a", "⊥⊥⊤⊤"), ("f", "⊥⊤⊥⊤")];
const GLASSES: WorldTable = &[("c", "⊥⊥⊤⊤"), ("d", "⊥⊤⊥⊤")];
const SHELF: WorldTable = &[("b", "⊥⊥⊤⊤"), ("n", "⊥⊤⊥⊤")];

pub struct Example {
    pub number: u8,
    pub title: &'static str,
    pub source: &'static str,
    table: WorldTable,
}

pub const EXAMPLES: [Example; 9] = [
    Example {
        number: 1,
        title: "moving items on a two-zone table",
        source: include_str!("../scenarios/ex1.scn"),
        table: BOOKSHOP,
    },
    Example {
        number: 2,
        title: "C1: forgetting where the toy is",
        source: include_str!("../scenarios/ex2.scn"),
        table: BOOKSHOP,
    },
    Example {
        number: 3,
        title: "C2: book and novel to the same zone",
        source: include_str!("../scenarios/ex3.scn"),
        table: BOOKSHOP,
    },
    Example {
        number: 4,
        title: "C3: the warehouse alarm",
        source: include_str!("../scenarios/ex4.scn"),
        table: ALARM,
    },
    Example {
        number: 5,
        title: "C4: the book, then the novel",
        source: include_str!("../scenarios/ex5.scn"),
        table: BOOKSHOP,
    },
    Example {
        number: 6,
        title: "re-updating the initial belief set",
        source: include_str!("../scenarios/ex6.scn"),
        table: BOOKSHOP,
    },
    Example {
        number: 7,
        title: "the hierarchy operator",
        source: include_str!("../scenarios/ex7.scn"),
        table: BOOKSHOP,
    },
    Example {
        number: 8,
        title: "C1 against keeping the dirty glasses",
        source: include_str!("../scenarios/ex8.scn"),
        table: GLASSES,
    },
    Example {
        number: 9,
        title: "C2 against keeping the book on the left",
        source: include_str!("../scenarios/ex9.scn"),
        table: SHELF,
    },
];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("no built-in example {0} (expected 1 to 9)")]
    Unknown(u8),
    #[error("example {number}: {source}")]
    Parse { number: u8, source: ScenarioError },
    #[error("example {number}: world {world} disagrees with its table on atom `{atom}`")]
    Table { number: u8, world: String, atom: String },
    #[error("example {number}: {source}")]
    Eval { number: u8, source: EvalError },
}

pub fn example(number: u8) -> Result<&'static Example, CatalogError> {
    EXAMPLES
        .iter()
        .find(|e| e.number == number)
        .ok_or(CatalogError::Unknown(number))
}

fn check_table(number: u8, universe: &Universe, table: WorldTable) -> Result<(), CatalogError> {
    let atoms = universe.alphabet().map(|a| a.atoms().to_vec()).unwrap_or_default();
    for (k, (atom, row)) in table.iter().enumerate() {
        for (w, cell) in universe.worlds().zip(row.chars()) {
            if atoms.get(k).map(String::as_str) != Some(*atom) || universe.atom_value(w, k) != (cell == '⊤') {
                return Err(CatalogError::Table {
                    number,
                    world: universe.name(w),
                    atom: atom.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Parses a built-in scenario and checks its world encoding.
pub fn load_example(number: u8) -> Result<Scenario, CatalogError> {
    let ex = example(number)?;
    let sc = parse_scenario(ex.source).map_err(|source| CatalogError::Parse { number, source })?;
    check_table(number, &sc.universe, ex.table)?;
    Ok(sc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorldRow {
    pub world: String,
    /// Atoms true in the world, in declaration order.
    pub true_atoms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReplay {
    pub example: u8,
    pub title: String,
    pub atoms: Vec<String>,
    pub worlds: Vec<WorldRow>,
    pub results: Vec<ExpectationResult>,
    /// Expectations whose computed value differs from the stated one.
    pub mismatches: usize,
    /// Postulate instances found violated, expected or not.
    pub violations_found: usize,
}

impl ExampleReplay {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }
}

pub fn replay_example(number: u8) -> Result<ExampleReplay, CatalogError> {
    let ex = example(number)?;
    let sc = load_example(number)?;
    let results = evaluate_expectations(&sc).map_err(|source| CatalogError::Eval { number, source })?;
    let u = &sc.universe;
    let atoms = u.alphabet().map(|a| a.atoms().to_vec()).unwrap_or_default();
    let worlds = u
        .worlds()
        .map(|w| WorldRow {
            world: u.name(w),
            true_atoms: atoms
                .iter()
                .enumerate()
                .filter(|&(k, _)| u.atom_value(w, k))
                .map(|(_, a)| a.clone())
                .collect(),
        })
        .collect();
    let mismatches = results.iter().filter(|r| !r.passed).count();
    let violations_found = results
        .iter()
        .filter(|r| matches!(&r.outcome, Outcome::Postulate { found, .. } if found == "violated"))
        .count();
    Ok(ExampleReplay {
        example: number,
        title: ex.title.to_string(),
        atoms,
        worlds,
        results,
        mismatches,
        violations_found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_matches_its_expectations() {
        for ex in &EXAMPLES {
            let replay = replay_example(ex.number).unwrap();
            for r in &replay.results {
                assert!(r.passed, "example {}: {} gave {:?}", ex.number, r.text, r.outcome);
            }
        }
    }

    #[test]
    fn violations_by_example() {
        let found: Vec<usize> = (1..=9).map(|n| replay_example(n).unwrap().violations_found).collect();
        assert_eq!(found, vec![0, 1, 1, 1, 1, 0, 0, 1, 1]);
    }

    #[test]
    fn tables_are_checked() {
        let u = Universe::with_atoms(&["b", "n"]).unwrap();
        assert!(check_table(9, &u, SHELF).is_ok());
        assert!(check_table(9, &u, GLASSES).is_err());
        assert!(check_table(1, &u, &[("b", "⊤⊥⊥⊥")]).is_err());
    }

    #[test]
    fn hierarchy_example_shows_three_layers() {
        let replay = replay_example(7).unwrap();
        let Outcome::Belief { trail, .. } = &replay.results[1].outcome else {
            panic!("belief outcome expected");
        };
        assert_eq!(
            trail[1].orders,
            vec![("w4".to_string(), "[w4] < [w5, w6, w7] < [w0, w1, w2, w3]".to_string())]
        );
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(load_example(10), Err(CatalogError::Unknown(10))));
    }
}
