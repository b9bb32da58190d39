//! Propositional language over a finite alphabet: worlds, world sets,
//! formulas, parsing, and model enumeration.

mod formula;
mod parser;
mod universe;
mod world;

pub use formula::{form_of, models, semantic_query, Formula, QueryKind};
pub use parser::{parse_formula, ParseError};
pub use universe::{Alphabet, Universe, MAX_ATOMS};
pub use world::{Iter, Subsets, World, WorldSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("the alphabet must contain at least one atom")]
    EmptyAlphabet,
    #[error("alphabet of {0} atoms exceeds the limit of {MAX_ATOMS}")]
    AlphabetTooLarge(usize),
    #[error("`{0}` is not a valid atom name")]
    BadAtomName(String),
    #[error("atom `{0}` is declared twice")]
    DuplicateAtom(String),
    #[error("a universe cannot have {0} abstract worlds")]
    BadWorldCount(u32),
    #[error("atom `{0}` is not in the alphabet")]
    UnknownAtom(String),
    #[error("world `{0}` is not in the universe")]
    UnknownWorld(String),
    #[error("{kind:?} takes {expected} formula(s)")]
    Arity { kind: QueryKind, expected: usize },
}
