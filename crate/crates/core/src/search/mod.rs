//! Counterexample engines, scenario generation, and independent oracles.

mod impossibility;
mod oracle;
mod random;
mod relations;

pub use impossibility::{
    impossibility_phi, impossibility_state, replay_impossibility, Family, SearchOutcome, Survivor, Variant,
};
pub use oracle::{oracle_op1, oracle_update};
pub use random::{random_scenario, GenerateError, OrderStyle, RandomParams, SCRIPTED_STEPS};
pub use relations::{
    check_relations, Implication, ImplicationTally, ImplicationWitness, RelationsError, RelationsReport, IMPLICATIONS,
};
