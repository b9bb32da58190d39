pub mod catalog;
pub mod conditions;
pub mod logic;
pub mod orders;
pub mod postulates;
pub mod scenario;
pub mod search;
pub mod states;
pub mod update;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/worlds-and-formulas.md")]
    pub struct WorldsAndFormulas;
    #[doc = include_str!("../../../book/src/preorders.md")]
    pub struct Preorders;
    #[doc = include_str!("../../../book/src/belief-states.md")]
    pub struct BeliefStates;
    #[doc = include_str!("../../../book/src/update.md")]
    pub struct Update;
    #[doc = include_str!("../../../book/src/postulates.md")]
    pub struct Postulates;
    #[doc = include_str!("../../../book/src/conditions.md")]
    pub struct Conditions;
    #[doc = include_str!("../../../book/src/search.md")]
    pub struct Search;
    #[doc = include_str!("../../../book/src/scenario-format.md")]
    pub struct ScenarioFormat;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
    #[doc = include_str!("../../../book/src/json.md")]
    pub struct Json;
    #[doc = include_str!("../../../book/src/examples.md")]
    pub struct Examples;
}
