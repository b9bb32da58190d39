//! Exhaustive postulate checkers.
//!
//! Formulas are quantified up to logical equivalence: every class of models
//! is represented once, by its canonical formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{form_of, models, Formula, Universe, World, WorldSet};
use crate::orders::Preorder;
use crate::states::{singleton_projection, validate_state, BeliefState, PreorderCollection, StateError, StateReport};
use crate::update::{apply_strategy, rodrigues_update, StrategyKind, UpdateError, UpdateStrategy};

/// Largest universe the exhaustive checkers accept.
pub const MAX_CHECK_WORLDS: u32 = 16;

/// Stored violations per report unless configured otherwise.
pub const DEFAULT_VIOLATION_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Update(#[from] UpdateError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("state `{state}` is not valid: {report}")]
    InvalidState { state: String, report: StateReport },
    #[error("exhaustive checking is limited to {MAX_CHECK_WORLDS} worlds, the universe has {0}")]
    TooManyWorlds(u32),
    #[error("{postulate} does not take {what}")]
    BadInstance { postulate: Postulate, what: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Postulate {
    U1,
    U2,
    U3,
    U4,
    U5,
    U6,
    U7,
    U8,
    C1,
    C2,
    C3,
    C4,
    Nat,
    Lex,
    Ind,
}

impl Postulate {
    pub const KM: [Postulate; 8] = [
        Postulate::U1,
        Postulate::U2,
        Postulate::U3,
        Postulate::U4,
        Postulate::U5,
        Postulate::U6,
        Postulate::U7,
        Postulate::U8,
    ];

    pub const ITERATED: [Postulate; 7] = [
        Postulate::C1,
        Postulate::C2,
        Postulate::C3,
        Postulate::C4,
        Postulate::Nat,
        Postulate::Lex,
        Postulate::Ind,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::U1 => "U1",
            Postulate::U2 => "U2",
            Postulate::U3 => "U3",
            Postulate::U4 => "U4",
            Postulate::U5 => "U5",
            Postulate::U6 => "U6",
            Postulate::U7 => "U7",
            Postulate::U8 => "U8",
            Postulate::C1 => "C1",
            Postulate::C2 => "C2",
            Postulate::C3 => "C3",
            Postulate::C4 => "C4",
            Postulate::Nat => "Nat",
            Postulate::Lex => "Lex",
            Postulate::Ind => "Ind",
        }
    }

    pub fn is_iterated(self) -> bool {
        Self::ITERATED.contains(&self)
    }

    /// Whether instances take a second formula (U5 to U7).
    pub fn takes_pairs(self) -> bool {
        matches!(self, Postulate::U5 | Postulate::U6 | Postulate::U7) || self.is_iterated()
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown postulate `{0}`")]
pub struct UnknownPostulate(pub String);

impl FromStr for Postulate {
    type Err = UnknownPostulate;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_end_matches('▽');
        Self::KM
            .iter()
            .chain(Self::ITERATED.iter())
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(trimmed))
            .ok_or_else(|| UnknownPostulate(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsExhaustively,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsExhaustively => "holds exhaustively",
            Verdict::Violated => "violated",
        })
    }
}

/// Which first-step inputs a check ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    /// Every class; a strategy gap is an error.
    #[default]
    Total,
    /// Only classes the strategy defines a next state for; gaps are counted and skipped.
    ScriptedOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub coverage: Coverage,
    pub violation_limit: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            coverage: Coverage::Total,
            violation_limit: DEFAULT_VIOLATION_LIMIT,
        }
    }
}

/// How the actual set has to relate to the expected one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Equal,
    SubsetOf,
    /// Non-empty intersection.
    Meets,
}

impl Requirement {
    pub fn satisfied(self, actual: &WorldSet, expected: &WorldSet) -> bool {
        match self {
            Requirement::Equal => actual == expected,
            Requirement::SubsetOf => actual.is_subset(expected),
            Requirement::Meets => actual.intersects(expected),
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Requirement::Equal => "equal to",
            Requirement::SubsetOf => "a subset of",
            Requirement::Meets => "meeting",
        })
    }
}

/// The formula classes instantiating a postulate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Instance {
    pub phi: WorldSet,
    /// Second formula of binary and iterated postulates.
    pub varphi: Option<WorldSet>,
    /// Index into the syntactic-variant battery, for U4.
    pub variant: Option<usize>,
}

impl Instance {
    pub fn unary(phi: WorldSet) -> Self {
        Instance {
            phi,
            varphi: None,
            variant: None,
        }
    }

    pub fn pair(phi: WorldSet, varphi: WorldSet) -> Self {
        Instance {
            phi,
            varphi: Some(varphi),
            variant: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub postulate: Postulate,
    pub instance: Instance,
    /// Canonical formulas for `phi` and `varphi` (or the variant tried).
    pub formulas: Vec<String>,
    /// Labels of the states involved, starting with the checked state.
    pub states: Vec<String>,
    pub expected: WorldSet,
    pub actual: WorldSet,
    pub requirement: Requirement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub postulate: Postulate,
    pub strategy: String,
    pub strategy_kind: StrategyKind,
    pub state: String,
    pub worlds: u32,
    pub atoms: Option<usize>,
    pub coverage: Coverage,
    pub verdict: Verdict,
    /// Instances enumerated, whether or not the antecedent held.
    pub instances: u64,
    /// Instances whose antecedent held.
    pub applicable: u64,
    /// First-step inputs skipped because the strategy does not define them.
    pub skipped: u64,
    pub violation_count: u64,
    /// At most `violation_limit` violations, in enumeration order.
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsExhaustively
    }
}

/// Outcome of one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    /// Antecedent false.
    Vacuous,
    Holds,
    Violated {
        expected: WorldSet,
        actual: WorldSet,
        requirement: Requirement,
    },
}

impl Judgement {
    fn require(expected: WorldSet, actual: WorldSet, requirement: Requirement) -> Self {
        if requirement.satisfied(&actual, &expected) {
            Judgement::Holds
        } else {
            Judgement::Violated {
                expected,
                actual,
                requirement,
            }
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Judgement::Violated { .. })
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Judgement::Vacuous)
    }
}

/// The belief sets entering a two-step postulate instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoStep {
    pub phi: WorldSet,
    pub varphi: WorldSet,
    /// `Bel(S ▽ φ)`
    pub after_phi: WorldSet,
    /// `Bel(S ▽ ϕ)`
    pub direct: WorldSet,
    /// `Bel((S ▽ φ) ▽ ϕ)`
    pub iterated: WorldSet,
}

/// Evaluates an iterated postulate on precomputed belief sets.
pub fn judge_iterated(p: Postulate, t: &TwoStep) -> Judgement {
    let phi = &t.phi;
    let varphi = &t.varphi;
    let (antecedent, expected, requirement) = match p {
        Postulate::C1 => (varphi.is_subset(phi), &t.direct, Requirement::Equal),
        Postulate::C2 => (varphi.is_disjoint(phi), &t.direct, Requirement::Equal),
        Postulate::C3 => (t.direct.is_subset(phi), phi, Requirement::SubsetOf),
        Postulate::C4 => (t.direct.intersects(phi), phi, Requirement::Meets),
        Postulate::Nat => (t.after_phi.is_disjoint(varphi), &t.direct, Requirement::Equal),
        Postulate::Lex => (varphi.intersects(phi), phi, Requirement::SubsetOf),
        Postulate::Ind => (t.direct.intersects(phi), phi, Requirement::SubsetOf),
        _ => unreachable!("{p} is not an iterated postulate"),
    };
    if !antecedent {
        return Judgement::Vacuous;
    }
    Judgement::require(expected.clone(), t.iterated.clone(), requirement)
}

/// Number of syntactic variants U4 is checked with.
pub const U4_VARIANTS: usize = 8;

/// The `k`-th syntactic variant of `f`. Variant 7 keeps the formula and
/// relabels the state instead.
pub fn u4_variant(k: usize, f: &Formula, class: &WorldSet, universe: &Universe) -> Formula {
    match k {
        0 => f.clone(),
        1 => Formula::not(Formula::not(f.clone())),
        2 => Formula::and(f.clone(), Formula::Top),
        3 => Formula::and(Formula::Top, f.clone()),
        4 => Formula::or(f.clone(), Formula::Bot),
        5 => Formula::not(form_of(&class.complement(), universe)),
        6 => Formula::or(f.clone(), f.clone()),
        _ => f.clone(),
    }
}

fn ensure_checkable(universe: &Universe, s: &BeliefState) -> Result<(), CheckError> {
    if universe.size() > MAX_CHECK_WORLDS {
        return Err(CheckError::TooManyWorlds(universe.size()));
    }
    let report = validate_state(s);
    if !report.is_valid() {
        return Err(CheckError::InvalidState {
            state: s.id().to_string(),
            report,
        });
    }
    Ok(())
}

/// Every model class of the universe, ascending by code.
pub fn classes(universe: &Universe) -> impl Iterator<Item = WorldSet> {
    WorldSet::all_subsets(universe.size())
}

/// Runs postulate checks for one strategy over one universe.
pub struct Checker<'a> {
    strategy: &'a dyn UpdateStrategy,
    universe: &'a Universe,
    options: CheckOptions,
    singletons: Option<&'a PreorderCollection>,
}

/// Per-state caches. Replays build a fresh one.
struct Session<'a> {
    strategy: &'a dyn UpdateStrategy,
    s: &'a BeliefState,
    beliefs: HashMap<WorldSet, WorldSet>,
    projections: Vec<BeliefState>,
}

impl<'a> Session<'a> {
    fn new(
        strategy: &'a dyn UpdateStrategy,
        s: &'a BeliefState,
        singletons: Option<&PreorderCollection>,
    ) -> Result<Self, CheckError> {
        let projections = s
            .belief()
            .iter()
            .map(|w| singleton_projection(s, w, singletons))
            .collect::<Result<_, _>>()?;
        Ok(Session {
            strategy,
            s,
            beliefs: HashMap::new(),
            projections,
        })
    }

    fn belief(&mut self, x: &WorldSet) -> Result<WorldSet, CheckError> {
        if let Some(b) = self.beliefs.get(x) {
            return Ok(b.clone());
        }
        let b = self.strategy.update_belief(self.s, x)?;
        self.beliefs.insert(x.clone(), b.clone());
        Ok(b)
    }
}

impl<'a> Checker<'a> {
    pub fn new(strategy: &'a dyn UpdateStrategy, universe: &'a Universe) -> Self {
        Checker {
            strategy,
            universe,
            options: CheckOptions::default(),
            singletons: None,
        }
    }

    pub fn with_options(mut self, options: CheckOptions) -> Self {
        self.options = options;
        self
    }

    /// Singleton orders declared alongside the state, consulted by U8.
    pub fn with_singletons(mut self, singletons: Option<&'a PreorderCollection>) -> Self {
        self.singletons = singletons;
        self
    }

    fn report(&self, p: Postulate, s: &BeliefState) -> CheckReport {
        CheckReport {
            postulate: p,
            strategy: self.strategy.name().to_string(),
            strategy_kind: self.strategy.kind(),
            state: s.id().to_string(),
            worlds: self.universe.size(),
            atoms: self.universe.alphabet().map(|a| a.len()),
            coverage: self.options.coverage,
            verdict: Verdict::HoldsExhaustively,
            instances: 0,
            applicable: 0,
            skipped: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    fn record(&self, report: &mut CheckReport, judgement: &Judgement, violation: impl FnOnce() -> Violation) {
        report.instances += 1;
        if judgement.is_applicable() {
            report.applicable += 1;
        }
        if judgement.is_violation() {
            report.violation_count += 1;
            report.verdict = Verdict::Violated;
            if report.violations.len() < self.options.violation_limit {
                report.violations.push(violation());
            }
        }
    }

    fn formula_text(&self, class: &WorldSet) -> String {
        form_of(class, self.universe).to_string()
    }

    fn violation(&self, p: Postulate, inst: &Instance, states: Vec<String>, j: &Judgement) -> Violation {
        let Judgement::Violated {
            expected,
            actual,
            requirement,
        } = j
        else {
            unreachable!("only violations are recorded")
        };
        let mut formulas = Vec::new();
        match inst.variant {
            Some(k) => {
                let f = form_of(&inst.phi, self.universe);
                formulas.push(f.to_string());
                formulas.push(u4_variant(k, &f, &inst.phi, self.universe).to_string());
            }
            None => {
                formulas.push(self.formula_text(&inst.phi));
                if let Some(v) = &inst.varphi {
                    formulas.push(self.formula_text(v));
                }
            }
        }
        Violation {
            postulate: p,
            instance: inst.clone(),
            formulas,
            states,
            expected: expected.clone(),
            actual: actual.clone(),
            requirement: *requirement,
        }
    }

    /// Checks one postulate exhaustively at `s`.
    pub fn check(&self, s: &BeliefState, p: Postulate) -> Result<CheckReport, CheckError> {
        if p.is_iterated() {
            self.check_iterated(s, p)
        } else {
            self.check_single_step(s, p)
        }
    }

    /// U1 to U8 at `s`.
    pub fn check_km(&self, s: &BeliefState) -> Result<Vec<CheckReport>, CheckError> {
        Postulate::KM.iter().map(|&p| self.check_single_step(s, p)).collect()
    }

    fn in_coverage(&self, s: &BeliefState, inputs: &[&WorldSet]) -> bool {
        self.options.coverage == Coverage::Total || inputs.iter().all(|x| self.strategy.defines(s, x))
    }

    fn check_single_step(&self, s: &BeliefState, p: Postulate) -> Result<CheckReport, CheckError> {
        if p.is_iterated() {
            return Err(CheckError::BadInstance {
                postulate: p,
                what: "a single-step instance",
            });
        }
        ensure_checkable(self.universe, s)?;
        let mut session = Session::new(self.strategy, s, self.singletons)?;
        let mut report = self.report(p, s);
        let all: Vec<WorldSet> = classes(self.universe).collect();
        let mut instances = Vec::new();
        for a in &all {
            if p.takes_pairs() {
                for b in &all {
                    instances.push(Instance::pair(a.clone(), b.clone()));
                }
            } else if p == Postulate::U4 {
                for k in 0..U4_VARIANTS {
                    instances.push(Instance {
                        variant: Some(k),
                        ..Instance::unary(a.clone())
                    });
                }
            } else {
                instances.push(Instance::unary(a.clone()));
            }
        }
        for inst in instances {
            let inputs = km_inputs(p, &inst);
            if !self.in_coverage(s, &inputs.iter().collect::<Vec<_>>()) {
                report.skipped += 1;
                continue;
            }
            let (judgement, states) = self.km_instance(&mut session, p, &inst)?;
            self.record(&mut report, &judgement, || self.violation(p, &inst, states, &judgement));
        }
        Ok(report)
    }

    fn km_instance(
        &self,
        session: &mut Session<'_>,
        p: Postulate,
        inst: &Instance,
    ) -> Result<(Judgement, Vec<String>), CheckError> {
        let s = session.s;
        let a = &inst.phi;
        let need_b = || {
            inst.varphi.clone().ok_or(CheckError::BadInstance {
                postulate: p,
                what: "a missing second formula",
            })
        };
        let mut states = vec![s.id().to_string()];
        let judgement = match p {
            Postulate::U1 => Judgement::require(a.clone(), session.belief(a)?, Requirement::SubsetOf),
            Postulate::U2 => {
                if s.belief().is_subset(a) {
                    Judgement::require(s.belief().clone(), session.belief(a)?, Requirement::Equal)
                } else {
                    Judgement::Vacuous
                }
            }
            Postulate::U3 => {
                if !s.belief().is_empty() && !a.is_empty() {
                    Judgement::require(a.clone(), session.belief(a)?, Requirement::Meets)
                } else {
                    Judgement::Vacuous
                }
            }
            Postulate::U4 => {
                let k = inst.variant.ok_or(CheckError::BadInstance {
                    postulate: p,
                    what: "an instance without a variant",
                })?;
                let f = form_of(a, self.universe);
                let variant = u4_variant(k, &f, a, self.universe);
                let class = models(&variant, self.universe).map_err(UpdateError::from)?;
                let actual = if k == U4_VARIANTS - 1 {
                    let twin = s.clone().with_id(format!("{}'", s.id()));
                    states.push(twin.id().to_string());
                    self.strategy.update_belief(&twin, &class)?
                } else {
                    session.belief(&class)?
                };
                Judgement::require(session.belief(a)?, actual, Requirement::Equal)
            }
            Postulate::U5 => {
                let b = need_b()?;
                let actual = session.belief(a)?.intersection(&b);
                Judgement::require(session.belief(&a.intersection(&b))?, actual, Requirement::SubsetOf)
            }
            Postulate::U6 => {
                let b = need_b()?;
                let ba = session.belief(a)?;
                let bb = session.belief(&b)?;
                if ba.is_subset(&b) && bb.is_subset(a) {
                    Judgement::require(ba, bb, Requirement::Equal)
                } else {
                    Judgement::Vacuous
                }
            }
            Postulate::U7 => {
                let b = need_b()?;
                if s.belief().len() <= 1 {
                    let actual = session.belief(a)?.intersection(&session.belief(&b)?);
                    Judgement::require(session.belief(&a.union(&b))?, actual, Requirement::SubsetOf)
                } else {
                    Judgement::Vacuous
                }
            }
            Postulate::U8 => {
                let mut expected = WorldSet::empty(a.universe_size());
                for proj in &session.projections {
                    states.push(proj.id().to_string());
                    expected.union_with(&self.strategy.update_belief(proj, a)?);
                }
                Judgement::require(expected, session.belief(a)?, Requirement::Equal)
            }
            _ => unreachable!(),
        };
        Ok((judgement, states))
    }

    /// Applies the strategy at `(s, phi)`, or `None` when the coverage skips it.
    fn first_step(&self, s: &BeliefState, phi: &WorldSet) -> Result<Option<BeliefState>, CheckError> {
        if !self.in_coverage(s, &[phi]) {
            return Ok(None);
        }
        Ok(Some(apply_strategy(self.strategy, s, phi)?))
    }

    fn check_iterated(&self, s: &BeliefState, p: Postulate) -> Result<CheckReport, CheckError> {
        ensure_checkable(self.universe, s)?;
        let mut report = self.report(p, s);
        let all: Vec<WorldSet> = classes(self.universe).collect();
        let direct: Vec<WorldSet> = all
            .iter()
            .map(|x| self.strategy.update_belief(s, x))
            .collect::<Result<_, _>>()?;
        for phi in &all {
            let Some(next) = self.first_step(s, phi)? else {
                report.skipped += 1;
                continue;
            };
            let states = vec![s.id().to_string(), next.id().to_string()];
            for (varphi, direct) in all.iter().zip(&direct) {
                let t = TwoStep {
                    phi: phi.clone(),
                    varphi: varphi.clone(),
                    after_phi: next.belief().clone(),
                    direct: direct.clone(),
                    iterated: self.strategy.update_belief(&next, varphi)?,
                };
                let judgement = judge_iterated(p, &t);
                let inst = Instance::pair(phi.clone(), varphi.clone());
                self.record(&mut report, &judgement, || {
                    self.violation(p, &inst, states.clone(), &judgement)
                });
            }
        }
        Ok(report)
    }

    /// Evaluates one instance from scratch.
    pub fn check_instance(&self, s: &BeliefState, p: Postulate, inst: &Instance) -> Result<InstanceOutcome, CheckError> {
        ensure_checkable(self.universe, s)?;
        if p.is_iterated() {
            let varphi = inst.varphi.clone().ok_or(CheckError::BadInstance {
                postulate: p,
                what: "a missing second formula",
            })?;
            let next = apply_strategy(self.strategy, s, &inst.phi)?;
            let t = TwoStep {
                phi: inst.phi.clone(),
                after_phi: next.belief().clone(),
                direct: self.strategy.update_belief(s, &varphi)?,
                iterated: self.strategy.update_belief(&next, &varphi)?,
                varphi,
            };
            let judgement = judge_iterated(p, &t);
            let states = vec![s.id().to_string(), next.id().to_string()];
            Ok(self.outcome(p, inst, states, judgement, Some(t)))
        } else {
            if p.takes_pairs() != inst.varphi.is_some() {
                return Err(CheckError::BadInstance {
                    postulate: p,
                    what: "this number of formulas",
                });
            }
            let mut session = Session::new(self.strategy, s, self.singletons)?;
            let (judgement, states) = self.km_instance(&mut session, p, inst)?;
            Ok(self.outcome(p, inst, states, judgement, None))
        }
    }

    fn outcome(
        &self,
        p: Postulate,
        inst: &Instance,
        states: Vec<String>,
        judgement: Judgement,
        sets: Option<TwoStep>,
    ) -> InstanceOutcome {
        let violation = judgement
            .is_violation()
            .then(|| self.violation(p, inst, states.clone(), &judgement));
        InstanceOutcome {
            postulate: p,
            instance: inst.clone(),
            applicable: judgement.is_applicable(),
            states,
            sets,
            violation,
        }
    }

    /// Re-runs the instance behind a reported violation.
    pub fn replay(&self, s: &BeliefState, v: &Violation) -> Result<InstanceOutcome, CheckError> {
        self.check_instance(s, v.postulate, &v.instance)
    }

    /// Verdicts of every iterated postulate at one first-step input.
    pub fn iterated_at(&self, s: &BeliefState, phi: &WorldSet) -> Result<Option<PhiVerdicts>, CheckError> {
        ensure_checkable(self.universe, s)?;
        let Some(next) = self.first_step(s, phi)? else {
            return Ok(None);
        };
        let states = vec![s.id().to_string(), next.id().to_string()];
        let mut outcomes: BTreeMap<Postulate, PhiOutcome> =
            Postulate::ITERATED.iter().map(|&p| (p, PhiOutcome::default())).collect();
        for varphi in classes(self.universe) {
            let t = TwoStep {
                phi: phi.clone(),
                after_phi: next.belief().clone(),
                direct: self.strategy.update_belief(s, &varphi)?,
                iterated: self.strategy.update_belief(&next, &varphi)?,
                varphi,
            };
            for (&p, out) in outcomes.iter_mut() {
                let judgement = judge_iterated(p, &t);
                if judgement.is_applicable() {
                    out.applicable += 1;
                }
                if judgement.is_violation() {
                    out.violations += 1;
                    if out.first.is_none() {
                        let inst = Instance::pair(t.phi.clone(), t.varphi.clone());
                        out.first = Some(self.violation(p, &inst, states.clone(), &judgement));
                    }
                }
            }
        }
        Ok(Some(PhiVerdicts {
            phi: phi.clone(),
            next_state: next,
            outcomes,
        }))
    }
}

fn km_inputs(p: Postulate, inst: &Instance) -> Vec<WorldSet> {
    let a = inst.phi.clone();
    match (&inst.varphi, p) {
        (Some(b), Postulate::U5) => vec![a.clone(), a.intersection(b)],
        (Some(b), Postulate::U6) => vec![a, b.clone()],
        (Some(b), Postulate::U7) => vec![a.clone(), b.clone(), a.union(b)],
        _ => vec![a],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub postulate: Postulate,
    pub instance: Instance,
    /// Whether the antecedent held.
    pub applicable: bool,
    pub states: Vec<String>,
    /// Belief sets of iterated instances.
    pub sets: Option<TwoStep>,
    pub violation: Option<Violation>,
}

impl InstanceOutcome {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Aggregated over all second inputs at one first input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhiOutcome {
    pub applicable: u64,
    pub violations: u64,
    pub first: Option<Violation>,
}

impl PhiOutcome {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug)]
pub struct PhiVerdicts {
    pub phi: WorldSet,
    pub next_state: BeliefState,
    pub outcomes: BTreeMap<Postulate, PhiOutcome>,
}

/// Checks U1 to U8 at `s` with default options.
pub fn check_km(
    strategy: &dyn UpdateStrategy,
    universe: &Universe,
    s: &BeliefState,
) -> Result<Vec<CheckReport>, CheckError> {
    Checker::new(strategy, universe).check_km(s)
}

/// Checks one iterated postulate at `s` with default options.
pub fn check_iterated(
    strategy: &dyn UpdateStrategy,
    universe: &Universe,
    s: &BeliefState,
    which: Postulate,
) -> Result<CheckReport, CheckError> {
    if !which.is_iterated() {
        return Err(CheckError::BadInstance {
            postulate: which,
            what: "two-step instances",
        });
    }
    Checker::new(strategy, universe).check_iterated(s, which)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderDisagreement {
    pub world: World,
    pub a: World,
    pub b: World,
    pub initial: bool,
    pub updated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RodriguesViolation {
    pub varphi: WorldSet,
    pub formula: String,
    pub expected: WorldSet,
    pub actual: WorldSet,
}

/// Agreement of updated and initial orders on `[φ]`, and the resulting
/// equivalence of the two ways of updating `ψ` by every `ϕ ⊨ φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RodriguesReport {
    pub psi: WorldSet,
    pub phi: WorldSet,
    pub pairs_compared: u64,
    pub agreement: bool,
    pub disagreements: Vec<OrderDisagreement>,
    pub instances: u64,
    pub verdict: Verdict,
    pub violations: Vec<RodriguesViolation>,
}

pub fn check_rodrigues_c1(
    universe: &Universe,
    psi: &WorldSet,
    initial: &BTreeMap<World, Preorder>,
    updated: &BTreeMap<World, Preorder>,
    phi: &WorldSet,
) -> Result<RodriguesReport, CheckError> {
    if universe.size() > MAX_CHECK_WORLDS {
        return Err(CheckError::TooManyWorlds(universe.size()));
    }
    let mut disagreements = Vec::new();
    let mut pairs_compared = 0;
    for w in psi.iter() {
        let before = initial.get(&w).ok_or(UpdateError::MissingOrder(w))?;
        let after = updated.get(&w).ok_or(UpdateError::MissingOrder(w))?;
        for a in phi.iter() {
            for b in phi.iter() {
                pairs_compared += 1;
                if before.leq(a, b) != after.leq(a, b) {
                    disagreements.push(OrderDisagreement {
                        world: w,
                        a,
                        b,
                        initial: before.leq(a, b),
                        updated: after.leq(a, b),
                    });
                }
            }
        }
    }
    let mut violations = Vec::new();
    let mut instances = 0;
    for varphi in phi.subsets() {
        instances += 1;
        let expected = rodrigues_update(psi, initial, &varphi)?;
        let actual = rodrigues_update(psi, updated, &varphi)?;
        if expected != actual {
            violations.push(RodriguesViolation {
                formula: form_of(&varphi, universe).to_string(),
                varphi,
                expected,
                actual,
            });
        }
    }
    Ok(RodriguesReport {
        psi: psi.clone(),
        phi: phi.clone(),
        pairs_compared,
        agreement: disagreements.is_empty(),
        disagreements,
        instances,
        verdict: if violations.is_empty() {
            Verdict::HoldsExhaustively
        } else {
            Verdict::Violated
        },
        violations,
    })
}
