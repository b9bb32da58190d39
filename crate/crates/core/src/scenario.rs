//! The scenario file format: a universe, named belief states, optional
//! singleton orders, a script of scripted updates, and expectations.
//!
//! ```text
//! # comments run to the end of the line
//! atoms: b, n, t;
//!
//! state S {
//!   belief: !b & !n & !t;
//!   order w0: [w0] < [w2, w4] < rest;
//! }
//!
//! state S1 {
//!   belief: {w2, w4};
//!   order w2: [w2] < [w4] < rest;
//!   order w4: pairs { w4 < w3; w3 <= w0; w0 == w1; ... };
//! }
//!
//! script {
//!   S --b | n--> S1;
//! }
//!
//! expect {
//!   S --b | n--> == {w2, w4};
//!   violated C1 at S --b | n--> --n-->;
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{models, parse_formula, Formula, LogicError, ParseError, Universe, World, WorldSet};
use crate::orders::Preorder;
use crate::postulates::{
    check_rodrigues_c1, CheckError, Checker, Instance, InstanceOutcome, Postulate, RodriguesReport,
};
use crate::states::{
    validate_state, BeliefState, ExpectKind, Expectation, ExpectedVerdict, Scenario, ScriptStep, StateReport,
    UpdatePath,
};
use crate::update::{
    apply_strategy, update_belief_set, Composite, Op1, Scripted, StrategyKind, UpdateError, UpdateStrategy,
};

/// A load error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ScenarioError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Update(#[from] UpdateError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    universe: Option<Universe>,
}

impl Cursor {
    fn new(source: &str) -> Self {
        Cursor {
            chars: source.chars().collect(),
            pos: 0,
            universe: None,
        }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ScenarioError {
        let (line, column) = self.line_col(pos);
        ScenarioError {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ScenarioError {
        self.error_at(self.pos, message)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.chars.len()
    }

    fn looking_at(&mut self, token: &str) -> bool {
        self.skip_trivia();
        let mut k = self.pos;
        for t in token.chars() {
            if self.chars.get(k) != Some(&t) {
                return false;
            }
            k += 1;
        }
        // keywords must not run into a following identifier character
        let word = token.chars().last().is_some_and(is_word_char);
        !(word && self.chars.get(k).is_some_and(|&c| is_word_char(c)))
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.looking_at(token) {
            self.pos += token.chars().count();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ScenarioError> {
        if self.eat(token) {
            Ok(())
        } else {
            let found = self.describe_next();
            Err(self.error(format!("expected `{token}`, found {found}")))
        }
    }

    fn describe_next(&mut self) -> String {
        self.skip_trivia();
        match self.chars.get(self.pos) {
            None => "end of input".to_string(),
            Some(&c) if is_word_char(c) => {
                let word: String = self.chars[self.pos..].iter().take_while(|&&c| is_word_char(c)).collect();
                format!("`{word}`")
            }
            Some(c) => format!("`{c}`"),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), ScenarioError> {
        self.skip_trivia();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(&c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => {
                let found = self.describe_next();
                return Err(self.error(format!("expected {what}, found {found}")));
            }
        }
        while self.chars.get(self.pos).is_some_and(|&c| is_word_char(c)) {
            self.pos += 1;
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }

    fn number(&mut self) -> Result<u32, ScenarioError> {
        self.skip_trivia();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error_at(start, "expected a number"))
    }

    fn universe(&self) -> &Universe {
        self.universe.as_ref().expect("universe checked before use")
    }

    fn world(&mut self) -> Result<World, ScenarioError> {
        let (name, at) = self.ident("a world name")?;
        self.universe()
            .world_named(&name)
            .ok_or_else(|| self.error_at(at, format!("unknown world `{name}`")))
    }

    fn world_set(&mut self) -> Result<WorldSet, ScenarioError> {
        self.expect("{")?;
        let mut set = self.universe().empty();
        if self.eat("}") {
            return Ok(set);
        }
        loop {
            set.insert(self.world()?);
            if self.eat("}") {
                return Ok(set);
            }
            self.expect(",")?;
        }
    }

    /// Raw text up to (not including) `stop`, with its start position.
    fn text_until(&mut self, stop: &str) -> Result<(String, usize), ScenarioError> {
        let start = self.pos;
        let stop_chars: Vec<char> = stop.chars().collect();
        let mut k = self.pos;
        while k < self.chars.len() {
            if self.chars[k..].starts_with(&stop_chars) {
                self.pos = k;
                return Ok((self.chars[start..k].iter().collect(), start));
            }
            k += 1;
        }
        Err(self.error_at(start, format!("missing `{stop}`")))
    }

    fn formula_until(&mut self, stop: &str) -> Result<Formula, ScenarioError> {
        let (text, start) = self.text_until(stop)?;
        if text.trim().is_empty() {
            return Err(self.error_at(start, "expected a formula"));
        }
        parse_formula(&text, self.universe()).map_err(|e| {
            let message = match &e {
                ParseError::Syntax { message, .. } => message.clone(),
                ParseError::UnknownAtom { name, .. } => format!("unknown atom `{name}`"),
                ParseError::UnknownWorld { name, .. } => format!("unknown world `{name}`"),
            };
            self.error_at(start + e.column() - 1, message)
        })
    }

    /// `[w0] < [w1, w2] < rest` or `pairs { w0 <= w1; w1 < w2; w2 == w3; }`.
    fn order(&mut self) -> Result<Preorder, ScenarioError> {
        let start = self.pos;
        let full = self.universe().all();
        if self.eat("pairs") {
            self.expect("{")?;
            let mut pairs = Vec::new();
            let mut strict = Vec::new();
            while !self.eat("}") {
                let at = self.pos;
                let a = self.world()?;
                let rel = if self.eat("<=") {
                    "<="
                } else if self.eat("==") {
                    "=="
                } else if self.eat("<") {
                    "<"
                } else {
                    let found = self.describe_next();
                    return Err(self.error(format!("expected `<=`, `<` or `==`, found {found}")));
                };
                let b = self.world()?;
                pairs.push((a, b));
                match rel {
                    "==" => pairs.push((b, a)),
                    "<" => strict.push((a, b, at)),
                    _ => {}
                }
                if !self.eat(";") && !self.looking_at("}") {
                    return Err(self.error("expected `;` or `}`"));
                }
            }
            let order = Preorder::closure(&full, &pairs).map_err(|e| self.error_at(start, e.to_string()))?;
            for (a, b, at) in strict {
                if order.leq(b, a) {
                    let u = self.universe();
                    return Err(self.error_at(
                        at,
                        format!(
                            "{} < {} is declared but the closure also puts {} <= {}",
                            u.name(a),
                            u.name(b),
                            u.name(b),
                            u.name(a)
                        ),
                    ));
                }
            }
            return Ok(order);
        }
        let mut layers: Vec<WorldSet> = Vec::new();
        loop {
            if self.eat("rest") {
                let mut seen = self.universe().empty();
                for l in &layers {
                    seen.union_with(l);
                }
                let rest = full.difference(&seen);
                if !rest.is_empty() {
                    layers.push(rest);
                }
                break;
            }
            self.expect("[")?;
            let mut layer = self.universe().empty();
            if !self.eat("]") {
                loop {
                    let at = self.pos;
                    let w = self.world()?;
                    if layer.contains(w) || layers.iter().any(|l| l.contains(w)) {
                        return Err(self.error_at(at, format!("{} appears twice", self.universe().name(w))));
                    }
                    layer.insert(w);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            if layer.is_empty() {
                return Err(self.error("empty layer"));
            }
            layers.push(layer);
            if !self.eat("<") {
                break;
            }
        }
        Preorder::from_layers(&full, &layers).map_err(|_| {
            let mut seen = self.universe().empty();
            for l in &layers {
                seen.union_with(l);
            }
            let missing = full.difference(&seen);
            self.error_at(
                start,
                format!(
                    "layers must cover every world; missing {}",
                    self.universe().format_set(&missing)
                ),
            )
        })
    }
}

fn describe_report(u: &Universe, report: &StateReport) -> String {
    let names = |ws: &[World]| ws.iter().map(|&w| u.name(w)).collect::<Vec<_>>().join(", ");
    let mut parts = Vec::new();
    if !report.missing_orders.is_empty() {
        parts.push(format!("no order for {}", names(&report.missing_orders)));
    }
    if !report.extra_orders.is_empty() {
        parts.push(format!("orders for unbelieved {}", names(&report.extra_orders)));
    }
    if !report.partial_domains.is_empty() {
        parts.push(format!("orders not over every world at {}", names(&report.partial_domains)));
    }
    for bad in &report.unfaithful {
        parts.push(format!(
            "the order at {} is not faithful ({} not strictly above it)",
            u.name(bad.world),
            names(&bad.witnesses)
        ));
    }
    parts.join("; ")
}

/// Positions kept for load-time validation messages.
struct Spans {
    states: BTreeMap<String, usize>,
    script: Vec<usize>,
    expectations: Vec<usize>,
}

fn parse_strategy(name: &str) -> Option<StrategyKind> {
    match name {
        "op1" => Some(StrategyKind::Op1),
        "scripted" => Some(StrategyKind::Scripted),
        "composite" => Some(StrategyKind::Composite),
        _ => None,
    }
}

fn strategy_name(kind: StrategyKind) -> &'static str {
    match kind {
        StrategyKind::Op1 => "op1",
        StrategyKind::Scripted => "scripted",
        StrategyKind::Composite => "composite",
        StrategyKind::Custom => "custom",
    }
}

/// Parses and validates a scenario.
///
/// Every state must be valid, each scripted step must reach the belief set
/// the source state's orders determine, and every name an expectation uses
/// must be declared.
pub fn parse_scenario(source: &str) -> Result<Scenario, ScenarioError> {
    let mut c = Cursor::new(source);
    let mut scenario: Option<Scenario> = None;
    let mut spans = Spans {
        states: BTreeMap::new(),
        script: Vec::new(),
        expectations: Vec::new(),
    };
    while !c.at_end() {
        let (keyword, at) = c.ident("a section keyword")?;
        if keyword != "atoms" && keyword != "worlds" && scenario.is_none() {
            return Err(c.error_at(at, "the universe (`atoms:` or `worlds:`) must be declared first"));
        }
        match keyword.as_str() {
            "atoms" | "worlds" => {
                if scenario.is_some() {
                    return Err(c.error_at(at, "the universe is declared twice"));
                }
                c.expect(":")?;
                let universe = if keyword == "atoms" {
                    let mut names = Vec::new();
                    loop {
                        names.push(c.ident("an atom name")?);
                        if !c.eat(",") {
                            break;
                        }
                    }
                    let plain: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
                    Universe::with_atoms(&plain).map_err(|e| c.error_at(names[0].1, e.to_string()))?
                } else {
                    c.expect("abstract")?;
                    let count_at = c.pos;
                    let count = c.number()?;
                    let first = if c.eat("from") { c.number()? } else { 0 };
                    Universe::abstract_worlds(count, first).map_err(|e| c.error_at(count_at, e.to_string()))?
                };
                c.expect(";")?;
                c.universe = Some(universe.clone());
                scenario = Some(Scenario::new(universe));
            }
            "state" => {
                let (id, id_at) = c.ident("a state name")?;
                if spans.states.contains_key(&id) {
                    return Err(c.error_at(id_at, format!("state `{id}` is declared twice")));
                }
                let state = parse_state(&mut c, &id, id_at)?;
                spans.states.insert(id, id_at);
                scenario.as_mut().expect("checked").states.push(state);
            }
            "singleton" => {
                let w_at = c.pos;
                let w = c.world()?;
                c.expect(":")?;
                let order = c.order()?;
                c.expect(";")?;
                let u = c.universe();
                if !order.is_faithful_to(w) {
                    return Err(c.error_at(w_at, format!("the singleton order at {} is not faithful", u.name(w))));
                }
                let sc = scenario.as_mut().expect("checked");
                if sc.singletons.insert(w, order).is_some() {
                    return Err(c.error_at(w_at, format!("singleton {} is declared twice", u.name(w))));
                }
            }
            "script" => {
                c.expect("{")?;
                while !c.eat("}") {
                    let (from, at) = c.ident("a state name")?;
                    c.expect("--")?;
                    let formula = c.formula_until("-->")?;
                    c.expect("-->")?;
                    let (to, _) = c.ident("a state name")?;
                    c.expect(";")?;
                    spans.script.push(at);
                    scenario
                        .as_mut()
                        .expect("checked")
                        .script
                        .push(ScriptStep { from, formula, to });
                }
            }
            "expect" => {
                c.expect("{")?;
                while !c.eat("}") {
                    c.skip_trivia();
                    spans.expectations.push(c.pos);
                    let e = parse_expectation(&mut c)?;
                    scenario.as_mut().expect("checked").expectations.push(e);
                }
            }
            other => return Err(c.error_at(at, format!("unknown section `{other}`"))),
        }
    }
    let scenario = scenario.ok_or_else(|| c.error("empty scenario: declare `atoms:` or `worlds:`"))?;
    check_references(&c, &scenario, &spans)?;
    Ok(scenario)
}

fn parse_state(c: &mut Cursor, id: &str, id_at: usize) -> Result<BeliefState, ScenarioError> {
    c.expect("{")?;
    let mut belief: Option<WorldSet> = None;
    let mut orders = BTreeMap::new();
    while !c.eat("}") {
        let (item, at) = c.ident("`belief` or `order`")?;
        match item.as_str() {
            "belief" => {
                if belief.is_some() {
                    return Err(c.error_at(at, "belief is declared twice"));
                }
                c.expect(":")?;
                let f = c.formula_until(";")?;
                belief = Some(models(&f, c.universe()).map_err(|e| c.error_at(at, e.to_string()))?);
            }
            "order" => {
                let w_at = c.pos;
                let w = c.world()?;
                c.expect(":")?;
                let order = c.order()?;
                if orders.insert(w, order).is_some() {
                    return Err(c.error_at(w_at, format!("two orders for {}", c.universe().name(w))));
                }
            }
            other => return Err(c.error_at(at, format!("unknown state item `{other}`"))),
        }
        c.expect(";")?;
    }
    let belief = belief.ok_or_else(|| c.error_at(id_at, format!("state `{id}` has no belief")))?;
    let state = BeliefState::new(id, belief, orders);
    let report = validate_state(&state);
    if !report.is_valid() {
        return Err(c.error_at(
            id_at,
            format!("state `{id}` is invalid: {}", describe_report(c.universe(), &report)),
        ));
    }
    Ok(state)
}

fn parse_path(c: &mut Cursor) -> Result<UpdatePath, ScenarioError> {
    let (start, _) = c.ident("a state name")?;
    let mut steps = Vec::new();
    while c.eat("--") {
        steps.push(c.formula_until("-->")?);
        c.expect("-->")?;
    }
    if steps.is_empty() {
        return Err(c.error("expected `--formula-->`"));
    }
    Ok(UpdatePath { start, steps })
}

fn parse_expectation(c: &mut Cursor) -> Result<Expectation, ScenarioError> {
    let save = c.pos;
    let mut strategy = None;
    if let Ok((word, at)) = c.ident("an expectation") {
        if c.looking_at(":") {
            strategy = Some(
                parse_strategy(&word)
                    .ok_or_else(|| c.error_at(at, format!("unknown strategy `{word}` (op1, scripted or composite)")))?,
            );
            c.expect(":")?;
        } else {
            c.pos = save;
        }
    }
    c.skip_trivia();
    let verdict = if c.eat("holds") {
        Some(ExpectedVerdict::Holds)
    } else if c.eat("violated") {
        Some(ExpectedVerdict::Violated)
    } else {
        None
    };
    let kind = if let Some(verdict) = verdict {
        c.skip_trivia();
        let at = c.pos;
        while c.chars.get(c.pos).is_some_and(|ch| !ch.is_whitespace()) {
            c.pos += 1;
        }
        let name: String = c.chars[at..c.pos].iter().collect();
        let postulate: Postulate = name.parse().map_err(|e| c.error_at(at, format!("{e}")))?;
        if postulate == Postulate::U4 {
            return Err(c.error_at(at, "U4 instances need a variant battery; use the check command"));
        }
        c.expect("at")?;
        let path_at = c.pos;
        let path = parse_path(c)?;
        let wanted = if postulate.takes_pairs() { 2 } else { 1 };
        if path.steps.len() != wanted {
            return Err(c.error_at(path_at, format!("{postulate} takes {wanted} formula(s)")));
        }
        ExpectKind::Postulate {
            postulate,
            verdict,
            path,
        }
    } else if c.eat("rodrigues") {
        let (initial, _) = c.ident("a state name")?;
        c.expect("via")?;
        let (updated, _) = c.ident("a state name")?;
        c.expect("--")?;
        let phi = c.formula_until("-->")?;
        c.expect("-->")?;
        c.expect("--")?;
        let varphi = c.formula_until("-->")?;
        c.expect("-->")?;
        c.expect("==")?;
        let expected = c.world_set()?;
        ExpectKind::Rodrigues {
            initial,
            updated,
            phi,
            varphi,
            expected,
        }
    } else {
        let path = parse_path(c)?;
        c.expect("==")?;
        let expected = c.world_set()?;
        ExpectKind::Belief { path, expected }
    };
    c.expect(";")?;
    Ok(Expectation { strategy, kind })
}

fn check_references(c: &Cursor, sc: &Scenario, spans: &Spans) -> Result<(), ScenarioError> {
    let u = &sc.universe;
    let known = |id: &str, at: usize| {
        if sc.state(id).is_some() {
            Ok(())
        } else {
            Err(c.error_at(at, format!("unknown state `{id}`")))
        }
    };
    let mut keys: BTreeMap<(String, WorldSet), usize> = BTreeMap::new();
    for (step, &at) in sc.script.iter().zip(&spans.script) {
        known(&step.from, at)?;
        known(&step.to, at)?;
        let from = sc.state(&step.from).expect("checked");
        let to = sc.state(&step.to).expect("checked");
        let phi = models(&step.formula, u).map_err(|e| c.error_at(at, e.to_string()))?;
        if keys.insert((step.from.clone(), phi.clone()), at).is_some() {
            return Err(c.error_at(
                at,
                format!("`{}` already has a scripted step for {}", step.from, u.format_set(&phi)),
            ));
        }
        let expected = update_belief_set(from, &phi);
        if &expected != to.belief() {
            return Err(c.error_at(
                at,
                format!(
                    "`{}` believes {} but updating `{}` gives {}",
                    step.to,
                    u.format_set(to.belief()),
                    step.from,
                    u.format_set(&expected)
                ),
            ));
        }
    }
    for (e, &at) in sc.expectations.iter().zip(&spans.expectations) {
        match &e.kind {
            ExpectKind::Belief { path, .. } | ExpectKind::Postulate { path, .. } => known(&path.start, at)?,
            ExpectKind::Rodrigues { initial, updated, .. } => {
                known(initial, at)?;
                known(updated, at)?;
            }
        }
    }
    Ok(())
}

fn print_path(path: &UpdatePath) -> String {
    let mut out = path.start.clone();
    for f in &path.steps {
        out.push_str(&format!(" --{f}-->"));
    }
    out
}

/// Canonical text of one expectation line, without the trailing `;`.
pub fn print_expectation(universe: &Universe, e: &Expectation) -> String {
    let prefix = e.strategy.map(|k| format!("{}: ", strategy_name(k))).unwrap_or_default();
    let body = match &e.kind {
        ExpectKind::Belief { path, expected } => format!("{} == {}", print_path(path), universe.format_set(expected)),
        ExpectKind::Postulate {
            postulate,
            verdict,
            path,
        } => {
            let word = match verdict {
                ExpectedVerdict::Holds => "holds",
                ExpectedVerdict::Violated => "violated",
            };
            format!("{word} {postulate} at {}", print_path(path))
        }
        ExpectKind::Rodrigues {
            initial,
            updated,
            phi,
            varphi,
            expected,
        } => format!(
            "rodrigues {initial} via {updated} --{phi}--> --{varphi}--> == {}",
            universe.format_set(expected)
        ),
    };
    format!("{prefix}{body}")
}

/// Canonical text of a scenario. Parsing the output gives back an equal
/// scenario; belief sets are written as world-set literals.
pub fn print_scenario(sc: &Scenario) -> String {
    let u = &sc.universe;
    let mut out = String::new();
    match (u.alphabet(), u.abstract_first()) {
        (Some(a), _) => out.push_str(&format!("atoms: {};\n", a.atoms().join(", "))),
        (None, first) => out.push_str(&format!("worlds: abstract {} from {};\n", u.size(), first.unwrap_or(0))),
    }
    for s in &sc.states {
        out.push_str(&format!("\nstate {} {{\n", s.id()));
        out.push_str(&format!("  belief: {};\n", u.format_set(s.belief())));
        for (&w, order) in s.orders() {
            out.push_str(&format!("  order {}: {};\n", u.name(w), order.render(u)));
        }
        out.push_str("}\n");
    }
    if !sc.singletons.is_empty() {
        out.push('\n');
        for (&w, order) in &sc.singletons {
            out.push_str(&format!("singleton {}: {};\n", u.name(w), order.render(u)));
        }
    }
    if !sc.script.is_empty() {
        out.push_str("\nscript {\n");
        for step in &sc.script {
            out.push_str(&format!("  {} --{}--> {};\n", step.from, step.formula, step.to));
        }
        out.push_str("}\n");
    }
    if !sc.expectations.is_empty() {
        out.push_str("\nexpect {\n");
        for e in &sc.expectations {
            out.push_str(&format!("  {};\n", print_expectation(u, e)));
        }
        out.push_str("}\n");
    }
    out
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_scenario(self))
    }
}

/// A state with its orders rendered against the universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateView {
    pub id: String,
    pub belief: Vec<String>,
    /// `(world, order)` pairs, worlds ascending.
    pub orders: Vec<(String, String)>,
}

impl StateView {
    pub fn new(universe: &Universe, s: &BeliefState) -> Self {
        StateView {
            id: s.id().to_string(),
            belief: universe.names(s.belief()),
            orders: s
                .orders()
                .iter()
                .map(|(&w, o)| (universe.name(w), o.render(universe)))
                .collect(),
        }
    }
}

/// What evaluating an expectation produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Belief {
        /// States the path passed through, start first.
        trail: Vec<StateView>,
        /// Belief set after each step.
        beliefs: Vec<WorldSet>,
        expected: WorldSet,
        actual: WorldSet,
    },
    Postulate {
        expected: String,
        /// `holds`, `vacuous` or `violated`.
        found: String,
        outcome: InstanceOutcome,
    },
    Rodrigues {
        expected: WorldSet,
        actual: WorldSet,
        report: RodriguesReport,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationResult {
    pub text: String,
    pub strategy: String,
    pub passed: bool,
    pub outcome: Outcome,
}

/// The strategies a scenario offers, by kind.
pub struct Strategies {
    scripted: Scripted,
    composite: Composite,
}

impl Strategies {
    pub fn new(sc: &Scenario) -> Result<Self, UpdateError> {
        Ok(Strategies {
            scripted: Scripted::from_scenario(sc)?,
            composite: Composite::from_scenario(sc)?,
        })
    }

    pub fn get(&self, kind: StrategyKind) -> &dyn UpdateStrategy {
        match kind {
            StrategyKind::Op1 => &Op1,
            StrategyKind::Scripted => &self.scripted,
            StrategyKind::Composite | StrategyKind::Custom => &self.composite,
        }
    }
}

fn start_state<'a>(sc: &'a Scenario, id: &str) -> Result<&'a BeliefState, EvalError> {
    sc.state(id).ok_or_else(|| EvalError::UnknownState(id.to_string()))
}

/// Evaluates every expectation in order.
pub fn evaluate_expectations(sc: &Scenario) -> Result<Vec<ExpectationResult>, EvalError> {
    let strategies = Strategies::new(sc)?;
    sc.expectations
        .iter()
        .map(|e| evaluate_expectation(sc, &strategies, e))
        .collect()
}

pub fn evaluate_expectation(
    sc: &Scenario,
    strategies: &Strategies,
    e: &Expectation,
) -> Result<ExpectationResult, EvalError> {
    let u = &sc.universe;
    let strategy = strategies.get(e.strategy.unwrap_or(StrategyKind::Composite));
    let (passed, outcome) = match &e.kind {
        ExpectKind::Belief { path, expected } => {
            let mut state = start_state(sc, &path.start)?.clone();
            let mut trail = vec![StateView::new(u, &state)];
            let mut beliefs = Vec::new();
            let last = path.steps.len() - 1;
            let mut actual = state.belief().clone();
            for (k, f) in path.steps.iter().enumerate() {
                let phi = models(f, u)?;
                if k == last {
                    actual = strategy.update_belief(&state, &phi)?;
                } else {
                    state = apply_strategy(strategy, &state, &phi)?;
                    trail.push(StateView::new(u, &state));
                    actual = state.belief().clone();
                }
                beliefs.push(actual.clone());
            }
            (
                &actual == expected,
                Outcome::Belief {
                    trail,
                    beliefs,
                    expected: expected.clone(),
                    actual,
                },
            )
        }
        ExpectKind::Postulate {
            postulate,
            verdict,
            path,
        } => {
            let s = start_state(sc, &path.start)?;
            let phi = models(&path.steps[0], u)?;
            let inst = match path.steps.get(1) {
                Some(g) => Instance::pair(phi, models(g, u)?),
                None => Instance::unary(phi),
            };
            let checker = Checker::new(strategy, u).with_singletons(sc.declared_singletons());
            let outcome = checker.check_instance(s, *postulate, &inst)?;
            let found = if !outcome.holds() {
                "violated"
            } else if outcome.applicable {
                "holds"
            } else {
                "vacuous"
            };
            let passed = match verdict {
                ExpectedVerdict::Holds => outcome.holds(),
                ExpectedVerdict::Violated => !outcome.holds(),
            };
            let expected = match verdict {
                ExpectedVerdict::Holds => "holds",
                ExpectedVerdict::Violated => "violated",
            };
            (
                passed,
                Outcome::Postulate {
                    expected: expected.to_string(),
                    found: found.to_string(),
                    outcome,
                },
            )
        }
        ExpectKind::Rodrigues {
            initial,
            updated,
            phi,
            varphi,
            expected,
        } => {
            let init = start_state(sc, initial)?;
            let upd = start_state(sc, updated)?;
            let phi = models(phi, u)?;
            let varphi = models(varphi, u)?;
            let actual = crate::update::rodrigues_update(init.belief(), upd.orders(), &varphi)?;
            let report = check_rodrigues_c1(u, init.belief(), init.orders(), upd.orders(), &phi)?;
            (
                &actual == expected,
                Outcome::Rodrigues {
                    expected: expected.clone(),
                    actual,
                    report,
                },
            )
        }
    };
    Ok(ExpectationResult {
        text: print_expectation(u, e),
        strategy: strategy.name().to_string(),
        passed,
        outcome,
    })
}
