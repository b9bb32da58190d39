//! Report values. Each command builds one; JSON and text are both produced
//! from it.

use std::fmt::Write;

use serde::Serialize;

use iterupd::catalog::ExampleReplay;
use iterupd::conditions::{CrReport, Direction, HarnessReport};
use iterupd::logic::{Universe, WorldSet};
use iterupd::postulates::{CheckReport, Coverage, Requirement, Violation};
use iterupd::scenario::{ExpectationResult, Outcome, StateView};
use iterupd::search::SearchOutcome;

/// Bumped only for incompatible changes; fields are only ever added.
pub const SCHEMA_VERSION: u32 = 1;

pub trait Render {
    fn value(&self) -> serde_json::Value;
    fn human(&self) -> String;
    fn exit_code(&self) -> u8 {
        0
    }
}

pub fn to_json(command: &str, view: &dyn Render) -> String {
    let envelope = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "report": view.value(),
    });
    serde_json::to_string_pretty(&envelope).expect("reports serialize")
}

fn value_of<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn coverage(c: Coverage) -> &'static str {
    match c {
        Coverage::Total => "total",
        Coverage::ScriptedOnly => "scripted-only",
    }
}

fn requirement(r: Requirement) -> &'static str {
    match r {
        Requirement::Equal => "equal to",
        Requirement::SubsetOf => "inside",
        Requirement::Meets => "meeting",
    }
}

fn write_state(out: &mut String, indent: &str, s: &StateView) {
    let _ = writeln!(out, "{indent}{} believes {}", s.id, set(&s.belief));
    for (w, order) in &s.orders {
        let _ = writeln!(out, "{indent}  order {w}: {order}");
    }
}

fn write_violation(out: &mut String, u: &Universe, v: &Violation) {
    let _ = writeln!(
        out,
        "  - {}: wanted {} {}, got {} [{}]",
        v.formulas.join(" ; "),
        requirement(v.requirement),
        u.format_set(&v.expected),
        u.format_set(&v.actual),
        v.states.join(" -> ")
    );
}

#[derive(Serialize)]
pub struct EvalView {
    pub formula: String,
    pub models: Vec<String>,
}

impl Render for EvalView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        format!("[{}] = {}\n", self.formula, set(&self.models))
    }
}

#[derive(Serialize)]
pub struct UpdateView {
    pub strategy: String,
    pub from: String,
    pub formula: String,
    pub models: Vec<String>,
    pub next: StateView,
}

impl Render for UpdateView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        let mut out = format!(
            "{} updated by {} {} with {}:\n",
            self.from,
            self.formula,
            set(&self.models),
            self.strategy
        );
        write_state(&mut out, "  ", &self.next);
        out
    }
}

#[derive(Serialize)]
pub struct IterateView {
    pub strategy: String,
    pub from: String,
    pub first: String,
    pub second: String,
    pub after_first: StateView,
    pub iterated: Vec<String>,
    pub direct: Vec<String>,
}

impl Render for IterateView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        let mut out = format!("{} updated by {} with {}:\n", self.from, self.first, self.strategy);
        write_state(&mut out, "  ", &self.after_first);
        let _ = writeln!(out, "then by {}: {}", self.second, set(&self.iterated));
        let _ = writeln!(out, "{} updated by {} directly: {}", self.from, self.second, set(&self.direct));
        out
    }
}

#[derive(Serialize)]
pub struct CheckView {
    #[serde(skip)]
    pub universe: Universe,
    pub reports: Vec<CheckReport>,
}

impl Render for CheckView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let _ = writeln!(
                out,
                "{} at {} [{}, {}]: {} ({} instances, {} applicable, {} skipped)",
                r.postulate,
                r.state,
                r.strategy,
                coverage(r.coverage),
                r.verdict,
                r.instances,
                r.applicable,
                r.skipped
            );
            if r.violation_count > 0 {
                let _ = writeln!(out, "  {} violations, first {}:", r.violation_count, r.violations.len());
                for v in &r.violations {
                    write_violation(&mut out, &self.universe, v);
                }
            }
        }
        out
    }

    fn exit_code(&self) -> u8 {
        u8::from(self.reports.iter().any(|r| !r.holds()))
    }
}

#[derive(Serialize)]
pub struct CrView {
    #[serde(skip)]
    pub universe: Universe,
    pub report: CrReport,
}

impl Render for CrView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        let r = &self.report;
        let u = &self.universe;
        let mut out = format!(
            "{} from {} to {} by {}: {} ({} sets, {} meet the guard, {} vacuous)\n",
            r.condition,
            r.state,
            r.next_state,
            u.format_set(&r.phi),
            if r.holds { "holds" } else { "fails" },
            r.candidates,
            r.guarded,
            r.vacuous
        );
        if r.failure_count > 0 {
            let _ = writeln!(out, "  {} failing sets, first {}:", r.failure_count, r.failures.len());
        }
        for f in &r.failures {
            let direction = match f.direction {
                Direction::Forth => "forth",
                Direction::Back => "back",
                Direction::Consequent => "consequent",
            };
            let _ = write!(out, "  - N = {}: {direction}", u.format_set(&f.n));
            if let Some(w) = f.world {
                let _ = write!(out, ", {}", u.name(w));
            }
            if let Some(at) = f.at {
                let _ = write!(out, " under the order at {}", u.name(at));
            }
            out.push('\n');
        }
        out
    }

    fn exit_code(&self) -> u8 {
        u8::from(!self.report.holds)
    }
}

#[derive(Serialize)]
pub struct HarnessView {
    #[serde(skip)]
    pub universe: Universe,
    pub report: HarnessReport,
}

impl Render for HarnessView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        let r = &self.report;
        let u = &self.universe;
        let mut out = format!(
            "{} [{}]: {} instances over {} ({} skipped)\n",
            r.strategy,
            coverage(r.coverage),
            r.instances,
            r.states.join(", "),
            r.skipped
        );
        for p in &r.pairs {
            let _ = writeln!(
                out,
                "  {} ~ {}: {} both hold, {} both violated, {} disagree",
                p.postulate,
                p.condition,
                p.both_hold,
                p.both_violated,
                p.disagreements.len()
            );
            for d in &p.disagreements {
                let _ = writeln!(
                    out,
                    "    at {} by {}: postulate {}, condition {}",
                    d.state,
                    u.format_set(&d.phi),
                    if d.postulate_holds { "holds" } else { "violated" },
                    if d.condition_holds { "holds" } else { "fails" }
                );
            }
        }
        let _ = writeln!(out, "{} disagreements", r.disagreement_count());
        out
    }

    fn exit_code(&self) -> u8 {
        u8::from(self.report.disagreement_count() > 0)
    }
}

fn names(u: Option<&Universe>, s: &WorldSet) -> String {
    match u {
        Some(u) => u.format_set(s),
        None => format!("{s:?}"),
    }
}

fn write_results(out: &mut String, results: &[ExpectationResult], u: Option<&Universe>) {
    for r in results {
        let mark = if r.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "[{mark}] {}", r.text);
        match &r.outcome {
            Outcome::Belief { trail, actual, .. } => {
                let path: Vec<String> = trail.iter().map(|s| format!("{} {}", s.id, set(&s.belief))).collect();
                let _ = writeln!(out, "       {} -> {}", path.join(" -> "), names(u, actual));
                for s in trail.iter().skip(1) {
                    for (w, order) in &s.orders {
                        let _ = writeln!(out, "       order {w} in {}: {order}", s.id);
                    }
                }
            }
            Outcome::Postulate { found, outcome, .. } => {
                let _ = write!(out, "       found {found}");
                if let Some(t) = &outcome.sets {
                    let _ = write!(
                        out,
                        ": first step {}, second step {}, direct {}",
                        names(u, &t.after_phi),
                        names(u, &t.iterated),
                        names(u, &t.direct)
                    );
                } else if let Some(v) = &outcome.violation {
                    let _ = write!(
                        out,
                        ": wanted {} {}, got {}",
                        requirement(v.requirement),
                        names(u, &v.expected),
                        names(u, &v.actual)
                    );
                }
                out.push('\n');
            }
            Outcome::Rodrigues { actual, report, .. } => {
                let _ = writeln!(
                    out,
                    "       got {}; orders agree on the new information: {} ({} pairs); {} of {} instances",
                    names(u, actual),
                    if report.agreement { "yes" } else { "no" },
                    report.pairs_compared,
                    report.verdict,
                    report.instances
                );
            }
        }
    }
}

#[derive(Serialize)]
pub struct ExpectView {
    #[serde(skip)]
    pub universe: Option<Universe>,
    pub results: Vec<ExpectationResult>,
}

impl Render for ExpectView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        let mut out = String::new();
        write_results(&mut out, &self.results, self.universe.as_ref());
        let failed = self.results.iter().filter(|r| !r.passed).count();
        let _ = writeln!(out, "{} expectations, {failed} mismatches", self.results.len());
        out
    }

    fn exit_code(&self) -> u8 {
        u8::from(self.results.iter().any(|r| !r.passed))
    }
}

pub struct ReplayView {
    pub universe: Universe,
    pub replay: ExampleReplay,
}

impl Render for ReplayView {
    fn value(&self) -> serde_json::Value {
        value_of(&self.replay)
    }

    fn human(&self) -> String {
        let r = &self.replay;
        let mut out = format!("example {}: {}\n", r.example, r.title);
        let rows: Vec<String> = r
            .worlds
            .iter()
            .map(|w| format!("{} = {}", w.world, set(&w.true_atoms)))
            .collect();
        let _ = writeln!(out, "worlds (true atoms): {}", rows.join(", "));
        write_results(&mut out, &r.results, Some(&self.universe));
        let _ = writeln!(
            out,
            "{} expectations, {} mismatches, {} postulate violations found",
            r.results.len(),
            r.mismatches,
            r.violations_found
        );
        out
    }

    fn exit_code(&self) -> u8 {
        u8::from(!self.replay.all_match() || self.replay.violations_found > 0)
    }
}

pub struct ImpossibilityView(pub SearchOutcome);

impl Render for ImpossibilityView {
    fn value(&self) -> serde_json::Value {
        value_of(&self.0)
    }

    fn human(&self) -> String {
        let o = &self.0;
        let dropped = if o.dropped.is_empty() {
            "none".to_string()
        } else {
            o.dropped.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        };
        let mut out = format!("impossibility replay, variant {}, families dropped: {dropped}\n", o.variant);
        let _ = writeln!(
            out,
            "belief {}; new information {}; updated belief {}",
            set(&o.belief),
            set(&o.phi),
            set(&o.after_phi)
        );
        for c in &o.constraints {
            let _ = writeln!(out, "  - {c}");
        }
        let _ = writeln!(
            out,
            "{} relations examined, {} candidate preorders",
            o.relations_examined, o.candidates
        );
        for s in &o.survivors {
            let pairs: Vec<String> = s.pairs.iter().map(|(a, b)| format!("{a} <= {b}")).collect();
            let _ = writeln!(
                out,
                "  survivor: {} (passes the condition when embedded: {})",
                if pairs.is_empty() { "only reflexive pairs".to_string() } else { pairs.join(", ") },
                if s.replays { "yes" } else { "no" }
            );
        }
        let _ = writeln!(out, "{} survivors / {} candidates", o.survivors.len(), o.candidates);
        out
    }

    fn exit_code(&self) -> u8 {
        u8::from(!self.0.survivors.is_empty())
    }
}

#[derive(Serialize)]
pub struct RandomView {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub scenario: String,
}

impl Render for RandomView {
    fn value(&self) -> serde_json::Value {
        value_of(self)
    }

    fn human(&self) -> String {
        self.scenario.clone()
    }
}
