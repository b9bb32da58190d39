//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use iterupd::catalog::{replay_example, ExampleReplay};
use iterupd::conditions::equivalence_harness;
use iterupd::logic::{form_of, WorldSet};
use iterupd::postulates::{classes, CheckOptions, Checker, Coverage, Postulate};
use iterupd::scenario::Outcome;
use iterupd::search::{
    check_relations, oracle_update, random_scenario, replay_impossibility, Family, RandomParams, Variant, IMPLICATIONS,
};
use iterupd::update::{semantic_update_belief, Op1, Scripted};

const REPLAY_BOUND: Duration = Duration::from_secs(1);
const KM_BOUND: Duration = Duration::from_secs(60);
const HARNESS_BOUND: Duration = Duration::from_secs(120);
const IMPOSSIBILITY_BOUND: Duration = Duration::from_secs(1);
const ORACLE_BOUND: Duration = Duration::from_secs(10);

const KM_STATES: u64 = 100;
const HARNESS_SCENARIOS: u64 = 50;
const OPERATOR_SCENARIOS: u64 = 50;
const LATTICE_SCENARIOS: u64 = 50;
const ORACLE_INSTANCES: u64 = 10_000;
const IMPOSSIBILITY_CANDIDATES: u64 = 29;

type Verdict = Result<String, String>;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iterupd"))
}

fn scenario_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/scenarios").join(name)
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, bound: Duration, detail: String) -> Verdict {
    let took = start.elapsed();
    ensure(took < bound, || format!("took {took:.2?}, bound {bound:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn outcome<'a>(r: &'a ExampleReplay, text: &str) -> Result<&'a Outcome, String> {
    r.results
        .iter()
        .find(|x| x.text == text)
        .map(|x| &x.outcome)
        .ok_or_else(|| format!("example {}: no line `{text}`", r.example))
}

fn belief(r: &ExampleReplay, text: &str, want: &[&str], size: u32) -> Result<(), String> {
    match outcome(r, text)? {
        Outcome::Belief { actual, .. } => {
            let want_set = WorldSet::from_indices(
                size,
                &want.iter().map(|w| w[1..].parse().unwrap()).collect::<Vec<u32>>(),
            );
            ensure(actual == &want_set, || {
                format!("example {}: `{text}` gave {actual:?}, wanted {want:?}", r.example)
            })
        }
        other => Err(format!("example {}: `{text}` is not a belief line: {other:?}", r.example)),
    }
}

fn violated(r: &ExampleReplay, text: &str) -> Result<(), String> {
    match outcome(r, text)? {
        Outcome::Postulate { found, .. } => ensure(found == "violated", || {
            format!("example {}: `{text}` found {found}", r.example)
        }),
        other => Err(format!("example {}: `{text}` is not a postulate line: {other:?}", r.example)),
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let replays: Vec<ExampleReplay> = (1..=9).map(|n| replay_example(n).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let ex = |n: usize| &replays[n - 1];
    for r in &replays {
        ensure(r.all_match(), || format!("example {} has {} mismatches", r.example, r.mismatches))?;
    }

    belief(ex(2), "S --b | n--> == {w2, w4}", &["w2", "w4"], 8)?;
    belief(ex(2), "S --b | n--> --n--> == {w2, w3}", &["w2", "w3"], 8)?;
    belief(ex(2), "S --n--> == {w2}", &["w2"], 8)?;
    violated(ex(2), "violated C1 at S --b | n--> --n-->")?;

    belief(ex(3), "S --(b <-> !n) & !t--> --b <-> n--> == {w0, w1, w6, w7}", &["w0", "w1", "w6", "w7"], 8)?;
    belief(ex(3), "S --b <-> n--> == {w0}", &["w0"], 8)?;
    violated(ex(3), "violated C2 at S --(b <-> !n) & !t--> --b <-> n-->")?;

    belief(ex(4), "S --f--> --a--> == {w2, w3}", &["w2", "w3"], 4)?;
    violated(ex(4), "violated C3 at S --f--> --a-->")?;
    match outcome(ex(4), "violated C3 at S --f--> --a-->")? {
        Outcome::Postulate { outcome, .. } => {
            let sets = outcome.sets.as_ref().ok_or("example 4: no belief sets")?;
            // [f] = {w1, w3}
            let f = WorldSet::from_indices(4, &[1, 3]);
            ensure(outcome.applicable && sets.direct.is_subset(&f), || {
                format!("example 4: Bel(S▽a) = {:?} does not entail f", sets.direct)
            })?;
        }
        _ => return Err("example 4: wrong outcome kind".into()),
    }

    belief(ex(5), "S --b--> --n--> == {w2}", &["w2"], 8)?;
    violated(ex(5), "violated C4 at S --b--> --n-->")?;

    match outcome(ex(6), "rodrigues S via Sphi --b | n--> --n--> == {w2}")? {
        Outcome::Rodrigues { actual, report, .. } => {
            ensure(actual == &WorldSet::from_indices(8, &[2]), || format!("example 6 gave {actual:?}"))?;
            ensure(report.agreement && report.pairs_compared == 36, || {
                format!("example 6: agreement {} over {} pairs", report.agreement, report.pairs_compared)
            })?;
        }
        _ => return Err("example 6: wrong outcome kind".into()),
    }

    belief(ex(7), "op1: S --b--> == {w4}", &["w4"], 8)?;
    belief(ex(7), "op1: S --b--> --n--> == {w6, w7}", &["w6", "w7"], 8)?;
    match outcome(ex(7), "op1: S --b--> --n--> == {w6, w7}")? {
        Outcome::Belief { trail, .. } => ensure(
            trail[1].orders == vec![("w4".to_string(), "[w4] < [w5, w6, w7] < [w0, w1, w2, w3]".to_string())],
            || format!("example 7 order: {:?}", trail[1].orders),
        )?,
        _ => return Err("example 7: wrong outcome kind".into()),
    }
    let elapsed = within(start, REPLAY_BOUND, "9 examples replayed".into())?;

    let out = bin().args(["replay", "--example", "2"]).output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(1), || format!("replay --example 2 exited {:?}", out.status.code()))?;
    ensure(
        text.contains("-> {w2, w3}") && text.contains("S {w0} -> {w2}") && text.contains("found violated"),
        || format!("replay --example 2 printed:\n{text}"),
    )?;
    Ok(elapsed)
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut instances = 0;
    for seed in 0..KM_STATES {
        let sc = random_scenario(RandomParams::varied(seed)).map_err(|e| e.to_string())?;
        let s = &sc.states[0];
        let reports = Checker::new(&Op1, &sc.universe).check_km(s).map_err(|e| e.to_string())?;
        for r in reports {
            instances += r.instances;
            ensure(r.holds(), || format!("seed {seed}: {} violated {} times", r.postulate, r.violation_count))?;
        }
    }
    within(start, KM_BOUND, format!("U1-U8 hold on {KM_STATES} states, {instances} instances"))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut instances = 0;
    for seed in 0..HARNESS_SCENARIOS {
        let sc = random_scenario(RandomParams::varied(seed)).map_err(|e| e.to_string())?;
        let scripted = Scripted::from_scenario(&sc).map_err(|e| e.to_string())?;
        let runs: [(&dyn iterupd::update::UpdateStrategy, Coverage); 2] =
            [(&Op1, Coverage::Total), (&scripted, Coverage::ScriptedOnly)];
        for (strategy, coverage) in runs {
            let report = equivalence_harness(strategy, &sc.universe, &sc.states, &Postulate::ITERATED, coverage)
                .map_err(|e| e.to_string())?;
            ensure(report.pairs.len() == 7, || "harness did not cover seven pairs".into())?;
            ensure(report.disagreement_count() == 0, || {
                format!("seed {seed}, {}: {} disagreements", report.strategy, report.disagreement_count())
            })?;
            instances += report.instances;
        }
    }
    within(
        start,
        HARNESS_BOUND,
        format!("7 pairs agree on {HARNESS_SCENARIOS} scenarios x 2 strategies, {instances} instances"),
    )
}

fn criterion_4() -> Verdict {
    let mut c1_violations = 0;
    for seed in 0..OPERATOR_SCENARIOS {
        let sc = random_scenario(RandomParams::varied(seed)).map_err(|e| e.to_string())?;
        let checker = Checker::new(&Op1, &sc.universe).with_options(CheckOptions::default());
        for s in &sc.states {
            for p in [Postulate::C3, Postulate::C4, Postulate::Lex, Postulate::Ind] {
                let r = checker.check(s, p).map_err(|e| e.to_string())?;
                ensure(r.holds(), || format!("seed {seed}, state {}: {p} violated", s.id()))?;
            }
            c1_violations += checker.check(s, Postulate::C1).map_err(|e| e.to_string())?.violation_count;
        }
    }
    ensure(c1_violations > 0, || "op1 never violated C1: the checker is insensitive".into())?;
    Ok(format!(
        "op1 satisfies C3, C4, Lex, Ind on {OPERATOR_SCENARIOS} scenarios; C1 control found {c1_violations} violations"
    ))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    for variant in [Variant::C1, Variant::C2] {
        let out = replay_impossibility(variant, &[]);
        ensure(out.candidates == IMPOSSIBILITY_CANDIDATES && out.survivors.is_empty(), || {
            format!("{variant}: {} survivors / {} candidates", out.survivors.len(), out.candidates)
        })?;
        let ablated = replay_impossibility(variant, &[Family::N2]);
        ensure(!ablated.survivors.is_empty(), || format!("{variant} without N2: no survivor"))?;
    }
    let elapsed = within(start, IMPOSSIBILITY_BOUND, "c1 and c2: 0 survivors / 29 candidates".into())?;
    for variant in ["c1", "c2"] {
        let out = bin().args(["replay", "--theorem6", variant]).output().map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.code() == Some(0) && text.contains("0 survivors / 29 candidates"), || {
            format!("replay --theorem6 {variant} exited {:?}:\n{text}", out.status.code())
        })?;
        let out = bin()
            .args(["replay", "--theorem6", variant, "--drop", "N2"])
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        ensure(text.contains("1 survivors / 29 candidates"), || format!("drop N2 printed:\n{text}"))?;
    }
    Ok(format!("{elapsed}; drop N2 leaves a survivor"))
}

fn criterion_6() -> Verdict {
    let seeds: Vec<u64> = (0..LATTICE_SCENARIOS).collect();
    let report = check_relations(&seeds).map_err(|e| e.to_string())?;
    ensure(report.violation_count() == 0, || format!("{} violations", report.violation_count()))?;
    let mut counters = Vec::new();
    for imp in IMPLICATIONS {
        let t = report.tally("op1", imp).ok_or("missing op1 tally")?;
        ensure(t.non_vacuous > 0, || format!("op1 {imp}: no non-vacuous instance"))?;
        counters.push(format!("{imp}: {}", t.non_vacuous));
    }
    Ok(format!("0 violations; op1 non-vacuous {}", counters.join(", ")))
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut seed = 0;
    let mut checked = 0;
    while checked < ORACLE_INSTANCES {
        let sc = random_scenario(RandomParams::varied(seed)).map_err(|e| e.to_string())?;
        // 25 formula classes per scenario state, spread over all 256
        for s in &sc.states {
            for phi in classes(&sc.universe).skip((seed % 10) as usize).step_by(10).take(25) {
                let f = form_of(&phi, &sc.universe);
                let a = oracle_update(&sc.universe, s, &f).map_err(|e| e.to_string())?;
                let b = semantic_update_belief(&sc.universe, s, &f).map_err(|e| e.to_string())?;
                if a != b {
                    mismatches += 1;
                }
                checked += 1;
            }
        }
        seed += 1;
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches in {checked} instances"))?;
    within(start, ORACLE_BOUND, format!("{checked} instances, 0 mismatches"))
}

fn criterion_8() -> Verdict {
    let runs: Vec<Vec<String>> = vec![
        names(&["--json", "replay", "--example", "2"]),
        names(&["--json", "replay", "--theorem6", "c2", "--drop", "N1"]),
        names(&["--json", "random", "--seed", "11"]),
        vec!["--json".into(), "harness".into(), scenario_file("ex3.scn").display().to_string()],
        vec![
            "--json".into(),
            "check".into(),
            scenario_file("ex4.scn").display().to_string(),
            "--postulate".into(),
            "C3".into(),
        ],
    ];
    for args in &runs {
        let first = bin().args(args).output().map_err(|e| e.to_string())?;
        let second = bin().args(args).output().map_err(|e| e.to_string())?;
        ensure(!first.stdout.is_empty() && first.stdout == second.stdout, || {
            format!("`{}` differs between runs", args.join(" "))
        })?;
        serde_json::from_slice::<serde_json::Value>(&first.stdout)
            .map_err(|e| format!("`{}` is not JSON: {e}", args.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("example replays", criterion_1),
        ("KM postulates on random states", criterion_2),
        ("postulate/condition equivalence", criterion_3),
        ("hierarchy operator postulates", criterion_4),
        ("impossibility replay", criterion_5),
        ("implication lattice", criterion_6),
        ("differential oracle", criterion_7),
        ("deterministic JSON", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
