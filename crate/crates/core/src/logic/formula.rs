use std::fmt;

use super::universe::Universe;
use super::world::{World, WorldSet};
use super::LogicError;

/// Abstract syntax of a propositional sentence.
///
/// `Worlds` is a world-set literal such as `{w1, w3}`: it holds exactly in
/// the listed worlds. It is the only way to name propositions over abstract
/// universes, which have no atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    Atom(String),
    Worlds(Vec<String>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `Top` for an empty list.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bot` for an empty list.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// Truth value in a single world. Evaluates the tree node by node and is
    /// kept deliberately separate from the set-at-a-time [`models`].
    pub fn evaluate(&self, universe: &Universe, w: World) -> Result<bool, LogicError> {
        Ok(match self {
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Atom(name) => universe.atom_value(w, resolve_atom(universe, name)?),
            Formula::Worlds(names) => {
                let mut hit = false;
                for name in names {
                    hit |= resolve_world(universe, name)? == w;
                }
                hit
            }
            Formula::Not(f) => !f.evaluate(universe, w)?,
            Formula::And(a, b) => a.evaluate(universe, w)? & b.evaluate(universe, w)?,
            Formula::Or(a, b) => a.evaluate(universe, w)? | b.evaluate(universe, w)?,
            Formula::Implies(a, b) => !a.evaluate(universe, w)? | b.evaluate(universe, w)?,
            Formula::Iff(a, b) => a.evaluate(universe, w)? == b.evaluate(universe, w)?,
        })
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Formula::Top | Formula::Bot | Formula::Worlds(_) => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            _ => 6,
        }
    }
}

fn resolve_atom(universe: &Universe, name: &str) -> Result<usize, LogicError> {
    universe
        .alphabet()
        .and_then(|a| a.position(name))
        .ok_or_else(|| LogicError::UnknownAtom(name.to_string()))
}

fn resolve_world(universe: &Universe, name: &str) -> Result<World, LogicError> {
    universe
        .world_named(name)
        .ok_or_else(|| LogicError::UnknownWorld(name.to_string()))
}

/// The denotation `[f]`: every world of the universe in which `f` holds.
///
/// Evaluated on all worlds at once, one bitmask operation per node.
pub fn models(f: &Formula, universe: &Universe) -> Result<WorldSet, LogicError> {
    Ok(match f {
        Formula::Top => universe.all(),
        Formula::Bot => universe.empty(),
        Formula::Atom(name) => universe.atom_models(resolve_atom(universe, name)?),
        Formula::Worlds(names) => {
            let mut set = universe.empty();
            for name in names {
                set.insert(resolve_world(universe, name)?);
            }
            set
        }
        Formula::Not(g) => models(g, universe)?.complement(),
        Formula::And(a, b) => models(a, universe)?.intersection(&models(b, universe)?),
        Formula::Or(a, b) => models(a, universe)?.union(&models(b, universe)?),
        Formula::Implies(a, b) => models(a, universe)?.complement().union(&models(b, universe)?),
        Formula::Iff(a, b) => {
            let (ma, mb) = (models(a, universe)?, models(b, universe)?);
            ma.intersection(&mb).union(&ma.complement().intersection(&mb.complement()))
        }
    })
}

/// The canonical sentence for a set of worlds: a disjunction of one literal
/// conjunction per world, worlds ascending, literals in alphabet order.
/// Over abstract universes the canonical sentence is the world-set literal.
pub fn form_of(set: &WorldSet, universe: &Universe) -> Formula {
    if set.is_empty() {
        return Formula::Bot;
    }
    match universe.alphabet() {
        None => Formula::Worlds(universe.names(set)),
        Some(alphabet) => Formula::disjunction(set.iter().map(|w| {
            Formula::conjunction(alphabet.atoms().iter().enumerate().map(|(k, atom)| {
                let lit = Formula::atom(atom.clone());
                if universe.atom_value(w, k) {
                    lit
                } else {
                    Formula::not(lit)
                }
            }))
        })),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryKind {
    Entails,
    Equivalent,
    Consistent,
    Complete,
}

/// Decides a semantic relation between sentences through their model sets.
/// `Entails` and `Equivalent` take two sentences, the others one.
pub fn semantic_query(
    kind: QueryKind,
    a: &Formula,
    b: Option<&Formula>,
    universe: &Universe,
) -> Result<bool, LogicError> {
    let binary = matches!(kind, QueryKind::Entails | QueryKind::Equivalent);
    if binary != b.is_some() {
        return Err(LogicError::Arity {
            kind,
            expected: if binary { 2 } else { 1 },
        });
    }
    let ma = models(a, universe)?;
    Ok(match (kind, b) {
        (QueryKind::Entails, Some(b)) => ma.is_subset(&models(b, universe)?),
        (QueryKind::Equivalent, Some(b)) => ma == models(b, universe)?,
        (QueryKind::Consistent, _) => !ma.is_empty(),
        // an inconsistent sentence entails everything, so it is complete as well
        (QueryKind::Complete, _) => ma.len() <= 1,
        _ => unreachable!(),
    })
}

impl fmt::Display for Formula {
    /// ASCII rendering with the parentheses the grammar needs, plus
    /// parentheses around any binary operand whose operator differs from
    /// its parent's.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("top"),
            Formula::Bot => f.write_str("bot"),
            Formula::Atom(name) => f.write_str(name),
            Formula::Worlds(names) => write!(f, "{{{}}}", names.join(", ")),
            Formula::Not(g) => {
                f.write_str("!")?;
                write_operand(f, g, g.precedence() < 5)
            }
            Formula::And(a, b) => write_binary(f, self, a, b, " & ", Assoc::Left),
            Formula::Or(a, b) => write_binary(f, self, a, b, " | ", Assoc::Left),
            Formula::Implies(a, b) => write_binary(f, self, a, b, " -> ", Assoc::Right),
            Formula::Iff(a, b) => write_binary(f, self, a, b, " <-> ", Assoc::Left),
        }
    }
}

#[derive(PartialEq)]
enum Assoc {
    Left,
    Right,
}

fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({g})")
    } else {
        write!(f, "{g}")
    }
}

fn write_binary(
    f: &mut fmt::Formatter<'_>,
    parent: &Formula,
    a: &Formula,
    b: &Formula,
    op: &str,
    assoc: Assoc,
) -> fmt::Result {
    let p = parent.precedence();
    let needs = |child: &Formula, assoc_side: bool| {
        let c = child.precedence();
        c < 5 && (c != p || !assoc_side)
    };
    write_operand(f, a, needs(a, assoc == Assoc::Left))?;
    f.write_str(op)?;
    write_operand(f, b, needs(b, assoc == Assoc::Right))
}
