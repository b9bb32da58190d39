use std::fmt;

use super::world::{World, WorldSet};
use super::LogicError;

/// Largest alphabet accepted; the universe then has 65536 worlds.
pub const MAX_ATOMS: usize = 16;

/// An ordered list of distinct atom names. The first declared atom is the
/// most significant bit of a world index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    atoms: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(atoms: &[S]) -> Result<Self, LogicError> {
        if atoms.is_empty() {
            return Err(LogicError::EmptyAlphabet);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(LogicError::AlphabetTooLarge(atoms.len()));
        }
        let mut names: Vec<String> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            let atom = atom.as_ref();
            if !is_identifier(atom) || atom == "top" || atom == "bot" {
                return Err(LogicError::BadAtomName(atom.to_string()));
            }
            if names.iter().any(|n| n == atom) {
                return Err(LogicError::DuplicateAtom(atom.to_string()));
            }
            names.push(atom.to_string());
        }
        Ok(Alphabet { atoms: names })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Atoms(Alphabet),
    /// Worlds without valuations, named `w<first>`, `w<first+1>`, ...
    Abstract { first: u32 },
}

/// The set M of possible worlds, either generated by an alphabet or given
/// as a bare number of abstract worlds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    kind: Kind,
    size: u32,
}

impl Universe {
    pub fn from_alphabet(alphabet: Alphabet) -> Self {
        let size = 1u32 << alphabet.len();
        Universe {
            kind: Kind::Atoms(alphabet),
            size,
        }
    }

    pub fn with_atoms<S: AsRef<str>>(atoms: &[S]) -> Result<Self, LogicError> {
        Ok(Self::from_alphabet(Alphabet::new(atoms)?))
    }

    /// `count` abstract worlds named from `w<first>` upwards.
    pub fn abstract_worlds(count: u32, first: u32) -> Result<Self, LogicError> {
        if count == 0 || count > 1 << MAX_ATOMS {
            return Err(LogicError::BadWorldCount(count));
        }
        Ok(Universe {
            kind: Kind::Abstract { first },
            size: count,
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn alphabet(&self) -> Option<&Alphabet> {
        match &self.kind {
            Kind::Atoms(a) => Some(a),
            Kind::Abstract { .. } => None,
        }
    }

    /// The first index used in abstract world names, `None` for alphabet universes.
    pub fn abstract_first(&self) -> Option<u32> {
        match self.kind {
            Kind::Abstract { first } => Some(first),
            Kind::Atoms(_) => None,
        }
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.size)
    }

    pub fn empty(&self) -> WorldSet {
        WorldSet::empty(self.size)
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.size).map(World)
    }

    fn name_offset(&self) -> u32 {
        match self.kind {
            Kind::Abstract { first } => first,
            Kind::Atoms(_) => 0,
        }
    }

    pub fn name(&self, w: World) -> String {
        format!("w{}", w.0 + self.name_offset())
    }

    /// Resolves a `w<k>` name to a world of this universe.
    pub fn world_named(&self, name: &str) -> Option<World> {
        let digits = name.strip_prefix('w')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        let k: u32 = digits.parse().ok()?;
        let idx = k.checked_sub(self.name_offset())?;
        (idx < self.size).then_some(World(idx))
    }

    /// Truth value of atom `atom` (by declaration position) in world `w`.
    pub fn atom_value(&self, w: World, atom: usize) -> bool {
        let n = self.alphabet().map_or(0, Alphabet::len);
        debug_assert!(atom < n);
        (w.0 >> (n - 1 - atom)) & 1 == 1
    }

    /// The valuation of `w` in alphabet order, for alphabet universes.
    pub fn valuation(&self, w: World) -> Option<Vec<bool>> {
        let a = self.alphabet()?;
        Some((0..a.len()).map(|k| self.atom_value(w, k)).collect())
    }

    /// Worlds where the given atom is true.
    pub fn atom_models(&self, atom: usize) -> WorldSet {
        WorldSet::from_worlds(self.size, self.worlds().filter(|&w| self.atom_value(w, atom)))
    }

    pub fn names(&self, set: &WorldSet) -> Vec<String> {
        set.iter().map(|w| self.name(w)).collect()
    }

    /// `{w2, w4}` rendering of a world set.
    pub fn format_set(&self, set: &WorldSet) -> String {
        format!("{{{}}}", self.names(set).join(", "))
    }

    pub fn display_set<'a>(&'a self, set: &'a WorldSet) -> impl fmt::Display + 'a {
        DisplaySet { universe: self, set }
    }
}

struct DisplaySet<'a> {
    universe: &'a Universe,
    set: &'a WorldSet,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.universe.format_set(self.set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_atom_is_most_significant() {
        let u = Universe::with_atoms(&["b", "n", "t"]).unwrap();
        // w5 = b true, n false, t true
        assert_eq!(u.valuation(World(5)).unwrap(), vec![true, false, true]);
        assert_eq!(u.valuation(World(2)).unwrap(), vec![false, true, false]);
        let b = u.atom_models(0);
        assert_eq!(b, WorldSet::from_indices(8, &[4, 5, 6, 7]));
    }

    #[test]
    fn alphabet_rejects_bad_input() {
        assert!(matches!(Alphabet::new::<&str>(&[]), Err(LogicError::EmptyAlphabet)));
        assert!(matches!(Alphabet::new(&["a", "a"]), Err(LogicError::DuplicateAtom(_))));
        assert!(matches!(Alphabet::new(&["1a"]), Err(LogicError::BadAtomName(_))));
        assert!(matches!(Alphabet::new(&["top"]), Err(LogicError::BadAtomName(_))));
        let many: Vec<String> = (0..17).map(|i| format!("p{i}")).collect();
        assert!(matches!(Alphabet::new(&many), Err(LogicError::AlphabetTooLarge(17))));
        let max: Vec<String> = (0..16).map(|i| format!("p{i}")).collect();
        assert_eq!(Universe::with_atoms(&max).unwrap().size(), 65536);
    }

    #[test]
    fn abstract_names_keep_their_offset() {
        let u = Universe::abstract_worlds(8, 1).unwrap();
        assert_eq!(u.name(World(0)), "w1");
        assert_eq!(u.world_named("w8"), Some(World(7)));
        assert_eq!(u.world_named("w0"), None);
        assert_eq!(u.world_named("w9"), None);
        assert_eq!(u.world_named("w01"), None);
    }
}
