use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

/// A possible world, identified by its index in the universe.
///
/// For alphabet-based universes bit `k` of the index (counted from the most
/// significant end) is the truth value of the `k`-th declared atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct World(pub u32);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of worlds over a universe of fixed size, stored as a bitmask.
///
/// Universes of up to 64 worlds fit inline in a single word, which covers
/// every universe the exhaustive checkers accept.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    size: u32,
    words: SmallVec<[u64; 1]>,
}

fn word_count(size: u32) -> usize {
    (size as usize).div_ceil(64).max(1)
}

impl WorldSet {
    pub fn empty(size: u32) -> Self {
        WorldSet {
            size,
            words: smallvec![0; word_count(size)],
        }
    }

    pub fn full(size: u32) -> Self {
        let mut set = WorldSet {
            size,
            words: smallvec![u64::MAX; word_count(size)],
        };
        set.trim();
        set
    }

    pub fn singleton(size: u32, world: World) -> Self {
        let mut set = Self::empty(size);
        set.insert(world);
        set
    }

    /// Builds a set from its bitmask code. Only valid for universes of at
    /// most 64 worlds.
    pub fn from_code(size: u32, code: u64) -> Self {
        assert!(size <= 64, "bitmask codes need a universe of at most 64 worlds");
        let mut set = WorldSet {
            size,
            words: smallvec![code],
        };
        set.trim();
        set
    }

    pub fn from_worlds(size: u32, worlds: impl IntoIterator<Item = World>) -> Self {
        let mut set = Self::empty(size);
        for w in worlds {
            set.insert(w);
        }
        set
    }

    pub fn from_indices(size: u32, indices: &[u32]) -> Self {
        Self::from_worlds(size, indices.iter().map(|&i| World(i)))
    }

    fn trim(&mut self) {
        let rem = self.size % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
        if self.size == 0 {
            self.words[0] = 0;
        }
    }

    /// Number of worlds in the ambient universe.
    pub fn universe_size(&self) -> u32 {
        self.size
    }

    /// The bitmask code of the set (universes of at most 64 worlds).
    pub fn code(&self) -> u64 {
        debug_assert!(self.size <= 64);
        self.words[0]
    }

    pub fn contains(&self, w: World) -> bool {
        let i = w.index();
        i < self.size as usize && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, w: World) {
        assert!(w.0 < self.size, "world {w} outside a universe of {} worlds", self.size);
        let i = w.index();
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, w: World) {
        let i = w.index();
        if i < self.size as usize {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Worlds in ascending index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words[0],
        }
    }

    /// The smallest world in the set.
    pub fn first(&self) -> Option<World> {
        self.iter().next()
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> WorldSet {
        let mut out = WorldSet {
            size: self.size,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &WorldSet) {
        debug_assert_eq!(self.size, other.size);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &WorldSet) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        !self.intersects(other)
    }

    fn zip_with(&self, other: &WorldSet, f: impl Fn(u64, u64) -> u64) -> WorldSet {
        debug_assert_eq!(self.size, other.size, "world sets over different universes");
        WorldSet {
            size: self.size,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Every subset of `self`, starting with the empty set and ending with
    /// `self`. Only for universes of at most 64 worlds.
    pub fn subsets(&self) -> Subsets {
        let mask = self.code();
        Subsets {
            size: self.size,
            mask,
            next: Some(0),
        }
    }

    /// Every subset of a universe of `size` worlds in ascending code order.
    pub fn all_subsets(size: u32) -> impl Iterator<Item = WorldSet> {
        assert!(size <= 32, "cannot enumerate all subsets of {size} worlds");
        (0..1u64 << size).map(move |code| WorldSet::from_code(size, code))
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "w{}", w.0)?;
        }
        f.write_str("}")
    }
}

/// Serialized as the ascending list of world indices.
impl Serialize for WorldSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|w| w.0))
    }
}

impl PartialOrd for WorldSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WorldSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl BitOr for &WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: Self) -> WorldSet {
        self.union(rhs)
    }
}

impl BitAnd for &WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: Self) -> WorldSet {
        self.intersection(rhs)
    }
}

impl Sub for &WorldSet {
    type Output = WorldSet;
    fn sub(self, rhs: Self) -> WorldSet {
        self.difference(rhs)
    }
}

impl Not for &WorldSet {
    type Output = WorldSet;
    fn not(self) -> WorldSet {
        self.complement()
    }
}

impl<'a> IntoIterator for &'a WorldSet {
    type Item = World;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(World((self.word * 64) as u32 + bit));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

/// Submask enumeration over a single-word set.
pub struct Subsets {
    size: u32,
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = WorldSet;

    fn next(&mut self) -> Option<WorldSet> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current.wrapping_sub(self.mask)) & self.mask)
        };
        Some(WorldSet::from_code(self.size, current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_on_small_universe() {
        let a = WorldSet::from_indices(8, &[0, 2, 4]);
        let b = WorldSet::from_indices(8, &[2, 3]);
        assert_eq!(&a | &b, WorldSet::from_indices(8, &[0, 2, 3, 4]));
        assert_eq!(&a & &b, WorldSet::from_indices(8, &[2]));
        assert_eq!(&a - &b, WorldSet::from_indices(8, &[0, 4]));
        assert_eq!((!&a).len(), 5);
        assert!(WorldSet::from_indices(8, &[2]).is_subset(&a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![World(0), World(2), World(4)]);
    }

    #[test]
    fn full_set_is_trimmed() {
        assert_eq!(WorldSet::full(8).code(), 0xff);
        assert_eq!(WorldSet::full(8).len(), 8);
        assert_eq!(WorldSet::full(64).len(), 64);
        let big = WorldSet::full(130);
        assert_eq!(big.len(), 130);
        assert_eq!(big.complement().len(), 0);
    }

    #[test]
    fn large_universe_iteration_crosses_words() {
        let set = WorldSet::from_indices(200, &[1, 63, 64, 150, 199]);
        let got: Vec<u32> = set.iter().map(|w| w.0).collect();
        assert_eq!(got, vec![1, 63, 64, 150, 199]);
        assert!(set.contains(World(150)));
        assert!(!set.contains(World(151)));
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let set = WorldSet::from_indices(8, &[1, 3, 6]);
        let subs: Vec<_> = set.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], WorldSet::empty(8));
        assert_eq!(subs.last().unwrap(), &set);
        let mut codes: Vec<u64> = subs.iter().map(WorldSet::code).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), 8);
        assert_eq!(WorldSet::empty(8).subsets().count(), 1);
    }
}
