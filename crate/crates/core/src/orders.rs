//! Partial preorders over (a subset of) the world universe.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{Universe, World, WorldSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("world {0} is outside the preorder's domain")]
    OutsideDomain(World),
    #[error("layers must mention every domain world exactly once: missing {missing:?}, repeated {repeated:?}")]
    NotPartition { missing: WorldSet, repeated: WorldSet },
    #[error("cannot enumerate preorders on {0} worlds (limit is {MAX_ENUMERATION_DOMAIN})")]
    DomainTooLarge(usize),
    #[error("not a preorder: {0}")]
    Invalid(ValidationReport),
}

/// A raw binary relation, not necessarily a preorder. `rows[a]` holds every
/// `b` with `a ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    domain: WorldSet,
    rows: Vec<WorldSet>,
}

impl Relation {
    pub fn empty(domain: &WorldSet) -> Self {
        let size = domain.universe_size();
        Relation {
            domain: domain.clone(),
            rows: vec![WorldSet::empty(size); size as usize],
        }
    }

    /// Adds `a ≤ b`. Pairs may lie outside the domain; `validate` reports them.
    pub fn set(&mut self, a: World, b: World) {
        self.rows[a.index()].insert(b);
    }

    pub fn get(&self, a: World, b: World) -> bool {
        self.rows.get(a.index()).is_some_and(|r| r.contains(b))
    }

    pub fn domain(&self) -> &WorldSet {
        &self.domain
    }

    pub fn from_pairs(domain: &WorldSet, pairs: &[(World, World)]) -> Self {
        let mut rel = Relation::empty(domain);
        for &(a, b) in pairs {
            rel.set(a, b);
        }
        rel
    }
}

/// Everything wrong with a relation that should be a preorder.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Pairs mentioning a world outside the domain.
    pub outside_domain: Vec<(World, World)>,
    /// Domain worlds `a` without `a ≤ a`.
    pub reflexivity: Vec<World>,
    /// Triples with `a ≤ b`, `b ≤ c` but not `a ≤ c`.
    pub transitivity: Vec<(World, World, World)>,
    /// Incomparable pairs, reported only when totality is required.
    pub totality: Vec<(World, World)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.outside_domain.is_empty()
            && self.reflexivity.is_empty()
            && self.transitivity.is_empty()
            && self.totality.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let mut parts = Vec::new();
        if let Some(&(a, b)) = self.outside_domain.first() {
            parts.push(format!("{} pair(s) outside the domain, e.g. ({a}, {b})", self.outside_domain.len()));
        }
        if let Some(a) = self.reflexivity.first() {
            parts.push(format!("not reflexive at {a}"));
        }
        if let Some(&(a, b, c)) = self.transitivity.first() {
            parts.push(format!("not transitive: {a} ≤ {b} ≤ {c} but not {a} ≤ {c}"));
        }
        if let Some(&(a, b)) = self.totality.first() {
            parts.push(format!("not total: {a} and {b} are incomparable"));
        }
        f.write_str(&parts.join("; "))
    }
}

/// Lists every reflexivity and transitivity violation of `rel` (and every
/// incomparable pair when `require_total`).
pub fn validate(rel: &Relation, require_total: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let size = rel.domain.universe_size();
    for a in (0..size).map(World) {
        for b in rel.rows[a.index()].iter() {
            if !rel.domain.contains(a) || !rel.domain.contains(b) {
                report.outside_domain.push((a, b));
            }
        }
    }
    for a in rel.domain.iter() {
        if !rel.get(a, a) {
            report.reflexivity.push(a);
        }
    }
    for a in rel.domain.iter() {
        for b in rel.domain.iter().filter(|&b| rel.get(a, b)) {
            for c in rel.domain.iter().filter(|&c| rel.get(b, c)) {
                if !rel.get(a, c) {
                    report.transitivity.push((a, b, c));
                }
            }
        }
    }
    if require_total {
        for a in rel.domain.iter() {
            for b in rel.domain.iter().filter(|&b| b > a) {
                if !rel.get(a, b) && !rel.get(b, a) {
                    report.totality.push((a, b));
                }
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Leq,
    Strict,
    Equiv,
    Incomparable,
}

/// A reflexive, transitive relation on a set of worlds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    domain: WorldSet,
    /// `up[a]` = { b : a ≤ b }
    up: Vec<WorldSet>,
    /// `below[a]` = { b : b < a }
    below: Vec<WorldSet>,
}

impl Preorder {
    fn from_closed_rows(domain: WorldSet, up: Vec<WorldSet>) -> Self {
        let size = domain.universe_size();
        let mut below = vec![WorldSet::empty(size); size as usize];
        for a in domain.iter() {
            for b in up[a.index()].iter() {
                if !up[b.index()].contains(a) {
                    below[b.index()].insert(a);
                }
            }
        }
        Preorder { domain, up, below }
    }

    /// Reflexive-transitive closure of `pairs` (each `(a, b)` meaning `a ≤ b`).
    pub fn closure(domain: &WorldSet, pairs: &[(World, World)]) -> Result<Self, OrderError> {
        let size = domain.universe_size();
        let mut up = vec![WorldSet::empty(size); size as usize];
        for &(a, b) in pairs {
            for w in [a, b] {
                if !domain.contains(w) {
                    return Err(OrderError::OutsideDomain(w));
                }
            }
            up[a.index()].insert(b);
        }
        for a in domain.iter() {
            up[a.index()].insert(a);
        }
        // Warshall over bitset rows
        for k in domain.iter() {
            let row_k = up[k.index()].clone();
            for i in domain.iter() {
                if up[i.index()].contains(k) {
                    up[i.index()].union_with(&row_k);
                }
            }
        }
        Ok(Self::from_closed_rows(domain.clone(), up))
    }

    /// Discrete order: every world only related to itself.
    pub fn identity(domain: &WorldSet) -> Self {
        Self::closure(domain, &[]).expect("no pairs")
    }

    /// Total preorder from layers listed bottom-up: worlds in the same layer
    /// are equivalent, worlds in earlier layers strictly below later ones.
    /// The layers must partition the domain; empty layers are skipped.
    pub fn from_layers(domain: &WorldSet, layers: &[WorldSet]) -> Result<Self, OrderError> {
        let size = domain.universe_size();
        let mut seen = WorldSet::empty(size);
        let mut repeated = WorldSet::empty(size);
        for layer in layers {
            repeated.union_with(&seen.intersection(layer));
            seen.union_with(layer);
        }
        let missing = domain.difference(&seen);
        let extra = seen.difference(domain);
        if let Some(w) = extra.first() {
            return Err(OrderError::OutsideDomain(w));
        }
        if !missing.is_empty() || !repeated.is_empty() {
            return Err(OrderError::NotPartition { missing, repeated });
        }
        let mut up = vec![WorldSet::empty(size); size as usize];
        let mut at_or_above = domain.clone();
        for layer in layers {
            for w in layer.iter() {
                up[w.index()] = at_or_above.clone();
            }
            at_or_above = at_or_above.difference(layer);
        }
        Ok(Self::from_closed_rows(domain.clone(), up))
    }

    pub fn try_from_relation(rel: &Relation) -> Result<Self, OrderError> {
        let report = validate(rel, false);
        if !report.is_valid() {
            return Err(OrderError::Invalid(report));
        }
        Ok(Self::from_closed_rows(rel.domain.clone(), rel.rows.clone()))
    }

    pub fn relation(&self) -> Relation {
        Relation {
            domain: self.domain.clone(),
            rows: self.up.clone(),
        }
    }

    pub fn domain(&self) -> &WorldSet {
        &self.domain
    }

    pub fn universe_size(&self) -> u32 {
        self.domain.universe_size()
    }

    /// `a ≤ b`; false whenever either world is outside the domain.
    pub fn leq(&self, a: World, b: World) -> bool {
        self.up.get(a.index()).is_some_and(|r| r.contains(b))
    }

    /// `a < b`
    pub fn strict(&self, a: World, b: World) -> bool {
        self.below.get(b.index()).is_some_and(|r| r.contains(a))
    }

    pub fn equiv(&self, a: World, b: World) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    pub fn incomparable(&self, a: World, b: World) -> bool {
        self.domain.contains(a) && self.domain.contains(b) && !self.leq(a, b) && !self.leq(b, a)
    }

    /// Worlds strictly below `a`.
    pub fn strictly_below(&self, a: World) -> &WorldSet {
        &self.below[a.index()]
    }

    /// Worlds `b` with `a ≤ b`.
    pub fn up_set(&self, a: World) -> &WorldSet {
        &self.up[a.index()]
    }

    pub fn relation_query(&self, kind: RelationKind, a: World, b: World) -> Result<bool, OrderError> {
        for w in [a, b] {
            if !self.domain.contains(w) {
                return Err(OrderError::OutsideDomain(w));
            }
        }
        Ok(match kind {
            RelationKind::Leq => self.leq(a, b),
            RelationKind::Strict => self.strict(a, b),
            RelationKind::Equiv => self.equiv(a, b),
            RelationKind::Incomparable => self.incomparable(a, b),
        })
    }

    /// Minimal elements of `n`: members with nothing in `n` strictly below them.
    pub fn min_set(&self, n: &WorldSet) -> Result<WorldSet, OrderError> {
        if let Some(w) = n.difference(&self.domain).first() {
            return Err(OrderError::OutsideDomain(w));
        }
        Ok(self.minimal(n))
    }

    /// [`Preorder::min_set`] without the domain check.
    pub fn minimal(&self, n: &WorldSet) -> WorldSet {
        let mut out = WorldSet::empty(n.universe_size());
        for x in n.iter() {
            if self.below[x.index()].is_disjoint(n) {
                out.insert(x);
            }
        }
        out
    }

    /// `w` lies in the domain and strictly below every other domain world.
    pub fn is_faithful_to(&self, w: World) -> bool {
        if !self.domain.contains(w) {
            return false;
        }
        self.domain.iter().all(|x| x == w || self.strict(w, x))
    }

    /// Domain worlds other than `w` that are not strictly above it.
    pub fn faithfulness_witnesses(&self, w: World) -> Vec<World> {
        self.domain.iter().filter(|&x| x != w && !self.strict(w, x)).collect()
    }

    pub fn is_total(&self) -> bool {
        self.domain
            .iter()
            .all(|a| self.domain.iter().all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Bottom-up equivalence classes, if the preorder is total.
    pub fn layers(&self) -> Option<Vec<WorldSet>> {
        if !self.is_total() {
            return None;
        }
        let mut rest = self.domain.clone();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let bottom = self.minimal(&rest);
            rest = rest.difference(&bottom);
            out.push(bottom);
        }
        Some(out)
    }

    /// Every non-reflexive pair `(a, b)` with `a ≤ b`, ascending.
    pub fn pairs(&self) -> Vec<(World, World)> {
        let mut out = Vec::new();
        for a in self.domain.iter() {
            for b in self.up[a.index()].iter() {
                if a != b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The preorder induced on a subset of the domain.
    pub fn restrict(&self, sub: &WorldSet) -> Result<Preorder, OrderError> {
        if let Some(w) = sub.difference(&self.domain).first() {
            return Err(OrderError::OutsideDomain(w));
        }
        let size = self.universe_size();
        let mut up = vec![WorldSet::empty(size); size as usize];
        for a in sub.iter() {
            up[a.index()] = self.up[a.index()].intersection(sub);
        }
        Ok(Self::from_closed_rows(sub.clone(), up))
    }

    /// Layered notation for total preorders, explicit pairs otherwise.
    pub fn render(&self, universe: &Universe) -> String {
        match self.layers() {
            Some(layers) => layers
                .iter()
                .map(|l| format!("[{}]", universe.names(l).join(", ")))
                .collect::<Vec<_>>()
                .join(" < "),
            None => {
                let pairs: Vec<String> = self
                    .pairs()
                    .iter()
                    .map(|&(a, b)| format!("{} <= {}", universe.name(a), universe.name(b)))
                    .collect();
                if pairs.is_empty() {
                    "pairs { }".to_string()
                } else {
                    format!("pairs {{ {}; }}", pairs.join("; "))
                }
            }
        }
    }
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Preorder")
            .field("domain", &self.domain)
            .field("pairs", &self.pairs())
            .finish()
    }
}

/// Largest domain `enumerate_preorders` accepts.
pub const MAX_ENUMERATION_DOMAIN: usize = 5;

/// Every preorder on `domain`, each exactly once, in a fixed order.
///
/// Candidates are the reflexive relations, indexed by their off-diagonal
/// bit pattern; the transitive ones are yielded in ascending pattern order.
pub fn enumerate_preorders(domain: &WorldSet) -> Result<PreorderEnumeration, OrderError> {
    let n = domain.len();
    if n > MAX_ENUMERATION_DOMAIN {
        return Err(OrderError::DomainTooLarge(n));
    }
    let worlds: Vec<World> = domain.iter().collect();
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    Ok(PreorderEnumeration {
        domain: domain.clone(),
        worlds,
        end: 1u64 << off_diagonal.len(),
        off_diagonal,
        next: 0,
    })
}

pub struct PreorderEnumeration {
    domain: WorldSet,
    worlds: Vec<World>,
    off_diagonal: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl PreorderEnumeration {
    fn matrix(&self, pattern: u64) -> Vec<Vec<bool>> {
        let n = self.worlds.len();
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in self.off_diagonal.iter().enumerate() {
            if pattern >> bit & 1 == 1 {
                m[i][j] = true;
            }
        }
        m
    }
}

fn is_transitive(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| !m[i][j] || (0..n).all(|k| !m[j][k] || m[i][k])))
}

impl Iterator for PreorderEnumeration {
    type Item = Preorder;

    fn next(&mut self) -> Option<Preorder> {
        while self.next < self.end {
            let pattern = self.next;
            self.next += 1;
            let m = self.matrix(pattern);
            if !is_transitive(&m) {
                continue;
            }
            let mut pairs = Vec::new();
            for (i, row) in m.iter().enumerate() {
                for (j, &le) in row.iter().enumerate() {
                    if le {
                        pairs.push((self.worlds[i], self.worlds[j]));
                    }
                }
            }
            let rel = Relation::from_pairs(&self.domain, &pairs);
            return Some(Preorder::try_from_relation(&rel).expect("filtered to preorders"));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(idx: &[u32]) -> WorldSet {
        WorldSet::from_indices(8, idx)
    }

    fn w(i: u32) -> World {
        World(i)
    }

    /// Closure by naive fixpoint iteration on a boolean matrix.
    fn closure_oracle(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            m[i][i] = true;
        }
        for &(a, b) in pairs {
            m[a][b] = true;
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if m[i][j] && m[j][k] && !m[i][k] {
                            m[i][k] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return m;
            }
        }
    }

    fn bookshop_layers() -> Vec<WorldSet> {
        vec![ws(&[0]), ws(&[2, 4]), ws(&[1, 3, 5, 6, 7])]
    }

    #[test]
    fn closure_adds_transitive_pairs() {
        let p = Preorder::closure(&ws(&[0, 1, 2]), &[(w(0), w(2)), (w(2), w(1))]).unwrap();
        assert!(p.leq(w(0), w(1)));
        assert!(!p.leq(w(1), w(0)));
    }

    #[test]
    fn closure_of_nothing_is_discrete() {
        let p = Preorder::closure(&ws(&[0, 1]), &[]).unwrap();
        assert!(p.leq(w(0), w(0)) && p.leq(w(1), w(1)));
        assert!(p.incomparable(w(0), w(1)));
    }

    #[test]
    fn closure_rejects_foreign_endpoints() {
        assert_eq!(
            Preorder::closure(&ws(&[0, 1]), &[(w(0), w(5))]),
            Err(OrderError::OutsideDomain(w(5)))
        );
    }

    #[test]
    fn layered_chain_matches_closure_oracle() {
        // w0 < {w2, w4} < rest, written as the chain of layer-to-layer pairs
        // plus both directions inside each layer.
        let layers: [&[usize]; 3] = [&[0], &[2, 4], &[1, 3, 5, 6, 7]];
        let mut pairs = Vec::new();
        for (k, layer) in layers.iter().enumerate() {
            for &a in *layer {
                for &b in *layer {
                    pairs.push((a, b));
                }
                if let Some(next) = layers.get(k + 1) {
                    for &b in *next {
                        pairs.push((a, b));
                    }
                }
            }
        }
        let oracle = closure_oracle(8, &pairs);
        let p = Preorder::from_layers(&ws(&[0, 1, 2, 3, 4, 5, 6, 7]), &bookshop_layers()).unwrap();
        let wpairs: Vec<_> = pairs.iter().map(|&(a, b)| (w(a as u32), w(b as u32))).collect();
        let closed = Preorder::closure(&WorldSet::full(8), &wpairs).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(p.leq(w(a), w(b)), oracle[a as usize][b as usize], "({a},{b})");
            }
        }
        assert_eq!(p, closed);
    }

    #[test]
    fn min_set_examples() {
        let p = Preorder::from_layers(&WorldSet::full(8), &bookshop_layers()).unwrap();
        assert_eq!(p.min_set(&ws(&[2, 3, 4, 5, 6, 7])).unwrap(), ws(&[2, 4]));
        assert_eq!(p.min_set(&ws(&[6])).unwrap(), ws(&[6]));
        assert_eq!(p.min_set(&ws(&[])).unwrap(), ws(&[]));
        let flat = Preorder::identity(&ws(&[1, 2, 3]));
        assert_eq!(flat.min_set(&ws(&[1, 2, 3])).unwrap(), ws(&[1, 2, 3]));
        assert_eq!(flat.min_set(&ws(&[0])), Err(OrderError::OutsideDomain(w(0))));
    }

    #[test]
    fn relation_queries_on_layered_order() {
        let p = Preorder::from_layers(&WorldSet::full(8), &bookshop_layers()).unwrap();
        assert!(p.relation_query(RelationKind::Strict, w(0), w(2)).unwrap());
        assert!(p.relation_query(RelationKind::Equiv, w(2), w(4)).unwrap());
        assert!(!p.relation_query(RelationKind::Incomparable, w(3), w(3)).unwrap());
        assert!(!p.relation_query(RelationKind::Strict, w(2), w(4)).unwrap());
        let small = Preorder::identity(&ws(&[0, 1]));
        assert_eq!(
            small.relation_query(RelationKind::Leq, w(0), w(3)),
            Err(OrderError::OutsideDomain(w(3)))
        );
    }

    #[test]
    fn faithfulness() {
        let p = Preorder::from_layers(&WorldSet::full(8), &bookshop_layers()).unwrap();
        assert!(p.is_faithful_to(w(0)));
        assert!(!p.is_faithful_to(w(2)));
        let flat = Preorder::identity(&ws(&[0, 1]));
        assert!(!flat.is_faithful_to(w(0)));
        assert_eq!(flat.faithfulness_witnesses(w(0)), vec![w(1)]);
        let tied = Preorder::from_layers(&ws(&[0, 1, 2]), &[ws(&[0, 1]), ws(&[2])]).unwrap();
        assert!(!tied.is_faithful_to(w(0)));
    }

    #[test]
    fn validate_reports_witnesses() {
        let dom = ws(&[0, 1, 2]);
        let rel = Relation::from_pairs(&dom, &[(w(0), w(0)), (w(2), w(2))]);
        assert_eq!(validate(&rel, false).reflexivity, vec![w(1)]);

        let mut pairs: Vec<_> = (0..3).map(|i| (w(i), w(i))).collect();
        pairs.extend([(w(0), w(1)), (w(1), w(2))]);
        let rel = Relation::from_pairs(&dom, &pairs);
        let report = validate(&rel, false);
        assert_eq!(report.transitivity, vec![(w(0), w(1), w(2))]);
        assert!(report.reflexivity.is_empty());

        let rel = Relation::from_pairs(&dom, &[(w(0), w(0)), (w(1), w(1)), (w(2), w(2)), (w(0), w(6))]);
        assert_eq!(validate(&rel, false).outside_domain, vec![(w(0), w(6))]);
        let report = validate(&Preorder::identity(&dom).relation(), true);
        assert_eq!(report.totality.len(), 3);
    }

    #[test]
    fn eight_world_chain_is_a_total_preorder() {
        // w1 < w2 < w3 < w4 < w6 < w5 < w7 < w8 over abstract worlds 0..7
        let order = [0u32, 1, 2, 3, 5, 4, 6, 7];
        let layers: Vec<WorldSet> = order.iter().map(|&i| ws(&[i])).collect();
        let p = Preorder::from_layers(&WorldSet::full(8), &layers).unwrap();
        let report = validate(&p.relation(), true);
        assert!(report.is_valid(), "{report}");
        assert!(p.strict(w(0), w(1)) && p.strict(w(1), w(2)));
    }

    #[test]
    fn layers_must_partition_the_domain() {
        let dom = ws(&[0, 1, 2]);
        assert!(matches!(
            Preorder::from_layers(&dom, &[ws(&[0]), ws(&[1])]),
            Err(OrderError::NotPartition { .. })
        ));
        assert!(matches!(
            Preorder::from_layers(&dom, &[ws(&[0, 1]), ws(&[1, 2])]),
            Err(OrderError::NotPartition { .. })
        ));
        assert_eq!(
            Preorder::from_layers(&dom, &[ws(&[0, 1, 2, 3])]),
            Err(OrderError::OutsideDomain(w(3)))
        );
    }

    #[test]
    fn layers_round_trip_for_total_orders() {
        let p = Preorder::from_layers(&WorldSet::full(8), &bookshop_layers()).unwrap();
        assert_eq!(p.layers().unwrap(), bookshop_layers());
        let u = Universe::with_atoms(&["b", "n", "t"]).unwrap();
        assert_eq!(p.render(&u), "[w0] < [w2, w4] < [w1, w3, w5, w6, w7]");
        let partial = Preorder::closure(&ws(&[0, 1, 2]), &[(w(0), w(1))]).unwrap();
        assert_eq!(partial.layers(), None);
        let u4 = Universe::with_atoms(&["a", "f"]).unwrap();
        let partial4 = Preorder::closure(&WorldSet::from_indices(4, &[0, 1, 2]), &[(w(0), w(1))]).unwrap();
        assert_eq!(partial4.render(&u4), "pairs { w0 <= w1; }");
    }

    /// Counts reflexive-transitive relations by filtering every relation on n points.
    fn brute_force_count(n: usize) -> usize {
        let cells = n * n;
        (0u64..1 << cells)
            .filter(|&bits| {
                let m: Vec<Vec<bool>> = (0..n)
                    .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
                    .collect();
                (0..n).all(|i| m[i][i]) && is_transitive(&m)
            })
            .count()
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        assert_eq!(brute_force_count(1), 1);
        assert_eq!(brute_force_count(2), 4);
        assert_eq!(brute_force_count(3), 29);
        for (n, expected) in [(1usize, 1usize), (2, 4), (3, 29)] {
            let domain = WorldSet::from_worlds(8, (0..n as u32).map(World));
            let all: Vec<_> = enumerate_preorders(&domain).unwrap().collect();
            assert_eq!(all.len(), expected);
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), expected);
            for p in &all {
                assert!(validate(&p.relation(), false).is_valid());
            }
        }
        assert_eq!(brute_force_count(4), 355);
        let four = WorldSet::from_indices(8, &[1, 3, 5, 7]);
        assert_eq!(enumerate_preorders(&four).unwrap().count(), 355);
        assert!(matches!(
            enumerate_preorders(&WorldSet::full(8)),
            Err(OrderError::DomainTooLarge(8))
        ));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let d = ws(&[4, 5, 6]);
        let a: Vec<_> = enumerate_preorders(&d).unwrap().collect();
        let b: Vec<_> = enumerate_preorders(&d).unwrap().collect();
        assert_eq!(a, b);
    }
}
