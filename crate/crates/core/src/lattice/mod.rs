//! Finite lattices of graphs ordered by inclusion.
//!
//! A [`Lattice`] stores its elements in canonical graph order, which is a
//! linear extension of `⊆` (a proper subgraph has fewer edges). Down-sets and
//! up-sets are kept as bitsets so that comparability, meets, joins and
//! interval counts are word-parallel operations.

mod export;

use fixedbitset::FixedBitSet;

pub use export::{LatticeDoc, LatticeElementDoc};

use crate::covered::{covered_closure, CoveredSet};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph, GroundGraph};

/// Inclusion lattice over a set of graphs with a least and a greatest element.
#[derive(Debug, Clone)]
pub struct Lattice {
    ground: GroundGraph,
    elements: Vec<Graph>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    mobius: Vec<i64>,
}

/// Outcome of the rank labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankLabels {
    /// Rank of every element, indexed like [`Lattice::elements`].
    Graded(Vec<usize>),
    /// A cover `lower ⋖ upper` whose longest-chain levels differ by more than one.
    NotGraded {
        lower: usize,
        upper: usize,
        lower_level: usize,
        upper_level: usize,
    },
}

impl RankLabels {
    pub fn is_graded(&self) -> bool {
        matches!(self, RankLabels::Graded(_))
    }

    pub fn ranks(&self) -> Option<&[usize]> {
        match self {
            RankLabels::Graded(r) => Some(r),
            RankLabels::NotGraded { .. } => None,
        }
    }
}

/// Result of checking the rank-parity condition on every interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerianVerdict {
    Eulerian,
    NotGraded {
        lower: usize,
        upper: usize,
    },
    /// Interval `[lower, upper]` with unequal even/odd rank counts.
    Unbalanced {
        lower: usize,
        upper: usize,
        even: usize,
        odd: usize,
    },
}

/// An `N5` sublattice: `bottom < a < top` and `bottom < c1 < c2 < top`, with
/// `a` incomparable to both `c1` and `c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pentagon {
    pub bottom: usize,
    pub a: usize,
    pub c1: usize,
    pub c2: usize,
    pub top: usize,
}

impl Lattice {
    /// Lattice of `covered ∪ {0̂}`.
    pub fn build(covered: &CoveredSet) -> Result<Self> {
        let mut graphs = covered.graphs().to_vec();
        graphs.push(covered.ground().empty_graph());
        Lattice::from_graphs(covered.ground(), graphs)
    }

    /// Covered closure of `family` followed by [`Lattice::build`].
    pub fn from_family(family: &Family) -> Result<Self> {
        Lattice::build(&covered_closure(family)?)
    }

    /// Inclusion order on the given graphs (duplicates dropped). Fails unless
    /// the poset has a least and a greatest element.
    pub fn from_graphs(ground: GroundGraph, mut graphs: Vec<Graph>) -> Result<Self> {
        for g in &graphs {
            ground.check_same(&g.ground())?;
        }
        graphs.sort();
        graphs.dedup();
        if graphs.is_empty() {
            return Err(Error::StructureViolation("no elements".into()));
        }
        let len = graphs.len();
        let mut down = vec![FixedBitSet::with_capacity(len); len];
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        for y in 0..len {
            for x in 0..=y {
                if graphs[x].edges().is_subset(graphs[y].edges()) {
                    down[y].insert(x);
                    up[x].insert(y);
                }
            }
        }
        if down[len - 1].count_ones(..) != len {
            return Err(Error::StructureViolation("no greatest element".into()));
        }
        if up[0].count_ones(..) != len {
            return Err(Error::StructureViolation("no least element".into()));
        }

        // Transitive reduction: scanning the strict down-set from the top,
        // an element is a cover unless an earlier cover already dominates it.
        let mut lower_covers = vec![Vec::new(); len];
        let mut upper_covers = vec![Vec::new(); len];
        for y in 0..len {
            let mut dominated = FixedBitSet::with_capacity(len);
            for x in down[y].ones().rev().filter(|&x| x != y) {
                if dominated.contains(x) {
                    continue;
                }
                lower_covers[y].push(x);
                upper_covers[x].push(y);
                dominated.union_with(&down[x]);
            }
            lower_covers[y].reverse();
        }

        // μ(0̂, y) = -Σ_{x < y} μ(0̂, x), in linear-extension order
        let mut mobius = vec![0i64; len];
        mobius[0] = 1;
        for y in 1..len {
            mobius[y] = -down[y].ones().filter(|&x| x != y).map(|x| mobius[x]).sum::<i64>();
        }

        Ok(Lattice {
            ground,
            elements: graphs,
            down,
            up,
            lower_covers,
            upper_covers,
            mobius,
        })
    }

    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Graph] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Graph {
        &self.elements[x]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .lower_covers
            .iter()
            .enumerate()
            .flat_map(|(y, xs)| xs.iter().map(move |&x| (x, y)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// Greatest lower bound.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        let mut lower = self.down[x].clone();
        lower.intersect_with(&self.down[y]);
        let candidate = lower
            .maximum()
            .ok_or_else(|| Error::StructureViolation(format!("elements {x} and {y} have no lower bound")))?;
        if lower.is_subset(&self.down[candidate]) {
            Ok(candidate)
        } else {
            Err(Error::StructureViolation(format!(
                "elements {x} and {y} have no unique meet"
            )))
        }
    }

    /// Least upper bound.
    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        let mut upper = self.up[x].clone();
        upper.intersect_with(&self.up[y]);
        let candidate = upper
            .minimum()
            .ok_or_else(|| Error::StructureViolation(format!("elements {x} and {y} have no upper bound")))?;
        if upper.is_subset(&self.up[candidate]) {
            Ok(candidate)
        } else {
            Err(Error::StructureViolation(format!(
                "elements {x} and {y} have no unique join"
            )))
        }
    }

    /// Whether every pair of elements has a unique meet and join.
    pub fn verify_lattice(&self) -> bool {
        self.first_lattice_violation().is_none()
    }

    /// The first pair lacking a unique meet or join, if any.
    pub fn first_lattice_violation(&self) -> Option<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| (x + 1..self.len()).map(move |y| (x, y)))
            .find(|&(x, y)| self.meet(x, y).is_err() || self.join(x, y).is_err())
    }

    /// `μ(0̂, x)`.
    pub fn mobius(&self, x: usize) -> i64 {
        self.mobius[x]
    }

    pub fn mobius_values(&self) -> &[i64] {
        &self.mobius
    }

    /// `μ(x, y)`, zero when `x ≰ y`.
    pub fn mobius_between(&self, x: usize, y: usize) -> i64 {
        if !self.leq(x, y) {
            return 0;
        }
        let mut mu = vec![0i64; self.len()];
        mu[x] = 1;
        let mut span = self.up[x].clone();
        span.intersect_with(&self.down[y]);
        for z in span.ones().filter(|&z| z != x) {
            let mut below = self.down[z].clone();
            below.intersect_with(&self.up[x]);
            mu[z] = -below.ones().filter(|&w| w != z).map(|w| mu[w]).sum::<i64>();
        }
        mu[y]
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.len()];
        for y in 1..self.len() {
            level[y] = self.lower_covers[y].iter().map(|&x| level[x] + 1).max().unwrap_or(0);
        }
        level
    }

    /// Number of elements at each longest-chain level.
    pub fn level_counts(&self) -> Vec<usize> {
        let levels = self.levels();
        let height = levels.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; height + 1];
        for l in levels {
            counts[l] += 1;
        }
        counts
    }

    /// Longest-chain levels if every cover step raises the level by exactly
    /// one, otherwise the first offending cover.
    pub fn rank_labels(&self) -> RankLabels {
        let levels = self.levels();
        for (lower, upper) in self.cover_pairs() {
            if levels[upper] != levels[lower] + 1 {
                return RankLabels::NotGraded {
                    lower,
                    upper,
                    lower_level: levels[lower],
                    upper_level: levels[upper],
                };
            }
        }
        RankLabels::Graded(levels)
    }

    /// Every interval `[x, y]` with `x < y` has as many even-ranked as
    /// odd-ranked elements.
    pub fn eulerian_verdict(&self) -> EulerianVerdict {
        let ranks = match self.rank_labels() {
            RankLabels::Graded(r) => r,
            RankLabels::NotGraded { lower, upper, .. } => return EulerianVerdict::NotGraded { lower, upper },
        };
        let mut even_mask = FixedBitSet::with_capacity(self.len());
        for (x, r) in ranks.iter().enumerate() {
            if r % 2 == 0 {
                even_mask.insert(x);
            }
        }
        for x in 0..self.len() {
            for y in self.up[x].ones().filter(|&y| y != x) {
                let mut span = self.up[x].clone();
                span.intersect_with(&self.down[y]);
                let total = span.count_ones(..);
                span.intersect_with(&even_mask);
                let even = span.count_ones(..);
                if 2 * even != total {
                    return EulerianVerdict::Unbalanced {
                        lower: x,
                        upper: y,
                        even,
                        odd: total - even,
                    };
                }
            }
        }
        EulerianVerdict::Eulerian
    }

    pub fn is_eulerian(&self) -> bool {
        self.eulerian_verdict() == EulerianVerdict::Eulerian
    }

    /// The Möbius form of the Eulerian condition:
    /// `μ(x, y) = (-1)^(ρ(y) - ρ(x))` for all `x ≤ y`.
    pub fn is_eulerian_by_mobius(&self) -> bool {
        let RankLabels::Graded(ranks) = self.rank_labels() else {
            return false;
        };
        (0..self.len()).all(|x| {
            let mut mu = vec![0i64; self.len()];
            mu[x] = 1;
            self.up[x].ones().all(|z| {
                if z != x {
                    let mut below = self.down[z].clone();
                    below.intersect_with(&self.up[x]);
                    mu[z] = -below.ones().filter(|&w| w != z).map(|w| mu[w]).sum::<i64>();
                }
                let sign = if (ranks[z] - ranks[x]) % 2 == 0 { 1 } else { -1 };
                mu[z] == sign
            })
        })
    }

    /// The sub-poset `{z : x ≤ z ≤ y}`.
    pub fn interval(&self, x: usize, y: usize) -> Result<Lattice> {
        if !self.leq(x, y) {
            return Err(Error::IncomparableEndpoints);
        }
        let mut span = self.up[x].clone();
        span.intersect_with(&self.down[y]);
        let graphs = span.ones().map(|z| self.elements[z].clone()).collect();
        Lattice::from_graphs(self.ground, graphs)
    }

    /// `[0̂, g]` for a graph `g` of the lattice.
    pub fn interval_below(&self, g: &Graph) -> Result<Lattice> {
        let y = self.index_of(g).ok_or(Error::NotAnElement)?;
        self.interval(self.bottom(), y)
    }

    /// Searches for an `N5` sublattice, preferring one whose five relations
    /// are all covers (such a pentagon has maximal chains of lengths 2 and 3
    /// between the same endpoints, so the lattice is not graded).
    pub fn find_pentagon(&self) -> Option<Pentagon> {
        self.find_cover_pentagon().or_else(|| self.find_any_pentagon())
    }

    /// An `N5` with `bottom ⋖ a ⋖ top` and `bottom ⋖ c1 ⋖ c2 ⋖ top`.
    pub fn find_cover_pentagon(&self) -> Option<Pentagon> {
        for bottom in 0..self.len() {
            for &a in &self.upper_covers[bottom] {
                for &c1 in &self.upper_covers[bottom] {
                    if c1 == a {
                        continue;
                    }
                    for &c2 in &self.upper_covers[c1] {
                        for &top in &self.upper_covers[a] {
                            let p = Pentagon { bottom, a, c1, c2, top };
                            if self.lower_covers[top].contains(&c2) && self.is_pentagon(&p) {
                                return Some(p);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn find_any_pentagon(&self) -> Option<Pentagon> {
        for a in 0..self.len() {
            for c2 in 0..self.len() {
                if self.leq(a, c2) || self.leq(c2, a) {
                    continue;
                }
                let (Ok(bottom), Ok(top)) = (self.meet(a, c2), self.join(a, c2)) else {
                    continue;
                };
                // any b < c1 < c2 is incomparable to a and meets it in b;
                // the pentagon closes when a ∨ c1 is already the top
                let mut between = self.up[bottom].clone();
                between.intersect_with(&self.down[c2]);
                for c1 in between.ones().filter(|&c| c != bottom && c != c2) {
                    if self.join(a, c1).ok() == Some(top) {
                        return Some(Pentagon { bottom, a, c1, c2, top });
                    }
                }
            }
        }
        None
    }

    /// Whether all five relations of `p` are cover relations.
    pub fn is_cover_pentagon(&self, p: &Pentagon) -> bool {
        let covers = |x: usize, y: usize| self.lower_covers[y].contains(&x);
        self.is_pentagon(p)
            && covers(p.bottom, p.a)
            && covers(p.a, p.top)
            && covers(p.bottom, p.c1)
            && covers(p.c1, p.c2)
            && covers(p.c2, p.top)
    }

    /// Checks the defining relations of an `N5` on five indices.
    pub fn is_pentagon(&self, p: &Pentagon) -> bool {
        let lt = |x: usize, y: usize| x != y && self.leq(x, y);
        let incomparable = |x: usize, y: usize| !self.leq(x, y) && !self.leq(y, x);
        lt(p.bottom, p.a)
            && lt(p.a, p.top)
            && lt(p.bottom, p.c1)
            && lt(p.c1, p.c2)
            && lt(p.c2, p.top)
            && incomparable(p.a, p.c1)
            && incomparable(p.a, p.c2)
            && self.join(p.a, p.c1).ok() == Some(p.top)
            && self.meet(p.a, p.c2).ok() == Some(p.bottom)
    }

    pub fn to_doc(&self) -> LatticeDoc {
        export::to_doc(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("lattice documents serialize")
    }

    pub fn to_dot(&self) -> String {
        export::to_dot(self)
    }
}
