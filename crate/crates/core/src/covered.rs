//! Covered subgraphs: unions of nonempty subsets of a family, and the
//! polynomial-time coefficient query for minimum-weight perfect matchings.
//!
//! The empty graph is never a member of a [`CoveredSet`]; it only appears as
//! the bottom element added by the lattice.

use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph, GroundGraph};
use crate::matching::{AssignmentSolver, WeightFunction};

/// Deduplicated covered graphs of a family, in canonical order.
#[derive(Debug, Clone)]
pub struct CoveredSet {
    ground: GroundGraph,
    family: Family,
    graphs: Vec<Graph>,
}

impl CoveredSet {
    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.graphs.binary_search(g).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Graph> {
        self.graphs.iter()
    }

    /// Restricts to the covered graphs contained in `bound`.
    pub fn below(&self, bound: &Graph) -> Vec<Graph> {
        self.graphs
            .iter()
            .filter(|g| g.edges().is_subset(bound.edges()))
            .cloned()
            .collect()
    }

    /// Export form: a `<ground> count <k>` header, then one graph per line as
    /// space-separated `u,v` pairs.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} count {}\n", self.ground, self.graphs.len());
        for g in &self.graphs {
            out.push_str(&g.to_pair_list());
            out.push('\n');
        }
        out
    }
}

/// All distinct unions of nonempty subsets of `family`.
///
/// Breadth-first closure: each round unions the newly found graphs with every
/// family member, so the work is proportional to the output size times the
/// family size rather than `2^|family|`.
pub fn covered_closure(family: &Family) -> Result<CoveredSet> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let members: Vec<&EdgeSet> = family.iter().map(Graph::edges).filter(|e| !e.is_empty()).collect();
    let mut seen: HashSet<EdgeSet> = members.iter().map(|&e| e.clone()).collect();
    let mut frontier: Vec<EdgeSet> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let candidates: Vec<EdgeSet> = frontier
            .par_iter()
            .flat_map_iter(|g| members.iter().filter(move |m| !m.is_subset(g)).map(move |m| g.union(m)))
            .collect();
        frontier = candidates.into_iter().filter(|c| seen.insert(c.clone())).collect();
    }
    let ground = family.ground();
    let mut graphs: Vec<Graph> = seen.into_iter().map(|e| Graph::new(ground, e)).collect();
    graphs.sort();
    Ok(CoveredSet {
        ground,
        family: family.clone(),
        graphs,
    })
}

/// Whether `g` is the union of some nonempty subset of `family`.
///
/// Tests the maximal candidate subset `{M ∈ F : M ⊆ G}`; unions only grow,
/// so `g` is covered iff that subset's union is exactly `g`.
pub fn is_covered(g: &Graph, family: &Family) -> Result<bool> {
    g.ground().check_same(&family.ground())?;
    if g.edges().is_empty() {
        return Ok(false);
    }
    let mut union = EdgeSet::empty(g.edges().capacity());
    for m in family {
        if m.edges().is_subset(g.edges()) {
            union.union_with(m.edges());
        }
    }
    Ok(&union == g.edges())
}

/// Answers coefficient queries for the minimum-weight perfect-matching
/// polynomial of one weight function without enumerating covered graphs.
#[derive(Debug, Clone)]
pub struct CoefficientOracle {
    solver: AssignmentSolver,
    optimum: BigInt,
}

impl CoefficientOracle {
    pub fn new(w: &WeightFunction) -> Self {
        let solver = AssignmentSolver::new(w);
        let optimum = solver
            .min_scaled(&w.ground().full_graph())
            .expect("complete bipartite graphs have perfect matchings");
        CoefficientOracle { solver, optimum }
    }

    pub fn ground(&self) -> GroundGraph {
        self.solver.ground()
    }

    /// `g` is covered by minimum-weight perfect matchings iff it is nonempty
    /// and each of its edges lies in a perfect matching of `g` whose weight is
    /// the global optimum.
    pub fn is_covered(&self, g: &Graph) -> Result<bool> {
        self.ground().check_same(&g.ground())?;
        if g.edges().is_empty() {
            return Ok(false);
        }
        let mut verified = EdgeSet::empty(g.edges().capacity());
        for e in g.edge_ids() {
            if verified.contains(e) {
                continue;
            }
            match self.solver.forced_optimum(g, e) {
                Some((total, ids)) if total == self.optimum => {
                    // every edge of an optimal matching inside g is settled
                    for id in ids {
                        verified.insert(id);
                    }
                }
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Coefficient of the monomial `m_g`: `(-1)^χ(g)` if covered, else 0.
    pub fn coefficient(&self, g: &Graph) -> Result<i32> {
        Ok(if self.is_covered(g)? {
            if g.cyclomatic_number() % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            0
        })
    }
}

/// Coefficient of `m_g` in the minimum-weight perfect-matching polynomial of
/// `w` (use [`WeightFunction::unit`] for the unweighted polynomial).
pub fn coefficient_query(g: &Graph, w: &WeightFunction) -> Result<i32> {
    CoefficientOracle::new(w).coefficient(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{enumerate_min_weight_pms, enumerate_perfect_matchings, support_union};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k(n: usize) -> GroundGraph {
        GroundGraph::bipartite(n).unwrap()
    }

    fn pms(n: usize) -> Family {
        enumerate_perfect_matchings(&k(n).full_graph())
    }

    fn all_subgraphs(ground: GroundGraph) -> impl Iterator<Item = Graph> {
        let bits = ground.edge_count();
        (0..1u64 << bits).map(move |mask| Graph::new(ground, EdgeSet::from_mask(bits, mask)))
    }

    #[test]
    fn closure_examples() {
        let c = covered_closure(&pms(2)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.graphs()[2], k(2).full_graph());
        assert_eq!(covered_closure(&pms(3)).unwrap().len() % 2, 1);
        let single = pms(3).filter(|m| m.has_edge(0) && m.has_edge(4));
        let c = covered_closure(&single).unwrap();
        assert_eq!(c.graphs(), single.members());
        assert_eq!(
            covered_closure(&Family::new(k(2), []).unwrap()).unwrap_err(),
            Error::EmptyFamily
        );
    }

    #[test]
    fn closure_is_union_closed_and_contains_members() {
        let family = pms(3);
        let c = covered_closure(&family).unwrap();
        for m in &family {
            assert!(c.contains(m));
        }
        for a in c.iter() {
            for b in c.iter() {
                assert!(c.contains(&a.union(b).unwrap()));
            }
        }
        assert!(c.graphs().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn membership_examples() {
        let family = pms(2);
        assert!(is_covered(&k(2).full_graph(), &family).unwrap());
        let pm_plus = Graph::from_pairs(k(2), &[(1, 1), (2, 2), (1, 2)]).unwrap();
        assert!(!is_covered(&pm_plus, &family).unwrap());
        assert!(!is_covered(&k(2).empty_graph(), &family).unwrap());
        assert!(is_covered(&k(3).full_graph(), &family).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let w = WeightFunction::from_integers(2, &[1, 2, 2, 1]).unwrap();
        let diag = Graph::from_pairs(k(2), &[(1, 1), (2, 2)]).unwrap();
        let anti = Graph::from_pairs(k(2), &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(coefficient_query(&diag, &w).unwrap(), 1);
        assert_eq!(coefficient_query(&anti, &w).unwrap(), 0);
        assert_eq!(
            coefficient_query(&k(2).full_graph(), &WeightFunction::unit(2).unwrap()).unwrap(),
            -1
        );
        assert_eq!(coefficient_query(&k(2).empty_graph(), &w).unwrap(), 0);
    }

    #[test]
    fn export_format() {
        let c = covered_closure(&pms(2)).unwrap();
        assert_eq!(c.to_text(), "bipartite 2 count 3\n1,1 2,2\n1,2 2,1\n1,1 1,2 2,1 2,2\n");
    }

    fn sign(g: &Graph) -> i32 {
        if g.cyclomatic_number() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn query_agrees_with_enumeration_and_hull() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let unweighted = covered_closure(&pms(n)).unwrap();
            assert_eq!(unweighted.len() % 2, 1);
            for round in 0..6 {
                let w = if round == 0 {
                    WeightFunction::unit(n).unwrap()
                } else {
                    WeightFunction::random_integer(n, 1, 4, &mut rng).unwrap()
                };
                let weighted = covered_closure(&enumerate_min_weight_pms(&w)).unwrap();
                assert_eq!(weighted.len() % 2, 1);

                // covered set under w is the matching-covered graphs below G_w
                let hull = unweighted.below(&support_union(&w));
                assert_eq!(weighted.graphs(), &hull[..]);

                let oracle = CoefficientOracle::new(&w);
                for g in all_subgraphs(k(n)) {
                    let want = if weighted.contains(&g) { sign(&g) } else { 0 };
                    assert_eq!(oracle.coefficient(&g).unwrap(), want, "{g:?}");
                }
            }
        }
    }
}
