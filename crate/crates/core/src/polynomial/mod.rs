//! Multilinear membership polynomials.
//!
//! Three independent construction paths produce the same polynomial for a
//! matching family and are cross-checked in the tests:
//!
//! * the sign formula `(-1)^χ(G)` over covered graphs ([`pm_polynomial`],
//!   [`min_weight_pm_polynomial`]);
//! * the Möbius formula `-μ(0̂, G)` over the covering lattice of any family
//!   ([`membership_polynomial_general`]);
//! * inversion of the full truth table over the subset lattice
//!   ([`truth_table_transform`]).

mod format;
mod transform;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use format::{PolynomialDoc, TermDoc};
pub use transform::{truth_table_transform, TRANSFORM_BIT_CAP};
pub use verify::{verify_exhaustive, verify_sampled, Mismatch};

use crate::covered::{covered_closure, CoveredSet};
use crate::edge_set::EdgeSet;
use crate::error::Result;
use crate::graph::{Family, Graph, GroundGraph};
use crate::lattice::Lattice;
use crate::matching::{enumerate_min_weight_pms, enumerate_perfect_matchings, AssignmentSolver, WeightFunction};

/// One monomial with its coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub monomial: Graph,
    pub coeff: BigInt,
}

/// Integer multilinear polynomial in the edge variables of a ground graph.
///
/// Terms are kept in canonical (degree, lexicographic) order and zero
/// coefficients are never stored.
#[derive(Clone)]
pub struct MultilinearPolynomial {
    ground: GroundGraph,
    terms: Vec<Term>,
    // masks and machine-sized coefficients for grounds with at most 64 edges
    packed: Option<(Vec<u64>, Vec<i64>)>,
}

impl MultilinearPolynomial {
    /// Sums coefficients of repeated monomials and drops zeros.
    pub fn from_terms(ground: GroundGraph, terms: impl IntoIterator<Item = (Graph, BigInt)>) -> Result<Self> {
        let mut acc: BTreeMap<EdgeSet, BigInt> = BTreeMap::new();
        for (g, c) in terms {
            ground.check_same(&g.ground())?;
            *acc.entry(g.into_edges()).or_insert_with(BigInt::zero) += c;
        }
        let terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, coeff)| Term {
                monomial: Graph::new(ground, e),
                coeff,
            })
            .collect();
        let packed = if ground.edge_count() <= 64 {
            terms
                .iter()
                .map(|t| t.coeff.to_i64().map(|c| (t.monomial.edges().to_mask(), c)))
                .collect::<Option<Vec<_>>>()
                .map(|pairs| pairs.into_iter().unzip())
        } else {
            None
        };
        Ok(MultilinearPolynomial { ground, terms, packed })
    }

    pub fn zero(ground: GroundGraph) -> Self {
        MultilinearPolynomial {
            ground,
            terms: Vec::new(),
            packed: Some((Vec::new(), Vec::new())),
        }
    }

    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial `m_g` (zero when absent).
    pub fn coefficient(&self, g: &Graph) -> BigInt {
        self.terms
            .binary_search_by(|t| t.monomial.cmp(g))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_default()
    }

    /// Value at the 0/1 point whose ones are the edges of `x`.
    pub fn evaluate(&self, x: &Graph) -> Result<BigInt> {
        self.ground.check_same(&x.ground())?;
        Ok(self.evaluate_edges(x.edges()))
    }

    pub(crate) fn evaluate_edges(&self, x: &EdgeSet) -> BigInt {
        if let Some((masks, coeffs)) = &self.packed {
            let point = x.to_mask();
            let sum: i128 = masks
                .iter()
                .zip(coeffs)
                .filter(|(&m, _)| m & !point == 0)
                .map(|(_, &c)| c as i128)
                .sum();
            return BigInt::from(sum);
        }
        self.terms
            .iter()
            .filter(|t| t.monomial.edges().is_subset(x))
            .map(|t| &t.coeff)
            .sum()
    }

    /// `+c x[u,v] ...` per line, canonical order.
    pub fn to_text(&self) -> String {
        format::to_text(self)
    }

    /// Parses the text form for a known ground.
    pub fn parse_text(ground: GroundGraph, text: &str) -> Result<Self> {
        format::parse_text(ground, text)
    }

    pub fn to_doc(&self) -> PolynomialDoc {
        format::to_doc(self)
    }

    pub fn from_doc(doc: &PolynomialDoc) -> Result<Self> {
        format::from_doc(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("polynomial documents serialize")
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        format::parse_json(text)
    }
}

impl PartialEq for MultilinearPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.terms == other.terms
    }
}

impl Eq for MultilinearPolynomial {}

impl fmt::Debug for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPolynomial[{}] {{\n{}}}", self.ground, self.to_text())
    }
}

/// `f_F(g)`: whether some member of `family` is a subgraph of `g`.
pub fn membership_oracle(family: &Family, g: &Graph) -> Result<bool> {
    family.ground().check_same(&g.ground())?;
    Ok(family.iter().any(|m| m.edges().is_subset(g.edges())))
}

/// Membership in the family of minimum-weight perfect matchings, decided by
/// comparing the optimum inside `g` with the global optimum.
#[derive(Debug, Clone)]
pub struct MinWeightMembership {
    solver: AssignmentSolver,
    optimum: BigInt,
}

impl MinWeightMembership {
    pub fn new(w: &WeightFunction) -> Self {
        let solver = AssignmentSolver::new(w);
        let optimum = solver
            .min_scaled(&w.ground().full_graph())
            .expect("complete bipartite graphs have perfect matchings");
        MinWeightMembership { solver, optimum }
    }

    pub fn contains_min_weight_pm(&self, g: &Graph) -> bool {
        g.ground() == self.solver.ground() && self.solver.min_scaled(g).as_ref() == Some(&self.optimum)
    }
}

/// Any family: coefficient `-μ(0̂, G)` for each covered `G`.
pub fn membership_polynomial_general(family: &Family) -> Result<MultilinearPolynomial> {
    let lattice = Lattice::from_family(family)?;
    let terms = lattice
        .elements()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(x, g)| (g.clone(), BigInt::from(-lattice.mobius(x))));
    MultilinearPolynomial::from_terms(family.ground(), terms)
}

/// Coefficient `(-1)^χ(G)` over the covered graphs.
pub fn signed_cyclomatic_polynomial(covered: &CoveredSet) -> Result<MultilinearPolynomial> {
    let terms = covered.iter().map(|g| {
        let sign = if g.cyclomatic_number() % 2 == 0 { 1 } else { -1 };
        (g.clone(), BigInt::from(sign))
    });
    MultilinearPolynomial::from_terms(covered.ground(), terms)
}

/// The perfect-matching polynomial of `K_{n,n}`.
pub fn pm_polynomial(n: usize) -> Result<MultilinearPolynomial> {
    let ground = GroundGraph::bipartite(n)?;
    signed_cyclomatic_polynomial(&covered_closure(&enumerate_perfect_matchings(&ground.full_graph()))?)
}

/// The minimum-weight perfect-matching polynomial of `K_{n,n}` under `w`.
pub fn min_weight_pm_polynomial(w: &WeightFunction) -> Result<MultilinearPolynomial> {
    signed_cyclomatic_polynomial(&covered_closure(&enumerate_min_weight_pms(w))?)
}
