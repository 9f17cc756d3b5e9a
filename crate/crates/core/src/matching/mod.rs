//! Perfect matchings: existence, enumeration, exact minimum-weight
//! assignment (optionally forcing an edge), and the support graph `G_w`
//! formed by all minimum-weight perfect matchings.

mod assignment;
mod weights;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use weights::{Weight, WeightFunction};

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph, GroundGraph};

/// Whether `g` contains a perfect matching.
///
/// Bipartite grounds use augmenting paths; complete grounds use memoized
/// backtracking over the set of still-unmatched vertices.
pub fn has_perfect_matching(g: &Graph) -> bool {
    match g.ground() {
        GroundGraph::Bipartite { n } => bipartite_matching_size(g, n) == n,
        GroundGraph::Complete { m } => {
            if m % 2 == 1 {
                return false;
            }
            let adj = complete_adjacency(g, m);
            let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
            complete_pm_exists(&adj, all, &mut HashSet::new())
        }
    }
}

fn bipartite_matching_size(g: &Graph, n: usize) -> usize {
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| g.has_edge(i * n + j)).collect())
        .collect();
    let mut match_of_col = vec![usize::MAX; n];
    let mut size = 0;
    for row in 0..n {
        let mut seen = vec![false; n];
        if augment(row, &adj, &mut seen, &mut match_of_col) {
            size += 1;
        }
    }
    size
}

fn augment(row: usize, adj: &[Vec<usize>], seen: &mut [bool], match_of_col: &mut [usize]) -> bool {
    for &col in &adj[row] {
        if seen[col] {
            continue;
        }
        seen[col] = true;
        if match_of_col[col] == usize::MAX || augment(match_of_col[col], adj, seen, match_of_col) {
            match_of_col[col] = row;
            return true;
        }
    }
    false
}

fn complete_adjacency(g: &Graph, m: usize) -> Vec<u64> {
    let mut adj = vec![0u64; m];
    for id in g.edge_ids() {
        let (a, b) = g.ground().vertex_endpoints(id);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn complete_pm_exists(adj: &[u64], free: u64, dead: &mut HashSet<u64>) -> bool {
    if free == 0 {
        return true;
    }
    if dead.contains(&free) {
        return false;
    }
    let u = free.trailing_zeros() as usize;
    let rest = free & !(1 << u);
    let mut options = adj[u] & rest;
    while options != 0 {
        let v = options.trailing_zeros();
        options &= options - 1;
        if complete_pm_exists(adj, rest & !(1 << v), dead) {
            return true;
        }
    }
    dead.insert(free);
    false
}

/// All perfect matchings of `g` in canonical order.
pub fn enumerate_perfect_matchings(g: &Graph) -> Family {
    let ground = g.ground();
    let mut found = Vec::new();
    match ground {
        GroundGraph::Bipartite { n } => {
            let mut used = vec![false; n];
            let mut chosen = Vec::with_capacity(n);
            enumerate_bipartite(g, n, 0, &mut used, &mut chosen, &mut found);
        }
        GroundGraph::Complete { m } => {
            if m % 2 == 0 {
                let adj = complete_adjacency(g, m);
                let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
                let mut chosen = Vec::with_capacity(m / 2);
                enumerate_complete(ground, &adj, all, &mut chosen, &mut found);
            }
        }
    }
    let mut graphs: Vec<Graph> = found.into_iter().map(|ids| Graph::from_edge_ids(ground, ids)).collect();
    graphs.sort();
    Family::new(ground, graphs).expect("matchings share the ground")
}

fn enumerate_bipartite(
    g: &Graph,
    n: usize,
    row: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if row == n {
        out.push(chosen.clone());
        return;
    }
    for col in 0..n {
        let id = row * n + col;
        if used[col] || !g.has_edge(id) {
            continue;
        }
        used[col] = true;
        chosen.push(id);
        enumerate_bipartite(g, n, row + 1, used, chosen, out);
        chosen.pop();
        used[col] = false;
    }
}

fn enumerate_complete(ground: GroundGraph, adj: &[u64], free: u64, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if free == 0 {
        out.push(chosen.clone());
        return;
    }
    let u = free.trailing_zeros() as usize;
    let rest = free & !(1 << u);
    let mut options = adj[u] & rest;
    while options != 0 {
        let v = options.trailing_zeros() as usize;
        options &= options - 1;
        let id = ground.edge_index(u + 1, v + 1).expect("adjacent vertices form an edge");
        chosen.push(id);
        enumerate_complete(ground, adj, rest & !(1 << v), chosen, out);
        chosen.pop();
    }
}

/// Cost matrix scaled to exact integers, narrowed to `i128` when safe.
#[derive(Debug, Clone)]
enum ScaledCosts {
    Narrow(Vec<i128>),
    Wide(Vec<BigInt>),
}

/// Reusable exact assignment solver for one weight function.
///
/// All weights are multiplied by the lcm of their denominators, so optima are
/// compared as integers and converted back to [`Weight`] only at the surface.
#[derive(Debug, Clone)]
pub struct AssignmentSolver {
    ground: GroundGraph,
    scale: BigInt,
    costs: ScaledCosts,
}

/// Headroom for potentials and partial sums inside the `i128` path.
const NARROW_COST_BITS: u64 = 96;

impl AssignmentSolver {
    pub fn new(w: &WeightFunction) -> Self {
        let (scale, costs) = w.scaled_integers();
        let n = w.n() as u64;
        let max_bits = costs.iter().map(BigInt::bits).max().unwrap_or(0);
        let costs = if max_bits + 2 * (64 - n.leading_zeros() as u64) + 2 <= NARROW_COST_BITS {
            ScaledCosts::Narrow(costs.iter().map(|c| c.to_i128().expect("fits by bit count")).collect())
        } else {
            ScaledCosts::Wide(costs)
        };
        AssignmentSolver {
            ground: w.ground(),
            scale,
            costs,
        }
    }

    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    fn n(&self) -> usize {
        self.ground.size()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        self.ground.check_same(&g.ground())
    }

    /// Scaled optimum over perfect matchings inside `edges`, optionally with
    /// one row and one column deleted. Returns the assignment as edge ids.
    fn optimum(&self, edges: &EdgeSet, deleted: Option<(usize, usize)>) -> Option<(BigInt, Vec<usize>)> {
        let n = self.n();
        let rows: Vec<usize> = (0..n).filter(|&r| deleted.is_none_or(|(dr, _)| dr != r)).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| deleted.is_none_or(|(_, dc)| dc != c)).collect();
        let k = rows.len();
        let id = |r: usize, c: usize| rows[r] * n + cols[c];
        let (total, assignment) = match &self.costs {
            ScaledCosts::Narrow(costs) => {
                let (t, a) = assignment::solve(k, |r, c| {
                    let e = id(r, c);
                    edges.contains(e).then(|| costs[e])
                })?;
                (BigInt::from(t), a)
            }
            ScaledCosts::Wide(costs) => assignment::solve(k, |r, c| {
                let e = id(r, c);
                edges.contains(e).then(|| costs[e].clone())
            })?,
        };
        let ids = assignment.iter().enumerate().map(|(r, &c)| id(r, c)).collect();
        Some((total, ids))
    }

    fn scaled_cost(&self, e: usize) -> BigInt {
        match &self.costs {
            ScaledCosts::Narrow(c) => BigInt::from(c[e]),
            ScaledCosts::Wide(c) => c[e].clone(),
        }
    }

    fn unscale(&self, scaled: BigInt) -> Weight {
        Weight::new(BigRational::new(scaled, self.scale.clone())).expect("weights are non-negative")
    }

    pub(crate) fn min_scaled(&self, g: &Graph) -> Option<BigInt> {
        self.optimum(g.edges(), None).map(|(t, _)| t)
    }

    pub(crate) fn min_scaled_forced(&self, g: &Graph, e: usize) -> Option<BigInt> {
        self.forced_optimum(g, e).map(|(t, _)| t)
    }

    /// Scaled optimum with `e` forced, and the edge ids of an optimal matching
    /// (including `e`).
    pub(crate) fn forced_optimum(&self, g: &Graph, e: usize) -> Option<(BigInt, Vec<usize>)> {
        let (i, j) = self.ground.endpoints(e);
        let (rest, mut ids) = self.optimum(g.edges(), Some((i - 1, j - 1)))?;
        ids.push(e);
        Some((rest + self.scaled_cost(e), ids))
    }

    /// Exact minimum of `w(M)` over perfect matchings `M ⊆ g`.
    pub fn min_weight(&self, g: &Graph) -> Result<Weight> {
        self.check(g)?;
        self.min_scaled(g).map(|s| self.unscale(s)).ok_or(Error::Infeasible)
    }

    /// A minimum-weight perfect matching of `g` together with its weight.
    pub fn min_weight_matching(&self, g: &Graph) -> Result<(Weight, Graph)> {
        self.check(g)?;
        let (total, ids) = self.optimum(g.edges(), None).ok_or(Error::Infeasible)?;
        Ok((self.unscale(total), Graph::from_edge_ids(self.ground, ids)))
    }

    /// Minimum of `w(M)` over perfect matchings `M ⊆ g` that contain edge `e`.
    pub fn min_weight_forced(&self, g: &Graph, e: usize) -> Result<Weight> {
        self.check(g)?;
        if !g.has_edge(e) {
            return Err(Error::EdgeNotInGraph(e));
        }
        self.min_scaled_forced(g, e)
            .map(|s| self.unscale(s))
            .ok_or(Error::Infeasible)
    }

    /// `G_w`: edges lying in at least one minimum-weight perfect matching of
    /// the full ground.
    pub fn support_union(&self) -> Graph {
        let full = self.ground.full_graph();
        let best = self
            .min_scaled(&full)
            .expect("complete bipartite graphs have perfect matchings");
        let ids: Vec<usize> = (0..self.ground.edge_count())
            .filter(|&e| self.min_scaled_forced(&full, e).as_ref() == Some(&best))
            .collect();
        Graph::from_edge_ids(self.ground, ids)
    }
}

fn bipartite_ground(g: &Graph, w: &WeightFunction) -> Result<()> {
    if !g.ground().is_bipartite() {
        return Err(Error::NotBipartite(g.ground()));
    }
    w.ground().check_same(&g.ground())
}

/// Exact minimum weight of a perfect matching of `g`.
pub fn min_weight(g: &Graph, w: &WeightFunction) -> Result<Weight> {
    bipartite_ground(g, w)?;
    AssignmentSolver::new(w).min_weight(g)
}

/// Exact minimum weight of a perfect matching of `g` that uses edge `e`.
pub fn min_weight_forced(g: &Graph, w: &WeightFunction, e: usize) -> Result<Weight> {
    bipartite_ground(g, w)?;
    AssignmentSolver::new(w).min_weight_forced(g, e)
}

/// Union of all minimum-weight perfect matchings of `K_{n,n}` under `w`.
pub fn support_union(w: &WeightFunction) -> Graph {
    AssignmentSolver::new(w).support_union()
}

/// The family of minimum-weight perfect matchings of `K_{n,n}` under `w`.
pub fn enumerate_min_weight_pms(w: &WeightFunction) -> Family {
    let solver = AssignmentSolver::new(w);
    let full = w.ground().full_graph();
    let best = solver
        .min_weight(&full)
        .expect("complete bipartite graphs have perfect matchings");
    let support = solver.support_union();
    enumerate_perfect_matchings(&support).filter(|m| weights::total_of(w, m.edges()) == best)
}
