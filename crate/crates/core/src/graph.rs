//! Ground graphs, spanning subgraphs, families, and the graph text format.
//!
//! Every [`Graph`] is a spanning subgraph of a fixed [`GroundGraph`]
//! (`K_{n,n}` or `K_m`): its vertex set is always the full ground vertex set
//! and only the edge set varies. Vertices are 1-based in every external
//! format and 0-based internally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};

/// The host graph whose edges index the Boolean variables.
///
/// Serialized as `{"mode": "bipartite" | "complete", "n": <size>}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GroundDoc", into = "GroundDoc")]
pub enum GroundGraph {
    /// `K_{n,n}`; edge `(i, j)` joins left vertex `i` to right vertex `j`.
    Bipartite { n: usize },
    /// `K_m`; edges are unordered pairs `{u, v}`.
    Complete { m: usize },
}

impl GroundGraph {
    pub fn bipartite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGround("bipartite ground needs n >= 1".into()));
        }
        Ok(GroundGraph::Bipartite { n })
    }

    /// `K_m` for `2 <= m <= 64`.
    pub fn complete(m: usize) -> Result<Self> {
        if !(2..=64).contains(&m) {
            return Err(Error::InvalidGround("complete ground needs 2 <= m <= 64".into()));
        }
        Ok(GroundGraph::Complete { m })
    }

    /// The size parameter (`n` or `m`).
    pub fn size(&self) -> usize {
        match *self {
            GroundGraph::Bipartite { n } => n,
            GroundGraph::Complete { m } => m,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, GroundGraph::Bipartite { .. })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            GroundGraph::Bipartite { n } => 2 * n,
            GroundGraph::Complete { m } => m,
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            GroundGraph::Bipartite { n } => n * n,
            GroundGraph::Complete { m } => m * (m - 1) / 2,
        }
    }

    /// Edge id of the 1-based vertex pair `(u, v)`.
    ///
    /// Bipartite: `(i-1)*n + (j-1)`. Complete: lexicographic rank of
    /// `{min, max}` among all pairs.
    pub fn edge_index(&self, u: usize, v: usize) -> Result<usize> {
        let bad = || Error::InvalidVertexPair { ground: *self, u, v };
        match *self {
            GroundGraph::Bipartite { n } => {
                if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                    return Err(bad());
                }
                Ok((u - 1) * n + (v - 1))
            }
            GroundGraph::Complete { m } => {
                if !(1..=m).contains(&u) || !(1..=m).contains(&v) || u == v {
                    return Err(bad());
                }
                let (a, b) = (u.min(v) - 1, u.max(v) - 1);
                Ok(a * m - a * (a + 1) / 2 + (b - a - 1))
            }
        }
    }

    /// 1-based endpoints of an edge id, `(left, right)` or `(min, max)`.
    pub fn endpoints(&self, id: usize) -> (usize, usize) {
        assert!(id < self.edge_count(), "edge id {id} out of range");
        match *self {
            GroundGraph::Bipartite { n } => (id / n + 1, id % n + 1),
            GroundGraph::Complete { m } => {
                let mut base = 0;
                for a in 0..m {
                    let row = m - a - 1;
                    if id < base + row {
                        return (a + 1, a + 2 + (id - base));
                    }
                    base += row;
                }
                unreachable!()
            }
        }
    }

    /// 0-based vertex indices of an edge; right vertices of `K_{n,n}` come
    /// after the left ones.
    pub fn vertex_endpoints(&self, id: usize) -> (usize, usize) {
        let (u, v) = self.endpoints(id);
        match *self {
            GroundGraph::Bipartite { n } => (u - 1, n + v - 1),
            GroundGraph::Complete { .. } => (u - 1, v - 1),
        }
    }

    pub fn empty_graph(&self) -> Graph {
        Graph {
            ground: *self,
            edges: EdgeSet::empty(self.edge_count()),
        }
    }

    pub fn full_graph(&self) -> Graph {
        Graph {
            ground: *self,
            edges: EdgeSet::full(self.edge_count()),
        }
    }

    pub(crate) fn check_same(&self, other: &GroundGraph) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for GroundGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroundGraph::Bipartite { n } => write!(f, "bipartite {n}"),
            GroundGraph::Complete { m } => write!(f, "complete {m}"),
        }
    }
}

impl FromStr for GroundGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let (Some(mode), Some(size), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::InvalidGround(format!("expected `<mode> <size>`, got `{s}`")));
        };
        let size: usize = size
            .parse()
            .map_err(|_| Error::InvalidGround(format!("bad size `{size}`")))?;
        match mode {
            "bipartite" => GroundGraph::bipartite(size),
            "complete" => GroundGraph::complete(size),
            other => Err(Error::InvalidGround(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroundDoc {
    mode: String,
    n: usize,
}

impl From<GroundGraph> for GroundDoc {
    fn from(g: GroundGraph) -> Self {
        let mode = if g.is_bipartite() { "bipartite" } else { "complete" };
        GroundDoc {
            mode: mode.into(),
            n: g.size(),
        }
    }
}

impl TryFrom<GroundDoc> for GroundGraph {
    type Error = Error;

    fn try_from(doc: GroundDoc) -> Result<Self> {
        format!("{} {}", doc.mode, doc.n).parse()
    }
}

/// Spanning subgraph of a ground graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    ground: GroundGraph,
    edges: EdgeSet,
}

impl Graph {
    pub fn new(ground: GroundGraph, edges: EdgeSet) -> Self {
        assert_eq!(
            edges.capacity(),
            ground.edge_count(),
            "edge set sized for another ground"
        );
        Graph { ground, edges }
    }

    pub fn from_edge_ids(ground: GroundGraph, ids: impl IntoIterator<Item = usize>) -> Self {
        Graph::new(ground, EdgeSet::from_ids(ground.edge_count(), ids))
    }

    /// Builds a graph from 1-based vertex pairs.
    pub fn from_pairs(ground: GroundGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(u, v)| ground.edge_index(u, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph::from_edge_ids(ground, ids))
    }

    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, id: usize) -> bool {
        self.edges.contains(id)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter()
    }

    /// 1-based vertex pairs in edge-id order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|id| self.ground.endpoints(id)).collect()
    }

    pub fn with_edge(&self, id: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.insert(id);
        Graph {
            ground: self.ground,
            edges,
        }
    }

    pub fn without_edge(&self, id: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(id);
        Graph {
            ground: self.ground,
            edges,
        }
    }

    /// Connected components of the spanning subgraph; isolated vertices count.
    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.ground.vertex_count());
        for id in self.edges.iter() {
            let (a, b) = self.ground.vertex_endpoints(id);
            dsu.union(a, b);
        }
        dsu.count
    }

    /// `|E| - |V| + C`.
    pub fn cyclomatic_number(&self) -> i64 {
        self.edge_count() as i64 - self.ground.vertex_count() as i64 + self.component_count() as i64
    }

    /// `true` iff `self ⊆ other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> Result<bool> {
        self.ground.check_same(&other.ground)?;
        Ok(self.edges.is_subset(&other.edges))
    }

    pub fn union(&self, other: &Graph) -> Result<Graph> {
        self.ground.check_same(&other.ground)?;
        Ok(Graph {
            ground: self.ground,
            edges: self.edges.union(&other.edges),
        })
    }

    /// Formats the graph in the text format (`<ground>` line then `u v` lines).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.ground);
        for (u, v) in self.pairs() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Compact `u,v u,v ...` form used by set exports.
    pub fn to_pair_list(&self) -> String {
        self.pairs()
            .iter()
            .map(|(u, v)| format!("{u},{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph[{}]{{{}}}", self.ground, self.to_pair_list())
    }
}

/// Union of graphs over `ground`; an empty list yields the empty graph.
pub fn union_graphs(ground: GroundGraph, graphs: &[Graph]) -> Result<Graph> {
    let mut out = ground.empty_graph();
    for g in graphs {
        ground.check_same(&g.ground)?;
        out.edges.union_with(&g.edges);
    }
    Ok(out)
}

/// Ordered list of distinct spanning subgraphs of one ground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    ground: GroundGraph,
    members: Vec<Graph>,
}

impl Family {
    /// Builds a family, dropping repeated members (first occurrence wins).
    pub fn new(ground: GroundGraph, graphs: impl IntoIterator<Item = Graph>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut members = Vec::new();
        for g in graphs {
            ground.check_same(&g.ground)?;
            if seen.insert(g.edges.clone()) {
                members.push(g);
            }
        }
        Ok(Family { ground, members })
    }

    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Graph> {
        self.members.iter()
    }

    /// Keeps the members satisfying `keep`, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&Graph) -> bool) -> Family {
        Family {
            ground: self.ground,
            members: self.members.iter().filter(|g| keep(g)).cloned().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Graph;
    type IntoIter = std::slice::Iter<'a, Graph>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Iterates the meaningful lines of a text file: comments (`#` to end of
/// line) stripped, blank lines skipped. Yields 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses the graph text format.
///
/// First meaningful line is `bipartite <n>` or `complete <m>`, followed by
/// one `u v` edge per line. Repeated edges are rejected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| Error::parse(1, "missing ground line"))?;
    let ground: GroundGraph = first
        .parse()
        .map_err(|e: Error| Error::parse(first_no, e.to_string()))?;
    let mut edges = EdgeSet::empty(ground.edge_count());
    for (no, line) in lines {
        let mut parts = line.split_whitespace();
        let (Some(u), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(no, format!("expected `u v`, got `{line}`")));
        };
        let u: usize = u.parse().map_err(|_| Error::parse(no, format!("bad vertex `{u}`")))?;
        let v: usize = v.parse().map_err(|_| Error::parse(no, format!("bad vertex `{v}`")))?;
        let id = ground.edge_index(u, v).map_err(|e| Error::parse(no, e.to_string()))?;
        if edges.contains(id) {
            return Err(Error::parse(no, format!("duplicate edge ({u}, {v})")));
        }
        edges.insert(id);
    }
    Ok(Graph::new(ground, edges))
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    count: usize,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size).collect(),
            rank: vec![0; size],
            count: size,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.count -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::VecDeque;

    fn k(n: usize) -> GroundGraph {
        GroundGraph::bipartite(n).unwrap()
    }

    #[test]
    fn edge_index_rules() {
        assert_eq!(k(3).edge_index(1, 1).unwrap(), 0);
        assert_eq!(k(3).edge_index(2, 3).unwrap(), 5);
        let k4 = GroundGraph::complete(4).unwrap();
        assert_eq!(k4.edge_index(1, 2).unwrap(), 0);
        assert_eq!(k4.edge_index(2, 1).unwrap(), 0);
        assert!(k(3).edge_index(0, 1).is_err());
        assert!(k(3).edge_index(4, 1).is_err());
        assert!(k4.edge_index(2, 2).is_err());
        assert!(k4.edge_index(1, 5).is_err());
    }

    #[test]
    fn edge_index_is_a_bijection() {
        for ground in [
            k(1),
            k(3),
            k(5),
            GroundGraph::complete(2).unwrap(),
            GroundGraph::complete(7).unwrap(),
        ] {
            let mut seen = vec![false; ground.edge_count()];
            let s = ground.size();
            for u in 1..=s {
                for v in 1..=s {
                    if let Ok(id) = ground.edge_index(u, v) {
                        if !ground.is_bipartite() && u > v {
                            continue;
                        }
                        assert!(!seen[id]);
                        seen[id] = true;
                        assert_eq!(ground.endpoints(id), (u, v));
                    }
                }
            }
            assert!(seen.iter().all(|&b| b), "{ground}");
        }
    }

    #[test]
    fn components_and_cyclomatic() {
        assert_eq!(k(2).empty_graph().component_count(), 4);
        let pm = Graph::from_pairs(k(3), &[(1, 1), (2, 2), (3, 3)]).unwrap();
        assert_eq!(pm.component_count(), 3);
        assert_eq!(pm.cyclomatic_number(), 0);
        assert_eq!(k(2).full_graph().component_count(), 1);
        assert_eq!(k(2).full_graph().cyclomatic_number(), 1);
        assert_eq!(k(3).full_graph().cyclomatic_number(), 4);
    }

    #[test]
    fn subgraph_relation() {
        let m = Graph::from_pairs(k(2), &[(1, 1), (2, 2)]).unwrap();
        assert!(m.is_subgraph_of(&m).unwrap());
        assert!(k(2).empty_graph().is_subgraph_of(&m).unwrap());
        assert!(!k(2).full_graph().is_subgraph_of(&m).unwrap());
        assert!(m.is_subgraph_of(&k(3).full_graph()).is_err());
    }

    #[test]
    fn union_examples() {
        let g = k(2);
        assert_eq!(union_graphs(g, &[]).unwrap(), g.empty_graph());
        let m1 = Graph::from_pairs(g, &[(1, 1), (2, 2)]).unwrap();
        let m2 = Graph::from_pairs(g, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(union_graphs(g, &[m1.clone(), m2]).unwrap(), g.full_graph());
        assert_eq!(union_graphs(g, std::slice::from_ref(&m1)).unwrap(), m1);
        assert!(union_graphs(g, &[k(3).empty_graph()]).is_err());
    }

    #[test]
    fn parse_and_format() {
        let text = "# prism\ncomplete 6\n1 2\n\n2 3 # rung\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.ground(), GroundGraph::complete(6).unwrap());
        assert_eq!(g.pairs(), vec![(1, 2), (2, 3)]);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
        assert!(matches!(
            parse_graph("bipartite 2\n1 1\n1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("bipartite 2\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_graph("tripartite 2\n").is_err());
        assert!(parse_graph("bipartite 0\n").is_err());
        assert!(parse_graph("").is_err());
        assert!(parse_graph("bipartite 2\n1 2 3\n").is_err());
    }

    fn bfs_components(g: &Graph) -> usize {
        let nv = g.ground().vertex_count();
        let mut adj = vec![Vec::new(); nv];
        for id in g.edge_ids() {
            let (a, b) = g.ground().vertex_endpoints(id);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; nv];
        let mut count = 0;
        for s in 0..nv {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        count
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        prop_oneof![
            (1usize..6).prop_map(|n| GroundGraph::bipartite(n).unwrap()),
            (2usize..8).prop_map(|m| GroundGraph::complete(m).unwrap()),
        ]
        .prop_flat_map(|ground| {
            proptest::collection::vec(any::<bool>(), ground.edge_count()).prop_map(move |bits| {
                Graph::from_edge_ids(ground, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn union_find_matches_bfs(g in arb_graph()) {
            prop_assert_eq!(g.component_count(), bfs_components(&g));
        }

        #[test]
        fn cyclomatic_is_nonnegative_and_counts_non_forest_edges(g in arb_graph()) {
            // a spanning forest has |V| - C edges; the rest close cycles
            let forest_edges = g.ground().vertex_count() - bfs_components(&g);
            prop_assert!(g.cyclomatic_number() >= 0);
            prop_assert_eq!(g.cyclomatic_number(), (g.edge_count() - forest_edges) as i64);
        }
    }
}
