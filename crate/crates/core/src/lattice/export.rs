use serde::{Deserialize, Serialize};

use super::{Lattice, RankLabels};
use crate::graph::GroundGraph;

/// JSON form of a lattice: elements by canonical index, covers, μ and ranks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub ground: GroundGraph,
    pub graded: bool,
    pub elements: Vec<LatticeElementDoc>,
    /// `[lower, upper]` index pairs.
    pub covers: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeElementDoc {
    pub index: usize,
    pub edges: Vec<[usize; 2]>,
    /// Longest-chain level from the bottom.
    pub level: usize,
    /// Rank, present only when the lattice is graded.
    pub rank: Option<usize>,
    pub mobius: i64,
}

pub(super) fn to_doc(lattice: &Lattice) -> LatticeDoc {
    let labels = lattice.rank_labels();
    let levels = lattice.levels();
    let elements = lattice
        .elements()
        .iter()
        .enumerate()
        .map(|(index, g)| LatticeElementDoc {
            index,
            edges: g.pairs().into_iter().map(|(u, v)| [u, v]).collect(),
            level: levels[index],
            rank: labels.ranks().map(|r| r[index]),
            mobius: lattice.mobius(index),
        })
        .collect();
    LatticeDoc {
        ground: lattice.ground(),
        graded: matches!(labels, RankLabels::Graded(_)),
        elements,
        covers: lattice.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

/// Hasse diagram, bottom-up, one `rank=same` row per longest-chain level.
pub(super) fn to_dot(lattice: &Lattice) -> String {
    let levels = lattice.levels();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for (x, g) in lattice.elements().iter().enumerate() {
        let label = if g.edge_count() == 0 {
            "0".to_string()
        } else {
            g.to_pair_list()
        };
        out.push_str(&format!("  n{x} [label=\"{label}\\nmu={}\"];\n", lattice.mobius(x)));
    }
    let height = levels.iter().copied().max().unwrap_or(0);
    for level in 0..=height {
        let row: Vec<String> = (0..lattice.len())
            .filter(|&x| levels[x] == level)
            .map(|x| format!("n{x};"))
            .collect();
        out.push_str(&format!("  {{ rank=same; {} }}\n", row.join(" ")));
    }
    for (a, b) in lattice.cover_pairs() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
