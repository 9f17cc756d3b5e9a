use num_bigint::BigInt;
use rayon::prelude::*;

use super::MultilinearPolynomial;
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, GroundGraph};

/// Default bound on ground edges for exhaustive truth tables (65536 points).
pub const TRANSFORM_BIT_CAP: usize = 16;

/// The unique multilinear polynomial agreeing with `oracle` on every 0/1
/// point of the ground's edge variables.
///
/// Evaluates the full truth table, then applies the fast subset Möbius
/// transform, giving `coeff(S) = Σ_{T ⊆ S} (-1)^{|S|-|T|} oracle(T)`.
/// Refuses grounds with more than `cap` edges (`cap` itself is limited to 30).
pub fn truth_table_transform(
    ground: GroundGraph,
    oracle: impl Fn(&Graph) -> bool + Sync,
    cap: usize,
) -> Result<MultilinearPolynomial> {
    let bits = ground.edge_count();
    let hard_cap = cap.min(30);
    if bits > hard_cap {
        return Err(Error::CapExceeded {
            what: "truth-table width",
            value: bits,
            cap: hard_cap,
        });
    }
    let mut table: Vec<i64> = (0..1u64 << bits)
        .into_par_iter()
        .map(|mask| oracle(&Graph::new(ground, EdgeSet::from_mask(bits, mask))) as i64)
        .collect();
    for b in 0..bits {
        let step = 1usize << b;
        for mask in 0..table.len() {
            if mask & step != 0 {
                table[mask] -= table[mask ^ step];
            }
        }
    }
    let terms = table.into_iter().enumerate().filter(|&(_, c)| c != 0).map(|(mask, c)| {
        (
            Graph::new(ground, EdgeSet::from_mask(bits, mask as u64)),
            BigInt::from(c),
        )
    });
    MultilinearPolynomial::from_terms(ground, terms)
}
