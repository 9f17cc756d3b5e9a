use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::MultilinearPolynomial;
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A point where a polynomial disagrees with its Boolean oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub assignment: Graph,
    pub polynomial: BigInt,
    pub oracle: bool,
}

fn check(poly: &MultilinearPolynomial, oracle: &(impl Fn(&Graph) -> bool + Sync), x: Graph) -> Option<Mismatch> {
    let value = poly.evaluate_edges(x.edges());
    let expected = oracle(&x);
    (value != BigInt::from(expected as u8)).then_some(Mismatch {
        assignment: x,
        polynomial: value,
        oracle: expected,
    })
}

/// Compares `poly` with `oracle` on every 0/1 point. Returns the first
/// mismatch in mask order.
pub fn verify_exhaustive(
    poly: &MultilinearPolynomial,
    oracle: impl Fn(&Graph) -> bool + Sync,
    cap_bits: usize,
) -> Result<Option<Mismatch>> {
    let ground = poly.ground();
    let bits = ground.edge_count();
    let hard_cap = cap_bits.min(30);
    if bits > hard_cap {
        return Err(Error::CapExceeded {
            what: "exhaustive verification width",
            value: bits,
            cap: hard_cap,
        });
    }
    Ok((0..1u64 << bits)
        .into_par_iter()
        .map(|mask| check(poly, &oracle, Graph::new(ground, EdgeSet::from_mask(bits, mask))))
        .find_first(Option::is_some)
        .flatten())
}

/// Compares `poly` with `oracle` on `samples` uniformly random points drawn
/// from a ChaCha8 stream seeded with `seed`. Returns the first mismatch in
/// sample order.
pub fn verify_sampled(
    poly: &MultilinearPolynomial,
    oracle: impl Fn(&Graph) -> bool + Sync,
    samples: usize,
    seed: u64,
) -> Option<Mismatch> {
    let ground = poly.ground();
    let bits = ground.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Graph> = (0..samples)
        .map(|_| Graph::from_edge_ids(ground, (0..bits).filter(|_| rng.random::<bool>()).collect::<Vec<_>>()))
        .collect();
    points
        .into_par_iter()
        .map(|x| check(poly, &oracle, x))
        .find_first(Option::is_some)
        .flatten()
}
