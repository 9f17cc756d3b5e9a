use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{content_lines, Graph, GroundGraph};

/// Exact non-negative rational weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(BigRational);

impl Weight {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidWeight(format!("{value} is negative")));
        }
        Ok(Weight(value))
    }

    pub fn from_integer(value: u64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn ratio(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidWeight("zero denominator".into()));
        }
        Ok(Weight(BigRational::new(numer.into(), denom.into())))
    }

    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight(&self.0 + &rhs.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts a non-negative integer or a `p/q` fraction.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidWeight(format!("`{s}` is not a non-negative integer or p/q"));
        let parse_int = |t: &str| -> Result<BigInt> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let value = match s.split_once('/') {
            None => BigRational::from_integer(parse_int(s)?),
            Some((p, q)) => {
                let (p, q) = (parse_int(p)?, parse_int(q)?);
                if q.is_zero() {
                    return Err(Error::InvalidWeight(format!("`{s}` has a zero denominator")));
                }
                BigRational::new(p, q)
            }
        };
        Weight::new(value)
    }
}

/// Weight per edge of `K_{n,n}`, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    ground: GroundGraph,
    weights: Vec<Weight>,
}

impl WeightFunction {
    pub fn new(ground: GroundGraph, weights: Vec<Weight>) -> Result<Self> {
        if !ground.is_bipartite() {
            return Err(Error::NotBipartite(ground));
        }
        if weights.len() != ground.edge_count() {
            return Err(Error::InvalidWeight(format!(
                "expected {} weights, got {}",
                ground.edge_count(),
                weights.len()
            )));
        }
        Ok(WeightFunction { ground, weights })
    }

    /// All weights equal to one.
    pub fn unit(n: usize) -> Result<Self> {
        Self::constant(n, Weight::from_integer(1))
    }

    pub fn constant(n: usize, w: Weight) -> Result<Self> {
        let ground = GroundGraph::bipartite(n)?;
        WeightFunction::new(ground, vec![w; ground.edge_count()])
    }

    /// Integer weights in row-major `(i, j)` order.
    pub fn from_integers(n: usize, values: &[u64]) -> Result<Self> {
        let ground = GroundGraph::bipartite(n)?;
        WeightFunction::new(ground, values.iter().map(|&v| Weight::from_integer(v)).collect())
    }

    /// Builds weights from a function of the 1-based pair `(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Weight) -> Result<Self> {
        let ground = GroundGraph::bipartite(n)?;
        let weights = (0..ground.edge_count())
            .map(|id| {
                let (i, j) = ground.endpoints(id);
                f(i, j)
            })
            .collect();
        WeightFunction::new(ground, weights)
    }

    /// Uniform integer weights in `lo..=hi`.
    pub fn random_integer(n: usize, lo: u64, hi: u64, rng: &mut impl Rng) -> Result<Self> {
        Self::from_fn(n, |_, _| Weight::from_integer(rng.random_range(lo..=hi)))
    }

    /// Weights `p/q` with `p` in `0..=max_numer` and `q` in `1..=max_denom`.
    pub fn random_rational(n: usize, max_numer: u64, max_denom: u64, rng: &mut impl Rng) -> Result<Self> {
        if max_denom == 0 {
            return Err(Error::InvalidWeight("zero denominator".into()));
        }
        Self::from_fn(n, |_, _| {
            let p = rng.random_range(0..=max_numer);
            let q = rng.random_range(1..=max_denom);
            Weight::ratio(p, q).expect("positive denominator")
        })
    }

    pub fn ground(&self) -> GroundGraph {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn weight(&self, edge: usize) -> &Weight {
        &self.weights[edge]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Total weight of the edges of `g`.
    pub fn total(&self, g: &Graph) -> Result<Weight> {
        self.ground.check_same(&g.ground())?;
        Ok(total_of(self, g.edges()))
    }

    /// Rescales to integers: returns `(scale, costs)` with
    /// `costs[e] = w(e) * scale` and `scale` the lcm of all denominators.
    pub(crate) fn scaled_integers(&self) -> (BigInt, Vec<BigInt>) {
        let scale = self.weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.0.denom()));
        let costs = self
            .weights
            .iter()
            .map(|w| w.0.numer() * (&scale / w.0.denom()))
            .collect();
        (scale, costs)
    }

    /// Parses the weight file format: `bipartite <n>` then exactly one
    /// `i j w` line per ground edge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first_no, first) = lines.next().ok_or_else(|| Error::parse(1, "missing ground line"))?;
        let ground: GroundGraph = first
            .parse()
            .map_err(|e: Error| Error::parse(first_no, e.to_string()))?;
        if !ground.is_bipartite() {
            return Err(Error::parse(first_no, "weight files require a bipartite ground"));
        }
        let mut slots: Vec<Option<Weight>> = vec![None; ground.edge_count()];
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [i, j, w] = fields[..] else {
                return Err(Error::parse(no, format!("expected `i j w`, got `{line}`")));
            };
            let i: usize = i.parse().map_err(|_| Error::parse(no, format!("bad vertex `{i}`")))?;
            let j: usize = j.parse().map_err(|_| Error::parse(no, format!("bad vertex `{j}`")))?;
            let id = ground.edge_index(i, j).map_err(|e| Error::parse(no, e.to_string()))?;
            let w: Weight = w.parse().map_err(|e: Error| Error::parse(no, e.to_string()))?;
            if slots[id].replace(w).is_some() {
                return Err(Error::parse(no, format!("duplicate weight for ({i}, {j})")));
            }
        }
        let weights = slots
            .into_iter()
            .enumerate()
            .map(|(id, slot)| {
                slot.ok_or_else(|| {
                    let (i, j) = ground.endpoints(id);
                    Error::parse(0, format!("missing weight for ({i}, {j})"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        WeightFunction::new(ground, weights)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.ground);
        for (id, w) in self.weights.iter().enumerate() {
            let (i, j) = self.ground.endpoints(id);
            out.push_str(&format!("{i} {j} {w}\n"));
        }
        out
    }
}

pub(crate) fn total_of(w: &WeightFunction, edges: &EdgeSet) -> Weight {
    let sum = edges.iter().fold(BigRational::zero(), |acc, id| acc + &w.weights[id].0);
    Weight(sum)
}
