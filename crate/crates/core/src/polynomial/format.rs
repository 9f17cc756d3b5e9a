use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::MultilinearPolynomial;
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{content_lines, Graph, GroundGraph};

/// JSON form: `{"ground": {...}, "terms": [{"coeff": c, "edges": [[i, j], ...]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub ground: GroundGraph,
    pub terms: Vec<TermDoc>,
}

/// `coeff` is a JSON integer, or a decimal string when it exceeds 64 bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: Value,
    pub edges: Vec<[usize; 2]>,
}

fn format_coeff(c: &BigInt) -> String {
    if c.is_positive() {
        format!("+{c}")
    } else {
        c.to_string()
    }
}

pub(super) fn to_text(p: &MultilinearPolynomial) -> String {
    let mut out = String::new();
    for t in p.terms() {
        out.push_str(&format_coeff(&t.coeff));
        for (u, v) in t.monomial.pairs() {
            out.push_str(&format!(" x[{u},{v}]"));
        }
        out.push('\n');
    }
    out
}

fn parse_variable(ground: GroundGraph, token: &str) -> std::result::Result<usize, String> {
    let inner = token
        .strip_prefix("x[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected `x[u,v]`, got `{token}`"))?;
    let (u, v) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected `x[u,v]`, got `{token}`"))?;
    let u: usize = u.trim().parse().map_err(|_| format!("bad vertex in `{token}`"))?;
    let v: usize = v.trim().parse().map_err(|_| format!("bad vertex in `{token}`"))?;
    ground.edge_index(u, v).map_err(|e| e.to_string())
}

pub(super) fn parse_text(ground: GroundGraph, text: &str) -> Result<MultilinearPolynomial> {
    let mut terms = Vec::new();
    for (no, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let coeff_token = tokens.next().expect("content lines are nonempty");
        let coeff: BigInt = coeff_token
            .strip_prefix('+')
            .unwrap_or(coeff_token)
            .parse()
            .map_err(|_| Error::parse(no, format!("bad coefficient `{coeff_token}`")))?;
        let mut edges = EdgeSet::empty(ground.edge_count());
        for token in tokens {
            let id = parse_variable(ground, token).map_err(|msg| Error::parse(no, msg))?;
            if edges.contains(id) {
                return Err(Error::parse(no, format!("repeated variable `{token}`")));
            }
            edges.insert(id);
        }
        terms.push((Graph::new(ground, edges), coeff));
    }
    MultilinearPolynomial::from_terms(ground, terms)
}

pub(super) fn to_doc(p: &MultilinearPolynomial) -> PolynomialDoc {
    let terms = p
        .terms()
        .iter()
        .map(|t| TermDoc {
            coeff: match t.coeff.to_i64() {
                Some(c) => Value::from(c),
                None => Value::from(t.coeff.to_string()),
            },
            edges: t.monomial.pairs().into_iter().map(|(u, v)| [u, v]).collect(),
        })
        .collect();
    PolynomialDoc {
        ground: p.ground(),
        terms,
    }
}

pub(super) fn from_doc(doc: &PolynomialDoc) -> Result<MultilinearPolynomial> {
    let ground = doc.ground;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.iter().enumerate() {
        let bad = |msg: String| Error::parse(i + 1, format!("term {}: {msg}", i + 1));
        let coeff: BigInt = match &t.coeff {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| bad(format!("non-integer coefficient {n}")))?,
            Value::String(s) => s.parse().map_err(|_| bad(format!("bad coefficient `{s}`")))?,
            other => return Err(bad(format!("bad coefficient {other}"))),
        };
        let mut edges = EdgeSet::empty(ground.edge_count());
        for &[u, v] in &t.edges {
            let id = ground.edge_index(u, v).map_err(|e| bad(e.to_string()))?;
            if edges.contains(id) {
                return Err(bad(format!("repeated edge [{u}, {v}]")));
            }
            edges.insert(id);
        }
        terms.push((Graph::new(ground, edges), coeff));
    }
    MultilinearPolynomial::from_terms(ground, terms)
}

pub(super) fn parse_json(text: &str) -> Result<MultilinearPolynomial> {
    let doc: PolynomialDoc = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    from_doc(&doc)
}
