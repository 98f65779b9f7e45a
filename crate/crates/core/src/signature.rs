//! Flip signatures: which endpoint of each zero-degree edge a vertex
//! order places in the `|x| < 1` role. Orders with equal signatures give
//! equal integrals, so the `n!` orders collapse into at most
//! `2^(#zero-degree edges)` classes.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{BranchType, FeynmanGraph};
use crate::polyarith::Integer;

pub const LOOP_ENTRY: i64 = -2;
/// Zero-degree edge whose first endpoint precedes its second.
pub const FORWARD_ENTRY: i64 = -1;
/// Zero-degree edge whose first endpoint follows its second.
pub const BACKWARD_ENTRY: i64 = 0;

/// Largest flippable vertex set whose orders are enumerated.
pub const MAX_FLIPPABLE_VERTICES: usize = 10;

/// A permutation of (a subset of) the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    order: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl VertexOrder {
    /// `order` lists 0-based vertices, earliest first.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let size = order.iter().max().map_or(0, |&m| m + 1);
        let mut position = vec![None; size];
        for (i, &v) in order.iter().enumerate() {
            if position[v].replace(i).is_some() {
                return Err(Error::Parse(format!("vertex {} repeated in order", v + 1)));
            }
        }
        Ok(Self { order, position })
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.position.get(v).copied().flatten()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.order
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipSignature(pub Vec<i64>);

impl FlipSignature {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

/// Signature -> multiplicity, in a deterministic order.
pub type SignatureTable = BTreeMap<FlipSignature, Integer>;

pub fn flip_signature(g: &FeynmanGraph, omega: &VertexOrder, a: &BranchType) -> Result<FlipSignature> {
    check_len(g, a)?;
    let mut entries = Vec::with_capacity(g.edge_count());
    for (&(u, v), &deg) in g.edges().iter().zip(a.degrees()) {
        let entry = if u == v {
            LOOP_ENTRY
        } else if deg > 0 {
            deg as i64
        } else {
            let pu = omega.position(u).ok_or(Error::MissingVertex(u + 1))?;
            let pv = omega.position(v).ok_or(Error::MissingVertex(v + 1))?;
            if pu < pv {
                FORWARD_ENTRY
            } else {
                BACKWARD_ENTRY
            }
        };
        entries.push(entry);
    }
    Ok(FlipSignature(entries))
}

/// Vertices incident to a zero-degree non-loop edge, ascending.
pub fn flippable_vertices(g: &FeynmanGraph, a: &BranchType) -> Vec<usize> {
    let mut vs: Vec<usize> = g
        .edges()
        .iter()
        .zip(a.degrees())
        .filter(|(&(u, v), &d)| u != v && d == 0)
        .flat_map(|(&(u, v), _)| [u, v])
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Tallies signatures over all orders of the flippable vertices and
/// scales by `n! / |V|!` to account for all orders of the full vertex set.
pub fn signature_and_multiplicities(g: &FeynmanGraph, a: &BranchType) -> Result<SignatureTable> {
    check_len(g, a)?;
    let flippable = flippable_vertices(g, a);
    let mut table = SignatureTable::new();
    let k = flippable.len();
    if k > MAX_FLIPPABLE_VERTICES {
        return Err(Error::SizeLimit(format!(
            "{k} flippable vertices exceed the enumeration limit {MAX_FLIPPABLE_VERTICES}"
        )));
    }
    for perm in flippable.iter().copied().permutations(k) {
        let omega = VertexOrder::new(perm)?;
        *table.entry(flip_signature(g, &omega, a)?).or_insert_with(|| BigInt::from(0)) += 1;
    }
    let scale = factorial(g.vertex_count()) / factorial(k);
    for m in table.values_mut() {
        *m *= &scale;
    }
    Ok(table)
}

pub fn factorial(n: usize) -> Integer {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn check_len(g: &FeynmanGraph, a: &BranchType) -> Result<()> {
    if a.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            what: "branch type",
            expected: g.edge_count(),
            got: a.len(),
        });
    }
    Ok(())
}
