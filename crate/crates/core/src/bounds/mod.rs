//! Cut-based and distance-based upper bounds: sparsity, meagerness and the
//! Wiener bound.
//!
//! Sparsity and meagerness are computed by exhaustive enumeration of edge
//! subsets, which is exponential in `|E|`; [`EnumerationCaps`] bounds the
//! work and the functions fail with [`BoundsError::CapExceeded`] instead of
//! approximating.

mod meagerness;
mod mincut;
mod sparsity;
mod wiener;

pub use meagerness::{meagerness, meagerness_min_cut};
pub use sparsity::sparsity;
pub use wiener::{distance_table, wiener_bound, DistanceTable};

use crate::network::{Edge, Network};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{what} enumeration over {size} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("network has no commodities")]
    NoCommodities,
    #[error("operation requires a directed network")]
    NotDirected,
    #[error("operation requires an undirected network")]
    NotUndirected,
    #[error("commodity {0} has disconnected endpoints")]
    Disconnected(String),
    #[error("edge index {0} out of range")]
    UnknownEdge(usize),
    #[error("commodity index {0} out of range")]
    UnknownCommodity(usize),
    #[error("edge capacities are too large or too finely divided for exact cut weights")]
    CapacityRange,
}

/// Limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub sparsity_edges: usize,
    pub meagerness_edges: usize,
    pub commodities: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps { sparsity_edges: 20, meagerness_edges: 16, commodities: 10 }
    }
}

/// An optimal cut and the commodities it accounts for.
///
/// `value == capacity(witness_edges) / witness_commodities.len()` holds
/// exactly; with unit capacities the numerator is the number of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    pub value: Rational,
    /// Indices into `Network::edges`.
    pub witness_edge_indices: Vec<usize>,
    pub witness_edges: Vec<Edge>,
    pub witness_commodities: Vec<String>,
}

impl CutReport {
    fn new(net: &Network, weights: &Weights, edges: Vec<usize>, commodities: Vec<usize>) -> Self {
        debug_assert!(!commodities.is_empty());
        let total: u128 = edges.iter().map(|&e| u128::from(weights.per_edge[e])).sum();
        let value = Rational::new(BigInt::from(total), &weights.scale * BigInt::from(commodities.len()));
        CutReport {
            value,
            witness_edges: edges.iter().map(|&e| net.edges()[e].clone()).collect(),
            witness_edge_indices: edges,
            witness_commodities: commodities.iter().map(|&c| net.commodities()[c].id.clone()).collect(),
        }
    }
}

/// Edge capacities as integers: `c(e) = per_edge[e] / scale`.
pub(crate) struct Weights {
    pub per_edge: Vec<u64>,
    pub scale: BigInt,
}

impl Weights {
    pub(crate) fn new(net: &Network) -> Result<Self, BoundsError> {
        let scale = net.edges().iter().fold(BigInt::from(1), |acc, e| acc.lcm(e.capacity.denom()));
        let per_edge = net
            .edges()
            .iter()
            .map(|e| {
                let w = e.capacity.numer() * (&scale / e.capacity.denom());
                w.to_u64().filter(|&w| w < 1 << 56).ok_or(BoundsError::CapacityRange)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weights { per_edge, scale })
    }

    pub(crate) fn of_mask(&self, mask: u64) -> u64 {
        bits(mask).iter().map(|&e| self.per_edge[e]).sum()
    }
}

/// Adjacency over arcs, keeping the originating edge index so that edge
/// removal can be expressed by index.
pub(crate) struct Adjacency {
    out: Vec<Vec<(usize, usize)>>,
}

impl Adjacency {
    pub(crate) fn new(net: &Network) -> Self {
        let mut out = vec![Vec::new(); net.node_count()];
        for (tail, head, edge) in net.arc_indices() {
            out[tail].push((head, edge));
        }
        Adjacency { out }
    }

    /// Nodes reachable from `from` when every edge with `removed(edge)` is
    /// deleted. Undirected edges are traversable both ways.
    pub(crate) fn reachable(&self, from: usize, removed: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.out[x] {
                if !seen[y] && !removed(e) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

fn removed_flags(net: &Network, cut: &[usize]) -> Result<Vec<bool>, BoundsError> {
    let mut flags = vec![false; net.edge_count()];
    for &e in cut {
        *flags.get_mut(e).ok_or(BoundsError::UnknownEdge(e))? = true;
    }
    Ok(flags)
}

/// True iff every `s(i)`-`t(i)` path uses an edge of `cut` (paths follow
/// edge direction in directed networks).
pub fn separates(net: &Network, cut: &[usize], commodity: usize) -> Result<bool, BoundsError> {
    if commodity >= net.commodity_count() {
        return Err(BoundsError::UnknownCommodity(commodity));
    }
    let flags = removed_flags(net, cut)?;
    let (s, t) = net.commodity_endpoints(commodity);
    Ok(!Adjacency::new(net).reachable(s, |e| flags[e])[t])
}

/// True iff `cut` blocks every `s(i)`-`t(j)` path for all `i, j` in `set`,
/// including `i == j`.
pub fn isolates(net: &Network, cut: &[usize], set: &[usize]) -> Result<bool, BoundsError> {
    if !net.is_directed() {
        return Err(BoundsError::NotDirected);
    }
    if let Some(&bad) = set.iter().find(|&&c| c >= net.commodity_count()) {
        return Err(BoundsError::UnknownCommodity(bad));
    }
    let flags = removed_flags(net, cut)?;
    let adj = Adjacency::new(net);
    for &i in set {
        let reach = adj.reachable(net.commodity_endpoints(i).0, |e| flags[e]);
        if set.iter().any(|&j| reach[net.commodity_endpoints(j).1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Candidate produced by an enumeration: a cut (as an edge bitmask) and the
/// commodities it accounts for (as a commodity bitmask).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub edges: u64,
    pub commodities: u64,
    /// Scaled capacity of `edges`.
    pub weight: u64,
}

impl Candidate {
    /// Orders by ratio `c(A)/|J|`, then by `c(A)`, then by `|A|`, then
    /// lexicographically by the sorted edge index list, then by the
    /// commodity list.
    pub(crate) fn compare(&self, other: &Self) -> Ordering {
        let (j1, j2) = (u128::from(self.commodities.count_ones()), u128::from(other.commodities.count_ones()));
        (u128::from(self.weight) * j2)
            .cmp(&(u128::from(other.weight) * j1))
            .then(self.weight.cmp(&other.weight))
            .then(self.edges.count_ones().cmp(&other.edges.count_ones()))
            .then_with(|| lex_mask(self.edges, other.edges))
            .then_with(|| lex_mask(self.commodities, other.commodities))
    }

    pub(crate) fn report(&self, net: &Network, weights: &Weights) -> CutReport {
        CutReport::new(net, weights, bits(self.edges), bits(self.commodities))
    }
}

/// Lexicographic order of the sorted index lists of two equal-size masks:
/// the mask owning the lowest differing bit is smaller.
fn lex_mask(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        Ordering::Equal
    } else if a & (diff & diff.wrapping_neg()) != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

pub(crate) fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}
