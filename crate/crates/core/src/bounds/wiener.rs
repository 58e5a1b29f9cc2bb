use super::{Adjacency, BoundsError};
use crate::network::{Network, NodeId};
use crate::rational::Rational;
use num_bigint::BigInt;
use std::collections::VecDeque;

/// All-pairs hop distances; `None` marks an unreachable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    nodes: Vec<NodeId>,
    dist: Vec<Vec<Option<u32>>>,
}

impl DistanceTable {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Distance between node indices.
    pub fn get(&self, from: usize, to: usize) -> Option<u32> {
        self.dist[from][to]
    }
}

/// Breadth-first hop distances from every node (following arc direction in
/// directed networks).
pub fn distance_table(net: &Network) -> DistanceTable {
    let adj = Adjacency::new(net);
    let n = net.node_count();
    let dist = (0..n)
        .map(|start| {
            let mut d = vec![None; n];
            d[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let next = d[x].map(|v: u32| v + 1);
                for &(y, _) in &adj.out[x] {
                    if d[y].is_none() {
                        d[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            d
        })
        .collect();
    DistanceTable { nodes: net.nodes().to_vec(), dist }
}

/// Total capacity (`|E|` for unit capacities) divided by the sum of hop
/// distances between commodity endpoints.
pub fn wiener_bound(net: &Network) -> Result<Rational, BoundsError> {
    if net.is_directed() {
        return Err(BoundsError::NotUndirected);
    }
    if net.commodity_count() == 0 {
        return Err(BoundsError::NoCommodities);
    }
    let table = distance_table(net);
    let mut total: u64 = 0;
    for (i, c) in net.commodities().iter().enumerate() {
        let (s, t) = net.commodity_endpoints(i);
        total += u64::from(table.get(s, t).ok_or_else(|| BoundsError::Disconnected(c.id.clone()))?);
    }
    let capacity = net.edges().iter().fold(Rational::from_integer(0.into()), |acc, e| acc + &e.capacity);
    Ok(capacity / Rational::from_integer(BigInt::from(total)))
}
