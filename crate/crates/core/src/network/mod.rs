//! k-pairs networks: a simple graph (directed or undirected) with a list of
//! source/sink commodities.

mod format;
mod generators;

pub use format::{parse_network, serialize_network, ParseError};
pub use generators::{gen_bipartite, gen_hu, gen_n1, BipartiteType};

use crate::rational::{int, Rational};
use num_traits::Signed;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("invalid name {0:?}: expected letters, digits or underscore")]
    InvalidName(String),
    #[error("duplicate node {0}")]
    DuplicateNode(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("duplicate commodity {0}")]
    DuplicateCommodity(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("self-loop at node {0}")]
    SelfLoop(String),
    #[error("commodity {0} has identical source and sink")]
    SameEndpoints(String),
    #[error("edge {0} {1} has non-positive capacity")]
    NonPositiveCapacity(String, String),
    #[error("operation requires an undirected network")]
    NotUndirected,
    #[error("operation requires a directed network")]
    NotDirected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn valid_token(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: &str) -> Result<Self, NetworkError> {
        if valid_token(name) {
            Ok(NodeId(name.to_string()))
        } else {
            Err(NetworkError::InvalidName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An edge of the underlying graph. Undirected edges are stored with
/// `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub capacity: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commodity {
    pub id: String,
    pub source: NodeId,
    pub sink: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedArc {
    pub tail: NodeId,
    pub head: NodeId,
}

impl DirectedArc {
    pub fn new(tail: &NodeId, head: &NodeId) -> Self {
        DirectedArc { tail: tail.clone(), head: head.clone() }
    }

    pub fn reversed(&self) -> Self {
        DirectedArc { tail: self.head.clone(), head: self.tail.clone() }
    }
}

impl fmt::Display for DirectedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.tail, self.head)
    }
}

/// Pairing of the two opposite arcs produced by one undirected edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coupling {
    pub forward: usize,
    pub backward: usize,
    pub edge: usize,
    pub capacity: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedExpansion {
    pub arcs: Vec<DirectedArc>,
    pub couplings: Vec<Coupling>,
}

/// Immutable k-pairs network. Build one with [`NetworkBuilder`], a
/// generator, or [`parse_network`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    directed: bool,
    nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    edges: Vec<Edge>,
    commodities: Vec<Commodity>,
}

impl Network {
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn commodities(&self) -> &[Commodity] {
        &self.commodities
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn commodity_count(&self) -> usize {
        self.commodities.len()
    }

    pub fn node_index(&self, node: &NodeId) -> Option<usize> {
        self.index.get(node).copied()
    }

    pub fn node(&self, name: &str) -> Option<&NodeId> {
        NodeId::new(name).ok().and_then(|n| self.index.get(&n).map(|&i| &self.nodes[i]))
    }

    pub fn commodity(&self, id: &str) -> Option<&Commodity> {
        self.commodities.iter().find(|c| c.id == id)
    }

    pub fn commodity_index(&self, id: &str) -> Option<usize> {
        self.commodities.iter().position(|c| c.id == id)
    }

    /// Edge endpoints as node indices.
    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let e = &self.edges[edge];
        (self.index[&e.u], self.index[&e.v])
    }

    /// Commodity (source, sink) as node indices.
    pub fn commodity_endpoints(&self, commodity: usize) -> (usize, usize) {
        let c = &self.commodities[commodity];
        (self.index[&c.source], self.index[&c.sink])
    }

    pub fn degree(&self, node: &NodeId) -> usize {
        self.edges.iter().filter(|e| &e.u == node || &e.v == node).count()
    }

    /// Arcs the network actually carries information on: the directed edges,
    /// or both orientations of every undirected edge (edge `e` yields arcs
    /// `2e` and `2e + 1`).
    pub fn arcs(&self) -> Vec<DirectedArc> {
        let mut arcs = Vec::with_capacity(self.edges.len() * 2);
        for e in &self.edges {
            arcs.push(DirectedArc::new(&e.u, &e.v));
            if !self.directed {
                arcs.push(DirectedArc::new(&e.v, &e.u));
            }
        }
        arcs
    }

    /// Same as [`Network::arcs`], as `(tail, head, edge)` index triples.
    pub fn arc_indices(&self) -> Vec<(usize, usize, usize)> {
        let mut arcs = Vec::with_capacity(self.edges.len() * 2);
        for k in 0..self.edges.len() {
            let (u, v) = self.edge_endpoints(k);
            arcs.push((u, v, k));
            if !self.directed {
                arcs.push((v, u, k));
            }
        }
        arcs
    }

    pub fn has_arc(&self, arc: &DirectedArc) -> bool {
        self.edges.iter().any(|e| {
            (e.u == arc.tail && e.v == arc.head) || (!self.directed && e.v == arc.tail && e.u == arc.head)
        })
    }

    fn check_nodes(&self, set: &BTreeSet<NodeId>) -> Result<(), NetworkError> {
        match set.iter().find(|n| !self.index.contains_key(*n)) {
            Some(n) => Err(NetworkError::UnknownNode(n.to_string())),
            None => Ok(()),
        }
    }

    /// Arcs with head in `set` and tail outside it.
    pub fn in_set(&self, set: &BTreeSet<NodeId>) -> Result<BTreeSet<DirectedArc>, NetworkError> {
        self.check_nodes(set)?;
        Ok(self
            .arcs()
            .into_iter()
            .filter(|a| set.contains(&a.head) && !set.contains(&a.tail))
            .collect())
    }

    /// Arcs with tail in `set` and head outside it.
    pub fn out_set(&self, set: &BTreeSet<NodeId>) -> Result<BTreeSet<DirectedArc>, NetworkError> {
        self.check_nodes(set)?;
        Ok(self
            .arcs()
            .into_iter()
            .filter(|a| set.contains(&a.tail) && !set.contains(&a.head))
            .collect())
    }

    /// Ids of commodities whose source lies in `set`.
    pub fn sources_in(&self, set: &BTreeSet<NodeId>) -> Result<BTreeSet<String>, NetworkError> {
        self.check_nodes(set)?;
        Ok(self
            .commodities
            .iter()
            .filter(|c| set.contains(&c.source))
            .map(|c| c.id.clone())
            .collect())
    }

    /// Ids of commodities whose sink lies in `set`.
    pub fn sinks_in(&self, set: &BTreeSet<NodeId>) -> Result<BTreeSet<String>, NetworkError> {
        self.check_nodes(set)?;
        Ok(self
            .commodities
            .iter()
            .filter(|c| set.contains(&c.sink))
            .map(|c| c.id.clone())
            .collect())
    }

    /// Replaces every undirected edge by two opposite arcs that share the
    /// edge's capacity.
    pub fn directed_expansion(&self) -> Result<DirectedExpansion, NetworkError> {
        if self.directed {
            return Err(NetworkError::NotUndirected);
        }
        let arcs = self.arcs();
        let couplings = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| Coupling { forward: 2 * k, backward: 2 * k + 1, edge: k, capacity: e.capacity.clone() })
            .collect();
        Ok(DirectedExpansion { arcs, couplings })
    }

    /// Copy of the network with every capacity multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Network, NetworkError> {
        if !factor.is_positive() {
            return Err(NetworkError::InvalidParameter("scale factor must be positive".into()));
        }
        let mut scaled = self.clone();
        for e in &mut scaled.edges {
            e.capacity = &e.capacity * factor;
        }
        Ok(scaled)
    }

    /// Copy of the network without the given edge.
    pub fn without_edge(&self, edge: usize) -> Network {
        let mut copy = self.clone();
        copy.edges.remove(edge);
        copy
    }

    /// Copy of the network with one more commodity.
    pub fn with_commodity(&self, id: &str, source: &str, sink: &str) -> Result<Network, NetworkError> {
        let mut builder = NetworkBuilder { net: self.clone() };
        builder.commodity(id, source, sink)?;
        Ok(builder.build())
    }
}

/// Incremental, validating constructor for [`Network`].
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    net: Network,
}

impl NetworkBuilder {
    pub fn new(directed: bool) -> Self {
        NetworkBuilder {
            net: Network { directed, nodes: Vec::new(), index: HashMap::new(), edges: Vec::new(), commodities: Vec::new() },
        }
    }

    pub fn node(&mut self, name: &str) -> Result<&mut Self, NetworkError> {
        let id = NodeId::new(name)?;
        if self.net.index.contains_key(&id) {
            return Err(NetworkError::DuplicateNode(name.to_string()));
        }
        self.net.index.insert(id.clone(), self.net.nodes.len());
        self.net.nodes.push(id);
        Ok(self)
    }

    fn lookup(&self, name: &str) -> Result<NodeId, NetworkError> {
        match NodeId::new(name) {
            Ok(id) if self.net.index.contains_key(&id) => Ok(id),
            _ => Err(NetworkError::UnknownNode(name.to_string())),
        }
    }

    pub fn edge(&mut self, u: &str, v: &str) -> Result<&mut Self, NetworkError> {
        self.edge_with_capacity(u, v, int(1))
    }

    pub fn edge_with_capacity(&mut self, u: &str, v: &str, capacity: Rational) -> Result<&mut Self, NetworkError> {
        let (mut u, mut v) = (self.lookup(u)?, self.lookup(v)?);
        if u == v {
            return Err(NetworkError::SelfLoop(u.to_string()));
        }
        if !capacity.is_positive() {
            return Err(NetworkError::NonPositiveCapacity(u.to_string(), v.to_string()));
        }
        if !self.net.directed && v < u {
            std::mem::swap(&mut u, &mut v);
        }
        if self.net.edges.iter().any(|e| e.u == u && e.v == v) {
            return Err(NetworkError::DuplicateEdge(u.to_string(), v.to_string()));
        }
        self.net.edges.push(Edge { u, v, capacity });
        Ok(self)
    }

    pub fn commodity(&mut self, id: &str, source: &str, sink: &str) -> Result<&mut Self, NetworkError> {
        if !valid_token(id) {
            return Err(NetworkError::InvalidName(id.to_string()));
        }
        if self.net.commodities.iter().any(|c| c.id == id) {
            return Err(NetworkError::DuplicateCommodity(id.to_string()));
        }
        let (source, sink) = (self.lookup(source)?, self.lookup(sink)?);
        if source == sink {
            return Err(NetworkError::SameEndpoints(id.to_string()));
        }
        self.net.commodities.push(Commodity { id: id.to_string(), source, sink });
        Ok(self)
    }

    pub fn build(self) -> Network {
        self.net
    }
}

pub fn node_set<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<BTreeSet<NodeId>, NetworkError> {
    names.into_iter().map(NodeId::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(t: &str, h: &str) -> DirectedArc {
        DirectedArc { tail: NodeId::new(t).unwrap(), head: NodeId::new(h).unwrap() }
    }

    fn set(names: &[&str]) -> BTreeSet<NodeId> {
        node_set(names.iter().copied()).unwrap()
    }

    #[test]
    fn in_and_out_sets_on_n1() {
        let n1 = gen_n1(2).unwrap();
        assert_eq!(n1.in_set(&set(&["v"])).unwrap(), [arc("u", "v")].into_iter().collect());
        assert_eq!(n1.out_set(&set(&["u"])).unwrap(), [arc("u", "v")].into_iter().collect());
        let all: BTreeSet<NodeId> = n1.nodes().iter().cloned().collect();
        assert!(n1.in_set(&all).unwrap().is_empty());
        assert!(n1.out_set(&all).unwrap().is_empty());
    }

    #[test]
    fn in_and_out_sets_on_hu() {
        let hu = gen_hu();
        assert_eq!(hu.in_set(&set(&["f"])).unwrap(), [arc("a", "f"), arc("c", "f")].into_iter().collect());
        assert_eq!(hu.out_set(&set(&["b"])).unwrap(), [arc("b", "g"), arc("b", "h")].into_iter().collect());
    }

    #[test]
    fn unknown_node_in_query() {
        let hu = gen_hu();
        assert_eq!(hu.in_set(&set(&["zz"])), Err(NetworkError::UnknownNode("zz".into())));
        assert!(hu.sources_in(&set(&["zz"])).is_err());
    }

    #[test]
    fn source_and_sink_sets() {
        let hu = gen_hu();
        assert_eq!(hu.sources_in(&set(&["g"])).unwrap(), ["g".to_string()].into_iter().collect());
        assert!(hu.sinks_in(&set(&["g"])).unwrap().is_empty());
        assert!(hu.sources_in(&BTreeSet::new()).unwrap().is_empty());
        assert!(hu.sinks_in(&BTreeSet::new()).unwrap().is_empty());

        let n1 = gen_n1(3).unwrap();
        let sinks = set(&["t1", "t2", "t3"]);
        assert_eq!(n1.sinks_in(&sinks).unwrap().len(), 3);
        assert!(n1.sources_in(&sinks).unwrap().is_empty());
    }

    #[test]
    fn expansion_of_hu_and_single_edge() {
        let exp = gen_hu().directed_expansion().unwrap();
        assert_eq!(exp.arcs.len(), 16);
        assert_eq!(exp.couplings.len(), 8);
        for c in &exp.couplings {
            assert_eq!(exp.arcs[c.forward].reversed(), exp.arcs[c.backward]);
        }

        let mut b = NetworkBuilder::new(false);
        b.node("a").unwrap().node("b").unwrap().edge("a", "b").unwrap();
        let exp = b.build().directed_expansion().unwrap();
        assert_eq!(exp.arcs, vec![arc("a", "b"), arc("b", "a")]);
        assert_eq!(exp.couplings[0].capacity, int(1));

        let exp = gen_bipartite(BipartiteType::I, 2, 3).unwrap().directed_expansion().unwrap();
        assert_eq!(exp.arcs.len(), 12);

        assert_eq!(gen_n1(2).unwrap().directed_expansion(), Err(NetworkError::NotUndirected));
    }

    #[test]
    fn builder_rejects_malformed_input() {
        let mut b = NetworkBuilder::new(false);
        b.node("a").unwrap().node("b").unwrap();
        assert_eq!(b.node("a").unwrap_err(), NetworkError::DuplicateNode("a".into()));
        assert_eq!(b.edge("a", "a").unwrap_err(), NetworkError::SelfLoop("a".into()));
        assert_eq!(b.edge("a", "x").unwrap_err(), NetworkError::UnknownNode("x".into()));
        b.edge("b", "a").unwrap();
        assert!(matches!(b.edge("a", "b").unwrap_err(), NetworkError::DuplicateEdge(..)));
        assert_eq!(b.commodity("c", "a", "a").unwrap_err(), NetworkError::SameEndpoints("c".into()));
        b.commodity("c", "a", "b").unwrap();
        assert_eq!(b.commodity("c", "b", "a").unwrap_err(), NetworkError::DuplicateCommodity("c".into()));
        assert!(b.node("bad-name").is_err());
        assert!(b.edge_with_capacity("a", "b", int(0)).is_err());

        let mut d = NetworkBuilder::new(true);
        d.node("a").unwrap().node("b").unwrap();
        d.edge("a", "b").unwrap().edge("b", "a").unwrap();
        assert_eq!(d.build().edge_count(), 2);
    }
}
