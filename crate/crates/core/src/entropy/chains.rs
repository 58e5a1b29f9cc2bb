//! Certificate generators for the standard network families.

use super::axiom::{expand_axiom, Axiom, Direction, Justification};
use super::certificate::{Certificate, Step, Target};
use super::expr::{InfoVar, VarSet};
use crate::network::{gen_hu, gen_n1, DirectedArc, Network, NetworkError, NodeId};
use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("network is directed; the bipartite chain needs an undirected network")]
    Directed,
    #[error("network is not bipartite: edge {0} {1} joins two nodes of the same colour")]
    NotBipartite(String, String),
    #[error("network has no commodities")]
    NoCommodities,
    #[error("generated step does not apply: {0}")]
    Internal(String),
}

/// Collects steps, dropping those whose expansion is identically zero.
struct Builder<'a> {
    net: &'a Network,
    steps: Vec<Step>,
}

impl<'a> Builder<'a> {
    fn new(net: &'a Network) -> Self {
        Builder { net, steps: Vec::new() }
    }

    fn push_scaled(&mut self, coeff: Rational, axiom: Axiom) -> Result<(), ChainError> {
        let e = expand_axiom(self.net, &axiom).map_err(|err| ChainError::Internal(format!("{axiom}: {err}")))?;
        if !e.is_zero() && !coeff.is_zero() {
            self.steps.push(Step { coeff, axiom });
        }
        Ok(())
    }

    fn push(&mut self, axiom: Axiom) -> Result<(), ChainError> {
        self.push_scaled(Rational::one(), axiom)
    }

    /// `H(A u {x, y, ...}) <= H(A) + H(x) + H(y) + ...`, peeling one element at a time.
    fn split(&mut self, set: &VarSet) -> Result<(), ChainError> {
        let mut rest = set.clone();
        while rest.len() > 1 {
            let first = rest.pop_first().expect("nonempty");
            self.push(Axiom::Subadditivity(VarSet::from([first]), rest.clone()))?;
        }
        Ok(())
    }

    fn finish(self, network: String, target: Target) -> Certificate {
        Certificate { network: Some(network), target, steps: self.steps }
    }
}

fn msg(id: &str) -> InfoVar {
    InfoVar::message(id)
}

fn arc(u: &str, v: &str) -> InfoVar {
    let node = |x: &str| NodeId::new(x).expect("generator names are valid");
    InfoVar::Arc(DirectedArc::new(&node(u), &node(v)))
}

fn arcs(pairs: &[(&str, &str)]) -> VarSet {
    pairs.iter().map(|(u, v)| arc(u, v)).collect()
}

fn with(set: &VarSet, extra: impl IntoIterator<Item = InfoVar>) -> VarSet {
    let mut out = set.clone();
    out.extend(extra);
    out
}

fn single_node(name: &str) -> BTreeSet<NodeId> {
    BTreeSet::from([NodeId::new(name).expect("generator names are valid")])
}

fn all_arcs(net: &Network) -> VarSet {
    net.arcs().iter().map(InfoVar::arc).collect()
}

/// Proves `r_1 + ... + r_k <= c(u, v)` on the meagerness-gap family by
/// decoding the sinks from the bottleneck arc in the order `t_k, ..., t_1`.
pub fn gen_certificate_n1(k: usize) -> Result<Certificate, ChainError> {
    let net = gen_n1(k)?;
    let mut b = Builder::new(&net);
    let e = arc("u", "v");
    let mut known = VarSet::from([e.clone()]);
    for i in (1..=k).rev() {
        let sink = format!("t{i}");
        let mut given = known.clone();
        b.push(Axiom::Functional { target: arc("v", &sink), given: given.clone(), justification: Justification::EdgeLocal })?;
        given.insert(arc("v", &sink));
        for j in i + 1..=k {
            let side = arc(&format!("s{j}"), &sink);
            b.push(Axiom::Functional { target: side.clone(), given: given.clone(), justification: Justification::EdgeLocal })?;
            given.insert(side);
        }
        let m = msg(&i.to_string());
        b.push(Axiom::Functional { target: m.clone(), given: given.clone(), justification: Justification::SinkDecoding })?;
        b.push(Axiom::Monotonicity { subset: with(&known, [m.clone()]), superset: with(&given, [m.clone()]) })?;
        known.insert(m);
    }
    let messages: VarSet = (1..=k).map(|i| msg(&i.to_string())).collect();
    b.push(Axiom::Monotonicity { subset: messages.clone(), superset: with(&messages, [e]) })?;
    b.push(Axiom::Independence { messages, direction: Direction::Ge })?;
    let mut alphas = BTreeMap::new();
    for i in 1..=k {
        b.push(Axiom::Rate(i.to_string()))?;
        alphas.insert(i.to_string(), int(1));
    }
    let (u, v) = (NodeId::new("u")?, NodeId::new("v")?);
    b.push(Axiom::Capacity { u, v })?;
    Ok(b.finish(format!("n1_k{k}"), Target { bound: int(1), alphas }))
}

/// Proves `2 r_a + 3 r_b + 2 r_g <= 8` on the three-commodity undirected
/// network, combining two decoding chains with the eight edge capacities.
pub fn gen_certificate_hu() -> Certificate {
    gen_hu_chain().expect("hu chain matches gen_hu")
}

fn gen_hu_chain() -> Result<Certificate, ChainError> {
    let net = gen_hu();
    let mut b = Builder::new(&net);
    let every = all_arcs(&net);
    let io = |node: &str| Axiom::InputOutput(single_node(node));
    let (ma, mb, mg) = (msg("a"), msg("b"), msg("g"));
    let messages = VarSet::from([ma.clone(), mb.clone(), mg.clone()]);

    // Messages b, g and all arcs from the arcs entering g, h and f.
    let into_g = arcs(&[("a", "g"), ("b", "g"), ("c", "g")]);
    let into_h = arcs(&[("a", "h"), ("b", "h"), ("c", "h")]);
    let into_f = arcs(&[("a", "f"), ("c", "f")]);
    let around_g = with(&with(&into_g, arcs(&[("g", "a"), ("g", "b"), ("g", "c")])), [mg.clone()]);
    let around_h = with(&with(&into_h, arcs(&[("h", "a"), ("h", "b"), ("h", "c")])), [mg.clone()]);
    let near_gh: VarSet = every
        .iter()
        .filter(|v| !arcs(&[("a", "f"), ("f", "a"), ("c", "f"), ("f", "c")]).contains(v))
        .cloned()
        .collect();
    b.push(io("g"))?;
    b.push(io("h"))?;
    b.push(Axiom::Submodularity(around_g, around_h))?;
    b.push(Axiom::Subadditivity(VarSet::from([mg.clone()]), into_g.clone()))?;
    let g_side = with(&near_gh, [mg.clone()]);
    b.push(Axiom::Functional { target: mb.clone(), given: g_side.clone(), justification: Justification::SourceOut })?;
    b.push(io("f"))?;
    let around_f = with(&with(&into_f, arcs(&[("f", "a"), ("f", "c")])), [mb.clone()]);
    b.push(Axiom::Submodularity(with(&g_side, [mb.clone()]), around_f))?;
    let bg_all = with(&every, [mb.clone(), mg.clone()]);
    b.push(Axiom::Functional { target: ma.clone(), given: bg_all, justification: Justification::SinkDecoding })?;
    for set in [&into_g, &into_h, &into_f] {
        b.split(set)?;
    }
    b.push(Axiom::Monotonicity { subset: messages.clone(), superset: with(&every, messages.clone()) })?;
    b.push(Axiom::Independence { messages: messages.clone(), direction: Direction::Ge })?;

    // Messages a, b and all arcs from the arcs entering a, c and b.
    let into_a = arcs(&[("g", "a"), ("h", "a"), ("f", "a")]);
    let into_c = arcs(&[("g", "c"), ("h", "c"), ("f", "c")]);
    let into_b = arcs(&[("g", "b"), ("h", "b")]);
    let around_a = with(&with(&into_a, arcs(&[("a", "g"), ("a", "h"), ("a", "f")])), [ma.clone()]);
    let around_c = with(&with(&into_c, arcs(&[("c", "g"), ("c", "h"), ("c", "f")])), [ma.clone()]);
    let near_ac: VarSet = every
        .iter()
        .filter(|v| !arcs(&[("b", "g"), ("g", "b"), ("b", "h"), ("h", "b")]).contains(v))
        .cloned()
        .collect();
    b.push(io("a"))?;
    b.push(io("c"))?;
    b.push(Axiom::Submodularity(around_a, around_c))?;
    b.push(Axiom::Subadditivity(VarSet::from([ma.clone()]), into_a.clone()))?;
    let a_side = with(&near_ac, [ma.clone()]);
    b.push(Axiom::Functional { target: mb.clone(), given: a_side.clone(), justification: Justification::SinkDecoding })?;
    b.push(io("b"))?;
    let around_b = with(&with(&into_b, arcs(&[("b", "g"), ("b", "h")])), [mb.clone()]);
    b.push(Axiom::Submodularity(with(&a_side, [mb.clone()]), around_b))?;
    b.push(Axiom::Subadditivity(VarSet::from([mb.clone()]), into_b.clone()))?;
    let ab_all = with(&every, [ma.clone(), mb.clone()]);
    b.push(Axiom::Functional { target: mg.clone(), given: ab_all, justification: Justification::SinkDecoding })?;
    for set in [&into_a, &into_c, &into_b] {
        b.split(set)?;
    }
    b.push(Axiom::Monotonicity { subset: messages.clone(), superset: with(&every, messages.clone()) })?;
    b.push(Axiom::Independence { messages, direction: Direction::Ge })?;

    for edge in net.edges() {
        b.push(Axiom::Capacity { u: edge.u.clone(), v: edge.v.clone() })?;
    }
    let alphas = BTreeMap::from([("a".to_string(), int(2)), ("b".to_string(), int(3)), ("g".to_string(), int(2))]);
    for (id, a) in &alphas {
        b.push_scaled(a.clone(), Axiom::Rate(id.clone()))?;
    }
    Ok(b.finish("hu".into(), Target { bound: int(8), alphas }))
}

/// Two-colouring by breadth-first search in node order; the first node of
/// each component gets colour `false`.
fn two_colouring(net: &Network) -> Result<Vec<bool>, ChainError> {
    let n = net.node_count();
    let mut adj = vec![Vec::new(); n];
    for k in 0..net.edge_count() {
        let (u, v) = net.edge_endpoints(k);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let c = colour[x].expect("queued nodes are coloured");
            for &y in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!c);
                        queue.push_back(y);
                    }
                    Some(d) if d == c => {
                        let nodes = net.nodes();
                        return Err(ChainError::NotBipartite(nodes[x].to_string(), nodes[y].to_string()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(colour.into_iter().map(|c| c.expect("every node visited")).collect())
}

/// Proves `sum_i r_i + sum_{i in VV} r_i + sum_{i in WW} r_i <= sum_e c(e)`
/// on an undirected bipartite network with sides `V` and `W`, where `VV` and
/// `WW` are the commodities with both endpoints on one side.
pub fn gen_certificate_bipartite(net: &Network) -> Result<Certificate, ChainError> {
    if net.is_directed() {
        return Err(ChainError::Directed);
    }
    if net.commodity_count() == 0 {
        return Err(ChainError::NoCommodities);
    }
    let colour = two_colouring(net)?;
    let every = all_arcs(net);
    let side_of = |c: usize| {
        let (s, t) = net.commodity_endpoints(c);
        (colour[s] == colour[t]).then_some(colour[s])
    };
    let all_messages: VarSet = net.commodities().iter().map(|c| msg(&c.id)).collect();
    let mut b = Builder::new(net);
    for side in [false, true] {
        let mut parts = Vec::new();
        for (x, node) in net.nodes().iter().enumerate() {
            if colour[x] != side {
                continue;
            }
            let u = BTreeSet::from([node.clone()]);
            let inputs: VarSet = net.in_set(&u)?.iter().map(InfoVar::arc).collect();
            let sourced: VarSet = net.sources_in(&u)?.iter().map(|id| msg(id)).collect();
            let mut part = with(&inputs, sourced.iter().cloned());
            part.extend(net.out_set(&u)?.iter().map(InfoVar::arc));
            part.extend(net.sinks_in(&u)?.iter().map(|id| msg(id)));
            b.push(Axiom::InputOutput(u))?;
            b.push(Axiom::Subadditivity(sourced.clone(), inputs.clone()))?;
            b.split(&inputs)?;
            if sourced.len() >= 2 {
                b.push(Axiom::Independence { messages: sourced, direction: Direction::Le })?;
            }
            if !part.is_empty() {
                parts.push(part);
            }
        }
        let mut known: VarSet = parts.iter().flatten().cloned().collect();
        let mut overlap = VarSet::new();
        for (i, a) in parts.iter().enumerate() {
            for c in &parts[i + 1..] {
                overlap.extend(a.intersection(c).cloned());
            }
        }
        if parts.len() >= 2 {
            b.push(Axiom::GeneralizedSubmodularity(parts))?;
        }
        known.extend(every.iter().cloned());
        let mut missing: Vec<&str> =
            net.commodities().iter().map(|c| c.id.as_str()).filter(|id| !known.contains(&msg(id))).collect();
        while !missing.is_empty() {
            let decodable = missing.iter().position(|id| {
                let sink = &net.commodity(id).expect("declared").sink;
                let sourced = net.sources_in(&BTreeSet::from([sink.clone()])).expect("declared");
                sourced.iter().all(|s| known.contains(&msg(s)))
            });
            let (index, justification) = match decodable {
                Some(i) => (i, Justification::SinkDecoding),
                None => (0, Justification::SourceOut),
            };
            let id = missing.remove(index);
            b.push(Axiom::Functional { target: msg(id), given: known.clone(), justification })?;
            known.insert(msg(id));
        }
        b.push(Axiom::Monotonicity { subset: all_messages.clone(), superset: known })?;
        b.push(Axiom::Independence { messages: all_messages.clone(), direction: Direction::Ge })?;
        let within: VarSet =
            (0..net.commodity_count()).filter(|&c| side_of(c) == Some(side)).map(|c| msg(&net.commodities()[c].id)).collect();
        if overlap != within {
            return Err(ChainError::Internal(format!("pairwise overlaps differ from same-side messages on side {side}")));
        }
        if within.len() >= 2 {
            b.push(Axiom::Independence { messages: within, direction: Direction::Ge })?;
        }
    }
    let mut bound = Rational::zero();
    for edge in net.edges() {
        b.push(Axiom::Capacity { u: edge.u.clone(), v: edge.v.clone() })?;
        bound += &edge.capacity;
    }
    let mut alphas = BTreeMap::new();
    for (c, commodity) in net.commodities().iter().enumerate() {
        let alpha = if side_of(c).is_some() { int(2) } else { int(1) };
        b.push_scaled(alpha.clone(), Axiom::Rate(commodity.id.clone()))?;
        alphas.insert(commodity.id.clone(), alpha);
    }
    Ok(b.finish("bipartite".into(), Target { bound, alphas }))
}
