//! Maximum concurrent multicommodity flow: the largest rate `r` that every
//! commodity can route simultaneously and fractionally within capacities.

use crate::lp::{simplex_solve, LinearProgram, LpError, Relation, Status, VarId};
use crate::network::{DirectedArc, Network};
use crate::rational::{int, Rational};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error("network has no commodities, so the symmetric rate is undefined")]
    NoCommodities,
    #[error("routing LP is {0}")]
    Unsolvable(&'static str),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// The flow LP together with the indices needed to read a solution back.
#[derive(Debug, Clone)]
pub struct ConcurrentFlowLp {
    pub lp: LinearProgram,
    pub rate: VarId,
    /// `flow[i][a]` is the variable for commodity `i` on arc `a` of
    /// `Network::arcs()`.
    pub flow: Vec<Vec<VarId>>,
    pub capacity_constraints: usize,
}

/// Per-commodity arc flows achieving `rate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingScheme {
    pub rate: Rational,
    /// Nonzero flows keyed by (commodity id, arc).
    pub flows: BTreeMap<(String, DirectedArc), Rational>,
}

/// Edge-based encoding: `f[i, arc] >= 0` for every commodity and arc,
/// conservation at every node, net outflow `r` at each source and net
/// inflow `r` at each sink, and one capacity row per edge (summing both
/// orientations of undirected edges). Maximizes `r`.
pub fn build_concurrent_flow_lp(net: &Network) -> ConcurrentFlowLp {
    let arcs = net.arc_indices();
    let arc_names = net.arcs();
    let mut lp = LinearProgram::new();
    let flow: Vec<Vec<VarId>> = net
        .commodities()
        .iter()
        .map(|c| arc_names.iter().map(|a| lp.add_variable(format!("f[{},{a}]", c.id), true)).collect())
        .collect();
    let rate = lp.add_variable("r", true);

    for (i, c) in net.commodities().iter().enumerate() {
        let (s, t) = net.commodity_endpoints(i);
        for node in 0..net.node_count() {
            let mut terms: Vec<(VarId, Rational)> = Vec::new();
            for (a, &(tail, head, _)) in arcs.iter().enumerate() {
                if tail == node {
                    terms.push((flow[i][a], int(1)));
                } else if head == node {
                    terms.push((flow[i][a], int(-1)));
                }
            }
            if node == s {
                terms.push((rate, int(-1)));
            } else if node == t {
                terms.push((rate, int(1)));
            }
            let name = format!("flow[{},{}]", c.id, net.nodes()[node]);
            lp.add_constraint(name, terms, Relation::Eq, Rational::zero()).expect("variables declared above");
        }
    }

    for (k, e) in net.edges().iter().enumerate() {
        let terms: Vec<(VarId, Rational)> = arcs
            .iter()
            .enumerate()
            .filter(|(_, &(_, _, edge))| edge == k)
            .flat_map(|(a, _)| flow.iter().map(move |f| (f[a], int(1))))
            .collect();
        lp.add_constraint(format!("cap[{}-{}]", e.u, e.v), terms, Relation::Le, e.capacity.clone())
            .expect("variables declared above");
    }
    lp.set_objective([(rate, int(1))]).expect("variables declared above");
    ConcurrentFlowLp { lp, rate, flow, capacity_constraints: net.edge_count() }
}

/// Exact fractional routing rate and a scheme achieving it.
pub fn routing_rate(net: &Network) -> Result<(Rational, RoutingScheme), RoutingError> {
    if net.commodity_count() == 0 {
        return Err(RoutingError::NoCommodities);
    }
    let model = build_concurrent_flow_lp(net);
    let result = simplex_solve(&model.lp)?;
    match result.status {
        Status::Optimal => {}
        Status::Infeasible => return Err(RoutingError::Unsolvable("infeasible")),
        Status::Unbounded => return Err(RoutingError::Unsolvable("unbounded")),
    }
    let arcs = net.arcs();
    let mut flows = BTreeMap::new();
    for (i, c) in net.commodities().iter().enumerate() {
        for (a, arc) in arcs.iter().enumerate() {
            let f = result.primal_value(model.flow[i][a]);
            if !f.is_zero() {
                flows.insert((c.id.clone(), arc.clone()), f.clone());
            }
        }
    }
    let rate = result.primal_value(model.rate).clone();
    Ok((rate.clone(), RoutingScheme { rate, flows }))
}

/// Re-checks nonnegativity, conservation and capacity for a scheme,
/// independently of the LP that produced it.
pub fn verify_scheme(net: &Network, scheme: &RoutingScheme) -> Result<(), String> {
    let arcs = net.arcs();
    for ((id, arc), f) in &scheme.flows {
        if f.is_negative() {
            return Err(format!("negative flow for {id} on {arc}"));
        }
        if net.commodity(id).is_none() || !arcs.contains(arc) {
            return Err(format!("flow for unknown commodity or arc: {id} on {arc}"));
        }
    }
    let zero = Rational::zero();
    for c in net.commodities() {
        for node in net.nodes() {
            let mut net_out = Rational::zero();
            for arc in &arcs {
                let f = scheme.flows.get(&(c.id.clone(), arc.clone())).unwrap_or(&zero);
                if &arc.tail == node {
                    net_out += f;
                }
                if &arc.head == node {
                    net_out -= f;
                }
            }
            let expected = if node == &c.source {
                scheme.rate.clone()
            } else if node == &c.sink {
                -scheme.rate.clone()
            } else {
                Rational::zero()
            };
            if net_out != expected {
                return Err(format!("conservation fails for {} at {node}: {net_out} != {expected}", c.id));
            }
        }
    }
    for e in net.edges() {
        let forward = DirectedArc::new(&e.u, &e.v);
        let backward = forward.reversed();
        let load = scheme
            .flows
            .iter()
            .filter(|((_, arc), _)| *arc == forward || (!net.is_directed() && *arc == backward))
            .fold(Rational::zero(), |acc, (_, f)| acc + f);
        if load > e.capacity {
            return Err(format!("edge {}-{} carries {load} > {}", e.u, e.v, e.capacity));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{gen_bipartite, gen_hu, gen_n1, BipartiteType, NetworkBuilder};
    use crate::rational::ratio;

    #[test]
    fn lp_dimensions() {
        let model = build_concurrent_flow_lp(&gen_hu());
        assert_eq!(model.lp.variables().len(), 49);
        assert_eq!(model.capacity_constraints, 8);
        assert_eq!(build_concurrent_flow_lp(&gen_n1(3).unwrap()).capacity_constraints, 10);
    }

    #[test]
    fn single_arc_routes_one() {
        let mut b = NetworkBuilder::new(true);
        b.node("s").unwrap().node("t").unwrap().edge("s", "t").unwrap().commodity("x", "s", "t").unwrap();
        let net = b.build();
        assert_eq!(build_concurrent_flow_lp(&net).lp.variables().len(), 2);
        assert_eq!(routing_rate(&net).unwrap().0, int(1));
    }

    #[test]
    fn known_rates() {
        assert_eq!(routing_rate(&gen_hu()).unwrap().0, ratio(8, 7));
        assert_eq!(routing_rate(&gen_n1(2).unwrap()).unwrap().0, ratio(1, 2));
        assert_eq!(routing_rate(&gen_n1(4).unwrap()).unwrap().0, ratio(1, 4));
        assert_eq!(routing_rate(&gen_bipartite(BipartiteType::I, 2, 3).unwrap()).unwrap().0, ratio(3, 4));
        assert_eq!(routing_rate(&gen_bipartite(BipartiteType::II, 2, 2).unwrap()).unwrap().0, ratio(1, 2));
    }

    #[test]
    fn schemes_verify() {
        for net in [gen_hu(), gen_n1(3).unwrap(), gen_bipartite(BipartiteType::II, 2, 2).unwrap()] {
            let (rate, scheme) = routing_rate(&net).unwrap();
            assert_eq!(rate, scheme.rate);
            verify_scheme(&net, &scheme).unwrap();
        }
    }

    #[test]
    fn tampered_scheme_fails_verification() {
        let net = gen_hu();
        let (_, mut scheme) = routing_rate(&net).unwrap();
        scheme.rate = int(2);
        assert!(verify_scheme(&net, &scheme).is_err());
    }

    #[test]
    fn capacity_scaling() {
        let net = gen_hu();
        let scaled = net.scaled(&ratio(5, 3)).unwrap();
        assert_eq!(routing_rate(&scaled).unwrap().0, ratio(8, 7) * ratio(5, 3));
    }

    #[test]
    fn empty_commodity_list_is_rejected() {
        let mut b = NetworkBuilder::new(false);
        b.node("a").unwrap().node("b").unwrap().edge("a", "b").unwrap();
        assert_eq!(routing_rate(&b.build()).unwrap_err(), RoutingError::NoCommodities);
    }

    #[test]
    fn unreachable_sink_routes_zero() {
        let mut b = NetworkBuilder::new(true);
        b.node("a").unwrap().node("b").unwrap().edge("b", "a").unwrap().commodity("x", "a", "b").unwrap();
        assert_eq!(routing_rate(&b.build()).unwrap().0, int(0));
    }
}
