//! Axiom instances and their expansion into normal form `expr <= 0`.

use super::expr::{format_var_set, EntropyExpr, InfoVar, VarSet};
use crate::network::{Network, NodeId};
use crate::rational::{int, Rational};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("side condition failed: {0}")]
    SideCondition(String),
    #[error("malformed axiom: {0}")]
    Malformed(String),
}

/// Which way an equality axiom is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `H(M) <= sum H(i)`, true for any variables.
    Le,
    /// `sum H(i) <= H(M)`, uses independence of the messages.
    Ge,
}

/// Why a variable is a function of a given set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Justification {
    /// Arc `(u, v)` is computed from `In(u)` and the messages sourced at `u`.
    EdgeLocal,
    /// Message `i` is decoded at `t(i)` from `In(t(i))` and the messages
    /// sourced at `t(i)`.
    SinkDecoding,
    /// Message `i` leaves `s(i)` only through `Out(s(i))`. This is the one
    /// justification whose soundness rests on an informal argument.
    SourceOut,
}

impl Justification {
    pub fn keyword(self) -> &'static str {
        match self {
            Justification::EdgeLocal => "edge_local",
            Justification::SinkDecoding => "sink_decoding",
            Justification::SourceOut => "source_out",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "edge_local" => Some(Justification::EdgeLocal),
            "sink_decoding" => Some(Justification::SinkDecoding),
            "source_out" => Some(Justification::SourceOut),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// `H(subset) <= H(superset)`
    Monotonicity { subset: VarSet, superset: VarSet },
    /// `H(A) + H(B) >= H(A u B) + H(A n B)`
    Submodularity(VarSet, VarSet),
    /// `H(A u B) <= H(A) + H(B)`
    Subadditivity(VarSet, VarSet),
    /// `sum H(A_i) >= H(u A_i) + H(u_{i<j} A_i n A_j)`
    GeneralizedSubmodularity(Vec<VarSet>),
    /// `H(In(U), S(U), Out(U), T(U)) <= H(In(U), S(U))`
    InputOutput(BTreeSet<NodeId>),
    /// `H(given u {target}) <= H(given)`
    Functional { target: InfoVar, given: VarSet, justification: Justification },
    /// `H(M) = sum_{i in M} H(i)`, used in one direction.
    Independence { messages: VarSet, direction: Direction },
    /// `H(uv) <= c(e)`, or `H(uv) + H(vu) <= c{u,v}` for undirected edges.
    Capacity { u: NodeId, v: NodeId },
    /// `r_i <= H(message i)`
    Rate(String),
}

impl Axiom {
    pub fn keyword(&self) -> &'static str {
        match self {
            Axiom::Monotonicity { .. } => "monotonicity",
            Axiom::Submodularity(..) => "submodularity",
            Axiom::Subadditivity(..) => "subadditivity",
            Axiom::GeneralizedSubmodularity(..) => "generalized_submodularity",
            Axiom::InputOutput(..) => "input_output",
            Axiom::Functional { .. } => "functional",
            Axiom::Independence { .. } => "independence",
            Axiom::Capacity { .. } => "capacity",
            Axiom::Rate(..) => "rate",
        }
    }

    /// True for axioms whose soundness is argued only informally.
    pub fn is_informal(&self) -> bool {
        matches!(self, Axiom::Functional { justification: Justification::SourceOut, .. })
    }
}

/// Arguments in certificate-file syntax.
impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())?;
        match self {
            Axiom::Monotonicity { subset, superset } => {
                write!(f, " {} {}", format_var_set(subset), format_var_set(superset))
            }
            Axiom::Submodularity(a, b) | Axiom::Subadditivity(a, b) => {
                write!(f, " {} {}", format_var_set(a), format_var_set(b))
            }
            Axiom::GeneralizedSubmodularity(sets) => sets.iter().try_for_each(|s| write!(f, " {}", format_var_set(s))),
            Axiom::InputOutput(nodes) => {
                write!(f, " {}", nodes.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(","))
            }
            Axiom::Functional { target, given, justification } => {
                write!(f, " {target} {} {}", format_var_set(given), justification.keyword())
            }
            Axiom::Independence { messages, direction } => {
                let dir = match direction {
                    Direction::Le => "le",
                    Direction::Ge => "ge",
                };
                write!(f, " {dir} {}", format_var_set(messages))
            }
            Axiom::Capacity { u, v } => write!(f, " {u} {v}"),
            Axiom::Rate(id) => write!(f, " {id}"),
        }
    }
}

fn side(msg: String) -> AxiomError {
    AxiomError::SideCondition(msg)
}

fn check_vars(net: &Network, set: &VarSet) -> Result<(), AxiomError> {
    for var in set {
        let known = match var {
            InfoVar::Message(id) => net.commodity(id).is_some(),
            InfoVar::Arc(arc) => net.has_arc(arc),
        };
        if !known {
            return Err(side(format!("variable {var} does not exist in the network")));
        }
    }
    Ok(())
}

fn messages(ids: impl IntoIterator<Item = String>) -> VarSet {
    ids.into_iter().map(InfoVar::Message).collect()
}

fn single(var: InfoVar) -> VarSet {
    VarSet::from([var])
}

/// Information available at a node: its in-arcs and the messages it sources.
fn node_inputs(net: &Network, node: &NodeId) -> VarSet {
    let u = BTreeSet::from([node.clone()]);
    let mut set: VarSet = net.in_set(&u).expect("node is declared").iter().map(InfoVar::arc).collect();
    set.extend(messages(net.sources_in(&u).expect("node is declared")));
    set
}

fn require_subset(required: &VarSet, given: &VarSet, what: &str) -> Result<(), AxiomError> {
    let missing: VarSet = required.difference(given).cloned().collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(side(format!("given set does not contain {what}: missing {}", format_var_set(&missing))))
    }
}

/// Rewrites `axiom` as `expr <= 0` after checking its side conditions
/// against `net`.
pub fn expand_axiom(net: &Network, axiom: &Axiom) -> Result<EntropyExpr, AxiomError> {
    let one = int(1);
    let minus = int(-1);
    let mut e = EntropyExpr::new();
    match axiom {
        Axiom::Monotonicity { subset, superset } => {
            check_vars(net, subset)?;
            check_vars(net, superset)?;
            if !subset.is_subset(superset) {
                return Err(side(format!(
                    "{} is not a subset of {}",
                    format_var_set(subset),
                    format_var_set(superset)
                )));
            }
            e.add_entropy(subset.clone(), one);
            e.add_entropy(superset.clone(), minus);
        }
        Axiom::Submodularity(a, b) => {
            check_vars(net, a)?;
            check_vars(net, b)?;
            e.add_entropy(a.union(b).cloned().collect(), one.clone());
            e.add_entropy(a.intersection(b).cloned().collect(), one);
            e.add_entropy(a.clone(), minus.clone());
            e.add_entropy(b.clone(), minus);
        }
        Axiom::Subadditivity(a, b) => {
            check_vars(net, a)?;
            check_vars(net, b)?;
            e.add_entropy(a.union(b).cloned().collect(), one);
            e.add_entropy(a.clone(), minus.clone());
            e.add_entropy(b.clone(), minus);
        }
        Axiom::GeneralizedSubmodularity(sets) => {
            if sets.len() < 2 {
                return Err(AxiomError::Malformed("generalized_submodularity needs at least two sets".into()));
            }
            let mut union = VarSet::new();
            let mut overlaps = VarSet::new();
            for (i, a) in sets.iter().enumerate() {
                check_vars(net, a)?;
                union.extend(a.iter().cloned());
                for b in &sets[i + 1..] {
                    overlaps.extend(a.intersection(b).cloned());
                }
                e.add_entropy(a.clone(), minus.clone());
            }
            e.add_entropy(union, one.clone());
            e.add_entropy(overlaps, one);
        }
        Axiom::InputOutput(nodes) => {
            if nodes.is_empty() {
                return Err(AxiomError::Malformed("input_output needs a nonempty node set".into()));
            }
            let unknown = |err: crate::network::NetworkError| side(err.to_string());
            let mut inputs: VarSet = net.in_set(nodes).map_err(unknown)?.iter().map(InfoVar::arc).collect();
            inputs.extend(messages(net.sources_in(nodes).map_err(unknown)?));
            let mut all = inputs.clone();
            all.extend(net.out_set(nodes).map_err(unknown)?.iter().map(InfoVar::arc));
            all.extend(messages(net.sinks_in(nodes).map_err(unknown)?));
            e.add_entropy(all, one);
            e.add_entropy(inputs, minus);
        }
        Axiom::Functional { target, given, justification } => {
            check_vars(net, given)?;
            check_vars(net, &single(target.clone()))?;
            match (justification, target) {
                (Justification::EdgeLocal, InfoVar::Arc(arc)) => {
                    require_subset(&node_inputs(net, &arc.tail), given, &format!("In({0}) and S({0})", arc.tail))?;
                }
                (Justification::SinkDecoding, InfoVar::Message(id)) => {
                    let sink = &net.commodity(id).expect("checked above").sink;
                    require_subset(&node_inputs(net, sink), given, &format!("In({sink}) and S({sink})"))?;
                }
                (Justification::SourceOut, InfoVar::Message(id)) => {
                    let source = &net.commodity(id).expect("checked above").source;
                    let outputs: VarSet = net
                        .out_set(&BTreeSet::from([source.clone()]))
                        .expect("node is declared")
                        .iter()
                        .map(InfoVar::arc)
                        .collect();
                    require_subset(&outputs, given, &format!("Out({source})"))?;
                }
                (j, t) => {
                    return Err(AxiomError::Malformed(format!("{} does not apply to {t}", j.keyword())));
                }
            }
            let mut with_target = given.clone();
            with_target.insert(target.clone());
            e.add_entropy(with_target, one);
            e.add_entropy(given.clone(), minus);
        }
        Axiom::Independence { messages: set, direction } => {
            check_vars(net, set)?;
            if set.is_empty() {
                return Err(AxiomError::Malformed("independence needs at least one message".into()));
            }
            if let Some(v) = set.iter().find(|v| !matches!(v, InfoVar::Message(_))) {
                return Err(side(format!("independence applies to messages only, found {v}")));
            }
            let (joint, parts) = match direction {
                Direction::Le => (one, minus),
                Direction::Ge => (minus, one),
            };
            e.add_entropy(set.clone(), joint);
            for v in set {
                e.add_entropy(single(v.clone()), parts.clone());
            }
        }
        Axiom::Capacity { u, v } => {
            let edge = net
                .edges()
                .iter()
                .find(|edge| (&edge.u == u && &edge.v == v) || (!net.is_directed() && &edge.u == v && &edge.v == u))
                .ok_or_else(|| side(format!("no edge {u} {v} in the network")))?;
            let forward = crate::network::DirectedArc::new(u, v);
            e.add_entropy(single(InfoVar::Arc(forward.clone())), one.clone());
            if !net.is_directed() {
                e.add_entropy(single(InfoVar::Arc(forward.reversed())), one);
            }
            e.add_constant(-edge.capacity.clone());
        }
        Axiom::Rate(id) => {
            if net.commodity(id).is_none() {
                return Err(side(format!("no commodity {id} in the network")));
            }
            e.add_rate(id, one);
            e.add_entropy(single(InfoVar::message(id)), minus);
        }
    }
    Ok(e)
}

/// Expansion scaled by a step coefficient; convenience for checkers.
pub(crate) fn expand_scaled(net: &Network, axiom: &Axiom, coeff: &Rational) -> Result<EntropyExpr, AxiomError> {
    let mut out = EntropyExpr::new();
    out.add_scaled(&expand_axiom(net, axiom)?, coeff);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{gen_hu, gen_n1, node_set};

    fn set(tokens: &[&str]) -> VarSet {
        tokens.iter().map(|t| t.parse().unwrap()).collect()
    }

    fn expr(terms: &[(i64, &[&str])]) -> EntropyExpr {
        let mut e = EntropyExpr::new();
        for (c, s) in terms {
            e.add_entropy(set(s), int(*c));
        }
        e
    }

    #[test]
    fn input_output_at_g() {
        let hu = gen_hu();
        let got = expand_axiom(&hu, &Axiom::InputOutput(node_set(["g"]).unwrap())).unwrap();
        let want = expr(&[
            (1, &["msg:g", "arc:a>g", "arc:b>g", "arc:c>g", "arc:g>a", "arc:g>b", "arc:g>c"]),
            (-1, &["msg:g", "arc:a>g", "arc:b>g", "arc:c>g"]),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn identity_monotonicity_is_zero() {
        let hu = gen_hu();
        let a = set(&["msg:a", "arc:a>g"]);
        let e = expand_axiom(&hu, &Axiom::Monotonicity { subset: a.clone(), superset: a }).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn sink_decoding_composed_with_edge_local() {
        let n1 = gen_n1(3).unwrap();
        let e = set(&["arc:u>v"]);
        let mut with_out = e.clone();
        with_out.insert("arc:v>t3".parse().unwrap());
        let steps = [
            Axiom::Functional { target: "arc:v>t3".parse().unwrap(), given: e.clone(), justification: Justification::EdgeLocal },
            Axiom::Functional { target: InfoVar::message("3"), given: with_out.clone(), justification: Justification::SinkDecoding },
            Axiom::Monotonicity { subset: set(&["msg:3", "arc:u>v"]), superset: set(&["msg:3", "arc:u>v", "arc:v>t3"]) },
        ];
        let mut sum = EntropyExpr::new();
        for s in &steps {
            sum.add_scaled(&expand_axiom(&n1, s).unwrap(), &int(1));
        }
        assert_eq!(sum, expr(&[(1, &["msg:3", "arc:u>v"]), (-1, &["arc:u>v"])]));

        // decoding at t3 straight from the bottleneck arc is not justified
        let err = expand_axiom(&n1, &Axiom::Functional { target: InfoVar::message("3"), given: e, justification: Justification::SinkDecoding });
        assert!(matches!(err, Err(AxiomError::SideCondition(m)) if m.contains("arc:v>t3")));
    }

    #[test]
    fn side_conditions() {
        let hu = gen_hu();
        let bad_mono = Axiom::Monotonicity { subset: set(&["msg:a", "msg:b"]), superset: set(&["msg:a"]) };
        assert!(matches!(expand_axiom(&hu, &bad_mono), Err(AxiomError::SideCondition(_))));
        let unknown = Axiom::Subadditivity(set(&["arc:a>b"]), set(&["msg:a"]));
        assert!(matches!(expand_axiom(&hu, &unknown), Err(AxiomError::SideCondition(m)) if m.contains("arc:a>b")));
        let edge_local = Axiom::Functional {
            target: "arc:b>g".parse().unwrap(),
            given: set(&["arc:g>b"]),
            justification: Justification::EdgeLocal,
        };
        assert!(matches!(expand_axiom(&hu, &edge_local), Err(AxiomError::SideCondition(m)) if m.contains("msg:b")));
        let source_out = Axiom::Functional {
            target: InfoVar::message("b"),
            given: set(&["arc:b>g"]),
            justification: Justification::SourceOut,
        };
        assert!(matches!(expand_axiom(&hu, &source_out), Err(AxiomError::SideCondition(m)) if m.contains("arc:b>h")));
        let mismatched = Axiom::Functional { target: InfoVar::message("b"), given: VarSet::new(), justification: Justification::EdgeLocal };
        assert!(matches!(expand_axiom(&hu, &mismatched), Err(AxiomError::Malformed(_))));
        assert!(expand_axiom(&hu, &Axiom::Capacity { u: NodeId::new("a").unwrap(), v: NodeId::new("b").unwrap() }).is_err());
        assert!(expand_axiom(&hu, &Axiom::Rate("zz".into())).is_err());
        assert!(expand_axiom(&hu, &Axiom::Independence { messages: set(&["arc:a>g"]), direction: Direction::Ge }).is_err());
        assert!(expand_axiom(&hu, &Axiom::GeneralizedSubmodularity(vec![set(&["msg:a"])])).is_err());
        assert!(expand_axiom(&hu, &Axiom::InputOutput(node_set(["q"]).unwrap())).is_err());
    }

    #[test]
    fn capacity_forms() {
        let hu = gen_hu();
        let e = expand_axiom(&hu, &Axiom::Capacity { u: NodeId::new("g").unwrap(), v: NodeId::new("a").unwrap() }).unwrap();
        assert_eq!(e.to_string(), "H(arc:a>g) + H(arc:g>a) - 1");
        let n1 = gen_n1(2).unwrap();
        let e = expand_axiom(&n1, &Axiom::Capacity { u: NodeId::new("u").unwrap(), v: NodeId::new("v").unwrap() }).unwrap();
        assert_eq!(e.to_string(), "H(arc:u>v) - 1");
        assert!(expand_axiom(&n1, &Axiom::Capacity { u: NodeId::new("v").unwrap(), v: NodeId::new("u").unwrap() }).is_err());
    }

    #[test]
    fn display_uses_file_syntax() {
        let a = Axiom::Functional { target: InfoVar::message("b"), given: set(&["arc:b>g", "arc:b>h"]), justification: Justification::SourceOut };
        assert_eq!(a.to_string(), "functional msg:b arc:b>g,arc:b>h source_out");
        assert!(a.is_informal());
        let a = Axiom::Independence { messages: set(&["msg:a", "msg:b"]), direction: Direction::Ge };
        assert_eq!(a.to_string(), "independence ge msg:a,msg:b");
    }
}
