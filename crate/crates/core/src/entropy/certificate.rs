//! Certificates: nonnegative combinations of axiom instances that must
//! telescope exactly to a target rate inequality `sum a_i r_i <= C`.
//!
//! File format, one item per line (`#` starts a comment):
//!
//! ```text
//! network <label>                      # optional
//! target <C> <id>:<alpha> ...
//! step <coeff> <axiom> <args...>
//! ```

use super::axiom::{expand_axiom, expand_scaled, Axiom, AxiomError, Direction, Justification};
use super::expr::{parse_var_set, EntropyExpr, InfoVar};
use crate::network::{Network, NodeId};
use crate::rational::{self, Rational};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("step {step} ({keyword})")]
    Axiom { step: usize, keyword: &'static str, source: AxiomError },
    #[error("step {step} has negative coefficient {coeff}")]
    NegativeCoefficient { step: usize, coeff: Rational },
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("certificate does not apply: {0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub coeff: Rational,
    pub axiom: Axiom,
}

/// `sum alpha_i r_i <= bound`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub bound: Rational,
    pub alphas: BTreeMap<String, Rational>,
}

impl Target {
    pub fn alpha_sum(&self) -> Rational {
        self.alphas.values().fold(Rational::zero(), |acc, a| acc + a)
    }

    /// Bound on the common rate when every `r_i` is equal.
    pub fn symmetric_bound(&self) -> Rational {
        &self.bound / self.alpha_sum()
    }

    fn as_expr(&self) -> EntropyExpr {
        let mut e = EntropyExpr::new();
        for (id, a) in &self.alphas {
            e.add_rate(id, a.clone());
        }
        e.add_constant(-self.bound.clone());
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub network: Option<String>,
    pub target: Target,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid {
        bound: Rational,
        symmetric_bound: Rational,
        /// 1-based indices of steps relying on an informally justified axiom.
        informal_steps: Vec<usize>,
    },
    Invalid {
        /// `sum coeff_j * step_j` minus the target expression; zero iff valid.
        residual: EntropyExpr,
        /// The full combination the steps produce.
        derived: EntropyExpr,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

fn validate_target(target: &Target) -> Result<(), CertificateError> {
    if let Some((id, a)) = target.alphas.iter().find(|(_, a)| a.is_negative()) {
        return Err(CertificateError::InvalidTarget(format!("alpha for {id} is negative ({a})")));
    }
    if !target.alphas.values().any(|a| a.is_positive()) {
        return Err(CertificateError::InvalidTarget("no positive rate coefficient".into()));
    }
    Ok(())
}

/// Sums the scaled step expansions and compares the result with the target.
pub fn check_certificate(net: &Network, cert: &Certificate) -> Result<Verdict, CertificateError> {
    validate_target(&cert.target)?;
    if let Some(id) = cert.target.alphas.keys().find(|id| net.commodity(id).is_none()) {
        return Err(CertificateError::InvalidTarget(format!("unknown commodity {id}")));
    }
    let mut derived = EntropyExpr::new();
    let mut informal_steps = Vec::new();
    for (k, step) in cert.steps.iter().enumerate() {
        let index = k + 1;
        if step.coeff.is_negative() {
            return Err(CertificateError::NegativeCoefficient { step: index, coeff: step.coeff.clone() });
        }
        let expansion = expand_scaled(net, &step.axiom, &step.coeff).map_err(|source| CertificateError::Axiom {
            step: index,
            keyword: step.axiom.keyword(),
            source,
        })?;
        derived.add_scaled(&expansion, &rational::int(1));
        if step.axiom.is_informal() && !step.coeff.is_zero() {
            informal_steps.push(index);
        }
    }
    let mut residual = derived.clone();
    residual.add_scaled(&cert.target.as_expr(), &rational::int(-1));
    if residual.is_zero() {
        Ok(Verdict::Valid {
            bound: cert.target.bound.clone(),
            symmetric_bound: cert.target.symmetric_bound(),
            informal_steps,
        })
    } else {
        Ok(Verdict::Invalid { residual, derived })
    }
}

/// Expansion of a single step, for diagnostics.
pub fn expand_step(net: &Network, step: &Step) -> Result<EntropyExpr, AxiomError> {
    expand_axiom(net, &step.axiom)
}

pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    if let Some(label) = &cert.network {
        let _ = writeln!(out, "network {label}");
    }
    let _ = write!(out, "target {}", cert.target.bound);
    for (id, a) in &cert.target.alphas {
        let _ = write!(out, " {id}:{a}");
    }
    out.push('\n');
    for step in &cert.steps {
        let _ = writeln!(out, "step {} {}", step.coeff, step.axiom);
    }
    out
}

fn parse_axiom(keyword: &str, args: &[&str]) -> Result<Axiom, String> {
    let sets = |xs: &[&str]| xs.iter().map(|x| parse_var_set(x)).collect::<Result<Vec<_>, _>>();
    let node = |x: &str| NodeId::new(x).map_err(|e| e.to_string());
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("`{keyword}` takes {n} argument(s), found {}", args.len()))
        }
    };
    match keyword {
        "monotonicity" => {
            arity(2)?;
            let mut s = sets(args)?.into_iter();
            Ok(Axiom::Monotonicity { subset: s.next().unwrap(), superset: s.next().unwrap() })
        }
        "submodularity" | "subadditivity" => {
            arity(2)?;
            let mut s = sets(args)?.into_iter();
            let (a, b) = (s.next().unwrap(), s.next().unwrap());
            Ok(if keyword == "submodularity" { Axiom::Submodularity(a, b) } else { Axiom::Subadditivity(a, b) })
        }
        "generalized_submodularity" => {
            if args.len() < 2 {
                return Err("`generalized_submodularity` takes at least two sets".into());
            }
            Ok(Axiom::GeneralizedSubmodularity(sets(args)?))
        }
        "input_output" => {
            arity(1)?;
            let nodes = args[0].split(',').map(node).collect::<Result<BTreeSet<_>, _>>()?;
            Ok(Axiom::InputOutput(nodes))
        }
        "functional" => {
            arity(3)?;
            let target: InfoVar = args[0].parse()?;
            let given = parse_var_set(args[1])?;
            let justification =
                Justification::from_keyword(args[2]).ok_or_else(|| format!("unknown justification `{}`", args[2]))?;
            Ok(Axiom::Functional { target, given, justification })
        }
        "independence" => {
            arity(2)?;
            let direction = match args[0] {
                "le" => Direction::Le,
                "ge" => Direction::Ge,
                other => return Err(format!("independence direction must be le or ge, found `{other}`")),
            };
            Ok(Axiom::Independence { messages: parse_var_set(args[1])?, direction })
        }
        "capacity" => {
            arity(2)?;
            Ok(Axiom::Capacity { u: node(args[0])?, v: node(args[1])? })
        }
        "rate" => {
            arity(1)?;
            Ok(Axiom::Rate(args[0].to_string()))
        }
        other => Err(format!("unknown axiom `{other}`")),
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let mut network = None;
    let mut target = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| CertificateError::Parse { line, message };
        let tokens: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        match keyword {
            "network" => {
                if args.len() != 1 {
                    return Err(err("`network` takes one label".into()));
                }
                network = Some(args[0].to_string());
            }
            "target" => {
                if target.is_some() {
                    return Err(err("duplicate `target` line".into()));
                }
                let Some((bound, alphas)) = args.split_first() else {
                    return Err(err("`target` needs a bound".into()));
                };
                let bound = rational::parse(bound).ok_or_else(|| err(format!("invalid bound `{bound}`")))?;
                let mut map = BTreeMap::new();
                for item in alphas {
                    let (id, a) = item.split_once(':').ok_or_else(|| err(format!("expected <id>:<alpha>, found `{item}`")))?;
                    let a = rational::parse(a).ok_or_else(|| err(format!("invalid coefficient `{a}`")))?;
                    if map.insert(id.to_string(), a).is_some() {
                        return Err(err(format!("commodity {id} repeated in target")));
                    }
                }
                let t = Target { bound, alphas: map };
                validate_target(&t).map_err(|e| err(e.to_string()))?;
                target = Some(t);
            }
            "step" => {
                let [coeff, axiom, rest @ ..] = args else {
                    return Err(err("`step` needs a coefficient and an axiom".into()));
                };
                let coeff = rational::parse(coeff).ok_or_else(|| err(format!("invalid coefficient `{coeff}`")))?;
                let axiom = parse_axiom(axiom, rest).map_err(err)?;
                steps.push(Step { coeff, axiom });
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let target = target.ok_or(CertificateError::Parse { line: text.lines().count().max(1), message: "missing `target` line".into() })?;
    Ok(Certificate { network, target, steps })
}
