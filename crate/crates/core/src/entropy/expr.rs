//! Information variables and linear entropy expressions.

use crate::network::{DirectedArc, NodeId};
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// A random variable of a network code: a commodity's message or the symbol
/// carried by one directed arc.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfoVar {
    Message(String),
    Arc(DirectedArc),
}

impl InfoVar {
    pub fn message(id: &str) -> Self {
        InfoVar::Message(id.to_string())
    }

    pub fn arc(arc: &DirectedArc) -> Self {
        InfoVar::Arc(arc.clone())
    }
}

impl fmt::Display for InfoVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfoVar::Message(id) => write!(f, "msg:{id}"),
            InfoVar::Arc(arc) => write!(f, "arc:{}>{}", arc.tail, arc.head),
        }
    }
}

impl FromStr for InfoVar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let token_ok = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if let Some(id) = s.strip_prefix("msg:") {
            if token_ok(id) {
                return Ok(InfoVar::Message(id.to_string()));
            }
        } else if let Some(rest) = s.strip_prefix("arc:") {
            if let Some((tail, head)) = rest.split_once('>') {
                if let (Ok(tail), Ok(head)) = (NodeId::new(tail), NodeId::new(head)) {
                    return Ok(InfoVar::Arc(DirectedArc { tail, head }));
                }
            }
        }
        Err(format!("invalid variable `{s}` (expected msg:<id> or arc:<u>><v>)"))
    }
}

/// Canonically ordered set of variables; the key of a joint-entropy term.
pub type VarSet = BTreeSet<InfoVar>;

/// Parses a comma-separated variable list; `{}` is the empty set.
pub fn parse_var_set(token: &str) -> Result<VarSet, String> {
    if token == "{}" {
        return Ok(VarSet::new());
    }
    let mut set = VarSet::new();
    for part in token.split(',') {
        if !set.insert(part.parse()?) {
            return Err(format!("variable `{part}` repeated in set"));
        }
    }
    Ok(set)
}

pub fn format_var_set(set: &VarSet) -> String {
    if set.is_empty() {
        return "{}".to_string();
    }
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `sum c_S H(X_S) + sum a_i r_i + constant`, read as the left side of
/// `... <= 0`. Zero coefficients are never stored and the empty set never
/// appears as a term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EntropyExpr {
    terms: BTreeMap<VarSet, Rational>,
    rates: BTreeMap<String, Rational>,
    constant: Rational,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let entry = map.entry(key);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl EntropyExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_entropy(&mut self, set: VarSet, coeff: Rational) {
        if !set.is_empty() {
            accumulate(&mut self.terms, set, coeff);
        }
    }

    pub fn add_rate(&mut self, commodity: &str, coeff: Rational) {
        accumulate(&mut self.rates, commodity.to_string(), coeff);
    }

    pub fn add_constant(&mut self, value: Rational) {
        self.constant += value;
    }

    /// `self += coeff * other`
    pub fn add_scaled(&mut self, other: &EntropyExpr, coeff: &Rational) {
        for (set, c) in &other.terms {
            accumulate(&mut self.terms, set.clone(), c * coeff);
        }
        for (id, c) in &other.rates {
            accumulate(&mut self.rates, id.clone(), c * coeff);
        }
        self.constant += &other.constant * coeff;
    }

    pub fn terms(&self) -> &BTreeMap<VarSet, Rational> {
        &self.terms
    }

    pub fn rates(&self) -> &BTreeMap<String, Rational> {
        &self.rates
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.rates.is_empty() && self.constant.is_zero()
    }

    /// Value of the expression for a given entropy function and rate
    /// assignment.
    pub fn evaluate(&self, entropy: impl Fn(&VarSet) -> f64, rate: impl Fn(&str) -> f64) -> f64 {
        use num_traits::ToPrimitive;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        self.terms.iter().map(|(s, c)| f(c) * entropy(s)).sum::<f64>()
            + self.rates.iter().map(|(id, c)| f(c) * rate(id)).sum::<f64>()
            + f(&self.constant)
    }
}

impl fmt::Display for EntropyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut item = |f: &mut fmt::Formatter<'_>, coeff: &Rational, body: &str| -> fmt::Result {
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if first {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let magnitude = coeff.abs();
            match (magnitude.is_one(), body.is_empty()) {
                (_, true) => write!(f, "{magnitude}"),
                (true, false) => f.write_str(body),
                (false, false) => write!(f, "{magnitude} {body}"),
            }
        };
        for (set, c) in &self.terms {
            item(f, c, &format!("H({})", format_var_set(set)))?;
        }
        for (id, c) in &self.rates {
            item(f, c, &format!("r_{id}"))?;
        }
        if !self.constant.is_zero() {
            item(f, &self.constant, "")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
