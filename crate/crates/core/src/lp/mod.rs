//! Linear programs over exact rationals and a two-phase simplex solver.

mod simplex;

pub use simplex::{simplex_solve, SimplexResult, Status};

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint or objective references undeclared variable #{0}")]
    UnknownVariable(usize),
    #[error("optimality certificate failed: {0}")]
    Certificate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub nonnegative: bool,
}

/// `sum(terms) relation rhs`. Terms are merged per variable and never carry
/// a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Maximization problem `max c.x` subject to linear constraints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearProgram {
    variables: Vec<Variable>,
    objective: Vec<(VarId, Rational)>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, name: impl Into<String>, nonnegative: bool) -> VarId {
        self.variables.push(Variable { name: name.into(), nonnegative });
        VarId(self.variables.len() - 1)
    }

    fn normalize(&self, terms: impl IntoIterator<Item = (VarId, Rational)>) -> Result<Vec<(VarId, Rational)>, LpError> {
        let mut merged: BTreeMap<VarId, Rational> = BTreeMap::new();
        for (var, coeff) in terms {
            if var.0 >= self.variables.len() {
                return Err(LpError::UnknownVariable(var.0));
            }
            *merged.entry(var).or_insert_with(Rational::zero) += coeff;
        }
        Ok(merged.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (VarId, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<ConstraintId, LpError> {
        let terms = self.normalize(terms)?;
        self.constraints.push(Constraint { name: name.into(), terms, relation, rhs });
        Ok(ConstraintId(self.constraints.len() - 1))
    }

    /// Sets the linear form to maximize.
    pub fn set_objective(&mut self, terms: impl IntoIterator<Item = (VarId, Rational)>) -> Result<(), LpError> {
        self.objective = self.normalize(terms)?;
        Ok(())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(VarId, Rational)] {
        &self.objective
    }

    pub fn find_variable(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v.name == name).map(VarId)
    }

    pub(crate) fn evaluate(terms: &[(VarId, Rational)], point: &[Rational]) -> Rational {
        terms.iter().fold(Rational::zero(), |acc, (v, c)| acc + c * &point[v.0])
    }
}

fn write_form(f: &mut fmt::Formatter<'_>, lp: &LinearProgram, terms: &[(VarId, Rational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (var, coeff)) in terms.iter().enumerate() {
        let name = &lp.variables[var.0].name;
        let sign = if coeff.is_negative() { "-" } else { "+" };
        match (k, coeff.is_negative()) {
            (0, false) => {}
            (0, true) => f.write_str("-")?,
            _ => write!(f, " {sign} ")?,
        }
        let magnitude = coeff.abs();
        if magnitude.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{magnitude} {name}")?;
        }
    }
    Ok(())
}

/// Human-readable listing, one constraint per line. Not a stable format.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("maximize\n  ")?;
        write_form(f, self, &self.objective)?;
        f.write_str("\nsubject to\n")?;
        for c in &self.constraints {
            write!(f, "  {}: ", c.name)?;
            write_form(f, self, &c.terms)?;
            writeln!(f, " {} {}", c.relation.symbol(), c.rhs)?;
        }
        let free: Vec<&str> = self.variables.iter().filter(|v| !v.nonnegative).map(|v| v.name.as_str()).collect();
        if !free.is_empty() {
            writeln!(f, "free\n  {}", free.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn terms_are_merged_and_checked() {
        let mut lp = LinearProgram::new();
        let x = lp.add_variable("x", true);
        let y = lp.add_variable("y", false);
        lp.add_constraint("c", [(x, int(1)), (x, int(2)), (y, int(1)), (y, int(-1))], Relation::Le, int(3)).unwrap();
        assert_eq!(lp.constraints()[0].terms, vec![(x, int(3))]);
        assert_eq!(lp.add_constraint("bad", [(VarId(7), int(1))], Relation::Eq, int(0)), Err(LpError::UnknownVariable(7)));
        lp.set_objective([(x, int(1)), (y, int(-2))]).unwrap();
        let dump = lp.to_string();
        assert!(dump.contains("x - 2 y"), "{dump}");
        assert!(dump.contains("c: 3 x <= 3"), "{dump}");
        assert!(dump.contains("free\n  y"), "{dump}");
    }
}
