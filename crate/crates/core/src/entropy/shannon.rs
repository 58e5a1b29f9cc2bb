//! Shannon-LP check of the generalized submodularity inequality for two and
//! three sets.

use crate::lp::{simplex_solve, LinearProgram, LpError, Relation, Status};
use crate::rational::int;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShannonError {
    #[error("set count must be 2 or 3, got {0}")]
    OutOfRange(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Atom `a` (a nonempty subset of the sets, as a bitmask) belongs to set `i`
/// when bit `i` of `a` is set. Returns each set as a bitmask over atoms.
fn atom_sets(n: usize) -> Vec<u32> {
    let atoms = (1u32 << n) - 1;
    (0..n)
        .map(|i| (0..atoms).filter(|a| (a + 1) >> i & 1 == 1).fold(0, |acc, a| acc | 1 << a))
        .collect()
}

/// `sum H(A_i) - H(union) - H(union of pairwise intersections)`, as
/// coefficients on subsets of atoms.
fn lemma_terms(n: usize) -> Vec<(u32, i64)> {
    let sets = atom_sets(n);
    let union = sets.iter().fold(0, |acc, s| acc | s);
    let mut overlaps = 0;
    for i in 0..n {
        for j in i + 1..n {
            overlaps |= sets[i] & sets[j];
        }
    }
    let mut terms: Vec<(u32, i64)> = sets.iter().map(|&s| (s, 1)).collect();
    terms.push((union, -1));
    terms.push((overlaps, -1));
    terms
}

/// Largest value of `sign * f` over the cone cut out by the elemental
/// inequalities on `m` ground variables, where `f` is the lemma's slack.
fn solve(n: usize, sign: i64) -> Result<Status, ShannonError> {
    if !(2..=3).contains(&n) {
        return Err(ShannonError::OutOfRange(n));
    }
    let m = (1usize << n) - 1;
    let full: u32 = (1 << m) - 1;
    let mut lp = LinearProgram::new();
    let h: Vec<_> = (1..=full).map(|s| lp.add_variable(format!("h{s:b}"), true)).collect();
    let var = |s: u32| h[s as usize - 1];
    for j in 0..m {
        let rest = full & !(1 << j);
        let mut terms = vec![(var(full), int(-1))];
        if rest != 0 {
            terms.push((var(rest), int(1)));
        }
        lp.add_constraint(format!("cond{j}"), terms, Relation::Le, int(0))?;
    }
    for i in 0..m {
        for j in i + 1..m {
            let others = full & !(1 << i) & !(1 << j);
            let mut k = others;
            loop {
                let mut terms = vec![(var(k | 1 << i), int(-1)), (var(k | 1 << j), int(-1)), (var(k | 1 << i | 1 << j), int(1))];
                if k != 0 {
                    terms.push((var(k), int(1)));
                }
                lp.add_constraint(format!("mi{i}_{j}_{k:b}"), terms, Relation::Le, int(0))?;
                if k == 0 {
                    break;
                }
                k = (k - 1) & others;
            }
        }
    }
    lp.set_objective(lemma_terms(n).into_iter().map(|(s, c)| (var(s), int(-sign * c))))?;
    let result = simplex_solve(&lp)?;
    Ok(match result.status {
        Status::Optimal if !result.value.is_zero() => Status::Unbounded,
        status => status,
    })
}

/// True iff `sum H(A_i) >= H(u A_i) + H(u_{i<j} A_i n A_j)` holds for every
/// entropy vector satisfying the elemental Shannon inequalities.
pub fn verify_shannon_type(n: usize) -> Result<bool, ShannonError> {
    Ok(solve(n, 1)? == Status::Optimal)
}

/// Same check for the reversed inequality; expected to fail.
pub fn verify_shannon_type_flipped(n: usize) -> Result<bool, ShannonError> {
    Ok(solve(n, -1)? == Status::Optimal)
}
