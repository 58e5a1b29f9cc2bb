//! Rate bounds for directed and undirected k-pairs networks.
//!
//! The crate covers four areas:
//!
//! * [`network`]: the network model, its text format and the standard
//!   instance families (the `N1` meagerness-gap family, the three-commodity
//!   Hu network, complete bipartite Type-I/Type-II networks).
//! * [`bounds`]: sparsity, meagerness and the Wiener bound computed by
//!   exhaustive cut enumeration and breadth-first search.
//! * [`lp`] and [`routing`]: an exact rational simplex solver and the
//!   maximum concurrent multicommodity flow LP built on top of it.
//! * [`entropy`]: a certificate language for entropy-inequality proofs of
//!   coding-rate upper bounds, a checker, generators for the known proof
//!   chains and a Shannon-LP validator for the pairwise-intersection
//!   inequality.
//!
//! All quantities are exact [`Rational`]s.

pub mod bounds;
pub mod entropy;
pub mod lp;
pub mod network;
pub mod rational;
pub mod routing;

pub use rational::Rational;
