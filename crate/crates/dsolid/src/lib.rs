//! Exact calculus for real anti-canonical cycles on blow-ups of ℙ¹×ℙ¹ at
//! conjugate point pairs, and for the branch quartics of the associated
//! double solids.
//!
//! [`cycle`] enumerates configurations by blowing up cycle nodes, and
//! [`divisor`] attaches the multiplicities of the divisor `D`. [`resolution`]
//! turns those into the invariants `e`, `μ` and `m`. On the algebraic side,
//! [`quartic`] builds explicit models `h₁h₂h₃h₄ = Q²` and classifies their
//! singularities at the ridge points.

pub mod bitangent;
pub mod cycle;
pub mod divisor;
pub mod exec;
pub mod families;
pub mod lattice;
pub mod poly;
pub mod quartic;
pub mod report;
pub mod resolution;
