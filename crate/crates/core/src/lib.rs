//! Exact combinatorics of metric-tree operads.
//!
//! This crate computes, over exact rational arithmetic, with:
//!
//! - planar rooted trees with edge lengths in `[0,1]` and the quotient
//!   defining the associahedra ([`tree`], [`operad_k`]);
//! - Moore paths in tree space with piecewise-affine labels ([`moore`]) and
//!   the explicit sliding-edge path families σ, γ and λ ([`paths`]);
//! - the two-sided bar construction over finite monoids and finite action
//!   sets, with its rewriting normal form, retraction, loop families and
//!   cone-relative paths ([`bar`]);
//! - one-dimensional Swiss-cheese interval configurations, their colored
//!   compositions, the tree-to-interval comparison map θ, and the algebra of
//!   piecewise-constant loops ([`swiss_cheese`]);
//! - literal parsing and printing for trees, paths, configurations and bar
//!   elements ([`literal`]), plus seeded random generators ([`gen`]).
//!
//! Everything is generic over the scalar (see [`scalar::Scalar`]); the
//! default instantiation [`Q`] uses arbitrary-precision rationals, so all
//! identities are decided exactly, with no tolerances anywhere.

pub mod action;
pub mod bar;
pub mod gen;
pub mod literal;
pub mod moore;
pub mod operad_k;
pub mod paths;
pub mod scalar;
pub mod swiss_cheese;
pub mod tree;

/// Arbitrary-precision rational scalar, the default instantiation.
pub type Q = num_rational::BigRational;

/// Machine-word rational scalar; fine for small hand inputs, can overflow on
/// deep compositions.
pub type Q64 = num_rational::Rational64;

pub use action::FiniteAction;
pub use scalar::Scalar;
pub use tree::{equal_mod, Branch, Color, Tree};
