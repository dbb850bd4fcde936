//! # negdep
//!
//! Exact rational toolkit for extreme negative dependence on finite
//! probability spaces.
//!
//! The crate builds, decomposes and classifies random vectors whose
//! components are pairwise counter-monotonic, joint mixes or negatively
//! associated, and solves risk-sharing problems for agents who assess
//! their positions by Value-at-Risk.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`space`] | finite spaces, random variables and vectors, refinement |
//! | [`dependence`] | comonotonicity, counter-monotonicity, NA, NOD, joint CDFs |
//! | [`construct`] | comonotone coupling, counter-monotone representation, increasing transforms |
//! | [`frechet`] | which marginal tuples support counter-monotonicity and joint mixes |
//! | [`risk`] | VaR, ES, convex order, Bernoulli aggregation bounds |
//! | [`sharing`] | quantile-agent risk sharing and the auction problem |
//!
//! Every probability and every value is a [`Rational`]; nothing is
//! rounded. Zero-mass atoms are not representable, so "almost surely"
//! statements reduce to statements about every atom.
//!
//! ```
//! use negdep::{Composition, RandomVariable, Space, construct, dependence, rat};
//!
//! let space = Space::uniform(3).unwrap();
//! let lottery = construct::build_pcm(
//!     &RandomVariable::constant(&space, rat(1, 1)),
//!     &Composition::from_assignment(3, vec![0, 1, 2]).unwrap(),
//!     &[rat(0, 1), rat(0, 1), rat(0, 1)],
//! )
//! .unwrap();
//! assert!(dependence::is_pairwise_counter_monotonic(&lottery));
//! assert_eq!(dependence::is_joint_mix(&lottery), Some(rat(1, 1)));
//! ```
#![forbid(unsafe_code)]

pub mod construct;
pub mod dependence;
mod error;
pub mod frechet;
pub mod lp;
mod rational;
pub mod risk;
pub mod sharing;
pub mod space;

pub use error::{Error, Result};
pub use rational::{format_rational, parse_rational, rat, ParseRationalError, Rational};
pub use space::{
    AtomId, Composition, DiscreteDistribution, RandomVariable, RandomVector, RankLayout,
    RefinePolicy, Refinement, Space,
};

/// Default number of (upper set, upper set) pairs the negative association
/// check may enumerate.
pub const DEFAULT_NA_BUDGET: u64 = 1_000_000;

/// Default number of grid cells the joint-mix feasibility oracle may use.
pub const DEFAULT_CELL_BUDGET: u64 = 10_000;
