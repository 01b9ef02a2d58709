//! Exact covering arithmetic for translates of finite sets.
//!
//! Given a finite set `S`, this crate computes — always in exact rational
//! arithmetic — how efficiently translates of `S` can cover an ambient
//! structure:
//!
//! * the integers `Z`: covering density `nu(S)`, the minimal fraction of
//!   integers used as translate positions, together with the minimal period
//!   `ell(S)` of an optimal periodic covering and an explicit witness covering
//!   ([`debruijn`]);
//! * a cyclic group `Z_n` or a small product of cyclic groups: the covering
//!   number `tau` (fewest translates whose union is the whole group), by greedy
//!   choice or exhaustive branch-and-bound ([`finite_cover`]);
//! * a discrete interval `{1, .., n}`: exact `tau(S, n)` by a frontier dynamic
//!   program ([`finite_cover`]);
//! * unions of rational closed intervals in `R`: certified lower bounds on the
//!   covering efficiency, with explicit periodic coverings as certificates
//!   ([`realline`]).
//!
//! Derived quantities follow one convention throughout: for a covering of a
//! structure of size `n` by `tau` translates of a `k`-element set, the
//! multiplicity is `kappa = tau * k / n >= 1` (average number of times a point
//! is covered) and the efficiency is `e = 1 / kappa <= 1`. For coverings of
//! `Z`, `kappa = nu * k`.
//!
//! [`sweeps`] reproduces the reference tables (max minimal period by diameter,
//! by diameter and size, minimum efficiency over a window), and [`random_lab`]
//! runs reproducible experiments on uniform random subsets of `Z_n`.

pub mod debruijn;
pub mod error;
pub mod finite_cover;
pub mod limits;
pub mod random_lab;
pub mod rat;
pub mod realline;
pub mod sets;
pub mod sweeps;

pub use error::Error;
pub use limits::Limits;
pub use rat::Rat;
pub use sets::{CyclicSet, ZSet};

/// Schema tag stamped on every JSON document this crate emits.
pub const SCHEMA_VERSION: &str = "1";

pub type Result<T> = std::result::Result<T, Error>;
