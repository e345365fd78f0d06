//! Exact computation of graph-theoretic broadcast-rate bounds for index
//! coding, together with the linear codes that achieve them.
//!
//! The crate covers the full pipeline:
//!
//! * [`instance`] — groupcast/unicast problem instances, JSON (de)serialization
//!   and deterministic generators,
//! * [`hyperclique`] — weak-hyperclique enumeration and interference
//!   neighborhoods,
//! * [`lp`] — an exact rational LP/ILP solver (two-phase simplex with Bland's
//!   rule, branch and bound),
//! * [`cover`] — the four covering programs (hyperclique cover, partition
//!   multicast, local hyperclique cover and its partitioned variant) in both
//!   integral and fractional form,
//! * [`gf`] — finite-field arithmetic and linear algebra over GF(p) and
//!   GF(2^k),
//! * [`code`] — MDS-based index-code constructions and decodability checks,
//! * [`minrank`] — brute-force minrank of small side-information graphs,
//! * [`report`] — bound reports, inequality verdicts and the generator-spec
//!   mini-language used by the CLI.
//!
//! All bound computations are carried out in exact rational arithmetic; no
//! floating point is used anywhere in the solve path.

pub mod code;
pub mod cover;
mod error;
pub mod gf;
pub mod hyperclique;
pub mod instance;
pub mod lp;
pub mod minrank;
pub mod rational;
pub mod report;

pub use error::Error;
pub use instance::{GroupcastInstance, UnicastInstance};
pub use rational::Rat;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
