//! Exact enumeration and asymptotics of degree-bounded labelled trees and
//! rooted forests, plus seeded random-graph experiments against the
//! concentration predictions for maximum induced bounded-degree
//! trees/forests in `G(n, p)`.
//!
//! Module map:
//!
//! - [`gamma`]: the truncated-exponential polynomial family and the
//!   structural constants `alpha_delta`, `a_delta`;
//! - [`series`]: exact truncated power-series arithmetic;
//! - [`graph`]: labelled trees, rooted forests, shapes, degree sequences;
//! - [`prufer`]: the three bijective codecs;
//! - [`enumerate`]: exhaustive code-driven streams (oracle harness);
//! - [`count`]: exact big-integer/rational counting formulas and moments;
//! - [`asymptotics`]: log-scale main terms, saddle points, windows;
//! - [`rg`]: seeded `G(n, p)`, exact search, experiments;
//! - [`oracle`]: brute-force reference implementations for verification.

pub mod asymptotics;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod gamma;
pub mod graph;
pub mod oracle;
pub mod prufer;
pub mod rg;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
