//! Exact arithmetic in Hahn series fields `k((G))` over the real algebraic
//! numbers, with a log-closed monomial group, developments, truncation
//! integer parts and the exponential group chain.

pub mod development;
pub mod error;
pub mod exp;
mod factor;
pub mod integer_part;
pub mod json;
pub mod monomial;
mod mpoly;
pub mod poly;
pub mod residue;
pub mod series;

pub use development::{Development, ExtendCase, MaximalityReport, Step, Triple, Verdict};
pub use error::{Error, Result};
pub use exp::{
    chain_run, dyadic_check, exp_series, gadget_build, log_series, ChainState, DyadicReport,
    Gadget, GadgetSpec,
};
pub use integer_part::{ip_exp, ip_floor, ip_verify, IpElement};
pub use monomial::{rat, GenId, GenKind, Generator, Monomial, Registry};
pub use residue::RealAlg;
pub use series::{Series, SeriesSplit, Term};
