//! Exact probability metrics on finite metric spaces.
//!
//! This crate computes the classical probability metrics (Ky-Fan, `L^p`,
//! `L^∞`, indicator, Prokhorov, total variation) between random variables on
//! finite metric spaces with exact rational arithmetic, computes their
//! minimal (coupling-optimal) counterparts via an exact transportation
//! simplex, and evaluates limit operators of probability uniform gauges on
//! eventually periodic sequences. A seeded generator and a suite runner make
//! the structural identities and inequalities checkable from the command
//! line with zero tolerance.
//!
//! Module map:
//! - [`space`], [`rv`], [`chain`]: finite metric spaces, random variables on
//!   the unit-interval sample space, laws, couplings, chain laws, gluing.
//! - [`value`], [`metrics`]: exact metric values and the six probability
//!   metric evaluators.
//! - [`transport`]: exact optimization over the transportation polytope.
//! - [`minimal`]: the minimal-metric (hat) operator and its witnesses.
//! - [`gauges`]: gauges, limit operators, reflection and coreflection,
//!   gap exploration, contraction checks.
//! - [`instance`], [`generate`], [`suite`], [`oracles`]: instance files,
//!   seeded generation, verification suites, brute-force reference
//!   evaluators.

pub mod chain;
pub mod error;
pub mod gauges;
pub mod generate;
pub mod instance;
pub mod metrics;
pub mod minimal;
pub mod oracles;
pub mod rat;
pub mod rv;
pub mod space;
pub mod suite;
pub mod transport;
pub mod value;

pub use chain::{glue, glue_chain, joint_law, realize_chain, relayout, ChainLaw, Coupling};
pub use error::{Error, Result};
pub use gauges::{coreflect, limit_operator, limsup_seq, min_limit_gap, reflect, Gauge, SequenceSpec};
pub use metrics::{
    indicator_metric, ky_fan, linf_metric, lp_metric, prokhorov, total_variation,
    MetricDescriptor,
};
pub use minimal::{check_hat_triangle, eval_metric, hat, hat_generic, hat_with_witness};
pub use rat::Rat;
pub use rv::{equal_ae, law_of, realize, Law, Piece, RandomVariable};
pub use space::{FinMetricSpace, SpaceRef};
pub use transport::{bottleneck, enumerate_vertices, min_mass_above, transport_lp, TransportProblem};
pub use value::MetricValue;
