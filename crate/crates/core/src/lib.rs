//! Exact label-level simulation of entanglement purification on
//! Bell-diagonal states.
//!
//! Every protocol here is built from bilateral XOR gates, comparison
//! measurements and local relabelings, all of which act on Bell states as
//! permutations of their two-bit labels. Tracking label distributions is
//! therefore exact: no density matrices are needed. The crate provides
//!
//! * the label algebra ([`label`], [`string`], [`circuit`]) and entropy,
//! * an enumeration engine over joint label strings with numeric or exact
//!   polynomial weights ([`enumerate`], [`poly`]),
//! * yield formulas for hashing, the recurrence method, the block method and
//!   the four-pair protocol, and their compositions ([`protocols`]),
//! * curve sweeps, crossover scans and exact self-checks ([`curve`],
//!   [`crossover`], [`verify`]).

// NaN must fail range checks, so `!(x >= 0.0)` style guards are deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod crossover;
pub mod curve;
pub mod dist;
pub mod entropy;
pub mod enumerate;
pub mod error;
pub mod label;
pub mod poly;
pub mod protocols;
pub mod string;
pub mod verify;

pub use circuit::BxorCircuit;
pub use crossover::{crossover_scan, CrossoverInterval, CrossoverReport, ScanConfig, ScanPoint};
pub use curve::{fidelity_grid, yield_curve, yield_point, CurveConfig, Protocol, YieldPoint};
pub use dist::BellDiagonal;
pub use entropy::shannon_entropy;
pub use enumerate::{
    generate_table, ls_exact, ms_exact, product_table, product_table_symbolic, recurrence_exact, ConditionalResult,
    TableRecord, Weight, WeightedStringTable,
};
pub use error::{Error, Result};
pub use label::{bx_relabel, bxor, measure_compare, sigma_x_relabel, Axis, BellLabel};
pub use poly::{BellPolynomial, VarSet};
pub use protocols::{
    hashing_yield, ls_closed_form_general, ls_closed_form_werner, ls_yield, ms_yield, pipeline_yield,
    recurrence_schedule_yield, recurrence_step, ProtocolSchedule, Terminal,
};
pub use string::{apply_f, BellString};
pub use verify::{verify, VerifyReport, VerifyTarget};
