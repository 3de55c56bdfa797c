//! System-level simulator for device-to-device (D2D) links underlaying the
//! uplink of a multi-cell network.
//!
//! The crate models a primary cellular uplink (one CUE per cell on a shared
//! resource block) plus a secondary network of D2D pairs reusing the same
//! resource, and implements three admission/power-control methods that
//! maximize the number of simultaneously active D2D links under SINR
//! constraints:
//!
//! * [`bac`] — blind admission control: a per-cell statistical count bound
//!   with random pair selection and channel-inversion power control,
//! * [`dac`] — distributed admission control: each pair self-admits iff its
//!   power lower bound (own QoS) does not exceed its upper bound (CUE
//!   interference budget), using only BS-broadcast statistics,
//! * [`oac`] — optimal admission control: exact subset search with a
//!   minimal-power feasibility oracle, used as the benchmark.
//!
//! Supporting layers: [`geometry`] (cell layout and user drops), [`channel`]
//! (path loss, shadowing, gain tables), [`statmodel`] (interference areas and
//! closed-form expected gains), [`cellular`] (CUE open-loop power control and
//! realized SINRs), [`metrics`] (CDFs, percentiles, outage), and [`harness`]
//! (the Monte-Carlo engine).

pub mod bac;
pub mod cellular;
pub mod channel;
pub mod config;
pub mod dac;
pub mod geometry;
pub mod harness;
pub mod metrics;
pub mod oac;
pub mod outcome;
pub mod seeding;
pub mod statmodel;
pub mod units;

mod error;

pub use config::{Method, ScenarioConfig};
pub use error::Error;
pub use outcome::AdmissionOutcome;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
