//! Deterministic simulator for round-robin CPU scheduling with dynamic
//! time quanta.
//!
//! Seven policies are provided (static RR, DQRRR, IRRVQ, SARR, RP-5, MRR and
//! DABRR). [`engine::simulate`] turns a [`model::Workload`] and a
//! [`engine::Policy`] into an [`model::ExecutionTrace`];
//! [`metrics::compute_metrics`] derives waiting, turnaround, response and
//! context-switch figures from it.
//!
//! ```
//! use dynrr::{engine::simulate, metrics::compute_metrics, policies::make_dabrr};
//! use dynrr::workloads::{paper_case, CaseId};
//!
//! let workload = paper_case(CaseId::I);
//! let trace = simulate(&workload, &make_dabrr()).unwrap();
//! assert_eq!(trace.quanta(), [69, 27, 6]);
//! let m = compute_metrics(&trace, &workload).unwrap();
//! assert_eq!(m.context_switches, 7);
//! ```

pub mod engine;
pub mod format;
pub mod gantt;
pub mod metrics;
pub mod model;
pub mod policies;
pub mod reproduce;
pub mod workloads;

pub use engine::{replay_check, simulate, Policy};
pub use metrics::{compute_metrics, RunMetrics};
pub use model::{ExecutionTrace, PolicyDescriptor, PolicyName, ProcessSpec, Workload};
