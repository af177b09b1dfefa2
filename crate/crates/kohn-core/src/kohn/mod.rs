//! Multipliers with exact orders, the procedures P1 and P2 as trace steps,
//! and node-by-node trace verification.

mod trace;
mod verify;

pub use trace::{is_unit_value, p1_order, p2_order, Multiplier, NodeCertificate, NodeId, NodeKind, Trace, TraceNode};
pub use verify::{verify_trace, NodeReport, TraceReport};
