//! Auditing the projection-cost-preservation inequality
//! `(1 − ε)‖A − PA‖² ≤ ‖Ã − PÃ‖² + c ≤ (1 + ε)‖A − PA‖²` over finite probe sets,
//! plus the black-box harness tying certificates to observed PCP error.

mod implication;
mod probes;
mod report;

pub use implication::{approx_transfer_check, implication_test, ImplicationOutcome, TransferCheck};
pub use probes::{
    cluster_candidates, generate_probes, generate_probes_with, ProbeOptions, ProbeSet,
};
pub use report::{pcp_error_on_probe, pcp_report, PcpReport, ProbeEvaluation};
