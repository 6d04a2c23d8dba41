//! Exact moments of small dilute Wigner matrices and the closed-form bounds they are checked against.

mod audit;
mod lower;
mod moment;
mod spec;

pub use audit::{class_weight_audit, per_start_vertex, AuditReport, AuditRow, AUDIT_N_CAP, AUDIT_S_CAP};
pub use lower::{insertion_count, insertion_lower_bound_holds, theorem_7_1_rhs};
pub use moment::{
    exact_moment, moment_by_trajectories, moment_by_walks, pair_weight, walk_weight, MomentResult,
    OracleMethod, DEFAULT_TRAJECTORY_BUDGET,
};
pub use spec::{format_rational, parse_rational, MomentSpec, OracleLaw};
