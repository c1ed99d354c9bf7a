//! Closed-form predictions and the cross-check harness.

pub mod identities;
pub mod predict;
pub mod report;
pub mod suite;

pub use identities::{
    check_cylinder_traces, check_divisibility, check_generating_functions, check_identities,
    check_ordinary_cylinder_traces, check_ordinary_rect_series, check_product_table, check_spectra, IdentityConfig,
};
pub use predict::{predict_alternating, Branch, TheoremPrediction};
pub use report::{CheckReport, CheckRow, Status, Summary};
pub use suite::{default_strategy, explore_ordinary_cylinders, run_suite, suite_instances, Method, SuiteName};
