//! Samplers, named property suites and their reports.

pub mod report;
pub mod sampler;
pub mod suites;

pub use report::{SuiteReport, SCHEMA};
pub use sampler::{sample_penta, SamplerConfig, SamplerStrategy};
pub use suites::{run_suite, run_suite_id, SuiteConfig, SuiteId};
