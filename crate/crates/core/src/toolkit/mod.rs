//! Instances, exact oracle, generator and property harness.

pub mod gen;
pub mod harness;
pub mod instance;
pub mod oracle;

pub use instance::{Instance, Solution};
pub use oracle::{exact_opt, OracleResult};
