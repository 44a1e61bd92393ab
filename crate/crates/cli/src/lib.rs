//! Library side of the `eqcol` command: instance loading, reports and the
//! benchmark harness.

pub mod bench;
pub mod instances;
pub mod report;
