//! File formats, generators and the conjecture scan.

pub mod format;
pub mod generate;
pub mod scan;
