//! File formats, reports, verification suites, reference oracles and the
//! command-line front end for `quantalib-core`.

pub mod cli;
pub mod format;
pub mod oracle;
pub mod report;
pub mod suites;
