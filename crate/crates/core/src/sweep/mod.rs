//! Parameter sweeps over acceleration and family parameters, with CSV and
//! plot output.

pub mod config;
pub mod csv;
pub mod plot;
pub mod presets;
pub mod report;
pub mod run;

pub use config::{parse_config, AccMode, Axis, SweepConfig};
pub use report::{discrepancy_report, DiscrepancyReport, ReportConfig};
pub use run::{run_sweep, SweepRow, SweepTable, Value};
