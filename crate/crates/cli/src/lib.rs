//! Verification driver: runs certificate suites over the core library and
//! renders reports and artifacts.

pub mod artifacts;
pub mod checks;
pub mod config;
pub mod report;

use std::path::Path;

pub use artifacts::{emit, Artifact};
pub use config::{parse_spacings, Param, QesConfig, RunConfig, Suite};
pub use report::{CheckReport, RunReport, Status, Summary};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or values; the process exits with status 2.
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] h3_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Runs the selected suites in dependency order. The configuration is
/// validated before anything is computed.
pub fn run_suite(config: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    config.validate()?;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    Ok(suites.into_iter().flat_map(|s| checks::suite_checks(s, config)).collect())
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

pub fn write_report(report: &RunReport, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, report.to_json())?;
    Ok(())
}

/// 0 when nothing failed, 1 otherwise.
pub fn exit_status(checks: &[CheckReport]) -> u8 {
    u8::from(checks.iter().any(|c| c.status == Status::Fail))
}
