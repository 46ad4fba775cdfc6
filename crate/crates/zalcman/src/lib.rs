//! Verification campaigns, extremal search and reports on top of
//! [`zalcman_core`].
//!
//! Every campaign is a pure function of its [`CampaignConfig`]; see
//! [`run_campaign`]. Reports are written as JSON or CSV by [`emit_report`].

pub mod campaign;
pub mod config;
pub mod error;
pub mod oracle;
pub mod report;

pub use campaign::run_campaign;
pub use config::{CampaignConfig, CampaignKind, OutputFormat};
pub use error::{HarnessError, Result};
pub use report::{emit_report, CampaignReport, Witness};
