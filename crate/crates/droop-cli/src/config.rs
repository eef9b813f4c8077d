//! Config-file ingestion.
//!
//! A link config is a flat TOML file whose keys mirror the fields of
//! [`LinkConfig`] exactly. Unknown keys are rejected so a typo cannot
//! silently fall back to a default; `center_wavelength_nm` (1550) and
//! `gamma_gawbs_per_km` (0) are the only optional keys.

use std::fs;
use std::path::Path;

use droop_core::LinkConfig;

use crate::CliError;

pub fn load_config(path: &Path) -> Result<LinkConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let cfg: LinkConfig = toml::from_str(&text)
        .map_err(|err| CliError::Config(format!("{}: {err}", path.display())))?;
    cfg.validate()?;
    Ok(cfg)
}
