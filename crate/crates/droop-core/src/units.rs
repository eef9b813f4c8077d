//! Unit conversions, physical constants, and derivation of the linear-domain
//! working parameters from an engineering-unit link description.
//!
//! All internal model power is in mW (the per-span NLI coefficient is quoted
//! in mW^-2); dB and dBm appear only at I/O boundaries.

use serde::Deserialize;

use crate::error::ModelError;

/// Planck constant, J*s (SI exact).
pub const PLANCK_J_S: f64 = 6.62607015e-34;

/// Speed of light in vacuum, m/s (SI exact).
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Engineering-unit description of one amplified link: N identical spans of
/// fiber, each followed by a power-mode amplifier holding its output at the
/// launch power.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    /// Span length, km.
    pub span_length_km: f64,
    /// Fiber attenuation, dB/km.
    pub loss_db_per_km: f64,
    /// Amplifier noise figure, dB.
    pub noise_figure_db: f64,
    /// Per-channel ASE/receiver bandwidth, GHz.
    pub bandwidth_ghz: f64,
    /// Carrier wavelength, nm. Defaults to 1550 (C-band convention).
    #[serde(default = "default_wavelength_nm")]
    pub center_wavelength_nm: f64,
    /// Number of identical spans.
    pub n_spans: u32,
    /// Per-span NLI coefficient, mW^-2.
    pub alpha_nl_per_mw2: f64,
    /// GAWBS redistribution coefficient, km^-1. Defaults to 0.
    #[serde(default)]
    pub gamma_gawbs_per_km: f64,
}

fn default_wavelength_nm() -> f64 {
    1550.0
}

impl LinkConfig {
    /// Checks every field invariant, reporting the first offending key.
    pub fn validate(&self) -> Result<(), ModelError> {
        let positive = [
            ("span_length_km", self.span_length_km),
            ("loss_db_per_km", self.loss_db_per_km),
            ("bandwidth_ghz", self.bandwidth_ghz),
            ("center_wavelength_nm", self.center_wavelength_nm),
        ];
        for (key, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(ModelError::Config(format!(
                    "{key} must be finite and > 0, got {value}"
                )));
            }
        }
        let non_negative = [
            ("noise_figure_db", self.noise_figure_db),
            ("alpha_nl_per_mw2", self.alpha_nl_per_mw2),
            ("gamma_gawbs_per_km", self.gamma_gawbs_per_km),
        ];
        for (key, value) in non_negative {
            if !value.is_finite() {
                return Err(ModelError::Config(format!(
                    "{key} must be finite, got {value}"
                )));
            }
        }
        if self.alpha_nl_per_mw2 < 0.0 {
            return Err(ModelError::Config(format!(
                "alpha_nl_per_mw2 must be >= 0, got {}",
                self.alpha_nl_per_mw2
            )));
        }
        if self.gamma_gawbs_per_km < 0.0 {
            return Err(ModelError::Config(format!(
                "gamma_gawbs_per_km must be >= 0, got {}",
                self.gamma_gawbs_per_km
            )));
        }
        if self.n_spans < 1 {
            return Err(ModelError::Config("n_spans must be >= 1".into()));
        }
        Ok(())
    }
}

/// Linear-unit working set derived from a [`LinkConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Span transmittance L in (0, 1).
    pub span_loss_linear: f64,
    /// Equivalent input ASE power per span, mW: mu_a = h*nu*F_N*B.
    pub mu_a_mw: f64,
    /// Per-span output ASE absent droop, mW: beta = mu_a / L.
    pub beta_mw: f64,
    /// Per-span NLI coefficient, mW^-2.
    pub alpha_nl_per_mw2: f64,
    /// Dimensionless per-span GAWBS redistribution fraction gamma*l.
    pub gawbs_loss: f64,
    /// Number of identical spans.
    pub n_spans: u32,
}

/// Converts a dB value to a linear power ratio, `10^(x/10)`.
pub fn db_to_linear(x_db: f64) -> Result<f64, ModelError> {
    if !x_db.is_finite() {
        return Err(ModelError::Domain(format!(
            "dB value must be finite, got {x_db}"
        )));
    }
    Ok(10f64.powf(x_db / 10.0))
}

/// Converts a linear power ratio to dB, `10*log10(x)`.
pub fn linear_to_db(ratio: f64) -> Result<f64, ModelError> {
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(ModelError::Domain(format!(
            "linear ratio must be finite and > 0, got {ratio}"
        )));
    }
    Ok(10.0 * ratio.log10())
}

/// Converts a dBm power to mW, `10^(p/10)`.
pub fn dbm_to_mw(p_dbm: f64) -> Result<f64, ModelError> {
    if !p_dbm.is_finite() {
        return Err(ModelError::Domain(format!(
            "dBm value must be finite, got {p_dbm}"
        )));
    }
    Ok(10f64.powf(p_dbm / 10.0))
}

/// Converts a mW power to dBm, `10*log10(p)`.
pub fn mw_to_dbm(p_mw: f64) -> Result<f64, ModelError> {
    if !p_mw.is_finite() || p_mw <= 0.0 {
        return Err(ModelError::Domain(format!(
            "mW power must be finite and > 0, got {p_mw}"
        )));
    }
    Ok(10.0 * p_mw.log10())
}

/// Derives the linear-domain working parameters from a link configuration.
///
/// The equivalent input ASE per span is `mu_a = h*nu*F_N*B` with
/// `nu = c/lambda` and the noise figure linearized; `beta = mu_a/L` is the
/// per-span output ASE that an undrooped amplifier would emit.
pub fn derive_params(cfg: &LinkConfig) -> Result<DerivedParams, ModelError> {
    cfg.validate()?;

    let span_loss_db = cfg.loss_db_per_km * cfg.span_length_km;
    let span_loss_linear = db_to_linear(-span_loss_db)?;
    if span_loss_linear >= 1.0 {
        return Err(ModelError::Config(format!(
            "span loss {span_loss_db} dB gives transmittance {span_loss_linear} >= 1"
        )));
    }
    if span_loss_linear <= 0.0 {
        return Err(ModelError::Config(format!(
            "span loss {span_loss_db} dB underflows the transmittance to 0"
        )));
    }

    let nu_hz = SPEED_OF_LIGHT_M_S / (cfg.center_wavelength_nm * 1e-9);
    let noise_factor = db_to_linear(cfg.noise_figure_db)?;
    let bandwidth_hz = cfg.bandwidth_ghz * 1e9;
    // photon energy h*nu in J, power in W, then to mW
    let mu_a_mw = PLANCK_J_S * nu_hz * noise_factor * bandwidth_hz * 1e3;
    let beta_mw = mu_a_mw / span_loss_linear;

    let gawbs_loss = cfg.gamma_gawbs_per_km * cfg.span_length_km;
    if gawbs_loss >= 1.0 {
        return Err(ModelError::Config(format!(
            "gamma_gawbs_per_km * span_length_km = {gawbs_loss} >= 1: \
             GAWBS removes all power per span"
        )));
    }

    Ok(DerivedParams {
        span_loss_linear,
        mu_a_mw,
        beta_mw,
        alpha_nl_per_mw2: cfg.alpha_nl_per_mw2,
        gawbs_loss,
        n_spans: cfg.n_spans,
    })
}
