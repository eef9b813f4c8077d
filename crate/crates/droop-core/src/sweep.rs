//! Sweep generators: SNR versus launch power, top spectral efficiency
//! versus span count, and the optimum-power summary markers.

use crate::droop::{
    asymptotes, optimal_power_gdf, optimal_power_gn, se_gap_approx, snr_gdf, snr_gdf_upper_bound,
    snr_gn, spectral_efficiency,
};
use crate::error::ModelError;
use crate::units::{dbm_to_mw, derive_params, DerivedParams, LinkConfig};

/// One row of a launch-power sweep. `values` is `None` where the droop
/// model is invalid (the redistributed fraction reached 1); such rows are
/// kept so consumers can see where the perturbative model ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Launch power, dBm.
    pub p_dbm: f64,
    pub values: Option<SweepValues>,
}

impl SweepRow {
    pub fn is_valid(&self) -> bool {
        self.values.is_some()
    }
}

/// Model columns of a valid power-sweep row, all SNRs in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepValues {
    pub snr_gn_db: f64,
    pub snr_gdf_db: f64,
    pub snr_gdf_ub_db: f64,
    pub gap_db_exact: f64,
    pub gap_db_approx: f64,
    pub gn_lin_asym_db: f64,
    pub gn_nl_asym_db: f64,
    pub gdf_lin_asym_db: f64,
    pub gdf_nl_asym_db: f64,
}

/// One row of a span-count sweep of top spectral efficiency, b/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanSweepRow {
    pub n_spans: u32,
    pub se_o_gn: f64,
    pub se_o_gdf: f64,
    pub se_gap_exact: f64,
    pub se_gap_approx: f64,
}

/// Optimum-power summary for one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopMarkers {
    /// GN optimal launch power, mW.
    pub p_o_gn_mw: f64,
    /// GN SNR at its optimum, linear.
    pub snr_o_gn: f64,
    /// Drooped-model optimal launch power, mW.
    pub p_o_gdf_mw: f64,
    /// Drooped SNR at its optimum, linear.
    pub snr_o_gdf: f64,
    /// Drooped top SNR predicted from the GN top via the upper bound.
    pub snr_o_gdf_predicted: f64,
    /// `predicted(dB) - exact(dB)`.
    pub prediction_error_db: f64,
}

/// dB of a strictly positive (possibly infinite) linear ratio.
fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Uniform dB grid from `min` to `max` inclusive (when `max` lands on the
/// grid) with spacing `step`.
fn grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let count = ((max - min) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| min + i as f64 * step).collect()
}

/// Sweeps both SNR models over a uniform dBm power grid.
pub fn sweep_power(
    cfg: &LinkConfig,
    p_min_dbm: f64,
    p_max_dbm: f64,
    step_db: f64,
) -> Result<Vec<SweepRow>, ModelError> {
    if !p_min_dbm.is_finite() || !p_max_dbm.is_finite() || p_min_dbm >= p_max_dbm {
        return Err(ModelError::Config(format!(
            "power grid needs p_min < p_max, got [{p_min_dbm}, {p_max_dbm}] dBm"
        )));
    }
    if !step_db.is_finite() || step_db <= 0.0 {
        return Err(ModelError::Config(format!(
            "power grid step must be > 0 dB, got {step_db}"
        )));
    }
    let params = derive_params(cfg)?;
    grid(p_min_dbm, p_max_dbm, step_db)
        .into_iter()
        .map(|p_dbm| sweep_row(p_dbm, &params))
        .collect()
}

fn sweep_row(p_dbm: f64, params: &DerivedParams) -> Result<SweepRow, ModelError> {
    let p_mw = dbm_to_mw(p_dbm)?;
    let snr_gdf_v = match snr_gdf(p_mw, params) {
        Ok(v) => v,
        Err(ModelError::DroopDomain { .. }) => {
            return Ok(SweepRow {
                p_dbm,
                values: None,
            })
        }
        Err(e) => return Err(e),
    };
    let snr_gn_v = snr_gn(p_mw, params)?;
    let asym = asymptotes(p_mw, params)?;
    Ok(SweepRow {
        p_dbm,
        values: Some(SweepValues {
            snr_gn_db: to_db(snr_gn_v),
            snr_gdf_db: to_db(snr_gdf_v),
            snr_gdf_ub_db: to_db(snr_gdf_upper_bound(snr_gn_v, params.n_spans)),
            gap_db_exact: 10.0 * (snr_gn_v / snr_gdf_v).log10(),
            gap_db_approx: crate::droop::gap_db_approx(snr_gn_v, params.n_spans),
            gn_lin_asym_db: to_db(asym.gn_linear),
            gn_nl_asym_db: to_db(asym.gn_nonlinear),
            gdf_lin_asym_db: to_db(asym.gdf_linear),
            gdf_nl_asym_db: to_db(asym.gdf_nonlinear),
        }),
    })
}

/// Sweeps the top spectral efficiency of both models over a span-count
/// range, optimizing the launch power at every N.
pub fn sweep_spans(
    cfg: &LinkConfig,
    n_min: u32,
    n_max: u32,
    n_step: u32,
) -> Result<Vec<SpanSweepRow>, ModelError> {
    if n_min < 1 || n_min > n_max {
        return Err(ModelError::Config(format!(
            "span grid needs 1 <= n_min <= n_max, got [{n_min}, {n_max}]"
        )));
    }
    if n_step < 1 {
        return Err(ModelError::Config("span grid step must be >= 1".into()));
    }
    let base = derive_params(cfg)?;
    (n_min..=n_max)
        .step_by(n_step as usize)
        .map(|n_spans| {
            let params = DerivedParams { n_spans, ..base };
            let p_o_gn = optimal_power_gn(&params)?;
            let snr_o_gn = snr_gn(p_o_gn, &params)?;
            let p_o_gdf = optimal_power_gdf(&params)?;
            let snr_o_gdf = snr_gdf(p_o_gdf, &params)?;
            let se_o_gn = spectral_efficiency(snr_o_gn);
            let se_o_gdf = spectral_efficiency(snr_o_gdf);
            Ok(SpanSweepRow {
                n_spans,
                se_o_gn,
                se_o_gdf,
                se_gap_exact: se_o_gn - se_o_gdf,
                se_gap_approx: se_gap_approx(snr_o_gn),
            })
        })
        .collect()
}

/// Optimal powers and top SNRs of both models, plus the drooped top SNR
/// predicted from the GN top through the upper bound.
pub fn top_markers(cfg: &LinkConfig) -> Result<TopMarkers, ModelError> {
    let params = derive_params(cfg)?;
    let p_o_gn_mw = optimal_power_gn(&params)?;
    let snr_o_gn = snr_gn(p_o_gn_mw, &params)?;
    let p_o_gdf_mw = optimal_power_gdf(&params)?;
    let snr_o_gdf = snr_gdf(p_o_gdf_mw, &params)?;
    let snr_o_gdf_predicted = snr_gdf_upper_bound(snr_o_gn, params.n_spans);
    Ok(TopMarkers {
        p_o_gn_mw,
        snr_o_gn,
        p_o_gdf_mw,
        snr_o_gdf,
        snr_o_gdf_predicted,
        prediction_error_db: 10.0 * (snr_o_gdf_predicted / snr_o_gdf).log10(),
    })
}
