//! Deterministic serialization: the run manifest, CSV writers, and the
//! shared number format.
//!
//! Every CSV starts with `#`-prefixed manifest lines (tool version,
//! subcommand, the fully resolved config, the derived parameters in linear
//! and dB form, and the grid), so stripping comments leaves a plain
//! RFC-4180-style table that is still reproducible from its own header.
//! All numeric fields carry 9 significant digits in scientific notation
//! with `.` as the decimal separator; infinities print as `inf`, and model
//! columns of rows outside the droop model's validity print as `NA` with a
//! `valid` flag of 0.

use std::io::{self, Write};

use droop_core::{ChainTrace, DerivedParams, LinkConfig, SpanSweepRow, SweepRow};

/// Formats a float with 9 significant digits, locale-independent.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "NA".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    // normalize -0.0 so equal values always print the same bytes
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.8e}")
}

/// Manifest prefixed (as `#` comments) to every output file.
pub struct RunManifest<'a> {
    pub subcommand: &'a str,
    pub config: &'a LinkConfig,
    pub derived: &'a DerivedParams,
    /// Subcommand-specific lines (grid spec, overrides, results).
    pub extra: Vec<(String, String)>,
}

impl RunManifest<'_> {
    pub fn write(&self, w: &mut impl Write) -> io::Result<()> {
        let cfg = self.config;
        let d = self.derived;
        writeln!(w, "# droop {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# subcommand: {}", self.subcommand)?;
        writeln!(
            w,
            "# config.span_length_km = {}",
            fmt_f64(cfg.span_length_km)
        )?;
        writeln!(
            w,
            "# config.loss_db_per_km = {}",
            fmt_f64(cfg.loss_db_per_km)
        )?;
        writeln!(
            w,
            "# config.noise_figure_db = {}",
            fmt_f64(cfg.noise_figure_db)
        )?;
        writeln!(w, "# config.bandwidth_ghz = {}", fmt_f64(cfg.bandwidth_ghz))?;
        writeln!(
            w,
            "# config.center_wavelength_nm = {}",
            fmt_f64(cfg.center_wavelength_nm)
        )?;
        writeln!(w, "# config.n_spans = {}", cfg.n_spans)?;
        writeln!(
            w,
            "# config.alpha_nl_per_mw2 = {}",
            fmt_f64(cfg.alpha_nl_per_mw2)
        )?;
        writeln!(
            w,
            "# config.gamma_gawbs_per_km = {}",
            fmt_f64(cfg.gamma_gawbs_per_km)
        )?;
        writeln!(
            w,
            "# derived.span_loss_db = {}",
            fmt_f64(cfg.loss_db_per_km * cfg.span_length_km)
        )?;
        writeln!(
            w,
            "# derived.span_loss_linear = {}",
            fmt_f64(d.span_loss_linear)
        )?;
        writeln!(w, "# derived.mu_a_mw = {}", fmt_f64(d.mu_a_mw))?;
        writeln!(
            w,
            "# derived.mu_a_dbm = {}",
            fmt_f64(10.0 * d.mu_a_mw.log10())
        )?;
        writeln!(w, "# derived.beta_mw = {}", fmt_f64(d.beta_mw))?;
        writeln!(
            w,
            "# derived.beta_dbm = {}",
            fmt_f64(10.0 * d.beta_mw.log10())
        )?;
        writeln!(
            w,
            "# derived.alpha_nl_per_mw2 = {}",
            fmt_f64(d.alpha_nl_per_mw2)
        )?;
        writeln!(w, "# derived.gawbs_loss = {}", fmt_f64(d.gawbs_loss))?;
        writeln!(w, "# derived.n_spans = {}", d.n_spans)?;
        for (key, value) in &self.extra {
            writeln!(w, "# {key} = {value}")?;
        }
        Ok(())
    }
}

pub fn write_power_sweep_csv(
    w: &mut impl Write,
    manifest: &RunManifest<'_>,
    rows: &[SweepRow],
) -> io::Result<()> {
    manifest.write(w)?;
    writeln!(
        w,
        "p_dbm,snr_gn_db,snr_gdf_db,snr_gdf_ub_db,gap_db_exact,gap_db_approx,\
         gn_lin_asym_db,gn_nl_asym_db,gdf_lin_asym_db,gdf_nl_asym_db,valid"
    )?;
    for row in rows {
        match row.values {
            Some(v) => writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},1",
                fmt_f64(row.p_dbm),
                fmt_f64(v.snr_gn_db),
                fmt_f64(v.snr_gdf_db),
                fmt_f64(v.snr_gdf_ub_db),
                fmt_f64(v.gap_db_exact),
                fmt_f64(v.gap_db_approx),
                fmt_f64(v.gn_lin_asym_db),
                fmt_f64(v.gn_nl_asym_db),
                fmt_f64(v.gdf_lin_asym_db),
                fmt_f64(v.gdf_nl_asym_db),
            )?,
            None => writeln!(w, "{},NA,NA,NA,NA,NA,NA,NA,NA,NA,0", fmt_f64(row.p_dbm))?,
        }
    }
    Ok(())
}

pub fn write_span_sweep_csv(
    w: &mut impl Write,
    manifest: &RunManifest<'_>,
    rows: &[SpanSweepRow],
) -> io::Result<()> {
    manifest.write(w)?;
    writeln!(w, "n_spans,se_o_gn,se_o_gdf,se_gap_exact,se_gap_approx")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            row.n_spans,
            fmt_f64(row.se_o_gn),
            fmt_f64(row.se_o_gdf),
            fmt_f64(row.se_gap_exact),
            fmt_f64(row.se_gap_approx),
        )?;
    }
    Ok(())
}

pub fn write_trace_csv(
    w: &mut impl Write,
    manifest: &RunManifest<'_>,
    trace: &ChainTrace,
) -> io::Result<()> {
    manifest.write(w)?;
    writeln!(w, "k,p_s_mw,p_a_mw,p_n_mw,total_mw,chi_a,chi_n")?;
    for state in &trace.states {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            state.span_index,
            fmt_f64(state.p_s_mw),
            fmt_f64(state.p_a_mw),
            fmt_f64(state.p_n_mw),
            fmt_f64(state.total_mw()),
            fmt_f64(trace.chi_a),
            fmt_f64(trace.chi_n),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_nine_significant_digits() {
        assert_eq!(fmt_f64(78.0), "7.80000000e1");
        assert_eq!(fmt_f64(0.171), "1.71000000e-1");
        assert_eq!(fmt_f64(-45.737430096545474), "-4.57374301e1");
        assert_eq!(fmt_f64(0.0), "0.00000000e0");
        assert_eq!(fmt_f64(-0.0), "0.00000000e0");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn round_trips_through_parse() {
        for &x in &[4.515057586020769, 5.755180832489449e-4, -0.5125162610521611] {
            let parsed: f64 = fmt_f64(x).parse().unwrap();
            assert!((parsed - x).abs() <= 1e-8 * x.abs());
        }
    }
}
