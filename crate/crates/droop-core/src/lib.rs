//! SNR and spectral-efficiency models for long-haul optically amplified
//! links whose amplifiers run in power mode (constant output power).
//!
//! With the output power pinned, every impairment added inside a span must
//! displace signal power rather than stack on top of it. This crate
//! implements the resulting drooped SNR in closed form, the classical
//! incoherent GN-model SNR it generalizes, the upper bound and gap
//! approximations connecting the two, optimal launch powers for both, the
//! dual-polarization spectral-efficiency bound, and a per-span
//! power-bookkeeping simulator that reproduces the closed form exactly and
//! serves as its brute-force cross-check.
//!
//! Everything is a pure function of its inputs: no globals, no
//! interior mutability, safe to call from any number of threads.

pub mod droop;
pub mod error;
pub mod sim;
pub mod sweep;
pub mod units;

pub use droop::{
    asymptotes, chi_ase, chi_redistribution, gap_db_approx, max_snr_gn, optimal_power_gdf,
    optimal_power_gn, se_gap_approx, snr_gdf, snr_gdf_upper_bound, snr_gn, snr_report,
    spectral_efficiency, total_droop, DroopFactors, SnrAsymptotes, SnrReport,
};
pub use error::ModelError;
pub use sim::{run_chain, step, ChainTrace, PowerState, MAX_TRACE_SPANS};
pub use sweep::{
    sweep_power, sweep_spans, top_markers, SpanSweepRow, SweepRow, SweepValues, TopMarkers,
};
pub use units::{
    db_to_linear, dbm_to_mw, derive_params, linear_to_db, mw_to_dbm, DerivedParams, LinkConfig,
    PLANCK_J_S, SPEED_OF_LIGHT_M_S,
};
