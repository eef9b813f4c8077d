//! Closed-form link quantities: per-span droop factors, drooped and
//! GN-model SNRs, the droop upper bound and gap approximations, optimal
//! launch powers, and spectral efficiency.
//!
//! A power-mode amplifier holds its output at the launch power P, so every
//! locally added impairment must displace signal power instead of adding on
//! top of it. Per span the signal is depleted by `chi_a = (1 + beta/P)^-1`
//! (ASE making room for itself) and by `chi_n = 1 - alpha_nl*P^2 - gamma*l`
//! (Kerr/GAWBS power redistribution in the fiber); after N spans the
//! received signal is `P*chi^N` with `chi = chi_a*chi_n`, everything else is
//! noise, and the drooped SNR is `1/(chi^-N - 1)`.

use crate::error::ModelError;
use crate::units::DerivedParams;

/// Iteration cap for the drooped-optimum fixed point.
const OPTIMUM_MAX_ITERS: usize = 100;
/// Relative step tolerance for the drooped-optimum fixed point.
const OPTIMUM_TOL: f64 = 1e-12;
/// Relative stationarity residual accepted for the drooped optimum.
const OPTIMUM_RESIDUAL_TOL: f64 = 1e-10;

/// Per-span signal droop factors at one launch power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DroopFactors {
    /// ASE droop `(1 + beta/P)^-1`.
    pub chi_a: f64,
    /// Redistribution droop `1 - alpha_nl*P^2 - gamma*l`.
    pub chi_n: f64,
    /// Total per-span signal droop `chi_a * chi_n`.
    pub chi: f64,
}

/// Point evaluation of both SNR models, the bound, and the gaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrReport {
    /// Launch power per channel, mW.
    pub power_mw: f64,
    /// Drooped SNR `1/(chi^-N - 1)`, linear.
    pub snr_gdf: f64,
    /// GN-model SNR `(1/N)/(beta/P + alpha_nl*P^2 + gamma*l)`, linear.
    pub snr_gn: f64,
    /// Upper bound on the drooped SNR computed from the GN SNR, linear.
    pub snr_gdf_ub: f64,
    /// `SNR_GN(dB) - SNR_GDF(dB)`.
    pub gap_db_exact: f64,
    /// First-order gap approximation `5*log10(e)*(1 - 1/N)/SNR_GN`, dB.
    pub gap_db_approx: f64,
    /// Single-span linear SNR `P/beta`.
    pub snr1a: f64,
    /// Single-span nonlinear SNR `1/(alpha_nl*P^2)`.
    pub snr1n: f64,
}

/// Straight-line tails of both SNR models, each with the other impairment
/// zeroed. GAWBS is excluded from all four forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrAsymptotes {
    /// `P/(N*beta)`.
    pub gn_linear: f64,
    /// `1/(N*alpha_nl*P^2)`.
    pub gn_nonlinear: f64,
    /// `1/((1 + beta/P)^N - 1)`.
    pub gdf_linear: f64,
    /// `1/((1 - alpha_nl*P^2)^-N - 1)`.
    pub gdf_nonlinear: f64,
}

fn check_power(p_mw: f64) -> Result<(), ModelError> {
    if !p_mw.is_finite() || p_mw <= 0.0 {
        return Err(ModelError::Domain(format!(
            "launch power must be finite and > 0 mW, got {p_mw}"
        )));
    }
    Ok(())
}

fn check_ase(beta_mw: f64) -> Result<(), ModelError> {
    if !beta_mw.is_finite() || beta_mw < 0.0 {
        return Err(ModelError::Domain(format!(
            "per-span ASE power must be finite and >= 0 mW, got {beta_mw}"
        )));
    }
    Ok(())
}

/// Per-span redistribution fraction `alpha_nl*P^2 + gamma*l`, checked
/// against the first-order validity bound.
fn redistribution_fraction(p_mw: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    let fraction = params.alpha_nl_per_mw2 * p_mw * p_mw + params.gawbs_loss;
    if fraction >= 1.0 {
        return Err(ModelError::DroopDomain { p_mw, fraction });
    }
    Ok(fraction)
}

/// ASE droop `chi_a = (1 + beta/P)^-1`.
pub fn chi_ase(p_mw: f64, beta_mw: f64) -> Result<f64, ModelError> {
    check_power(p_mw)?;
    check_ase(beta_mw)?;
    Ok((1.0 + beta_mw / p_mw).recip())
}

/// Redistribution droop `chi_n = 1 - alpha_nl*P^2 - gamma*l`.
///
/// Fails with a droop-domain error once the redistributed fraction reaches
/// 1, the validity bound of the first-order model; powers beyond it are
/// rejected, never clamped.
pub fn chi_redistribution(p_mw: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    check_power(p_mw)?;
    Ok(1.0 - redistribution_fraction(p_mw, params)?)
}

/// Both droop factors and their product `chi = chi_a * chi_n`.
pub fn total_droop(p_mw: f64, params: &DerivedParams) -> Result<DroopFactors, ModelError> {
    let chi_a = chi_ase(p_mw, params.beta_mw)?;
    let chi_n = chi_redistribution(p_mw, params)?;
    Ok(DroopFactors {
        chi_a,
        chi_n,
        chi: chi_a * chi_n,
    })
}

fn span_count(params: &DerivedParams) -> Result<u32, ModelError> {
    if params.n_spans < 1 {
        return Err(ModelError::Domain("n_spans must be >= 1".into()));
    }
    Ok(params.n_spans)
}

/// Drooped SNR after N spans, `1/(chi^-N - 1)`.
///
/// `chi^-N - 1` is evaluated as `expm1(N*ln(chi^-1))` so the result keeps
/// full relative accuracy when `N*(1 - chi)` is tiny. A fully transparent
/// chain (`chi = 1`) yields `+inf`.
pub fn snr_gdf(p_mw: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    let n = span_count(params)?;
    check_power(p_mw)?;
    check_ase(params.beta_mw)?;
    let ase_ratio = params.beta_mw / p_mw;
    let redistributed = redistribution_fraction(p_mw, params)?;
    if n == 1 {
        // chi^-1 - 1 = (beta/P + r)/(1 - r); the single-span SNR collapses
        // algebraically to P*(1-r)/(beta + r*P), exact when r = 0
        return Ok(p_mw * (1.0 - redistributed) / (params.beta_mw + redistributed * p_mw));
    }
    // chi^-1 = (1 + beta/P)/(1 - r), so chi^-1 - 1 = (beta/P + r)/(1 - r)
    let inv_chi_m1 = (ase_ratio + redistributed) / (1.0 - redistributed);
    Ok(f64::exp_m1(f64::from(n) * f64::ln_1p(inv_chi_m1)).recip())
}

/// GN-model SNR with incoherent NLI accumulation,
/// `(1/N) / (beta/P + alpha_nl*P^2 + gamma*l)`.
///
/// The GAWBS term enters the denominator the same way it enters `chi_n`,
/// keeping the two models comparable when GAWBS is on.
pub fn snr_gn(p_mw: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    let n = span_count(params)?;
    check_power(p_mw)?;
    check_ase(params.beta_mw)?;
    let x = params.beta_mw / p_mw + params.alpha_nl_per_mw2 * p_mw * p_mw + params.gawbs_loss;
    Ok((f64::from(n) * x).recip())
}

/// Upper bound on the drooped SNR given the GN SNR:
/// `SNR_GN / (1 + (1 - 1/N)/(2*SNR_GN))`.
///
/// Requires `snr_gn > 0` and `n_spans >= 1`; at `N = 1` it returns the GN
/// SNR unchanged.
pub fn snr_gdf_upper_bound(snr_gn: f64, n_spans: u32) -> f64 {
    snr_gn / (1.0 + (1.0 - f64::from(n_spans).recip()) / (2.0 * snr_gn))
}

/// First-order dB gap from the GN SNR to the drooped SNR:
/// `5*log10(e)*(1 - 1/N)/SNR_GN`. Requires `snr_gn > 0`.
pub fn gap_db_approx(snr_gn: f64, n_spans: u32) -> f64 {
    5.0 * std::f64::consts::LOG10_E * (1.0 - f64::from(n_spans).recip()) / snr_gn
}

/// Optimal GN launch power `(beta/(2*alpha_nl))^(1/3)`, where the per-span
/// ASE is exactly twice the per-span NLI.
pub fn optimal_power_gn(params: &DerivedParams) -> Result<f64, ModelError> {
    if params.alpha_nl_per_mw2 <= 0.0 || params.alpha_nl_per_mw2.is_nan() {
        return Err(ModelError::NoFiniteOptimum(
            "alpha_nl = 0: SNR is monotone increasing in launch power".into(),
        ));
    }
    if params.beta_mw <= 0.0 || params.beta_mw.is_nan() {
        return Err(ModelError::NoFiniteOptimum(
            "beta = 0: SNR is monotone decreasing in launch power".into(),
        ));
    }
    Ok((params.beta_mw / (2.0 * params.alpha_nl_per_mw2)).cbrt())
}

/// Maximum GN SNR, `(1/N) / (3*alpha_nl*P_oGN^2)`.
///
/// Matches `snr_gn` at the optimal GN power when `gawbs_loss = 0`.
pub fn max_snr_gn(params: &DerivedParams) -> Result<f64, ModelError> {
    let n = span_count(params)?;
    let p_o = optimal_power_gn(params)?;
    Ok((f64::from(n) * 3.0 * params.alpha_nl_per_mw2 * p_o * p_o).recip())
}

/// Launch power maximizing the drooped SNR: the fixed point of
/// `P <- P_oGN * chi(P)^(1/3)`.
///
/// Starts at the GN optimum and iterates the map (a contraction everywhere
/// the droop model is valid); if the iteration ever stops contracting it
/// falls back to bisection of the stationarity condition
/// `beta*chi(P) = 2*alpha_nl*P^3` over `[P_oGN/2, P_oGN]`.
pub fn optimal_power_gdf(params: &DerivedParams) -> Result<f64, ModelError> {
    let p_ogn = optimal_power_gn(params)?;
    let mut p = p_ogn;
    let mut last_step = f64::INFINITY;
    for _ in 0..OPTIMUM_MAX_ITERS {
        let next = p_ogn * total_droop(p, params)?.chi.cbrt();
        let step = (next - p).abs();
        if step <= OPTIMUM_TOL * next {
            return finish_optimum(next, params);
        }
        if step >= last_step {
            // cycling instead of contracting
            return bisect_stationarity(p_ogn, params);
        }
        last_step = step;
        p = next;
    }
    bisect_stationarity(p_ogn, params)
}

/// Relative stationarity residual `(beta*chi - 2*alpha_nl*P^3)/(beta*chi)`.
fn stationarity_residual(p_mw: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    let chi = total_droop(p_mw, params)?.chi;
    let lhs = params.beta_mw * chi;
    Ok((lhs - 2.0 * params.alpha_nl_per_mw2 * p_mw.powi(3)) / lhs)
}

fn finish_optimum(p_mw: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    let residual = stationarity_residual(p_mw, params)?;
    if residual.abs() <= OPTIMUM_RESIDUAL_TOL {
        Ok(p_mw)
    } else {
        Err(ModelError::NonConvergence {
            last_p_mw: p_mw,
            residual,
        })
    }
}

fn bisect_stationarity(p_ogn: f64, params: &DerivedParams) -> Result<f64, ModelError> {
    let mut lo = 0.5 * p_ogn;
    let mut hi = p_ogn;
    let g_lo = stationarity_residual(lo, params)?;
    let g_hi = stationarity_residual(hi, params)?;
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_lo < 0.0 || g_hi > 0.0 {
        return Err(ModelError::NonConvergence {
            last_p_mw: hi,
            residual: g_hi,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= OPTIMUM_TOL * mid {
            return finish_optimum(mid, params);
        }
        if stationarity_residual(mid, params)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    finish_optimum(0.5 * (lo + hi), params)
}

/// Spectral efficiency per mode for dual-polarization transmission,
/// `2*log2(1 + snr)` b/s/Hz. Requires `snr >= 0`.
pub fn spectral_efficiency(snr: f64) -> f64 {
    2.0 * f64::ln_1p(snr) / std::f64::consts::LN_2
}

/// First-order gap between the top GN and top drooped spectral efficiency,
/// `(2/ln 2) * s/(1 + 2s + 2s^2)` at `s = SNR_oGN`. Requires `snr_ogn > 0`.
pub fn se_gap_approx(snr_ogn: f64) -> f64 {
    // written as a reciprocal so both s -> 0 and s -> inf limits give 0
    (2.0 / std::f64::consts::LN_2) / (snr_ogn.recip() + 2.0 + 2.0 * snr_ogn)
}

/// Linear and nonlinear straight-line tails of both models at one power.
pub fn asymptotes(p_mw: f64, params: &DerivedParams) -> Result<SnrAsymptotes, ModelError> {
    let n = span_count(params)?;
    check_power(p_mw)?;
    check_ase(params.beta_mw)?;
    let n = f64::from(n);
    let ase_ratio = params.beta_mw / p_mw;
    let nl_fraction = params.alpha_nl_per_mw2 * p_mw * p_mw;
    if nl_fraction >= 1.0 {
        return Err(ModelError::DroopDomain {
            p_mw,
            fraction: nl_fraction,
        });
    }
    Ok(SnrAsymptotes {
        gn_linear: (n * ase_ratio).recip(),
        gn_nonlinear: (n * nl_fraction).recip(),
        gdf_linear: f64::exp_m1(n * f64::ln_1p(ase_ratio)).recip(),
        // (1 - r)^-1 - 1 = r/(1 - r), same factoring as snr_gdf
        gdf_nonlinear: f64::exp_m1(n * f64::ln_1p(nl_fraction / (1.0 - nl_fraction))).recip(),
    })
}

/// Evaluates both models, the bound, and the gaps at one launch power.
pub fn snr_report(p_mw: f64, params: &DerivedParams) -> Result<SnrReport, ModelError> {
    let snr_gdf_v = snr_gdf(p_mw, params)?;
    let snr_gn_v = snr_gn(p_mw, params)?;
    Ok(SnrReport {
        power_mw: p_mw,
        snr_gdf: snr_gdf_v,
        snr_gn: snr_gn_v,
        snr_gdf_ub: snr_gdf_upper_bound(snr_gn_v, params.n_spans),
        gap_db_exact: 10.0 * (snr_gn_v / snr_gdf_v).log10(),
        gap_db_approx: gap_db_approx(snr_gn_v, params.n_spans),
        snr1a: p_mw / params.beta_mw,
        snr1n: (params.alpha_nl_per_mw2 * p_mw * p_mw).recip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{derive_params, LinkConfig};
    use approx::assert_relative_eq;

    fn reference_params() -> DerivedParams {
        derive_params(&LinkConfig {
            span_length_km: 78.0,
            loss_db_per_km: 0.171,
            noise_figure_db: 8.0,
            bandwidth_ghz: 33.0,
            center_wavelength_nm: 1550.0,
            n_spans: 228,
            alpha_nl_per_mw2: 4.1e-4,
            gamma_gawbs_per_km: 0.0,
        })
        .unwrap()
    }

    fn ase_free(params: &DerivedParams) -> DerivedParams {
        DerivedParams {
            mu_a_mw: 0.0,
            beta_mw: 0.0,
            ..*params
        }
    }

    #[test]
    fn chi_ase_examples() {
        assert_eq!(chi_ase(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(chi_ase(3.0, 3.0).unwrap(), 0.5);
        let params = reference_params();
        assert_relative_eq!(
            chi_ase(0.889, params.beta_mw).unwrap(),
            0.9993530419042006,
            max_relative = 1e-12
        );
        assert!(matches!(chi_ase(0.0, 1.0), Err(ModelError::Domain(_))));
        assert!(matches!(chi_ase(1.0, -1.0), Err(ModelError::Domain(_))));
    }

    #[test]
    fn chi_redistribution_examples() {
        let params = reference_params();
        let linear_fiber = DerivedParams {
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        assert_eq!(chi_redistribution(1.0, &linear_fiber).unwrap(), 1.0);
        assert_relative_eq!(
            chi_redistribution(1.0, &params).unwrap(),
            0.99959,
            max_relative = 1e-15
        );
        // alpha_nl * 50^2 = 1.025 >= 1
        match chi_redistribution(50.0, &params).unwrap_err() {
            ModelError::DroopDomain { fraction, .. } => {
                assert_relative_eq!(fraction, 1.025, max_relative = 1e-12)
            }
            other => panic!("expected droop-domain error, got {other:?}"),
        }
    }

    #[test]
    fn total_droop_composes() {
        let params = reference_params();
        let factors = total_droop(0.889, &params).unwrap();
        assert_eq!(factors.chi, factors.chi_a * factors.chi_n);
        assert_relative_eq!(factors.chi, 0.9990292199290739, max_relative = 1e-12);

        let transparent = DerivedParams {
            beta_mw: 0.0,
            mu_a_mw: 0.0,
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        let factors = total_droop(1.0, &transparent).unwrap();
        assert_eq!((factors.chi_a, factors.chi_n, factors.chi), (1.0, 1.0, 1.0));

        // P -> 0+: chi_a -> 0+, chi_n -> 1 - gawbs_loss
        let factors = total_droop(1e-300, &params).unwrap();
        assert!(factors.chi_a > 0.0 && factors.chi_a < 1e-290);
        assert_eq!(factors.chi_n, 1.0);
    }

    #[test]
    fn snr_gdf_against_naive_arithmetic() {
        let params = reference_params();
        let p = 0.889;
        // independent route: naive chi^-N - 1, accurate at these magnitudes
        let chi = (1.0 / (1.0 + params.beta_mw / p)) * (1.0 - params.alpha_nl_per_mw2 * p * p);
        let naive = (chi.recip().powi(228) - 1.0).recip();
        let snr = snr_gdf(p, &params).unwrap();
        assert_relative_eq!(snr, naive, max_relative = 1e-12);
        assert_relative_eq!(snr, 4.034225344389586, max_relative = 1e-12);
        assert_relative_eq!(10.0 * snr.log10(), 6.06, max_relative = 1e-3);
    }

    #[test]
    fn snr_gdf_single_span_is_exact() {
        let params = DerivedParams {
            n_spans: 1,
            alpha_nl_per_mw2: 0.0,
            ..reference_params()
        };
        for p in [0.1, 0.889, 2.5, 7.0] {
            assert_eq!(snr_gdf(p, &params).unwrap(), p / params.beta_mw);
        }

        // with nonlinearity on, the single span still matches direct
        // arithmetic of 1/(chi^-1 - 1). The expanded single-span ratio
        // (1 - r)/(b + r) is good to a few ulp; any route that materializes
        // chi first carries chi's rounding through a 1/(1 - chi)
        // amplification, so that comparison gets the looser bound.
        let nonlinear = DerivedParams {
            n_spans: 1,
            ..reference_params()
        };
        for p in [0.1, 0.889, 2.5, 7.0] {
            let b = nonlinear.beta_mw / p;
            let r = nonlinear.alpha_nl_per_mw2 * p * p;
            let expanded = (1.0 - r) / (b + r);
            let got = snr_gdf(p, &nonlinear).unwrap();
            assert_relative_eq!(got, expanded, max_relative = 1e-14);

            let chi = total_droop(p, &nonlinear).unwrap().chi;
            assert_relative_eq!(got, chi / (1.0 - chi), max_relative = 1e-12);
        }
    }

    #[test]
    fn snr_gdf_matches_gn_to_first_order_for_tiny_droop() {
        // N*(1 - chi) ~ 1e-9: both models converge to 1/(N*(1-chi))
        let params = DerivedParams {
            span_loss_linear: 0.5,
            mu_a_mw: 5e-12,
            beta_mw: 1e-11,
            alpha_nl_per_mw2: 0.0,
            gawbs_loss: 0.0,
            n_spans: 100,
        };
        let snr = snr_gdf(1.0, &params).unwrap();
        let gn = snr_gn(1.0, &params).unwrap();
        assert_relative_eq!(snr, gn, max_relative = 1e-6);
    }

    #[test]
    fn snr_gn_examples() {
        let params = reference_params();
        assert_relative_eq!(
            snr_gn(0.889, &params).unwrap(),
            4.51505702274212,
            max_relative = 1e-12
        );

        // ASE-only: P/(N*beta)
        let ase_only = DerivedParams {
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        let p = 2.0;
        assert_relative_eq!(
            snr_gn(p, &ase_only).unwrap(),
            p / (228.0 * params.beta_mw),
            max_relative = 1e-15
        );

        // N = 1, beta = P, alpha = 0 -> 1.0
        let unit = DerivedParams {
            beta_mw: 2.0,
            n_spans: 1,
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        assert_eq!(snr_gn(2.0, &unit).unwrap(), 1.0);
        assert!(matches!(snr_gn(0.0, &params), Err(ModelError::Domain(_))));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(snr_gdf_upper_bound(4.51, 1), 4.51);
        assert_relative_eq!(
            snr_gdf_upper_bound(4.51505702274212, 228),
            4.066685183316871,
            max_relative = 1e-12
        );
        // SNR -> inf: bound approaches the GN value
        let big = 1e12;
        assert_relative_eq!(
            snr_gdf_upper_bound(big, 228) / big,
            1.0,
            max_relative = 1e-11
        );
    }

    #[test]
    fn gap_approx_examples() {
        assert_eq!(gap_db_approx(4.51, 1), 0.0);
        assert_relative_eq!(
            gap_db_approx(4.51505702274212, 228),
            0.4788308091859101,
            max_relative = 1e-12
        );
        // N -> inf at SNR = 1: the asymptotic constant 5*log10(e)
        assert_relative_eq!(
            gap_db_approx(1.0, u32::MAX),
            2.171472409516259,
            max_relative = 1e-9
        );
    }

    #[test]
    fn optimal_power_gn_examples() {
        let params = reference_params();
        let p_o = optimal_power_gn(&params).unwrap();
        assert_relative_eq!(p_o, 0.8886860723815262, max_relative = 1e-12);
        // ASE is twice the NLI at the optimum
        let ase = params.beta_mw / p_o;
        let nli2 = 2.0 * params.alpha_nl_per_mw2 * p_o * p_o;
        assert_relative_eq!(ase, nli2, max_relative = 1e-12);

        // cube root of 1
        let unit = DerivedParams {
            beta_mw: 8.2e-4,
            ..params
        };
        assert_relative_eq!(optimal_power_gn(&unit).unwrap(), 1.0, max_relative = 1e-15);

        // scaling beta by 8 doubles the optimum
        let scaled = DerivedParams {
            beta_mw: 8.0 * params.beta_mw,
            ..params
        };
        assert_relative_eq!(
            optimal_power_gn(&scaled).unwrap(),
            2.0 * p_o,
            max_relative = 1e-15
        );

        let linear_fiber = DerivedParams {
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        assert!(matches!(
            optimal_power_gn(&linear_fiber),
            Err(ModelError::NoFiniteOptimum(_))
        ));
    }

    #[test]
    fn max_snr_gn_examples() {
        let params = reference_params();
        let top = max_snr_gn(&params).unwrap();
        assert_relative_eq!(top, 4.515057586020769, max_relative = 1e-12);
        let p_o = optimal_power_gn(&params).unwrap();
        assert_relative_eq!(top, snr_gn(p_o, &params).unwrap(), max_relative = 1e-12);

        let doubled = DerivedParams {
            n_spans: 456,
            ..params
        };
        assert_relative_eq!(
            max_snr_gn(&doubled).unwrap(),
            top / 2.0,
            max_relative = 1e-15
        );

        // single span with alpha*P_o^2 = 1/3: P_o = 1 needs beta = 2*alpha
        let unit = DerivedParams {
            beta_mw: 2.0 / 3.0,
            alpha_nl_per_mw2: 1.0 / 3.0,
            n_spans: 1,
            ..params
        };
        assert_relative_eq!(optimal_power_gn(&unit).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(max_snr_gn(&unit).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn gn_optimum_is_stationary_by_central_difference() {
        let params = reference_params();
        let p_o = optimal_power_gn(&params).unwrap();
        let h = 1e-6 * p_o;
        let up = snr_gn(p_o + h, &params).unwrap();
        let down = snr_gn(p_o - h, &params).unwrap();
        let slope = (up - down) / (2.0 * h);
        // normalized |d snr / d lnP| / snr
        let relative_slope = (slope * p_o / max_snr_gn(&params).unwrap()).abs();
        assert!(relative_slope <= 1e-6, "relative slope {relative_slope:e}");
    }

    #[test]
    fn optimal_power_gdf_examples() {
        let params = reference_params();
        let p_o = optimal_power_gdf(&params).unwrap();
        let p_ogn = optimal_power_gn(&params).unwrap();
        assert_relative_eq!(p_o, 0.888398406496972, max_relative = 1e-10);
        assert!(p_o <= p_ogn);
        assert!((p_o - p_ogn).abs() / p_ogn < 5e-4);

        // ratio to the GN optimum is chi^(1/3)
        let chi = total_droop(p_o, &params).unwrap().chi;
        assert_relative_eq!(p_o / p_ogn, chi.cbrt(), max_relative = 1e-10);

        // stationarity: beta*chi = 2*alpha*P^3
        assert!(stationarity_residual(p_o, &params).unwrap().abs() <= 1e-10);

        // local grid check: the returned power beats its neighbours
        let snr_at = |p: f64| snr_gdf(p, &params).unwrap();
        assert!(snr_at(p_o) >= snr_at(p_o * (1.0 - 1e-3)));
        assert!(snr_at(p_o) >= snr_at(p_o * (1.0 + 1e-3)));

        let linear_fiber = DerivedParams {
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        assert!(matches!(
            optimal_power_gdf(&linear_fiber),
            Err(ModelError::NoFiniteOptimum(_))
        ));
    }

    #[test]
    fn optimal_power_gdf_rejects_invalid_region() {
        // optimum sits where alpha*P^2 > 1: model invalid there
        let params = DerivedParams {
            span_loss_linear: 0.5,
            mu_a_mw: 5.0,
            beta_mw: 10.0,
            alpha_nl_per_mw2: 0.1,
            gawbs_loss: 0.0,
            n_spans: 10,
        };
        assert!(matches!(
            optimal_power_gdf(&params),
            Err(ModelError::DroopDomain { .. })
        ));
    }

    #[test]
    fn bisection_fallback_finds_the_optimum() {
        let params = reference_params();
        let p_ogn = optimal_power_gn(&params).unwrap();
        let via_bisection = bisect_stationarity(p_ogn, &params).unwrap();
        let via_fixed_point = optimal_power_gdf(&params).unwrap();
        assert_relative_eq!(via_bisection, via_fixed_point, max_relative = 1e-11);
    }

    #[test]
    fn spectral_efficiency_examples() {
        assert_eq!(spectral_efficiency(0.0), 0.0);
        assert_eq!(spectral_efficiency(1.0), 2.0);
        assert_relative_eq!(
            spectral_efficiency(4.515057586020769),
            4.926751899877322,
            max_relative = 1e-12
        );
    }

    #[test]
    fn se_gap_approx_examples() {
        assert_relative_eq!(
            se_gap_approx(4.515057586020769),
            0.25644273110336496,
            max_relative = 1e-12
        );
        assert!(se_gap_approx(1e-12) < 1e-11);
        assert_eq!(se_gap_approx(f64::INFINITY), 0.0);
    }

    #[test]
    fn asymptote_reductions() {
        let params = reference_params();

        // alpha = 0: the drooped SNR equals its linear tail exactly
        let ase_only = DerivedParams {
            alpha_nl_per_mw2: 0.0,
            ..params
        };
        for p in [0.05, 0.889, 5.0] {
            let asym = asymptotes(p, &ase_only).unwrap();
            assert_eq!(snr_gdf(p, &ase_only).unwrap(), asym.gdf_linear);
            assert_eq!(asym.gn_nonlinear, f64::INFINITY);
            assert_eq!(asym.gdf_nonlinear, f64::INFINITY);
        }

        // beta = 0: the drooped SNR equals its nonlinear tail exactly
        let nli_only = ase_free(&params);
        for p in [0.5, 2.0, 10.0] {
            let asym = asymptotes(p, &nli_only).unwrap();
            assert_eq!(snr_gdf(p, &nli_only).unwrap(), asym.gdf_nonlinear);
        }

        // the drooped nonlinear tail falls below the GN one at high power
        for i in 0..40 {
            let p = 1.0 * 10f64.powf(i as f64 / 25.0); // 1..~36 mW
            if params.alpha_nl_per_mw2 * p * p >= 1.0 {
                break;
            }
            let asym = asymptotes(p, &params).unwrap();
            assert!(asym.gdf_nonlinear < asym.gn_nonlinear);
        }

        assert!(matches!(
            asymptotes(60.0, &params),
            Err(ModelError::DroopDomain { .. })
        ));
    }

    #[test]
    fn snr_report_is_consistent() {
        let params = reference_params();
        let report = snr_report(0.889, &params).unwrap();
        assert!(report.snr_gdf <= report.snr_gdf_ub);
        assert!(report.snr_gdf_ub <= report.snr_gn);
        assert!(report.gap_db_exact >= 0.0);
        assert_relative_eq!(
            report.gap_db_exact,
            0.4890308614659127,
            max_relative = 1e-10
        );
        assert_relative_eq!(report.snr1a, 0.889 / params.beta_mw, max_relative = 1e-15);
        assert_relative_eq!(
            report.snr1n,
            1.0 / (4.1e-4 * 0.889 * 0.889),
            max_relative = 1e-15
        );
    }
}
