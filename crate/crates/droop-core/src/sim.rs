//! Per-span power-bookkeeping simulator.
//!
//! Tracks the desired-signal / ASE / NLI split of the constant amplifier
//! output power span by span. Within each span, in order: the fiber
//! redistributes power into the NLI bin (total conserved), the span loss and
//! the power-mode gain scale everything by `chi_a`, and the amplifier's own
//! ASE tops the output back up to the launch power. The final
//! signal-to-noise ratio of the trace is the brute-force counterpart of the
//! closed-form drooped SNR.

use crate::droop::{chi_ase, chi_redistribution};
use crate::error::ModelError;
use crate::units::DerivedParams;

/// Hard cap on the number of spans a stored trace may hold.
pub const MAX_TRACE_SPANS: u32 = 100_000;

/// Signal/ASE/NLI power split at the output of amplifier `span_index`
/// (index 0 is the launch state).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerState {
    pub span_index: u32,
    /// Desired signal power, mW.
    pub p_s_mw: f64,
    /// Cumulated ASE power, mW.
    pub p_a_mw: f64,
    /// Cumulated NLI (plus GAWBS-scattered) power, mW.
    pub p_n_mw: f64,
}

impl PowerState {
    /// Launch state: all power in the signal bin.
    pub fn launch(p_mw: f64) -> Self {
        Self {
            span_index: 0,
            p_s_mw: p_mw,
            p_a_mw: 0.0,
            p_n_mw: 0.0,
        }
    }

    /// Total power in the three bins, mW. Equals the launch power at every
    /// amplifier output.
    pub fn total_mw(&self) -> f64 {
        self.p_s_mw + self.p_a_mw + self.p_n_mw
    }

    /// Signal-to-noise ratio of this state, `p_s/(p_a + p_n)`; `+inf` for a
    /// noise-free state.
    pub fn snr(&self) -> f64 {
        let noise = self.p_a_mw + self.p_n_mw;
        if noise > 0.0 {
            self.p_s_mw / noise
        } else {
            f64::INFINITY
        }
    }
}

/// Full bookkeeping trace of one chain plus the droop factors it used.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainTrace {
    /// Launch power per channel, mW.
    pub launch_power_mw: f64,
    /// N+1 states: launch plus one per amplifier output.
    pub states: Vec<PowerState>,
    /// ASE droop applied in every span.
    pub chi_a: f64,
    /// Redistribution droop applied in every span.
    pub chi_n: f64,
    /// Final `p_s/(p_a + p_n)`, linear.
    pub final_snr: f64,
}

impl ChainTrace {
    pub fn final_state(&self) -> &PowerState {
        self.states
            .last()
            .expect("trace holds at least the launch state")
    }
}

/// Advances one state through one span: redistribution, loss+gain, ASE
/// injection. The output total is again the launch power.
pub fn step(
    state: &PowerState,
    p_mw: f64,
    params: &DerivedParams,
) -> Result<PowerState, ModelError> {
    let chi_n = chi_redistribution(p_mw, params)?;
    let chi_a = chi_ase(p_mw, params.beta_mw)?;

    // in-fiber redistribution: every bin scaled by chi_n, the displaced
    // power delta_pn = alpha*P^3 + gamma*l*P lands in the NLI bin
    let delta_pn = params.alpha_nl_per_mw2 * p_mw * p_mw * p_mw + params.gawbs_loss * p_mw;
    let p_s = state.p_s_mw * chi_n;
    let p_a = state.p_a_mw * chi_n;
    let p_n = state.p_n_mw * chi_n + delta_pn;

    // span loss L and power-mode gain G = chi_a/L collapse to chi_a, then
    // the amplifier adds its own output ASE beta*chi_a
    Ok(PowerState {
        span_index: state.span_index + 1,
        p_s_mw: p_s * chi_a,
        p_a_mw: p_a * chi_a + params.beta_mw * chi_a,
        p_n_mw: p_n * chi_a,
    })
}

/// Runs a full N-span chain from the launch state, returning every
/// intermediate state and the received SNR.
pub fn run_chain(p_mw: f64, params: &DerivedParams) -> Result<ChainTrace, ModelError> {
    if !p_mw.is_finite() || p_mw <= 0.0 {
        return Err(ModelError::Domain(format!(
            "launch power must be finite and > 0 mW, got {p_mw}"
        )));
    }
    if params.n_spans < 1 {
        return Err(ModelError::Domain("n_spans must be >= 1".into()));
    }
    if params.n_spans > MAX_TRACE_SPANS {
        return Err(ModelError::Domain(format!(
            "n_spans = {} exceeds the trace cap of {MAX_TRACE_SPANS}",
            params.n_spans
        )));
    }

    let chi_n = chi_redistribution(p_mw, params)?;
    let chi_a = chi_ase(p_mw, params.beta_mw)?;

    let mut states = Vec::with_capacity(params.n_spans as usize + 1);
    let mut state = PowerState::launch(p_mw);
    states.push(state);
    for _ in 0..params.n_spans {
        state = step(&state, p_mw, params)?;
        states.push(state);
    }

    Ok(ChainTrace {
        launch_power_mw: p_mw,
        final_snr: state.snr(),
        states,
        chi_a,
        chi_n,
    })
}
