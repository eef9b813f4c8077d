use thiserror::Error;

/// Errors produced by the link model.
///
/// `Config` marks bad user input (rejected before any model math runs);
/// the remaining variants mark values outside the model's domain or a
/// solver failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// Invalid link configuration (failed invariant, degenerate span loss,
    /// GAWBS removing all power per span, ...).
    #[error("config error: {0}")]
    Config(String),

    /// An argument is outside an operation's domain (non-finite dB value,
    /// non-positive power, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The per-span redistribution fraction `alpha_nl*P^2 + gamma*l`
    /// reached 1: the first-order droop model is invalid at this power.
    #[error(
        "droop model invalid at P = {p_mw} mW: redistribution fraction \
         alpha_nl*P^2 + gamma*l = {fraction} >= 1"
    )]
    DroopDomain { p_mw: f64, fraction: f64 },

    /// The requested optimum does not exist (SNR is monotone in power).
    #[error("no finite optimum: {0}")]
    NoFiniteOptimum(String),

    /// The optimum solver failed to converge within its iteration cap.
    #[error(
        "optimum solver did not converge: last iterate {last_p_mw} mW, \
         stationarity residual {residual:e}"
    )]
    NonConvergence { last_p_mw: f64, residual: f64 },
}
