use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum VdwError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "quadrature did not converge within {panels} panels: estimate {value:e} with error {err_estimate:e}, \
         worst panel u in [{worst_lo:e}, {worst_hi:e}]"
    )]
    NonConvergence {
        value: f64,
        err_estimate: f64,
        panels: usize,
        worst_lo: f64,
        worst_hi: f64,
    },

    #[error("integrand returned {value} at u = {at:e}")]
    NonFinite { at: f64, value: f64 },

    #[error("scaled Bessel mantissa out of floating range at n = {n}, x = {x:e}")]
    Overflow { n: usize, x: f64 },

    #[error("series did not converge: reached n = {n_reached}, tail estimate {tail:e}")]
    SeriesNonConvergence { n_reached: usize, tail: f64 },

    #[error("channel {channel}: {source}")]
    Channel {
        channel: &'static str,
        source: Box<VdwError>,
    },
}

impl VdwError {
    pub fn domain(msg: impl Into<String>) -> Self {
        VdwError::Domain(msg.into())
    }

    pub fn in_channel(self, channel: &'static str) -> Self {
        VdwError::Channel {
            channel,
            source: Box::new(self),
        }
    }

    /// The innermost error, with channel tags stripped.
    pub fn root(&self) -> &VdwError {
        match self {
            VdwError::Channel { source, .. } => source.root(),
            other => other,
        }
    }

    /// Whether the failure is numerical (non-convergence, overflow) rather than bad input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self.root(), VdwError::Domain(_))
    }
}
