//! Shared error type for all toolkit modules.

/// Errors surfaced by the toolkit.
///
/// [`Error::Domain`] marks a caller mistake (bad parameter); everything else
/// is a guard or limit tripping on an otherwise valid request. The CLI maps
/// the former to exit code 1 and the latter to exit code 2.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Invalid parameter or inconsistent inputs.
    #[error("invalid parameter: {0}")]
    Domain(String),

    /// The gain rejection loop exceeded its cap; the rejection threshold is
    /// almost certainly misconfigured.
    #[error("gain sampling rejected {cap} candidates in a row (eps_gain = {eps_gain})")]
    RejectionCap { cap: u32, eps_gain: f64 },

    /// An exact enumeration would exceed its size guard.
    #[error("enumeration of {size} items exceeds the guard of {guard}")]
    TooLarge { size: u128, guard: u128 },

    /// Two constellation dimensions that were not constructed to align landed
    /// within the grouping tolerance; the channel gains are near-degenerate.
    #[error("ambiguous alignment: coefficients {a} and {b} coincide within tolerance but were not constructed equal")]
    AmbiguousAlignment { a: f64, b: f64 },

    /// A region failed the boundedness verification.
    #[error("inequality system is not verifiably bounded")]
    Unbounded,

    /// Leakage convolution refused a constellation half-width above its cap.
    #[error("constellation half-width {q} exceeds the convolution cap {cap}")]
    Overflow { q: u64, cap: u64 },
}

impl Error {
    /// True for guard/limit errors (as opposed to caller mistakes).
    pub fn is_guard(&self) -> bool {
        !matches!(self, Error::Domain(_))
    }
}

/// Finite and strictly positive; rejects NaN and infinities.
pub(crate) fn positive_finite(value: f64) -> bool {
    value.is_finite() && value > 0.0
}

pub type Result<T> = std::result::Result<T, Error>;
