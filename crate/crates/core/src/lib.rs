//! Schemes, simulation, and exact region polytopes for alignment-based
//! physical-layer secrecy at high SNR.
//!
//! The crate splits into four parts:
//!
//! * [`model`]: Gaussian channel instances for the helper wiretap, multiple
//!   access wiretap, and interference networks, with seeded platform-stable
//!   gain sampling;
//! * [`align`]: the signaling schemes as explicit linear plans, receive-side
//!   alignment structure, PAM parameter selection, and a brute-force minimum
//!   distance oracle;
//! * [`sim`]: Monte Carlo transmission with exact nearest-point decoding,
//!   exact leakage by discrete convolution, rate accounting, and power
//!   sweeps;
//! * [`regions`]: exact rational region polytopes and their extreme points.

pub mod align;
pub mod error;
pub mod model;
pub mod rational;
pub mod regions;
pub mod sim;

pub use align::{
    build_blind_plan, build_helper_plan, build_mac_plan, default_gamma, kg_bound_check,
    min_distance_mixed, min_distance_oracle, pam_params, receiver_constellation, sample_alphas,
    CoeffExpr, Dim, GainRef, KgBound, PamParams, Receiver, ReceiverConstellation, SchemeKind,
    SignalPlan, StreamId, Term, TxAssignment, ALIGN_RTOL, ENUM_GUARD,
};
pub use error::{Error, Result};
pub use model::{
    awgn, sample_channel, substream, ChannelInstance, ChannelKind, GainSampler, GainSet, EPS_GAIN,
    REJECTION_CAP,
};
pub use rational::Rational;
pub use regions::{
    extreme_points, ic_region, is_redundant, mac_region, max_sum, ExtremePointSet, RegionRow,
    RegionSpec, RowLabel, SUBSET_GUARD,
};
pub use sim::{
    analytic_slope, blind_span_check, leakage_exact, leakage_groups, legit_min_distance,
    rate_lower_bound, sdof_sweep, secrecy_rate_lb, transmit_and_decode, BlindSpanReport,
    DecodeOutcome, MeasureConfig, SimConfig, SimReport, SweepConfig, SweepResult,
};
