//! Numerical evaluation of the schemes: Monte Carlo transmission with exact
//! nearest-point decoding, exact leakage by discrete convolution, the
//! Fano-style achievable-rate lower bound, and power sweeps.
//!
//! Logs are base 2 throughout; normalized quantities divide by (1/2) log2 P,
//! so the asymptotic ratios are base-invariant anyway.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::align::{
    min_distance_mixed, pam_params, receiver_constellation, PamParams, Receiver,
    ReceiverConstellation, SchemeKind, SignalPlan, ENUM_GUARD,
};
use crate::error::{Error, Result};
use crate::model::{awgn, sample_channel, substream, ChannelInstance, ChannelKind};

/// ChaCha substreams 0 and 1 carry gains and alphas; Monte Carlo trial `t`
/// draws from substream `TRIAL_STREAM_BASE + t`.
pub const TRIAL_STREAM_BASE: u64 = 2;

/// Leakage convolution refuses half-widths above this.
pub const LEAKAGE_Q_CAP: u64 = 1_000_000;

/// One simulated transmission setup.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig<'a> {
    pub plan: &'a SignalPlan,
    pub channel: &'a ChannelInstance,
    pub pam: PamParams,
    pub trials: u64,
    pub seed: u64,
}

/// Result of a Monte Carlo decoding run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DecodeOutcome {
    pub error_rate: f64,
    /// exp(-d_min^2 / (8 sigma^2)) for the exact receive-grid d_min.
    pub error_bound: f64,
    pub d_min: f64,
    pub errors: u64,
    pub trials: u64,
}

/// Receive-side grid of one constellation: per-dimension coefficients and
/// integer half-widths (message dims span Q, a dimension holding m aligned
/// jamming streams spans m*Q).
struct ReceiverGrid {
    coeffs: Vec<f64>,
    widths: Vec<u64>,
    radices: Vec<u64>,
    message_dims: Vec<usize>,
    a: f64,
    /// (value, flat index), sorted by value; duplicate values keep the
    /// lowest flat index.
    points: Vec<(f64, u64)>,
}

impl ReceiverGrid {
    fn build(constellation: &ReceiverConstellation, pam: &PamParams) -> Result<ReceiverGrid> {
        let coeffs: Vec<f64> = constellation.dims.iter().map(|d| d.coeff).collect();
        let widths: Vec<u64> = constellation
            .dims
            .iter()
            .map(|d| pam.q * d.streams.len() as u64)
            .collect();
        let radices: Vec<u64> = widths.iter().map(|w| 2 * w + 1).collect();
        let total: u128 = radices.iter().map(|&r| r as u128).product();
        if total > ENUM_GUARD {
            return Err(Error::TooLarge {
                size: total,
                guard: ENUM_GUARD,
            });
        }
        let message_dims: Vec<usize> = constellation
            .dims
            .iter()
            .enumerate()
            .filter(|(_, d)| d.has_message())
            .map(|(i, _)| i)
            .collect();

        let n = coeffs.len();
        let mut points = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; n];
        for flat in 0..total as u64 {
            let mut rem = flat;
            for i in (0..n).rev() {
                digits[i] = rem % radices[i];
                rem /= radices[i];
            }
            let value: f64 = (0..n)
                .map(|i| coeffs[i] * pam.a * (digits[i] as i64 - widths[i] as i64) as f64)
                .sum();
            points.push((value, flat));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        // Coinciding points are indistinguishable; the decoder commits to the
        // lowest flat index.
        points.dedup_by(|next, first| next.0 == first.0 && {
            debug_assert!(first.1 < next.1);
            true
        });

        Ok(ReceiverGrid {
            coeffs,
            widths,
            radices,
            message_dims,
            a: pam.a,
            points,
        })
    }

    fn unflatten(&self, mut flat: u64) -> Vec<i64> {
        let n = self.radices.len();
        let mut out = vec![0i64; n];
        for i in (0..n).rev() {
            out[i] = (flat % self.radices[i]) as i64 - self.widths[i] as i64;
            flat /= self.radices[i];
        }
        out
    }

    fn value_of(&self, dim_values: &[i64]) -> f64 {
        dim_values
            .iter()
            .enumerate()
            .map(|(i, &t)| self.coeffs[i] * self.a * t as f64)
            .sum()
    }

    /// Exact nearest point; ties go to the lowest flat index.
    fn decode(&self, y: f64) -> u64 {
        let idx = self.points.partition_point(|(v, _)| *v < y);
        let right = self.points.get(idx);
        let left = if idx > 0 { self.points.get(idx - 1) } else { None };
        match (left, right) {
            (Some(&(lv, li)), Some(&(rv, ri))) => {
                let (dl, dr) = (y - lv, rv - y);
                if dl < dr {
                    li
                } else if dr < dl {
                    ri
                } else {
                    li.min(ri)
                }
            }
            (Some(&(_, li)), None) => li,
            (None, Some(&(_, ri))) => ri,
            (None, None) => unreachable!("grid is never empty"),
        }
    }
}

/// Exact minimum distance of the legitimate receive grid for a plan, with
/// per-dimension widths from the alignment structure.
pub fn legit_min_distance(
    plan: &SignalPlan,
    ch: &ChannelInstance,
    pam: &PamParams,
) -> Result<f64> {
    let legit = receiver_constellation(plan, ch, Receiver::Legitimate)?;
    let coeffs: Vec<f64> = legit.dims.iter().map(|d| d.coeff).collect();
    let widths: Vec<u64> = legit
        .dims
        .iter()
        .map(|d| pam.q * d.streams.len() as u64)
        .collect();
    min_distance_mixed(&coeffs, &widths, pam.a)
}

/// Runs `trials` independent transmissions and decodes each by exact nearest
/// point over the enumerated receive grid.
///
/// Every stream is drawn uniformly from `C(a, Q)`; aligned jamming streams
/// sum into the wider alphabet of their shared dimension. A trial counts as
/// an error if any message-carrying dimension decodes wrongly. Trials fork
/// RNG substreams from `(seed, trial)`, so results are independent of thread
/// scheduling.
pub fn transmit_and_decode(cfg: &SimConfig) -> Result<DecodeOutcome> {
    if cfg.trials < 1 {
        return Err(Error::Domain("trials must be >= 1".into()));
    }
    let legit = receiver_constellation(cfg.plan, cfg.channel, Receiver::Legitimate)?;
    if cfg.pam.l != legit.dims.len() {
        return Err(Error::Domain(format!(
            "pam dimension count {} does not match receiver dims {}",
            cfg.pam.l,
            legit.dims.len()
        )));
    }
    let grid = ReceiverGrid::build(&legit, &cfg.pam)?;
    let d_min = min_distance_mixed(&grid.coeffs, &grid.widths, cfg.pam.a)?;
    let sigma_sq = cfg.channel.noise_var;
    let error_bound = (-d_min * d_min / (8.0 * sigma_sq)).exp();

    // Stream -> dim membership, in plan draw order.
    let dim_of_stream: Vec<usize> = cfg
        .plan
        .streams
        .iter()
        .map(|s| {
            legit
                .dims
                .iter()
                .position(|d| d.streams.contains(s))
                .expect("constellation covers every stream")
        })
        .collect();

    let q = cfg.pam.q as i64;
    let errors: u64 = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = substream(cfg.seed, TRIAL_STREAM_BASE + trial);
            let mut dims = vec![0i64; grid.coeffs.len()];
            for &dim in &dim_of_stream {
                dims[dim] += rng.random_range(-q..=q);
            }
            let y = awgn(grid.value_of(&dims), sigma_sq, &mut rng);
            let decoded = grid.unflatten(grid.decode(y));
            let wrong = grid
                .message_dims
                .iter()
                .any(|&d| decoded[d] != dims[d]);
            u64::from(wrong)
        })
        .sum();

    Ok(DecodeOutcome {
        error_rate: errors as f64 / cfg.trials as f64,
        error_bound,
        d_min,
        errors,
        trials: cfg.trials,
    })
}

fn entropy_bits(counts: &[u128]) -> f64 {
    let total: u128 = counts.iter().sum();
    let total_f = total as f64;
    let mut acc = 0.0;
    for &c in counts {
        if c > 0 {
            let cf = c as f64;
            acc += cf * cf.log2();
        }
    }
    total_f.log2() - acc / total_f
}

/// Counts of the sum of `m` iid uniforms on {-q..q}, by sliding-window
/// convolution.
fn convolution_counts(q: u64, m: usize) -> Vec<u128> {
    let base = 2 * q as usize + 1;
    let mut counts: Vec<u128> = vec![1; base];
    for _ in 1..m {
        let out_len = counts.len() + base - 1;
        let mut out = vec![0u128; out_len];
        let mut window: u128 = 0;
        for i in 0..out_len {
            if i < counts.len() {
                window += counts[i];
            }
            if i >= base {
                window -= counts[i - base];
            }
            out[i] = window;
        }
        counts = out;
    }
    counts
}

/// Exact information leakage, in bits, of uniform PAM message streams padded
/// by one aligned jamming stream per eavesdropper dimension.
///
/// Each group of size m is one eavesdropper dimension carrying the jamming
/// stream plus m-1 message streams; its leakage is H(U + V_1 + ... + V_{m-1})
/// minus H(U), computed by exact integer convolution of uniforms on {-Q..Q}.
/// Dimensions are treated as separable, which is the generic (rationally
/// independent coefficients) case.
pub fn leakage_exact(q: u64, group_sizes: &[usize]) -> Result<f64> {
    if q < 1 {
        return Err(Error::Domain("q must be >= 1".into()));
    }
    if q > LEAKAGE_Q_CAP {
        return Err(Error::Overflow {
            q,
            cap: LEAKAGE_Q_CAP,
        });
    }
    if group_sizes.contains(&0) {
        return Err(Error::Domain("group sizes must be >= 1".into()));
    }
    let h_uniform = ((2 * q + 1) as f64).log2();
    let mut total = 0.0;
    for &m in group_sizes {
        if m == 1 {
            continue;
        }
        let counts = convolution_counts(q, m);
        total += entropy_bits(&counts) - h_uniform;
    }
    Ok(total)
}

/// Eavesdropper-side leakage group sizes of a plan: one group per dimension
/// anchored by a jamming stream.
///
/// Errors if any message stream sits in a dimension with no jamming stream
/// (no one-time-pad protection; the blind scheme is analyzed structurally
/// instead).
pub fn leakage_groups(plan: &SignalPlan, ch: &ChannelInstance) -> Result<Vec<usize>> {
    let eve = receiver_constellation(plan, ch, Receiver::Eavesdropper)?;
    let mut groups = Vec::new();
    for dim in &eve.dims {
        match dim.num_jamming() {
            1 => groups.push(dim.streams.len()),
            0 => {
                return Err(Error::Domain(format!(
                    "dimension at {} carries messages without a jamming stream",
                    dim.coeff
                )))
            }
            n => {
                return Err(Error::Domain(format!(
                    "dimension at {} carries {n} jamming streams",
                    dim.coeff
                )))
            }
        }
    }
    Ok(groups)
}

/// Fano-style lower bound on the legitimate link rate, in bits:
/// `(1 - error_rate) * m_streams * log2(2Q+1) - 1`, floored at zero.
pub fn rate_lower_bound(q: u64, m_streams: usize, error_rate: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&error_rate),
        "error rate must lie in [0, 1]"
    );
    let raw = (1.0 - error_rate) * m_streams as f64 * ((2 * q + 1) as f64).log2() - 1.0;
    raw.max(0.0)
}

/// Achievable secrecy rate lower bound: rate minus leakage, floored at zero.
pub fn secrecy_rate_lb(rate_lb_bits: f64, leakage_bits: f64) -> f64 {
    assert!(rate_lb_bits >= 0.0 && leakage_bits >= 0.0);
    (rate_lb_bits - leakage_bits).max(0.0)
}

/// One power point of a sweep.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SimReport {
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "Q")]
    pub q: u64,
    pub a: f64,
    pub error_rate: f64,
    pub error_bound: f64,
    pub rate_lb_bits: f64,
    pub leakage_bits: f64,
    pub secrecy_rate_bits: f64,
    pub normalized_rate: f64,
}

impl SimReport {
    pub const CSV_HEADER: &'static str =
        "P,Q,a,error_rate,error_bound,rate_lb_bits,leakage_bits,secrecy_rate_bits,normalized_rate";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.6e},{},{:.6e},{:.6e},{:.6e},{:.6},{:.6},{:.6},{:.6}",
            self.p,
            self.q,
            self.a,
            self.error_rate,
            self.error_bound,
            self.rate_lb_bits,
            self.leakage_bits,
            self.secrecy_rate_bits,
            self.normalized_rate
        )
    }
}

/// Structural report of the blind scheme's jamming coverage.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BlindSpanReport {
    /// Dimensions at the eavesdropper fully occupied by jamming streams.
    pub eve_jamming_dims: usize,
    pub eve_total_dims: usize,
    /// Dimensions at the legitimate receiver containing jamming (always 1 for
    /// a valid blind plan).
    pub legit_jamming_dims: usize,
    pub legit_total_dims: usize,
}

/// Verifies that the blind plan's M+1 jamming streams occupy M+1 distinct
/// eavesdropper dimensions while collapsing to a single dimension at the
/// legitimate receiver.
pub fn blind_span_check(plan: &SignalPlan, ch: &ChannelInstance) -> Result<BlindSpanReport> {
    if plan.scheme != SchemeKind::BlindCJ {
        return Err(Error::Domain("span check applies to blind plans only".into()));
    }
    // Distinctness beyond the tolerance is enforced by constellation
    // grouping itself (AmbiguousAlignment on degenerate gains).
    let legit = receiver_constellation(plan, ch, Receiver::Legitimate)?;
    let eve = receiver_constellation(plan, ch, Receiver::Eavesdropper)?;
    let legit_jam: Vec<_> = legit.dims.iter().filter(|d| d.num_jamming() > 0).collect();
    if legit_jam.len() != 1 || legit_jam[0].streams.len() != plan.num_jamming_streams() {
        return Err(Error::Domain(
            "jamming streams failed to align at the legitimate receiver".into(),
        ));
    }
    if legit_jam[0].coeff != 1.0 {
        return Err(Error::Domain(format!(
            "legitimate jamming dimension sits at {} instead of exactly 1",
            legit_jam[0].coeff
        )));
    }
    let eve_jam = eve
        .dims
        .iter()
        .filter(|d| d.num_jamming() > 0 && !d.has_message())
        .count();
    Ok(BlindSpanReport {
        eve_jamming_dims: eve_jam,
        eve_total_dims: eve.dims.len(),
        legit_jamming_dims: 1,
        legit_total_dims: legit.dims.len(),
    })
}

/// Monte Carlo measurement settings for a sweep.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub trials: u64,
    pub seed: u64,
    pub noise_var: f64,
}

/// Sweep setup: scheme, network size (M or K), and a power grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub scheme: SchemeKind,
    pub size: usize,
    pub delta: f64,
    pub p_list: Vec<f64>,
    pub channel_seed: u64,
    /// Power normalizer; default derives from the plan's peak symbol.
    pub gamma: Option<f64>,
    /// When set, error rates are measured; otherwise the error-free rate
    /// bound is reported (deterministic).
    pub measure: Option<MeasureConfig>,
}

/// Result of [`sdof_sweep`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub reports: Vec<SimReport>,
    /// Least-squares slope of rate_lb_bits against (1/2) log2 P over the top
    /// half of the power grid.
    pub slope: f64,
    /// Finite-delta analytic slope the scheme works toward.
    pub target_slope: f64,
    pub blind: Option<BlindSpanReport>,
}

/// Finite-delta slope of the rate bound: `n_msg (1-delta) / (L + delta)` with
/// L = n_msg + 1 legitimate receive dimensions.
pub fn analytic_slope(scheme: SchemeKind, size: usize, delta: f64) -> f64 {
    let msgs = match scheme {
        SchemeKind::HelperAligned | SchemeKind::BlindCJ => size as f64,
        SchemeKind::MacAligned => (size * (size - 1)) as f64,
    };
    msgs * (1.0 - delta) / (msgs + 1.0 + delta)
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// Sweeps the power grid, reporting rate, leakage, and secrecy accounting per
/// point plus the fitted slope against (1/2) log2 P.
///
/// The low-power half of the grid is excluded from the fit to discard the
/// o(log P) transient.
pub fn sdof_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.p_list.len() < 3 {
        return Err(Error::Domain("power grid needs at least 3 points".into()));
    }
    if cfg.p_list.iter().any(|&p| !p.is_finite() || p <= 1.0) {
        return Err(Error::Domain("all powers must be finite and > 1".into()));
    }
    if cfg.p_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("power grid must be strictly increasing".into()));
    }

    let kind = match cfg.scheme {
        SchemeKind::HelperAligned | SchemeKind::BlindCJ => {
            ChannelKind::HelperWiretap { m: cfg.size }
        }
        SchemeKind::MacAligned => ChannelKind::MacWiretap { k: cfg.size },
    };
    let channel = sample_channel(kind, cfg.channel_seed)?;
    let plan = match cfg.scheme {
        SchemeKind::HelperAligned => crate::align::build_helper_plan(&channel)?,
        SchemeKind::MacAligned => crate::align::build_mac_plan(&channel)?,
        SchemeKind::BlindCJ => {
            let alphas = crate::align::sample_alphas(cfg.size, cfg.channel_seed);
            crate::align::build_blind_plan(&channel, &alphas)?
        }
    };

    let legit = receiver_constellation(&plan, &channel, Receiver::Legitimate)?;
    let l = legit.dims.len();
    let msgs = plan.num_message_streams();
    let gamma = cfg.gamma.unwrap_or_else(|| crate::align::default_gamma(&plan));
    let (groups, blind) = match cfg.scheme {
        SchemeKind::BlindCJ => (None, Some(blind_span_check(&plan, &channel)?)),
        _ => (Some(leakage_groups(&plan, &channel)?), None),
    };

    let mut reports = Vec::with_capacity(cfg.p_list.len());
    for &p in &cfg.p_list {
        let pam = pam_params(p, l, cfg.delta, gamma)?;
        // The blind scheme's leakage vanishes with power; it has no exact
        // per-dimension convolution form, so it reports zero here and is
        // covered by the span check instead.
        let leakage_bits = match &groups {
            Some(gs) => leakage_exact(pam.q, gs)?,
            None => 0.0,
        };
        let (error_rate, error_bound) = match &cfg.measure {
            Some(mc) => {
                let noisy = channel.with_noise_var(mc.noise_var)?;
                let outcome = transmit_and_decode(&SimConfig {
                    plan: &plan,
                    channel: &noisy,
                    pam,
                    trials: mc.trials,
                    seed: mc.seed,
                })?;
                (outcome.error_rate, outcome.error_bound)
            }
            None => (0.0, 0.0),
        };
        let rate_lb_bits = rate_lower_bound(pam.q, msgs, error_rate);
        let secrecy_rate_bits = secrecy_rate_lb(rate_lb_bits, leakage_bits);
        let half_log_p = 0.5 * p.log2();
        reports.push(SimReport {
            p,
            q: pam.q,
            a: pam.a,
            error_rate,
            error_bound,
            rate_lb_bits,
            leakage_bits,
            secrecy_rate_bits,
            normalized_rate: rate_lb_bits / half_log_p,
        });
    }

    let start = cfg.p_list.len() / 2;
    let xs: Vec<f64> = reports[start..].iter().map(|r| 0.5 * r.p.log2()).collect();
    let ys: Vec<f64> = reports[start..].iter().map(|r| r.rate_lb_bits).collect();
    let slope = ols_slope(&xs, &ys);

    Ok(SweepResult {
        reports,
        slope,
        target_slope: analytic_slope(cfg.scheme, cfg.size, cfg.delta),
        blind,
    })
}
