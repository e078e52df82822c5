//! Gaussian channel instances and reproducible gain sampling.
//!
//! Three one-hop network families are modeled: the wiretap channel with M
//! helpers, the K-user multiple access wiretap channel, and the K-user
//! interference channel with an external eavesdropper. Gains are real scalars
//! drawn from a continuous law so that rational dependencies among them have
//! probability zero; near-zero gains are rejected outright.
//!
//! All randomness flows through seeded ChaCha streams: the same seed produces
//! the same bits on every platform, and substreams are forked per purpose
//! (gains, alphas, Monte Carlo trials) rather than shared.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{positive_finite, Error, Result};

/// Rejection threshold on |gain|; smaller magnitudes are resampled.
pub const EPS_GAIN: f64 = 1e-3;

/// Abort after this many consecutive rejections.
pub const REJECTION_CAP: u32 = 10_000;

/// ChaCha substream carrying channel gain draws.
pub const GAIN_STREAM: u64 = 0;

/// ChaCha substream carrying blind-scheme alpha draws.
pub const ALPHA_STREAM: u64 = 1;

/// Network family and its size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ChannelKind {
    /// One legitimate pair, `m >= 1` helpers, one eavesdropper.
    HelperWiretap { m: usize },
    /// `k >= 2` users with messages, one legitimate receiver, one eavesdropper.
    MacWiretap { k: usize },
    /// `k >= 2` transmit/receive pairs plus an external eavesdropper.
    InterferenceEE { k: usize },
}

impl ChannelKind {
    /// Number of transmitters in the network.
    pub fn num_tx(&self) -> usize {
        match *self {
            ChannelKind::HelperWiretap { m } => m + 1,
            ChannelKind::MacWiretap { k } | ChannelKind::InterferenceEE { k } => k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelKind::HelperWiretap { m } if m < 1 => {
                Err(Error::Domain(format!("helper count must be >= 1, got {m}")))
            }
            ChannelKind::MacWiretap { k } | ChannelKind::InterferenceEE { k } if k < 2 => {
                Err(Error::Domain(format!("user count must be >= 2, got {k}")))
            }
            _ => Ok(()),
        }
    }
}

/// Gains to the legitimate side: one per transmitter for the single-receiver
/// families, a full transmitter-by-receiver matrix for the interference
/// channel (`matrix[j][i]` is transmitter `j` to receiver `i`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GainSet {
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

/// A fixed draw of channel gains plus the receiver noise variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelInstance {
    pub kind: ChannelKind,
    /// Gains to the legitimate receiver(s).
    pub h: GainSet,
    /// Gains to the eavesdropper, one per transmitter.
    pub g: Vec<f64>,
    /// Noise variance at every receiver.
    pub noise_var: f64,
    /// Seed the instance was sampled from (provenance only).
    pub seed: u64,
}

impl ChannelInstance {
    /// Gains to the legitimate receiver for the single-receiver families.
    pub fn h_vec(&self) -> Result<&[f64]> {
        match &self.h {
            GainSet::Vector(v) => Ok(v),
            GainSet::Matrix(_) => Err(Error::Domain(
                "interference channel has per-receiver gains; no single legitimate vector".into(),
            )),
        }
    }

    pub fn num_tx(&self) -> usize {
        self.kind.num_tx()
    }

    /// Returns a copy with a different noise variance.
    pub fn with_noise_var(&self, noise_var: f64) -> Result<ChannelInstance> {
        if !positive_finite(noise_var) {
            return Err(Error::Domain(format!(
                "noise variance must be positive and finite, got {noise_var}"
            )));
        }
        Ok(ChannelInstance {
            noise_var,
            ..self.clone()
        })
    }

    /// Checks shapes, finiteness, and nonzero gains.
    pub fn validate(&self) -> Result<()> {
        self.kind.validate()?;
        let n_tx = self.num_tx();
        let check = |gain: f64| -> Result<()> {
            if !gain.is_finite() || gain == 0.0 {
                return Err(Error::Domain(format!("gain {gain} is zero or non-finite")));
            }
            Ok(())
        };
        match (&self.kind, &self.h) {
            (ChannelKind::InterferenceEE { k }, GainSet::Matrix(m)) => {
                if m.len() != *k || m.iter().any(|row| row.len() != *k) {
                    return Err(Error::Domain(format!("h must be a {k}x{k} matrix")));
                }
                for row in m {
                    for &gain in row {
                        check(gain)?;
                    }
                }
            }
            (ChannelKind::InterferenceEE { .. }, GainSet::Vector(_)) => {
                return Err(Error::Domain("interference channel needs a gain matrix".into()));
            }
            (_, GainSet::Vector(v)) => {
                if v.len() != n_tx {
                    return Err(Error::Domain(format!(
                        "h has {} gains, expected {n_tx}",
                        v.len()
                    )));
                }
                for &gain in v {
                    check(gain)?;
                }
            }
            (_, GainSet::Matrix(_)) => {
                return Err(Error::Domain("single-receiver channel needs a gain vector".into()));
            }
        }
        if self.g.len() != n_tx {
            return Err(Error::Domain(format!(
                "g has {} gains, expected {n_tx}",
                self.g.len()
            )));
        }
        for &gain in &self.g {
            check(gain)?;
        }
        if !positive_finite(self.noise_var) {
            return Err(Error::Domain(format!(
                "noise variance must be positive and finite, got {}",
                self.noise_var
            )));
        }
        Ok(())
    }
}

/// Continuous gain sampler: standard normal magnitude with a uniform sign,
/// rejecting magnitudes below `eps_gain`.
#[derive(Debug, Clone, Copy)]
pub struct GainSampler {
    pub eps_gain: f64,
    pub seed: u64,
}

impl GainSampler {
    pub fn new(seed: u64) -> GainSampler {
        GainSampler {
            eps_gain: EPS_GAIN,
            seed,
        }
    }

    pub fn with_eps(self, eps_gain: f64) -> GainSampler {
        GainSampler { eps_gain, ..self }
    }

    fn draw_gain<R: Rng>(&self, rng: &mut R, rejections: &mut u32) -> Result<f64> {
        loop {
            let magnitude: f64 = rng.sample::<f64, _>(StandardNormal).abs();
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            let gain = sign * magnitude;
            if gain.abs() >= self.eps_gain {
                return Ok(gain);
            }
            *rejections += 1;
            if *rejections >= REJECTION_CAP {
                return Err(Error::RejectionCap {
                    cap: REJECTION_CAP,
                    eps_gain: self.eps_gain,
                });
            }
        }
    }

    /// Draws a full channel instance. Deterministic in `(seed, kind)`.
    pub fn sample(&self, kind: ChannelKind) -> Result<ChannelInstance> {
        kind.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(GAIN_STREAM);
        let mut rejections = 0;
        let n_tx = kind.num_tx();

        let h = match kind {
            ChannelKind::InterferenceEE { k } => {
                let mut rows = Vec::with_capacity(k);
                for _ in 0..k {
                    let mut row = Vec::with_capacity(k);
                    for _ in 0..k {
                        row.push(self.draw_gain(&mut rng, &mut rejections)?);
                    }
                    rows.push(row);
                }
                GainSet::Matrix(rows)
            }
            _ => {
                let mut v = Vec::with_capacity(n_tx);
                for _ in 0..n_tx {
                    v.push(self.draw_gain(&mut rng, &mut rejections)?);
                }
                GainSet::Vector(v)
            }
        };
        let mut g = Vec::with_capacity(n_tx);
        for _ in 0..n_tx {
            g.push(self.draw_gain(&mut rng, &mut rejections)?);
        }

        let instance = ChannelInstance {
            kind,
            h,
            g,
            noise_var: 1.0,
            seed: self.seed,
        };
        instance.validate()?;
        Ok(instance)
    }
}

/// Samples a channel with the default rejection threshold.
pub fn sample_channel(kind: ChannelKind, seed: u64) -> Result<ChannelInstance> {
    GainSampler::new(seed).sample(kind)
}

/// Adds zero-mean Gaussian noise of the given variance.
///
/// The caller owns the RNG state; reproducibility is the caller's seed
/// discipline.
pub fn awgn<R: Rng>(value: f64, noise_var: f64, rng: &mut R) -> f64 {
    assert!(
        noise_var > 0.0 && noise_var.is_finite(),
        "noise variance must be positive and finite"
    );
    let normal = Normal::new(0.0, noise_var.sqrt()).expect("valid std dev");
    value + normal.sample(rng)
}

/// Forks a ChaCha substream for `(seed, stream)` without sharing state.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helper_shapes_and_threshold() {
        let ch = sample_channel(ChannelKind::HelperWiretap { m: 2 }, 7).unwrap();
        let h = ch.h_vec().unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(ch.g.len(), 3);
        for &gain in h.iter().chain(ch.g.iter()) {
            assert!(gain.abs() >= EPS_GAIN);
            assert!(gain.is_finite());
        }
        assert_eq!(ch.noise_var, 1.0);
    }

    #[test]
    fn identical_seeds_replay_identically() {
        let a = sample_channel(ChannelKind::MacWiretap { k: 3 }, 7).unwrap();
        let b = sample_channel(ChannelKind::MacWiretap { k: 3 }, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_channel(ChannelKind::MacWiretap { k: 3 }, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn interference_matrix_shape() {
        let ch = sample_channel(ChannelKind::InterferenceEE { k: 3 }, 11).unwrap();
        match &ch.h {
            GainSet::Matrix(m) => {
                assert_eq!(m.len(), 3);
                assert!(m.iter().all(|row| row.len() == 3));
            }
            GainSet::Vector(_) => panic!("expected matrix"),
        }
        assert!(ch.h_vec().is_err());
    }

    #[test]
    fn rejection_cap_trips_on_broken_threshold() {
        let sampler = GainSampler::new(3).with_eps(f64::INFINITY);
        match sampler.sample(ChannelKind::HelperWiretap { m: 1 }) {
            Err(Error::RejectionCap { cap, .. }) => assert_eq!(cap, REJECTION_CAP),
            other => panic!("expected rejection cap, got {other:?}"),
        }
    }

    #[test]
    fn invalid_sizes_are_domain_errors() {
        assert!(matches!(
            sample_channel(ChannelKind::HelperWiretap { m: 0 }, 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            sample_channel(ChannelKind::MacWiretap { k: 1 }, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn awgn_moments_match_law() {
        let mut rng = substream(42, 9);
        let n = 1_000_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let z = awgn(0.0, 1.0, &mut rng);
            sum += z;
            sum_sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "variance {var}");
    }

    #[test]
    fn awgn_is_reproducible_and_shifts() {
        let mut r1 = substream(5, 0);
        let mut r2 = substream(5, 0);
        let a = awgn(1.5, 1.0, &mut r1);
        let b = awgn(1.5, 1.0, &mut r2);
        assert_eq!(a, b);
        assert!(a.is_finite());
    }

    #[test]
    fn sampled_gain_ratios_never_collide() {
        use std::collections::BTreeSet;
        let mut ratios = BTreeSet::new();
        let mut count = 0usize;
        for seed in 0..1000u64 {
            let ch = sample_channel(ChannelKind::HelperWiretap { m: 1 }, seed).unwrap();
            let h = ch.h_vec().unwrap();
            for (g, h) in ch.g.iter().zip(h) {
                ratios.insert((g / h).to_bits());
                count += 1;
            }
        }
        assert_eq!(ratios.len(), count);
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let ch = sample_channel(ChannelKind::HelperWiretap { m: 2 }, 7).unwrap();
        let json = serde_json::to_value(&ch).unwrap();
        assert_eq!(json["kind"]["family"], "helper_wiretap");
        assert_eq!(json["kind"]["m"], 2);
        assert!(json["h"].is_array());
        assert!(json["g"].is_array());
        assert_eq!(json["noise_var"], 1.0);
        assert_eq!(json["seed"], 7);
        let back: ChannelInstance = serde_json::from_value(json).unwrap();
        assert_eq!(back, ch);
    }
}
