//! Signaling plans, alignment structure, and PAM parameter selection.
//!
//! A [`SignalPlan`] pins down, per transmitter, the linear combination of
//! message streams (V) and cooperative jamming streams (U) that forms the
//! channel input. Three schemes are built here:
//!
//! * helper: the legitimate transmitter splits its message across M streams,
//!   each helper jams one of them at the eavesdropper;
//! * mac: every user sends K-1 message streams plus its own jamming stream,
//!   with each jamming stream covering one message stream from every peer at
//!   the eavesdropper;
//! * blind: no eavesdropper gains are used anywhere; all M+1 transmitters jam,
//!   and the jamming streams collapse into one dimension at the legitimate
//!   receiver only.
//!
//! Transmit coefficients are kept in factored form over the channel gains.
//! Multiplying by the receiving-side gain then cancels symbolically, so the
//! dimensions that a scheme aligns on purpose evaluate to bit-identical
//! floating point values, while accidental near-collisions (degenerate gains)
//! are detected and rejected instead of silently merged.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{positive_finite, Error, Result};
use crate::model::{substream, ChannelInstance, ChannelKind, ALPHA_STREAM};

/// Relative tolerance separating designed alignment from accidental
/// near-collision of dimension coefficients.
pub const ALIGN_RTOL: f64 = 1e-9;

/// Enumeration guard: constellation enumerations stay below this many points.
pub const ENUM_GUARD: u128 = 1_000_000;

/// One multiplicative factor taken from a channel instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GainRef {
    /// Gain from transmitter `i` to the legitimate receiver.
    H(usize),
    /// Gain from transmitter `i` to the eavesdropper.
    G(usize),
}

impl GainRef {
    fn value(self, h: &[f64], g: &[f64]) -> f64 {
        match self {
            GainRef::H(i) => h[i],
            GainRef::G(i) => g[i],
        }
    }
}

/// A coefficient in factored form: `scalar * prod(num) / prod(den)`.
///
/// Common factors are cancelled and the factor lists kept sorted, so two
/// coefficients constructed from the same algebraic expression compare equal
/// and evaluate to bit-identical floats.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffExpr {
    scalar: f64,
    num: Vec<GainRef>,
    den: Vec<GainRef>,
}

impl CoeffExpr {
    /// Pure scalar, no gain dependence.
    pub fn scalar(value: f64) -> CoeffExpr {
        CoeffExpr {
            scalar: value,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    /// `prod(num) / prod(den)` with unit scalar.
    pub fn ratio(num: Vec<GainRef>, den: Vec<GainRef>) -> CoeffExpr {
        let mut expr = CoeffExpr {
            scalar: 1.0,
            num,
            den,
        };
        expr.canonicalize();
        expr
    }

    /// Multiplies by one more gain, cancelling against the denominator.
    pub fn times_gain(&self, gain: GainRef) -> CoeffExpr {
        let mut expr = self.clone();
        expr.num.push(gain);
        expr.canonicalize();
        expr
    }

    fn canonicalize(&mut self) {
        self.num.sort_unstable();
        self.den.sort_unstable();
        let mut i = 0;
        while i < self.num.len() {
            if let Some(j) = self.den.iter().position(|d| *d == self.num[i]) {
                self.den.remove(j);
                self.num.remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// Evaluates against a channel; factor order is canonical, so equal
    /// expressions produce bit-identical results.
    pub fn eval(&self, h: &[f64], g: &[f64]) -> f64 {
        let num: f64 = self.num.iter().map(|r| r.value(h, g)).product();
        let den: f64 = self.den.iter().map(|r| r.value(h, g)).product();
        self.scalar * num / den
    }

    /// True if the expression references any eavesdropper gain.
    pub fn uses_eavesdropper_gain(&self) -> bool {
        self.num
            .iter()
            .chain(self.den.iter())
            .any(|r| matches!(r, GainRef::G(_)))
    }
}

/// Identity of one PAM data stream inside a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StreamId {
    /// Message sub-stream `slot` of transmitter `owner`.
    Message { owner: usize, slot: usize },
    /// Cooperative jamming stream of transmitter `owner`.
    Jamming { owner: usize },
}

impl StreamId {
    pub fn owner(&self) -> usize {
        match *self {
            StreamId::Message { owner, .. } | StreamId::Jamming { owner } => owner,
        }
    }

    pub fn is_message(&self) -> bool {
        matches!(self, StreamId::Message { .. })
    }
}

impl std::fmt::Display for StreamId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            StreamId::Message { owner, slot } => write!(f, "V({owner},{slot})"),
            StreamId::Jamming { owner } => write!(f, "U({owner})"),
        }
    }
}

/// One stream with its transmit coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub stream: StreamId,
    pub coeff: f64,
    #[serde(skip)]
    pub(crate) expr: CoeffExpr,
}

impl Term {
    fn new(stream: StreamId, expr: CoeffExpr, h: &[f64], g: &[f64]) -> Term {
        let coeff = expr.eval(h, g);
        Term {
            stream,
            coeff,
            expr,
        }
    }

    /// The factored form of the coefficient.
    pub fn expr(&self) -> &CoeffExpr {
        &self.expr
    }
}

// Plans read back from JSON carry only the numeric coefficient; the factored
// form degrades to an opaque scalar.
impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Term, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            stream: StreamId,
            coeff: f64,
        }
        let wire = Wire::deserialize(deserializer)?;
        Ok(Term {
            stream: wire.stream,
            coeff: wire.coeff,
            expr: CoeffExpr::scalar(wire.coeff),
        })
    }
}

/// Terms assigned to one transmitter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TxAssignment {
    pub tx_index: usize,
    pub terms: Vec<Term>,
}

/// Which construction a plan came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    HelperAligned,
    MacAligned,
    BlindCJ,
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SchemeKind::HelperAligned => "helper",
            SchemeKind::MacAligned => "mac",
            SchemeKind::BlindCJ => "blind",
        };
        f.write_str(name)
    }
}

/// A complete signaling scheme: every stream, and the linear combination each
/// transmitter sends.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalPlan {
    pub scheme: SchemeKind,
    pub streams: Vec<StreamId>,
    pub tx: Vec<TxAssignment>,
}

impl SignalPlan {
    pub fn message_streams(&self) -> impl Iterator<Item = &StreamId> {
        self.streams.iter().filter(|s| s.is_message())
    }

    pub fn num_message_streams(&self) -> usize {
        self.message_streams().count()
    }

    pub fn num_jamming_streams(&self) -> usize {
        self.streams.len() - self.num_message_streams()
    }

    /// Finds the term carrying `stream`, with its transmitter index.
    pub fn term_for(&self, stream: &StreamId) -> Option<(usize, &Term)> {
        self.tx.iter().find_map(|tx| {
            tx.terms
                .iter()
                .find(|t| t.stream == *stream)
                .map(|t| (tx.tx_index, t))
        })
    }

    /// Checks structural invariants against the channel the plan was built
    /// for: stream counts per scheme, unique stream ownership, and finite
    /// nonzero coefficients.
    pub fn validate(&self, ch: &ChannelInstance) -> Result<()> {
        let (want_msg, want_jam) = match (self.scheme, ch.kind) {
            (SchemeKind::HelperAligned, ChannelKind::HelperWiretap { m }) => (m, m),
            (SchemeKind::MacAligned, ChannelKind::MacWiretap { k }) => (k * (k - 1), k),
            (SchemeKind::BlindCJ, ChannelKind::HelperWiretap { m }) => (m, m + 1),
            (scheme, kind) => {
                return Err(Error::Domain(format!(
                    "plan scheme {scheme:?} does not match channel kind {kind:?}"
                )))
            }
        };
        if self.num_message_streams() != want_msg || self.num_jamming_streams() != want_jam {
            return Err(Error::Domain(format!(
                "plan has {}+{} streams, expected {want_msg}+{want_jam}",
                self.num_message_streams(),
                self.num_jamming_streams()
            )));
        }
        if self.tx.len() != ch.num_tx() {
            return Err(Error::Domain(format!(
                "plan covers {} transmitters, channel has {}",
                self.tx.len(),
                ch.num_tx()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for tx in &self.tx {
            for term in &tx.terms {
                if !term.coeff.is_finite() || term.coeff == 0.0 {
                    return Err(Error::Domain(format!(
                        "coefficient of {} is zero or non-finite",
                        term.stream
                    )));
                }
                if !seen.insert(term.stream) {
                    return Err(Error::Domain(format!(
                        "stream {} assigned to more than one transmitter",
                        term.stream
                    )));
                }
            }
        }
        for stream in &self.streams {
            if !seen.contains(stream) {
                return Err(Error::Domain(format!("stream {stream} has no transmitter")));
            }
        }
        if seen.len() != self.streams.len() {
            return Err(Error::Domain("transmitters carry streams not in the plan".into()));
        }
        Ok(())
    }
}

/// Helper scheme: message stream V(0,k) rides at g_k/(g_0 h_k) on the
/// legitimate transmitter, helper k sends U(k) at 1/h_k, so V(0,k) and U(k)
/// collide at the eavesdropper while every U(k) lands at exactly 1 at the
/// legitimate receiver.
pub fn build_helper_plan(ch: &ChannelInstance) -> Result<SignalPlan> {
    let m = match ch.kind {
        ChannelKind::HelperWiretap { m } => m,
        kind => return Err(Error::Domain(format!("helper plan needs a helper channel, got {kind:?}"))),
    };
    ch.validate()?;
    let h = ch.h_vec()?;
    let g = &ch.g;

    let mut streams = Vec::with_capacity(2 * m);
    let mut tx = Vec::with_capacity(m + 1);
    let mut legit_terms = Vec::with_capacity(m);
    for k in 1..=m {
        let stream = StreamId::Message { owner: 0, slot: k };
        streams.push(stream);
        let expr = CoeffExpr::ratio(vec![GainRef::G(k)], vec![GainRef::G(0), GainRef::H(k)]);
        legit_terms.push(Term::new(stream, expr, h, g));
    }
    tx.push(TxAssignment {
        tx_index: 0,
        terms: legit_terms,
    });
    for k in 1..=m {
        let stream = StreamId::Jamming { owner: k };
        streams.push(stream);
        let expr = CoeffExpr::ratio(vec![], vec![GainRef::H(k)]);
        tx.push(TxAssignment {
            tx_index: k,
            terms: vec![Term::new(stream, expr, h, g)],
        });
    }

    let plan = SignalPlan {
        scheme: SchemeKind::HelperAligned,
        streams,
        tx,
    };
    plan.validate(ch)?;
    Ok(plan)
}

/// MAC scheme: user i sends V(i,j) at g_j/(g_i h_j) for every j != i plus its
/// own jamming stream U(i) at 1/h_i. At the eavesdropper U(j) and all V(i,j)
/// share the dimension g_j/h_j; at the legitimate receiver all jamming
/// streams collapse to 1.
pub fn build_mac_plan(ch: &ChannelInstance) -> Result<SignalPlan> {
    let k = match ch.kind {
        ChannelKind::MacWiretap { k } => k,
        kind => return Err(Error::Domain(format!("mac plan needs a mac channel, got {kind:?}"))),
    };
    ch.validate()?;
    let h = ch.h_vec()?;
    let g = &ch.g;

    let mut streams = Vec::with_capacity(k * k);
    let mut tx = Vec::with_capacity(k);
    for i in 0..k {
        for j in 0..k {
            if j != i {
                streams.push(StreamId::Message { owner: i, slot: j });
            }
        }
    }
    for i in 0..k {
        streams.push(StreamId::Jamming { owner: i });
    }
    for i in 0..k {
        let mut terms = Vec::with_capacity(k);
        for j in 0..k {
            if j == i {
                continue;
            }
            let stream = StreamId::Message { owner: i, slot: j };
            let expr = CoeffExpr::ratio(vec![GainRef::G(j)], vec![GainRef::G(i), GainRef::H(j)]);
            terms.push(Term::new(stream, expr, h, g));
        }
        let jam = StreamId::Jamming { owner: i };
        terms.push(Term::new(
            jam,
            CoeffExpr::ratio(vec![], vec![GainRef::H(i)]),
            h,
            g,
        ));
        tx.push(TxAssignment {
            tx_index: i,
            terms,
        });
    }

    let plan = SignalPlan {
        scheme: SchemeKind::MacAligned,
        streams,
        tx,
    };
    plan.validate(ch)?;
    Ok(plan)
}

/// Blind scheme: no eavesdropper gain appears in any coefficient. The
/// legitimate transmitter sends its own jamming stream at 1/h_0 plus message
/// streams at externally chosen alphas; every helper jams at 1/h_j.
pub fn build_blind_plan(ch: &ChannelInstance, alphas: &[f64]) -> Result<SignalPlan> {
    let m = match ch.kind {
        ChannelKind::HelperWiretap { m } => m,
        kind => return Err(Error::Domain(format!("blind plan needs a helper channel, got {kind:?}"))),
    };
    ch.validate()?;
    if alphas.len() != m {
        return Err(Error::Domain(format!(
            "need {m} alphas, got {}",
            alphas.len()
        )));
    }
    if alphas.iter().any(|a| *a == 0.0 || !a.is_finite()) {
        return Err(Error::Domain("alphas must be finite and nonzero".into()));
    }
    let h = ch.h_vec()?;
    let g = &ch.g;

    let mut streams = Vec::with_capacity(2 * m + 1);
    for k in 1..=m {
        streams.push(StreamId::Message { owner: 0, slot: k });
    }
    for j in 0..=m {
        streams.push(StreamId::Jamming { owner: j });
    }

    let mut legit_terms = Vec::with_capacity(m + 1);
    legit_terms.push(Term::new(
        StreamId::Jamming { owner: 0 },
        CoeffExpr::ratio(vec![], vec![GainRef::H(0)]),
        h,
        g,
    ));
    for k in 1..=m {
        legit_terms.push(Term::new(
            StreamId::Message { owner: 0, slot: k },
            CoeffExpr::scalar(alphas[k - 1]),
            h,
            g,
        ));
    }
    let mut tx = vec![TxAssignment {
        tx_index: 0,
        terms: legit_terms,
    }];
    for j in 1..=m {
        tx.push(TxAssignment {
            tx_index: j,
            terms: vec![Term::new(
                StreamId::Jamming { owner: j },
                CoeffExpr::ratio(vec![], vec![GainRef::H(j)]),
                h,
                g,
            )],
        });
    }

    let plan = SignalPlan {
        scheme: SchemeKind::BlindCJ,
        streams,
        tx,
    };
    plan.validate(ch)?;
    Ok(plan)
}

/// Draws `m` alphas uniformly from [0.5, 2); continuous, so they carry no
/// rational relation to each other or to any channel gain.
pub fn sample_alphas(m: usize, seed: u64) -> Vec<f64> {
    let mut rng = substream(seed, ALPHA_STREAM);
    (0..m).map(|_| rng.random_range(0.5..2.0)).collect()
}

/// Which receiver a constellation is observed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Receiver {
    Legitimate,
    Eavesdropper,
}

/// Streams sharing one effective dimension at a receiver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dim {
    pub coeff: f64,
    pub streams: Vec<StreamId>,
}

impl Dim {
    pub fn num_jamming(&self) -> usize {
        self.streams.iter().filter(|s| !s.is_message()).count()
    }

    pub fn has_message(&self) -> bool {
        self.streams.iter().any(|s| s.is_message())
    }
}

/// The effective receive-side constellation structure of a plan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReceiverConstellation {
    pub receiver: Receiver,
    pub dims: Vec<Dim>,
}

impl ReceiverConstellation {
    pub fn coeffs(&self) -> Vec<f64> {
        self.dims.iter().map(|d| d.coeff).collect()
    }
}

/// Computes the per-stream effective coefficients at `receiver` and groups
/// streams into dimensions.
///
/// Grouping is by equality of the factored coefficient expressions, which is
/// exact for plans built in-process. Two dimensions that were not constructed
/// equal but whose values collide within [`ALIGN_RTOL`] trip
/// [`Error::AmbiguousAlignment`]; for plans read back from JSON the factored
/// forms are opaque scalars and only bit-identical coefficients group.
pub fn receiver_constellation(
    plan: &SignalPlan,
    ch: &ChannelInstance,
    receiver: Receiver,
) -> Result<ReceiverConstellation> {
    plan.validate(ch)?;
    let h = ch.h_vec()?;
    let g = &ch.g;

    let mut groups: Vec<(CoeffExpr, Dim)> = Vec::new();
    for stream in &plan.streams {
        let (tx_index, term) = plan
            .term_for(stream)
            .expect("validated plan covers every stream");
        let gain = match receiver {
            Receiver::Legitimate => GainRef::H(tx_index),
            Receiver::Eavesdropper => GainRef::G(tx_index),
        };
        let expr = term.expr.times_gain(gain);
        let value = expr.eval(h, g);
        if !value.is_finite() || value == 0.0 {
            return Err(Error::Domain(format!(
                "effective coefficient of {stream} is zero or non-finite"
            )));
        }
        match groups.iter_mut().find(|(e, _)| *e == expr) {
            Some((_, dim)) => dim.streams.push(*stream),
            None => groups.push((
                expr,
                Dim {
                    coeff: value,
                    streams: vec![*stream],
                },
            )),
        }
    }

    let dims: Vec<Dim> = groups.into_iter().map(|(_, d)| d).collect();
    for i in 0..dims.len() {
        for j in (i + 1)..dims.len() {
            let (a, b) = (dims[i].coeff, dims[j].coeff);
            if (a - b).abs() <= ALIGN_RTOL * a.abs().max(b.abs()) {
                return Err(Error::AmbiguousAlignment { a, b });
            }
        }
    }
    Ok(ReceiverConstellation { receiver, dims })
}

/// PAM constellation parameters tied to a power budget.
///
/// The constellation is `a * {-Q, ..., Q}` with `Q = max(1, floor(P^e))`,
/// `e = (1 - delta) / (2 (L + delta))`, and `a = gamma * sqrt(P) / Q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PamParams {
    pub p: f64,
    pub l: usize,
    pub delta: f64,
    pub gamma: f64,
    pub q: u64,
    pub a: f64,
}

/// Largest representable Q; beyond this integer arithmetic would lose
/// exactness.
const Q_GUARD: f64 = 9e15;

/// Selects PAM parameters for power `p` and `l` receive dimensions.
pub fn pam_params(p: f64, l: usize, delta: f64, gamma: f64) -> Result<PamParams> {
    if !positive_finite(p) {
        return Err(Error::Domain(format!("power must be positive and finite, got {p}")));
    }
    if l < 1 {
        return Err(Error::Domain("dimension count must be >= 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !positive_finite(gamma) {
        return Err(Error::Domain(format!("gamma must be positive and finite, got {gamma}")));
    }
    let exponent = (1.0 - delta) / (2.0 * (l as f64 + delta));
    let raw = p.powf(exponent);
    // powf lands a few ulps off exact integer powers; snap before flooring.
    let snapped = if (raw - raw.round()).abs() <= 1e-9 * raw.max(1.0) {
        raw.round()
    } else {
        raw.floor()
    };
    if snapped > Q_GUARD {
        return Err(Error::TooLarge {
            size: snapped as u128,
            guard: Q_GUARD as u128,
        });
    }
    let q = (snapped as u64).max(1);
    let a = gamma * p.sqrt() / q as f64;
    Ok(PamParams {
        p,
        l,
        delta,
        gamma,
        q,
        a,
    })
}

impl PamParams {
    /// Re-derives the dependent fields and checks them, for instances that
    /// did not come from [`pam_params`].
    pub fn validate(&self) -> Result<()> {
        let fresh = pam_params(self.p, self.l, self.delta, self.gamma)?;
        if fresh.q != self.q {
            return Err(Error::Domain(format!(
                "q = {} inconsistent with parameters (expected {})",
                self.q, fresh.q
            )));
        }
        let budget = self.gamma * self.p.sqrt();
        if self.a * self.q as f64 > budget * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "a*q = {} exceeds gamma*sqrt(p) = {budget}",
                self.a * self.q as f64
            )));
        }
        Ok(())
    }
}

/// Default power normalizer: the largest-magnitude transmit symbol across
/// all transmitters exactly meets sqrt(P), i.e. 1 / max_t sum_s |coeff|.
pub fn default_gamma(plan: &SignalPlan) -> f64 {
    let worst = plan
        .tx
        .iter()
        .map(|tx| tx.terms.iter().map(|t| t.coeff.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    1.0 / worst
}

fn enum_points(widths: &[u64]) -> Result<u128> {
    let mut total: u128 = 1;
    for &w in widths {
        total = total.saturating_mul(2 * w as u128 + 1);
        if total > ENUM_GUARD {
            return Err(Error::TooLarge {
                size: total,
                guard: ENUM_GUARD,
            });
        }
    }
    Ok(total)
}

/// Exact minimum distance of the receive constellation with per-dimension
/// half-widths: `a * min |sum_i dims[i] * delta_i|` over nonzero integer
/// vectors with `|delta_i| <= 2 * widths[i]`.
pub fn min_distance_mixed(dims: &[f64], widths: &[u64], a: f64) -> Result<f64> {
    if dims.is_empty() || dims.len() != widths.len() {
        return Err(Error::Domain("dims and widths must be nonempty and same length".into()));
    }
    if dims.iter().any(|d| !d.is_finite()) {
        return Err(Error::Domain("dims must be finite".into()));
    }
    if !positive_finite(a) {
        return Err(Error::Domain(format!("scale must be positive and finite, got {a}")));
    }
    if widths.contains(&0) {
        return Err(Error::Domain("widths must be >= 1".into()));
    }
    enum_points(widths)?;

    let bounds: Vec<i64> = widths.iter().map(|&w| 2 * w as i64).collect();
    let n = dims.len();
    let mut delta: Vec<i64> = bounds.iter().map(|&b| -b).collect();
    let mut best = f64::INFINITY;
    'outer: loop {
        // Sign symmetry: visit only vectors whose first nonzero entry is
        // positive (and skip the zero vector).
        if let Some(first) = delta.iter().find(|&&d| d != 0) {
            if *first > 0 {
                let value: f64 = dims.iter().zip(&delta).map(|(c, &d)| c * d as f64).sum();
                let dist = value.abs();
                if dist < best {
                    best = dist;
                }
            }
        }
        for i in (0..n).rev() {
            if delta[i] < bounds[i] {
                delta[i] += 1;
                continue 'outer;
            }
            delta[i] = -bounds[i];
            if i == 0 {
                break 'outer;
            }
        }
    }
    Ok(a * best)
}

/// Exact minimum distance over the uniform grid `a * {-Q..Q}^L` combined with
/// coefficients `dims`; brute force, guarded at [`ENUM_GUARD`] points.
pub fn min_distance_oracle(dims: &[f64], q: u64, a: f64) -> Result<f64> {
    if q == 0 {
        return Err(Error::Domain("q must be >= 1".into()));
    }
    let widths = vec![q; dims.len()];
    min_distance_mixed(dims, &widths, a)
}

/// Outcome of checking the Diophantine minimum-distance lower bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KgBound {
    pub d_min: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares the exact minimum distance against `k_delta * a / q^(L-1+delta)`.
///
/// The constant is existential, so callers supply a candidate `k_delta`
/// (typically calibrated over sampled gain sets).
pub fn kg_bound_check(dims: &[f64], q: u64, a: f64, delta: f64, k_delta: f64) -> Result<KgBound> {
    if !positive_finite(delta) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    if !positive_finite(k_delta) {
        return Err(Error::Domain(format!("k_delta must be positive, got {k_delta}")));
    }
    let d_min = min_distance_oracle(dims, q, a)?;
    let l = dims.len() as f64;
    let bound = k_delta * a / (q as f64).powf(l - 1.0 + delta);
    Ok(KgBound {
        d_min,
        bound,
        holds: d_min >= bound,
    })
}
