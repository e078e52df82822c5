//! Property tests over sampled channels and random parameters.

use proptest::prelude::*;
use sdof_core::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every message stream shares its eavesdropper dimension with exactly
    /// its paired jamming stream; no message joins the legitimate jamming
    /// dimension.
    #[test]
    fn helper_alignment_holds_for_sampled_channels(seed in any::<u64>(), m in 1usize..5) {
        let ch = sample_channel(ChannelKind::HelperWiretap { m }, seed).unwrap();
        let plan = build_helper_plan(&ch).unwrap();

        let eve = receiver_constellation(&plan, &ch, Receiver::Eavesdropper).unwrap();
        prop_assert_eq!(eve.dims.len(), m);
        for dim in &eve.dims {
            prop_assert_eq!(dim.streams.len(), 2);
            prop_assert_eq!(dim.num_jamming(), 1);
            let jammer = dim.streams.iter().find(|s| !s.is_message()).unwrap().owner();
            let paired = StreamId::Message { owner: 0, slot: jammer };
            prop_assert!(dim.streams.contains(&paired));
        }

        let legit = receiver_constellation(&plan, &ch, Receiver::Legitimate).unwrap();
        prop_assert_eq!(legit.dims.len(), m + 1);
        let jam: Vec<_> = legit.dims.iter().filter(|d| d.num_jamming() > 0).collect();
        prop_assert_eq!(jam.len(), 1);
        prop_assert!(!jam[0].has_message());
        prop_assert_eq!(jam[0].coeff, 1.0);
    }

    /// Eavesdropper dimensions partition the MAC streams into K groups of
    /// size K, one jamming stream each.
    #[test]
    fn mac_alignment_partitions_streams(seed in any::<u64>(), k in 2usize..5) {
        let ch = sample_channel(ChannelKind::MacWiretap { k }, seed).unwrap();
        let plan = build_mac_plan(&ch).unwrap();
        let eve = receiver_constellation(&plan, &ch, Receiver::Eavesdropper).unwrap();
        prop_assert_eq!(eve.dims.len(), k);
        let mut covered = 0;
        for dim in &eve.dims {
            prop_assert_eq!(dim.streams.len(), k);
            prop_assert_eq!(dim.num_jamming(), 1);
            covered += dim.streams.len();
        }
        prop_assert_eq!(covered, k * k);
        let legit = receiver_constellation(&plan, &ch, Receiver::Legitimate).unwrap();
        prop_assert_eq!(legit.dims.len(), k * (k - 1) + 1);
    }

    /// Blind plans never read eavesdropper gains: perturbing g leaves every
    /// transmit coefficient bit-identical.
    #[test]
    fn blind_plan_ignores_eavesdropper_csi(
        seed in any::<u64>(),
        m in 1usize..4,
        factor in 0.1f64..10.0,
    ) {
        let ch = sample_channel(ChannelKind::HelperWiretap { m }, seed).unwrap();
        let alphas = sample_alphas(m, seed ^ 0xb11d);
        let plan = build_blind_plan(&ch, &alphas).unwrap();
        let mut perturbed = ch.clone();
        for g in &mut perturbed.g {
            *g *= factor;
        }
        let plan2 = build_blind_plan(&perturbed, &alphas).unwrap();
        for (a, b) in plan.tx.iter().zip(&plan2.tx) {
            for (ta, tb) in a.terms.iter().zip(&b.terms) {
                prop_assert_eq!(ta.stream, tb.stream);
                prop_assert_eq!(ta.coeff, tb.coeff);
            }
        }
        // The legitimate receiver's constellation is untouched as well.
        let legit = receiver_constellation(&plan, &ch, Receiver::Legitimate).unwrap();
        let legit2 = receiver_constellation(&plan2, &perturbed, Receiver::Legitimate).unwrap();
        prop_assert_eq!(legit.coeffs(), legit2.coeffs());
    }

    /// Enlarging the constellation can only shrink the minimum distance.
    #[test]
    fn min_distance_is_nonincreasing_in_q(seed in any::<u64>()) {
        let ch = sample_channel(ChannelKind::HelperWiretap { m: 1 }, seed).unwrap();
        let plan = build_helper_plan(&ch).unwrap();
        let dims = receiver_constellation(&plan, &ch, Receiver::Legitimate)
            .unwrap()
            .coeffs();
        let mut prev = f64::INFINITY;
        for q in 1..=6u64 {
            let d = min_distance_oracle(&dims, q, 1.0).unwrap();
            prop_assert!(d <= prev);
            prev = d;
        }
    }

    /// Secrecy rate accounting is monotone: more rate never hurts, more
    /// leakage never helps.
    #[test]
    fn secrecy_rate_monotonicity(
        rate in 0.0f64..100.0,
        bump in 0.0f64..10.0,
        leak in 0.0f64..100.0,
    ) {
        prop_assert!(secrecy_rate_lb(rate + bump, leak) >= secrecy_rate_lb(rate, leak));
        prop_assert!(secrecy_rate_lb(rate, leak + bump) <= secrecy_rate_lb(rate, leak));
    }

    /// Both region families are symmetric in the users, so their vertex sets
    /// are invariant under coordinate rotation.
    #[test]
    fn region_vertices_are_permutation_invariant(k in 2usize..5, mac in any::<bool>()) {
        let spec = if mac { mac_region(k).unwrap() } else { ic_region(k).unwrap() };
        let ex = extreme_points(&spec).unwrap();
        let rotated: std::collections::BTreeSet<Vec<Rational>> = ex
            .points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.rotate_left(1);
                q
            })
            .collect();
        prop_assert_eq!(ex.points, rotated);
    }

    /// Per-dimension leakage never exceeds the support-ratio cap.
    #[test]
    fn leakage_respects_support_cap(q in 1u64..200, m in 2usize..5) {
        let leak = leakage_exact(q, &[m]).unwrap();
        let cap = (((2 * m as u64 * q + 1) as f64) / ((2 * q + 1) as f64)).log2();
        prop_assert!(leak >= 0.0);
        prop_assert!(leak <= cap);
    }
}
