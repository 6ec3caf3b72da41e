use egraphsim::network::{NetworkState, NodeId, SchmidtPair};
use egraphsim::swap::{
    average_scp, monte_carlo_scp, perform_swap, statevector_oracle, swap_outcomes, BellLabel,
    BellOutcome, SampledStream, SwapMode,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(l2: f64) -> SchmidtPair {
    SchmidtPair::from_lambda2(l2).unwrap()
}

fn max_deviation(x: &[BellOutcome; 4], y: &[BellOutcome; 4]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            assert_eq!(a.label, b.label);
            (a.probability - b.probability)
                .abs()
                .max((a.result.lambda1() - b.result.lambda1()).abs())
                .max((a.result.lambda2() - b.result.lambda2()).abs())
        })
        .fold(0.0, f64::max)
}

fn schmidt() -> impl Strategy<Value = SchmidtPair> {
    (0.0..=0.5f64).prop_map(s)
}

#[test]
fn oracle_fixes_quarter_quarter_values() {
    // the frozen closed-form example is checked against the oracle here
    let out = statevector_oracle(s(0.25), s(0.25));
    let labels: Vec<_> = out.iter().map(|o| o.label).collect();
    assert_eq!(labels, BellLabel::ALL.to_vec());
    for o in &out[..2] {
        assert!((o.probability - 0.3125).abs() < 1e-15);
        assert!((o.result.lambda1() - 0.9).abs() < 1e-15);
        assert!((o.result.lambda2() - 0.1).abs() < 1e-15);
    }
    for o in &out[2..] {
        assert!((o.probability - 0.1875).abs() < 1e-15);
        assert!((o.result.lambda2() - 0.5).abs() < 1e-15);
    }
    let weighted: f64 = out.iter().map(|o| o.probability * o.result.scp()).sum();
    assert!((weighted - 0.5).abs() < 1e-15);

    let weighted: f64 = statevector_oracle(s(0.1), s(0.4))
        .iter()
        .map(|o| o.probability * o.result.scp())
        .sum();
    assert!((weighted - 0.2).abs() < 1e-15);
}

#[test]
fn oracle_matches_closed_form_on_edge_cases() {
    for (a, b) in [
        (0.5, 0.5),
        (0.0, 0.0),
        (0.0, 0.3),
        (0.5, 0.0),
        (0.25, 0.25),
        (1e-9, 0.5),
        (0.4999999, 0.5),
    ] {
        let dev = max_deviation(&swap_outcomes(s(a), s(b)), &statevector_oracle(s(a), s(b)));
        assert!(dev < 1e-12, "({a}, {b}) deviates by {dev}");
    }
}

#[test]
fn oracle_matches_closed_form_on_seeded_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..5000 {
        let (a, b) = (
            s(rng.random_range(0.0..=0.5)),
            s(rng.random_range(0.0..=0.5)),
        );
        worst = worst.max(max_deviation(
            &swap_outcomes(a, b),
            &statevector_oracle(a, b),
        ));
    }
    assert!(worst < 1e-12, "worst deviation {worst}");
}

#[test]
fn monte_carlo_mean_tracks_average() {
    for (a, b, seed) in [(0.25, 0.25, 1), (0.05, 0.45, 2), (0.5, 0.3, 3)] {
        let mut stream = SampledStream::new(seed);
        let (mean, stderr) = monte_carlo_scp(s(a), s(b), 100_000, stream.rng());
        let expected = average_scp(s(a), s(b));
        assert!(stderr <= 2.0 / (100_000f64).sqrt());
        assert!(
            (mean - expected).abs() <= 3.0 * stderr.max(1e-15),
            "({a}, {b}): mean {mean}, expected {expected}, stderr {stderr}"
        );
    }
}

#[test]
fn sampled_swaps_on_networks_average_out() {
    let mut mode = SwapMode::sampled(77);
    let (mut sum, trials) = (0.0, 20_000);
    for _ in 0..trials {
        let mut net = NetworkState::chain(3, 0).unwrap();
        let a = net.add_local_link(0, s(0.2)).unwrap().id();
        let b = net.add_local_link(1, s(0.35)).unwrap().id();
        let rec = perform_swap(&mut net, NodeId(1), a, b, &mut mode).unwrap();
        sum += net.link(rec.produced).unwrap().state().scp();
    }
    let mean = sum / trials as f64;
    // min(0.4, 0.7); SCP lies in [0, 1] so its standard deviation is at most 1/2
    assert!((mean - 0.4).abs() < 3.0 * 0.5 / (trials as f64).sqrt());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn probabilities_normalize(a in schmidt(), b in schmidt()) {
        let total: f64 = swap_outcomes(a, b).iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let total: f64 = statevector_oracle(a, b).iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_equivalence(a in schmidt(), b in schmidt()) {
        prop_assert!(max_deviation(&swap_outcomes(a, b), &statevector_oracle(a, b)) < 1e-12);
    }

    #[test]
    fn average_scp_is_min(a in schmidt(), b in schmidt()) {
        prop_assert!((average_scp(a, b) - a.scp().min(b.scp())).abs() < 1e-12);
    }

    #[test]
    fn swap_is_symmetric(a in schmidt(), b in schmidt()) {
        let key = |o: &BellOutcome| (o.probability.to_bits(), o.result.lambda2().to_bits());
        let mut x: Vec<_> = swap_outcomes(a, b).iter().map(key).collect();
        let mut y: Vec<_> = swap_outcomes(b, a).iter().map(key).collect();
        x.sort_unstable();
        y.sort_unstable();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn results_are_valid_pairs(a in schmidt(), b in schmidt()) {
        for o in swap_outcomes(a, b) {
            let r = o.result;
            prop_assert!(SchmidtPair::new(r.lambda1(), r.lambda2()).is_ok());
            prop_assert!((0.0..=1.0).contains(&o.probability));
        }
    }
}
