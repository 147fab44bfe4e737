//! End-to-end protocol runs and the estimator.

use colorswitch_core::estimate::run_shots;
use colorswitch_core::protocol::Readout;
use colorswitch_core::rng::shot_rng;
use colorswitch_core::{Mode, NoiseModel, Protocol, TieBreak};

#[test]
fn noiseless_protocol_is_perfect() {
    for mode in [Mode::ErrorCorrect, Mode::PostSelect] {
        for readout in [Readout::Expectation, Readout::Sample] {
            let p = Protocol::with_options(NoiseModel::noiseless(), mode, TieBreak::LexMin, readout).unwrap();
            let e = run_shots(&p, 1, 0..200).estimate().unwrap();
            assert_eq!(e.p_accept, 1.0);
            if readout == Readout::Expectation {
                assert_eq!(e.delta, 4.0);
                assert_eq!(e.p_fail, 0.0);
            } else {
                // Off-axis outcomes are fair coins; only the on-axis ones are exact.
                assert!((e.delta - 4.0).abs() < 0.8, "delta {}", e.delta);
                for (s, row) in e.expectations.iter().enumerate() {
                    assert_eq!(row[s / 2].abs(), 1.0);
                }
            }
            assert_eq!(e.n_tot, 1600);
            assert_eq!(e.n_post, 1600);
        }
    }
}

#[test]
fn runs_are_deterministic_per_seed() {
    let p = Protocol::new(NoiseModel::uniform(5e-3).unwrap(), Mode::ErrorCorrect).unwrap();
    assert_eq!(run_shots(&p, 42, 0..500), run_shots(&p, 42, 0..500));
    assert_ne!(run_shots(&p, 42, 0..500), run_shots(&p, 43, 0..500));
}

#[test]
fn chunked_runs_merge_to_a_single_pass() {
    let p = Protocol::new(NoiseModel::uniform(5e-3).unwrap(), Mode::PostSelect).unwrap();
    let whole = run_shots(&p, 7, 0..900);
    let mut merged = run_shots(&p, 7, 0..300);
    merged.merge(&run_shots(&p, 7, 300..650));
    merged.merge(&run_shots(&p, 7, 650..900));
    assert_eq!(merged, whole);
}

#[test]
fn shot_records_are_reproducible() {
    let p = Protocol::new(NoiseModel::uniform(1e-2).unwrap(), Mode::ErrorCorrect).unwrap();
    let mut a = p.runner();
    let mut b = p.runner();
    for shot in 0..50 {
        assert_eq!(a.run_shot(&mut shot_rng(3, shot)), b.run_shot(&mut shot_rng(3, shot)));
    }
}

#[test]
fn noise_lowers_acceptance_and_post_selection_rejects_more() {
    let noise = NoiseModel::uniform(1e-2).unwrap();
    let ec = run_shots(&Protocol::new(noise, Mode::ErrorCorrect).unwrap(), 5, 0..4000).estimate().unwrap();
    let ps = run_shots(&Protocol::new(noise, Mode::PostSelect).unwrap(), 5, 0..4000).estimate().unwrap();
    assert!(ec.p_accept < 0.5);
    assert!(ps.p_accept < ec.p_accept);
    assert!(ec.p_fail > 0.0 && ec.sigma_fail > 0.0);
    assert!((ec.p_accept + ec.p_reject - 1.0).abs() < 1e-12);
}

#[test]
fn sampled_readout_agrees_with_expectations() {
    let noise = NoiseModel::uniform(1e-2).unwrap();
    let exp = Protocol::new(noise, Mode::ErrorCorrect).unwrap();
    let smp = Protocol::with_options(noise, Mode::ErrorCorrect, TieBreak::LexMin, Readout::Sample).unwrap();
    let a = run_shots(&exp, 11, 0..20_000).estimate().unwrap();
    let b = run_shots(&smp, 11, 0..20_000).estimate().unwrap();
    // Sampling adds the shot noise of a fair coin on Y-type outcomes.
    let tol = 5.0 * (a.sigma_fail.powi(2) + b.sigma_fail.powi(2)).sqrt() + 2e-3;
    assert!((a.p_fail - b.p_fail).abs() < tol, "{} vs {}", a.p_fail, b.p_fail);
    assert!((a.p_accept - b.p_accept).abs() < 5.0 * a.sigma_accept.max(1e-3));
}

#[test]
fn mode_names_round_trip() {
    for m in [Mode::ErrorCorrect, Mode::PostSelect] {
        assert_eq!(Mode::parse(m.as_str()), Some(m));
    }
    assert_eq!(Mode::parse("post-select"), Some(Mode::PostSelect));
    assert_eq!(Mode::parse("bogus"), None);
}
