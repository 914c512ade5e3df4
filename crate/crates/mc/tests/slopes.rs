//! Fitted pre-log slopes against the exact predictions.

use gdof_core::rational::{int, ratio};
use gdof_core::{Alpha, AntennaConfig, FTermSpec, Rational};
use gdof_mc::{estimate_fterm_slope, estimate_slope, McOptions, RateTerm, Sampling};

fn opts(seed: u64, n: usize) -> McOptions {
    let mut o = McOptions::new(seed);
    o.samples_per_point = n;
    o
}

fn cfg(s: &str) -> AntennaConfig {
    s.parse().unwrap()
}

fn alpha(s: &str) -> Alpha {
    s.parse().unwrap()
}

#[test]
fn scalar_point_to_point_slope_is_one() {
    let spec = FTermSpec::new(1, (int(1), 1), (int(0), 0));
    let e = estimate_fterm_slope(spec, &opts(1, 100)).unwrap();
    assert!((e.slope - 1.0).abs() < 0.02, "{}", e.slope);
}

#[test]
fn mixed_exponent_mac_slope() {
    let spec = FTermSpec::new(3, (ratio(3, 5), 4), (int(1), 2));
    let e = estimate_fterm_slope(spec, &opts(2, 100)).unwrap();
    assert_eq!(e.prediction, ratio(13, 5));
    assert!(e.within_tolerance(), "{}", e.slope);
}

#[test]
fn private_rate_at_receiver_two() {
    let e = estimate_slope(&cfg("1,2,1,1"), RateTerm::Private2, alpha("0.4"), ratio(1, 5), &opts(3, 100)).unwrap();
    assert_eq!(e.prediction, int(1));
    assert!(e.within_tolerance(), "{}", e.slope);
}

#[test]
fn common_rate_at_receiver_one_strong() {
    let e = estimate_slope(&cfg("2,2,3,2"), RateTerm::CommonAtR1, alpha("1.4"), int(0), &opts(4, 100)).unwrap();
    assert_eq!(e.prediction, ratio(14, 5));
    assert!(e.within_tolerance(), "{}", e.slope);
}

#[test]
fn no_interference_power_gives_zero_slope() {
    for c in ["1,2,1,1", "2,2,3,2", "2,4,3,3"] {
        let e = estimate_slope(&cfg(c), RateTerm::CommonAtR1, alpha("0"), int(0), &opts(5, 50)).unwrap();
        assert_eq!(e.prediction, int(0));
        assert!(e.slope.abs() < 1e-9, "{c}: {}", e.slope);
    }
}

#[test]
fn identical_seed_gives_identical_means() {
    let c = cfg("2,2,3,2");
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_slope(&c, RateTerm::Private2, alpha("0.8"), ratio(1, 4), &opts(6, 60)).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.mean_rates, b.mean_rates);
    assert_eq!(a.slope.to_bits(), b.slope.to_bits());
    let other = estimate_slope(&c, RateTerm::Private2, alpha("0.8"), ratio(1, 4), &opts(7, 60)).unwrap();
    assert_ne!(a.mean_rates, other.mean_rates);
}

#[test]
fn independent_sampling_also_converges() {
    let mut o = opts(8, 200);
    o.sampling = Sampling::Independent;
    let e = estimate_slope(&cfg("2,2,3,2"), RateTerm::CommonPlusPrivate1, alpha("0.8"), int(0), &o).unwrap();
    assert!(e.within_tolerance(), "{} vs {}", e.slope, e.prediction);
}

#[test]
fn non_canonical_and_negative_power_rejected() {
    let o = opts(0, 50);
    assert!(estimate_slope(&cfg("3,1,2,1"), RateTerm::CommonAtR1, alpha("1"), int(0), &o).is_err());
    assert!(estimate_slope(&cfg("1,2,1,1"), RateTerm::Private2, alpha("1"), ratio(-1, 5), &o).is_err());
}

/// The top-3 fit sits closer to the prediction than the fit through every
/// ladder point, because the O(1) terms of the log-det still bend the low end.
#[test]
fn top_of_ladder_fit_converges_toward_prediction() {
    let cases: [(&str, RateTerm, &str, Rational); 4] = [
        ("1,2,1,1", RateTerm::Private2, "0.4", ratio(1, 5)),
        ("2,2,3,2", RateTerm::CommonPlusPrivate1, "0.8", int(0)),
        ("2,2,3,2", RateTerm::CommonPlusPrivate2, "1.4", ratio(1, 2)),
        ("2,4,3,3", RateTerm::CommonAtR1, "0.6", int(0)),
    ];
    let (mut toward, mut total) = (0, 0);
    for (c, term, a, a2) in cases {
        for seed in 0..10 {
            let e = estimate_slope(&cfg(c), term, alpha(a), a2, &opts(100 + seed, 50)).unwrap();
            let p = gdof_core::rational::to_f64(&e.prediction);
            let full = e.refit(e.snr_exponents.len());
            let top = e.refit(3);
            total += 1;
            if (top - p).abs() <= (full - p).abs() {
                toward += 1;
            }
        }
    }
    assert!(toward * 10 >= total * 9, "{toward}/{total}");
}
