use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relq_core::algorithms::{simon_run, SimonInstance};
use relq_core::harness::{
    backdate_report, classical_search, classical_simon_queries, info_gain, mean_and_se,
    rule50_report, simon_success_prob_exact, AdvanceKnowledge, HarnessConfig, Problem,
};
use relq_core::trials::{derive_seed, run_trials};
use relq_core::BitString;

fn search_stats(n: usize, known: usize, trials: u64, seed: u64) -> (f64, f64, u64) {
    let runs = run_trials(seed, trials, |t, rng| {
        let k = BitString::new(t % (1 << n), n).unwrap();
        let adv = AdvanceKnowledge::random(k, known, rng);
        classical_search(n, k, &adv, rng).unwrap()
    });
    let xs: Vec<f64> = runs.iter().map(|&q| q as f64).collect();
    let (mean, se) = mean_and_se(&xs);
    (mean, se, *runs.iter().max().unwrap())
}

#[test]
fn more_known_bits_never_cost_more() {
    for n in [4usize, 8, 12] {
        let means: Vec<f64> = (0..=n)
            .map(|j| search_stats(n, j, 2000, derive_seed(1, j as u64)).0)
            .collect();
        for w in means.windows(2) {
            assert!(w[1] < w[0], "n={n}: {means:?}");
        }
        assert!(means[0] > means[n / 2] && means[n / 2] > means[n]);
        assert_eq!(means[n], 1.0);
    }
}

#[test]
fn half_knowledge_halves_the_exponent() {
    for n in [4usize, 6, 8, 10, 12] {
        let (mean, se, _) = search_stats(n, n / 2, 10_000, derive_seed(2, n as u64));
        let want = ((1u64 << (n / 2)) as f64 + 1.0) / 2.0;
        assert!(
            (mean - want).abs() <= 3.0 * se,
            "n={n}: {mean} vs {want} (se {se})"
        );
    }
}

#[test]
fn four_bits_two_known() {
    let (mean, se, worst) = search_stats(4, 2, 10_000, 3);
    assert!((mean - 2.5).abs() <= 3.0 * se);
    assert_eq!(worst, 4);
}

#[test]
fn ten_bits_half_known_is_about_thirty_two_times_cheaper() {
    let (none, _, _) = search_stats(10, 0, 4000, 4);
    let (half, _, _) = search_stats(10, 5, 4000, 5);
    let ratio = none / half;
    assert!((ratio / 32.0 - 1.0).abs() <= 0.15, "{ratio}");
}

#[test]
fn simon_sampling_matches_the_exact_law() {
    let trials = 4000u64;
    for n in 2..=5usize {
        for m in [1, n - 1, n, 2 * n, 30] {
            let exact = simon_success_prob_exact(n, m);
            let hits = run_trials(derive_seed(6, (n * 100 + m) as u64), trials, |t, rng| {
                let k = BitString::new(1 + t % ((1 << n) - 1), n).unwrap();
                let inst = SimonInstance::random(n, k, rng).unwrap();
                simon_run(&inst, m, rng).unwrap().success
            });
            let freq = hits.iter().filter(|&&h| h).count() as f64 / trials as f64;
            let se = (exact * (1.0 - exact) / trials as f64)
                .sqrt()
                .max(1.0 / trials as f64);
            assert!(
                (freq - exact).abs() <= 3.0 * se,
                "n={n} m={m}: {freq} vs {exact}"
            );
        }
    }
}

#[test]
fn exact_law_small_cases() {
    // n = 2: one useful nonzero sample out of two outcomes
    for m in 1..8 {
        let want = 1.0 - 0.5f64.powi(m as i32);
        assert!((simon_success_prob_exact(2, m) - want).abs() < 1e-12);
    }
    assert_eq!(simon_success_prob_exact(4, 2), 0.0);
    assert!(simon_success_prob_exact(8, 24) >= 8.0 / 9.0);
}

#[test]
fn classical_simon_grows_like_a_square_root() {
    let sizes: Vec<usize> = (8..=14).collect();
    let logs: Vec<f64> = sizes
        .iter()
        .map(|&n| classical_simon_queries(n, 0.5, 300, derive_seed(7, n as u64)).unwrap())
        .map(|s| {
            assert!(s.all_correct);
            s.mean_queries.log2()
        })
        .collect();
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = logs.iter().sum::<f64>() / logs.len() as f64;
    let slope = xs
        .iter()
        .zip(&logs)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((0.3..=0.6).contains(&slope), "{slope}");
}

#[test]
fn reports_are_reproducible() {
    let cfg = HarnessConfig {
        trials: 500,
        ..HarnessConfig::default()
    };
    for problem in [Problem::Grover, Problem::Deutsch, Problem::Simon] {
        let sizes = match problem {
            Problem::Grover => vec![4, 6],
            Problem::Deutsch => vec![1],
            Problem::Simon => vec![2, 3],
        };
        let a = serde_json::to_string(&rule50_report(problem, &sizes, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&rule50_report(problem, &sizes, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
    let a = serde_json::to_string(&backdate_report(3, &cfg).unwrap()).unwrap();
    assert_eq!(
        a,
        serde_json::to_string(&backdate_report(3, &cfg).unwrap()).unwrap()
    );
}

#[test]
fn a_different_seed_changes_the_measurements() {
    let cfg = HarnessConfig {
        trials: 500,
        ..HarnessConfig::default()
    };
    let other = HarnessConfig { seed: 1, ..cfg };
    let a = rule50_report(Problem::Grover, &[8], &cfg).unwrap();
    let b = rule50_report(Problem::Grover, &[8], &other).unwrap();
    assert_ne!(a[0].measured, b[0].measured);
}

#[test]
fn info_gain_is_half_the_bit_count() {
    for n in 0..=20u32 {
        assert_eq!(info_gain(1 << n).unwrap(), n as f64 / 2.0);
    }
    assert!(info_gain(0).is_err());
    assert!(info_gain(12).is_err());
}

#[test]
fn counting_rng_is_independent_of_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let k = BitString::new(5, 4).unwrap();
    let adv = AdvanceKnowledge::none(4);
    let q = classical_search(4, k, &adv, &mut rng).unwrap();
    assert!((1..=16).contains(&q));
    let seq = relq_core::trials::run_trials_sequential(9, 64, |_, rng| {
        classical_search(4, k, &AdvanceKnowledge::none(4), rng).unwrap()
    });
    assert_eq!(
        seq,
        run_trials(9, 64, |_, rng| classical_search(
            4,
            k,
            &AdvanceKnowledge::none(4),
            rng
        )
        .unwrap())
    );
}
