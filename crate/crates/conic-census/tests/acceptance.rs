//! Acceptance suite: every contract gets one test that prints a pass/fail
//! line with its measured numbers before asserting.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use conic_census::census::{
    count_all_conics, count_generalized, count_primitive_conics, count_two_squares, FamilyParams,
};
use conic_census::constants::{predict_conics, predict_genguo, predict_two_squares};
use conic_census::verify::{
    suite_assembly, suite_densities, suite_detectors, suite_hilbert, suite_selberg, CheckResult,
};
use conic_census::FactorSieve;

fn report(name: &str, passed: bool, detail: &str) -> bool {
    println!(
        "criterion={name} status={} detail={detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

fn assert_checks(prefix: &str, results: &[CheckResult]) {
    let mut all = true;
    for r in results {
        all &= report(&format!("{prefix}/{}", r.name), r.passed, &r.detail);
    }
    assert!(all, "{prefix}: at least one check failed");
}

/// 1a. Hilbert product formula: 10^5 random pairs, zero failures.
/// 1c. Congruence route = Hilbert route at p = 2, exhaustive mod 16.
/// 1d. Solubility = Holzer brute force on all reduced conics with |abc| <= 2000.
#[test]
fn criterion_1acd_exact_identities() {
    let results = suite_hilbert().unwrap();
    assert_checks("1", &results);
}

/// 1b. Detector identity = solubility, exhaustive for abc <= 3000 plus 10^4
/// random larger triples, and the Jacobi-decomposition equivalence.
#[test]
fn criterion_1b_detectors() {
    let results = suite_detectors().unwrap();
    assert_checks("1b", &results);
}

/// 2. Enumerated local densities equal the closed forms as exact rationals.
#[test]
fn criterion_2_exact_densities() {
    let results = suite_densities().unwrap();
    assert_checks("2", &results);
}

/// 3. The two Euler-product routes and the Tamagawa assembly agree within
/// 1e-6 relative at prime bound 1e6.
#[test]
fn criterion_3_constant_consistency() {
    let results = suite_assembly(1_000_000).unwrap();
    assert_checks("3", &results);
}

/// 4. Empirical convergence of the primitive census on B in {100,...,800}:
/// |ratio - 1| nonincreasing across the grid and <= 0.35 at B = 800.
///
/// The second bound is out of reach at desk scale: the error term decays like
/// 1/log B with an implied constant near 4 (measured deviations 0.87, 0.81,
/// 0.71, 0.61), so meeting 0.35 needs B around 1e5, i.e. ~1e15 triples.  The
/// check is asserted as stated and is expected to fail honestly.
#[test]
fn criterion_4_conic_convergence() {
    let sieve = FactorSieve::new(800).unwrap();
    let predicted = predict_conics(1_000_000).constant();
    let mut deviations = Vec::new();
    for b in [100u64, 200, 400, 800] {
        let raw = count_primitive_conics(b, &sieve).unwrap();
        let ratio = raw as f64 * (b as f64).ln().powf(1.5) / (b as f64).powi(3) / predicted;
        deviations.push((b, (ratio - 1.0).abs()));
    }
    let monotone = deviations.windows(2).all(|w| w[0].1 >= w[1].1);
    let detail = deviations
        .iter()
        .map(|(b, d)| format!("B={b}:{d:.4}"))
        .collect::<Vec<_>>()
        .join(" ");
    let ok_monotone = report("4/deviation-nonincreasing", monotone, &detail);
    let final_dev = deviations.last().unwrap().1;
    let ok_final = report(
        "4/deviation-at-800",
        final_dev <= 0.35,
        &format!("{final_dev:.4} (bound 0.35)"),
    );
    assert!(ok_monotone, "deviations not monotone: {detail}");
    assert!(
        ok_final,
        "|ratio - 1| = {final_dev:.4} at B = 800 exceeds 0.35; the error term's \
         implied constant (~4/log B) keeps desk-scale boxes far from the limit"
    );
}

/// 5. Two-squares pair count at B = 1e4: normalized count within 20% of the
/// regularized constant.
#[test]
fn criterion_5_two_squares_convergence() {
    let b = 10_000u64;
    let sieve = FactorSieve::new(b).unwrap();
    let raw = count_two_squares(b, &sieve).unwrap();
    let predicted = predict_two_squares(1_000_000).value;
    let ratio = raw as f64 * (b as f64).ln() / (b as f64).powi(2) / predicted;
    let ok = report(
        "5/two-squares-at-1e4",
        (ratio - 1.0).abs() <= 0.20,
        &format!("count={raw} ratio={ratio:.4}"),
    );
    assert!(ok);
}

/// 6. Generalized family at X = (500,500,500): within 35% of the coefficient,
/// and the m = (3,1,1) family shifts by the predicted factor within 40%.
#[test]
fn criterion_6_generalized_family() {
    let sieve = FactorSieve::new(1500).unwrap();
    let x = [500u64; 3];
    let norm: f64 = x.iter().map(|&xi| (xi as f64).ln().sqrt() / xi as f64).product();

    let base = FamilyParams::new([1, 1, 1], [1, 1, 1]).unwrap();
    let base_coef = predict_genguo(&base, 1_000_000, &sieve).unwrap();
    let base_count = count_generalized(&base, x, &sieve).unwrap();
    let base_ratio = base_count as f64 * norm / base_coef;
    let ok1 = report(
        "6/base-family-at-500",
        (base_ratio - 1.0).abs() <= 0.35,
        &format!("count={base_count} ratio={base_ratio:.4}"),
    );

    let shifted = FamilyParams::new([1, 1, 1], [3, 1, 1]).unwrap();
    let shifted_coef = predict_genguo(&shifted, 1_000_000, &sieve).unwrap();
    let shifted_count = count_generalized(&shifted, x, &sieve).unwrap();
    let empirical_shift = shifted_count as f64 / base_count as f64;
    let predicted_shift = shifted_coef / base_coef;
    let shift_ratio = empirical_shift / predicted_shift;
    let correct_direction = predicted_shift < 1.0 && empirical_shift < 1.0;
    let ok2 = report(
        "6/coefficient-shift",
        correct_direction && (shift_ratio - 1.0).abs() <= 0.40,
        &format!(
            "empirical-shift={empirical_shift:.4} predicted-shift={predicted_shift:.4} ratio={shift_ratio:.4}"
        ),
    );
    assert!(ok1 && ok2);
}

/// 7. Selberg-Delange trends for (q,a,d) in {(4,1,1),(8,3,1),(4,1,15)}:
/// deviations nonincreasing over x in {1e5,1e6,1e7} and <= 0.35 at 1e7.
#[test]
fn criterion_7_selberg_delange_trend() {
    let results = suite_selberg().unwrap();
    assert_checks("7", &results);
}

/// 8. Structural identities: the content identity, divisibility by 6, and
/// parallel determinism at 1, 2 and 8 workers.
#[test]
fn criterion_8_structural_identities() {
    let sieve = FactorSieve::new(100).unwrap();
    let mut content_ok = true;
    for b in 1..=30u64 {
        let all = count_all_conics(b, &sieve).unwrap();
        let sum: u64 = (1..=b)
            .map(|d| count_primitive_conics(b / d, &sieve).unwrap())
            .sum();
        content_ok &= all == sum;
    }
    let ok1 = report("8/content-identity", content_ok, "N0(B) = sum_d N(B/d) for B <= 30");

    let mut div_ok = true;
    for b in [1u64, 7, 16, 30, 100] {
        div_ok &= count_primitive_conics(b, &sieve).unwrap() % 6 == 0;
    }
    let ok2 = report("8/divisible-by-6", div_ok, "6 | N(B) on the tested grid");

    let counts: Vec<(u64, u64)> = [1usize, 2, 8]
        .iter()
        .map(|&w| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build().unwrap();
            pool.install(|| {
                (
                    count_primitive_conics(60, &sieve).unwrap(),
                    count_generalized(
                        &FamilyParams::new([1, 1, 1], [1, 1, 1]).unwrap(),
                        [40, 40, 40],
                        &sieve,
                    )
                    .unwrap(),
                )
            })
        })
        .collect();
    let deterministic = counts.windows(2).all(|w| w[0] == w[1]);
    let ok3 = report(
        "8/parallel-determinism",
        deterministic,
        &format!("counts at 1/2/8 workers: {counts:?}"),
    );
    assert!(ok1 && ok2 && ok3);
}
