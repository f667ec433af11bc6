//! Special-function and fractional-derivative checks against oracles that
//! share no code with the library: a Lanczos Γ, a positive-term erf series,
//! and values frozen from a 30-digit reference computation.

#![allow(clippy::excessive_precision, clippy::approx_constant)]

use fracwave_core::{jumarie_derivative, jumarie_power_rule, mittag_leffler_real, FractionalOrder, QuadratureSpec};

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn rel(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

/// Lanczos approximation, g = 7, nine coefficients.
fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = C[0];
    for (i, &c) in C.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

fn power_rule_oracle(gamma: f64, alpha: f64, x: f64) -> f64 {
    lanczos_gamma(1.0 + gamma) / lanczos_gamma(1.0 + gamma - alpha) * x.powf(gamma - alpha)
}

/// `e^{x²} erfc(−x) = e^{x²} + (2/√π) Σ 2ⁿ x^{2n+1} / (2n+1)!!`, all terms positive.
fn scaled_erfc_neg(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > sum * 1e-18 {
        n += 1.0;
        term *= 2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
    }
    (x * x).exp() + 2.0 / std::f64::consts::PI.sqrt() * sum
}

#[test]
fn lanczos_oracle_self_check() {
    assert!(rel(lanczos_gamma(1.5), 0.886_226_925_452_758_013_649_083_741_671) < 1e-14);
    assert!(rel(lanczos_gamma(5.0), 24.0) < 1e-13);
}

#[test]
fn frozen_reference_values() {
    let cases = [
        (0.5, 1.0, 5.008_980_080_762_283_466_309_824_598_21),
        (0.5, 2.0, 108.940_904_389_977_972_412_355_433_825),
        (0.7, -1.0, 0.399_611_978_115_599_384_365_893_882_809),
        (0.6, 1.3, 7.600_611_767_813_923_944_603_183_653_26),
    ];
    for (alpha, x, expected) in cases {
        let got = mittag_leffler_real(alpha, x).unwrap();
        assert!(rel(got, expected) < 1e-13, "E_{alpha}({x}) = {got}, want {expected}");
    }
    let half = jumarie_power_rule(1.0, order(0.5), 1.0).unwrap();
    assert!(rel(half, 1.128_379_167_095_512_573_896_158_903_12) < 1e-14);
    let square = jumarie_power_rule(2.0, order(0.3), 2.0).unwrap();
    assert!(rel(square, 4.206_693_023_248_165_599_782_236_335_05) < 1e-13);
}

#[test]
fn e_one_is_exp() {
    for i in 0..200 {
        let x = -5.0 + 10.0 * i as f64 / 199.0;
        let got = mittag_leffler_real(1.0, x).unwrap();
        assert!(rel(got, x.exp()) <= 1e-12, "x={x} got={got}");
    }
}

#[test]
fn e_half_matches_scaled_erfc() {
    for i in 0..=100 {
        let x = 2.0 * i as f64 / 100.0;
        let got = mittag_leffler_real(0.5, x).unwrap();
        let want = scaled_erfc_neg(x);
        assert!(rel(got, want) <= 1e-10, "x={x} got={got} want={want}");
    }
}

#[test]
fn quadrature_matches_power_rule_matrix() {
    let spec = QuadratureSpec::default();
    for &alpha in &[0.3, 0.5, 0.8] {
        for &gamma in &[0.5, 1.0, 2.0] {
            for &x in &[0.5, 1.0, 2.0] {
                let got = jumarie_derivative(|xi: f64| xi.powf(gamma), order(alpha), x, &spec).unwrap();
                let want = power_rule_oracle(gamma, alpha, x);
                assert!(
                    rel(got, want) <= 1e-6,
                    "alpha={alpha} gamma={gamma} x={x}: {got} vs {want}"
                );
                let closed = jumarie_power_rule(gamma, order(alpha), x).unwrap();
                assert!(rel(closed, want) <= 1e-13);
            }
        }
    }
}

#[test]
fn constant_derivative_vanishes() {
    let spec = QuadratureSpec::default();
    for &alpha in &[0.3, 0.5, 0.8] {
        for &x in &[0.5, 1.0, 2.0] {
            let d = jumarie_derivative(|_| -3.5, order(alpha), x, &spec).unwrap();
            assert!(d.abs() <= 1e-8, "alpha={alpha} x={x} d={d}");
        }
    }
}

#[test]
fn eigenfunction_by_quadrature() {
    let spec = QuadratureSpec::default();
    for &alpha in &[0.5, 0.8] {
        for &lambda in &[1.0, -1.0] {
            for &x in &[0.5, 1.0] {
                let f = |xi: f64| mittag_leffler_real(alpha, lambda * xi.powf(alpha)).unwrap();
                let got = jumarie_derivative(f, order(alpha), x, &spec).unwrap();
                let want = lambda * mittag_leffler_real(alpha, lambda * x.powf(alpha)).unwrap();
                assert!(rel(got, want) <= 1e-4, "alpha={alpha} lambda={lambda} x={x}");
            }
        }
    }
}
