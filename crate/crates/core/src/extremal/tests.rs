use super::*;
use crate::energy::{profile_weighted_norm, Profile};
use approx::assert_relative_eq;

#[test]
fn geometry_alpha_ge_1() {
    for &n in &[2u64, 4, 64, 1000] {
        let v = build_cutoff(n, 1.5).unwrap();
        let nf = n as f64;
        assert_eq!(v.spec().regime, Regime::AlphaGe1);
        for k in 0..=50 {
            let x = (1.0 / nf) * nf.powf(k as f64 / 50.0);
            assert_eq!(v.value(x), 1.0, "n={n} x={x}");
        }
        assert_eq!(v.value(1.0 / (2.0 * nf)), 0.0);
        assert_eq!(v.value(0.3 / nf), 0.0);
        assert_eq!(v.value(2.0), 0.0);
        assert_eq!(v.value(7.0), 0.0);
    }
}

#[test]
fn geometry_alpha_lt_1() {
    let v = build_cutoff(4, 0.5).unwrap();
    assert_eq!(v.spec().regime, Regime::AlphaLt1);
    for &x in &[1.0, 2.0, 3.9, 4.0] {
        assert_eq!(v.value(x), 1.0);
    }
    for &x in &[0.1, 0.5, 8.0, 9.0] {
        assert_eq!(v.value(x), 0.0);
    }
    let (lo, hi) = v.spec().support();
    for k in 0..=400 {
        let x = lo + (hi - lo) * k as f64 / 400.0;
        let y = v.value(x);
        assert!((0.0..=1.0).contains(&y));
    }
}

#[test]
fn derivative_bounds_do_not_depend_on_n() {
    let expect = 15.0 / 8.0 / std::f64::consts::LN_2;
    let mut seconds = Vec::new();
    for &n in &[4u64, 64, 1024] {
        let (d1, d2) = build_cutoff(n, 1.2).unwrap().derivative_bounds(20_000);
        assert_relative_eq!(d1, expect, max_relative = 1e-6);
        seconds.push(d2);
    }
    assert_relative_eq!(seconds[0], seconds[2], max_relative = 1e-4);
    assert_relative_eq!(seconds[1], seconds[2], max_relative = 1e-4);
}

#[test]
fn derivatives_match_differences() {
    let v = build_cutoff(16, 0.7).unwrap();
    for &x in &[0.6, 0.8, 17.0, 25.0] {
        let h = 1e-6 * x;
        let fd = (v.value(x + h) - v.value(x - h)) / (2.0 * h);
        assert_relative_eq!(v.derivative(x), fd, max_relative = 1e-6);
        let fd2 = (v.derivative(x + h) - v.derivative(x - h)) / (2.0 * h);
        assert_relative_eq!(v.second_derivative(x), fd2, max_relative = 1e-5, epsilon = 1e-8);
    }
}

#[test]
fn increments_match_values() {
    use crate::energy::PieceLoc;
    let v = build_cutoff(8, 1.3).unwrap();
    let b = v.breakpoints().to_vec();
    for piece in [0usize, 2] {
        let w = b[piece + 1] - b[piece];
        for &(f, g) in &[(0.1, 0.3), (0.6, 0.9), (0.45, 0.55)] {
            let loc = PieceLoc {
                piece,
                to_left: f * w,
                to_right: (1.0 - f) * w,
            };
            let s = (g - f) * w;
            let direct = v.value(b[piece] + g * w) - v.value(b[piece] + f * w);
            assert_relative_eq!(v.increment_within(loc, s), direct, max_relative = 1e-10);
        }
    }
}

#[test]
fn extremal_function_examples() {
    let u = extremal_function(16, 1.0).unwrap();
    let v = build_cutoff(16, 1.0).unwrap();
    for &x in &[0.04, 0.2, 1.5] {
        assert_eq!(u.value(x), v.value(x));
    }
    let u = extremal_function(16, 1.6).unwrap();
    for &x in &[0.0625f64, 0.3, 1.0] {
        assert_relative_eq!(u.value(x), x.powf(0.3), max_relative = 1e-15);
    }
    assert_eq!(u.value(0.01), 0.0);
    assert_eq!(u.value(2.5), 0.0);
}

#[test]
fn norms() {
    assert_relative_eq!(
        lower_bound_norm(2, 1.5).unwrap(),
        std::f64::consts::LN_2,
        max_relative = 1e-15
    );
    assert_relative_eq!(lower_bound_norm(7, 1.5).unwrap(), 7f64.ln(), max_relative = 1e-15);
    assert_relative_eq!(lower_bound_norm(7, 0.5).unwrap(), 7f64.ln(), max_relative = 1e-15);
    for &n in &[4u64, 16, 64, 256] {
        for &a in &[0.5, 1.5] {
            let u = extremal_function(n, a).unwrap();
            let q = profile_weighted_norm(&u, a, 1e-12).unwrap().value;
            assert!(q >= lower_bound_norm(n, a).unwrap());
            assert_relative_eq!(q, extremal_norm(u.inner()), max_relative = 1e-10);
        }
    }
}

#[test]
fn report_identity_and_lower_bound() {
    for &a in &[0.5, 1.0, 1.5] {
        let r = rayleigh_report(16, a, 1e-8).unwrap();
        assert_eq!(r.profile, PROFILE_ID);
        assert!(r.excess >= -r.tolerance);
        assert!(r.cross_check_ok, "{r:?}");
        assert_relative_eq!(
            r.energy,
            r.kappa * r.weighted_norm + r.remainder / 2.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(r.excess, r.quotient - r.kappa, max_relative = 1e-8, epsilon = 1e-12);
    }
}

#[test]
fn scan_guards() {
    assert!(convergence_scan(&[16, 4], 1.5, 1e-6).is_err());
    assert!(convergence_scan::<f64>(&[], 1.5, 1e-6).is_err());
    assert!(rayleigh_report(1, 1.5, 1e-6).is_err());
    assert!(build_cutoff(4, 2.0).is_err());
}

#[test]
fn smoothstep_square_mean() {
    let m = 200_000;
    let mean: f64 = (0..m)
        .map(|k| smoothstep((k as f64 + 0.5) / m as f64).powi(2))
        .sum::<f64>()
        / m as f64;
    assert_relative_eq!(mean, SMOOTHSTEP_SQUARE_MEAN, max_relative = 1e-9);
}
