use rayon::prelude::*;

use hardy_core::closedform::{gamma_general, ConstantsReport, PowerExponent};
use hardy_core::energy::{hardy_margin, random_test_function, TestFunctionSpec};
use hardy_core::extremal::{convergence_scan, ScanSummary};
use hardy_core::quad::{
    gamma_by_quadrature, kernel_bound_radii, pv_laplacian_power, tail_kernel_ratio, KERNEL_BOUND_CASES,
    KERNEL_BOUND_SLACK, KERNEL_BOUND_XS,
};
use hardy_core::{FracParams64, HardyError};

use crate::table::{Cell, Table};

pub const IDENTITY_TOL: f64 = 1e-12;
pub const GAMMA_TOL: f64 = 1e-8;
pub const LAPLACIAN_TOL: f64 = 1e-5;

pub fn default_alphas() -> Vec<f64> {
    let mut a: Vec<f64> = (1..=19).map(|k| k as f64 / 10.0).collect();
    a.push(1.99);
    a
}

/// Ten `α` values avoiding the neighbourhood of 1.
pub fn gamma_alphas() -> Vec<f64> {
    (0..10).map(|i| 0.12 + 0.19 * i as f64).collect()
}

/// Ten exponents spread over `(−1, α)`.
pub fn gamma_exponents(alpha: f64) -> Vec<f64> {
    (0..10)
        .map(|j| -1.0 + (alpha + 1.0) * (j as f64 + 0.5) / 10.0)
        .collect()
}

pub const LAPLACIAN_PAIRS: [(f64, f64); 12] = [
    (0.3, -0.5),
    (0.3, 0.1),
    (0.6, -0.3),
    (0.6, 0.4),
    (0.9, -0.6),
    (0.9, 0.5),
    (1.2, -0.4),
    (1.2, 0.9),
    (1.5, -0.7),
    (1.5, 1.2),
    (1.8, 0.1),
    (1.8, 1.5),
];

pub const FUZZ_ALPHAS: [f64; 4] = [0.3, 0.7, 1.2, 1.7];
pub const SCAN_NS: [u64; 5] = [4, 16, 64, 256, 1024];
pub const SCAN_ALPHAS: [f64; 3] = [0.5, 1.0, 1.5];

pub fn constants(ds: &[u32], alphas: &[f64]) -> Result<Table, HardyError> {
    let mut t = Table::new(
        "constants",
        &[
            "d",
            "alpha",
            "kappa",
            "A",
            "killing_coeff",
            "best_killed",
            "identity_residual",
        ],
    );
    for &d in ds {
        for &a in alphas {
            let r = ConstantsReport::compute(&FracParams64::new(d, a)?);
            t.passed &= r.identity_residual.abs() <= IDENTITY_TOL;
            t.push(vec![
                d.into(),
                a.into(),
                r.kappa.into(),
                r.normalizer.into(),
                r.killing_coeff.into(),
                r.best_killed.into(),
                r.identity_residual.into(),
            ]);
        }
    }
    Ok(t)
}

pub fn gamma(pairs: &[(f64, f64)], rel_tol: f64) -> Result<Table, HardyError> {
    let mut t = Table::new("gamma", &["alpha", "p", "closed_form", "quadrature", "abs_diff"]);
    let rows: Vec<Result<(f64, f64, f64, f64), HardyError>> = pairs
        .par_iter()
        .map(|&(a, p)| {
            let pe = PowerExponent::new(a, p)?;
            let q = gamma_by_quadrature(&pe, rel_tol)?;
            Ok((a, p, gamma_general(&pe), q.value))
        })
        .collect();
    for row in rows {
        let (a, p, c, q) = row?;
        let diff = (c - q).abs();
        t.passed &= diff <= GAMMA_TOL;
        t.push(vec![a.into(), p.into(), c.into(), q.into(), diff.into()]);
    }
    Ok(t)
}

pub fn laplacian_check(pairs: &[(f64, f64)], xs: &[f64], rel_tol: f64) -> Result<Table, HardyError> {
    let mut t = Table::new(
        "laplacian-check",
        &["alpha", "p", "x", "pv_value", "predicted", "rel_err"],
    );
    let jobs: Vec<(f64, f64, f64)> = pairs
        .iter()
        .flat_map(|&(a, p)| xs.iter().map(move |&x| (a, p, x)))
        .collect();
    let rows: Vec<Result<[f64; 6], HardyError>> = jobs
        .par_iter()
        .map(|&(a, p, x)| {
            let pe = PowerExponent::new(a, p)?;
            let pv = pv_laplacian_power(&pe, x, rel_tol)?.value;
            let predicted = gamma_general(&pe) * x.powf(p - a);
            let rel = if predicted == 0.0 {
                pv.abs()
            } else {
                ((pv - predicted) / predicted).abs()
            };
            Ok([a, p, x, pv, predicted, rel])
        })
        .collect();
    for row in rows {
        let r = row?;
        t.passed &= r[5] <= LAPLACIAN_TOL;
        t.push(r.iter().map(|&v| Cell::Num(v)).collect());
    }
    Ok(t)
}

pub fn rayleigh(ns: &[u64], alphas: &[f64], rel_tol: f64) -> Result<Table, HardyError> {
    let mut t = Table::new(
        "rayleigh",
        &[
            "n",
            "alpha",
            "energy",
            "weighted_norm",
            "quotient",
            "kappa",
            "excess",
            "excess_times_log_n",
            "remainder",
            "tolerance",
            "profile",
        ],
    );
    for &a in alphas {
        let reports = convergence_scan(ns, a, rel_tol)?;
        let s = ScanSummary::of(&reports);
        let non_increasing = reports.windows(2).all(|w| w[1].excess <= w[0].excess);
        t.passed &= s.above_kappa && non_increasing;
        for r in reports {
            t.push(vec![
                r.n.into(),
                r.alpha.into(),
                r.energy.into(),
                r.weighted_norm.into(),
                r.quotient.into(),
                r.kappa.into(),
                r.excess.into(),
                r.excess_times_log_n.into(),
                r.remainder.into(),
                r.tolerance.into(),
                r.profile.as_str().into(),
            ]);
        }
    }
    Ok(t)
}

pub fn hardy_fuzz(first_seed: u64, count: u64, alphas: &[f64], rel_tol: f64) -> Result<Table, HardyError> {
    let mut t = Table::new(
        "hardy-fuzz",
        &[
            "seed",
            "alpha",
            "energy",
            "weighted_norm",
            "margin",
            "tolerance",
            "pass",
        ],
    );
    let jobs: Vec<(u64, f64)> = (first_seed..first_seed + count)
        .flat_map(|s| alphas.iter().map(move |&a| (s, a)))
        .collect();
    let rows: Vec<Result<(u64, f64, hardy_core::HardyMarginReport64), HardyError>> = jobs
        .par_iter()
        .map(|&(seed, a)| {
            let u = random_test_function(seed, &TestFunctionSpec::from_seed(seed))?;
            Ok((seed, a, hardy_margin(&u, a, rel_tol)?))
        })
        .collect();
    for row in rows {
        let (seed, a, m) = row?;
        t.passed &= m.holds();
        t.push(vec![
            seed.into(),
            a.into(),
            m.energy.into(),
            m.weighted_norm.into(),
            m.margin.into(),
            m.tolerance.into(),
            m.holds().into(),
        ]);
    }
    Ok(t)
}

pub fn kernel_bound(rel_tol: f64) -> Result<Table, HardyError> {
    let mut t = Table::new(
        "kernel-bound",
        &["x", "a", "r", "alpha", "integral", "normalized_ratio"],
    );
    let radii = kernel_bound_radii();
    for case in KERNEL_BOUND_CASES {
        let mut worst: f64 = 0.0;
        for &x in &KERNEL_BOUND_XS {
            for &a in &radii {
                let (q, ratio) = tail_kernel_ratio(x, a, case.r, case.alpha, rel_tol)?;
                worst = worst.max(ratio);
                t.push(vec![
                    x.into(),
                    a.into(),
                    case.r.into(),
                    case.alpha.into(),
                    q.value.into(),
                    ratio.into(),
                ]);
            }
        }
        t.passed &= worst <= case.constant * (1.0 + KERNEL_BOUND_SLACK);
    }
    Ok(t)
}
