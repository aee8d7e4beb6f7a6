//! The optimizing sequence `u_n = v_n · x^{(α−1)/2}` in `d = 1` and its
//! Rayleigh quotients `E(u_n) / N(u_n)`, which decrease to `κ` like
//! `1 / log n`.

mod cutoff;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cutoff::{
    build_cutoff, extremal_function, smoothstep, Cutoff, CutoffSpec, ExtremalFunction, Regime, PROFILE_ID,
};

use crate::closedform::kappa;
use crate::energy::{pair_form, Weight};
use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::specfun::FracParams;

/// `∫₀¹ S(τ)² dτ` for the quintic smoothstep.
pub const SMOOTHSTEP_SQUARE_MEAN: f64 = 181.0 / 462.0;

/// Relative tolerance of the direct-energy cross-check.
pub const CROSS_CHECK_TOL: f64 = 1e-4;

/// The plateau's share of `N(u_n)`: `log n`.
pub fn lower_bound_norm<T: Real>(n: u64, alpha: T) -> Result<T> {
    let spec = CutoffSpec::new(n, alpha)?;
    let (lo, hi) = spec.plateau();
    Ok((hi / lo).ln())
}

/// `N(u_n) = ∫ v_n² x^{−1} dx`, exact.
pub fn extremal_norm<T: Real>(cutoff: &Cutoff<T>) -> T {
    let s = cutoff.spec();
    let (lo, hi) = s.plateau();
    let bands = (s.rise.1 / s.rise.0).ln() + (s.fall.1 / s.fall.0).ln();
    (hi / lo).ln() + bands * T::lit(SMOOTHSTEP_SQUARE_MEAN)
}

/// Rayleigh quotient of `u_n` split into its ground-state parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayleighReport<T> {
    pub n: u64,
    pub alpha: T,
    pub profile: String,
    pub energy: T,
    pub weighted_norm: T,
    pub quotient: T,
    pub kappa: T,
    /// `quotient − κ`, computed as `remainder / (2 N)`.
    pub excess: T,
    pub excess_times_log_n: T,
    /// `R(u_n) = ∬ (v(x) − v(y))² w(x) w(y) |x − y|^{−1−α}`.
    pub remainder: T,
    /// Error bound on `quotient` (and `excess`).
    pub tolerance: T,
    pub direct_energy: T,
    pub direct_error: T,
    pub cross_check_ok: bool,
}

pub fn rayleigh_report<T: Real>(n: u64, alpha: T, rel_tol: T) -> Result<RayleighReport<T>> {
    if !(rel_tol > T::zero()) {
        return Err(domain(
            "rayleigh_report",
            format!("rel_tol must be positive, got {rel_tol}"),
        ));
    }
    let cutoff = build_cutoff(n, alpha)?;
    let p = (alpha - T::one()) * T::half();
    let kap = kappa(&FracParams::new(1, alpha)?);
    let norm = extremal_norm(&cutoff);
    let half_rem = pair_form(&cutoff, Weight::Power(p), alpha, rel_tol)?;
    let energy = kap * norm + half_rem.value;

    let coarse = T::lit(CROSS_CHECK_TOL).max(rel_tol);
    let u = extremal_function(n, alpha)?;
    let direct = pair_form(&u, Weight::Unit, alpha, coarse)?;
    let slack = direct.error_estimate + half_rem.error_estimate + coarse * energy.abs();
    let cross_check_ok = (direct.value - energy).abs() <= slack;

    let excess = half_rem.value / norm;
    let log_n = T::from_u64(n).expect("n fits").ln();
    Ok(RayleighReport {
        n,
        alpha,
        profile: PROFILE_ID.to_string(),
        energy,
        weighted_norm: norm,
        quotient: energy / norm,
        kappa: kap,
        excess,
        excess_times_log_n: excess * log_n,
        remainder: half_rem.value * T::two(),
        tolerance: (half_rem.error_estimate + T::epsilon() * T::lit(16.0) * energy.abs()) / norm,
        direct_energy: direct.value,
        direct_error: direct.error_estimate,
        cross_check_ok,
    })
}

/// Reports for each `n` (computed in parallel, returned in input order).
pub fn convergence_scan<T: Real>(ns: &[u64], alpha: T, rel_tol: T) -> Result<Vec<RayleighReport<T>>> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain(
            "convergence_scan",
            format!("ns must be non-empty and increasing, got {ns:?}"),
        ));
    }
    ns.par_iter().map(|&n| rayleigh_report(n, alpha, rel_tol)).collect()
}

/// Checks drawn from a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary<T> {
    /// Every quotient is at least `κ − tolerance`.
    pub above_kappa: bool,
    pub strictly_decreasing: bool,
    /// `max / min` of `excess · log n`.
    pub rate_band: T,
    /// `max / min` of the remainder over `n ≥ 16`.
    pub remainder_band: T,
    pub cross_checks_ok: bool,
}

impl<T: Real> ScanSummary<T> {
    pub fn of(reports: &[RayleighReport<T>]) -> Self {
        let band = |it: &mut dyn Iterator<Item = T>| {
            let (lo, hi) = it.fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| (lo.min(v), hi.max(v)));
            if lo > T::zero() && lo.is_finite() {
                hi / lo
            } else {
                T::infinity()
            }
        };
        Self {
            above_kappa: reports.iter().all(|r| r.excess >= -r.tolerance),
            strictly_decreasing: reports.windows(2).all(|w| w[1].excess < w[0].excess),
            rate_band: band(&mut reports.iter().map(|r| r.excess_times_log_n)),
            remainder_band: band(&mut reports.iter().filter(|r| r.n >= 16).map(|r| r.remainder)),
            cross_checks_ok: reports.iter().all(|r| r.cross_check_ok),
        }
    }
}

#[cfg(test)]
mod tests;
