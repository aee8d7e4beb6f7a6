//! Closed-form Hardy constants on the half-space and the identities that tie
//! them together.
//!
//! Everything is expressed through the shared prefactor
//! `π^{(d−1)/2} Γ((1+α)/2) / Γ((α+d)/2)`, evaluated in log space so that
//! large dimensions do not overflow.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::specfun::{beta, lg, stable_normalizer, FracParams};

/// Exponent `p ∈ (−1, α)` of the power function `w_p(x) = x_d^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerExponent<T> {
    p: T,
    alpha: T,
}

impl<T: Real> PowerExponent<T> {
    pub fn new(alpha: T, p: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::two()) {
            return Err(domain(
                "PowerExponent",
                format!("alpha must lie in (0, 2), got {alpha}"),
            ));
        }
        if !(p > -T::one() && p < alpha) {
            return Err(domain(
                "PowerExponent",
                format!("p must lie in (-1, alpha) = (-1, {alpha}), got {p}"),
            ));
        }
        Ok(Self { p, alpha })
    }

    /// The ground-state exponent `(α − 1)/2`.
    pub fn ground_state(alpha: T) -> Result<Self> {
        Self::new(alpha, (alpha - T::one()) / T::two())
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// The mirror exponent `α − 1 − p`.
    pub fn reflected(&self) -> Self {
        Self {
            p: self.alpha - T::one() - self.p,
            alpha: self.alpha,
        }
    }
}

/// Every constant attached to one `(d, α)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport<T> {
    pub d: u32,
    pub alpha: T,
    pub kappa: T,
    pub gamma_half: T,
    pub killing_coeff: T,
    pub best_killed: T,
    pub normalizer: T,
    /// `combined_identity_residual / best_killed`.
    pub identity_residual: T,
}

impl<T: Real> ConstantsReport<T> {
    pub fn compute(params: &FracParams<T>) -> Self {
        let best = best_constant_killed(params.alpha());
        Self {
            d: params.d(),
            alpha: params.alpha(),
            kappa: kappa(params),
            gamma_half: gamma_half(params.alpha()),
            killing_coeff: killing_coefficient(params),
            best_killed: best,
            normalizer: stable_normalizer(params),
            identity_residual: combined_identity_residual(params) / best,
        }
    }
}

fn log_prefactor<T: Real>(params: &FracParams<T>) -> T {
    let a = params.alpha();
    let d = T::from_u32(params.d()).expect("dimension fits the scalar type");
    let two = T::two();
    (d - T::one()) / two * T::PI().ln() + lg((T::one() + a) / two) - lg((a + d) / two)
}

/// `π^{(d−1)/2} Γ((1+α)/2) / Γ((α+d)/2)`, the factor linking `L w_p` to `γ(α, p)`.
pub fn dimension_prefactor<T: Real>(params: &FracParams<T>) -> T {
    log_prefactor(params).exp()
}

/// `B((1+α)/2, (2−α)/2)`.
fn half_beta<T: Real>(alpha: T) -> T {
    let two = T::two();
    beta((T::one() + alpha) / two, (two - alpha) / two).expect("alpha in (0, 2)")
}

/// Sharp Hardy constant `κ_{d,α}` of the half-space. Exactly zero at `α = 1`.
pub fn kappa<T: Real>(params: &FracParams<T>) -> T {
    let a = params.alpha();
    if a == T::one() {
        return T::zero();
    }
    let pow2 = T::two().powf(a);
    dimension_prefactor(params) * (half_beta(a) - pow2) / (a * pow2)
}

/// `γ(α, (α−1)/2) = −(1/α) [B((1+α)/2, (2−α)/2) 2^{−α} − 1]`.
pub fn gamma_half<T: Real>(alpha: T) -> T {
    assert!(alpha > T::zero() && alpha < T::two(), "alpha must lie in (0, 2)");
    if alpha == T::one() {
        return T::zero();
    }
    -(half_beta(alpha) * T::two().powf(-alpha) - T::one()) / alpha
}

/// Band around `α = 1` where the closed form for `γ(α, p)` is replaced by
/// interpolation from nodes at `1 ± h`, `1 ± 2h`.
pub const ALPHA_ONE_BAND: f64 = 1e-4;
const ALPHA_ONE_STEP: f64 = 1e-3;

/// Closed form of `γ(α, p)` valid away from `α = 1`.
fn gamma_closed<T: Real>(alpha: T, p: T) -> T {
    let one = T::one();
    let two = T::two();
    let am = two - alpha;
    let t1 = (p + one - alpha) * (p + two - alpha) * beta(p + one, am).expect("p > -1");
    // (1−α)(2−α) B(1, 2−α) = 1 − α
    let t2 = one - alpha;
    let t3 = p * (p - one) * beta(alpha - p, am).expect("p < alpha");
    (t1 - t2 + t3) / (alpha * (alpha - one))
}

/// `γ(α, p) = ∫₀¹ (t^p − 1)(1 − t^{α−p−1}) / (1−t)^{1+α} dt`.
///
/// Within [`ALPHA_ONE_BAND`] of `α = 1` the closed form loses all its digits
/// to cancellation, so the value is the cubic through the closed form at
/// `α = 1 ± h, 1 ± 2h` (`h = 10⁻³`), or at `1 + h, …, 1 + 4h` when `p` is too
/// close to `α` for the lower nodes to be admissible.
pub fn gamma_general<T: Real>(pe: &PowerExponent<T>) -> T {
    let alpha = pe.alpha();
    let p = pe.p();
    let one = T::one();
    if p == T::zero() || p == alpha - one {
        return T::zero();
    }
    if (alpha - one).abs() >= T::lit(ALPHA_ONE_BAND) {
        return gamma_closed(alpha, p);
    }
    let h = T::lit(ALPHA_ONE_STEP);
    let offsets: [f64; 4] = if p < one - T::lit(3.0) * h {
        [-2.0, -1.0, 1.0, 2.0]
    } else {
        [1.0, 2.0, 3.0, 4.0]
    };
    let nodes: Vec<T> = offsets.iter().map(|&k| one + T::lit(k) * h).collect();
    let values: Vec<T> = nodes.iter().map(|&a| gamma_closed(a, p)).collect();
    lagrange(&nodes, &values, alpha)
}

fn lagrange<T: Real>(nodes: &[T], values: &[T], at: T) -> T {
    let mut acc = T::zero();
    for (i, (&xi, &yi)) in nodes.iter().zip(values).enumerate() {
        let mut basis = T::one();
        for (j, &xj) in nodes.iter().enumerate() {
            if i != j {
                basis = basis * (at - xj) / (xi - xj);
            }
        }
        acc = acc + basis * yi;
    }
    acc
}

/// Coefficient of `A_{d,−α} x_d^{−α}` in the killing density of the half-space.
pub fn killing_coefficient<T: Real>(params: &FracParams<T>) -> T {
    dimension_prefactor(params) / params.alpha()
}

/// Best constant `Γ((1+α)/2)² / π` for the censored form with the killing
/// term restored. Independent of `d`.
pub fn best_constant_killed<T: Real>(alpha: T) -> T {
    assert!(alpha > T::zero() && alpha < T::two(), "alpha must lie in (0, 2)");
    (T::two() * lg((T::one() + alpha) / T::two()) - T::PI().ln()).exp()
}

/// `A_{d,−α} (κ_{d,α} + killing_coeff) − Γ((1+α)/2)²/π`.
pub fn combined_identity_residual<T: Real>(params: &FracParams<T>) -> T {
    stable_normalizer(params) * (kappa(params) + killing_coefficient(params)) - best_constant_killed(params.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fp(d: u32, a: f64) -> FracParams<f64> {
        FracParams::new(d, a).unwrap()
    }

    fn pe(a: f64, p: f64) -> PowerExponent<f64> {
        PowerExponent::new(a, p).unwrap()
    }

    #[test]
    fn kappa_vanishes_at_alpha_one() {
        for d in 1..=10 {
            assert_eq!(kappa(&fp(d, 1.0)), 0.0);
        }
        assert_eq!(gamma_half(1.0_f64), 0.0);
    }

    #[test]
    fn kappa_reference_values() {
        // 40-digit reference evaluation of the closed form
        let cases = [
            (1, 1.5, 0.207_352_518_097_373_270_15),
            (1, 0.5, 0.396_280_469_471_184_414_88),
            (3, 0.7, 0.369_982_570_180_445_672_24),
            (2, 1.8, 1.576_318_412_763_833_113_2),
            (10, 0.3, 10.886_991_527_198_410_243),
            (1, 1.99, 24.721_174_715_747_808_874),
        ];
        for (d, a, want) in cases {
            assert_relative_eq!(kappa(&fp(d, a)), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn gamma_half_sign_and_reference() {
        assert!(gamma_half(0.5_f64) < 0.0);
        assert!(gamma_half(1.5_f64) < 0.0);
        assert_relative_eq!(gamma_half(0.5_f64), -0.396_280_469_471_184_414_88, max_relative = 1e-12);
        assert_relative_eq!(gamma_half(1.5_f64), -0.207_352_518_097_373_270_15, max_relative = 1e-12);
    }

    #[test]
    fn gamma_general_trivial_zeros() {
        assert!(gamma_general(&pe(1.3, 0.0)).abs() < 1e-14);
        assert!(gamma_general(&pe(1.3, 1.3 - 1.0)).abs() < 1e-14);
        assert!(gamma_general(&pe(1.0, 0.0)).abs() < 1e-14);
    }

    #[test]
    fn gamma_general_reference_values() {
        let cases = [
            (0.5, -0.25, -0.396_280_469_471_184_414_88),
            (0.7, 0.2, 0.515_989_056_921_544_832_67),
            (0.5, 0.2, 1.314_315_985_550_316_172_5),
            (1.9, 0.45, -2.217_658_441_322_770_365),
            (0.1, -0.45, -7.549_970_410_909_577_452_5),
            (1.3, 0.9, 2.220_348_380_236_837_116_3),
        ];
        for (a, p, want) in cases {
            assert_relative_eq!(gamma_general(&pe(a, p)), want, max_relative = 1e-11);
        }
    }

    #[test]
    fn gamma_general_near_alpha_one() {
        assert_relative_eq!(gamma_general(&pe(1.0, 0.5)), 1.0, max_relative = 1e-9);
        assert_relative_eq!(gamma_general(&pe(1.0, -0.5)), 1.0, max_relative = 1e-9);
        assert_relative_eq!(
            gamma_general(&pe(1.0001, 0.3)),
            0.315_114_264_268_777_321_88,
            max_relative = 1e-9
        );
        // p too close to alpha for the symmetric stencil
        let near_top = gamma_general(&pe(1.00005, 0.999));
        assert!(near_top.is_finite());
    }

    #[test]
    fn ground_state_matches_half() {
        for &a in &[0.2, 0.5, 0.9, 1.1, 1.5, 1.95] {
            let g = gamma_general(&PowerExponent::ground_state(a).unwrap());
            assert_relative_eq!(g, gamma_half(a), max_relative = 1e-11);
        }
    }

    #[test]
    fn killing_coefficient_values() {
        for &a in &[0.3, 0.5, 1.7] {
            assert_relative_eq!(killing_coefficient(&fp(1, a)), 1.0 / a, max_relative = 1e-14);
        }
        let x: f64 = 2.0;
        assert_relative_eq!(
            killing_coefficient(&fp(1, 0.5)) * x.powf(-0.5),
            2.0 * 2f64.powf(-0.5),
            max_relative = 1e-14
        );
        assert_relative_eq!(killing_coefficient(&fp(2, 1.0)), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn best_constant_values() {
        assert_relative_eq!(
            best_constant_killed(1.0_f64),
            std::f64::consts::FRAC_1_PI,
            max_relative = 1e-15
        );
        assert!((best_constant_killed(1.999_f64) - 0.25).abs() < 1e-3);
        let g = crate::specfun::gamma(0.75_f64).unwrap();
        assert_relative_eq!(
            best_constant_killed(0.5_f64),
            g * g / std::f64::consts::PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn identity_examples() {
        for (d, a) in [(1, 1.0), (3, 0.7), (2, 1.8)] {
            let r = combined_identity_residual(&fp(d, a)) / best_constant_killed(a);
            assert!(r.abs() <= 1e-12, "d={d} a={a}: {r}");
        }
    }

    #[test]
    fn power_exponent_guards() {
        assert!(PowerExponent::new(0.5_f64, -1.0).is_err());
        assert!(PowerExponent::new(0.5_f64, 0.5).is_err());
        assert!(PowerExponent::new(2.0_f64, 0.0).is_err());
        assert_eq!(pe(1.5, 0.1).reflected().p(), 1.5 - 1.0 - 0.1);
    }

    #[test]
    fn report_fields_consistent() {
        let r = ConstantsReport::compute(&fp(2, 1.3));
        assert_relative_eq!(
            r.kappa,
            -r.gamma_half * dimension_prefactor(&fp(2, 1.3)),
            max_relative = 1e-13
        );
        assert!(r.identity_residual.abs() <= 1e-12);
    }
}
