//! Exact integrals of quadratics against shifted powers.

use crate::scalar::{expm1_ratio, Real};

/// `[N₀, N₁, N₂]` with `N_k = ∫_0^L t^k (s₀ + t)^γ dt`, `s₀ > 0`, `L ≥ 0`.
pub(crate) fn shifted_moments<T: Real>(s0: T, len: T, gamma: T) -> [T; 3] {
    let rho = len / s0;
    if rho <= T::half() {
        // binomial series in ρ
        let base = s0.powf(gamma);
        let mut out = [T::zero(); 3];
        let mut coef = T::one();
        let mut rho_n = T::one();
        for n in 0..400usize {
            let nf = T::from_usize_exact(n);
            let mut largest = T::zero();
            for (k, slot) in out.iter_mut().enumerate() {
                let term = coef * rho_n / (nf + T::from_usize_exact(k + 1));
                *slot = *slot + term;
                largest = largest.max(term.abs() / slot.abs().max(T::min_positive_value()));
            }
            if largest < T::epsilon() * T::lit(0.25) {
                break;
            }
            coef = coef * (gamma - nf) / (nf + T::one());
            rho_n = rho_n * rho;
        }
        let mut lk = len;
        for slot in out.iter_mut() {
            *slot = *slot * base * lk;
            lk = lk * len;
        }
        return out;
    }
    let z = rho.ln_1p();
    // m(e) = ∫_{s₀}^{s₀+L} s^e ds
    let m = |e: T| s0.powf(e + T::one()) * expm1_ratio(e + T::one(), z);
    let (m0, m1, m2) = (m(gamma), m(gamma + T::one()), m(gamma + T::two()));
    [m0, m1 - s0 * m0, m2 - T::two() * s0 * m1 + s0 * s0 * m0]
}

/// `∫_0^L (c₀ + c₁ t)² (s₀ + t)^γ dt`; `s₀ = 0` is allowed when the result
/// is finite.
pub(crate) fn quadratic_moment<T: Real>(c0: T, c1: T, s0: T, len: T, gamma: T) -> T {
    if len == T::zero() {
        return T::zero();
    }
    if s0 == T::zero() {
        let one = T::one();
        let pw = |k: T| len.powf(gamma + k + one) / (gamma + k + one);
        let mut acc = c1 * c1 * pw(T::two());
        if c0 != T::zero() {
            acc = acc + T::two() * c0 * c1 * pw(one) + c0 * c0 * pw(T::zero());
        }
        return acc;
    }
    let [n0, n1, n2] = shifted_moments(s0, len, gamma);
    c0 * c0 * n0 + T::two() * c0 * c1 * n1 + c1 * c1 * n2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn brute(k: i32, s0: f64, len: f64, g: f64) -> f64 {
        // composite Gauss-Legendre, 3 points, fine mesh
        let pts = [
            (-0.774_596_669_241_483_4, 5.0 / 9.0),
            (0.0, 8.0 / 9.0),
            (0.774_596_669_241_483_4, 5.0 / 9.0),
        ];
        let m = 4000;
        let h = len / m as f64;
        let mut acc = 0.0;
        for i in 0..m {
            let c = (i as f64 + 0.5) * h;
            for (z, w) in pts {
                let t = c + 0.5 * h * z;
                acc += w * 0.5 * h * t.powi(k) * (s0 + t).powf(g);
            }
        }
        acc
    }

    #[test]
    fn both_branches_match_brute_force() {
        for &(s0, len) in &[(1.0, 0.3), (1.0, 0.5), (1.0, 0.51), (0.2, 3.0), (2.0, 0.01)] {
            for &g in &[-1.5, -1.0, -0.3, 0.0, 0.7] {
                for (k, nk) in shifted_moments(s0, len, g).into_iter().enumerate() {
                    assert_relative_eq!(nk, brute(k as i32, s0, len, g), max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn branch_switch_is_continuous() {
        let below = shifted_moments(1.0, 0.5, -1.3);
        let above = shifted_moments(1.0, 0.500_000_000_000_001, -1.3);
        for k in 0..3 {
            assert_relative_eq!(below[k], above[k], max_relative = 1e-13);
        }
    }

    #[test]
    fn zero_shift() {
        // ∫₀² (3t)² t^{-0.5} dt = 9 · 2^{2.5}/2.5
        assert_relative_eq!(
            quadratic_moment(0.0, 3.0, 0.0, 2.0, -0.5),
            9.0 * 2f64.powf(2.5) / 2.5,
            max_relative = 1e-14
        );
        assert_eq!(quadratic_moment(1.0, 1.0, 1.0, 0.0, -0.5), 0.0);
    }
}
