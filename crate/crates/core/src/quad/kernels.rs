//! Singular integrals of the half-line kernel `|x − y|^{−1−α}` (`d = 1`).

use super::{Focus, Node, QuadResult, SingularitySpec, TanhSinh};
use crate::closedform::PowerExponent;
use crate::error::{domain, Result};
use crate::scalar::Real;

fn rule<T: Real>(rel_tol: T) -> Result<TanhSinh<T>> {
    if !(rel_tol > T::zero()) {
        return Err(domain("quadrature", "rel_tol must be positive"));
    }
    Ok(TanhSinh::with_rel_tol(rel_tol))
}

/// `ln t` from a node on `[0, 1]` without losing digits at either end.
fn ln_t<T: Real>(n: &Node<T>) -> T {
    if n.to_left < T::half() {
        n.to_left.ln()
    } else {
        (-n.to_right).ln_1p()
    }
}

/// `γ(α, p) = ∫₀¹ (t^p − 1)(1 − t^{α−p−1}) / (1−t)^{1+α} dt` by quadrature.
pub fn gamma_by_quadrature<T: Real>(pe: &PowerExponent<T>, rel_tol: T) -> Result<QuadResult<T>> {
    let alpha = pe.alpha();
    let p = pe.p();
    let q = alpha - T::one() - p;
    let rule = rule(rel_tol)?;
    let left = T::zero().min(p).min(q).min(p + q);
    let spec = SingularitySpec::new(left, T::one() - alpha)?;
    rule.integrate_nodes(
        |n| {
            let lt = ln_t(&n);
            let s = n.to_right;
            // both factors vanish linearly at t = 1; divide each by s first
            let a = (p * lt).exp_m1() / s;
            let b = -(q * lt).exp_m1() / s;
            a * b * s.powf(T::one() - alpha)
        },
        T::zero(),
        T::one(),
        spec,
    )
}

/// `((1−s)^p + (1+s)^p − 2) / s²`, accurate for small `s`.
fn paired_difference<T: Real>(p: T, s: T) -> T {
    if s < T::lit(0.1) {
        // 2 Σ_{k even ≥ 2} C(p, k) s^{k−2}
        let s2 = s * s;
        let mut coeff = p * (p - T::one()) / T::two();
        let mut pow = T::one();
        let mut acc = T::zero();
        let mut k = 2usize;
        loop {
            let term = coeff * pow;
            acc = acc + term;
            if term.abs() <= T::epsilon() * T::lit(1e-2) * acc.abs() || k > 60 {
                break;
            }
            let kf = T::from_usize_exact(k);
            coeff = coeff * (p - kf) * (p - kf - T::one()) / ((kf + T::one()) * (kf + T::two()));
            pow = pow * s2;
            k += 2;
        }
        T::two() * acc
    } else {
        ((p * (-s).ln_1p()).exp_m1() + (p * s.ln_1p()).exp_m1()) / (s * s)
    }
}

/// Principal value `PV ∫₀^∞ (y^p − x^p) / |x − y|^{1+α} dy`, i.e. the regional
/// operator applied to `w_p(y) = y^p` on the half-line.
///
/// After `y = x t` the range splits into `(0, 1/2)`, the symmetric pair
/// `1 ± s` for `s < 1/2` (odd part cancels, leaving `|s|^{1−α}`), and
/// `(3/2, ∞)`, mapped onto `(0, 2/3)` by `t = 1/τ`.
pub fn pv_laplacian_power<T: Real>(pe: &PowerExponent<T>, x: T, rel_tol: T) -> Result<QuadResult<T>> {
    if !(x > T::zero() && x.is_finite()) {
        return Err(domain("pv_laplacian_power", format!("x must be positive, got {x}")));
    }
    let alpha = pe.alpha();
    let p = pe.p();
    let rule = rule(rel_tol)?;
    let one = T::one();
    let half = T::half();

    let near_zero = rule.integrate_nodes(
        |n| {
            let tp = (p * n.to_left.ln()).exp_m1();
            tp * (one - n.x).powf(-one - alpha)
        },
        T::zero(),
        half,
        SingularitySpec::left(p.min(T::zero()))?,
    )?;

    let paired = rule.integrate_nodes(
        |n| paired_difference(p, n.to_left) * n.to_left.powf(one - alpha),
        T::zero(),
        half,
        SingularitySpec::left(one - alpha)?,
    )?;

    let far = rule.integrate_nodes(
        |n| {
            let tau = n.to_left;
            let e = -p * tau.ln();
            // τ^{α−1}(τ^{−p} − 1), avoiding overflow of τ^{−p} near 0
            let head = if e < T::lit(600.0) {
                e.exp_m1() * tau.powf(alpha - one)
            } else {
                tau.powf(alpha - one - p) - tau.powf(alpha - one)
            };
            head * (one - tau).powf(-one - alpha)
        },
        T::zero(),
        T::lit(2.0 / 3.0),
        SingularitySpec::left((alpha - one - p).min(alpha - one))?,
    )?;

    Ok((near_zero + paired + far).scale(x.powf(p - alpha)))
}

/// `∫_{(0,∞) \ (x−a, x+a)} y^r |x − y|^{−1−α} dy` on the half-line.
///
/// The unbounded piece is mapped to `(0, 1]` by `y = (x+a)/τ`, so no
/// truncation is involved.
pub fn tail_kernel_integral<T: Real>(x: T, a: T, r: T, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    if !(x > T::zero() && a > T::zero()) {
        return Err(domain(
            "tail_kernel_integral",
            format!("need x > 0 and a > 0, got x={x}, a={a}"),
        ));
    }
    if !(alpha > T::zero() && r > -T::one() && r < alpha) {
        return Err(domain(
            "tail_kernel_integral",
            format!("need -1 < r < alpha and alpha > 0, got r={r}, alpha={alpha}"),
        ));
    }
    let rule = rule(rel_tol)?;
    let upper = tail_above(&rule, x, a, r, alpha)?;
    let lower = if x > a {
        tail_below(&rule, x, a, r, alpha)?
    } else {
        QuadResult::zero()
    };
    Ok(upper + lower)
}

/// `∫_{x+a}^∞ y^r (y − x)^{−1−α} dy` for `r < α`.
pub(crate) fn tail_above<T: Real>(rule: &TanhSinh<T>, x: T, a: T, r: T, alpha: T) -> Result<QuadResult<T>> {
    let one = T::one();
    let c = x + a;
    // c^{r+1} ∫₀¹ τ^{α−r−1} (a + x(1−τ))^{−1−α} dτ
    Ok(rule
        .integrate_graded(
            |n| {
                let v = n.to_left.powf(alpha - r - one) * (a + x * n.to_right).powf(-one - alpha);
                (v, T::zero())
            },
            T::zero(),
            one,
            SingularitySpec::left(alpha - r - one)?,
            Focus::Right(a / x),
        )?
        .scale(c.powf(r + one)))
}

/// `∫_0^{x−a} y^r (x − y)^{−1−α} dy` for `0 < a < x`, `r > −1`.
pub(crate) fn tail_below<T: Real>(rule: &TanhSinh<T>, x: T, a: T, r: T, alpha: T) -> Result<QuadResult<T>> {
    let one = T::one();
    rule.integrate_graded(
        |n| {
            let v = n.to_left.powf(r) * (a + n.to_right).powf(-one - alpha);
            (v, T::zero())
        },
        T::zero(),
        x - a,
        SingularitySpec::left(r)?,
        Focus::Right(a),
    )
}

/// `tail_kernel_integral / (a^{−α} max(a, x)^r)`; bounded uniformly in
/// `x, a > 0` for fixed `−1 < r < α`.
pub fn tail_kernel_ratio<T: Real>(x: T, a: T, r: T, alpha: T, rel_tol: T) -> Result<(QuadResult<T>, T)> {
    let q = tail_kernel_integral(x, a, r, alpha, rel_tol)?;
    let norm = a.powf(-alpha) * a.max(x).powf(r);
    Ok((q, q.value / norm))
}

/// One `(r, α)` family of the tail-kernel bound with its empirical constant
/// `C = max tail_kernel_ratio` over [`KERNEL_BOUND_XS`] × [`kernel_bound_radii`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBoundCase {
    pub r: f64,
    pub alpha: f64,
    pub constant: f64,
}

pub const KERNEL_BOUND_XS: [f64; 3] = [0.1, 1.0, 10.0];

pub const KERNEL_BOUND_CASES: [KernelBoundCase; 3] = [
    KernelBoundCase {
        r: 0.0,
        alpha: 0.8,
        constant: 2.495_023_660_368_081,
    },
    KernelBoundCase {
        r: 0.3,
        alpha: 0.8,
        constant: 2.497_790_936_587_481,
    },
    KernelBoundCase {
        r: -0.5,
        alpha: 1.5,
        constant: 1.418_143_003_890_759,
    },
];

/// Allowed relative drift above the frozen constant.
pub const KERNEL_BOUND_SLACK: f64 = 0.05;

/// `a = 10^{−2}, 10^{−1.5}, …, 10^{2}`.
pub fn kernel_bound_radii() -> Vec<f64> {
    (0..=8).map(|k| 10f64.powf(-2.0 + 0.5 * k as f64)).collect()
}

/// `∫_{−∞}^0 |x − y|^{−1−α} dy = x^{−α}/α`, evaluated numerically.
pub fn killing_integral_1d<T: Real>(x: T, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    if !(x > T::zero() && alpha > T::zero()) {
        return Err(domain(
            "killing_integral_1d",
            format!("need x > 0 and alpha > 0, got x={x}, alpha={alpha}"),
        ));
    }
    let rule = rule(rel_tol)?;
    let one = T::one();
    // s = x − y over [x, 2x], then s = 2x/τ over [2x, ∞)
    let near = rule.integrate_nodes(
        |n| (x + n.to_left).powf(-one - alpha),
        T::zero(),
        x,
        SingularitySpec::regular(),
    )?;
    let two_x = T::two() * x;
    let far = rule
        .integrate_nodes(
            |n| n.to_left.powf(alpha - one),
            T::zero(),
            one,
            SingularitySpec::left(alpha - one)?,
        )?
        .scale(two_x.powf(-alpha));
    Ok(near + far)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{gamma_general, gamma_half};
    use approx::assert_relative_eq;

    fn pe(a: f64, p: f64) -> PowerExponent<f64> {
        PowerExponent::new(a, p).unwrap()
    }

    #[test]
    fn gamma_quadrature_trivial() {
        assert_eq!(gamma_by_quadrature(&pe(1.3, 0.0), 1e-10).unwrap().value, 0.0);
        assert_eq!(gamma_by_quadrature(&pe(1.0, 0.0), 1e-10).unwrap().value, 0.0);
    }

    #[test]
    fn gamma_quadrature_matches_reference() {
        let cases = [
            (0.5, -0.25, -0.396_280_469_471_184_414_88),
            (0.7, 0.2, 0.515_989_056_921_544_832_67),
            (1.9, 0.45, -2.217_658_441_322_770_365),
            (0.1, -0.45, -7.549_970_410_909_577_452_5),
            (1.0, 0.5, 1.0),
            (1.0001, 0.3, 0.315_114_264_268_777_321_88),
        ];
        for (a, p, want) in cases {
            let r = gamma_by_quadrature(&pe(a, p), 1e-11).unwrap();
            assert_relative_eq!(r.value, want, max_relative = 1e-9);
        }
    }

    #[test]
    fn gamma_quadrature_near_alpha_two() {
        let p = pe(1.999, 0.4995);
        let q = gamma_by_quadrature(&p, 1e-10).unwrap();
        assert_relative_eq!(q.value, gamma_general(&p), max_relative = 1e-8);
    }

    #[test]
    fn pv_matches_closed_form() {
        let r = pv_laplacian_power(&pe(1.5, 0.25), 1.0, 1e-10).unwrap();
        assert_relative_eq!(r.value, gamma_half(1.5), max_relative = 1e-6);
        let r = pv_laplacian_power(&pe(0.5, 0.2), 1.0, 1e-10).unwrap();
        assert_relative_eq!(r.value, gamma_general(&pe(0.5, 0.2)), max_relative = 1e-6);
    }

    #[test]
    fn pv_scales_homogeneously() {
        let p = pe(1.2, -0.3);
        let base = pv_laplacian_power(&p, 1.0, 1e-10).unwrap().value;
        let lam: f64 = 7.5;
        let scaled = pv_laplacian_power(&p, lam, 1e-10).unwrap().value;
        assert_relative_eq!(scaled, base * lam.powf(-0.3 - 1.2), max_relative = 1e-12);
    }

    #[test]
    fn paired_difference_branches_agree() {
        for &p in &[-0.7, 0.25, 1.4] {
            let s: f64 = 0.1;
            let series = paired_difference(p, s * (1.0 - 1e-12));
            let direct = paired_difference(p, s);
            assert_relative_eq!(series, direct, max_relative = 1e-9);
        }
    }

    #[test]
    fn tail_kernel_trivial_region() {
        let r = tail_kernel_integral(1.0_f64, 2.0, 0.0, 1.0, 1e-10).unwrap();
        assert_relative_eq!(r.value, 0.5, max_relative = 1e-9);
    }

    #[test]
    fn tail_kernel_reference() {
        let r = tail_kernel_integral(4.0_f64, 1.0, 0.3, 0.8, 1e-10).unwrap();
        assert_relative_eq!(r.value, 3.528_553_806_468_981_536_6, max_relative = 1e-8);
    }

    #[test]
    fn tail_kernel_guards() {
        assert!(tail_kernel_integral(1.0_f64, 1.0, 0.9, 0.8, 1e-8).is_err());
        assert!(tail_kernel_integral(1.0_f64, 0.0, 0.0, 0.8, 1e-8).is_err());
        assert!(tail_kernel_integral(-1.0_f64, 1.0, 0.0, 0.8, 1e-8).is_err());
    }

    #[test]
    fn killing_examples() {
        for (x, a) in [(1.0_f64, 1.0_f64), (2.0, 0.5), (0.5, 1.5)] {
            let r = killing_integral_1d(x, a, 1e-10).unwrap();
            assert_relative_eq!(r.value, x.powf(-a) / a, max_relative = 1e-9);
        }
    }
}
