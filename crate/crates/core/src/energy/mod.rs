//! One-dimensional Dirichlet energies on `D = (0, ∞)`:
//!
//! * `E(u) = ½ ∬ (u(x) − u(y))² |x − y|^{−1−α} dx dy`, the direct energy;
//! * `N(u) = ∫ u² x^{−α} dx`, the Hardy weight norm;
//! * the ground-state representation `E(u) = κ N(u) + ½ R(u)` with
//!   `w = x^{(α−1)/2}`, `v = u/w` and
//!   `R(u) = ∬ (v(x) − v(y))² w(x) w(y) |x − y|^{−1−α} dx dy`.

mod grid;
mod moments;
mod pair;
mod profile;

use serde::{Deserialize, Serialize};

pub use grid::{random_test_function, GridFunction, TestFunctionSpec};
pub use pair::{pair_form, Weight};
pub use profile::{position, PieceLoc, PowerWeighted, Profile};

use crate::closedform::kappa;
use crate::error::{domain, Result};
use crate::quad::{QuadResult, SingularitySpec, TanhSinh};
use crate::scalar::Real;
use crate::specfun::FracParams;
use moments::quadratic_moment;

fn check_alpha<T: Real>(op: &'static str, alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha < T::two() {
        Ok(())
    } else {
        Err(domain(op, format!("need 0 < alpha < 2, got {alpha}")))
    }
}

fn check_tol<T: Real>(op: &'static str, rel_tol: T) -> Result<()> {
    if rel_tol > T::zero() {
        Ok(())
    } else {
        Err(domain(op, format!("rel_tol must be positive, got {rel_tol}")))
    }
}

/// `∫ u(x)² x^{−α} dx`, exact on each segment. `α = 0` is allowed.
pub fn weighted_norm<T: Real>(u: &GridFunction<T>, alpha: T) -> QuadResult<T> {
    let (k, v, b) = (u.knots(), u.values(), u.slopes());
    let value = (0..u.segments())
        .map(|i| quadratic_moment(v[i], b[i], k[i], k[i + 1] - k[i], -alpha))
        .fold(T::zero(), |a, x| a + x);
    QuadResult::exact(value)
}

/// `∫ u(x)² dist(x, (a, b)ᶜ)^{−α} dx` for `u` supported in `[a, b]`.
pub fn interval_weighted_norm<T: Real>(u: &GridFunction<T>, a: T, b: T, alpha: T) -> Result<QuadResult<T>> {
    let k = u.knots();
    if !(a >= T::zero() && a <= k[0] && b >= k[k.len() - 1]) {
        return Err(domain(
            "interval_weighted_norm",
            format!("support [{}, {}] not inside [{a}, {b}]", k[0], k[k.len() - 1]),
        ));
    }
    let (v, sl) = (u.values(), u.slopes());
    let mid = (a + b) * T::half();
    let mut acc = T::zero();
    for i in 0..u.segments() {
        let (l, r) = (k[i], k[i + 1]);
        // left half: distance x − a, measured from the segment's left end
        if l < mid {
            let end = r.min(mid);
            acc = acc + quadratic_moment(v[i], sl[i], l - a, end - l, -alpha);
        }
        // right half: distance b − x, measured from the segment's right end
        if r > mid {
            let start = l.max(mid);
            acc = acc + quadratic_moment(v[i + 1], -sl[i], b - r, r - start, -alpha);
        }
    }
    if !acc.is_finite() {
        return Err(domain(
            "interval_weighted_norm",
            "integral diverges at the interval ends",
        ));
    }
    Ok(QuadResult::exact(acc))
}

/// Direct energy `E(u)` over `(0, ∞)²`.
///
/// The inner integral over `y − x` is exact on every segment, so a single
/// tanh-sinh pass per segment remains.
pub fn energy_direct<T: Real>(u: &GridFunction<T>, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    energy_restricted(u, T::zero(), T::infinity(), alpha, rel_tol)
}

/// `½ ∬_{(a,b)²} (u(x) − u(y))² |x − y|^{−1−α}` for `u` supported in
/// `[a, b]`; either end may be infinite.
pub fn energy_restricted<T: Real>(u: &GridFunction<T>, a: T, b: T, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    check_alpha("energy_direct", alpha)?;
    check_tol("energy_direct", rel_tol)?;
    let (k, v, sl) = (u.knots(), u.values(), u.slopes());
    let m = k.len();
    if !(a < k[0] && b > k[m - 1]) {
        return Err(domain(
            "energy_restricted",
            format!("support [{}, {}] not strictly inside ({a}, {b})", k[0], k[m - 1]),
        ));
    }
    if v.iter().all(|&x| x == T::zero()) {
        return Ok(QuadResult::zero());
    }
    let one = T::one();
    let gamma = -one - alpha;
    let rule = TanhSinh::with_rel_tol(rel_tol);
    let mut total = QuadResult::zero();
    for i in 0..m - 1 {
        let integrand = |n: crate::quad::Node<T>| {
            let (tl, tr) = (n.to_left, n.to_right);
            let ux = u.on_segment(i, tl, tr);
            let mut acc = sl[i] * sl[i] * tr.powf(T::two() - alpha) / (T::two() - alpha);
            for j in i + 1..m - 1 {
                let s0 = (k[j] - k[i + 1]) + tr;
                let e = (v[j] - v[i + 1]) + sl[i] * tr;
                acc = acc + quadratic_moment(e, sl[j], s0, k[j + 1] - k[j], gamma);
            }
            if ux != T::zero() {
                let to_first = (k[i] - k[0]) + tl;
                let to_last = (k[m - 1] - k[i + 1]) + tr;
                let far_right = if b.is_finite() {
                    (b - n.x).powf(-alpha)
                } else {
                    T::zero()
                };
                let far_left = if a.is_finite() {
                    (n.x - a).powf(-alpha)
                } else {
                    T::zero()
                };
                let kern = to_first.powf(-alpha) - far_left + to_last.powf(-alpha) - far_right;
                acc = acc + ux * ux * kern / alpha;
            }
            acc
        };
        total = total + rule.integrate_nodes(integrand, k[i], k[i + 1], SingularitySpec::regular())?;
    }
    Ok(total)
}

/// `κ N(u) + ½ R(u)` in `d = 1`.
pub fn ground_state_energy<T: Real>(u: &GridFunction<T>, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    check_alpha("ground_state_energy", alpha)?;
    check_tol("ground_state_energy", rel_tol)?;
    let (gs, half_rem) = ground_state_split(u, alpha, rel_tol)?;
    Ok(gs + half_rem)
}

/// `(κ N(u), ½ R(u))` for any profile.
pub fn ground_state_split<T: Real, P: Profile<T> + Clone>(
    u: &P,
    alpha: T,
    rel_tol: T,
) -> Result<(QuadResult<T>, QuadResult<T>)> {
    let p = (alpha - T::one()) * T::half();
    let params = FracParams::new(1, alpha)?;
    let kap = kappa(&params);
    let norm = profile_weighted_norm(u, alpha, rel_tol)?;
    let v = PowerWeighted::new(u.clone(), -p);
    let rem = pair_form(&v, Weight::Power(p), alpha, rel_tol)?;
    Ok((norm.scale(kap), rem))
}

/// `∫ g² x^{−α}` for a general profile, by quadrature per piece.
pub fn profile_weighted_norm<T: Real, P: Profile<T>>(g: &P, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    let b = g.breakpoints();
    let rule = TanhSinh::with_rel_tol(rel_tol);
    let mut total = QuadResult::zero();
    for i in 0..b.len() - 1 {
        total = total
            + rule.integrate_graded(
                |n| {
                    let gx = g.value_at(PieceLoc {
                        piece: i,
                        to_left: n.to_left,
                        to_right: n.to_right,
                    });
                    (gx * gx * n.x.powf(-alpha), T::zero())
                },
                b[i],
                b[i + 1],
                SingularitySpec::regular(),
                crate::quad::Focus::Left(b[i]),
            )?;
    }
    Ok(total)
}

/// Residual of the pointwise ground-state identity
/// `(u_x − u_y)² + u_x²(w_y − w_x)/w_x + u_y²(w_x − w_y)/w_y
///  = w_x w_y (u_x/w_x − u_y/w_y)²`.
pub fn dpf_residual<T: Real>(ux: T, uy: T, wx: T, wy: T) -> Result<T> {
    if !(wx > T::zero() && wy > T::zero()) {
        return Err(domain(
            "dpf_residual",
            format!("weights must be positive, got {wx}, {wy}"),
        ));
    }
    let d = ux - uy;
    let lhs = d * d + ux * ux * (wy - wx) / wx + uy * uy * (wx - wy) / wy;
    let q = ux / wx - uy / wy;
    Ok(lhs - wx * wy * q * q)
}

/// Size of the terms in [`dpf_residual`], for relative comparisons.
pub fn dpf_scale<T: Real>(ux: T, uy: T, wx: T, wy: T) -> T {
    let d = ux - uy;
    let q = ux / wx - uy / wy;
    (d * d)
        .abs()
        .max((ux * ux * (wy - wx) / wx).abs())
        .max((uy * uy * (wx - wy) / wy).abs())
        .max((wx * wy * q * q).abs())
        .max(T::min_positive_value())
}

/// Outcome of one Hardy inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyMarginReport<T> {
    pub energy: T,
    pub weighted_norm: T,
    pub kappa: T,
    pub margin: T,
    pub tolerance: T,
}

impl<T: Real> HardyMarginReport<T> {
    pub fn holds(&self) -> bool {
        self.margin >= -self.tolerance
    }
}

/// `E(u) − κ N(u)` with its error budget.
pub fn hardy_margin<T: Real>(u: &GridFunction<T>, alpha: T, rel_tol: T) -> Result<HardyMarginReport<T>> {
    let params = FracParams::new(1, alpha)?;
    let kap = kappa(&params);
    let e = energy_direct(u, alpha, rel_tol)?;
    let n = weighted_norm(u, alpha);
    let rounding = T::epsilon() * T::lit(64.0) * (e.value.abs() + (kap * n.value).abs());
    Ok(HardyMarginReport {
        energy: e.value,
        weighted_norm: n.value,
        kappa: kap,
        margin: e.value - kap * n.value,
        tolerance: e.error_estimate + kap.abs() * n.error_estimate + rounding,
    })
}
