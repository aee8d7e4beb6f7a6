//! The weighted pair form
//! `½ ∬_{(0,∞)²} (g(x) − g(y))² ρ(x) ρ(y) |x − y|^{−1−α} dx dy`
//! for profiles `g` with compact support, by nested tanh-sinh quadrature.

use rayon::prelude::*;

use super::profile::{PieceLoc, Profile};
use crate::error::{domain, Result};
use crate::quad::{tail_above, tail_below, Focus, QuadResult, SingularitySpec, TanhSinh};
use crate::scalar::Real;

/// Weight `ρ` in the pair form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight<T> {
    Unit,
    /// `ρ(x) = x^p` with `−1 < p < α`.
    Power(T),
}

impl<T: Real> Weight<T> {
    fn at(&self, x: T) -> T {
        match *self {
            Weight::Unit => T::one(),
            Weight::Power(p) => x.powf(p),
        }
    }
}

/// `∫_{(0,∞)∖[lo,hi]} ρ(y) |x − y|^{−1−α} dy` for `x` inside `[lo, hi]`,
/// given `x − lo` and `hi − x`.
fn outside_kernel<T: Real>(
    weight: Weight<T>,
    rule: &TanhSinh<T>,
    x: T,
    to_lo: T,
    to_hi: T,
    alpha: T,
) -> Result<QuadResult<T>> {
    match weight {
        Weight::Unit => {
            let v = (to_hi.powf(-alpha) + to_lo.powf(-alpha) - x.powf(-alpha)) / alpha;
            Ok(QuadResult::exact(v))
        }
        Weight::Power(p) => Ok(tail_above(rule, x, to_hi, p, alpha)? + tail_below(rule, x, to_lo, p, alpha)?),
    }
}

/// Pair form of `g` with weight `ρ`: each unordered pair counted once.
pub fn pair_form<T: Real, P: Profile<T>>(g: &P, weight: Weight<T>, alpha: T, rel_tol: T) -> Result<QuadResult<T>> {
    if !(alpha > T::zero() && alpha < T::two()) {
        return Err(domain("pair_form", format!("need 0 < alpha < 2, got {alpha}")));
    }
    if !(rel_tol > T::zero()) {
        return Err(domain("pair_form", "rel_tol must be positive"));
    }
    if let Weight::Power(p) = weight {
        if !(p > -T::one() && p < alpha) {
            return Err(domain("pair_form", format!("need -1 < p < alpha, got p={p}")));
        }
    }
    let breaks = g.breakpoints();
    let pieces = breaks.len() - 1;
    let outer = TanhSinh::with_rel_tol(rel_tol);
    let inner = TanhSinh::with_rel_tol(rel_tol * T::lit(0.25));
    let one = T::one();

    let parts: Vec<Result<QuadResult<T>>> = (0..pieces)
        .into_par_iter()
        .map(|i| {
            let (bl, br) = (breaks[i], breaks[i + 1]);
            let mut failure = None;
            let integrand = |n: crate::quad::Node<T>| -> (T, T) {
                let xl = PieceLoc {
                    piece: i,
                    to_left: n.to_left,
                    to_right: n.to_right,
                };
                let x = n.x;
                let rx = weight.at(x);
                let gx = g.value_at(xl);
                let mut total = QuadResult::zero();

                // y in the same piece: s ∈ (0, to_right]
                let same = inner.integrate_graded(
                    |m| {
                        let s = m.to_left;
                        let y = PieceLoc {
                            piece: i,
                            to_left: n.to_left + s,
                            to_right: m.to_right,
                        };
                        let q = g.difference(xl, y, s) / s;
                        (q * q * s.powf(one - alpha) * rx * weight.at(x + s), T::zero())
                    },
                    T::zero(),
                    n.to_right,
                    SingularitySpec::left(one - alpha).expect("alpha < 2"),
                    Focus::Left(x),
                );
                let mut push = |r: Result<QuadResult<T>>| match r {
                    Ok(q) => total = total + q,
                    Err(e) => failure = Some(e),
                };
                push(same);

                // y in a later piece j: s = gap + t
                for j in i + 1..pieces {
                    let gap = (breaks[j] - br) + n.to_right;
                    let r = inner.integrate_graded(
                        |m| {
                            let s = gap + m.to_left;
                            let y = PieceLoc {
                                piece: j,
                                to_left: m.to_left,
                                to_right: m.to_right,
                            };
                            let d = g.difference(xl, y, s);
                            (d * d * s.powf(-one - alpha) * rx * weight.at(x + s), T::zero())
                        },
                        T::zero(),
                        breaks[j + 1] - breaks[j],
                        SingularitySpec::regular(),
                        Focus::Left(gap),
                    );
                    push(r);
                }

                if gx != T::zero() {
                    let to_lo = (bl - breaks[0]) + n.to_left;
                    let to_hi = (breaks[pieces] - br) + n.to_right;
                    push(outside_kernel(weight, &inner, x, to_lo, to_hi, alpha).map(|k| k.scale(gx * gx * rx)));
                }
                if failure.is_some() {
                    return (T::nan(), T::zero());
                }
                (total.value, total.error_estimate)
            };
            let r = outer.integrate_graded(integrand, bl, br, SingularitySpec::regular(), Focus::Left(bl));
            match (r, failure) {
                (_, Some(e)) => Err(e),
                (r, None) => r,
            }
        })
        .collect();
    parts.into_iter().sum::<Result<QuadResult<T>>>()
}
