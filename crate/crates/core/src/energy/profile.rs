//! Compactly supported functions on the half-line, with increments that stay
//! accurate when the two points are arbitrarily close.

use crate::scalar::Real;

/// Position of a point inside piece `piece` of a [`Profile`], given by its
/// distances to both ends of that piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieceLoc<T> {
    pub piece: usize,
    pub to_left: T,
    pub to_right: T,
}

/// Function on `(0, ∞)`, smooth on each piece between consecutive
/// breakpoints and zero outside `[first, last]` breakpoint.
pub trait Profile<T: Real>: Sync {
    /// Sorted breakpoints; at least two, the first positive.
    fn breakpoints(&self) -> &[T];

    fn value(&self, x: T) -> T;

    /// Value at a located point.
    fn value_at(&self, loc: PieceLoc<T>) -> T {
        self.value(position(self.breakpoints(), loc))
    }

    /// `g(x + s) − g(x)` for `x` at `loc` and `0 ≤ s ≤ loc.to_right`.
    fn increment_within(&self, loc: PieceLoc<T>, s: T) -> T;

    /// `g(y) − g(x)` for `y = x + s`, both located.
    fn difference(&self, x: PieceLoc<T>, y: PieceLoc<T>, s: T) -> T {
        if x.piece == y.piece {
            self.increment_within(x, s)
        } else {
            self.value_at(y) - self.value_at(x)
        }
    }

    fn support(&self) -> (T, T) {
        let b = self.breakpoints();
        (b[0], b[b.len() - 1])
    }
}

/// Abscissa of a located point.
pub fn position<T: Real>(breaks: &[T], loc: PieceLoc<T>) -> T {
    if loc.to_left <= loc.to_right {
        breaks[loc.piece] + loc.to_left
    } else {
        breaks[loc.piece + 1] - loc.to_right
    }
}

/// `g(x) · x^q` for a profile `g`.
#[derive(Debug, Clone)]
pub struct PowerWeighted<P, T> {
    inner: P,
    power: T,
}

impl<P, T> PowerWeighted<P, T> {
    pub fn new(inner: P, power: T) -> Self {
        Self { inner, power }
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }

    pub fn power(&self) -> &T {
        &self.power
    }
}

impl<T: Real, P: Profile<T>> Profile<T> for PowerWeighted<P, T> {
    fn breakpoints(&self) -> &[T] {
        self.inner.breakpoints()
    }

    fn value(&self, x: T) -> T {
        let v = self.inner.value(x);
        if v == T::zero() {
            T::zero()
        } else {
            v * x.powf(self.power)
        }
    }

    fn value_at(&self, loc: PieceLoc<T>) -> T {
        let x = position(self.breakpoints(), loc);
        self.inner.value_at(loc) * x.powf(self.power)
    }

    fn increment_within(&self, loc: PieceLoc<T>, s: T) -> T {
        let y = PieceLoc {
            piece: loc.piece,
            to_left: loc.to_left + s,
            to_right: loc.to_right - s,
        };
        self.difference(loc, y, s)
    }

    fn difference(&self, x: PieceLoc<T>, y: PieceLoc<T>, s: T) -> T {
        // g(y)y^q − g(x)x^q = (g(y) − g(x)) y^q + g(x)(y^q − x^q)
        let xpos = position(self.breakpoints(), x);
        let q = self.power;
        let xq = xpos.powf(q);
        let growth = (q * (s / xpos).ln_1p()).exp_m1();
        let yq = xq * (T::one() + growth);
        self.inner.difference(x, y, s) * yq + self.inner.value_at(x) * xq * growth
    }
}
