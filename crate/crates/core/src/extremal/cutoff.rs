use serde::{Deserialize, Serialize};

use crate::energy::{PieceLoc, PowerWeighted, Profile};
use crate::error::{domain, Result};
use crate::scalar::Real;

/// Name of the transition profile, carried by every report.
pub const PROFILE_ID: &str = "quintic-log-smoothstep";

/// Which plateau geometry the cutoff uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// plateau `[1/n, 1]`, support `[1/(2n), 2]`
    AlphaGe1,
    /// plateau `[1, n]`, support `[1/2, 2n]`
    AlphaLt1,
}

impl Regime {
    pub fn for_alpha<T: Real>(alpha: T) -> Self {
        if alpha >= T::one() {
            Regime::AlphaGe1
        } else {
            Regime::AlphaLt1
        }
    }
}

/// Geometry of `v_n`: it rises on `rise`, equals 1 between, falls on `fall`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec<T> {
    pub n: u64,
    pub regime: Regime,
    pub rise: (T, T),
    pub fall: (T, T),
}

impl<T: Real> CutoffSpec<T> {
    pub fn new(n: u64, alpha: T) -> Result<Self> {
        if n < 2 {
            return Err(domain("build_cutoff", format!("need n >= 2, got {n}")));
        }
        if !(alpha > T::zero() && alpha < T::two()) {
            return Err(domain("build_cutoff", format!("need 0 < alpha < 2, got {alpha}")));
        }
        let nf = T::from_u64(n).expect("n fits");
        let two = T::two();
        let regime = Regime::for_alpha(alpha);
        let (rise, fall) = match regime {
            Regime::AlphaGe1 => ((T::one() / (two * nf), T::one() / nf), (T::one(), two)),
            Regime::AlphaLt1 => ((T::half(), T::one()), (nf, two * nf)),
        };
        Ok(Self { n, regime, rise, fall })
    }

    pub fn plateau(&self) -> (T, T) {
        (self.rise.1, self.fall.0)
    }

    pub fn support(&self) -> (T, T) {
        (self.rise.0, self.fall.1)
    }
}

/// `S(τ) = 6τ⁵ − 15τ⁴ + 10τ³`.
pub fn smoothstep<T: Real>(t: T) -> T {
    let t3 = t * t * t;
    t3 * (T::lit(10.0) + t * (T::lit(-15.0) + T::lit(6.0) * t))
}

fn smoothstep_d1<T: Real>(t: T) -> T {
    let u = t * (T::one() - t);
    T::lit(30.0) * u * u
}

fn smoothstep_d2<T: Real>(t: T) -> T {
    T::lit(60.0) * t * (T::one() - t) * (T::one() - T::two() * t)
}

/// `(S(b) − S(a)) / (b − a)`.
fn smoothstep_slope<T: Real>(a: T, b: T) -> T {
    let (a2, b2) = (a * a, b * b);
    let s2 = a2 + a * b + b2;
    let s3 = (a + b) * (a2 + b2);
    let s4 = b2 * b2 + b2 * b * a + b2 * a2 + b * a2 * a + a2 * a2;
    T::lit(6.0) * s4 - T::lit(15.0) * s3 + T::lit(10.0) * s2
}

/// The cutoff `v_n`: smoothstep in `log x` across each band.
#[derive(Debug, Clone, PartialEq)]
pub struct Cutoff<T> {
    spec: CutoffSpec<T>,
    breaks: [T; 4],
    rise_log: T,
    fall_log: T,
}

impl<T: Real> Cutoff<T> {
    pub fn new(spec: CutoffSpec<T>) -> Self {
        let breaks = [spec.rise.0, spec.rise.1, spec.fall.0, spec.fall.1];
        Self {
            spec,
            breaks,
            rise_log: (spec.rise.1 / spec.rise.0).ln(),
            fall_log: (spec.fall.1 / spec.fall.0).ln(),
        }
    }

    pub fn spec(&self) -> &CutoffSpec<T> {
        &self.spec
    }

    fn band_log(&self, piece: usize) -> T {
        if piece == 0 {
            self.rise_log
        } else {
            self.fall_log
        }
    }

    /// `(τ, 1 − τ)` within a band, both accurate.
    fn band_coords(&self, loc: PieceLoc<T>) -> (T, T) {
        let (l, r) = (self.breaks[loc.piece], self.breaks[loc.piece + 1]);
        let width = self.band_log(loc.piece);
        ((loc.to_left / l).ln_1p() / width, -(-loc.to_right / r).ln_1p() / width)
    }

    /// Value at a point of a transition band, rising in `τ`.
    fn rising(t: T, tc: T) -> T {
        if t <= T::half() {
            smoothstep(t)
        } else {
            T::one() - smoothstep(tc)
        }
    }

    fn locate(&self, x: T) -> Option<PieceLoc<T>> {
        let b = &self.breaks;
        if !(x > b[0] && x < b[3]) {
            return None;
        }
        let i = if x < b[1] {
            0
        } else if x <= b[2] {
            1
        } else {
            2
        };
        Some(PieceLoc {
            piece: i,
            to_left: x - b[i],
            to_right: b[i + 1] - x,
        })
    }

    /// `v_n′(x)`.
    pub fn derivative(&self, x: T) -> T {
        match self.locate(x) {
            Some(loc) if loc.piece != 1 => {
                let (t, _) = self.band_coords(loc);
                let d = smoothstep_d1(t) / (x * self.band_log(loc.piece));
                if loc.piece == 0 {
                    d
                } else {
                    -d
                }
            }
            _ => T::zero(),
        }
    }

    /// `v_n″(x)`.
    pub fn second_derivative(&self, x: T) -> T {
        match self.locate(x) {
            Some(loc) if loc.piece != 1 => {
                let (t, _) = self.band_coords(loc);
                let w = self.band_log(loc.piece);
                let d = (smoothstep_d2(t) / w - smoothstep_d1(t)) / (x * x * w);
                if loc.piece == 0 {
                    d
                } else {
                    -d
                }
            }
            _ => T::zero(),
        }
    }

    /// `(max x|v′|, max x²|v″|)` over `samples` log-spaced points spanning
    /// the support.
    pub fn derivative_bounds(&self, samples: usize) -> (T, T) {
        let (a, b) = (self.breaks[0].ln(), self.breaks[3].ln());
        let mut out = (T::zero(), T::zero());
        for k in 0..=samples {
            let frac = T::from_usize_exact(k) / T::from_usize_exact(samples.max(1));
            let x = (a + (b - a) * frac).exp();
            out.0 = out.0.max((x * self.derivative(x)).abs());
            out.1 = out.1.max((x * x * self.second_derivative(x)).abs());
        }
        out
    }
}

impl<T: Real> Profile<T> for Cutoff<T> {
    fn breakpoints(&self) -> &[T] {
        &self.breaks
    }

    fn value(&self, x: T) -> T {
        self.locate(x).map_or(T::zero(), |loc| self.value_at(loc))
    }

    fn value_at(&self, loc: PieceLoc<T>) -> T {
        if loc.piece == 1 {
            return T::one();
        }
        let (t, tc) = self.band_coords(loc);
        if loc.piece == 0 {
            Self::rising(t, tc)
        } else {
            Self::rising(tc, t)
        }
    }

    fn increment_within(&self, loc: PieceLoc<T>, s: T) -> T {
        if loc.piece == 1 || s == T::zero() {
            return T::zero();
        }
        let x = self.breaks[loc.piece] + loc.to_left;
        let dt = (s / x).ln_1p() / self.band_log(loc.piece);
        let (t, tc) = self.band_coords(loc);
        let rise = if t <= T::half() {
            dt * smoothstep_slope(t, t + dt)
        } else {
            dt * smoothstep_slope(tc - dt, tc)
        };
        if loc.piece == 0 {
            rise
        } else {
            -rise
        }
    }
}

/// `u_n = v_n · x^{(α−1)/2}`.
pub type ExtremalFunction<T> = PowerWeighted<Cutoff<T>, T>;

pub fn build_cutoff<T: Real>(n: u64, alpha: T) -> Result<Cutoff<T>> {
    Ok(Cutoff::new(CutoffSpec::new(n, alpha)?))
}

pub fn extremal_function<T: Real>(n: u64, alpha: T) -> Result<ExtremalFunction<T>> {
    let p = (alpha - T::one()) * T::half();
    Ok(PowerWeighted::new(build_cutoff(n, alpha)?, p))
}
