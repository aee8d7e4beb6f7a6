use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::profile::{PieceLoc, Profile};
use crate::error::{HardyError, Result};
use crate::scalar::Real;

/// Continuous piecewise-linear function on `[x₁, x_m] ⊂ (0, ∞)`, vanishing
/// at both end knots and extended by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid<T>", into = "RawGrid<T>")]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>", serialize = "T: Real + Serialize"))]
pub struct GridFunction<T> {
    knots: Vec<T>,
    values: Vec<T>,
    slopes: Vec<T>,
}

#[derive(Serialize, Deserialize)]
struct RawGrid<T> {
    knots: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> TryFrom<RawGrid<T>> for GridFunction<T> {
    type Error = HardyError;

    fn try_from(raw: RawGrid<T>) -> Result<Self> {
        Self::new(raw.knots, raw.values)
    }
}

impl<T: Real> From<GridFunction<T>> for RawGrid<T> {
    fn from(g: GridFunction<T>) -> Self {
        Self {
            knots: g.knots,
            values: g.values,
        }
    }
}

impl<T: Real> GridFunction<T> {
    pub fn new(knots: Vec<T>, values: Vec<T>) -> Result<Self> {
        let bad = |msg: String| Err(HardyError::InvalidGrid(msg));
        if knots.len() != values.len() {
            return bad(format!("{} knots but {} values", knots.len(), values.len()));
        }
        if knots.len() < 3 {
            return bad(format!("need at least 3 knots, got {}", knots.len()));
        }
        if !(knots[0] > T::zero()) {
            return bad(format!("first knot must be positive, got {}", knots[0]));
        }
        if knots.iter().chain(&values).any(|v| !v.is_finite()) {
            return bad("knots and values must be finite".into());
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("knots must be strictly increasing".into());
        }
        if values[0] != T::zero() || values[values.len() - 1] != T::zero() {
            return bad("values at the end knots must be zero".into());
        }
        let slopes = knots
            .windows(2)
            .zip(values.windows(2))
            .map(|(k, v)| (v[1] - v[0]) / (k[1] - k[0]))
            .collect();
        Ok(Self { knots, values, slopes })
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn slopes(&self) -> &[T] {
        &self.slopes
    }

    pub fn segments(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn scaled(&self, c: T) -> Self {
        Self::new(self.knots.clone(), self.values.iter().map(|&v| v * c).collect())
            .expect("scaling keeps the invariants")
    }

    /// `x ↦ u(x − shift)`; fails if the support leaves `(0, ∞)`.
    pub fn translated(&self, shift: T) -> Result<Self> {
        Self::new(self.knots.iter().map(|&k| k + shift).collect(), self.values.clone())
    }

    /// Value of segment `i`'s line at offset `to_left` from its left knot.
    pub(crate) fn on_segment(&self, i: usize, to_left: T, to_right: T) -> T {
        if to_left <= to_right {
            self.values[i] + self.slopes[i] * to_left
        } else {
            self.values[i + 1] - self.slopes[i] * to_right
        }
    }
}

impl<T: Real> Profile<T> for GridFunction<T> {
    fn breakpoints(&self) -> &[T] {
        &self.knots
    }

    fn value(&self, x: T) -> T {
        let k = &self.knots;
        if !(x > k[0] && x < k[k.len() - 1]) {
            return T::zero();
        }
        let i = k.partition_point(|&q| q <= x) - 1;
        self.on_segment(i, x - k[i], k[i + 1] - x)
    }

    fn value_at(&self, loc: PieceLoc<T>) -> T {
        self.on_segment(loc.piece, loc.to_left, loc.to_right)
    }

    fn increment_within(&self, loc: PieceLoc<T>, s: T) -> T {
        self.slopes[loc.piece] * s
    }

    fn difference(&self, x: PieceLoc<T>, y: PieceLoc<T>, s: T) -> T {
        let (i, j) = (x.piece, y.piece);
        if i == j {
            return self.slopes[i] * s;
        }
        self.slopes[i] * x.to_right + (self.values[j] - self.values[i + 1]) + self.slopes[j] * y.to_left
    }
}

/// Shape of a random piecewise-linear test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionSpec<T> {
    pub knots: usize,
    pub support: (T, T),
    pub amplitude: T,
}

impl<T: Real> TestFunctionSpec<T> {
    /// Seed-derived spec used by the fuzz driver: 3 to 8 knots, support
    /// starting in `[0.05, 1]` and 0.5 to 3.5 long, amplitude 1.
    pub fn from_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5bec);
        let knots = rng.gen_range(3..=8);
        let a: f64 = rng.gen_range(0.05..1.0);
        let len: f64 = rng.gen_range(0.5..3.5);
        Self {
            knots,
            support: (T::lit(a), T::lit(a + len)),
            amplitude: T::one(),
        }
    }
}

/// Deterministic random test function: end knots pinned to the support ends,
/// interior knots uniform inside, interior values uniform in `[−A, A]`.
pub fn random_test_function<T: Real>(seed: u64, spec: &TestFunctionSpec<T>) -> Result<GridFunction<T>> {
    let (a, b) = spec.support;
    if spec.knots < 3 {
        return Err(HardyError::InvalidArgument(format!(
            "need at least 3 knots, got {}",
            spec.knots
        )));
    }
    if !(a > T::zero() && a < b && spec.amplitude > T::zero()) {
        return Err(HardyError::InvalidArgument(format!(
            "need 0 < a < b and positive amplitude, got ({a}, {b}), {}",
            spec.amplitude
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut knots = Vec::with_capacity(spec.knots);
        knots.push(a);
        let mut interior: Vec<T> = (0..spec.knots - 2)
            .map(|_| a + (b - a) * T::lit(rng.gen_range(0.0..1.0)))
            .collect();
        interior.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        knots.extend(interior);
        knots.push(b);
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            continue;
        }
        let mut values = vec![T::zero(); spec.knots];
        for v in values.iter_mut().take(spec.knots - 1).skip(1) {
            *v = spec.amplitude * T::lit(rng.gen_range(-1.0..=1.0));
        }
        return GridFunction::new(knots, values);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::profile::PieceLoc;

    fn hat() -> GridFunction<f64> {
        GridFunction::new(vec![1.0, 2.0, 3.0], vec![0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn invariants_enforced() {
        assert!(GridFunction::new(vec![1.0, 2.0], vec![0.0, 0.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).is_err());
        assert!(GridFunction::new(vec![1.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).is_err());
        assert!(GridFunction::new(vec![1.0, 2.0, 3.0], vec![0.1, 1.0, 0.0]).is_err());
        assert!(GridFunction::new(vec![1.0, 2.0, 3.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn evaluation() {
        let u = hat();
        assert_eq!(u.value(0.5), 0.0);
        assert_eq!(u.value(1.5), 0.5);
        assert_eq!(u.value(2.0), 1.0);
        assert_eq!(u.value(2.75), 0.25);
        assert_eq!(u.value(3.5), 0.0);
    }

    #[test]
    fn differences_across_knots() {
        let u = hat();
        let x = PieceLoc {
            piece: 0,
            to_left: 1.0 - 1e-30,
            to_right: 1e-30,
        };
        let y = PieceLoc {
            piece: 1,
            to_left: 2e-30,
            to_right: 1.0 - 2e-30,
        };
        let d = u.difference(x, y, 3e-30);
        assert!((d - (1e-30 - 2e-30)).abs() < 1e-44, "{d}");
        let x = PieceLoc {
            piece: 0,
            to_left: 0.25,
            to_right: 0.75,
        };
        let y = PieceLoc {
            piece: 1,
            to_left: 0.75,
            to_right: 0.25,
        };
        assert!((u.difference(x, y, 1.5) - (0.25 - 0.25)).abs() < 1e-15);
        assert_eq!(u.increment_within(x, 0.5), 0.5);
    }

    #[test]
    fn json_round_trip_validates() {
        let u = hat();
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"knots":[1.0,2.0,3.0],"values":[0.0,1.0,0.0]}"#);
        let back: GridFunction<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
        let bad = r#"{"knots":[1.0,2.0,3.0],"values":[1.0,1.0,0.0]}"#;
        assert!(serde_json::from_str::<GridFunction<f64>>(bad).is_err());
    }

    #[test]
    fn random_functions_are_deterministic_and_valid() {
        let spec = TestFunctionSpec {
            knots: 6,
            support: (0.3, 2.0),
            amplitude: 2.0,
        };
        assert_eq!(
            random_test_function::<f64>(7, &spec).unwrap(),
            random_test_function(7, &spec).unwrap()
        );
        for seed in 0..100 {
            let u = random_test_function::<f64>(seed, &TestFunctionSpec::from_seed(seed)).unwrap();
            assert!(u.knots()[0] > 0.0);
            assert!(u.values().iter().all(|v| v.abs() <= 1.0));
        }
        let single = TestFunctionSpec {
            knots: 3,
            support: (1.0, 3.0),
            amplitude: 1.0,
        };
        let u = random_test_function::<f64>(3, &single).unwrap();
        assert_eq!(u.segments(), 2);
        assert_eq!(u.knots()[0], 1.0);
        assert_eq!(u.knots()[2], 3.0);
    }
}
