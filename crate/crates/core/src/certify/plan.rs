//! Deterministic sample plans standing in for "for all z ∈ U".

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_SEED: u64 = 0x5eed_1e71;

/// Sampling of the neighborhood `U = {|z_i| ≤ R}` and of the shell levels.
///
/// Levels are multiples of `δ`: a point at level `ℓ` has `r = ℓ δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub radius: f64,
    /// Log-spaced radii per coordinate in `[1e-6 R, R]`.
    pub radial_points: usize,
    pub phase_points: usize,
    /// Seeded uniformly random points per `δ`.
    pub random_points: usize,
    pub deltas: Vec<f64>,
    /// Levels inside the strip `S_δ`, in `(-1, 0]`.
    pub strip_levels: Vec<f64>,
    /// Further levels of `Ω_δ` checked for plurisubharmonicity, in `[-4, 1)`.
    pub shell_levels: Vec<f64>,
    /// Levels at or below `-3` where `λ_δ` must vanish identically.
    pub flat_levels: Vec<f64>,
    pub seed: u64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self {
            radius: 0.5,
            radial_points: 64,
            phase_points: 8,
            random_points: 128,
            deltas: decades(2, 8),
            strip_levels: vec![0.0, -0.25, -0.5, -0.75, -0.99],
            shell_levels: vec![0.5, 0.99, -1.5, -2.0, -2.9],
            flat_levels: vec![-3.0, -4.0],
            seed: DEFAULT_SEED,
        }
    }
}

/// `[10^{-k1}, …, 10^{-k2}]`.
pub fn decades(k1: u32, k2: u32) -> Vec<f64> {
    (k1..=k2).map(|k| format!("1e-{k}").parse().expect("valid literal")).collect()
}

impl SamplePlan {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidPlan(m.to_string()));
        if !(self.radius > 0.0 && self.radius <= 1.0) {
            return bad("radius must lie in (0, 1]");
        }
        if self.deltas.is_empty() || self.deltas.iter().any(|&d| !(d > 0.0 && d < 1.0)) {
            return bad("every delta must lie in (0, 1)");
        }
        if self.radial_points < 2 || self.phase_points == 0 {
            return bad("need at least 2 radial points and 1 phase point");
        }
        if self.strip_levels.iter().any(|&l| !(l > -1.0 && l <= 0.0)) {
            return bad("strip levels must lie in (-1, 0]");
        }
        if self.shell_levels.iter().any(|&l| !(-4.0..1.0).contains(&l)) {
            return bad("shell levels must lie in [-4, 1)");
        }
        if self.flat_levels.iter().any(|&l| l.is_nan() || l > -3.0) {
            return bad("flat levels must be at most -3");
        }
        Ok(())
    }

    fn log_radii<T: Scalar>(&self) -> Vec<T> {
        let k = self.radial_points;
        let lo = (1e-6f64).ln();
        (0..k).map(|j| T::lit(self.radius * (lo * (1.0 - j as f64 / (k - 1) as f64)).exp())).collect()
    }

    fn phases<T: Scalar>(&self) -> Vec<Complex<T>> {
        (0..self.phase_points)
            .map(|l| {
                Complex::from_polar(
                    T::one(),
                    T::TAU() * T::from_usize_lossy(l) / T::from_usize_lossy(self.phase_points),
                )
            })
            .collect()
    }

    /// Sample points of `U`.
    ///
    /// `axis_anchors[i]` and `grid_anchors[i]` are extra radii for coordinate
    /// `i` (regime boundaries of the weight family at the current `δ`); radii
    /// above `R` are dropped. The set is: the origin; axis sweeps over
    /// (log radii ∪ axis anchors) × phases; a coarse tensor grid over
    /// `{0, R, 1e-2 R, 1e-4 R} ∪ grid anchors`; and `random_points` seeded
    /// points with log-uniform radii. `stream` separates random streams.
    pub fn points<T: Scalar>(
        &self,
        dim: usize,
        axis_anchors: &[Vec<T>],
        grid_anchors: &[Vec<T>],
        stream: u64,
    ) -> Vec<Vec<Complex<T>>> {
        let r_max = T::lit(self.radius);
        let zero = Complex::new(T::zero(), T::zero());
        let keep = |r: &T| *r <= r_max;
        let log = self.log_radii::<T>();
        let phases = self.phases::<T>();
        let mut out = vec![vec![zero; dim]];

        for i in 0..dim {
            let extra = axis_anchors.get(i).map(|a| a.as_slice()).unwrap_or(&[]);
            for &r in log.iter().chain(extra.iter().filter(|r| keep(r))) {
                for &ph in &phases {
                    let mut z = vec![zero; dim];
                    z[i] = ph * r;
                    out.push(z);
                }
            }
        }

        if dim > 1 {
            let coarse: Vec<Vec<T>> = (0..dim)
                .map(|i| {
                    let mut v = vec![T::zero(), r_max, r_max * T::lit(1e-2), r_max * T::lit(1e-4)];
                    if let Some(a) = grid_anchors.get(i) {
                        v.extend(a.iter().copied().filter(keep));
                    }
                    v
                })
                .collect();
            let tilt = Complex::from_polar(T::one(), T::FRAC_PI_2());
            let mut idx = vec![0usize; dim];
            'grid: loop {
                for flip in [false, true] {
                    let z = (0..dim)
                        .map(|i| {
                            let r = coarse[i][idx[i]];
                            if flip && i % 2 == 1 {
                                tilt * r
                            } else {
                                Complex::new(r, T::zero())
                            }
                        })
                        .collect();
                    out.push(z);
                }
                for (i, slot) in idx.iter_mut().enumerate() {
                    *slot += 1;
                    if *slot < coarse[i].len() {
                        continue 'grid;
                    }
                    *slot = 0;
                }
                break;
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        let lo = (1e-6f64).ln();
        for _ in 0..self.random_points {
            let z = (0..dim)
                .map(|_| {
                    let r = self.radius * (lo * rng.gen::<f64>()).exp();
                    let th = rng.gen::<f64>() * std::f64::consts::TAU;
                    Complex::from_polar(T::lit(r), T::lit(th))
                })
                .collect();
            out.push(z);
        }
        out
    }
}
