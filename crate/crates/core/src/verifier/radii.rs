//! Radii polynomials `p_k(r) = Z1_k r^2 + (Z0_k - 1) r + Y_k` and the choice
//! of certified radii.
//!
//! Roots are located in ordinary floating point. A radius is only accepted
//! after every `p_k` has been re-evaluated at it in interval arithmetic and
//! found strictly negative.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::RealInterval;

/// Relative offset used to step inside the open negativity interval.
pub const INTERIOR_OFFSET: f64 = 1e-6;
/// Attempts made when marching a radius towards the interior.
pub const MAX_RADIUS_ATTEMPTS: usize = 60;
/// Stand-in for an unbounded upper end of the negativity interval, which
/// occurs only when every `Z1_k` vanishes (scalar matrices).
pub const UNBOUNDED_RADIUS_CAP: f64 = 1e100;

/// Componentwise bounds `Y`, `Z0`, `Z1`, indexed like the unknowns
/// `(lambda, v without the pivot)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiiBounds {
    pub y: Vec<f64>,
    pub z0: Vec<f64>,
    pub z1: Vec<f64>,
}

/// Open interval `(lo, hi)` on which every radii polynomial is negative.
/// `hi` may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NegativityInterval {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NegativeTestFailure {
    /// `Z0_k >= 1`: the linear coefficient is nonnegative.
    LinearCoefficient { component: usize, z0: f64 },
    /// The quadratic `p_k` has no real roots, so it is never negative.
    Discriminant { component: usize },
    /// Each `p_k` is negative somewhere, but not on a common radius.
    EmptyIntersection { lo: f64, hi: f64 },
    /// No interior radius survived the rigorous re-evaluation.
    Recheck,
}

impl fmt::Display for NegativeTestFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LinearCoefficient { component, z0 } => {
                write!(f, "Z0[{component}] = {z0:e} is not below 1")
            }
            Self::Discriminant { component } => {
                write!(f, "radii polynomial {component} has no negative region")
            }
            Self::EmptyIntersection { lo, hi } => {
                write!(f, "negativity regions do not intersect (max lower root {lo:e} >= min upper root {hi:e})")
            }
            Self::Recheck => write!(f, "no radius passed the rigorous re-evaluation"),
        }
    }
}

impl RadiiBounds {
    pub fn dim(&self) -> usize {
        self.y.len()
    }

    pub fn is_finite(&self) -> bool {
        self.y.iter().chain(&self.z0).chain(&self.z1).all(|v| v.is_finite())
    }

    /// Floating-point evaluation of `p_k(r)`, for diagnostics only.
    pub fn eval(&self, k: usize, r: f64) -> f64 {
        self.z1[k] * r * r + (self.z0[k] - 1.0) * r + self.y[k]
    }

    /// Interval enclosure of `p_k(r)`.
    pub fn eval_rigorous(&self, k: usize, r: f64) -> RealInterval {
        let r = RealInterval::point(r);
        let quad = RealInterval::point(self.z1[k]) * (r * r);
        let lin = (RealInterval::point(self.z0[k]) - RealInterval::ONE) * r;
        quad + lin + RealInterval::point(self.y[k])
    }

    /// Every `p_k(r) < 0`, decided with interval arithmetic.
    pub fn all_negative_at(&self, r: f64) -> bool {
        r > 0.0 && r.is_finite() && (0..self.dim()).all(|k| self.eval_rigorous(k, r).hi() < 0.0)
    }

    /// Intersection of the per-component negativity intervals.
    pub fn solve(&self) -> Result<NegativityInterval, NegativeTestFailure> {
        let mut lo = 0.0f64;
        let mut hi = f64::INFINITY;
        for k in 0..self.dim() {
            let (y, z0, z1) = (self.y[k], self.z0[k], self.z1[k]);
            let b = 1.0 - z0;
            if b <= 0.0 {
                return Err(NegativeTestFailure::LinearCoefficient { component: k, z0 });
            }
            let (klo, khi) = if z1 == 0.0 {
                (y / b, f64::INFINITY)
            } else {
                let disc = b * b - 4.0 * z1 * y;
                if disc <= 0.0 {
                    return Err(NegativeTestFailure::Discriminant { component: k });
                }
                // stable roots: q = (b + sqrt(disc)) / 2, roots y / q and q / z1
                let q = 0.5 * (b + disc.sqrt());
                (y / q, q / z1)
            };
            lo = lo.max(klo);
            hi = hi.min(khi);
        }
        if lo < hi {
            Ok(NegativityInterval { lo, hi })
        } else {
            Err(NegativeTestFailure::EmptyIntersection { lo, hi })
        }
    }

    /// Picks a rigorously re-verified existence radius just above `lo` and a
    /// uniqueness radius just below `hi`, with `r_exist <= r_unique`.
    pub fn select_radii(&self, interval: NegativityInterval) -> Option<(f64, f64)> {
        let hi = if interval.hi.is_finite() {
            interval.hi
        } else {
            UNBOUNDED_RADIUS_CAP
        };
        let r_exist = if interval.lo > 0.0 {
            let step = interval.lo * INTERIOR_OFFSET;
            (0..MAX_RADIUS_ATTEMPTS)
                .map(|j| interval.lo + step * 2f64.powi(j as i32))
                .take_while(|&r| r < hi)
                .find(|&r| self.all_negative_at(r))?
        } else {
            let start = hi.min(1.0) * 1e-3;
            (0..MAX_RADIUS_ATTEMPTS)
                .map(|j| start * 2f64.powi(j as i32))
                .take_while(|&r| r < hi)
                .find(|&r| self.all_negative_at(r))?
        };
        let step = hi * INTERIOR_OFFSET;
        let r_unique = (0..MAX_RADIUS_ATTEMPTS)
            .map(|j| hi - step * 2f64.powi(j as i32))
            .take_while(|&r| r > r_exist)
            .find(|&r| self.all_negative_at(r))
            .unwrap_or(r_exist);
        Some((r_exist, r_unique))
    }
}
