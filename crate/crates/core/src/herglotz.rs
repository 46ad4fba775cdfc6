//! Finitely atomic Herglotz measures and the Carathéodory functions they
//! represent.
//!
//! A probability measure `μ = Σ λ_k δ_{θ_k}` on the circle gives
//! `p(ζ) = Σ λ_k (1 + ζ e^{-iθ_k}) / (1 - ζ e^{-iθ_k})`, which has
//! `p(0) = 1` and positive real part on the disk, with Taylor coefficients
//! `p_n = 2 Σ λ_k e^{-inθ_k}`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{exponential, rng_from_seed};
use crate::{C64, DEFAULT_ORDER};

/// Largest support size produced by the samplers.
pub const MAX_ATOMS: usize = 8;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct HerglotzAtom {
    pub weight: f64,
    pub angle: f64,
}

impl From<(f64, f64)> for HerglotzAtom {
    fn from((weight, angle): (f64, f64)) -> Self {
        Self { weight, angle }
    }
}

impl From<HerglotzAtom> for (f64, f64) {
    fn from(a: HerglotzAtom) -> Self {
        (a.weight, a.angle)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr")]
pub struct HerglotzMeasure {
    atoms: Vec<HerglotzAtom>,
}

#[derive(Deserialize)]
struct MeasureRepr {
    atoms: Vec<HerglotzAtom>,
}

impl TryFrom<MeasureRepr> for HerglotzMeasure {
    type Error = Error;

    fn try_from(repr: MeasureRepr) -> Result<Self> {
        Self::new(repr.atoms)
    }
}

/// The three Carathéodory margins `2 - max|p_n|`, `2 - |p_2 - p_1²|` and
/// `2 - |p_3 - p_1 p_2|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaratheodoryMargins {
    pub coefficient: f64,
    pub second: f64,
    pub third: f64,
}

impl CaratheodoryMargins {
    pub fn min(&self) -> f64 {
        self.coefficient.min(self.second).min(self.third)
    }
}

impl HerglotzMeasure {
    pub fn new(atoms: Vec<HerglotzAtom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms"));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidMeasure("too many atoms"));
        }
        if atoms
            .iter()
            .any(|a| !a.weight.is_finite() || !a.angle.is_finite())
        {
            return Err(Error::InvalidMeasure("non-finite atom"));
        }
        if atoms.iter().any(|a| a.weight < 0.0) {
            return Err(Error::InvalidMeasure("negative weight"));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidMeasure("weights do not sum to one"));
        }
        Ok(Self { atoms })
    }

    /// Convenience constructor from `(weight, angle)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().copied().map(HerglotzAtom::from).collect())
    }

    /// Point mass at `angle`; its Carathéodory function is `(1 + ζe^{-iθ})/(1 - ζe^{-iθ})`.
    pub fn point_mass(angle: f64) -> Self {
        Self {
            atoms: alloc::vec![HerglotzAtom { weight: 1.0, angle }],
        }
    }

    pub fn atoms(&self) -> &[HerglotzAtom] {
        &self.atoms
    }

    /// `p_n = 2 Σ λ_k e^{-inθ_k}` for `n >= 1`.
    pub fn p_coeff(&self, n: usize) -> C64 {
        let n = n as f64;
        self.atoms
            .iter()
            .map(|a| C64::from_polar(2.0 * a.weight, -n * a.angle))
            .sum()
    }

    /// `[p_1, ..., p_order]`.
    pub fn p_coeffs(&self, order: usize) -> Vec<C64> {
        (1..=order).map(|n| self.p_coeff(n)).collect()
    }

    /// Evaluates `p(ζ)` in closed form (no truncation), `|ζ| < 1`.
    pub fn p_eval(&self, zeta: C64) -> C64 {
        self.atoms
            .iter()
            .map(|a| {
                let w = zeta * C64::from_polar(1.0, -a.angle);
                (C64::new(1.0, 0.0) + w) / (C64::new(1.0, 0.0) - w) * a.weight
            })
            .sum()
    }

    /// Same weights, every angle shifted by `phi`.
    pub fn rotated(&self, phi: f64) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| HerglotzAtom {
                    weight: a.weight,
                    angle: a.angle + phi,
                })
                .collect(),
        }
    }

    /// Deterministic pseudo-random measure keyed by `seed`.
    ///
    /// Atom count is uniform on `1..=max_atoms` (capped at [`MAX_ATOMS`]),
    /// weights are normalized exponentials (flat on the simplex) and angles are
    /// uniform on `[0, 2π)`.
    pub fn sample(seed: u64, max_atoms: usize) -> Self {
        let mut rng = rng_from_seed(seed);
        let max_atoms = max_atoms.clamp(1, MAX_ATOMS);
        let count = rng.gen_range(1..=max_atoms);
        let raw: Vec<f64> = (0..count).map(|_| exponential(&mut rng)).collect();
        let total: f64 = raw.iter().sum();
        let atoms = raw
            .iter()
            .map(|&e| HerglotzAtom {
                weight: if count == 1 { 1.0 } else { e / total },
                angle: rng.gen::<f64>() * TAU,
            })
            .collect();
        Self { atoms }
    }

    /// Carathéodory margins over `p_1..p_order` (order must be at least 3).
    pub fn caratheodory_margins_to(&self, order: usize) -> CaratheodoryMargins {
        let order = order.max(3);
        let p = self.p_coeffs(order);
        let max_p = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
        CaratheodoryMargins {
            coefficient: 2.0 - max_p,
            second: 2.0 - (p[1] - p[0] * p[0]).norm(),
            third: 2.0 - (p[2] - p[0] * p[1]).norm(),
        }
    }

    pub fn caratheodory_margins(&self) -> CaratheodoryMargins {
        self.caratheodory_margins_to(DEFAULT_ORDER)
    }
}
