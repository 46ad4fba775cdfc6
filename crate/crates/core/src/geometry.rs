//! Norms on `C^n` viewed as Minkowski functionals of their unit balls.
//!
//! Three families are supported: `ℓ^p` for `1 < p < ∞`, the sup norm (unit
//! polydisk) and `ℓ^1`. For each one we provide the gauge `ρ`, the canonical
//! norming functional `l_z` (with `l_z(z) = ρ(z)` and dual norm one), the
//! Wirtinger gradient `∂ρ/∂z = l_z / 2`, and a distance proxy to the
//! exceptional set `E` where `ρ` fails to be `C¹`.

use alloc::vec::Vec;
use core::ops::Mul;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{normal, rng_from_seed};
use crate::C64;

/// Points with [`SpaceSpec::exceptional_distance`] below this are rejected.
pub const EXCEPTIONAL_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind {
    /// `(Σ |z_i|^p)^{1/p}` with `1 < p < ∞`.
    Lp(f64),
    /// `max |z_i|`; the unit ball is the polydisk.
    Sup,
    /// `Σ |z_i|`.
    L1,
}

impl NormKind {
    pub const EUCLIDEAN: NormKind = NormKind::Lp(2.0);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct SpaceSpec {
    dim: usize,
    kind: NormKind,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    dim: usize,
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindTag {
    Lp,
    Sup,
    L1,
}

impl TryFrom<SpaceRepr> for SpaceSpec {
    type Error = Error;

    fn try_from(r: SpaceRepr) -> Result<Self> {
        let kind = match (r.kind, r.p) {
            (KindTag::Lp, Some(p)) => NormKind::Lp(p),
            (KindTag::Lp, None) => return Err(Error::InvalidSpace("lp norm needs an exponent")),
            (KindTag::Sup, _) => NormKind::Sup,
            (KindTag::L1, _) => NormKind::L1,
        };
        SpaceSpec::new(r.dim, kind)
    }
}

impl From<SpaceSpec> for SpaceRepr {
    fn from(s: SpaceSpec) -> Self {
        let (kind, p) = match s.kind {
            NormKind::Lp(p) => (KindTag::Lp, Some(p)),
            NormKind::Sup => (KindTag::Sup, None),
            NormKind::L1 => (KindTag::L1, None),
        };
        SpaceRepr {
            dim: s.dim,
            kind,
            p,
        }
    }
}

/// A linear functional `w ↦ Σ_i b_i w_i` on `C^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Covector(Vec<C64>);

impl From<Vec<[f64; 2]>> for Covector {
    fn from(v: Vec<[f64; 2]>) -> Self {
        Covector(v.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

impl From<Covector> for Vec<[f64; 2]> {
    fn from(c: Covector) -> Self {
        c.0.into_iter().map(|z| [z.re, z.im]).collect()
    }
}

impl Covector {
    pub fn new(entries: Vec<C64>) -> Self {
        Covector(entries)
    }

    pub fn zero(dim: usize) -> Self {
        Covector(alloc::vec![C64::new(0.0, 0.0); dim])
    }

    /// The coordinate functional `w ↦ scale · w_index`.
    pub fn coordinate(dim: usize, index: usize, scale: f64) -> Self {
        let mut c = Self::zero(dim);
        c.0[index] = C64::new(scale, 0.0);
        c
    }

    pub fn entries(&self) -> &[C64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn pair(&self, w: &[C64]) -> C64 {
        self.0.iter().zip(w).map(|(b, x)| b * x).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul<C64> for &Covector {
    type Output = Covector;

    fn mul(self, s: C64) -> Covector {
        Covector(self.0.iter().map(|b| b * s).collect())
    }
}

impl SpaceSpec {
    pub fn new(dim: usize, kind: NormKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be at least 1"));
        }
        if let NormKind::Lp(p) = kind {
            if !(p > 1.0 && p.is_finite()) {
                return Err(Error::InvalidSpace("lp exponent must satisfy 1 < p < inf"));
            }
        }
        Ok(Self { dim, kind })
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(dim, NormKind::EUCLIDEAN)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: len,
            });
        }
        Ok(())
    }

    /// The gauge `ρ(z)`; this is simply the norm.
    pub fn rho(&self, z: &[C64]) -> f64 {
        let moduli = z.iter().map(|c| c.norm());
        match self.kind {
            NormKind::Lp(p) => {
                let top = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
                if top == 0.0 {
                    return 0.0;
                }
                // scaling by the largest modulus keeps |z_i|^p in range
                top * moduli.map(|m| (m / top).powf(p)).sum::<f64>().powf(1.0 / p)
            }
            NormKind::Sup => moduli.fold(0.0, f64::max),
            NormKind::L1 => moduli.sum(),
        }
    }

    /// Norm of a linear functional in the dual space.
    pub fn dual_norm(&self, b: &Covector) -> f64 {
        let moduli = b.entries().iter().map(|c| c.norm());
        match self.kind {
            NormKind::Lp(p) => {
                let q = p / (p - 1.0);
                let top = b.entries().iter().map(|c| c.norm()).fold(0.0, f64::max);
                if top == 0.0 {
                    return 0.0;
                }
                top * moduli.map(|m| (m / top).powf(q)).sum::<f64>().powf(1.0 / q)
            }
            NormKind::Sup => moduli.sum(),
            NormKind::L1 => moduli.fold(0.0, f64::max),
        }
    }

    /// Nonnegative proxy for the distance from `z` to the exceptional set.
    ///
    /// Sup norm: gap between the two largest moduli. `ℓ^1` and `ℓ^p` with
    /// `p < 2`: smallest modulus. `ℓ^p` with `p >= 2`: `+∞`.
    pub fn exceptional_distance(&self, z: &[C64]) -> f64 {
        let min_modulus = || z.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min);
        match self.kind {
            NormKind::Lp(p) if p >= 2.0 => f64::INFINITY,
            NormKind::Lp(_) | NormKind::L1 => min_modulus(),
            NormKind::Sup => {
                if z.len() < 2 {
                    return f64::INFINITY;
                }
                let (mut first, mut second) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
                for m in z.iter().map(|c| c.norm()) {
                    if m > first {
                        second = first;
                        first = m;
                    } else if m > second {
                        second = m;
                    }
                }
                first - second
            }
        }
    }

    fn check_regular(&self, z: &[C64]) -> Result<()> {
        self.check_dim(z.len())?;
        if z.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::ZeroVector);
        }
        let distance = self.exceptional_distance(z);
        if distance < EXCEPTIONAL_EPS {
            return Err(Error::ExceptionalPoint { distance });
        }
        Ok(())
    }

    /// The canonical norming functional `l_z ∈ T_z`.
    pub fn support_functional(&self, z: &[C64]) -> Result<Covector> {
        self.check_regular(z)?;
        let unit_phase = |c: &C64| {
            let m = c.norm();
            if m == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                c.conj() / m
            }
        };
        let entries = match self.kind {
            NormKind::Lp(p) => {
                let rho = self.rho(z);
                // ρ^{1-p} |z_i|^{p-2} z̄_i, written as (|z_i|/ρ)^{p-1} · z̄_i/|z_i|
                z.iter()
                    .map(|c| unit_phase(c) * (c.norm() / rho).powf(p - 1.0))
                    .collect()
            }
            NormKind::Sup => {
                let mut j = 0;
                for (i, c) in z.iter().enumerate() {
                    if c.norm() > z[j].norm() {
                        j = i;
                    }
                }
                let mut e = alloc::vec![C64::new(0.0, 0.0); z.len()];
                e[j] = unit_phase(&z[j]);
                e
            }
            NormKind::L1 => z.iter().map(unit_phase).collect(),
        };
        Ok(Covector(entries))
    }

    /// `l_z(w)`.
    pub fn support_pairing(&self, z: &[C64], w: &[C64]) -> Result<C64> {
        self.check_dim(w.len())?;
        Ok(self.support_functional(z)?.pair(w))
    }

    /// Wirtinger gradient `∂ρ/∂z` (half the norming functional).
    pub fn minkowski_gradient(&self, z: &[C64]) -> Result<Covector> {
        Ok(&self.support_functional(z)? * C64::new(0.5, 0.0))
    }

    /// Unit-norm direction keyed by `seed`, at least `min_distance` from `E`.
    pub fn sample_direction(&self, seed: u64, min_distance: f64) -> Vec<C64> {
        let mut rng = rng_from_seed(seed);
        loop {
            let v: Vec<C64> = (0..self.dim)
                .map(|_| C64::new(normal(&mut rng), normal(&mut rng)))
                .collect();
            let r = self.rho(&v);
            if r == 0.0 {
                continue;
            }
            let u: Vec<C64> = v.iter().map(|c| c / r).collect();
            if self.exceptional_distance(&u) >= min_distance.max(EXCEPTIONAL_EPS) {
                return u;
            }
        }
    }

    /// Point of the open unit ball keyed by `seed`: a sampled direction scaled by
    /// a radius uniform on `[0.05, 0.95)`, at least `min_distance` from `E`.
    pub fn sample_point(&self, seed: u64, min_distance: f64) -> Vec<C64> {
        let mut rng = rng_from_seed(seed);
        loop {
            let u = self.sample_direction(rng.gen(), 0.0);
            let r = 0.05 + 0.9 * rng.gen::<f64>();
            let z: Vec<C64> = u.iter().map(|c| c * r).collect();
            if self.exceptional_distance(&z) >= min_distance.max(EXCEPTIONAL_EPS) {
                return z;
            }
        }
    }
}
