//! Finite-difference checks of the analytic Minkowski gradients.
//!
//! Only `SpaceSpec::rho` is used here; the analytic gradient under test never
//! enters the oracle.

use std::f64::consts::PI;

use zalcman_core::{SpaceSpec, C64};

/// Step of the central differences.
pub const FD_STEP: f64 = 1e-5;

/// Wirtinger gradient `(∂/∂x - i ∂/∂y)/2` of `ρ` by central differences in
/// each real coordinate of `C^n ≅ R^{2n}`.
pub fn wirtinger_fd(space: &SpaceSpec, z: &[C64], h: f64) -> Vec<C64> {
    let diff = |i: usize, dir: C64| {
        let mut plus = z.to_vec();
        let mut minus = z.to_vec();
        plus[i] += dir * h;
        minus[i] -= dir * h;
        (space.rho(&plus) - space.rho(&minus)) / (2.0 * h)
    };
    (0..z.len())
        .map(|i| {
            let dx = diff(i, C64::new(1.0, 0.0));
            let dy = diff(i, C64::new(0.0, 1.0));
            C64::new(dx, -dy) * 0.5
        })
        .collect()
}

/// Residuals of the Minkowski-functional identities at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientResiduals {
    /// `|2 ∂ρ(z) z - ρ(z)| / (1 + ρ(z))`.
    pub euler: f64,
    /// Largest entrywise change of `∂ρ` under `z ↦ λz`, `λ ∈ {1/4, 1/2, 2}`.
    pub homogeneity: f64,
    /// Largest deviation from `∂ρ(e^{iθ}z) = e^{-iθ} ∂ρ(z)`, `θ ∈ {π/5, 1}`.
    pub phase: f64,
    /// `|2 ∂ρ(z_0) z_0 - 1|` at `z_0 = z/ρ(z)`.
    pub boundary: f64,
    /// Max-entry error of finite differences relative to the largest gradient entry.
    pub finite_difference: f64,
}

pub const IDENTITY_THRESHOLD: f64 = 1e-12;
pub const FD_THRESHOLD: f64 = 1e-6;

impl GradientResiduals {
    pub fn identity_max(&self) -> f64 {
        self.euler
            .max(self.homogeneity)
            .max(self.phase)
            .max(self.boundary)
    }

    /// Largest residual divided by its threshold; at most one when every check passes.
    pub fn normalized(&self) -> f64 {
        (self.identity_max() / IDENTITY_THRESHOLD).max(self.finite_difference / FD_THRESHOLD)
    }
}

pub fn gradient_residuals(space: &SpaceSpec, z: &[C64]) -> zalcman_core::Result<GradientResiduals> {
    let rho = space.rho(z);
    let g = space.minkowski_gradient(z)?;
    let euler = (g.pair(z) * 2.0 - rho).norm() / (1.0 + rho);

    let mut homogeneity: f64 = 0.0;
    for lambda in [0.25, 0.5, 2.0] {
        let scaled: Vec<C64> = z.iter().map(|c| c * lambda).collect();
        homogeneity = homogeneity.max(space.minkowski_gradient(&scaled)?.max_abs_diff(&g));
    }

    let mut phase: f64 = 0.0;
    for theta in [PI / 5.0, 1.0] {
        let rot = C64::from_polar(1.0, theta);
        let rotated: Vec<C64> = z.iter().map(|c| c * rot).collect();
        let expected = &g * rot.conj();
        phase = phase.max(space.minkowski_gradient(&rotated)?.max_abs_diff(&expected));
    }

    let z0: Vec<C64> = z.iter().map(|c| c / rho).collect();
    let boundary = (space.minkowski_gradient(&z0)?.pair(&z0) * 2.0 - 1.0).norm();

    let fd = wirtinger_fd(space, z, FD_STEP);
    let scale = g.entries().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let err = g
        .entries()
        .iter()
        .zip(&fd)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    Ok(GradientResiduals {
        euler,
        homogeneity,
        phase,
        boundary,
        finite_difference: err / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zalcman_core::NormKind;

    #[test]
    fn fd_of_euclidean_norm() {
        let s = SpaceSpec::euclidean(2).unwrap();
        let z = [C64::new(0.3, -0.4), C64::new(0.0, 1.2)];
        let rho = s.rho(&z);
        let fd = wirtinger_fd(&s, &z, FD_STEP);
        for (g, c) in fd.iter().zip(&z) {
            assert!((g - c.conj() / (2.0 * rho)).norm() < 1e-9);
        }
    }

    #[test]
    fn residuals_are_small_off_the_exceptional_set() {
        for kind in [
            NormKind::Lp(2.0),
            NormKind::Lp(1.5),
            NormKind::Sup,
            NormKind::L1,
        ] {
            let s = SpaceSpec::new(3, kind).unwrap();
            let z = s.sample_point(4, 1e-2);
            let r = gradient_residuals(&s, &z).unwrap();
            assert!(r.normalized() <= 1.0, "{kind:?}: {r:?}");
        }
    }
}
