//! Lifted starlike mappings `F(z) = z f(z)` on `C^n` and their Zalcman-type
//! coefficient functionals.
//!
//! The test family is `f(z) = Π_k (1 - ℓ_k(z))^{-2λ_k}` with `λ_k >= 0`,
//! `Σ λ_k = 1` and every `ℓ_k` of dual norm at most one. Along a ray
//! `ζ ↦ ζ z_0` (with `ρ(z_0) = 1`) the starlikeness quantity is
//! `h(ζ) = 1 + Df(ζz_0)ζz_0 / f(ζz_0) = 1 + Σ 2λ_k x_k/(1 - x_k)`,
//! `x_k = ζ ℓ_k(z_0)`, whose real part is positive because
//! `Re x/(1-x) > -1/2` on the disk.
//!
//! Homogeneous parts are evaluated pointwise: `f(tz) = exp(Σ_m u_m(z) t^m)`
//! with `u_m(z) = 2 Σ_k λ_k ℓ_k(z)^m / m`, so `f_j(z)` is the `t^j`
//! coefficient of a one-variable series. Since `D^kF(0)(z^k)/k! = z f_{k-1}(z)`,
//! the normalized functionals collapse to `f_{k-1}(z)/ρ(z)^{k-1}`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Covector, SpaceSpec, EXCEPTIONAL_EPS};
use crate::herglotz::MAX_ATOMS;
use crate::rng::{exponential, rng_from_seed};
use crate::series::TruncatedSeries;
use crate::{C64, DEFAULT_ORDER};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;
const DUAL_NORM_TOLERANCE: f64 = 1e-12;
const UNIT_NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedAtom {
    pub lambda: f64,
    pub b: Covector,
}

/// Atoms `(λ_k, ℓ_k)` of `f(z) = Π (1 - ℓ_k(z))^{-2λ_k}`.
///
/// Deserialization does not validate; call [`LiftedMapSpec::validate`] against
/// the ambient space before trusting a decoded spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedMapSpec {
    atoms: Vec<LiftedAtom>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Normalize with the support functional `l_z` (unit ball of a normed space).
    Ball,
    /// Normalize with `2 ∂ρ/∂z` (bounded starlike circular domain).
    Domain,
}

impl LiftedMapSpec {
    /// Validated constructor.
    pub fn new(space: &SpaceSpec, atoms: Vec<LiftedAtom>) -> Result<Self> {
        let spec = Self { atoms };
        spec.validate(space)?;
        Ok(spec)
    }

    /// Skips validation; used for deliberately invalid specs in negative tests.
    pub fn from_atoms_unchecked(atoms: Vec<LiftedAtom>) -> Self {
        Self { atoms }
    }

    /// `f ≡ 1`, i.e. `F` is the identity.
    pub fn identity(dim: usize) -> Self {
        Self {
            atoms: alloc::vec![LiftedAtom {
                lambda: 1.0,
                b: Covector::zero(dim)
            }],
        }
    }

    pub fn validate(&self, space: &SpaceSpec) -> Result<()> {
        if self.atoms.is_empty() {
            return Err(Error::InvalidSpec("no atoms"));
        }
        for atom in &self.atoms {
            if atom.b.dim() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    found: atom.b.dim(),
                });
            }
            if atom.lambda.is_nan() || atom.lambda < 0.0 {
                return Err(Error::InvalidSpec("negative or non-finite weight"));
            }
            let dual = space.dual_norm(&atom.b);
            if dual.is_nan() || dual > 1.0 + DUAL_NORM_TOLERANCE {
                return Err(Error::InvalidSpec(
                    "linear functional has dual norm above one",
                ));
            }
        }
        let total: f64 = self.atoms.iter().map(|a| a.lambda).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidSpec("weights do not sum to one"));
        }
        Ok(())
    }

    pub fn atoms(&self) -> &[LiftedAtom] {
        &self.atoms
    }

    /// `ℓ_k(z)` for every atom.
    pub fn linear_values(&self, z: &[C64]) -> Vec<C64> {
        self.atoms.iter().map(|a| a.b.pair(z)).collect()
    }

    /// `f(tz)` as a series in `t` through `t^degree`; coefficient `j` is `f_j(z)`.
    pub fn hom_parts(&self, z: &[C64], degree: usize) -> TruncatedSeries {
        let values = self.linear_values(z);
        let log = TruncatedSeries::from_fn(degree, |m| {
            if m == 0 {
                return C64::new(0.0, 0.0);
            }
            let power_sum: C64 = self
                .atoms
                .iter()
                .zip(&values)
                .map(|(a, x)| x.powu(m as u32) * a.lambda)
                .sum();
            power_sum * (2.0 / m as f64)
        });
        log.exp().expect("log series has zero constant term")
    }

    /// The degree-`j` homogeneous part `f_j(z)`; `f_0 = 1`.
    pub fn hom_part_eval(&self, j: usize, z: &[C64]) -> C64 {
        self.hom_parts(z, j).coeff(j)
    }

    /// `h(ζ) = 1 + Df(ζz_0)ζz_0 / f(ζz_0)` in closed form (no truncation).
    pub fn h_value(&self, z0: &[C64], zeta: C64) -> C64 {
        let one = C64::new(1.0, 0.0);
        self.atoms
            .iter()
            .map(|a| {
                let x = zeta * a.b.pair(z0);
                x / (one - x) * (2.0 * a.lambda)
            })
            .sum::<C64>()
            + one
    }

    /// Deterministic pseudo-random valid spec for `space`.
    ///
    /// Atom count is uniform on `1..=max_atoms`, weights are flat on the simplex
    /// and each functional is a Gaussian direction rescaled to dual norm one
    /// (with probability one half) or to a uniform dual norm in `[0, 1)`.
    pub fn sample(space: &SpaceSpec, seed: u64, max_atoms: usize) -> Self {
        let mut rng = rng_from_seed(seed);
        let count = rng.gen_range(1..=max_atoms.clamp(1, MAX_ATOMS));
        let raw: Vec<f64> = (0..count).map(|_| exponential(&mut rng)).collect();
        let total: f64 = raw.iter().sum();
        let atoms = raw
            .iter()
            .map(|&e| {
                let direction = space.sample_direction(rng.gen(), 0.0);
                let b = Covector::new(direction.iter().map(|c| c.conj()).collect());
                let scale = if rng.gen::<bool>() {
                    1.0
                } else {
                    rng.gen::<f64>()
                };
                let dual = space.dual_norm(&b);
                LiftedAtom {
                    lambda: if count == 1 { 1.0 } else { e / total },
                    b: &b * C64::new(scale / dual, 0.0),
                }
            })
            .collect();
        Self { atoms }
    }
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=4).contains(&k) {
        return Err(Error::TruncationTooHigh {
            requested: k,
            max: 4,
        });
    }
    Ok(())
}

fn check_point(space: &SpaceSpec, z: &[C64]) -> Result<f64> {
    if z.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: z.len(),
        });
    }
    let rho = space.rho(z);
    if rho == 0.0 {
        return Err(Error::ZeroVector);
    }
    let distance = space.exceptional_distance(z);
    if distance < EXCEPTIONAL_EPS {
        return Err(Error::ExceptionalPoint { distance });
    }
    Ok(rho)
}

/// `D^kF(0)(z^k)/k! = z f_{k-1}(z)`.
fn taylor_term(spec: &LiftedMapSpec, z: &[C64], k: usize) -> Vec<C64> {
    let f = spec.hom_part_eval(k - 1, z);
    z.iter().map(|c| c * f).collect()
}

/// `l_z(D^kF(0)(z^k)) / (k! ‖z‖^k)` in closed form: `f_{k-1}(z) / ‖z‖^{k-1}`.
pub fn functional_a(space: &SpaceSpec, spec: &LiftedMapSpec, z: &[C64], k: usize) -> Result<C64> {
    check_k(k)?;
    let rho = check_point(space, z)?;
    Ok(spec.hom_part_eval(k - 1, z) / rho.powi(k as i32 - 1))
}

/// [`functional_a`] computed literally, pairing the Taylor term with `l_z`.
pub fn functional_a_via_support(
    space: &SpaceSpec,
    spec: &LiftedMapSpec,
    z: &[C64],
    k: usize,
) -> Result<C64> {
    check_k(k)?;
    let rho = check_point(space, z)?;
    let term = taylor_term(spec, z, k);
    Ok(space.support_pairing(z, &term)? / rho.powi(k as i32))
}

/// `2 ∂ρ/∂z · D^kF(0)(z^k) / (k! ρ(z)^k)` in closed form: `f_{k-1}(z) / ρ(z)^{k-1}`.
pub fn functional_b(space: &SpaceSpec, spec: &LiftedMapSpec, z: &[C64], k: usize) -> Result<C64> {
    functional_a(space, spec, z, k)
}

/// [`functional_b`] computed literally through the Wirtinger gradient of `ρ`.
pub fn functional_b_via_gradient(
    space: &SpaceSpec,
    spec: &LiftedMapSpec,
    z: &[C64],
    k: usize,
) -> Result<C64> {
    check_k(k)?;
    let rho = check_point(space, z)?;
    let term = taylor_term(spec, z, k);
    let gradient = space.minkowski_gradient(z)?;
    Ok(gradient.pair(&term) * 2.0 / rho.powi(k as i32))
}

/// `h(ζ)` along the ray through `z0` as a truncated series.
///
/// `z0` must lie on the unit sphere of `space`.
pub fn restrict_h(
    space: &SpaceSpec,
    spec: &LiftedMapSpec,
    z0: &[C64],
    order: usize,
) -> Result<TruncatedSeries> {
    let norm = space.rho(z0);
    if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
        return Err(Error::InvalidDirection { norm });
    }
    let f = spec.hom_parts(z0, order);
    // Euler: Df(ζz0)ζz0 = Σ j f_j(z0) ζ^j, so the numerator is Σ (j+1) f_j ζ^j
    let numerator = TruncatedSeries::from_fn(order, |j| f.coeff(j) * (j + 1) as f64);
    numerator.div(&f)
}

/// Sampling grid for [`starlikeness_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub directions: usize,
    pub radii: usize,
    pub angles: usize,
    pub min_radius: f64,
    pub max_radius: f64,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            directions: 24,
            radii: 16,
            angles: 64,
            min_radius: 0.05,
            max_radius: 0.99,
            seed: 0,
        }
    }
}

impl GridSpec {
    fn radius(&self, i: usize) -> f64 {
        if self.radii == 1 {
            return self.max_radius;
        }
        let t = i as f64 / (self.radii - 1) as f64;
        self.min_radius * (self.max_radius / self.min_radius).powf(t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanWitness {
    pub direction: Vec<C64>,
    pub zeta: C64,
    pub h: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub min_re_h: f64,
    pub evaluated: usize,
    /// First sample (in grid order) with `Re h <= 0`.
    pub violation: Option<ScanWitness>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Unit directions used by the scan: coordinate axes first, then seeded samples,
/// all at least `EXCEPTIONAL_EPS` away from `E`.
pub fn scan_directions(space: &SpaceSpec, grid: &GridSpec) -> Vec<Vec<C64>> {
    let mut dirs = Vec::with_capacity(grid.directions);
    for i in 0..space.dim().min(grid.directions) {
        let mut e = alloc::vec![C64::new(0.0, 0.0); space.dim()];
        e[i] = C64::new(1.0, 0.0);
        if space.exceptional_distance(&e) >= EXCEPTIONAL_EPS {
            dirs.push(e);
        }
    }
    let mut k = 0u64;
    while dirs.len() < grid.directions {
        dirs.push(space.sample_direction(crate::rng::sub_seed(grid.seed, k), 0.0));
        k += 1;
    }
    dirs
}

/// Samples `Re h(ζ)` over directions × radii × angles.
///
/// Passing is a necessary condition for starlikeness, not a proof.
pub fn starlikeness_scan(space: &SpaceSpec, spec: &LiftedMapSpec, grid: &GridSpec) -> ScanReport {
    let mut report = ScanReport {
        min_re_h: f64::INFINITY,
        evaluated: 0,
        violation: None,
    };
    for z0 in scan_directions(space, grid) {
        for i in 0..grid.radii {
            let r = grid.radius(i);
            for a in 0..grid.angles {
                let zeta = C64::from_polar(r, TAU * a as f64 / grid.angles as f64);
                let h = spec.h_value(&z0, zeta);
                report.evaluated += 1;
                if h.re < report.min_re_h || h.re.is_nan() {
                    report.min_re_h = h.re;
                }
                if report.violation.is_none() && (h.re.is_nan() || h.re <= 0.0) {
                    report.violation = Some(ScanWitness {
                        direction: z0.clone(),
                        zeta,
                        h,
                    });
                }
            }
        }
    }
    report
}

/// The three normalized functionals at a point and `|X_2 X_3 - X_4|`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalValues {
    pub mode: Mode,
    /// `[X_2, X_3, X_4]` (A-functionals in ball mode, B-functionals in domain mode).
    pub values: [C64; 3],
    pub zalcman: f64,
    pub space: SpaceSpec,
    pub point: Vec<C64>,
}

impl FunctionalValues {
    /// `X_k` for `k` in `2..=4`.
    pub fn get(&self, k: usize) -> C64 {
        self.values[k - 2]
    }
}

/// Assembles the functionals through their defining pairings (support
/// functional in ball mode, Minkowski gradient in domain mode).
pub fn zalcman_nd(
    space: &SpaceSpec,
    spec: &LiftedMapSpec,
    z: &[C64],
    mode: Mode,
) -> Result<FunctionalValues> {
    let mut values = [C64::new(0.0, 0.0); 3];
    for k in 2..=4 {
        values[k - 2] = match mode {
            Mode::Ball => functional_a_via_support(space, spec, z, k)?,
            Mode::Domain => functional_b_via_gradient(space, spec, z, k)?,
        };
    }
    let zalcman = (values[0] * values[1] - values[2]).norm();
    Ok(FunctionalValues {
        mode,
        values,
        zalcman,
        space: *space,
        point: z.to_vec(),
    })
}

/// Outcome of [`reduction_crosscheck`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionCheck {
    pub zalcman: f64,
    /// `(1/3)|c_1³ - c_3|` from the coefficients of `h` at `z/ρ(z)`.
    pub reduced: f64,
    /// Largest of `|A_2 - c_1|`, `|A_3 - (c_2 + c_1²)/2|`, `|A_4 - (c_3 + c_1³/2 + 3c_1c_2/2)/3|`.
    pub coefficient_residual: f64,
}

impl ReductionCheck {
    pub fn residual(&self) -> f64 {
        (self.zalcman - self.reduced).abs()
    }

    pub fn max_residual(&self) -> f64 {
        self.residual().max(self.coefficient_residual)
    }
}

/// Compares the functional with its expression through the Taylor
/// coefficients `c_k` of `h` (so `h'(0) = c_1`, `h''(0) = 2c_2`, `h'''(0) = 6c_3`).
pub fn reduction_crosscheck(
    space: &SpaceSpec,
    spec: &LiftedMapSpec,
    z: &[C64],
) -> Result<ReductionCheck> {
    let values = zalcman_nd(space, spec, z, Mode::Ball)?;
    let rho = space.rho(z);
    let z0: Vec<C64> = z.iter().map(|c| c / rho).collect();
    let h = restrict_h(space, spec, &z0, DEFAULT_ORDER)?;
    let (c1, c2, c3) = (h.coeff(1), h.coeff(2), h.coeff(3));
    let a2 = c1;
    let a3 = (c2 + c1 * c1) / 2.0;
    let a4 = (c3 + c1 * c1 * c1 / 2.0 + c1 * c2 * 1.5) / 3.0;
    let coefficient_residual = (values.get(2) - a2)
        .norm()
        .max((values.get(3) - a3).norm())
        .max((values.get(4) - a4).norm());
    Ok(ReductionCheck {
        zalcman: values.zalcman,
        reduced: (c1 * c1 * c1 - c3).norm() / 3.0,
        coefficient_residual,
    })
}

/// The two sharpness mappings.
#[derive(Debug, Clone, PartialEq)]
pub enum Extremal {
    /// `z / (1 - l_u(z))²` with `ρ(u) = 1`.
    Ball(Vec<C64>),
    /// `z / (1 - z_1/r)²`, where `r` is the extent of the domain along the first axis.
    Domain(f64),
}

pub fn make_extremal(space: &SpaceSpec, kind: &Extremal) -> Result<LiftedMapSpec> {
    let b = match kind {
        Extremal::Ball(u) => {
            let norm = space.rho(u);
            if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                return Err(Error::InvalidDirection { norm });
            }
            space.support_functional(u)?
        }
        Extremal::Domain(r) => {
            if r.is_nan() || *r <= 0.0 {
                return Err(Error::InvalidSpec("domain extent must be positive"));
            }
            Covector::coordinate(space.dim(), 0, 1.0 / r)
        }
    };
    LiftedMapSpec::new(space, alloc::vec![LiftedAtom { lambda: 1.0, b }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::NormKind;
    use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn near(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn coordinate_atom(dim: usize) -> LiftedMapSpec {
        LiftedMapSpec::from_atoms_unchecked(alloc::vec![LiftedAtom {
            lambda: 1.0,
            b: Covector::coordinate(dim, 0, 1.0)
        }])
    }

    #[test]
    fn hom_part_examples() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let spec = LiftedMapSpec::sample(&e, 3, 8);
        assert_eq!(
            spec.hom_part_eval(0, &[c(0.3, 0.1), c(-0.2, 0.4)]),
            c(1.0, 0.0)
        );

        let koebe = coordinate_atom(2);
        let x = c(0.4, -0.3);
        for j in 0..=6 {
            let expected = x.powu(j as u32) * (j + 1) as f64;
            assert!(near(
                koebe.hom_part_eval(j, &[x, c(0.9, 0.0)]),
                expected,
                1e-14
            ));
        }

        let split = LiftedMapSpec::new(
            &e,
            alloc::vec![
                LiftedAtom {
                    lambda: 0.5,
                    b: Covector::coordinate(2, 0, 1.0)
                },
                LiftedAtom {
                    lambda: 0.5,
                    b: Covector::coordinate(2, 1, 1.0)
                },
            ],
        )
        .unwrap();
        let (x, y) = (c(0.2, 0.1), c(-0.5, 0.3));
        assert!(near(split.hom_part_eval(1, &[x, y]), x + y, 1e-15));
    }

    #[test]
    fn functional_a_examples() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let u = [c(0.6, 0.0), c(0.0, 0.8)];
        let ext = make_extremal(&e, &Extremal::Ball(u.to_vec())).unwrap();
        let z: Vec<C64> = u.iter().map(|x| x * 0.37).collect();
        for k in 2..=4 {
            assert!(near(
                functional_a(&e, &ext, &z, k).unwrap(),
                c(k as f64, 0.0),
                1e-12
            ));
        }

        // kernel of every ℓ_k
        let z = [c(0.0, 0.0), c(0.5, 0.2)];
        let koebe = coordinate_atom(2);
        for k in 2..=4 {
            assert_eq!(functional_a(&e, &koebe, &z, k).unwrap(), c(0.0, 0.0));
        }

        let r = 0.6;
        let z = [c(r * FRAC_1_SQRT_2, 0.0), c(r * FRAC_1_SQRT_2, 0.0)];
        let expected = [SQRT_2, 1.5, SQRT_2];
        for k in 2..=4 {
            let closed = functional_a(&e, &koebe, &z, k).unwrap();
            let literal = functional_a_via_support(&e, &koebe, &z, k).unwrap();
            assert!(
                near(closed, c(expected[k - 2], 0.0), 1e-12),
                "A{k} = {closed}"
            );
            assert!(near(literal, closed, 1e-12));
        }
        let v = zalcman_nd(&e, &koebe, &z, Mode::Ball).unwrap();
        assert!((v.zalcman - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn functional_b_examples() {
        let sup = SpaceSpec::new(2, NormKind::Sup).unwrap();
        let ext = make_extremal(&sup, &Extremal::Domain(1.0)).unwrap();
        let u = [c(1.0, 0.0), c(0.5, 0.0)];
        for big_r in [0.1, 0.5, 0.93] {
            let z: Vec<C64> = u.iter().map(|x| x * big_r).collect();
            let v = zalcman_nd(&sup, &ext, &z, Mode::Domain).unwrap();
            for k in 2..=4 {
                assert!(near(v.get(k), c(k as f64, 0.0), 1e-12));
            }
            assert!((v.zalcman - 2.0).abs() <= 1e-12);
        }
        let z = [c(0.0, 0.0), c(0.5, 0.0)];
        for k in 2..=4 {
            assert_eq!(functional_b(&sup, &ext, &z, k).unwrap(), c(0.0, 0.0));
            assert!(functional_b_via_gradient(&sup, &ext, &z, k).unwrap().norm() <= 1e-15);
        }
    }

    #[test]
    fn dual_paths_agree_on_random_samples() {
        for kind in [
            NormKind::Lp(2.0),
            NormKind::Lp(3.0),
            NormKind::Lp(1.5),
            NormKind::Sup,
            NormKind::L1,
        ] {
            for dim in [1, 2, 3, 5] {
                let s = SpaceSpec::new(dim, kind).unwrap();
                for seed in 0..40 {
                    let spec = LiftedMapSpec::sample(&s, seed, MAX_ATOMS);
                    spec.validate(&s).unwrap();
                    let z = s.sample_point(seed ^ 0xabcdef, 1e-6);
                    for k in 2..=4 {
                        let closed = functional_a(&s, &spec, &z, k).unwrap();
                        assert!(near(
                            functional_a_via_support(&s, &spec, &z, k).unwrap(),
                            closed,
                            1e-12
                        ));
                        assert!(near(
                            functional_b_via_gradient(&s, &spec, &z, k).unwrap(),
                            closed,
                            1e-12
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_h_examples() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let h = restrict_h(
            &e,
            &LiftedMapSpec::identity(2),
            &[c(1.0, 0.0), c(0.0, 0.0)],
            7,
        )
        .unwrap();
        assert_eq!(h, TruncatedSeries::one(7));

        let z0 = [c(0.6, 0.0), c(0.0, -0.8)];
        let h = restrict_h(&e, &coordinate_atom(2), &z0, 7).unwrap();
        let x = c(0.6, 0.0);
        // (1 + xζ)/(1 - xζ) by series division
        let oracle = TruncatedSeries::new(alloc::vec![
            c(1.0, 0.0),
            x,
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0)
        ])
        .div(&TruncatedSeries::new(alloc::vec![
            c(1.0, 0.0),
            -x,
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0)
        ]))
        .unwrap();
        assert!(h.max_abs_diff(&oracle) <= 1e-14);
        for k in 1..=7 {
            assert!(near(h.coeff(k), x.powu(k as u32) * 2.0, 1e-14));
        }

        assert!(matches!(
            restrict_h(&e, &coordinate_atom(2), &[c(0.5, 0.0), c(0.0, 0.0)], 7),
            Err(Error::InvalidDirection { .. })
        ));
    }

    #[test]
    fn restricted_h_is_caratheodory() {
        let s = SpaceSpec::new(3, NormKind::Lp(3.0)).unwrap();
        for seed in 0..20 {
            let spec = LiftedMapSpec::sample(&s, seed, MAX_ATOMS);
            let z0 = s.sample_direction(seed + 100, 0.0);
            let h = restrict_h(&s, &spec, &z0, 7).unwrap();
            for i in 0..=10 {
                for a in 0..32 {
                    let zeta = C64::from_polar(0.99 * i as f64 / 10.0, TAU * a as f64 / 32.0);
                    assert!(spec.h_value(&z0, zeta).re > 0.0);
                    if i <= 3 {
                        // inside |ζ| <= 0.297 the degree-7 truncation is faithful
                        assert!((h.eval(zeta) - spec.h_value(&z0, zeta)).norm() < 1e-3);
                    }
                }
            }
        }
    }

    #[test]
    fn scan_examples() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let ext =
            make_extremal(&e, &Extremal::Ball(alloc::vec![c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        let report = starlikeness_scan(&e, &ext, &GridSpec::default());
        assert!(report.passed() && report.min_re_h > 0.0);
        assert_eq!(report.evaluated, 24 * 16 * 64);

        let doubled = LiftedMapSpec::from_atoms_unchecked(alloc::vec![LiftedAtom {
            lambda: 2.0,
            b: Covector::coordinate(2, 0, 1.0)
        }]);
        assert!(doubled.validate(&e).is_err());
        let h = doubled.h_value(&[c(1.0, 0.0), c(0.0, 0.0)], c(-0.9, 0.0));
        assert!(near(h, c(1.0 - 3.6 / 1.9, 0.0), 1e-14));
        let report = starlikeness_scan(&e, &doubled, &GridSpec::default());
        let w = report.violation.expect("invalid spec must be flagged");
        assert!(w.h.re <= 0.0);
        assert!(near(doubled.h_value(&w.direction, w.zeta), w.h, 0.0));

        let report = starlikeness_scan(&e, &LiftedMapSpec::identity(2), &GridSpec::default());
        assert_eq!(report.min_re_h, 1.0);
    }

    #[test]
    fn extremal_construction() {
        let e = SpaceSpec::euclidean(2).unwrap();
        let ext =
            make_extremal(&e, &Extremal::Ball(alloc::vec![c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert_eq!(ext.atoms().len(), 1);
        assert_eq!(ext.atoms()[0].lambda, 1.0);
        assert_eq!(ext.atoms()[0].b, Covector::coordinate(2, 0, 1.0));

        let sup = SpaceSpec::new(3, NormKind::Sup).unwrap();
        let ext = make_extremal(&sup, &Extremal::Domain(1.0)).unwrap();
        assert_eq!(ext.atoms()[0].b, Covector::coordinate(3, 0, 1.0));

        assert!(matches!(
            make_extremal(&e, &Extremal::Ball(alloc::vec![c(0.5, 0.0), c(0.0, 0.0)])),
            Err(Error::InvalidDirection { .. })
        ));
        assert!(make_extremal(&sup, &Extremal::Domain(0.5)).is_err());
    }

    #[test]
    fn reduction_examples() {
        let e = SpaceSpec::euclidean(3).unwrap();
        let u = e.sample_direction(9, 0.0);
        let ext = make_extremal(&e, &Extremal::Ball(u.clone())).unwrap();
        let z: Vec<C64> = u.iter().map(|x| x * 0.4).collect();
        let check = reduction_crosscheck(&e, &ext, &z).unwrap();
        assert!((check.zalcman - 2.0).abs() <= 1e-12);
        assert!(check.max_residual() <= 1e-12);

        let check = reduction_crosscheck(&e, &LiftedMapSpec::identity(3), &z).unwrap();
        assert_eq!((check.zalcman, check.reduced), (0.0, 0.0));
    }

    #[test]
    fn zalcman_is_scale_and_phase_invariant() {
        let s = SpaceSpec::new(3, NormKind::Lp(3.0)).unwrap();
        for seed in 0..50 {
            let spec = LiftedMapSpec::sample(&s, seed, MAX_ATOMS);
            let z = s.sample_point(seed + 7, 1e-6);
            let base = zalcman_nd(&s, &spec, &z, Mode::Ball).unwrap();
            for t in [0.1, 0.5, 0.9] {
                let zt: Vec<C64> = z.iter().map(|x| x * t).collect();
                assert!(
                    (zalcman_nd(&s, &spec, &zt, Mode::Ball).unwrap().zalcman - base.zalcman).abs()
                        <= 1e-12
                );
            }
            let phase = C64::from_polar(1.0, 0.7);
            let zt: Vec<C64> = z.iter().map(|x| x * phase).collect();
            let rotated = zalcman_nd(&s, &spec, &zt, Mode::Domain).unwrap();
            assert!((rotated.zalcman - base.zalcman).abs() <= 1e-11);
            for k in 2..=4 {
                let expected = base.get(k) * C64::from_polar(1.0, 0.7 * (k - 1) as f64);
                assert!(near(rotated.get(k), expected, 1e-11));
            }
        }
    }

    #[test]
    fn spec_json_schema() {
        let spec = LiftedMapSpec::from_atoms_unchecked(alloc::vec![LiftedAtom {
            lambda: 1.0,
            b: Covector::new(alloc::vec![c(0.5, -0.25), c(0.0, 1.0)])
        }]);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"atoms":[{"lambda":1.0,"b":[[0.5,-0.25],[0.0,1.0]]}]}"#
        );
        assert_eq!(serde_json::from_str::<LiftedMapSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn exceptional_points_propagate() {
        let sup = SpaceSpec::new(2, NormKind::Sup).unwrap();
        let spec = LiftedMapSpec::sample(&sup, 1, 4);
        let tie = [c(0.5, 0.0), c(0.0, 0.5)];
        assert!(matches!(
            zalcman_nd(&sup, &spec, &tie, Mode::Domain),
            Err(Error::ExceptionalPoint { .. })
        ));
        assert!(matches!(
            functional_a(&sup, &spec, &tie, 3),
            Err(Error::ExceptionalPoint { .. })
        ));
    }
}
