//! Seeded verification campaigns.
//!
//! Sample `i` of a campaign with seed `s` is driven entirely by
//! `sub_seed(s, i)`, so the report is a pure function of the configuration
//! (apart from `runtime_ms`) regardless of how rayon schedules the work.

use std::time::Instant;

use rayon::prelude::*;
use zalcman_core::geometry::NormKind;
use zalcman_core::herglotz::MAX_ATOMS;
use zalcman_core::mappings::{
    make_extremal, reduction_crosscheck, starlikeness_scan, zalcman_nd, Extremal, GridSpec,
};
use zalcman_core::rng::sub_seed;
use zalcman_core::starlike::{coeffs_from_p, search_extremal, zalcman_j};
use zalcman_core::{HerglotzMeasure, LiftedMapSpec, Mode, SpaceSpec, C64, DEFAULT_ORDER};

use crate::config::{CampaignConfig, CampaignKind};
use crate::error::Result;
use crate::oracle::gradient_residuals;
use crate::report::{encode_point, CampaignReport, SampleRow, Violation, Witness};

/// Distance from the exceptional set required of gradient test points, so that
/// central differences with step 1e-5 never straddle a kink.
const FD_CLEARANCE: f64 = 1e-2;
/// Distance from the exceptional set required of functional test points.
const POINT_CLEARANCE: f64 = 1e-6;
/// Distance from the exceptional set required of extremal directions.
const DIRECTION_CLEARANCE: f64 = 1e-3;

struct Outcome {
    value: f64,
    margin: f64,
    witness: Option<Witness>,
}

fn is_violation(margin: f64, tolerance: f64) -> bool {
    margin.is_nan() || margin < -tolerance
}

fn run_samples<F>(samples: usize, eval: F) -> Result<Vec<Outcome>>
where
    F: Fn(usize) -> Result<Outcome> + Sync + Send,
{
    (0..samples).into_par_iter().map(eval).collect()
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let start = Instant::now();
    let tol = cfg.tolerance;
    let seed_of = |i: usize| sub_seed(cfg.seed, i as u64);
    let mut extremizer = None;

    let (bound, outcomes) = match cfg.campaign {
        CampaignKind::Caratheodory => {
            let outcomes = run_samples(cfg.samples, |i| {
                let mu = HerglotzMeasure::sample(seed_of(i), MAX_ATOMS);
                let margins = mu.caratheodory_margins();
                let margin = margins.min();
                Ok(Outcome {
                    value: 2.0 - margin,
                    margin,
                    witness: is_violation(margin, tol).then_some(Witness::Measure { measure: mu }),
                })
            })?;
            (2.0, outcomes)
        }
        CampaignKind::Zalcman1d => {
            let ord = cfg.zalcman_order()?;
            let bound = ord.bound();
            let outcomes = run_samples(cfg.samples, |i| {
                let mu = HerglotzMeasure::sample(seed_of(i), MAX_ATOMS);
                let a = coeffs_from_p(&mu, DEFAULT_ORDER)?;
                let value = zalcman_j(&a, ord)?.norm();
                let margin = bound - value;
                Ok(Outcome {
                    value,
                    margin,
                    witness: is_violation(margin, tol).then_some(Witness::Measure { measure: mu }),
                })
            })?;
            (bound, outcomes)
        }
        CampaignKind::ZalcmanBall | CampaignKind::ZalcmanDomain => {
            let space = cfg.space()?;
            let mode = if cfg.campaign == CampaignKind::ZalcmanBall {
                Mode::Ball
            } else {
                Mode::Domain
            };
            let outcomes = run_samples(cfg.samples, |i| {
                let s = seed_of(i);
                let spec = LiftedMapSpec::sample(&space, sub_seed(s, 0), MAX_ATOMS);
                let z = space.sample_point(sub_seed(s, 1), POINT_CLEARANCE);
                let value = zalcman_nd(&space, &spec, &z, mode)?.zalcman;
                let margin = 2.0 - value;
                Ok(Outcome {
                    value,
                    margin,
                    witness: is_violation(margin, tol).then(|| Witness::Lifted {
                        space,
                        spec,
                        point: encode_point(&z),
                    }),
                })
            })?;
            (2.0, outcomes)
        }
        CampaignKind::Gradients => {
            let space = cfg.space()?;
            let outcomes = run_samples(cfg.samples, |i| {
                let z = space.sample_point(seed_of(i), FD_CLEARANCE);
                let value = gradient_residuals(&space, &z)?.normalized();
                let margin = 1.0 - value;
                Ok(Outcome {
                    value,
                    margin,
                    witness: is_violation(margin, tol).then(|| Witness::Point {
                        space,
                        point: encode_point(&z),
                    }),
                })
            })?;
            (1.0, outcomes)
        }
        CampaignKind::Reduction => {
            let space = cfg.space()?;
            let outcomes = run_samples(cfg.samples, |i| {
                let s = seed_of(i);
                let spec = LiftedMapSpec::sample(&space, sub_seed(s, 0), MAX_ATOMS);
                let z = space.sample_point(sub_seed(s, 1), POINT_CLEARANCE);
                let value = reduction_crosscheck(&space, &spec, &z)?.max_residual();
                let margin = -value;
                Ok(Outcome {
                    value,
                    margin,
                    witness: is_violation(margin, tol).then(|| Witness::Lifted {
                        space,
                        spec,
                        point: encode_point(&z),
                    }),
                })
            })?;
            (0.0, outcomes)
        }
        CampaignKind::Sharpness => {
            let space = cfg.space()?;
            let samples = cfg.samples;
            let outcomes = run_samples(samples, |i| {
                sharpness_sample(&space, seed_of(i), i, samples, tol)
            })?;
            (2.0, outcomes)
        }
        CampaignKind::Search => {
            let ord = cfg.zalcman_order()?;
            let bound = ord.bound();
            let result = search_extremal(ord, cfg.budget, cfg.seed);
            let margin = bound - result.value;
            let witness = Witness::Measure {
                measure: result.best,
            };
            extremizer = Some(witness.clone());
            let outcome = Outcome {
                value: result.value,
                margin,
                witness: is_violation(margin, tol).then_some(witness),
            };
            (bound, vec![outcome])
        }
    };

    let mut report = CampaignReport {
        campaign: cfg.campaign,
        seed: cfg.seed,
        samples: outcomes.len(),
        max_value: f64::NEG_INFINITY,
        bound,
        min_margin: f64::INFINITY,
        tolerance: tol,
        violations: Vec::new(),
        extremizer,
        rows: Vec::with_capacity(outcomes.len()),
        runtime_ms: 0,
    };
    for (index, o) in outcomes.into_iter().enumerate() {
        if o.value > report.max_value || o.value.is_nan() {
            report.max_value = o.value;
        }
        if o.margin < report.min_margin || o.margin.is_nan() {
            report.min_margin = o.margin;
        }
        report.rows.push(SampleRow {
            index,
            value: o.value,
            margin: o.margin,
        });
        if let Some(witness) = o.witness {
            report.violations.push(Violation {
                index,
                value: o.value,
                margin: o.margin,
                witness,
            });
        }
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Unit direction `u` with `u_1 = r = 1` and `u` off the exceptional set, if
/// the norm has one.
fn domain_direction(space: &SpaceSpec, seed: u64) -> Option<Vec<C64>> {
    let n = space.dim();
    let mut u = vec![C64::new(0.0, 0.0); n];
    u[0] = C64::new(1.0, 0.0);
    match space.kind() {
        NormKind::Sup => {
            // remaining moduli stay below 0.9, so the gap to E is at least 0.1
            let v = space.sample_direction(seed, 0.0);
            for j in 1..n {
                u[j] = v[j] * 0.9;
            }
        }
        NormKind::Lp(p) if p >= 2.0 => {}
        _ => return None,
    }
    (space.exceptional_distance(&u) >= DIRECTION_CLEARANCE).then_some(u)
}

struct SharpnessCase {
    spec: LiftedMapSpec,
    point: Vec<C64>,
    value: f64,
    deviation: f64,
    min_re_h: f64,
}

fn sharpness_case(
    space: &SpaceSpec,
    kind: Extremal,
    direction: &[C64],
    radius: f64,
    mode: Mode,
    seed: u64,
) -> Result<SharpnessCase> {
    let spec = make_extremal(space, &kind)?;
    let point: Vec<C64> = direction.iter().map(|c| c * radius).collect();
    let values = zalcman_nd(space, &spec, &point, mode)?;
    let deviation = (2..=4)
        .map(|k| (values.get(k) - k as f64).norm())
        .fold((values.zalcman - 2.0).abs(), f64::max);
    let scan = starlikeness_scan(
        space,
        &spec,
        &GridSpec {
            seed,
            ..GridSpec::default()
        },
    );
    Ok(SharpnessCase {
        spec,
        point,
        value: values.zalcman,
        deviation,
        min_re_h: scan.min_re_h,
    })
}

fn sharpness_sample(
    space: &SpaceSpec,
    seed: u64,
    index: usize,
    samples: usize,
    tol: f64,
) -> Result<Outcome> {
    // radii spread evenly over (0.05, 0.95)
    let radius = 0.05 + 0.9 * (index as f64 + 0.5) / samples as f64;
    let u = space.sample_direction(sub_seed(seed, 0), DIRECTION_CLEARANCE);
    let mut cases = vec![sharpness_case(
        space,
        Extremal::Ball(u.clone()),
        &u,
        radius,
        Mode::Ball,
        seed,
    )?];
    if let Some(u) = domain_direction(space, sub_seed(seed, 1)) {
        cases.push(sharpness_case(
            space,
            Extremal::Domain(1.0),
            &u,
            radius,
            Mode::Domain,
            seed,
        )?);
    }
    let worst = cases
        .into_iter()
        .reduce(|a, b| if b.deviation > a.deviation { b } else { a })
        .expect("at least the ball case");
    let margin = (-worst.deviation).min(worst.min_re_h);
    Ok(Outcome {
        value: worst.value,
        margin,
        witness: is_violation(margin, tol).then(|| Witness::Lifted {
            space: *space,
            spec: worst.spec,
            point: encode_point(&worst.point),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_campaign() {
        let cfg = CampaignConfig::new(CampaignKind::Zalcman1d)
            .with_seed(7)
            .with_samples(1);
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.samples, 1);
        assert_eq!(r.rows.len(), 1);
        assert!(r.passed());
    }

    #[test]
    fn reports_are_reproducible() {
        for kind in CampaignKind::VERIFY {
            let cfg = CampaignConfig::new(kind).with_seed(3).with_samples(16);
            let mut a = run_campaign(&cfg).unwrap();
            let mut b = run_campaign(&cfg).unwrap();
            a.runtime_ms = 0;
            b.runtime_ms = 0;
            assert_eq!(a, b, "{kind}");
            assert!(a.passed(), "{kind}: {}", a.summary());
            assert_eq!(a.violations.is_empty(), a.min_margin >= -a.tolerance);
        }
    }

    #[test]
    fn violation_flags_follow_margin() {
        // rounding-level deviations exceed a 1e-300 tolerance
        let mut cfg = CampaignConfig::new(CampaignKind::Sharpness).with_samples(4);
        cfg.tolerance = 1e-300;
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.violations.is_empty(), r.min_margin >= -r.tolerance);
        for v in &r.violations {
            assert!(v.margin < -r.tolerance);
            assert!(matches!(v.witness, Witness::Lifted { .. }));
        }
    }

    #[test]
    fn sharpness_on_l1_uses_ball_case_only() {
        let cfg = CampaignConfig::new(CampaignKind::Sharpness)
            .with_space(3, NormKind::L1)
            .with_samples(8);
        let r = run_campaign(&cfg).unwrap();
        assert!(r.passed());
        assert!((r.max_value - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn search_campaign_reports_extremizer() {
        let cfg = CampaignConfig::new(CampaignKind::Search)
            .with_budget(2000)
            .with_seed(1);
        let r = run_campaign(&cfg).unwrap();
        assert!(r.max_value >= 2.0 - 1e-6);
        assert!(matches!(r.extremizer, Some(Witness::Measure { .. })));
    }
}
