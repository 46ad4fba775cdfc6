use zalcman_core::mappings::{
    make_extremal, reduction_crosscheck, restrict_h, zalcman_nd, Extremal,
};
use zalcman_core::starlike::{coeffs_from_p, search_extremal, zalcman_j};
use zalcman_core::{
    Error, HerglotzMeasure, LiftedMapSpec, Mode, NormKind, SpaceSpec, TruncatedSeries,
    ZalcmanOrder, C64, DEFAULT_ORDER,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn koebe_from_measure_to_functional() {
    let mu = HerglotzMeasure::point_mass(0.0);
    let a = coeffs_from_p(&mu, DEFAULT_ORDER).unwrap();
    for n in 1..=DEFAULT_ORDER {
        assert!((a.get(n) - c(n as f64, 0.0)).norm() < 1e-12);
    }
    let j = zalcman_j(&a, ZalcmanOrder::new(2, 3).unwrap()).unwrap();
    assert!((j.norm() - 2.0).abs() < 1e-12);
}

#[test]
fn two_atom_measure_stays_below_bound() {
    let mu = HerglotzMeasure::from_pairs(&[(0.5, 0.0), (0.5, 1.0)]).unwrap();
    let a = coeffs_from_p(&mu, DEFAULT_ORDER).unwrap();
    for m in 2..=4 {
        for n in 2..=4 {
            let ord = ZalcmanOrder::new(m, n).unwrap();
            assert!(zalcman_j(&a, ord).unwrap().norm() <= ord.bound() + 1e-9);
        }
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(HerglotzMeasure::from_pairs(&[(0.5, 0.0)]).is_err());
    assert!(HerglotzMeasure::from_pairs(&[(1.5, 0.0), (-0.5, 1.0)]).is_err());
    assert!(ZalcmanOrder::new(1, 3).is_err());
    assert!(ZalcmanOrder::new(2, 5).is_err());
    assert!(SpaceSpec::new(0, NormKind::EUCLIDEAN).is_err());
    assert!(SpaceSpec::new(2, NormKind::Lp(0.5)).is_err());
    let one = TruncatedSeries::one(4);
    assert!(matches!(one.exp(), Err(Error::NonzeroConstantTerm)));
    assert!(matches!(
        one.div(&TruncatedSeries::zero(4)),
        Err(Error::NearSingularDivision { .. })
    ));
}

#[test]
fn ball_pipeline_matches_reduction() {
    let space = SpaceSpec::new(3, NormKind::Lp(3.0)).unwrap();
    for seed in 0..50 {
        let spec = LiftedMapSpec::sample(&space, seed, 8);
        spec.validate(&space).unwrap();
        let z = space.sample_point(seed + 1000, 1e-6);
        let v = zalcman_nd(&space, &spec, &z, Mode::Ball).unwrap();
        assert!(v.zalcman <= 2.0 + 1e-9);
        let check = reduction_crosscheck(&space, &spec, &z).unwrap();
        assert!(check.max_residual() <= 1e-10);
    }
}

#[test]
fn extremal_restriction_is_koebe_ratio() {
    let space = SpaceSpec::euclidean(2).unwrap();
    let u = vec![c(0.6, 0.0), c(0.0, 0.8)];
    let spec = make_extremal(&space, &Extremal::Ball(u.clone())).unwrap();
    // h(ζ) = (1 + ζ)/(1 - ζ) = 1 + 2ζ + 2ζ² + ...
    let h = restrict_h(&space, &spec, &u, 6).unwrap();
    assert!((h.coeff(0) - c(1.0, 0.0)).norm() < 1e-12);
    for k in 1..=6 {
        assert!((h.coeff(k) - c(2.0, 0.0)).norm() < 1e-12);
    }
    let z: Vec<C64> = u.iter().map(|x| x * 0.4).collect();
    let v = zalcman_nd(&space, &spec, &z, Mode::Ball).unwrap();
    assert!((v.zalcman - 2.0).abs() < 1e-12);
    assert!(matches!(
        restrict_h(&space, &spec, &z, 6),
        Err(Error::InvalidDirection { .. })
    ));
}

#[test]
fn search_is_reproducible() {
    let ord = ZalcmanOrder::new(2, 2).unwrap();
    let a = search_extremal(ord, 500, 9);
    let b = search_extremal(ord, 500, 9);
    assert_eq!(a.best, b.best);
    assert_eq!(a.value, b.value);
    assert!(a.value <= ord.bound() + 1e-9);
}

#[test]
fn measure_json_round_trip() {
    let mu = HerglotzMeasure::sample(17, 8);
    let text = serde_json::to_string(&mu).unwrap();
    assert!(text.starts_with("{\"atoms\":[["));
    let back: HerglotzMeasure = serde_json::from_str(&text).unwrap();
    assert_eq!(back, mu);
    assert!(serde_json::from_str::<HerglotzMeasure>(r#"{"atoms":[[0.5,0.0]]}"#).is_err());
}
