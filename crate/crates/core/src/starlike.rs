//! Starlike functions on the unit disk built from Carathéodory data, the
//! generalized Zalcman functional `J_{m,n}(f) = a_m a_n - a_{m+n-1}`, and a
//! derivative-free search for its extremizers.
//!
//! A starlike `f(z) = z + a_2 z² + ...` satisfies `z f'(z) = p(z) f(z)` for
//! some Carathéodory function `p`, which gives the recurrence
//! `(n - 1) a_n = Σ_{k=1}^{n-1} p_k a_{n-k}`. The same coefficients also come
//! out of `f(z) = z exp(Σ p_k z^k / k)`; the two routes are kept separate so
//! one can check the other.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::herglotz::{HerglotzAtom, HerglotzMeasure, MAX_ATOMS};
use crate::rng::sub_seed;
use crate::series::TruncatedSeries;
use crate::{C64, DEFAULT_ORDER};

/// Coefficients `a_1 = 1, a_2, ..., a_N` of a starlike function.
#[derive(Debug, Clone, PartialEq)]
pub struct SchlichtCoefficients {
    a: Vec<C64>,
}

impl SchlichtCoefficients {
    /// Truncation order `N` (index of the last stored coefficient).
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `a_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> C64 {
        assert!(
            n >= 1 && n <= self.a.len(),
            "coefficient a_{n} is out of range"
        );
        self.a[n - 1]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.a
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > DEFAULT_ORDER {
        return Err(Error::TruncationTooHigh {
            requested: order,
            max: DEFAULT_ORDER,
        });
    }
    Ok(())
}

/// Coefficients through `a_N` by the recurrence `(n-1) a_n = Σ p_k a_{n-k}`.
pub fn coeffs_from_p(mu: &HerglotzMeasure, order: usize) -> Result<SchlichtCoefficients> {
    check_order(order)?;
    let p = mu.p_coeffs(order);
    let mut a = Vec::with_capacity(order);
    a.push(C64::new(1.0, 0.0));
    for n in 2..=order {
        // a[n - k - 1] is a_{n-k}
        let acc: C64 = (1..n).map(|k| p[k - 1] * a[n - k - 1]).sum();
        a.push(acc / (n - 1) as f64);
    }
    Ok(SchlichtCoefficients { a })
}

/// Same contract as [`coeffs_from_p`], computed as `z exp(Σ p_k z^k / k)`.
pub fn coeffs_oracle(mu: &HerglotzMeasure, order: usize) -> Result<SchlichtCoefficients> {
    check_order(order)?;
    let log = TruncatedSeries::from_fn(order - 1, |k| match k {
        0 => C64::new(0.0, 0.0),
        k => mu.p_coeff(k) / k as f64,
    });
    let e = log.exp()?;
    Ok(SchlichtCoefficients {
        a: e.coeffs().to_vec(),
    })
}

/// Index pair `(m, n)` of the generalized Zalcman functional, `2 <= m, n <= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZalcmanOrder {
    m: usize,
    n: usize,
}

impl ZalcmanOrder {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if !(2..=4).contains(&m) || !(2..=4).contains(&n) {
            return Err(Error::InvalidOrder { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The sharp bound `(m - 1)(n - 1)` on starlike functions.
    pub fn bound(&self) -> f64 {
        ((self.m - 1) * (self.n - 1)) as f64
    }

    /// Highest coefficient index the functional reads.
    pub fn top_index(&self) -> usize {
        self.m + self.n - 1
    }
}

/// `a_m a_n - a_{m+n-1}`.
pub fn zalcman_j(a: &SchlichtCoefficients, ord: ZalcmanOrder) -> Result<C64> {
    if ord.top_index() > a.order() {
        return Err(Error::TruncationTooHigh {
            requested: ord.top_index(),
            max: a.order(),
        });
    }
    Ok(a.get(ord.m) * a.get(ord.n) - a.get(ord.top_index()))
}

/// `|J_{m,n}|` of the starlike function generated by `mu`.
pub fn zalcman_value(mu: &HerglotzMeasure, ord: ZalcmanOrder) -> f64 {
    let a = coeffs_from_p(mu, ord.top_index()).expect("top index is at most 7");
    zalcman_j(&a, ord)
        .expect("order covers the top index")
        .norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Number of random starting measures; also the size of the initial batch.
    pub restarts: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_atoms: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 20,
            initial_step: 0.25,
            min_step: 1e-7,
            max_atoms: MAX_ATOMS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: HerglotzMeasure,
    pub value: f64,
    /// Objective evaluations spent after the initial batch (never exceeds the budget).
    pub evaluations: usize,
}

/// Euclidean projection onto the probability simplex.
fn project_to_simplex(w: &mut [f64]) {
    let mut sorted: Vec<f64> = w.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (i + 1) as f64;
        if v - candidate > 0.0 {
            shift = candidate;
        }
    }
    for x in w.iter_mut() {
        *x = (*x - shift).max(0.0);
    }
    // renormalize away rounding so the measure invariant holds to 1e-12
    let total: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= total;
    }
}

fn wrap_angle(t: f64) -> f64 {
    t - TAU * num_traits::Float::floor(t / TAU)
}

fn measure_from(weights: &[f64], angles: &[f64]) -> HerglotzMeasure {
    let atoms = weights
        .iter()
        .zip(angles)
        .map(|(&weight, &angle)| HerglotzAtom {
            weight,
            angle: wrap_angle(angle),
        })
        .collect();
    HerglotzMeasure::new(atoms).expect("projected weights form a probability vector")
}

/// Maximizes `|J_{m,n}|` over Herglotz measures.
///
/// An initial batch of `restarts` random measures is evaluated first (this is
/// all that happens when `budget == 0`). Restarts are then refined in order of
/// decreasing initial value by a coordinate pattern search over weights and
/// angles, projecting the weights back onto the simplex after every move. The
/// step halves after each unsuccessful sweep until it drops below `min_step`.
/// `budget` caps the number of refinement evaluations, so the trajectory for a
/// larger budget extends the one for a smaller budget and the returned value
/// is monotone in `budget`.
pub fn search_extremal(ord: ZalcmanOrder, budget: usize, seed: u64) -> SearchResult {
    search_extremal_with(ord, budget, seed, &SearchOptions::default())
}

pub fn search_extremal_with(
    ord: ZalcmanOrder,
    budget: usize,
    seed: u64,
    opts: &SearchOptions,
) -> SearchResult {
    let restarts = opts.restarts.max(1);
    let starts: Vec<(HerglotzMeasure, f64)> = (0..restarts as u64)
        .map(|i| {
            let mu = HerglotzMeasure::sample(sub_seed(seed, i), opts.max_atoms);
            let v = zalcman_value(&mu, ord);
            (mu, v)
        })
        .collect();

    let mut best_idx = 0;
    for (i, (_, v)) in starts.iter().enumerate() {
        if *v > starts[best_idx].1 {
            best_idx = i;
        }
    }
    let mut best = starts[best_idx].0.clone();
    let mut best_value = starts[best_idx].1;

    let mut order: Vec<usize> = (0..starts.len()).collect();
    // stable sort keeps seed order among ties
    order.sort_by(|&i, &j| starts[j].1.total_cmp(&starts[i].1));

    let mut used = 0usize;
    'restarts: for &idx in &order {
        let (start, start_value) = &starts[idx];
        let mut weights: Vec<f64> = start.atoms().iter().map(|a| a.weight).collect();
        let mut angles: Vec<f64> = start.atoms().iter().map(|a| a.angle).collect();
        let mut current = *start_value;
        let k = weights.len();
        let mut step = opts.initial_step;

        while step >= opts.min_step {
            let mut improved = false;
            for coord in 0..2 * k {
                for dir in [1.0, -1.0] {
                    if used >= budget {
                        break 'restarts;
                    }
                    let mut w = weights.clone();
                    let mut t = angles.clone();
                    if coord < k {
                        w[coord] += dir * step;
                        project_to_simplex(&mut w);
                    } else {
                        t[coord - k] += dir * step;
                    }
                    let trial = measure_from(&w, &t);
                    let value = zalcman_value(&trial, ord);
                    used += 1;
                    if value > current {
                        current = value;
                        weights = w;
                        angles = t;
                        improved = true;
                        if value > best_value {
                            best_value = value;
                            best = trial;
                        }
                        break;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
    }

    SearchResult {
        best,
        value: best_value,
        evaluations: used,
    }
}
