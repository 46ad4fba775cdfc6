//! Truncated power series in one complex variable.
//!
//! A [`TruncatedSeries`] of order `N` stores the Taylor coefficients
//! `c_0, ..., c_N`. Binary operations truncate to the smaller of the two
//! orders; nothing is ever silently extended.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::C64;

/// Constant terms at or below this modulus are treated as zero by [`TruncatedSeries::div`].
pub const DIVISION_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<C64>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..c_N`.
    ///
    /// Panics if `coeffs` is empty: a series always has at least a constant term.
    pub fn new(coeffs: Vec<C64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![C64::zero(); order + 1],
        }
    }

    pub fn constant(value: C64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C64::one(), order)
    }

    /// Builds a series of the given order from a coefficient function.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C64) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `ζ^k`, zero past the truncation order.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_else(C64::zero)
    }

    /// Drops every coefficient above `order` (no-op if already shorter).
    pub fn truncated(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| {
            (0..=n).map(|k| self.coeffs[k] * other.coeffs[n - k]).sum()
        })
    }

    /// Quotient `self / other`, truncated to the smaller order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let lead = other.coeffs[0];
        if lead.norm() <= DIVISION_EPS {
            return Err(Error::NearSingularDivision {
                constant: lead.norm(),
            });
        }
        let order = self.order().min(other.order());
        let mut q: Vec<C64> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let acc: C64 = (1..=n).map(|k| other.coeffs[k] * q[n - k]).sum();
            q.push((self.coeffs[n] - acc) / lead);
        }
        Ok(Self { coeffs: q })
    }

    /// `exp` of a series with zero constant term.
    ///
    /// Uses the recurrence from `e' = a' e`: `n e_n = sum_{k=1}^{n} k a_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut e: Vec<C64> = Vec::with_capacity(order + 1);
        e.push(C64::one());
        for n in 1..=order {
            let acc: C64 = (1..=n).map(|k| self.coeffs[k] * e[n - k] * k as f64).sum();
            e.push(acc / n as f64);
        }
        Ok(Self { coeffs: e })
    }

    /// Horner evaluation of the truncated polynomial at `zeta`.
    pub fn eval(&self, zeta: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::zero(), |acc, &c| acc * zeta + c)
    }

    /// Largest coefficientwise distance over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |k| self.coeffs[k] + rhs.coeffs[k])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |k| self.coeffs[k] - rhs.coeffs[k])
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(-C64::one())
    }
}
