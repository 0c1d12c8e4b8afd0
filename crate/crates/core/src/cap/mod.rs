//! Single-radius spherical cap discrepancy.
//!
//! A cap of height `t` around `x ∈ S^d` is `{y : x·y >= t}`. Its indicator,
//! as a function of `x·y`, has Gegenbauer coefficients `f̂_t(n, λ)` with
//! `λ = (d-1)/2`; the discrepancy of a point set is a positive combination
//! of their squares.

mod coefficients;
mod discrepancy;
mod measure;
mod pointset;

pub use coefficients::{
    bilyk_dai_floor, cap_coefficient, cap_integral_closed, coefficient_table, zonal_at_one, CoefficientTable,
};
pub use discrepancy::{
    default_n_max, full_cap_discrepancy, full_cap_profile, mode_contributions, monte_carlo_discrepancy,
    spectral_discrepancy, FullCapProfile,
};
pub use measure::cap_measure;
pub use pointset::{generate_pointset, read_pointset, write_pointset, PointKind, PointSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::OrderParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapSpec {
    pub d: usize,
    pub t: f64,
}

impl CapSpec {
    pub fn new(d: usize, t: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("sphere dimension must be at least 1".into()));
        }
        if !(t > -1.0 && t < 1.0) {
            return Err(Error::Domain(format!("cap height {t} not in (-1, 1)")));
        }
        Ok(Self { d, t })
    }

    /// `(d - 1) / 2`.
    pub fn lambda_value(&self) -> f64 {
        (self.d as f64 - 1.0) / 2.0
    }

    /// `(d - 1) / 2`; an error for the circle, where the order is zero.
    pub fn lambda(&self) -> Result<OrderParam> {
        OrderParam::for_sphere(self.d)
    }

    /// `(d + 1) / 2`.
    pub fn lambda_plus(&self) -> OrderParam {
        OrderParam::from_ratio(self.d as i64 + 1, 2).expect("positive")
    }

    /// Dimensions `d ≡ 1 (mod 4)` are outside the range where the coefficient
    /// lower bound is known.
    pub fn outside_coefficient_bound(&self) -> bool {
        self.d % 4 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    Spectral { n_max: u64 },
    MonteCarlo { samples: u64, seed: u64 },
    Floor { k: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub method: Method,
    /// Squared discrepancy.
    pub value: f64,
    /// Present for Monte Carlo estimates only.
    pub stderr: Option<f64>,
    /// Upper bound on the spectral truncation error, which is never negative.
    pub truncation_tail: Option<f64>,
    pub cap: CapSpec,
    pub n_points: u64,
}
