use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coefficients::{coefficient_table, zonal_at_one};
use super::measure::cap_measure;
use super::pointset::PointSet;
use super::{CapSpec, DiscrepancyReport, Method};
use crate::error::{Error, Result};
use crate::rng::{fill_unit_vector, CounterRng};
use crate::stats::pairwise_sum;

/// Rows of the Gram sum handled per task. Fixed so that the reduction
/// order never depends on the thread count.
const ROW_CHUNK: usize = 16;
/// Monte Carlo samples per task.
const SAMPLE_CHUNK: u64 = 4096;

/// `max(400, 20 N^{1/d})`.
pub fn default_n_max(n_points: usize, d: usize) -> u64 {
    (20.0 * (n_points as f64).powf(1.0 / d as f64)).ceil().max(400.0) as u64
}

fn check_dims(points: &PointSet, cap: &CapSpec) -> Result<()> {
    if points.d() != cap.d {
        return Err(Error::DimensionMismatch {
            points: points.d(),
            cap: cap.d,
        });
    }
    Ok(())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Adds `Z_n(s)` for `n = 1..=acc.len()` into `acc`, times `weight`.
///
/// `Z_n = ((n + λ)/λ) C_n^λ` for `λ > 0`, and `2 T_n` on the circle.
fn add_zonal(acc: &mut [f64], lam: f64, s: f64, weight: f64) {
    let s = s.clamp(-1.0, 1.0);
    let two_s = 2.0 * s;
    if lam == 0.0 {
        let (mut prev, mut curr) = (1.0, s);
        for slot in acc.iter_mut() {
            *slot += weight * 2.0 * curr;
            (prev, curr) = (curr, two_s * curr - prev);
        }
        return;
    }
    let (mut prev, mut curr) = (1.0, lam * two_s);
    for (k, slot) in acc.iter_mut().enumerate() {
        let n = (k + 1) as f64;
        *slot += weight * (n + lam) / lam * curr;
        let m = n + 1.0;
        let next = ((m + lam - 1.0) * two_s * curr - (m + 2.0 * lam - 2.0) * prev) / m;
        (prev, curr) = (curr, next);
    }
}

/// Per-mode terms `f̂_n² · (1/N²) Σ_{i,j} Z_n(z_i·z_j)` for `n = 1..=n_max`.
///
/// Each term is non-negative up to rounding, since `Z_n` is a positive
/// definite kernel.
pub fn mode_contributions(points: &PointSet, cap: &CapSpec, n_max: u64) -> Result<Vec<f64>> {
    check_dims(points, cap)?;
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let n_max = n_max as usize;
    let lam = cap.lambda_value();
    let count = points.len();
    let rows: Vec<usize> = (0..count).collect();
    // per chunk: Σ_i Σ_{j>i} 2 Z_n(z_i·z_j), then the chunks in order
    let partials: Vec<Vec<f64>> = rows
        .par_chunks(ROW_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n_max];
            for &i in chunk {
                let zi = points.point(i);
                for j in i + 1..count {
                    add_zonal(&mut acc, lam, dot(zi, points.point(j)), 2.0);
                }
            }
            acc
        })
        .collect();
    let norm = (count as f64) * (count as f64);
    let table = coefficient_table(cap, n_max as u64);
    Ok((0..n_max)
        .map(|k| {
            let column: Vec<f64> = partials.iter().map(|p| p[k]).collect();
            let n = (k + 1) as u64;
            let diagonal = count as f64 * zonal_at_one(n, cap.d);
            let f = table.entries[k].1;
            f * f * (pairwise_sum(&column) + diagonal) / norm
        })
        .collect())
}

/// Spectral estimate of the squared single-radius discrepancy, truncated at `n_max`.
///
/// The reported tail `σ(1-σ) - Σ_{n<=n_max} f̂_n² Z_n(1)` bounds the
/// truncation error from above; the error is never negative.
pub fn spectral_discrepancy(points: &PointSet, cap: &CapSpec, n_max: u64) -> Result<DiscrepancyReport> {
    let terms = mode_contributions(points, cap, n_max)?;
    let sigma = cap_measure(cap.d, cap.t);
    let captured: Vec<f64> = coefficient_table(cap, n_max)
        .entries
        .iter()
        .map(|&(n, f)| f * f * zonal_at_one(n, cap.d))
        .collect();
    let tail = (sigma * (1.0 - sigma) - pairwise_sum(&captured)).max(0.0);
    Ok(DiscrepancyReport {
        method: Method::Spectral { n_max },
        value: pairwise_sum(&terms).max(0.0),
        stderr: None,
        truncation_tail: Some(tail),
        cap: *cap,
        n_points: points.len() as u64,
    })
}

fn mc_check(points: &PointSet, samples: u64) -> Result<()> {
    if samples < 1000 {
        return Err(Error::Domain(format!("need at least 1000 samples, got {samples}")));
    }
    if points.is_empty() {
        return Err(Error::InvalidPointSet("point set is empty".into()));
    }
    Ok(())
}

/// Runs `per_sample(center, out)` for every sample, summing `out` and its
/// square elementwise in a thread-count-independent order.
fn mc_accumulate<F>(dim: usize, width: usize, samples: u64, seed: u64, per_sample: F) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    let g = CounterRng::new(seed);
    let chunks: Vec<u64> = (0..samples.div_ceil(SAMPLE_CHUNK)).collect();
    let partials: Vec<(Vec<f64>, Vec<f64>)> = chunks
        .par_iter()
        .map(|&c| {
            let mut center = vec![0.0; dim];
            let mut out = vec![0.0; width];
            let mut sum = vec![0.0; width];
            let mut sq = vec![0.0; width];
            for i in c * SAMPLE_CHUNK..((c + 1) * SAMPLE_CHUNK).min(samples) {
                fill_unit_vector(&mut g.stream(i), &mut center);
                per_sample(&center, &mut out);
                for k in 0..width {
                    sum[k] += out[k];
                    sq[k] += out[k] * out[k];
                }
            }
            (sum, sq)
        })
        .collect();
    let reduce = |pick: &dyn Fn(&(Vec<f64>, Vec<f64>)) -> &Vec<f64>| -> Vec<f64> {
        (0..width)
            .map(|k| pairwise_sum(&partials.iter().map(|p| pick(p)[k]).collect::<Vec<_>>()))
            .collect()
    };
    (reduce(&|p| &p.0), reduce(&|p| &p.1))
}

fn mean_and_stderr(sum: f64, sq: f64, samples: u64) -> (f64, f64) {
    let m = samples as f64;
    let mean = sum / m;
    let var = ((sq / m - mean * mean) * m / (m - 1.0)).max(0.0);
    (mean, (var / m).sqrt())
}

/// Monte Carlo estimate of the squared discrepancy over uniformly random cap centres.
pub fn monte_carlo_discrepancy(points: &PointSet, cap: &CapSpec, samples: u64, seed: u64) -> Result<DiscrepancyReport> {
    check_dims(points, cap)?;
    mc_check(points, samples)?;
    let sigma = cap_measure(cap.d, cap.t);
    let n = points.len() as f64;
    let (sum, sq) = mc_accumulate(points.ambient_dim(), 1, samples, seed, |x, out| {
        let inside = points.iter().filter(|z| dot(x, z) >= cap.t).count() as f64;
        let dev = inside / n - sigma;
        out[0] = dev * dev;
    });
    let (value, stderr) = mean_and_stderr(sum[0], sq[0], samples);
    Ok(DiscrepancyReport {
        method: Method::MonteCarlo { samples, seed },
        value,
        stderr: Some(stderr),
        truncation_tail: None,
        cap: *cap,
        n_points: points.len() as u64,
    })
}

/// Squared discrepancy at each height of a uniform grid on `[-1, 1]`,
/// with the trapezoid-rule integral over heights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullCapProfile {
    pub heights: Vec<f64>,
    pub values: Vec<f64>,
    pub stderrs: Vec<f64>,
    /// Trapezoid weight of each grid height.
    pub weights: Vec<f64>,
    pub integral: f64,
}

/// All heights share the same sampled centres.
pub fn full_cap_profile(points: &PointSet, t_grid_size: usize, samples: u64, seed: u64) -> Result<FullCapProfile> {
    if t_grid_size < 8 {
        return Err(Error::Domain(format!("height grid needs at least 8 points, got {t_grid_size}")));
    }
    mc_check(points, samples)?;
    let d = points.d();
    let step = 2.0 / (t_grid_size - 1) as f64;
    let heights: Vec<f64> = (0..t_grid_size).map(|k| -1.0 + step * k as f64).collect();
    let sigmas: Vec<f64> = heights.iter().map(|&t| cap_measure(d, t)).collect();
    let n = points.len();
    let (sum, sq) = mc_accumulate(points.ambient_dim(), t_grid_size, samples, seed, |x, out| {
        let mut dots: Vec<f64> = points.iter().map(|z| dot(x, z)).collect();
        dots.sort_by(f64::total_cmp);
        for ((o, &t), &s) in out.iter_mut().zip(&heights).zip(&sigmas) {
            let below = dots.partition_point(|&v| v < t);
            let dev = (n - below) as f64 / n as f64 - s;
            *o = dev * dev;
        }
    });
    let (values, stderrs): (Vec<f64>, Vec<f64>) = sum
        .iter()
        .zip(&sq)
        .map(|(&s, &q)| mean_and_stderr(s, q, samples))
        .unzip();
    let weights: Vec<f64> = (0..t_grid_size)
        .map(|k| if k == 0 || k + 1 == t_grid_size { step / 2.0 } else { step })
        .collect();
    let integral = pairwise_sum(&values.iter().zip(&weights).map(|(v, w)| v * w).collect::<Vec<_>>());
    Ok(FullCapProfile {
        heights,
        values,
        stderrs,
        weights,
        integral,
    })
}

/// `∫_{-1}^{1}` of the squared single-radius discrepancy, estimated on a height grid.
pub fn full_cap_discrepancy(points: &PointSet, t_grid_size: usize, samples: u64, seed: u64) -> Result<f64> {
    Ok(full_cap_profile(points, t_grid_size, samples, seed)?.integral)
}
