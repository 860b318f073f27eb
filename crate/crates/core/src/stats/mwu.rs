use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MannWhitneyResult {
    /// U statistic of the first sample: pairs (a, b) with a > b, ties 1/2.
    pub u: f64,
    pub z: f64,
    /// Two-sided, normal approximation with tie and continuity correction.
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
    pub median1: f64,
    pub median2: f64,
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

/// Mann-Whitney U test from midrank sums.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<MannWhitneyResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("sample contains NaN".to_string()));
    }
    let (n1, n2) = (a.len(), b.len());
    let n = n1 + n2;
    let mut pooled: Vec<(f64, bool)> = a.iter().map(|&x| (x, true)).chain(b.iter().map(|&x| (x, false))).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        // ranks i+1 ..= j+1
        let midrank = (i + j + 2) as f64 / 2.0;
        rank_sum_a += midrank * pooled[i..=j].iter().filter(|p| p.1).count() as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let (f1, f2, nf) = (n1 as f64, n2 as f64, n as f64);
    let u = rank_sum_a - f1 * (f1 + 1.0) / 2.0;
    let mean = f1 * f2 / 2.0;
    let variance = f1 * f2 / 12.0 * ((nf + 1.0) - tie_term / (nf * (nf - 1.0)).max(1.0));
    let (z, p) = if variance <= 0.0 {
        (0.0, 1.0)
    } else {
        let dev = ((u - mean).abs() - 0.5).max(0.0);
        let z = dev / variance.sqrt();
        let p = erfc(z / std::f64::consts::SQRT_2);
        (z * (u - mean).signum(), p.clamp(f64::MIN_POSITIVE, 1.0))
    };
    Ok(MannWhitneyResult {
        u,
        z,
        p_value: p,
        n1,
        n2,
        median1: median(a).unwrap_or(f64::NAN),
        median2: median(b).unwrap_or(f64::NAN),
    })
}
