//! Goodness-of-fit metrics, the regression F-test, residual analysis and the
//! multiple linear regression baseline.

use std::fmt::Write as _;

use num_traits::Num;

use crate::dataset::{pearson, Dataset};
use crate::error::{Error, Result};
use crate::inference::predict_batch;
use crate::rules::RuleBase;

/// Significance level used when reporting whether a fit is significant.
pub const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FTest {
    pub f_stat: f64,
    pub df1: usize,
    pub df2: usize,
    pub p_value: f64,
}

impl FTest {
    pub fn significant(&self) -> bool {
        self.p_value < ALPHA
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// `1 − SSE/SST`.
    pub r2: f64,
    pub rmse: f64,
    pub mae: f64,
    pub f_test: FTest,
}

fn check_lengths(y_true: &[f64], y_pred: &[f64], min: usize) -> Result<()> {
    if y_true.len() != y_pred.len() {
        return Err(Error::LengthMismatch {
            left: y_true.len(),
            right: y_pred.len(),
        });
    }
    if y_true.len() < min {
        return Err(Error::TooFewSamples {
            needed: min,
            got: y_true.len(),
        });
    }
    Ok(())
}

fn sse(y_true: &[f64], y_pred: &[f64]) -> f64 {
    y_true.iter().zip(y_pred).map(|(y, p)| (y - p).powi(2)).sum()
}

/// Root mean squared error.
pub fn rmse(y_true: &[f64], y_pred: &[f64]) -> Result<f64> {
    check_lengths(y_true, y_pred, 1)?;
    Ok((sse(y_true, y_pred) / y_true.len() as f64).sqrt())
}

/// Mean absolute error.
pub fn mae(y_true: &[f64], y_pred: &[f64]) -> Result<f64> {
    check_lengths(y_true, y_pred, 1)?;
    let sae: f64 = y_true.iter().zip(y_pred).map(|(y, p)| (y - p).abs()).sum();
    Ok(sae / y_true.len() as f64)
}

pub fn compute_metrics(y_true: &[f64], y_pred: &[f64]) -> Result<Metrics> {
    check_lengths(y_true, y_pred, 3)?;
    let n = y_true.len() as f64;
    let mean = y_true.iter().sum::<f64>() / n;
    let sst: f64 = y_true.iter().map(|y| (y - mean).powi(2)).sum();
    if sst == 0.0 {
        return Err(Error::ZeroVariance("y_true"));
    }
    let rmse = rmse(y_true, y_pred)?;
    let mae = mae(y_true, y_pred)?;
    Ok(Metrics {
        r2: 1.0 - sse(y_true, y_pred) / sst,
        rmse,
        mae,
        f_test: f_test(y_true, y_pred)?,
    })
}

/// `F = df2·R² / (1 − R²)` for a one-predictor regression.
pub fn f_from_r2<T: Num + Copy>(df2: T, r2: T) -> T {
    df2 * r2 / (T::one() - r2)
}

/// F-test of regressing `y_true` on `y_pred`, with df (1, n − 2).
///
/// A perfect correlation yields `F = ∞` and `p = 0`.
pub fn f_test(y_true: &[f64], y_pred: &[f64]) -> Result<FTest> {
    check_lengths(y_true, y_pred, 3)?;
    let r2 = squared_correlation(y_true, y_pred)?;
    let df2 = y_true.len() - 2;
    if r2 >= 1.0 {
        return Ok(FTest {
            f_stat: f64::INFINITY,
            df1: 1,
            df2,
            p_value: 0.0,
        });
    }
    let f_stat = f_from_r2(df2 as f64, r2);
    Ok(FTest {
        f_stat,
        df1: 1,
        df2,
        p_value: f_upper_tail(f_stat, 1.0, df2 as f64),
    })
}

/// `sxy² / (sxx·syy)`, computed without square roots so that identical
/// series give exactly 1.
fn squared_correlation(y_true: &[f64], y_pred: &[f64]) -> Result<f64> {
    // Validates lengths and variances.
    pearson(y_pred, y_true)?;
    let n = y_true.len() as f64;
    let my = y_true.iter().sum::<f64>() / n;
    let mp = y_pred.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (y, p) in y_true.iter().zip(y_pred) {
        let (dy, dp) = (y - my, p - mp);
        sxy += dy * dp;
        sxx += dp * dp;
        syy += dy * dy;
    }
    Ok((sxy * sxy / (sxx * syy)).min(1.0))
}

/// `P(X > f)` for `X ~ F(d1, d2)`.
pub fn f_upper_tail(f: f64, d1: f64, d2: f64) -> f64 {
    if f <= 0.0 {
        return 1.0;
    }
    if f.is_infinite() {
        return 0.0;
    }
    regularized_incomplete_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0)
}

/// Natural log of the gamma function (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let sum = COEF[1..]
        .iter()
        .enumerate()
        .fold(COEF[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0));
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + sum.ln()
}

/// Regularized incomplete beta `I_x(a, b)` by continued fraction.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * (1.0 - x).ln() + ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b);
    let front = ln_front.exp();
    // The fraction converges fastest below the mean of the distribution.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(x, a, b) / a
    } else {
        1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b
    }
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let mut c = 1.0;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let even = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        for coef in [even, -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0))] {
            d = 1.0 + coef * d;
            if d.abs() < TINY {
                d = TINY;
            }
            c = 1.0 + coef / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            h *= d * c;
        }
        if (d * c - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorAnalysis {
    /// `y_true − y_pred`.
    pub residuals: Vec<f64>,
    pub abs_errors: Vec<f64>,
    /// Share of negative residuals.
    pub overprediction_fraction: f64,
    pub min_abs_error: f64,
    pub max_abs_error: f64,
}

pub fn error_analysis(y_true: &[f64], y_pred: &[f64]) -> Result<ErrorAnalysis> {
    check_lengths(y_true, y_pred, 1)?;
    let residuals: Vec<f64> = y_true.iter().zip(y_pred).map(|(y, p)| y - p).collect();
    let abs_errors: Vec<f64> = residuals.iter().map(|r| r.abs()).collect();
    let over = residuals.iter().filter(|r| **r < 0.0).count();
    Ok(ErrorAnalysis {
        overprediction_fraction: over as f64 / residuals.len() as f64,
        min_abs_error: abs_errors.iter().cloned().fold(f64::INFINITY, f64::min),
        max_abs_error: abs_errors.iter().cloned().fold(0.0, f64::max),
        residuals,
        abs_errors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Equal-width histogram over `[min, max]` of the values; the last bin is closed.
pub fn histogram(values: &[f64], bins: usize) -> Vec<HistogramBin> {
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / bins as f64;
    let mut out: Vec<HistogramBin> = (0..bins)
        .map(|i| HistogramBin {
            lo: lo + i as f64 * width,
            hi: if i + 1 == bins { hi } else { lo + (i + 1) as f64 * width },
            count: 0,
        })
        .collect();
    for v in values {
        let i = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        out[i].count += 1;
    }
    out
}

/// `hi ≈ b0 + b1·rh + b2·t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearModel {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

impl LinearModel {
    pub fn predict(&self, rh: f64, t: f64) -> f64 {
        self.b0 + self.b1 * rh + self.b2 * t
    }
}

/// Ordinary least squares of `hi` on `(1, rh, t)`.
///
/// The normal equations are formed on mean-centered inputs, solved by
/// Gaussian elimination with partial pivoting and mapped back to the raw
/// intercept.
pub fn fit_mlr(train: &Dataset) -> Result<LinearModel> {
    let n = train.len();
    if n < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: n });
    }
    let nf = n as f64;
    let mean_rh = train.samples.iter().map(|s| s.rh).sum::<f64>() / nf;
    let mean_t = train.samples.iter().map(|s| s.t).sum::<f64>() / nf;

    let mut xtx = [[0.0; 3]; 3];
    let mut xty = [0.0; 3];
    let mut scale = [0.0; 3];
    for s in &train.samples {
        let x = [1.0, s.rh - mean_rh, s.t - mean_t];
        for j in 0..3 {
            xty[j] += x[j] * s.hi;
            for k in 0..3 {
                xtx[j][k] += x[j] * x[k];
            }
        }
        scale[0] += 1.0;
        scale[1] += s.rh * s.rh;
        scale[2] += s.t * s.t;
    }
    let c = solve3(xtx, xty, scale)?;
    Ok(LinearModel {
        b0: c[0] - c[1] * mean_rh - c[2] * mean_t,
        b1: c[1],
        b2: c[2],
    })
}

/// Solves a 3×3 system. A pivot below `1e-12` times the raw magnitude of its
/// column is treated as singular.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3], scale: [f64; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        let magnitude = a[pivot][col].abs();
        if magnitude.is_nan() || magnitude <= 1e-12 * scale[col] {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            let top = a[col];
            for (x, p) in a[row][col..].iter_mut().zip(&top[col..]) {
                *x -= factor * p;
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    if x.iter().all(|v| v.is_finite()) {
        Ok(x)
    } else {
        Err(Error::Singular)
    }
}

pub fn predict_mlr(m: &LinearModel, samples: &Dataset) -> Vec<f64> {
    samples.samples.iter().map(|s| m.predict(s.rh, s.t)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub model: String,
    pub metrics: Metrics,
}

/// Side-by-side metrics of the fuzzy model and the linear baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub n: usize,
    pub rows: Vec<ReportRow>,
}

pub fn compare_report(test: &Dataset, rb: &RuleBase, m: &LinearModel) -> Result<CompareReport> {
    if test.is_empty() {
        return Err(Error::TooFewSamples { needed: 3, got: 0 });
    }
    let y: Vec<f64> = test.samples.iter().map(|s| s.hi).collect();
    let fuzzy = predict_batch(test, rb)?;
    let mlr = predict_mlr(m, test);
    Ok(CompareReport {
        n: test.len(),
        rows: vec![
            ReportRow {
                model: "fuzzy".into(),
                metrics: compute_metrics(&y, &fuzzy.values)?,
            },
            ReportRow {
                model: "mlr".into(),
                metrics: compute_metrics(&y, &mlr)?,
            },
        ],
    })
}

pub fn format_p(p: f64) -> String {
    format!("{p:.3}")
}

impl CompareReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<8} {:>8} {:>8} {:>8} {:>14} {:>8}\n",
            "model", "r2", "rmse", "mae", "f_stat", "p"
        );
        for row in &self.rows {
            let m = &row.metrics;
            let _ = writeln!(
                out,
                "{:<8} {:>8.4} {:>8.4} {:>8.4} {:>14.3} {:>8}",
                row.model,
                m.r2,
                m.rmse,
                m.mae,
                m.f_test.f_stat,
                format_p(m.f_test.p_value)
            );
        }
        if let Some(row) = self.rows.first() {
            let f = &row.metrics.f_test;
            let _ = writeln!(out, "n = {}, F df = ({}, {})", self.n, f.df1, f.df2);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,r2,rmse,mae,f_stat,df1,df2,p_value\n");
        for row in &self.rows {
            let m = &row.metrics;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.model, m.r2, m.rmse, m.mae, m.f_test.f_stat, m.f_test.df1, m.f_test.df2, m.f_test.p_value
            );
        }
        out
    }
}
