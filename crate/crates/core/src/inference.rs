//! Zero-order Sugeno inference over a learned rule base, plus the grid
//! search that tunes the per-region consequent centers.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fuzzy::{Region, Universe};
use crate::rules::RuleBase;

/// Heat-index value of each consequent region: the full-membership point of
/// its triangle plus a tuned offset in [−1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsequentCenters {
    pub base_low: f64,
    pub base_mid: f64,
    pub base_high: f64,
    pub offset_low: f64,
    pub offset_mid: f64,
    pub offset_high: f64,
}

impl ConsequentCenters {
    /// Centers at the universe minimum, midpoint and maximum, with zero offsets.
    pub fn new(hi_universe: &Universe) -> Self {
        Self {
            base_low: hi_universe.lo(),
            base_mid: hi_universe.midpoint(),
            base_high: hi_universe.hi(),
            offset_low: 0.0,
            offset_mid: 0.0,
            offset_high: 0.0,
        }
    }

    pub fn with_offsets(&self, offsets: [f64; 3]) -> Result<Self> {
        if let Some(o) = offsets.iter().find(|o| !(-1.0..=1.0).contains(*o)) {
            return Err(Error::InvalidParameter(format!(
                "consequent offset {o} outside [-1, 1]"
            )));
        }
        Ok(Self {
            offset_low: offsets[0],
            offset_mid: offsets[1],
            offset_high: offsets[2],
            ..*self
        })
    }

    pub fn base(&self, r: Region) -> f64 {
        match r {
            Region::Low => self.base_low,
            Region::Mid => self.base_mid,
            Region::High => self.base_high,
        }
    }

    pub fn offset(&self, r: Region) -> f64 {
        match r {
            Region::Low => self.offset_low,
            Region::Mid => self.offset_mid,
            Region::High => self.offset_high,
        }
    }

    pub fn offsets(&self) -> [f64; 3] {
        [self.offset_low, self.offset_mid, self.offset_high]
    }

    pub fn effective(&self, r: Region) -> f64 {
        self.base(r) + self.offset(r)
    }
}

/// Degree of fulfillment of each rule, in rule-base order.
#[derive(Debug, Clone, PartialEq)]
pub struct Fulfillment(pub Vec<f64>);

impl Fulfillment {
    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Product of the two antecedent grades for every rule. Inputs are clamped
/// into the stored universes.
pub fn fulfillment(rh: f64, t: f64, rb: &RuleBase) -> Fulfillment {
    let g_rh = rb.partitions().rh.fuzzify(rh);
    let g_t = rb.partitions().t.fuzzify(t);
    Fulfillment(
        rb.rules()
            .iter()
            .map(|r| g_rh.get(r.rh) * g_t.get(r.t))
            .collect(),
    )
}

/// Weighted average `Σ Dʳ·cʳ / Σ Dʳ`, or `None` when nothing fires.
///
/// Each weight is normalized before multiplying so that a lone firing rule
/// returns its center bit for bit.
pub fn defuzzify(fulfillment: &[f64], centers: &[f64]) -> Option<f64> {
    debug_assert_eq!(fulfillment.len(), centers.len());
    let total: f64 = fulfillment.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut acc = 0.0;
    for (d, c) in fulfillment.iter().zip(centers).filter(|(d, _)| **d > 0.0) {
        acc += (d / total) * c;
        lo = lo.min(*c);
        hi = hi.max(*c);
    }
    // rounding in the weighted sum can step one ulp past the firing centers
    Some(acc.clamp(lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub hi: f64,
    pub fallback_used: bool,
}

/// Predicts the heat index for one input.
///
/// When no rule fires, the consequent of the rule with the largest sum of
/// antecedent grades is used instead and `fallback_used` is set.
pub fn predict_one(rh: f64, t: f64, rb: &RuleBase) -> Result<Prediction> {
    if rb.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    let d = fulfillment(rh, t, rb);
    let centers: Vec<f64> = rb
        .rules()
        .iter()
        .map(|r| rb.centers().effective(r.hi))
        .collect();
    if let Some(hi) = defuzzify(&d.0, &centers) {
        return Ok(Prediction {
            hi,
            fallback_used: false,
        });
    }
    let rule = fallback_rule(rh, t, rb);
    Ok(Prediction {
        hi: rb.centers().effective(rule.hi),
        fallback_used: true,
    })
}

fn fallback_rule(rh: f64, t: f64, rb: &RuleBase) -> crate::rules::FuzzyRule {
    let g_rh = rb.partitions().rh.fuzzify(rh);
    let g_t = rb.partitions().t.fuzzify(t);
    let mut best = rb.rules()[0];
    let mut best_score = g_rh.get(best.rh) + g_t.get(best.t);
    for r in &rb.rules()[1..] {
        let score = g_rh.get(r.rh) + g_t.get(r.t);
        if score > best_score {
            best = *r;
            best_score = score;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BatchPrediction {
    pub values: Vec<f64>,
    pub fallback: Vec<bool>,
}

impl BatchPrediction {
    pub fn fallback_count(&self) -> usize {
        self.fallback.iter().filter(|f| **f).count()
    }
}

/// Predicts every (rh, t) pair in order.
pub fn predict_inputs(inputs: &[(f64, f64)], rb: &RuleBase) -> Result<BatchPrediction> {
    if rb.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    let mut out = BatchPrediction {
        values: Vec::with_capacity(inputs.len()),
        fallback: Vec::with_capacity(inputs.len()),
    };
    for &(rh, t) in inputs {
        let p = predict_one(rh, t, rb)?;
        out.values.push(p.hi);
        out.fallback.push(p.fallback_used);
    }
    Ok(out)
}

/// Predicts every sample of the dataset, ignoring its recorded heat index.
pub fn predict_batch(samples: &Dataset, rb: &RuleBase) -> Result<BatchPrediction> {
    let inputs: Vec<(f64, f64)> = samples.samples.iter().map(|s| (s.rh, s.t)).collect();
    predict_inputs(&inputs, rb)
}

/// Offsets examined by [`optimize_offsets`]: every multiple of `step` in
/// [−1, 1], which always includes 0.
pub fn offset_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "offset step must be positive, got {step}"
        )));
    }
    let k = (1.0 / step + 1e-9).floor() as i64;
    if k > 200 {
        return Err(Error::InvalidParameter(format!(
            "offset step {step} is too fine (at most 401 values per axis)"
        )));
    }
    Ok((-k..=k).map(|i| (i as f64 * step).clamp(-1.0, 1.0)).collect())
}

/// Normalized per-region weights of one input: `w[j]` is the share of the
/// total fulfillment carried by rules whose consequent is region `j`. Falls
/// back to a one-hot vector when nothing fires.
fn region_weights(rh: f64, t: f64, rb: &RuleBase) -> [f64; 3] {
    let d = fulfillment(rh, t, rb);
    let total = d.total();
    let mut w = [0.0; 3];
    if total > 0.0 {
        for (r, dr) in rb.rules().iter().zip(&d.0) {
            w[r.hi.index()] += dr / total;
        }
    } else {
        w[fallback_rule(rh, t, rb).hi.index()] = 1.0;
    }
    w
}

/// Exhaustive search over offset triples in [−1, 1]³ on a grid of `step`.
///
/// The winner maximizes training R², which is the same as minimizing the sum
/// of squared errors; remaining ties go to the smaller offset magnitude and
/// then to the lexicographically smallest triple. Because every prediction
/// is linear in the offsets, the error of each candidate is evaluated in
/// constant time from sufficient statistics gathered in one pass.
pub fn optimize_offsets(rb: &RuleBase, train: &Dataset, step: f64) -> Result<RuleBase> {
    if rb.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    if train.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let grid = offset_grid(step)?;
    let base = rb.centers().with_offsets([0.0; 3])?;
    let base_centers = Region::ALL.map(|r| base.base(r));

    // SSE(o) = Σe² − 2·bᵀo + oᵀAo with e = y − ŷ₀, b = Σ e·w, A = Σ w·wᵀ.
    let mut see = 0.0;
    let mut b = [0.0; 3];
    let mut a = [[0.0; 3]; 3];
    for s in &train.samples {
        let w = region_weights(s.rh, s.t, rb);
        let pred0: f64 = w.iter().zip(&base_centers).map(|(wj, c)| wj * c).sum();
        let e = s.hi - pred0;
        see += e * e;
        for j in 0..3 {
            b[j] += e * w[j];
            for l in 0..3 {
                a[j][l] += w[j] * w[l];
            }
        }
    }
    let sse = |o: [f64; 3]| {
        let mut q = see;
        for j in 0..3 {
            q -= 2.0 * b[j] * o[j];
            for l in 0..3 {
                q += o[j] * a[j][l] * o[l];
            }
        }
        q
    };

    let half = (grid.len() / 2) as i64;
    let magnitude = |idx: [usize; 3]| -> i64 {
        idx.iter().map(|&i| (i as i64 - half).pow(2)).sum()
    };
    let mut best_idx = [half as usize; 3];
    let mut best_sse = sse([0.0; 3]);
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            for k in 0..grid.len() {
                let idx = [i, j, k];
                let q = sse([grid[i], grid[j], grid[k]]);
                let better = q < best_sse
                    || (q == best_sse
                        && (magnitude(idx), idx) < (magnitude(best_idx), best_idx));
                if better {
                    best_sse = q;
                    best_idx = idx;
                }
            }
        }
    }

    let offsets = best_idx.map(|i| grid[i]);
    let tuned = rb.clone().with_centers(base.with_offsets(offsets)?);
    let untuned = rb.clone().with_centers(base);
    // Confirm against direct evaluation so rounding in the expanded quadratic
    // can never leave the model worse than the untuned centers.
    if direct_sse(&tuned, train)? > direct_sse(&untuned, train)? {
        return Ok(untuned);
    }
    Ok(tuned)
}

fn direct_sse(rb: &RuleBase, d: &Dataset) -> Result<f64> {
    let preds = predict_batch(d, rb)?;
    Ok(d
        .samples
        .iter()
        .zip(&preds.values)
        .map(|(s, p)| (s.hi - p).powi(2))
        .sum())
}
