//! Synthetic observations labelled with the NWS heat-index equation
//! (Steadman's simple formula with the Rothfusz regression above 80 °F).
//!
//! See <https://www.wpc.ncep.noaa.gov/html/heatindex_equation.shtml>.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{Dataset, Sample};
use crate::error::{Error, Result};

/// Seconds between consecutive synthetic readings.
pub const SAMPLE_INTERVAL_S: u64 = 50;

pub fn c_to_f(c: f64) -> f64 {
    c * 9.0 / 5.0 + 32.0
}

pub fn f_to_c(f: f64) -> f64 {
    (f - 32.0) * 5.0 / 9.0
}

/// Heat index in °F from temperature in °F and relative humidity in percent.
pub fn heat_index_fahrenheit(t: f64, rh: f64) -> f64 {
    let simple = 0.5 * (t + 61.0 + (t - 68.0) * 1.2 + rh * 0.094);
    if (simple + t) / 2.0 < 80.0 {
        return simple;
    }
    let mut hi = -42.379 + 2.049_015_23 * t + 10.143_331_27 * rh
        - 0.224_755_41 * t * rh
        - 0.006_837_83 * t * t
        - 0.054_817_17 * rh * rh
        + 0.001_228_74 * t * t * rh
        + 0.000_852_82 * t * rh * rh
        - 0.000_001_99 * t * t * rh * rh;
    if rh < 13.0 && (80.0..=112.0).contains(&t) {
        hi -= ((13.0 - rh) / 4.0) * ((17.0 - (t - 95.0).abs()) / 17.0).sqrt();
    } else if rh > 85.0 && (80.0..=87.0).contains(&t) {
        hi += ((rh - 85.0) / 10.0) * ((87.0 - t) / 5.0);
    }
    hi
}

/// Heat index in °C from temperature in °C and relative humidity in percent.
pub fn heat_index_noaa(t: f64, rh: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&rh) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "heat index needs finite temperature and humidity in [0, 100], got t={t}, rh={rh}"
        )));
    }
    Ok(f_to_c(heat_index_fahrenheit(c_to_f(t), rh)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub rh_range: (f64, f64),
    pub t_range: (f64, f64),
    /// Standard deviation of Gaussian noise added to the heat index, °C.
    pub noise_std: f64,
    /// Bounded random walk instead of independent draws.
    pub walk: bool,
    /// Round humidity and temperature to whole numbers, like a DHT11.
    pub quantize: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            n: 1000,
            seed: 0,
            rh_range: (68.0, 84.0),
            t_range: (23.0, 26.0),
            noise_std: 0.0,
            walk: false,
            quantize: false,
        }
    }
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 {
            return bad("sample count must be at least 1".into());
        }
        for (name, (lo, hi)) in [("rh", self.rh_range), ("t", self.t_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return bad(format!("{name} range [{lo}, {hi}] is degenerate"));
            }
        }
        let (lo, hi) = self.rh_range;
        if lo < 0.0 || hi > 100.0 {
            return bad(format!("rh range [{lo}, {hi}] leaves [0, 100]"));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return bad(format!("noise_std must be non-negative, got {}", self.noise_std));
        }
        Ok(())
    }
}

/// Folds `x` back into `[lo, hi]` by mirroring at the bounds.
fn reflect(mut x: f64, lo: f64, hi: f64) -> f64 {
    let width = hi - lo;
    for _ in 0..64 {
        if x < lo {
            x = 2.0 * lo - x;
        } else if x > hi {
            x = 2.0 * hi - x;
        } else {
            return x;
        }
    }
    lo + (x - lo).rem_euclid(width)
}

struct Channel {
    lo: f64,
    hi: f64,
    value: f64,
    step: Normal<f64>,
}

impl Channel {
    fn new(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> Self {
        Self {
            lo,
            hi,
            value: rng.gen_range(lo..=hi),
            // About 2% of the range per reading.
            step: Normal::new(0.0, 0.02 * (hi - lo)).expect("positive std"),
        }
    }

    fn next(&mut self, rng: &mut ChaCha8Rng, walk: bool) -> f64 {
        self.value = if walk {
            reflect(self.value + self.step.sample(rng), self.lo, self.hi)
        } else {
            rng.gen_range(self.lo..=self.hi)
        };
        self.value
    }
}

/// Generates `cfg.n` labelled readings with timestamps 0, 50, 100, … seconds.
pub fn generate(cfg: &GeneratorConfig) -> Result<Dataset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let noise = (cfg.noise_std > 0.0)
        .then(|| Normal::new(0.0, cfg.noise_std).expect("validated std"));
    let mut rh_ch = Channel::new(&mut rng, cfg.rh_range);
    let mut t_ch = Channel::new(&mut rng, cfg.t_range);

    let mut samples = Vec::with_capacity(cfg.n);
    let mut stamps = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        let mut rh = rh_ch.next(&mut rng, cfg.walk);
        let mut t = t_ch.next(&mut rng, cfg.walk);
        if cfg.quantize {
            rh = rh.round().clamp(cfg.rh_range.0.ceil(), cfg.rh_range.1.floor());
            t = t.round().clamp(cfg.t_range.0.ceil(), cfg.t_range.1.floor());
        }
        let mut hi = heat_index_noaa(t, rh)?;
        if let Some(n) = &noise {
            hi += n.sample(&mut rng);
        }
        samples.push(Sample::new(rh, t, hi));
        stamps.push((i as u64 * SAMPLE_INTERVAL_S).to_string());
    }
    Ok(Dataset {
        samples,
        timestamps: Some(stamps),
        source: format!("synthetic(n={}, seed={})", cfg.n, cfg.seed),
    })
}
