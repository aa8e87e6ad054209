//! Observation records and the data-preparation steps that precede model
//! fitting: CSV ingest, consistency filtering, IQR outlier removal,
//! descriptive statistics and the seeded train/test split.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One observation: relative humidity (%), temperature (°C) and heat index (°C).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub rh: f64,
    pub t: f64,
    pub hi: f64,
}

impl Sample {
    pub fn new(rh: f64, t: f64, hi: f64) -> Self {
        Self { rh, t, hi }
    }

    /// True when all fields are finite and humidity is a valid percentage.
    pub fn is_consistent(&self) -> bool {
        self.rh.is_finite()
            && self.t.is_finite()
            && self.hi.is_finite()
            && (0.0..=100.0).contains(&self.rh)
    }

    pub fn get(&self, attr: Attribute) -> f64 {
        match attr {
            Attribute::Rh => self.rh,
            Attribute::T => self.t,
            Attribute::Hi => self.hi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attribute {
    Rh,
    T,
    Hi,
}

impl Attribute {
    pub const ALL: [Attribute; 3] = [Attribute::Rh, Attribute::T, Attribute::Hi];

    pub fn label(self) -> &'static str {
        match self {
            Attribute::Rh => "R. Humidity",
            Attribute::T => "Temperature",
            Attribute::Hi => "Heat Index",
        }
    }
}

/// An ordered collection of samples.
///
/// `timestamps` is populated when the data came from (or is destined for) the
/// four-column layout and stays aligned with `samples` through every
/// row-selecting operation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    pub samples: Vec<Sample>,
    pub timestamps: Option<Vec<String>>,
    pub source: String,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>, source: impl Into<String>) -> Self {
        Self {
            samples,
            timestamps: None,
            source: source.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn column(&self, attr: Attribute) -> Vec<f64> {
        self.samples.iter().map(|s| s.get(attr)).collect()
    }

    /// Rows at `indices`, in the given order.
    pub fn select(&self, indices: &[usize], source: impl Into<String>) -> Dataset {
        Dataset {
            samples: indices.iter().map(|&i| self.samples[i]).collect(),
            timestamps: self
                .timestamps
                .as_ref()
                .map(|ts| indices.iter().map(|&i| ts[i].clone()).collect()),
            source: source.into(),
        }
    }
}

/// How to treat the first CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Header {
    Present,
    Absent,
    /// A header is assumed when the first row's value fields fail to parse.
    Auto,
}

pub fn parse_csv(path: impl AsRef<Path>, header: Header) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, header, path.display().to_string()).map_err(|e| match e {
        Error::Csv { source, .. } => Error::Csv {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// Reads `rh,t,hi` or `timestamp,rh,t,hi` rows. The layout is fixed by the
/// first data row and every later row must match it.
pub fn read_csv<R: Read>(reader: R, header: Header, source: impl Into<String>) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let mut samples = Vec::new();
    let mut timestamps: Vec<String> = Vec::new();
    let mut width: Option<usize> = None;
    let mut first = true;

    for record in rdr.records() {
        let record = record.map_err(|source| Error::Csv {
            path: Default::default(),
            source,
        })?;
        let row = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }

        if first {
            first = false;
            let skip = match header {
                Header::Present => true,
                Header::Absent => false,
                Header::Auto => {
                    let n = record.len();
                    n < 3 || record.iter().skip(n - 3).any(|f| f.parse::<f64>().is_err())
                }
            };
            if skip {
                continue;
            }
        }

        let n = record.len();
        if n != 3 && n != 4 {
            return Err(Error::Row {
                row,
                message: format!("expected 3 or 4 fields, found {n}"),
            });
        }
        match width {
            None => width = Some(n),
            Some(w) if w != n => {
                return Err(Error::Row {
                    row,
                    message: format!("expected {w} fields like earlier rows, found {n}"),
                })
            }
            _ => {}
        }

        let offset = n - 3;
        let mut values = [0.0; 3];
        for (slot, field) in values.iter_mut().zip(record.iter().skip(offset)) {
            *slot = field.parse::<f64>().map_err(|_| Error::Row {
                row,
                message: format!("non-numeric field '{field}'"),
            })?;
        }
        if offset == 1 {
            timestamps.push(record[0].to_string());
        }
        samples.push(Sample::new(values[0], values[1], values[2]));
    }

    Ok(Dataset {
        samples,
        timestamps: (width == Some(4)).then_some(timestamps),
        source: source.into(),
    })
}

/// Writes the dataset in the layout it was read in: four columns when
/// timestamps are present, three otherwise.
pub fn write_csv<W: Write>(d: &Dataset, writer: W) -> Result<()> {
    let to_csv = |source| Error::Csv {
        path: Default::default(),
        source,
    };
    let mut w = csv::Writer::from_writer(writer);
    match &d.timestamps {
        Some(ts) => {
            w.write_record(["timestamp", "rh", "t", "hi"]).map_err(to_csv)?;
            for (stamp, s) in ts.iter().zip(&d.samples) {
                w.write_record([
                    stamp.clone(),
                    s.rh.to_string(),
                    s.t.to_string(),
                    s.hi.to_string(),
                ])
                .map_err(to_csv)?;
            }
        }
        None => {
            w.write_record(["rh", "t", "hi"]).map_err(to_csv)?;
            for s in &d.samples {
                w.write_record([s.rh.to_string(), s.t.to_string(), s.hi.to_string()])
                    .map_err(to_csv)?;
            }
        }
    }
    w.flush().map_err(|e| to_csv(e.into()))?;
    Ok(())
}

pub fn save_csv(d: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(d, file).map_err(|e| match e {
        Error::Csv { source, .. } => Error::Csv {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// Drops rows with non-finite values or humidity outside [0, 100].
pub fn drop_inconsistent(d: &Dataset) -> (Dataset, usize) {
    let keep: Vec<usize> = (0..d.len())
        .filter(|&i| d.samples[i].is_consistent())
        .collect();
    let removed = d.len() - keep.len();
    (d.select(&keep, d.source.clone()), removed)
}

/// Quantile of an ascending slice by linear interpolation at position q·(n−1).
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Tukey fences `[Q1 − k·IQR, Q3 + k·IQR]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fences {
    pub q1: f64,
    pub q3: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Fences {
    pub fn from_values(values: &[f64], k: f64) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let q1 = quantile_sorted(&sorted, 0.25);
        let q3 = quantile_sorted(&sorted, 0.75);
        let iqr = q3 - q1;
        Self {
            q1,
            q3,
            lower: q1 - k * iqr,
            upper: q3 + k * iqr,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}

/// Per-attribute fences over the whole dataset, in `Attribute::ALL` order.
pub fn iqr_fences(d: &Dataset, k: f64) -> Result<[Fences; 3]> {
    if d.len() < 4 {
        return Err(Error::TooFewSamples {
            needed: 4,
            got: d.len(),
        });
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "IQR multiplier must be positive, got {k}"
        )));
    }
    Ok(Attribute::ALL.map(|a| Fences::from_values(&d.column(a), k)))
}

/// Removes every row with any attribute outside its IQR fences. Returns the
/// surviving rows in input order and the number removed.
pub fn iqr_clean(d: &Dataset, k: f64) -> Result<(Dataset, usize)> {
    let fences = iqr_fences(d, k)?;
    let keep: Vec<usize> = (0..d.len())
        .filter(|&i| {
            let s = &d.samples[i];
            Attribute::ALL
                .iter()
                .zip(&fences)
                .all(|(&a, f)| f.contains(s.get(a)))
        })
        .collect();
    let removed = d.len() - keep.len();
    Ok((d.select(&keep, d.source.clone()), removed))
}

/// Shuffles row indices with a ChaCha8 generator seeded from `seed` and takes
/// the first ⌊fraction·n⌋ as the training set.
pub fn split_train_test(d: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if d.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: d.len(),
        });
    }
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let mut indices: Vec<usize> = (0..d.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);
    // Guard against products like 0.7·n landing a hair below an integer.
    let n_train = (train_fraction * d.len() as f64 + 1e-9).floor() as usize;
    let (train_idx, test_idx) = indices.split_at(n_train.min(d.len()));
    Ok((
        d.select(train_idx, format!("{} (train)", d.source)),
        d.select(test_idx, format!("{} (test)", d.source)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttributeStats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl AttributeStats {
    /// Mean, sample standard deviation (n − 1), min and max.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: values.len(),
            });
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        let (min, max) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        Ok(Self {
            // Rounding can push the mean of a near-constant column just outside [min, max].
            mean: mean.clamp(min, max),
            std: (ss / (n - 1.0)).sqrt(),
            min,
            max,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub rh: AttributeStats,
    pub t: AttributeStats,
    pub hi: AttributeStats,
}

impl SummaryStats {
    pub fn get(&self, attr: Attribute) -> &AttributeStats {
        match attr {
            Attribute::Rh => &self.rh,
            Attribute::T => &self.t,
            Attribute::Hi => &self.hi,
        }
    }
}

pub fn describe(d: &Dataset) -> Result<SummaryStats> {
    Ok(SummaryStats {
        rh: AttributeStats::from_values(&d.column(Attribute::Rh))?,
        t: AttributeStats::from_values(&d.column(Attribute::T))?,
        hi: AttributeStats::from_values(&d.column(Attribute::Hi))?,
    })
}

/// Product-moment correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance("x"));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance("y"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn constant_rows(hi: &[f64]) -> Dataset {
        Dataset::new(hi.iter().map(|&h| Sample::new(76.0, 24.5, h)).collect(), "test")
    }

    #[test]
    fn parses_three_column_row() {
        let d = read_csv("76.0,24.5,25.0\n".as_bytes(), Header::Absent, "s").unwrap();
        assert_eq!(d.samples, vec![Sample::new(76.0, 24.5, 25.0)]);
        assert!(d.timestamps.is_none());
    }

    #[test]
    fn parses_timestamped_row() {
        let d = read_csv(
            "2022-10-01T00:00:50,68,23,23.34\n".as_bytes(),
            Header::Absent,
            "s",
        )
        .unwrap();
        assert_eq!(d.samples, vec![Sample::new(68.0, 23.0, 23.34)]);
        assert_eq!(d.timestamps.unwrap(), vec!["2022-10-01T00:00:50"]);
    }

    #[test]
    fn non_numeric_field_names_row() {
        let err = read_csv("abc,24,25\n".as_bytes(), Header::Absent, "s").unwrap_err();
        assert!(matches!(err, Error::Row { row: 1, .. }), "{err}");

        let err = read_csv("rh,t,hi\n70,24,25\nabc,24,25\n".as_bytes(), Header::Auto, "s")
            .unwrap_err();
        assert!(err.to_string().starts_with("row 3"), "{err}");
    }

    #[test]
    fn auto_header_detection() {
        let d = read_csv("rh,t,hi\n70,24,25\n".as_bytes(), Header::Auto, "s").unwrap();
        assert_eq!(d.len(), 1);
        let d = read_csv("70,24,25\n71,24,25\n".as_bytes(), Header::Auto, "s").unwrap();
        assert_eq!(d.len(), 2);
        let d = read_csv(
            "timestamp,rh,t,hi\n0,70,24,25\n".as_bytes(),
            Header::Auto,
            "s",
        )
        .unwrap();
        assert_eq!(d.timestamps.unwrap(), vec!["0"]);
    }

    #[test]
    fn empty_input_is_empty_dataset() {
        let d = read_csv("".as_bytes(), Header::Auto, "s").unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn mixed_layouts_rejected() {
        let err = read_csv("70,24,25\n0,70,24,25\n".as_bytes(), Header::Absent, "s").unwrap_err();
        assert!(matches!(err, Error::Row { row: 2, .. }));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = parse_csv("/nonexistent/data.csv", Header::Auto).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn write_then_read_keeps_layout() {
        let mut d = Dataset::new(
            vec![Sample::new(70.5, 24.25, 24.9), Sample::new(80.0, 25.0, 25.4)],
            "s",
        );
        d.timestamps = Some(vec!["0".into(), "50".into()]);
        let mut buf = Vec::new();
        write_csv(&d, &mut buf).unwrap();
        let back = read_csv(buf.as_slice(), Header::Auto, "s").unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn inconsistent_rows_dropped() {
        let d = Dataset::new(
            vec![
                Sample::new(70.0, 24.0, 25.0),
                Sample::new(f64::NAN, 24.0, 25.0),
                Sample::new(120.0, 24.0, 25.0),
                Sample::new(70.0, f64::INFINITY, 25.0),
            ],
            "s",
        );
        let (clean, removed) = drop_inconsistent(&d);
        assert_eq!(removed, 3);
        assert_eq!(clean.samples, vec![Sample::new(70.0, 24.0, 25.0)]);
    }

    #[test]
    fn iqr_removes_single_outlier() {
        let hi: Vec<f64> = (1..=9).map(f64::from).chain([100.0]).collect();
        let d = constant_rows(&hi);
        let fences = iqr_fences(&d, 1.5).unwrap();
        let f = fences[2];
        assert!((f.q1 - 3.25).abs() < 1e-12);
        assert!((f.q3 - 7.75).abs() < 1e-12);
        assert!((f.upper - 14.5).abs() < 1e-12);
        let (clean, removed) = iqr_clean(&d, 1.5).unwrap();
        assert_eq!(removed, 1);
        assert_eq!(clean.len(), 9);
        assert!(clean.samples.iter().all(|s| s.hi != 100.0));
    }

    #[test]
    fn iqr_constant_data_keeps_everything() {
        let d = constant_rows(&[5.0; 6]);
        let (clean, removed) = iqr_clean(&d, 1.5).unwrap();
        assert_eq!(removed, 0);
        assert_eq!(clean, d);
    }

    #[test]
    fn iqr_in_range_data_unchanged() {
        let d = constant_rows(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let (clean, removed) = iqr_clean(&d, 1.5).unwrap();
        assert_eq!(removed, 0);
        assert_eq!(clean.samples, d.samples);
    }

    #[test]
    fn iqr_errors() {
        assert!(matches!(
            iqr_clean(&constant_rows(&[1.0, 2.0, 3.0]), 1.5),
            Err(Error::TooFewSamples { needed: 4, got: 3 })
        ));
        assert!(iqr_clean(&constant_rows(&[1.0; 4]), 0.0).is_err());
    }

    #[test]
    fn split_sizes_match_reported_counts() {
        let d = constant_rows(&vec![25.0; 19717]);
        let (train, test) = split_train_test(&d, 0.7, 1).unwrap();
        assert_eq!(train.len(), 13801);
        assert_eq!(test.len(), 5916);
    }

    #[test]
    fn split_is_deterministic_and_disjoint() {
        let d = constant_rows(&(0..10).map(f64::from).collect::<Vec<_>>());
        let a = split_train_test(&d, 0.7, 42).unwrap();
        let b = split_train_test(&d, 0.7, 42).unwrap();
        assert_eq!(a, b);

        let (train, test) = split_train_test(&d, 0.5, 3).unwrap();
        assert_eq!((train.len(), test.len()), (5, 5));
        let mut all: Vec<f64> = train.column(Attribute::Hi);
        all.extend(test.column(Attribute::Hi));
        all.sort_by(f64::total_cmp);
        assert_eq!(all, (0..10).map(f64::from).collect::<Vec<_>>());
    }

    #[test]
    fn split_errors() {
        let d = constant_rows(&[1.0, 2.0]);
        assert!(split_train_test(&d, 0.0, 1).is_err());
        assert!(split_train_test(&d, 1.0, 1).is_err());
        assert!(split_train_test(&constant_rows(&[1.0]), 0.5, 1).is_err());
    }

    #[test]
    fn describe_examples() {
        let s = AttributeStats::from_values(&[23.34, 25.70]).unwrap();
        assert_eq!((s.min, s.max), (23.34, 25.70));
        assert!((s.mean - 24.52).abs() < 1e-12);

        assert_eq!(AttributeStats::from_values(&[5.0; 3]).unwrap().std, 0.0);

        let s = AttributeStats::from_values(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std, 1.0);

        assert!(describe(&constant_rows(&[1.0])).is_err());
    }

    #[test]
    fn pearson_examples() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[6.0, 4.0, 2.0]).unwrap() + 1.0).abs() < 1e-12);
        let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((r - 0.8).abs() < 1e-12);
    }

    #[test]
    fn pearson_errors() {
        assert!(matches!(
            pearson(&[1.0, 1.0], &[1.0, 2.0]),
            Err(Error::ZeroVariance(_))
        ));
        assert!(matches!(
            pearson(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn pearson_of_affine_map_is_sign(
            x in prop::collection::vec(-1e3f64..1e3, 2..40),
            a in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
            b in -100.0f64..100.0,
        ) {
            let spread = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - x.iter().cloned().fold(f64::INFINITY, f64::min);
            prop_assume!(spread > 1e-3);
            let y: Vec<f64> = x.iter().map(|v| a * v + b).collect();
            let r = pearson(&x, &y).unwrap();
            prop_assert!((r - a.signum()).abs() < 1e-9);
        }

        #[test]
        fn survivors_lie_within_original_fences(
            rows in prop::collection::vec((0.0f64..100.0, -10.0f64..50.0, -10.0f64..60.0), 4..60),
            k in 0.5f64..3.0,
        ) {
            let d = Dataset::new(rows.iter().map(|&(rh, t, hi)| Sample::new(rh, t, hi)).collect(), "p");
            let fences = iqr_fences(&d, k).unwrap();
            let (clean, _) = iqr_clean(&d, k).unwrap();
            for s in &clean.samples {
                for (a, f) in Attribute::ALL.iter().zip(&fences) {
                    prop_assert!(f.contains(s.get(*a)));
                }
            }
        }

        #[test]
        fn describe_bounds_every_value(
            rows in prop::collection::vec((0.0f64..100.0, -10.0f64..50.0, -10.0f64..60.0), 2..60),
        ) {
            let d = Dataset::new(rows.iter().map(|&(rh, t, hi)| Sample::new(rh, t, hi)).collect(), "p");
            let stats = describe(&d).unwrap();
            for a in Attribute::ALL {
                let st = stats.get(a);
                prop_assert!(st.std >= 0.0);
                prop_assert!(st.min <= st.mean && st.mean <= st.max);
                for s in &d.samples {
                    prop_assert!(st.min <= s.get(a) && s.get(a) <= st.max);
                }
            }
        }

        #[test]
        fn split_partitions_input(n in 2usize..80, frac in 0.05f64..0.95, seed in any::<u64>()) {
            let d = constant_rows(&(0..n).map(|i| i as f64).collect::<Vec<_>>());
            let (train, test) = split_train_test(&d, frac, seed).unwrap();
            prop_assert_eq!(train.len(), (frac * n as f64 + 1e-9).floor() as usize);
            let mut all = train.column(Attribute::Hi);
            all.extend(test.column(Attribute::Hi));
            all.sort_by(f64::total_cmp);
            prop_assert_eq!(all, d.column(Attribute::Hi));
        }
    }
}
