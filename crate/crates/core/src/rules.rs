//! Wang-Mendel rule generation: every training sample proposes one rule from
//! its maximum-membership regions, and conflicting proposals for the same
//! antecedent are resolved by keeping the highest-degree one.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::{Attribute, Dataset, Sample};
use crate::error::{Error, Result};
use crate::fuzzy::{classify_max, Partition, Region, Universe};
use crate::inference::ConsequentCenters;

/// Current model file format version.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzyRule {
    pub rh: Region,
    pub t: Region,
    pub hi: Region,
    pub degree: f64,
}

impl FuzzyRule {
    pub fn antecedent(&self) -> (Region, Region) {
        (self.rh, self.t)
    }

    /// Proposition text, e.g. "IF relative humidity is high and temperature
    /// is low THEN heat index is low".
    pub fn proposition(&self) -> String {
        format!(
            "IF relative humidity is {} and temperature is {} THEN heat index is {}",
            self.rh, self.t, self.hi
        )
    }
}

/// One partition per variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Partitions {
    pub rh: Partition,
    pub t: Partition,
    pub hi: Partition,
}

impl Partitions {
    /// Partitions over the `[min, max]` universes of the dataset's columns.
    pub fn from_data(d: &Dataset) -> Result<Self> {
        let part = |a| Universe::from_data(&d.column(a)).map(Partition::new);
        Ok(Self {
            rh: part(Attribute::Rh)?,
            t: part(Attribute::T)?,
            hi: part(Attribute::Hi)?,
        })
    }
}

/// A learned model: partitions, at most one rule per antecedent pair, and the
/// consequent centers used for defuzzification.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    partitions: Partitions,
    rules: Vec<FuzzyRule>,
    centers: ConsequentCenters,
}

impl RuleBase {
    /// Validates the rules and stores them ordered by antecedent.
    pub fn new(
        partitions: Partitions,
        mut rules: Vec<FuzzyRule>,
        centers: ConsequentCenters,
    ) -> Result<Self> {
        rules.sort_by_key(FuzzyRule::antecedent);
        for pair in rules.windows(2) {
            if pair[0].antecedent() == pair[1].antecedent() {
                let (rh, t) = pair[0].antecedent();
                return Err(Error::DuplicateRule(rh, t));
            }
        }
        if let Some(r) = rules.iter().find(|r| !(r.degree > 0.0 && r.degree <= 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "rule degree {} outside (0, 1]",
                r.degree
            )));
        }
        Ok(Self {
            partitions,
            rules,
            centers,
        })
    }

    pub fn partitions(&self) -> &Partitions {
        &self.partitions
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn centers(&self) -> &ConsequentCenters {
        &self.centers
    }

    pub fn with_centers(mut self, centers: ConsequentCenters) -> Self {
        self.centers = centers;
        self
    }

    pub fn rule_for(&self, rh: Region, t: Region) -> Option<&FuzzyRule> {
        self.rules.iter().find(|r| r.antecedent() == (rh, t))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// The rule proposed by a single sample: the maximum-membership region of each
/// variable, with degree equal to the product of those three grades.
pub fn rule_from_sample(s: &Sample, partitions: &Partitions) -> Result<FuzzyRule> {
    let g_rh = partitions.rh.fuzzify(s.rh);
    let g_t = partitions.t.fuzzify(s.t);
    let g_hi = partitions.hi.fuzzify(s.hi);
    let rh = classify_max(&g_rh)?;
    let t = classify_max(&g_t)?;
    let hi = classify_max(&g_hi)?;
    Ok(FuzzyRule {
        rh,
        t,
        hi,
        degree: g_rh.get(rh) * g_t.get(t) * g_hi.get(hi),
    })
}

/// Learns a rule base from training data. Universes come from the training
/// columns; among rules sharing an antecedent the highest degree wins, with
/// the earliest sample kept on equal degrees.
pub fn learn_rules(train: &Dataset) -> Result<RuleBase> {
    let partitions = Partitions::from_data(train)?;
    let mut best: [Option<FuzzyRule>; 9] = [None; 9];
    for s in &train.samples {
        let rule = rule_from_sample(s, &partitions)?;
        if rule.degree <= 0.0 {
            continue;
        }
        let slot = &mut best[rule.rh.index() * 3 + rule.t.index()];
        match slot {
            Some(kept) if kept.degree >= rule.degree => {}
            _ => *slot = Some(rule),
        }
    }
    let rules = best.into_iter().flatten().collect();
    let centers = ConsequentCenters::new(partitions.hi.universe());
    RuleBase::new(partitions, rules, centers)
}

/// Rules ordered by descending degree (antecedent order on ties), one
/// proposition per line with the degree to six decimals.
pub fn render_rules(rb: &RuleBase) -> Result<String> {
    if rb.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    let mut rules = rb.rules().to_vec();
    rules.sort_by(|a, b| b.degree.total_cmp(&a.degree));
    let mut out = String::new();
    for r in &rules {
        out.push_str(&format!("{} (degree {:.6})\n", r.proposition(), r.degree));
    }
    Ok(out)
}

/// Table-style listing: humidity, temperature, heat index and degree columns.
pub fn render_rule_table(rb: &RuleBase) -> Result<String> {
    if rb.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    let mut out = format!(
        "{:<12} {:<12} {:<12} {:>8}\n",
        "R. Humidity", "Temperature", "Heat Index", "Degree"
    );
    for r in rb.rules() {
        out.push_str(&format!(
            "{:<12} {:<12} {:<12} {:>8.6}\n",
            r.rh, r.t, r.hi, r.degree
        ));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    partitions: Partitions,
    centers: ConsequentCenters,
    rules: Vec<FuzzyRule>,
}

#[derive(Deserialize)]
struct VersionProbe {
    format_version: u32,
}

/// Serializes a rule base as TOML with a leading version field.
pub fn model_to_string(rb: &RuleBase) -> Result<String> {
    let file = ModelFile {
        format_version: FORMAT_VERSION,
        partitions: rb.partitions,
        centers: rb.centers,
        rules: rb.rules.clone(),
    };
    let body = toml::to_string(&file)
        .map_err(|e| Error::InvalidParameter(format!("cannot serialize model: {e}")))?;
    Ok(format!("# heatfuzz rule base\n{body}"))
}

pub fn model_from_str(text: &str) -> std::result::Result<RuleBase, ModelError> {
    let probe: VersionProbe = toml::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?;
    if probe.format_version != FORMAT_VERSION {
        return Err(ModelError::Version(probe.format_version));
    }
    let file: ModelFile = toml::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?;
    let expected = ConsequentCenters::new(file.partitions.hi.universe())
        .with_offsets(file.centers.offsets())
        .map_err(|e| ModelError::Parse(e.to_string()))?;
    if expected != file.centers {
        return Err(ModelError::Parse(
            "consequent centers do not match the heat-index universe".into(),
        ));
    }
    RuleBase::new(file.partitions, file.rules, file.centers)
        .map_err(|e| ModelError::Parse(e.to_string()))
}

/// Failure to decode a model file, before a path is attached.
#[derive(Debug)]
pub enum ModelError {
    Parse(String),
    Version(u32),
}

pub fn save_model(rb: &RuleBase, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, model_to_string(rb)?).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<RuleBase> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    model_from_str(&text).map_err(|e| match e {
        ModelError::Version(found) => Error::Version {
            found,
            expected: FORMAT_VERSION,
        },
        ModelError::Parse(message) => Error::Model {
            path: path.to_path_buf(),
            message,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table2_partitions() -> Partitions {
        let p = |lo, hi| Partition::new(Universe::new(lo, hi).unwrap());
        Partitions {
            rh: p(68.0, 84.0),
            t: p(23.0, 26.0),
            hi: p(23.34, 25.70),
        }
    }

    #[test]
    fn rule_from_sample_examples() {
        let parts = table2_partitions();
        let r = rule_from_sample(&Sample::new(70.0, 23.0, 23.34), &parts).unwrap();
        assert_eq!((r.rh, r.t, r.hi), (Region::Low, Region::Low, Region::Low));
        assert_eq!(r.degree, 0.75);

        let r = rule_from_sample(&Sample::new(68.0, 23.0, 23.34), &parts).unwrap();
        assert_eq!((r.rh, r.t, r.hi, r.degree), (Region::Low, Region::Low, Region::Low, 1.0));

        let r = rule_from_sample(&Sample::new(76.0, 24.5, 24.52), &parts).unwrap();
        assert_eq!((r.rh, r.t, r.hi), (Region::Mid, Region::Mid, Region::Mid));
        assert_eq!(r.degree, 1.0);
    }

    #[test]
    fn single_sample_training_set_is_rejected() {
        // A single sample has degenerate universes.
        let d = Dataset::new(vec![Sample::new(68.0, 23.0, 23.34)], "one");
        assert!(learn_rules(&d).is_err());
    }

    #[test]
    fn learns_corner_rules() {
        // The minima sample plus a far corner that lands in another antecedent.
        let d = Dataset::new(
            vec![Sample::new(68.0, 23.0, 23.34), Sample::new(84.0, 26.0, 25.70)],
            "two",
        );
        let rb = learn_rules(&d).unwrap();
        assert_eq!(rb.len(), 2);
        let r = rb.rule_for(Region::Low, Region::Low).unwrap();
        assert_eq!((r.hi, r.degree), (Region::Low, 1.0));
        let r = rb.rule_for(Region::High, Region::High).unwrap();
        assert_eq!((r.hi, r.degree), (Region::High, 1.0));
    }

    #[test]
    fn conflicting_rules_keep_highest_degree() {
        let d = Dataset::new(
            vec![
                Sample::new(68.0, 23.0, 23.34),
                Sample::new(84.0, 26.0, 25.70),
                // (low, low) again, weaker, with a different consequent
                Sample::new(70.0, 23.5, 24.4),
                // (mid, mid): the second one is stronger
                Sample::new(75.0, 24.4, 24.4),
                Sample::new(76.0, 24.5, 24.52),
            ],
            "conflict",
        );
        let rb = learn_rules(&d).unwrap();
        let r = rb.rule_for(Region::Low, Region::Low).unwrap();
        assert_eq!((r.hi, r.degree), (Region::Low, 1.0));
        let r = rb.rule_for(Region::Mid, Region::Mid).unwrap();
        assert_eq!(r.degree, 1.0);
    }

    #[test]
    fn equal_degree_conflict_keeps_earliest() {
        let parts = table2_partitions();
        // Both samples give (low, low) with degree 0.75; consequents differ.
        let a = Sample::new(70.0, 23.0, 23.34);
        let b = Sample::new(70.0, 23.0, 25.70);
        let ra = rule_from_sample(&a, &parts).unwrap();
        let rb_ = rule_from_sample(&b, &parts).unwrap();
        assert_eq!(ra.degree, rb_.degree);
        assert_ne!(ra.hi, rb_.hi);

        let corners = [Sample::new(68.0, 26.0, 23.34), Sample::new(84.0, 24.0, 25.70)];
        let d1 = Dataset::new([a, b].into_iter().chain(corners).collect(), "ab");
        let d2 = Dataset::new([b, a].into_iter().chain(corners).collect(), "ba");
        let r1 = *learn_rules(&d1).unwrap().rule_for(Region::Low, Region::Low).unwrap();
        let r2 = *learn_rules(&d2).unwrap().rule_for(Region::Low, Region::Low).unwrap();
        assert_eq!(r1.hi, Region::Low);
        assert_eq!(r2.hi, Region::High);
    }

    #[test]
    fn rendering() {
        let rules = vec![
            FuzzyRule { rh: Region::Mid, t: Region::Mid, hi: Region::Mid, degree: 0.643347 },
            FuzzyRule { rh: Region::High, t: Region::Low, hi: Region::Low, degree: 0.816537 },
        ];
        let parts = table2_partitions();
        let rb = RuleBase::new(parts, rules, ConsequentCenters::new(parts.hi.universe())).unwrap();
        let text = render_rules(&rb).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "IF relative humidity is high and temperature is low THEN heat index is low (degree 0.816537)"
        );
        assert_eq!(
            lines[1],
            "IF relative humidity is mid and temperature is mid THEN heat index is mid (degree 0.643347)"
        );
        assert!(render_rule_table(&rb).unwrap().contains("high         low          low          0.816537"));

        let empty = RuleBase::new(parts, vec![], ConsequentCenters::new(parts.hi.universe())).unwrap();
        assert!(matches!(render_rules(&empty), Err(Error::EmptyRuleBase)));
    }

    #[test]
    fn rule_base_validation() {
        let parts = table2_partitions();
        let c = ConsequentCenters::new(parts.hi.universe());
        let r = FuzzyRule { rh: Region::Low, t: Region::Low, hi: Region::Low, degree: 0.5 };
        assert!(matches!(
            RuleBase::new(parts, vec![r, r], c),
            Err(Error::DuplicateRule(Region::Low, Region::Low))
        ));
        let zero = FuzzyRule { degree: 0.0, ..r };
        assert!(RuleBase::new(parts, vec![zero], c).is_err());
    }

    #[test]
    fn model_file_round_trip_and_version() {
        let d = Dataset::new(
            vec![
                Sample::new(68.3, 23.1, 23.4),
                Sample::new(83.7, 25.9, 25.6),
                Sample::new(75.1, 24.6, 24.55),
                Sample::new(80.2, 23.3, 23.7),
            ],
            "rt",
        );
        let rb = learn_rules(&d).unwrap();
        let rb = rb.clone().with_centers(rb.centers().with_offsets([0.1, -0.05, 0.35]).unwrap());
        let text = model_to_string(&rb).unwrap();
        assert!(text.contains("format_version = 1"));
        let back = model_from_str(&text).unwrap();
        assert_eq!(back, rb);

        let bumped = text.replace("format_version = 1", "format_version = 99");
        assert!(matches!(model_from_str(&bumped), Err(ModelError::Version(99))));
        assert!(matches!(model_from_str("not = [valid"), Err(ModelError::Parse(_))));
    }

    #[test]
    fn load_reports_path_and_version() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.fz");
        std::fs::write(&path, "format_version = 7\n").unwrap();
        assert!(matches!(
            load_model(&path),
            Err(Error::Version { found: 7, expected: 1 })
        ));
        std::fs::write(&path, "format_version = 1\n").unwrap();
        let err = load_model(&path).unwrap_err();
        assert!(matches!(err, Error::Model { .. }));
        assert!(err.to_string().contains("m.fz"));
        assert!(matches!(load_model(dir.path().join("missing.fz")), Err(Error::Io { .. })));
    }
}
