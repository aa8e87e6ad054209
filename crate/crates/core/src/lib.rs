//! Fuzzy rule-based heat-index prediction.
//!
//! A rule base is learned from (humidity, temperature, heat index) samples by
//! the Wang-Mendel procedure over three triangular regions per variable, and
//! predictions are made by zero-order Sugeno inference. A multiple linear
//! regression baseline, regression metrics with an F-test, and a synthetic
//! data generator based on the NWS heat-index equation round out the pipeline.

pub mod cli;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod fuzzy;
pub mod inference;
pub mod rules;
pub mod synth;

pub use dataset::{Dataset, Sample};
pub use error::{Error, Result};
pub use fuzzy::{Partition, Region, TriangularMf, Universe};
pub use inference::{predict_one, ConsequentCenters, Prediction};
pub use rules::{learn_rules, FuzzyRule, RuleBase};
