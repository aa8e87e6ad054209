//! Universes of discourse, three-region triangular partitions and
//! fuzzification of crisp values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linguistic label of a fuzzy region. The declaration order is the
/// tie-break order used by [`classify_max`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Low,
    Mid,
    High,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Low, Region::Mid, Region::High];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Low => "low",
            Region::Mid => "mid",
            Region::High => "high",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUniverse")]
pub struct Universe {
    lo: f64,
    hi: f64,
}

#[derive(Deserialize)]
struct RawUniverse {
    lo: f64,
    hi: f64,
}

impl TryFrom<RawUniverse> for Universe {
    type Error = Error;

    fn try_from(raw: RawUniverse) -> Result<Self> {
        Universe::new(raw.lo, raw.hi)
    }
}

impl Universe {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::DegenerateUniverse { lo, hi })
        }
    }

    /// `[min, max]` of the values.
    pub fn from_data(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: values.len(),
            });
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        Self::new(lo, hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }
}

/// Triangle with left foot `a`, peak `b` and right foot `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangularMf {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangularMf {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if a <= b && b <= c && a < c {
            Ok(Self { a, b, c })
        } else {
            Err(Error::InvalidTriangle { a, b, c })
        }
    }
}

/// Triangle membership `max(min((x−a)/(b−a), (c−x)/(c−b)), 0)`.
///
/// A slope with a zero denominator is dropped from the `min`, which turns
/// `a = b` or `b = c` into a shoulder with grade 1 at the edge. Values outside
/// `[a, c]` get grade 0.
pub fn membership(x: f64, mf: &TriangularMf) -> f64 {
    let TriangularMf { a, b, c } = *mf;
    if x < a || x > c {
        return 0.0;
    }
    let rising = if b > a { (x - a) / (b - a) } else { f64::INFINITY };
    let falling = if c > b { (c - x) / (c - b) } else { f64::INFINITY };
    rising.min(falling).max(0.0)
}

/// Low/mid/high triangles over a universe: right triangles at the edges and
/// an isosceles triangle spanning the whole universe in the middle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct Partition {
    universe: Universe,
    low: TriangularMf,
    mid: TriangularMf,
    high: TriangularMf,
}

#[derive(Deserialize)]
struct RawPartition {
    universe: Universe,
    low: TriangularMf,
    mid: TriangularMf,
    high: TriangularMf,
}

impl TryFrom<RawPartition> for Partition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        let p = Partition::new(raw.universe);
        if p.low == raw.low && p.mid == raw.mid && p.high == raw.high {
            Ok(p)
        } else {
            Err(Error::InvalidParameter(format!(
                "partition triangles do not match universe [{}, {}]",
                raw.universe.lo, raw.universe.hi
            )))
        }
    }
}

impl Partition {
    pub fn new(universe: Universe) -> Self {
        let (lo, hi) = (universe.lo, universe.hi);
        let m = universe.midpoint();
        Self {
            universe,
            low: TriangularMf { a: lo, b: lo, c: m },
            mid: TriangularMf { a: lo, b: m, c: hi },
            high: TriangularMf { a: m, b: hi, c: hi },
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn region(&self, r: Region) -> &TriangularMf {
        match r {
            Region::Low => &self.low,
            Region::Mid => &self.mid,
            Region::High => &self.high,
        }
    }

    /// Grades of `x` after clamping it into the universe.
    pub fn fuzzify(&self, x: f64) -> MembershipGrades {
        let x = self.universe.clamp(x);
        MembershipGrades {
            low: membership(x, &self.low),
            mid: membership(x, &self.mid),
            high: membership(x, &self.high),
        }
    }
}

pub fn fuzzify(x: f64, p: &Partition) -> MembershipGrades {
    p.fuzzify(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipGrades {
    pub low: f64,
    pub mid: f64,
    pub high: f64,
}

impl MembershipGrades {
    pub fn get(&self, r: Region) -> f64 {
        match r {
            Region::Low => self.low,
            Region::Mid => self.mid,
            Region::High => self.high,
        }
    }

    pub fn sum(&self) -> f64 {
        self.low + self.mid + self.high
    }
}

/// Region with the largest grade; ties go to the earliest of low, mid, high.
pub fn classify_max(g: &MembershipGrades) -> Result<Region> {
    let mut best = Region::Low;
    for r in [Region::Mid, Region::High] {
        if g.get(r) > g.get(best) {
            best = r;
        }
    }
    if g.get(best) > 0.0 {
        Ok(best)
    } else {
        Err(Error::NoMembership)
    }
}
