use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A pairwise comparison value: an intensity 1..9 or its reciprocal, held as
/// an exact rational so that `a_ij * a_ji == 1` holds without tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Judgment(Ratio<u32>);

const DEFINITIONS: [&str; 9] = [
    "Equal importance",
    "Weak or slight",
    "Moderate importance",
    "Moderate plus",
    "Strong importance",
    "Strong plus",
    "Very strong or demonstrated importance",
    "Very, very strong",
    "Extreme importance",
];

impl Judgment {
    pub const ONE: Judgment = Judgment(Ratio::new_raw(1, 1));

    /// Builds `numer/denom`, which must reduce to an intensity or the
    /// reciprocal of one.
    pub fn new(numer: u32, denom: u32) -> Result<Self> {
        if numer == 0 || denom == 0 {
            return Err(Error::OutOfScale(format!("{numer}/{denom}")));
        }
        let r = Ratio::new(numer, denom);
        let (p, q) = (*r.numer(), *r.denom());
        if (p == 1 && (1..=9).contains(&q)) || (q == 1 && (1..=9).contains(&p)) {
            Ok(Judgment(r))
        } else {
            Err(Error::OutOfScale(format!("{numer}/{denom}")))
        }
    }

    /// Intensity `v` in favour of the row element (1..=9).
    pub fn intensity(v: u32) -> Result<Self> {
        Self::new(v, 1)
    }

    /// All 17 legal values in ascending order, 1/9 through 9.
    pub fn scale() -> impl Iterator<Item = Judgment> {
        (2..=9)
            .rev()
            .map(|q| Judgment(Ratio::new_raw(1, q)))
            .chain((1..=9).map(|p| Judgment(Ratio::new_raw(p, 1))))
    }

    pub fn numer(self) -> u32 {
        *self.0.numer()
    }

    pub fn denom(self) -> u32 {
        *self.0.denom()
    }

    pub fn ratio(self) -> Ratio<u32> {
        self.0
    }

    pub fn reciprocal(self) -> Self {
        Judgment(self.0.recip())
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn value(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn ln(self) -> f64 {
        (self.numer() as f64).ln() - (self.denom() as f64).ln()
    }

    /// Wording of the intensity on the 1..9 scale. Reciprocals share the
    /// wording of the intensity they invert.
    pub fn definition(self) -> &'static str {
        DEFINITIONS[(self.numer().max(self.denom()) - 1) as usize]
    }

    /// Nearest legal value to a positive ratio, measured in log space so that
    /// `nearest(1/x) == nearest(x).reciprocal()`.
    pub fn nearest(x: f64) -> Self {
        let target = x.ln();
        let mut best = Self::ONE;
        let mut best_dist = target.abs();
        for j in Self::scale() {
            let d = (j.ln() - target).abs();
            if d < best_dist {
                best = j;
                best_dist = d;
            }
        }
        best
    }
}

impl Default for Judgment {
    fn default() -> Self {
        Self::ONE
    }
}

/// Parses a token such as `"5"`, `"1/7"` or `"3/1"`.
pub fn judgment_from_token(token: &str) -> Result<Judgment> {
    token.parse()
}

fn parse_digits(s: &str, whole: &str) -> Result<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Malformed(whole.to_string()));
    }
    // anything too long to fit is certainly off the scale
    s.parse::<u32>()
        .map_err(|_| Error::OutOfScale(whole.to_string()))
}

impl FromStr for Judgment {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let t = token.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (
                parse_digits(p.trim(), token)?,
                parse_digits(q.trim(), token)?,
            ),
            None => (parse_digits(t, token)?, 1),
        };
        if p == 0 || q == 0 {
            return Err(Error::OutOfScale(token.to_string()));
        }
        // only p/1 and 1/q forms are accepted, even when p/q would reduce onto the scale
        if p != 1 && q != 1 {
            return Err(Error::OutOfScale(token.to_string()));
        }
        Judgment::new(p, q).map_err(|_| Error::OutOfScale(token.to_string()))
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Judgment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Judgment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
