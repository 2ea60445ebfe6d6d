//! Text, JSON and CSV forms of [`PLFunction`]. All of them are exact.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;

use super::{Breakpoint, PLFunction, PlError};

#[derive(Serialize, Deserialize)]
struct Wire {
    breakpoints: Vec<[String; 4]>,
}

impl Serialize for PLFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let breakpoints = self
            .points
            .iter()
            .map(|(t, v)| [t.numer().to_string(), t.denom().to_string(), v.numer().to_string(), v.denom().to_string()])
            .collect();
        Wire { breakpoints }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PLFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(|e| D::Error::custom(format!("`{s}`: {e}")));
        let mut points: Vec<Breakpoint> = Vec::with_capacity(wire.breakpoints.len());
        for [tn, td, vn, vd] in &wire.breakpoints {
            let t = Rational::new(int(tn)?, int(td)?).map_err(D::Error::custom)?;
            let v = Rational::new(int(vn)?, int(vd)?).map_err(D::Error::custom)?;
            points.push((t, v));
        }
        PLFunction::new(points).map_err(D::Error::custom)
    }
}

impl PLFunction {
    /// `(t0,v0) (t1,v1) ...` with integers printed without a denominator.
    pub fn to_text(&self) -> String {
        self.points.iter().map(|(t, v)| format!("({t},{v})")).collect::<Vec<_>>().join(" ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializing strings cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, PlError> {
        serde_json::from_str(text).map_err(|e| PlError::Format(e.to_string()))
    }

    /// A `t,value` header followed by one `num/den,num/den` row per breakpoint.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (t, v) in &self.points {
            out.push_str(&format!("{},{}\n", t.to_fraction_string(), v.to_fraction_string()));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, PlError> {
        let mut points = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (n == 0 && line == "t,value") {
                continue;
            }
            let (t, v) =
                line.split_once(',').ok_or_else(|| PlError::Format(format!("line {}: expected `t,value`", n + 1)))?;
            let parse = |s: &str| s.parse::<Rational>().map_err(|e| PlError::Format(format!("line {}: {e}", n + 1)));
            points.push((parse(t)?, parse(v)?));
        }
        PLFunction::new(points)
    }
}
