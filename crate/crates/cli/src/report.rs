use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use mheight::heights::{ExtendedReal, ExtremalCertificate};
use mheight::{RealCode64, Tolerance64};

/// A height on the wire: a JSON number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Height(pub ExtendedReal<f64>);

impl Height {
    pub fn csv(&self) -> String {
        match self.0 {
            ExtendedReal::Finite(x) => format!("{x}"),
            ExtendedReal::Infinite => "inf".into(),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ExtendedReal::Finite(x) => s.serialize_f64(x),
            ExtendedReal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Height {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Number(f64),
            Text(String),
        }
        match Wire::deserialize(d)? {
            Wire::Number(x) => Ok(Height(ExtendedReal::Finite(x))),
            Wire::Text(t) if t == "inf" => Ok(Height(ExtendedReal::Infinite)),
            Wire::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub name: String,
    pub n: usize,
    pub k: usize,
}

impl CodeSummary {
    pub fn of(code: &RealCode64) -> Self {
        CodeSummary { name: code.name().to_string(), n: code.n(), k: code.k() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightEntry {
    pub m: usize,
    pub height: Height,
    /// Concrete method that produced the value; absent for `h_0` and for
    /// the filled infinite tail.
    pub method: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub m: usize,
    pub subset: Vec<usize>,
    pub index: usize,
    pub coefficients: Vec<f64>,
    pub codeword: Vec<f64>,
    pub height: Height,
}

impl CertificateEntry {
    pub fn of(c: &ExtremalCertificate<f64>) -> Self {
        CertificateEntry {
            m: c.m,
            subset: c.subset.members().to_vec(),
            index: c.index,
            coefficients: c.coefficients.clone(),
            codeword: c.codeword.clone(),
            height: Height(c.height),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodHeights {
    pub method: String,
    pub heights: Vec<Height>,
    pub min_distance: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub m: usize,
    pub method: String,
    /// `|a − b| / max(1, |b|)` against the primal LP; `"inf"` when exactly
    /// one side is infinite.
    pub relative: Height,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub reference: String,
    pub tolerance: f64,
    pub methods: Vec<MethodHeights>,
    pub max_discrepancy: Option<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub table: String,
    pub code: String,
    pub m: usize,
    pub expected: Height,
    pub computed: Height,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank: f64,
    pub lp: f64,
    pub magnitude: f64,
    pub magnitude_floor: f64,
}

impl From<&Tolerance64> for Tolerances {
    fn from(t: &Tolerance64) -> Self {
        Tolerances { rank: t.rank, lp: t.lp, magnitude: t.magnitude, magnitude_floor: t.magnitude_floor }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub code: Option<CodeSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<String>,
    pub heights: Vec<HeightEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_distance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificates: Option<Vec<CertificateEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub crosscheck: Option<CrossCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cells: Option<Vec<TableCell>>,
    pub passed: bool,
    pub tolerances: Tolerances,
    pub wall_time_seconds: f64,
}

impl RunReport {
    pub fn new(command: &str, tol: &Tolerance64) -> Self {
        RunReport {
            command: command.into(),
            code: None,
            method: None,
            heights: Vec::new(),
            min_distance: None,
            certificates: None,
            crosscheck: None,
            cells: None,
            passed: true,
            tolerances: tol.into(),
            wall_time_seconds: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `m,height,method` rows. Cross-checks list every method's profile;
    /// table checks put `table:code` in the method column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,height,method\n");
        let mut row = |m: usize, h: &Height, label: &str| {
            writeln!(out, "{m},{},{label}", h.csv()).expect("write to string");
        };
        if let Some(cells) = &self.cells {
            for c in cells {
                row(c.m, &c.computed, &format!("{}:{}", c.table, c.code));
            }
        } else if let Some(x) = &self.crosscheck {
            for mh in &x.methods {
                for (m, h) in mh.heights.iter().enumerate() {
                    row(m, h, &mh.method);
                }
            }
        } else {
            for e in &self.heights {
                row(e.m, &e.height, e.method.as_deref().unwrap_or(""));
            }
        }
        out
    }
}
