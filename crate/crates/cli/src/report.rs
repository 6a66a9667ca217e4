use std::collections::BTreeMap;

use cdga::analysis::{MasseyResult, PresentationCheck};
use cdga::graded::Report as AxiomReport;
use cdga::pretty::{SquareCheck, SquareSign};
use serde::{Deserialize, Serialize};

/// The JSON document every subcommand writes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    /// `dim H^p` for `p = 0, 1, ...`, up to the last nonzero entry within
    /// the degree cap.
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<Ring>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub presentation: Option<PresentationVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub massey: Vec<Massey>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub massey_search: Option<SearchCounts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub square: Option<Square>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub routes_agree: Option<bool>,
    pub violations: Vec<String>,
    pub hypotheses_assumed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ring {
    /// H-basis as `(name, degree)`.
    pub basis: Vec<(String, i32)>,
    /// Nonzero products `left · right = value` of positive-degree basis
    /// classes.
    pub products: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationVerdict {
    pub passed: bool,
    pub max_degree: i32,
    /// Per degree: `(presented, actual)` dimensions.
    pub dims: BTreeMap<i32, (usize, usize)>,
    pub violations: Vec<String>,
    pub witness_degree: Option<i32>,
}

impl From<&PresentationCheck> for PresentationVerdict {
    fn from(c: &PresentationCheck) -> Self {
        PresentationVerdict {
            passed: c.passed(),
            max_degree: c.max_degree,
            dims: c.dims.clone(),
            violations: c.violations.clone(),
            witness_degree: c.witness_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Massey {
    pub triple: [String; 3],
    pub degree: i32,
    pub defined: bool,
    pub representative: Option<String>,
    pub indeterminacy: Vec<String>,
    pub nontrivial: bool,
}

impl From<&MasseyResult> for Massey {
    fn from(m: &MasseyResult) -> Self {
        Massey {
            triple: m.triple.clone(),
            degree: m.degree,
            defined: m.defined,
            representative: m.representative.clone(),
            indeterminacy: m.indeterminacy.clone(),
            nontrivial: m.nontrivial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchCounts {
    pub defined: usize,
    pub nontrivial: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub commutes: bool,
    /// Every degree commutes or differs by a global sign.
    pub pinpointed: bool,
    /// Per source degree: `commutes`, `negated` or `mismatch`.
    pub degrees: BTreeMap<i32, String>,
}

impl From<&SquareCheck> for Square {
    fn from(s: &SquareCheck) -> Self {
        let word = |s: &SquareSign| match s {
            SquareSign::Commutes => "commutes",
            SquareSign::Negated => "negated",
            SquareSign::Mismatch => "mismatch",
        };
        Square {
            commutes: s.commutes(),
            pinpointed: s.is_pinpointed(),
            degrees: s.degrees.iter().map(|(d, v)| (*d, word(v).to_string())).collect(),
        }
    }
}

pub fn violations(r: &AxiomReport) -> Vec<String> {
    r.violations
        .iter()
        .map(|v| format!("{}: ({}), {} failing tuple(s)", v.axiom, v.witness.join(", "), v.count))
        .collect()
}

/// Dense Betti list, cut after the last nonzero entry.
pub fn trimmed(mut betti: Vec<usize>) -> Vec<usize> {
    while betti.len() > 1 && betti.last() == Some(&0) {
        betti.pop();
    }
    betti
}
