use std::fmt;

/// One violated axiom, with the first basis tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    /// Total number of failing tuples found for this axiom.
    pub count: usize,
}

/// Outcome of an axiom check. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, axiom: &str, witness: &[&str]) {
        if let Some(v) = self.violations.iter_mut().find(|v| v.axiom == axiom) {
            v.count += 1;
            return;
        }
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness: witness.iter().map(|s| s.to_string()).collect(),
            count: 1,
        });
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: Report) {
        for v in other.violations {
            match self.violations.iter_mut().find(|w| w.axiom == v.axiom) {
                Some(w) => w.count += v.count,
                None => self.violations.push(v),
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at ({}) [{}x]", v.axiom, v.witness.join(", "), v.count))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub mod axiom {
    pub const DEGREE: &str = "degree mismatch";
    pub const D_SQUARED: &str = "d∘d = 0";
    pub const UNIT: &str = "unit";
    pub const COMMUTATIVITY: &str = "graded commutativity";
    pub const ASSOCIATIVITY: &str = "associativity";
    pub const LEIBNIZ: &str = "Leibniz rule";
    pub const CHAIN_MAP: &str = "does not commute with differentials";
    pub const LINEARITY: &str = "not linear over the base algebra";
    pub const MULTIPLICATIVE: &str = "not multiplicative";
    pub const BASE: &str = "base algebras differ";
}
