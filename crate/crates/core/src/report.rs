//! Axiom-check reports shared by the psyquandle and bracket checkers.

use std::fmt;

/// At most this many failures are kept; the total is still counted.
pub const MAX_WITNESSES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    /// Stable identity id, e.g. `iii.2` or `b5.7`.
    pub axiom: &'static str,
    /// 1-based witness elements `(x, y[, z])`.
    pub witness: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|x| x.to_string()).collect();
        write!(f, "axiom {} at ({}): {} != {}", self.axiom, w.join(","), self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
    /// Total failures found, including those beyond [`MAX_WITNESSES`].
    pub total: usize,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.total == 0
    }

    pub(crate) fn push(&mut self, axiom: &'static str, witness: &[usize], lhs: impl ToString, rhs: impl ToString) {
        self.total += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(AxiomFailure {
                axiom,
                witness: witness.iter().map(|x| x + 1).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// Whether any recorded failure carries this axiom id.
    pub fn fails(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return write!(f, "PASS");
        }
        for fail in &self.failures {
            writeln!(f, "{fail}")?;
        }
        if self.total > self.failures.len() {
            writeln!(f, "... {} more", self.total - self.failures.len())?;
        }
        Ok(())
    }
}
