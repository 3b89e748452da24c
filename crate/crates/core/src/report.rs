//! Pass/fail reports produced by the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::operators::Counterexample;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cells: Vec<Cell>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), cells: Vec::new() }
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.cells.push(Cell { id: id.into(), ok, detail: detail.into() });
    }

    /// Record an operator identity checked on a graded range.
    pub fn operator_identity(
        &mut self,
        id: impl Into<String>,
        result: std::result::Result<(), Counterexample>,
        range: &str,
    ) {
        match result {
            Ok(()) => self.check(id, true, format!("zero on {range}")),
            Err(c) => self.check(id, false, format!("nonzero {c}")),
        }
    }

    /// Record an error from the computation itself as a failed cell.
    pub fn error(&mut self, id: impl Into<String>, err: impl fmt::Display) {
        self.check(id, false, format!("error: {err}"));
    }

    pub fn append(&mut self, other: Report) {
        self.cells.extend(other.cells);
    }

    pub fn ok(&self) -> bool {
        self.cells.iter().all(|c| c.ok)
    }

    pub fn passed(&self) -> usize {
        self.cells.iter().filter(|c| c.ok).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}/{} passed", self.suite, self.passed(), self.cells.len())?;
        for c in &self.cells {
            let tag = if c.ok { "ok  " } else { "FAIL" };
            writeln!(f, "  [{tag}] {}: {}", c.id, c.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_accounting() {
        let mut r = Report::new("demo");
        r.check("a", true, "fine");
        r.check("b", false, "broken");
        assert!(!r.ok());
        assert_eq!(r.passed(), 1);
        assert_eq!(r.failures().map(|c| c.id.as_str()).collect::<Vec<_>>(), vec!["b"]);
        let text = r.to_string();
        assert!(text.starts_with("suite demo: 1/2 passed\n"));
        assert!(text.contains("[FAIL] b: broken"));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&json).unwrap(), r);
    }
}
