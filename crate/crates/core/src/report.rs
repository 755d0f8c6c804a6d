//! Check results and their text / JSON-lines renderings.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy between a stated formula and the computed one.
    Flagged,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    /// Short description of the statement being checked.
    pub anchor: String,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            status: Status::Pass,
            witnesses: Vec::new(),
            anchor: anchor.into(),
        }
    }

    pub fn witness(mut self, name: impl Into<String>, value: impl ToString) -> Self {
        self.witnesses.push(Witness {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Pass when `ok`, Fail otherwise.
    pub fn verdict(self, ok: bool) -> Self {
        self.status(if ok { Status::Pass } else { Status::Fail })
    }

    /// A check that could not run because an operation returned an error.
    pub fn errored(id: impl Into<String>, anchor: impl Into<String>, err: impl fmt::Display) -> Self {
        CheckResult::new(id, anchor).witness("error", err).status(Status::Fail)
    }

    /// Fail and Flagged results always carry at least one witness.
    pub fn is_well_formed(&self) -> bool {
        !matches!(self.status, Status::Fail | Status::Flagged) || !self.witnesses.is_empty()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<13} {}  ({})", format!("[{}]", self.status), self.id, self.anchor)?;
        for w in &self.witnesses {
            write!(f, "\n    {} = {}", w.name, w.value)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| a.id.cmp(&b.id));
        for r in &mut results {
            if !r.is_well_formed() {
                r.witnesses.push(Witness {
                    name: "note".into(),
                    value: "no witness recorded".into(),
                });
            }
        }
        Report { results }
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let flagged: Vec<&str> = self
            .results
            .iter()
            .filter(|r| r.status == Status::Flagged)
            .map(|r| r.id.as_str())
            .collect();
        if !flagged.is_empty() {
            out.push_str(&format!("flagged: {}\n", flagged.join(", ")));
        }
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} flagged, {} inconclusive\n",
            self.results.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged),
            self.count(Status::Inconclusive)
        ));
        out
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.results
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain data serializes") + "\n")
            .collect()
    }

    pub fn from_json_lines(text: &str) -> serde_json::Result<Self> {
        let results = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<serde_json::Result<Vec<CheckResult>>>()?;
        Ok(Report { results })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_order() {
        let r = Report::new(vec![
            CheckResult::new("b.two", "second")
                .witness("x", "1")
                .status(Status::Flagged),
            CheckResult::new("a.one", "first"),
            CheckResult::new("c", "bare failure").verdict(false),
        ]);
        assert_eq!(r.results[0].id, "a.one");
        assert!(r.results.iter().all(CheckResult::is_well_formed));
        let back = Report::from_json_lines(&r.to_json_lines()).unwrap();
        assert_eq!(back, r);
        assert!(r.has_failures());
        assert!(r.to_json_lines().contains("\"status\":\"flagged\""));
    }
}
