use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not run, e.g. beyond the degree cap.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub status: Status,
    pub id: String,
    pub detail: String,
}

/// Ordered list of checks, rendered one per line as
/// `PASS|FAIL|SKIP <check-id> <detail>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, pass: bool, id: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            status: if pass { Status::Pass } else { Status::Fail },
            id: id.into(),
            detail: detail.into(),
        });
    }

    pub fn skip(&mut self, id: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            status: Status::Skip,
            id: id.into(),
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {} {}\n", c.status, c.id, c.detail));
        }
        out
    }
}
