//! Pass/fail reports produced by the verification suites.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub family: String,
    pub instance: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(
        &mut self,
        family: impl Into<String>,
        instance: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) {
        self.entries.push(Entry {
            family: family.into(),
            instance: instance.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    /// One line per failure: `FAIL<TAB>family<TAB>instance<TAB>detail`.
    pub fn failure_list(&self) -> String {
        self.failures().map(|e| format!("FAIL\t{}\t{}\t{}\n", e.family, e.instance, e.detail)).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("family\tinstance\tstatus\tdetail\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.family,
                e.instance,
                if e.passed { "pass" } else { "FAIL" },
                e.detail
            ));
        }
        out
    }
}

impl FromIterator<Entry> for Report {
    fn from_iter<I: IntoIterator<Item = Entry>>(iter: I) -> Self {
        Report { entries: iter.into_iter().collect() }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{} {} {}", if e.passed { "pass" } else { "FAIL" }, e.family, e.instance)?;
            if !e.detail.is_empty() {
                write!(f, ": {}", e.detail)?;
            }
            writeln!(f)?;
        }
        write!(f, "{} checks, {} failed", self.entries.len(), self.failure_count())
    }
}
