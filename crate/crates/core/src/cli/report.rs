use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use serde::Serialize;

use super::CliError;
use crate::netcore::NetworkFile;
use crate::rational::{format_rational, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub closed_form: String,
    pub oracle: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    pub fn rational(name: impl Into<String>, closed: &BigRational, oracle: &BigRational) -> Self {
        Self {
            name: name.into(),
            class: None,
            closed_form: format_rational(closed),
            oracle: format_rational(oracle),
            equal: closed == oracle,
            detail: None,
        }
    }

    pub fn integer(name: impl Into<String>, closed: &BigInt, oracle: &BigInt) -> Self {
        Self {
            name: name.into(),
            class: None,
            closed_form: closed.to_string(),
            oracle: oracle.to_string(),
            equal: closed == oracle,
            detail: None,
        }
    }

    pub fn with_class(mut self, class: impl Into<String>) -> Self {
        self.class = Some(class.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Per-suite counters of a verification sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteCounts {
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

impl SuiteCounts {
    pub fn merge(&mut self, other: &SuiteCounts) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<serde_json::Value>,
    pub records: Vec<Record>,
    pub notes: Vec<String>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<BTreeMap<String, SuiteCounts>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkFile>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            instance: None,
            records: Vec::new(),
            notes: Vec::new(),
            seed: None,
            summary: None,
            network: None,
        }
    }

    /// True when every record agrees and no suite reported a failure.
    pub fn all_equal(&self) -> bool {
        self.records.iter().all(|r| r.equal)
            && self
                .summary
                .as_ref()
                .is_none_or(|s| s.values().all(|c| c.failed == 0))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "class", "closed_form", "oracle", "equal", "detail"])
            .map_err(|e| CliError::Io(e.to_string()))?;
        for r in &self.records {
            w.write_record([
                r.name.as_str(),
                r.class.as_deref().unwrap_or(""),
                &r.closed_form,
                &r.oracle,
                if r.equal { "true" } else { "false" },
                r.detail.as_deref().unwrap_or(""),
            ])
            .map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, format: Format, output: Option<&std::path::Path>) -> Result<(), CliError> {
        let text = self.render(format)?;
        match output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn records_and_csv() {
        let mut r = Report::new("kf");
        r.records
            .push(Record::rational("Kf", &ratio(5, 1), &ratio(5, 1)));
        r.records
            .push(Record::rational("R(0,1)", &ratio(1, 2), &ratio(1, 3)).with_class("r1[0]"));
        assert!(!r.all_equal());
        let csv = r.to_csv().unwrap();
        assert!(csv.contains("Kf,,5/1,5/1,true,"));
        assert!(csv.contains("\"R(0,1)\",r1[0],1/2,1/3,false,"), "{csv}");
        assert!(r.to_json().contains("\"closed_form\": \"1/2\""));
    }

    #[test]
    fn summary_failures_count() {
        let mut r = Report::new("verify");
        let mut s = BTreeMap::new();
        s.insert(
            "tau".to_string(),
            SuiteCounts {
                checked: 1,
                failed: 1,
                ..Default::default()
            },
        );
        r.summary = Some(s);
        assert!(!r.all_equal());
    }
}
