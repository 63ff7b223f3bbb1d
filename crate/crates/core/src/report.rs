//! Experiment reports: one structured JSON document per experiment plus an
//! optional flat CSV of `(setting, term, value)` rows.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub setting: String,
    pub term: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub inputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub results: BTreeMap<String, Value>,
    pub seeds: Vec<u64>,
    #[serde(skip)]
    pub rows: Vec<CsvRow>,
}

impl Report {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            results: BTreeMap::new(),
            seeds: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn row(
        &mut self,
        setting: impl Into<String>,
        term: impl Into<String>,
        value: f64,
    ) -> &mut Self {
        self.rows.push(CsvRow {
            setting: setting.into(),
            term: term.into(),
            value,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

fn to_value(v: impl Serialize) -> Value {
    // non-finite floats become null
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_key_ordered() {
        let mut r = Report::new("x");
        r.result("b", 2).result("a", 1).check("ok", true, "");
        let json = r.to_json();
        assert!(json.find("\"a\"").unwrap() < json.find("\"b\"").unwrap());
        assert!(r.passed());
        r.check("bad", false, "boom");
        assert_eq!(r.failed_checks().count(), 1);
    }

    #[test]
    fn csv_has_header() {
        let mut r = Report::new("x");
        r.row("s", "E(AB)", -0.5);
        assert_eq!(r.to_csv(), "setting,term,value\ns,E(AB),-0.5\n");
    }
}
