//! Report serialization. JSON keys are sorted and rationals are written as
//! `num/den`, so identical runs produce byte-identical files.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::scan::ConjectureReport;
use super::suite::SuiteReport;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Conjecture(ConjectureReport),
    Suite(SuiteReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}, expected json or csv"))),
        }
    }
}

impl Report {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        // serde_json's default map is ordered by key
        let value = serde_json::to_value(self).map_err(|e| Error::Parse(e.to_string()))?;
        let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid report: {e}")))
    }

    /// One row per bracket (part b), per frame (part a) or per check (suite).
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let join = |v: &[String]| v.join(";");
        let opt = |v: &Option<Vec<String>>| v.as_ref().map(|v| v.join(";")).unwrap_or_default();
        let res: std::result::Result<(), csv::Error> = (|| {
            match self {
                Report::Conjecture(r) if r.part == "b" => {
                    w.write_record([
                        "frame",
                        "u_params",
                        "v_params",
                        "lower",
                        "upper",
                        "samples",
                        "members",
                        "failing_witness",
                        "passing_witness",
                        "warnings",
                    ])?;
                    for b in &r.part_b {
                        w.write_record([
                            b.frame.to_string(),
                            join(&b.u_params),
                            join(&b.v_params),
                            b.lower.clone(),
                            b.upper.clone(),
                            b.samples.to_string(),
                            b.members.to_string(),
                            opt(&b.failing_witness),
                            opt(&b.passing_witness),
                            join(&b.warnings),
                        ])?;
                    }
                }
                Report::Conjecture(r) => {
                    w.write_record([
                        "frame",
                        "u_params",
                        "v_params",
                        "samples",
                        "members",
                        "all_members_in_cone",
                        "min_chi_member",
                    ])?;
                    for f in &r.part_a {
                        w.write_record([
                            f.frame.to_string(),
                            join(&f.u_params),
                            join(&f.v_params),
                            f.samples.to_string(),
                            f.members.to_string(),
                            f.all_members_in_cone.to_string(),
                            f.min_chi_member.clone().unwrap_or_default(),
                        ])?;
                    }
                }
                Report::Suite(r) => {
                    w.write_record([
                        "module",
                        "property",
                        "samples",
                        "failures",
                        "informational",
                        "first_failure",
                    ])?;
                    for c in &r.checks {
                        w.write_record([
                            c.module.clone(),
                            c.property.clone(),
                            c.samples.to_string(),
                            c.failures.to_string(),
                            c.informational.to_string(),
                            c.first_failure.clone().unwrap_or_default(),
                        ])?;
                    }
                }
            }
            Ok(())
        })();
        res.map_err(|e| Error::Parse(e.to_string()))?;
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, format: Format, path: &Path) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::scan::{scan_conjecture_a, scan_conjecture_b, ScanConfig};
    use crate::explorer::suite::{run_property_suite, Mutation};

    #[test]
    fn json_roundtrip_and_determinism() {
        let cfg = ScanConfig::new(2, 5, 30).unwrap();
        let a = Report::Conjecture(scan_conjecture_a(&cfg).unwrap());
        let json = a.to_json().unwrap();
        assert!(json.ends_with('\n'));
        assert!(json.contains("\"kind\": \"conjecture\""));
        assert_eq!(Report::parse_json(&json).unwrap(), a);
        assert_eq!(
            Report::Conjecture(scan_conjecture_a(&cfg).unwrap()).to_json().unwrap(),
            json
        );
        let s = Report::Suite(run_property_suite(&cfg, Mutation::None).unwrap());
        assert_eq!(Report::parse_json(&s.to_json().unwrap()).unwrap(), s);
        assert!(Report::parse_json("{\"kind\":\"other\"}").is_err());
    }

    #[test]
    fn csv_rows() {
        let cfg = ScanConfig::new(2, 5, 250).unwrap();
        let b = Report::Conjecture(scan_conjecture_b(&cfg).unwrap()).to_csv().unwrap();
        assert_eq!(b.lines().count(), 1 + cfg.frames());
        assert!(b.starts_with("frame,u_params,v_params,lower,upper"));
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
