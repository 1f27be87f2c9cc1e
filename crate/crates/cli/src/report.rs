use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Output of one command: human-readable lines, `key,value` rows, and any
/// extra CSV files.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub rows: Vec<(String, String)>,
    pub files: Vec<(String, String)>,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn row(&mut self, k: impl Into<String>, v: impl ToString) -> &mut Self {
        self.rows.push((k.into(), v.to_string()));
        self
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("key,value\n");
        for (k, v) in &self.rows {
            s.push_str(&format!("{},{}\n", escape(k), escape(v)));
        }
        s
    }
}

fn escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name, without `--out-dir`.
    pub args: Vec<String>,
    pub params: serde_json::Value,
    pub seed: u64,
    pub version: String,
    pub wall_time_seconds: f64,
}

pub fn write_all(dir: &Path, report: &Report, manifest: &RunManifest) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("report.txt"), report.text())?;
    fs::write(dir.join("report.csv"), report.csv())?;
    for (name, body) in &report.files {
        fs::write(dir.join(name), body)?;
    }
    let json = serde_json::to_string_pretty(manifest).map_err(io::Error::other)?;
    fs::write(dir.join("manifest.json"), json + "\n")
}
