//! Report files and stdout summaries.

use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

pub struct Reporter {
    out_dir: PathBuf,
    format: OutputFormat,
}

impl Reporter {
    pub fn new(out_dir: PathBuf, format: OutputFormat) -> Self {
        Self { out_dir, format }
    }

    fn write(&self, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
        std::fs::create_dir_all(&self.out_dir)
            .with_context(|| format!("creating {}", self.out_dir.display()))?;
        let path = self.out_dir.join(name);
        std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    /// Write the JSON report and, in CSV mode, a companion summary table.
    pub fn emit<T: Serialize>(
        &self,
        stem: &str,
        report: &T,
        csv: Option<String>,
    ) -> anyhow::Result<()> {
        let json = serde_json::to_string_pretty(report)?;
        let path = self.write(&format!("{stem}.json"), &json)?;
        println!("report: {}", path.display());
        if self.format == OutputFormat::Csv {
            if let Some(csv) = csv {
                let path = self.write(&format!("{stem}.csv"), &csv)?;
                println!("summary: {}", path.display());
            }
        }
        Ok(())
    }
}

/// Render rows of (label, value) pairs as a small aligned table on stdout.
pub fn print_table(title: &str, rows: &[(String, String)]) {
    println!("{title}");
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    for (label, value) in rows {
        println!("  {label:<width$}  {value}");
    }
}

pub fn csv_of(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
