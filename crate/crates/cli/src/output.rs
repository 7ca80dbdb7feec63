//! Output files: atomic writes, and plot-ready data derived from CSV tables.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

/// A file to be written into the output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub name: String,
    pub contents: Vec<u8>,
}

impl OutputFile {
    pub fn new(name: impl Into<String>, contents: impl Into<Vec<u8>>) -> Self {
        Self {
            name: name.into(),
            contents: contents.into(),
        }
    }
}

/// Writes to a temporary file in `dir` and renames it over `dir/name`.
pub fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<()> {
    let target = dir.join(name);
    let err = |source| CliError::Write {
        path: target.clone(),
        source,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(&target).map_err(|e| err(e.error))?;
    Ok(())
}

fn safe_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

/// Splits a column label such as `F_ret [J/m^2]` into name and unit.
fn split_unit(label: &str) -> (&str, &str) {
    match label.find(" [") {
        Some(i) => (&label[..i], label[i + 2..].trim_end_matches(']')),
        None => (label, ""),
    }
}

fn axis_label(name: &str, unit: &str) -> String {
    if unit.is_empty() {
        name.to_string()
    } else {
        format!("{name} [{unit}]")
    }
}

/// Two-column `.dat` files, one per numeric column of `csv` after the
/// first, plus a gnuplot script that plots them all.
pub fn plot_files(stem: &str, csv: &str, log_x: bool) -> Vec<OutputFile> {
    let mut lines = csv.lines();
    let Some(header) = lines.next() else {
        return Vec::new();
    };
    let columns: Vec<&str> = header.split(',').collect();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let (x_name, x_unit) = split_unit(columns[0]);

    let mut files = Vec::new();
    let mut plots = Vec::new();
    let mut y_units = Vec::new();
    for (j, label) in columns.iter().enumerate().skip(1) {
        if *label == "converged" {
            continue;
        }
        let (name, unit) = split_unit(label);
        let file = format!("{stem}_{}.dat", safe_stem(name));
        let mut body = format!(
            "# {}  {}\n",
            axis_label(x_name, x_unit),
            axis_label(name, unit)
        );
        for row in &rows {
            body.push_str(row[0]);
            body.push(' ');
            body.push_str(row[j]);
            body.push('\n');
        }
        plots.push(format!("'{file}' using 1:2 with lines title '{name}'"));
        if !y_units.contains(&unit) {
            y_units.push(unit);
        }
        files.push(OutputFile::new(file, body));
    }

    let mut script = format!("# gnuplot script for {stem}.csv\n");
    if log_x {
        script.push_str("set logscale x\n");
    }
    script.push_str(&format!("set xlabel '{}'\n", axis_label(x_name, x_unit)));
    script.push_str(&format!("set ylabel '[{}]'\n", y_units.join(", ")));
    script.push_str("set grid\n");
    script.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    files.push(OutputFile::new(format!("{stem}.gp"), script));
    files
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_existing_file() {
        let dir = tempfile::tempdir().unwrap();
        write_atomic(dir.path(), "a.csv", b"one\n").unwrap();
        write_atomic(dir.path(), "a.csv", b"two\n").unwrap();
        assert_eq!(std::fs::read(dir.path().join("a.csv")).unwrap(), b"two\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn plot_files_skip_flags_and_keep_units() {
        let csv = "d_nm,F_ret [J/m^2],converged\n1,-2,true\n10,3,true\n";
        let files = plot_files("sweep", csv, true);
        assert_eq!(files.len(), 2);
        assert_eq!(files[0].name, "sweep_F_ret.dat");
        assert_eq!(
            String::from_utf8(files[0].contents.clone()).unwrap(),
            "# d_nm  F_ret [J/m^2]\n1 -2\n10 3\n"
        );
        let script = String::from_utf8(files[1].contents.clone()).unwrap();
        assert!(script.contains("'sweep_F_ret.dat' using 1:2"));
        assert!(script.contains("[J/m^2]"));
    }
}
