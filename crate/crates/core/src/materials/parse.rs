//! Material file reader.
//!
//! ```text
//! # comment
//! name = Au
//! kind = oscillator            # oscillator | tabulated | vacuum | perfect_conductor
//! drude = 1.37e16, 5.3e13      # plasma frequency, damping (rad/s)
//! lorentz = 1.5, 4.5e15, 0     # strength, resonance, damping (rad/s)
//! ```
//!
//! Tabulated materials give `tail_exponent = p` (default 3) and then a block
//! introduced by the header line `x  eps_imag`, one `x eps_imag` pair per
//! line. Unknown keys are rejected.

use std::path::Path;

use super::kk::{AbsorptionTable, DEFAULT_TAIL_EXPONENT};
use super::{DielectricModel, DrudeTerm, LorentzTerm, Material, OscillatorModel};
use crate::{Error, Result};

pub fn load_material(path: impl AsRef<Path>) -> Result<Material> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_material(&text, &path.display().to_string())
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Oscillator,
    Tabulated,
    Vacuum,
    PerfectConductor,
}

pub fn parse_material(text: &str, source_name: &str) -> Result<Material> {
    let perr = |line: usize, message: String| Error::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };

    let mut name: Option<String> = None;
    let mut kind: Option<(Kind, usize)> = None;
    let mut drude = Vec::new();
    let mut lorentz = Vec::new();
    let mut tail_exponent: Option<f64> = None;
    let mut table: Vec<(f64, f64)> = Vec::new();
    let mut table_line: Option<usize> = None;
    let mut first_param_line: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }

        if table_line.is_some() {
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 2 {
                return Err(perr(lineno, format!("expected two columns, got {line:?}")));
            }
            let x = parse_number(cols[0]).map_err(|m| perr(lineno, m))?;
            let e = parse_number(cols[1]).map_err(|m| perr(lineno, m))?;
            table.push((x, e));
            continue;
        }

        let Some((key, value)) = line.split_once('=') else {
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols == ["x", "eps_imag"] {
                table_line = Some(lineno);
                continue;
            }
            return Err(perr(
                lineno,
                format!("expected `key = value`, got {line:?}"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "name" => {
                if name.is_some() {
                    return Err(perr(lineno, "duplicate `name`".into()));
                }
                if value.is_empty() {
                    return Err(perr(lineno, "empty `name`".into()));
                }
                name = Some(value.to_string());
            }
            "kind" => {
                if kind.is_some() {
                    return Err(perr(lineno, "duplicate `kind`".into()));
                }
                let k = match value {
                    "oscillator" => Kind::Oscillator,
                    "tabulated" => Kind::Tabulated,
                    "vacuum" => Kind::Vacuum,
                    "perfect_conductor" => Kind::PerfectConductor,
                    other => return Err(perr(lineno, format!("unknown kind {other:?}"))),
                };
                kind = Some((k, lineno));
            }
            "drude" => {
                let v = parse_list(value, 2).map_err(|m| perr(lineno, m))?;
                first_param_line.get_or_insert(lineno);
                drude.push(DrudeTerm {
                    plasma_frequency: v[0],
                    damping: v[1],
                });
            }
            "lorentz" => {
                let v = parse_list(value, 3).map_err(|m| perr(lineno, m))?;
                first_param_line.get_or_insert(lineno);
                lorentz.push(LorentzTerm {
                    strength: v[0],
                    resonance_frequency: v[1],
                    damping: v[2],
                });
            }
            "tail_exponent" => {
                if tail_exponent.is_some() {
                    return Err(perr(lineno, "duplicate `tail_exponent`".into()));
                }
                tail_exponent = Some(parse_number(value).map_err(|m| perr(lineno, m))?);
            }
            other => return Err(perr(lineno, format!("unknown key {other:?}"))),
        }
    }

    let name = name.ok_or_else(|| perr(0, "missing `name`".into()))?;
    let (kind, kind_line) = kind.ok_or_else(|| perr(0, "missing `kind`".into()))?;

    let has_osc = !drude.is_empty() || !lorentz.is_empty();
    let has_tab = tail_exponent.is_some() || table_line.is_some();
    let model = match kind {
        Kind::Oscillator => {
            if has_tab {
                return Err(perr(
                    table_line.unwrap_or(kind_line),
                    "tabulated data in an oscillator material".into(),
                ));
            }
            DielectricModel::Oscillator(OscillatorModel::new(drude, lorentz)?)
        }
        Kind::Tabulated => {
            if has_osc {
                return Err(perr(
                    first_param_line.unwrap_or(kind_line),
                    "oscillator terms in a tabulated material".into(),
                ));
            }
            if table_line.is_none() {
                return Err(perr(kind_line, "missing `x  eps_imag` data block".into()));
            }
            DielectricModel::Tabulated(AbsorptionTable::new(
                table,
                tail_exponent.unwrap_or(DEFAULT_TAIL_EXPONENT),
            )?)
        }
        Kind::Vacuum | Kind::PerfectConductor => {
            if has_osc || has_tab {
                return Err(perr(
                    first_param_line.or(table_line).unwrap_or(kind_line),
                    "parameters are not allowed for this kind".into(),
                ));
            }
            if kind == Kind::Vacuum {
                DielectricModel::Vacuum
            } else {
                DielectricModel::PerfectConductor
            }
        }
    };
    Ok(Material { name, model })
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {:?}", s.trim()))?;
    if !v.is_finite() {
        return Err(format!("not a finite number: {:?}", s.trim()));
    }
    Ok(v)
}

fn parse_list(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(format!(
            "expected {n} comma-separated values, got {}",
            parts.len()
        ));
    }
    parts.into_iter().map(parse_number).collect()
}
