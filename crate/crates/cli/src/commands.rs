//! The four computing subcommands. Each turns a [`RunConfig`] and its
//! materials into in-memory output files; nothing here touches the disk.

use std::fmt::Write as _;

use lifshitz::analysis::{self, fmt_f64, with_workers, CsvColumns, Feature, FeatureRequest};
use lifshitz::lifshitz::{spectral_terms, SpectralDecomposition, SystemConfig};
use lifshitz::materials::Material;
use serde::Serialize;

use crate::config::{RunConfig, Task};
use crate::error::{CliError, Result};
use crate::output::{plot_files, OutputFile};

const NM: f64 = 1e-9;

#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<OutputFile>,
    /// False when any Matsubara sum or integral missed its tolerance.
    pub converged: bool,
    /// Human-readable summary for stdout.
    pub summary: String,
}

pub fn execute(run: &RunConfig, materials: &[Material]) -> Result<Outcome> {
    if run.workers == 0 {
        return Err(CliError::Input("workers must be at least 1".into()));
    }
    with_workers(run.workers, || Ok(dispatch(run, materials)))?
}

fn dispatch(run: &RunConfig, materials: &[Material]) -> Result<Outcome> {
    match &run.task {
        Task::Materials {
            xi_min,
            xi_max,
            points,
            ..
        } => tabulate_materials(run, materials, *xi_min, *xi_max, *points),
        Task::Spectral { separations_nm, .. } => {
            spectral(run, &system(run, materials)?, separations_nm)
        }
        Task::Sweep { .. } => sweep(run, &system(run, materials)?),
        Task::Features { .. } => features(run, &system(run, materials)?),
    }
}

fn system(run: &RunConfig, materials: &[Material]) -> Result<SystemConfig> {
    let [m1, m2, m3] = materials else {
        return Err(CliError::Input(format!(
            "expected 3 materials, got {}",
            materials.len()
        )));
    };
    Ok(SystemConfig::new(
        m1.model.clone(),
        m2.model.clone(),
        m3.model.clone(),
        run.temperature,
    )?)
}

fn column_name(material: &Material) -> String {
    material
        .name
        .chars()
        .map(|c| {
            if c == ',' || c.is_whitespace() {
                '_'
            } else {
                c
            }
        })
        .collect()
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("output types always serialize");
    s.push('\n');
    s.into_bytes()
}

#[derive(Serialize)]
struct MaterialColumn {
    name: String,
    eps: Vec<f64>,
}

#[derive(Serialize)]
struct MaterialsTable {
    /// rad/s
    xi: Vec<f64>,
    materials: Vec<MaterialColumn>,
    /// `eps[0] - eps[1]` when exactly two materials were given.
    difference: Option<Vec<f64>>,
}

fn tabulate_materials(
    run: &RunConfig,
    materials: &[Material],
    xi_min: f64,
    xi_max: f64,
    points: usize,
) -> Result<Outcome> {
    if materials.is_empty() {
        return Err(CliError::Input("no materials given".into()));
    }
    if !(xi_min > 0.0 && xi_min < xi_max && xi_max.is_finite()) {
        return Err(CliError::Input(format!(
            "need 0 < xi_min < xi_max, got [{xi_min:e}, {xi_max:e}]"
        )));
    }
    if points < 2 {
        return Err(CliError::Input(format!(
            "points must be at least 2, got {points}"
        )));
    }
    let ratio = xi_max / xi_min;
    let mut xi: Vec<f64> = (0..points)
        .map(|i| xi_min * ratio.powf(i as f64 / (points - 1) as f64))
        .collect();
    xi[points - 1] = xi_max;

    let columns = materials
        .iter()
        .map(|m| {
            let eps = xi
                .iter()
                .map(|&x| m.eval_eps(x))
                .collect::<lifshitz::Result<Vec<_>>>()?;
            Ok(MaterialColumn {
                name: column_name(m),
                eps,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let difference = match columns.as_slice() {
        [a, b] => Some(
            a.eps
                .iter()
                .zip(&b.eps)
                .map(|(x, y)| x - y)
                .collect::<Vec<_>>(),
        ),
        _ => None,
    };

    let mut csv = String::from("xi [rad/s]");
    for c in &columns {
        write!(csv, ",eps_{} [1]", c.name).unwrap();
    }
    if let [a, b] = columns.as_slice() {
        write!(csv, ",eps_{}-eps_{} [1]", a.name, b.name).unwrap();
    }
    csv.push('\n');
    for (i, x) in xi.iter().enumerate() {
        csv.push_str(&fmt_f64(*x));
        for c in &columns {
            csv.push(',');
            csv.push_str(&fmt_f64(c.eps[i]));
        }
        if let Some(d) = &difference {
            csv.push(',');
            csv.push_str(&fmt_f64(d[i]));
        }
        csv.push('\n');
    }

    let mut summary = format!("{} materials on {points} frequencies", columns.len());
    if let Some(d) = &difference {
        let changes = d.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        write!(summary, "; difference changes sign {changes} time(s)").unwrap();
    }

    let table = MaterialsTable {
        xi,
        materials: columns,
        difference,
    };
    let mut files = Vec::new();
    if run.format.json() {
        files.push(OutputFile::new("materials.json", json_bytes(&table)));
    }
    if run.plot {
        files.extend(plot_files("materials", &csv, true));
    }
    if run.format.csv() {
        files.push(OutputFile::new("materials.csv", csv));
    }
    Ok(Outcome {
        files,
        converged: true,
        summary,
    })
}

fn spectral_csv(dec: &SpectralDecomposition) -> String {
    let mut csv = String::from(
        "n,omega_n [rad/s],g_TM [J/m^2],g_TE [J/m^2],g_total [J/m^2],quad_err [J/m^2]\n",
    );
    for t in &dec.terms {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            t.n,
            fmt_f64(t.omega_n),
            fmt_f64(t.g_tm),
            fmt_f64(t.g_te),
            fmt_f64(t.g_total()),
            fmt_f64(t.quadrature_error)
        )
        .unwrap();
    }
    csv
}

#[derive(Serialize)]
struct SpectralEntry<'a> {
    separation_nm: f64,
    #[serde(flatten)]
    decomposition: &'a SpectralDecomposition,
}

fn spectral(run: &RunConfig, config: &SystemConfig, separations_nm: &[f64]) -> Result<Outcome> {
    if separations_nm.is_empty() {
        return Err(CliError::Input("no separations given".into()));
    }
    let (quad, sum) = (run.quadrature()?, run.sum()?);
    let mut decompositions = Vec::new();
    for &d_nm in separations_nm {
        if !(d_nm > 0.0 && d_nm.is_finite()) {
            return Err(CliError::Input(format!(
                "separation must be positive, got {d_nm} nm"
            )));
        }
        decompositions.push(spectral_terms(config, d_nm * NM, &quad, &sum)?);
    }

    let mut files = Vec::new();
    let mut summary = Vec::new();
    for (d_nm, dec) in separations_nm.iter().zip(&decompositions) {
        let stem = format!("spectral_{d_nm}nm");
        let csv = spectral_csv(dec);
        if run.plot {
            files.extend(plot_files(&stem, &csv, false));
        }
        if run.format.csv() {
            files.push(OutputFile::new(format!("{stem}.csv"), csv));
        }
        summary.push(format!(
            "d = {d_nm} nm: {} terms, F = {} J/m^2{}",
            dec.terms.len(),
            fmt_f64(dec.result.total),
            if dec.result.converged {
                ""
            } else {
                " (NOT CONVERGED)"
            }
        ));
    }
    if run.format.json() {
        let entries: Vec<SpectralEntry> = separations_nm
            .iter()
            .zip(&decompositions)
            .map(|(&separation_nm, decomposition)| SpectralEntry {
                separation_nm,
                decomposition,
            })
            .collect();
        files.push(OutputFile::new("spectral.json", json_bytes(&entries)));
    }
    Ok(Outcome {
        files,
        converged: decompositions.iter().all(|d| d.result.converged),
        summary: summary.join("\n"),
    })
}

fn sweep(run: &RunConfig, config: &SystemConfig) -> Result<Outcome> {
    let Task::Sweep {
        d_min_nm,
        d_max_nm,
        points_per_decade,
        components,
        nonretarded,
        entropic,
        radius_m,
        ..
    } = run.task
    else {
        unreachable!("sweep called with another task")
    };
    if let Some(r) = radius_m {
        analysis::sphere_plate_force(0.0, r)?;
    }
    let table = analysis::sweep(
        config,
        d_min_nm * NM,
        d_max_nm * NM,
        points_per_decade,
        &run.quadrature()?,
        &run.sum()?,
    )?;
    let columns = CsvColumns {
        components,
        nonretarded,
        entropic,
        sphere_radius: radius_m,
    };
    let csv = table.to_csv(columns);
    let converged_rows = table.rows.iter().filter(|r| r.converged()).count();

    let mut files = Vec::new();
    if run.format.json() {
        let mut json = table.to_json();
        json.push('\n');
        files.push(OutputFile::new("sweep.json", json));
    }
    if run.plot {
        files.extend(plot_files("sweep", &csv, true));
    }
    if run.format.csv() {
        files.push(OutputFile::new("sweep.csv", csv));
    }
    let mut summary = format!(
        "{} separations, {converged_rows} converged",
        table.rows.len()
    );
    if let Some(row) = table
        .rows
        .windows(2)
        .find(|w| w[0].retarded.total * w[1].retarded.total < 0.0)
    {
        write!(
            summary,
            "; retarded energy changes sign between {:.4} and {:.4} nm",
            row[0].separation / NM,
            row[1].separation / NM
        )
        .unwrap();
    }
    if converged_rows == 0 {
        return Err(CliError::NotConverged(format!(
            "no row of the sweep converged; raise --max-n or loosen --rel-tol ({summary})"
        )));
    }
    Ok(Outcome {
        files,
        // Individual rows are flagged in the table; only a total failure is fatal.
        converged: true,
        summary,
    })
}

fn feature_row(csv: &mut String, name: &str, feature: Option<&Feature>, status: &str) {
    match feature {
        Some(f) => writeln!(
            csv,
            "{name},{status},{},{},{},{},{}",
            fmt_f64(f.d / NM),
            fmt_f64(f.energy),
            fmt_f64(f.tm_energy),
            fmt_f64(f.te_energy),
            f.sphere_plate_force.map(fmt_f64).unwrap_or_default()
        ),
        None => writeln!(csv, "{name},{status},,,,,"),
    }
    .unwrap();
}

fn features(run: &RunConfig, config: &SystemConfig) -> Result<Outcome> {
    let Task::Features {
        crossover_bracket_nm: c,
        max_bracket_nm: m,
        tm_zero_bracket_nm: t,
        tol_nm,
        radius_m,
        ..
    } = run.task
    else {
        unreachable!("features called with another task")
    };
    let request = FeatureRequest {
        crossover_bracket: (c[0] * NM, c[1] * NM),
        max_repulsion_bracket: (m[0] * NM, m[1] * NM),
        tm_zero_bracket: (t[0] * NM, t[1] * NM),
        tol_d: tol_nm * NM,
        sphere_radius: radius_m,
    };
    let report = analysis::features(config, &request, &run.quadrature()?, &run.sum()?)?;

    let mut csv = String::from(
        "feature,status,d_nm,F [J/m^2],F_TM [J/m^2],F_TE [J/m^2],F_sphere_plate [N]\n",
    );
    let mut summary = Vec::new();
    for (name, feature) in [
        ("crossover", report.crossover.as_ref()),
        ("max_repulsion", report.max_repulsion.as_ref()),
        ("tm_zero", report.tm_zero.as_ref()),
    ] {
        let status = match feature {
            Some(f) => {
                summary.push(format!(
                    "{name}: d = {:.4} nm, F = {:.6e} J/m^2",
                    f.d / NM,
                    f.energy
                ));
                "found".to_string()
            }
            None => {
                let absence = report.absent.iter().find(|a| a.feature == name);
                let code = absence.map_or("ABSENT", |a| a.code.as_str());
                summary.push(format!("{name}: absent ({code})"));
                code.to_string()
            }
        };
        feature_row(&mut csv, name, feature, &status);
    }

    let mut files = Vec::new();
    if run.format.json() {
        let mut json = report.to_json();
        json.push('\n');
        files.push(OutputFile::new("features.json", json));
    }
    if run.format.csv() {
        files.push(OutputFile::new("features.csv", csv));
    }
    Ok(Outcome {
        files,
        converged: true,
        summary: summary.join("\n"),
    })
}
