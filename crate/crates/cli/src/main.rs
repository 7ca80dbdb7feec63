//! `lifshitz`: tabulate permittivities, Matsubara spectra, free-energy
//! sweeps and repulsive features of three-layer systems.
//!
//! Every run writes its data files and a `manifest.json` into the output
//! directory; `lifshitz replay <manifest>` repeats the run and checks that
//! the data files come out byte-identical.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical non-convergence,
//! 1 anything else.

mod args;
mod commands;
mod config;
mod error;
mod manifest;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use lifshitz::materials::Material;

use crate::args::{Cli, Command, ReplayArgs};
use crate::commands::{execute, Outcome};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::manifest::{
    load_material, restore_material, sha256_hex, MaterialRecord, OutputRecord, RunManifest,
    MANIFEST_FILE,
};
use crate::output::write_atomic;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<()> {
    let resolved = match &command {
        Command::Materials(a) => config::materials(a)?,
        Command::Spectral(a) => config::spectral(a)?,
        Command::Sweep(a) => config::sweep(a)?,
        Command::Features(a) => config::features(a)?,
        Command::Replay(a) => return replay(a),
    };
    let (materials, records) = load_all(&resolved.run)?;
    let outcome = execute(&resolved.run, &materials)?;
    let manifest = RunManifest::new(&resolved.run, &records, Vec::new(), outcome.converged);
    finish(&resolved.out, manifest, outcome)
}

fn load_all(run: &RunConfig) -> Result<(Vec<Material>, Vec<MaterialRecord>)> {
    run.task
        .material_specs()
        .iter()
        .map(|spec| load_material(spec))
        .collect::<Result<Vec<_>>>()
        .map(|pairs| pairs.into_iter().unzip())
}

/// Writes data files and the manifest; reports non-convergence after the
/// partial output is safely on disk.
fn finish(out: &Path, mut manifest: RunManifest, outcome: Outcome) -> Result<()> {
    write_outputs(out, &mut manifest, &outcome)?;
    println!("{}", outcome.summary);
    println!(
        "wrote {} file(s) and {MANIFEST_FILE} to {}",
        outcome.files.len(),
        out.display()
    );
    if !outcome.converged {
        return Err(CliError::NotConverged(
            "at least one Matsubara sum did not converge; output is flagged in the manifest \
             (raise --max-n or loosen --rel-tol)"
                .into(),
        ));
    }
    Ok(())
}

fn write_outputs(out: &Path, manifest: &mut RunManifest, outcome: &Outcome) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|source| CliError::Write {
        path: out.to_path_buf(),
        source,
    })?;
    manifest.outputs = outcome
        .files
        .iter()
        .map(|f| OutputRecord {
            file: f.name.clone(),
            sha256: sha256_hex(&f.contents),
        })
        .collect();
    for f in &outcome.files {
        write_atomic(out, &f.name, &f.contents)?;
    }
    write_atomic(out, MANIFEST_FILE, manifest.to_json().as_bytes())
}

fn replay(args: &ReplayArgs) -> Result<()> {
    let recorded = RunManifest::load(&args.manifest)?;
    let materials = recorded
        .materials
        .iter()
        .map(restore_material)
        .collect::<Result<Vec<_>>>()?;
    let out = args.out.clone().unwrap_or_else(|| {
        let dir = args
            .manifest
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default();
        dir.join("replay")
    });
    let outcome = execute(&recorded.config, &materials)?;

    let mut manifest = RunManifest::new(
        &recorded.config,
        &recorded.materials,
        Vec::new(),
        outcome.converged,
    );
    manifest.replay_of = Some(absolute(&args.manifest).display().to_string());
    write_outputs(&out, &mut manifest, &outcome)?;

    let mut mismatches = Vec::new();
    for want in &recorded.outputs {
        match manifest.outputs.iter().find(|o| o.file == want.file) {
            Some(got) if got.sha256 == want.sha256 => {}
            Some(_) => mismatches.push(format!("{} differs", want.file)),
            None => mismatches.push(format!("{} was not produced", want.file)),
        }
    }
    if manifest.outputs.len() != recorded.outputs.len() {
        mismatches.push(format!(
            "{} files recorded, {} produced",
            recorded.outputs.len(),
            manifest.outputs.len()
        ));
    }
    if !mismatches.is_empty() {
        return Err(CliError::ReplayMismatch(mismatches.join("; ")));
    }
    println!("{}", outcome.summary);
    println!(
        "replayed {}: {} file(s) byte-identical, written to {}",
        recorded.command,
        manifest.outputs.len(),
        out.display()
    );
    if !outcome.converged {
        return Err(CliError::NotConverged(
            "the replayed run did not converge, as recorded".into(),
        ));
    }
    Ok(())
}

fn absolute(path: &Path) -> PathBuf {
    std::fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf())
}
