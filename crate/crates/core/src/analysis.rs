//! Distance sweeps and feature finders on top of [`crate::lifshitz`].

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lifshitz::{
    entropic_term, free_energy, FreeEnergyResult, Mode, QuadratureSpec, SumSpec, SystemConfig,
};
use crate::{Error, Result};

/// Number of log-spaced points in the pre-scan of [`find_max_repulsion`].
pub const MAX_PRESCAN_POINTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// m
    pub separation: f64,
    pub retarded: FreeEnergyResult,
    pub nonretarded: FreeEnergyResult,
    /// Half-weighted `n = 0` TM term, J/m².
    pub entropic: f64,
}

impl SweepRow {
    pub fn converged(&self) -> bool {
        self.retarded.converged && self.nonretarded.converged
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    /// K
    pub temperature: f64,
    pub rows: Vec<SweepRow>,
}

/// Optional CSV columns; `d_nm`, `F_ret` and `converged` are always written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvColumns {
    pub components: bool,
    pub nonretarded: bool,
    pub entropic: bool,
    /// Sphere radius in m for a Derjaguin force column.
    pub sphere_radius: Option<f64>,
}

impl CsvColumns {
    pub const ALL: CsvColumns = CsvColumns {
        components: true,
        nonretarded: true,
        entropic: true,
        sphere_radius: None,
    };
}

impl Default for CsvColumns {
    fn default() -> Self {
        Self::ALL
    }
}

/// Formats with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl SweepTable {
    pub fn to_csv(&self, columns: CsvColumns) -> String {
        let mut header = vec!["d_nm", "F_ret [J/m^2]"];
        if columns.components {
            header.extend(["F_ret_TM [J/m^2]", "F_ret_TE [J/m^2]"]);
        }
        if columns.nonretarded {
            header.push("F_nonret [J/m^2]");
        }
        if columns.entropic {
            header.push("F_entropic [J/m^2]");
        }
        if columns.sphere_radius.is_some() {
            header.push("F_sphere_plate [N]");
        }
        header.push("converged");

        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![fmt_f64(row.separation * 1e9), fmt_f64(row.retarded.total)];
            if columns.components {
                cells.push(fmt_f64(row.retarded.tm_total));
                cells.push(fmt_f64(row.retarded.te_total));
            }
            if columns.nonretarded {
                cells.push(fmt_f64(row.nonretarded.total));
            }
            if columns.entropic {
                cells.push(fmt_f64(row.entropic));
            }
            if let Some(r) = columns.sphere_radius {
                cells.push(fmt_f64(derjaguin(row.retarded.total, r)));
            }
            cells.push(row.converged().to_string());
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep tables always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            source_name: "sweep json".into(),
            line: e.line(),
            message: e.to_string(),
        })
    }
}

/// Log-spaced grid from `d_min` to `d_max` inclusive with at least
/// `points_per_decade` points per decade.
pub fn log_grid(d_min: f64, d_max: f64, points_per_decade: usize) -> Result<Vec<f64>> {
    if !(d_min > 0.0 && d_min < d_max && d_max.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "need 0 < d_min < d_max, got [{d_min:e}, {d_max:e}]"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::InvalidInput(
            "points_per_decade must be at least 1".into(),
        ));
    }
    let decades = (d_max / d_min).log10();
    let intervals = ((decades * points_per_decade as f64) - 1e-9)
        .ceil()
        .max(1.0) as usize;
    let ratio = d_max / d_min;
    let mut grid: Vec<f64> = (0..=intervals)
        .map(|i| d_min * ratio.powf(i as f64 / intervals as f64))
        .collect();
    grid[0] = d_min;
    grid[intervals] = d_max;
    Ok(grid)
}

fn sweep_row(
    config: &SystemConfig,
    d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<SweepRow> {
    let retarded = free_energy(config, d, Mode::Retarded, quad, sum)?;
    let nonretarded = free_energy(config, d, Mode::Nonretarded, quad, sum)?;
    let entropic = match entropic_term(config, d, quad) {
        Ok(v) => v,
        Err(Error::NoConvergence { partial, .. }) => 0.5 * partial,
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        separation: d,
        retarded,
        nonretarded,
        entropic,
    })
}

/// Retarded, nonretarded and entropic energies on a log grid. Rows are
/// evaluated in parallel on the current rayon pool; non-converged rows are
/// flagged, not dropped.
pub fn sweep(
    config: &SystemConfig,
    d_min: f64,
    d_max: f64,
    points_per_decade: usize,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<SweepTable> {
    let grid = log_grid(d_min, d_max, points_per_decade)?;
    sweep_at(config, &grid, quad, sum)
}

/// Sweep over an explicit list of separations, in the given order.
pub fn sweep_at(
    config: &SystemConfig,
    grid: &[f64],
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<SweepTable> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("separation grid is empty".into()));
    }
    let rows = grid
        .par_iter()
        .map(|&d| sweep_row(config, d, quad, sum))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        temperature: config.temperature(),
        rows,
    })
}

/// [`sweep`] on a dedicated pool of `workers` threads.
pub fn sweep_with_workers(
    config: &SystemConfig,
    d_min: f64,
    d_max: f64,
    points_per_decade: usize,
    quad: &QuadratureSpec,
    sum: &SumSpec,
    workers: usize,
) -> Result<SweepTable> {
    with_workers(workers, || {
        sweep(config, d_min, d_max, points_per_decade, quad, sum)
    })
}

/// Runs `f` on a fresh rayon pool with `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot build thread pool: {e}")))?;
    pool.install(f)
}

/// Which component of the retarded free energy a finder works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signal {
    Total,
    Tm,
}

impl Signal {
    fn of(self, r: &FreeEnergyResult) -> f64 {
        match self {
            Signal::Total => r.total,
            Signal::Tm => r.tm_total,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Signal::Total => "retarded free energy",
            Signal::Tm => "TM free energy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    /// m
    pub d: f64,
    /// Final bracket `[lo, hi]` in m, width ≤ `tol_d`.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Retarded free energy at `d`.
    pub at_root: FreeEnergyResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxResult {
    /// m
    pub d: f64,
    /// J/m²
    pub value: f64,
    /// Final golden-section bracket in m.
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub at_max: FreeEnergyResult,
}

fn check_bracket(d_lo: f64, d_hi: f64, tol_d: f64) -> Result<()> {
    if !(d_lo > 0.0 && d_lo < d_hi && d_hi.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "bracket must satisfy 0 < d_lo < d_hi, got [{d_lo:e}, {d_hi:e}]"
        )));
    }
    if !(tol_d > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tol_d must be positive, got {tol_d:e}"
        )));
    }
    Ok(())
}

fn retarded(
    config: &SystemConfig,
    d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<FreeEnergyResult> {
    free_energy(config, d, Mode::Retarded, quad, sum)
}

/// Bisection for a zero of `signal(d)` in `[d_lo, d_hi]`, stopping when the
/// bracket is narrower than `tol_d` and returning its midpoint.
pub fn find_root(
    config: &SystemConfig,
    signal: Signal,
    d_lo: f64,
    d_hi: f64,
    tol_d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<RootResult> {
    check_bracket(d_lo, d_hi, tol_d)?;
    let (f_lo, f_hi) = rayon::join(
        || retarded(config, d_lo, quad, sum),
        || retarded(config, d_hi, quad, sum),
    );
    let s_lo = signal.of(&f_lo?);
    let s_hi = signal.of(&f_hi?);
    if s_lo == 0.0 || s_hi == 0.0 {
        let d = if s_lo == 0.0 { d_lo } else { d_hi };
        return Ok(RootResult {
            d,
            bracket: (d, d),
            iterations: 0,
            at_root: retarded(config, d, quad, sum)?,
        });
    }
    if s_lo.is_sign_negative() == s_hi.is_sign_negative() {
        return Err(Error::NoSignChange {
            signal: signal.name().into(),
            d_lo,
            d_hi,
        });
    }
    let lo_negative = s_lo.is_sign_negative();
    let (mut lo, mut hi) = (d_lo, d_hi);
    let mut iterations = 0;
    while hi - lo > tol_d {
        let mid = 0.5 * (lo + hi);
        let s_mid = signal.of(&retarded(config, mid, quad, sum)?);
        iterations += 1;
        if s_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if s_mid.is_sign_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = 0.5 * (lo + hi);
    Ok(RootResult {
        d,
        bracket: (lo, hi),
        iterations,
        at_root: retarded(config, d, quad, sum)?,
    })
}

/// Separation at which the retarded free energy changes sign.
pub fn find_sign_crossover(
    config: &SystemConfig,
    d_lo: f64,
    d_hi: f64,
    tol_d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<RootResult> {
    find_root(config, Signal::Total, d_lo, d_hi, tol_d, quad, sum)
}

/// Separation at which the summed TM contribution vanishes, leaving the
/// energy entirely to TE modes.
pub fn find_tm_zero(
    config: &SystemConfig,
    d_lo: f64,
    d_hi: f64,
    tol_d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<RootResult> {
    find_root(config, Signal::Tm, d_lo, d_hi, tol_d, quad, sum)
}

/// Location and value of the repulsion maximum in `[d_lo, d_hi]`.
///
/// A 20-point log-spaced pre-scan finds the repulsive region; more than one
/// repulsive interval or more than one local maximum is reported as
/// [`Error::Ambiguous`], as is a maximum sitting on the bracket edge. The
/// scan neighbours of the best point then bracket a golden-section search.
pub fn find_max_repulsion(
    config: &SystemConfig,
    d_lo: f64,
    d_hi: f64,
    tol_d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<MaxResult> {
    check_bracket(d_lo, d_hi, tol_d)?;
    let grid: Vec<f64> = {
        let ratio = d_hi / d_lo;
        let last = MAX_PRESCAN_POINTS - 1;
        (0..MAX_PRESCAN_POINTS)
            .map(|i| match i {
                0 => d_lo,
                i if i == last => d_hi,
                i => d_lo * ratio.powf(i as f64 / last as f64),
            })
            .collect()
    };
    let values = grid
        .par_iter()
        .map(|&d| retarded(config, d, quad, sum).map(|r| r.total))
        .collect::<Result<Vec<f64>>>()?;

    if values.iter().all(|&v| v <= 0.0) {
        return Err(Error::NoRepulsion { d_lo, d_hi });
    }
    let runs = values
        .windows(2)
        .filter(|w| w[0] <= 0.0 && w[1] > 0.0)
        .count()
        + usize::from(values[0] > 0.0);
    if runs > 1 {
        return Err(Error::Ambiguous(format!(
            "{runs} separate repulsive intervals in [{d_lo:e}, {d_hi:e}] m"
        )));
    }
    let peaks: Vec<usize> = (0..values.len())
        .filter(|&i| {
            values[i] > 0.0
                && (i == 0 || values[i] > values[i - 1])
                && (i + 1 == values.len() || values[i] >= values[i + 1])
        })
        .collect();
    if peaks.len() > 1 {
        return Err(Error::Ambiguous(format!(
            "{} local maxima of the repulsive branch in [{d_lo:e}, {d_hi:e}] m",
            peaks.len()
        )));
    }
    let k = peaks[0];
    if k == 0 || k + 1 == values.len() {
        return Err(Error::Ambiguous(format!(
            "repulsion is largest at the bracket edge d = {:e} m",
            grid[k]
        )));
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (grid[k - 1], grid[k + 1]);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = retarded(config, x1, quad, sum)?.total;
    let mut f2 = retarded(config, x2, quad, sum)?.total;
    let mut iterations = 0;
    while b - a > tol_d {
        iterations += 1;
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = retarded(config, x1, quad, sum)?.total;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = retarded(config, x2, quad, sum)?.total;
        }
    }
    let d = 0.5 * (a + b);
    let at_max = retarded(config, d, quad, sum)?;
    Ok(MaxResult {
        d,
        value: at_max.total,
        bracket: (a, b),
        iterations,
        at_max,
    })
}

/// Derjaguin sphere–plate force `2πR·F(d)` in N; positive is repulsive.
pub fn sphere_plate_force(free_energy: f64, sphere_radius: f64) -> Result<f64> {
    if !(sphere_radius > 0.0 && sphere_radius.is_finite()) {
        return Err(Error::Domain(format!(
            "sphere radius must be positive, got {sphere_radius:e}"
        )));
    }
    Ok(derjaguin(free_energy, sphere_radius))
}

fn derjaguin(free_energy: f64, sphere_radius: f64) -> f64 {
    2.0 * std::f64::consts::PI * sphere_radius * free_energy
}

/// Brackets and tolerance for [`features`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureRequest {
    pub crossover_bracket: (f64, f64),
    pub max_repulsion_bracket: (f64, f64),
    pub tm_zero_bracket: (f64, f64),
    /// m
    pub tol_d: f64,
    /// m
    pub sphere_radius: Option<f64>,
}

impl Default for FeatureRequest {
    fn default() -> Self {
        Self {
            crossover_bracket: (1e-9, 10e-9),
            max_repulsion_bracket: (1e-9, 100e-9),
            tm_zero_bracket: (1e-9, 10e-9),
            tol_d: 1e-12,
            sphere_radius: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    /// m
    pub d: f64,
    /// Retarded free energy at `d`, J/m².
    pub energy: f64,
    pub tm_energy: f64,
    pub te_energy: f64,
    /// Final search bracket, m.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// `2πR·energy` in N, when a sphere radius was given.
    pub sphere_plate_force: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Absence {
    pub feature: String,
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureReport {
    pub request: FeatureRequest,
    pub crossover: Option<Feature>,
    pub max_repulsion: Option<Feature>,
    pub tm_zero: Option<Feature>,
    pub absent: Vec<Absence>,
}

impl FeatureReport {
    pub fn crossover_d(&self) -> Option<f64> {
        self.crossover.map(|f| f.d)
    }

    pub fn max_repulsion_d(&self) -> Option<f64> {
        self.max_repulsion.map(|f| f.d)
    }

    pub fn max_repulsion_value(&self) -> Option<f64> {
        self.max_repulsion.map(|f| f.energy)
    }

    pub fn tm_zero_d(&self) -> Option<f64> {
        self.tm_zero.map(|f| f.d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("feature reports always serialize")
    }
}

fn feature_from(
    d: f64,
    r: &FreeEnergyResult,
    bracket: (f64, f64),
    iterations: usize,
    radius: Option<f64>,
) -> Feature {
    Feature {
        d,
        energy: r.total,
        tm_energy: r.tm_total,
        te_energy: r.te_total,
        bracket,
        iterations,
        sphere_plate_force: radius.map(|r_s| derjaguin(r.total, r_s)),
    }
}

fn in_band<T>(name: &str, r: Result<T>, absent: &mut Vec<Absence>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ (Error::NoSignChange { .. } | Error::NoRepulsion { .. } | Error::Ambiguous(_))) => {
            absent.push(Absence {
                feature: name.into(),
                code: e.code().into(),
                message: e.to_string(),
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Runs all three finders; features that do not exist are listed in
/// `absent` instead of failing the report.
pub fn features(
    config: &SystemConfig,
    request: &FeatureRequest,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<FeatureReport> {
    if let Some(r) = request.sphere_radius {
        sphere_plate_force(0.0, r)?;
    }
    let radius = request.sphere_radius;
    let mut absent = Vec::new();

    let (lo, hi) = request.crossover_bracket;
    let crossover = in_band(
        "crossover",
        find_sign_crossover(config, lo, hi, request.tol_d, quad, sum),
        &mut absent,
    )?
    .map(|r| feature_from(r.d, &r.at_root, r.bracket, r.iterations, radius));

    let (lo, hi) = request.max_repulsion_bracket;
    let max_repulsion = in_band(
        "max_repulsion",
        find_max_repulsion(config, lo, hi, request.tol_d, quad, sum),
        &mut absent,
    )?
    .map(|r| feature_from(r.d, &r.at_max, r.bracket, r.iterations, radius));

    let (lo, hi) = request.tm_zero_bracket;
    let tm_zero = in_band(
        "tm_zero",
        find_tm_zero(config, lo, hi, request.tol_d, quad, sum),
        &mut absent,
    )?
    .map(|r| feature_from(r.d, &r.at_root, r.bracket, r.iterations, radius));

    Ok(FeatureReport {
        request: *request,
        crossover,
        max_repulsion,
        tm_zero,
        absent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{shipped, DielectricModel};

    fn au_bb_sio2() -> SystemConfig {
        SystemConfig::at_room_temperature(
            shipped::gold().model,
            shipped::bromobenzene().model,
            shipped::silica().model,
        )
        .unwrap()
    }

    #[test]
    fn log_grid_spans_decades() {
        let g = log_grid(1e-9, 1e-6, 16).unwrap();
        assert_eq!(g.len(), 49);
        assert_eq!(g[0], 1e-9);
        assert!((g[48] - 1e-6).abs() < 1e-21);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let ratio = g[1] / g[0];
        assert!((ratio - 10f64.powf(1.0 / 16.0)).abs() < 1e-12);
        assert!(log_grid(1e-9, 1e-9, 16).is_err());
        assert!(log_grid(0.0, 1e-6, 16).is_err());
        assert!(log_grid(1e-9, 1e-6, 0).is_err());
    }

    #[test]
    fn sphere_plate_examples() {
        assert_eq!(sphere_plate_force(0.0, 1e-6).unwrap(), 0.0);
        let r = 1.0 / (2.0 * std::f64::consts::PI);
        assert!((sphere_plate_force(1.0, r).unwrap() - 1.0).abs() < 1e-15);
        let f = sphere_plate_force(2.5e-6, 1e-5).unwrap();
        assert!((sphere_plate_force(5e-6, 1e-5).unwrap() - 2.0 * f).abs() < 1e-24);
        assert!((sphere_plate_force(2.5e-6, 3e-5).unwrap() - 3.0 * f).abs() < 1e-24);
        assert_eq!(sphere_plate_force(1.0, 0.0).unwrap_err().code(), "DOMAIN");
        assert_eq!(sphere_plate_force(1.0, -1.0).unwrap_err().code(), "DOMAIN");
    }

    #[test]
    fn csv_has_units_and_full_precision() {
        let cfg = au_bb_sio2();
        let grid = [2e-9, 8e-9];
        let table = sweep_at(&cfg, &grid, &QuadratureSpec::default(), &SumSpec::default()).unwrap();
        let csv = table.to_csv(CsvColumns {
            sphere_radius: Some(1e-5),
            ..CsvColumns::ALL
        });
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert_eq!(
            header,
            "d_nm,F_ret [J/m^2],F_ret_TM [J/m^2],F_ret_TE [J/m^2],F_nonret [J/m^2],\
             F_entropic [J/m^2],F_sphere_plate [N],converged"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 8);
        let f_ret: f64 = row[1].parse().unwrap();
        assert_eq!(f_ret.to_bits(), table.rows[0].retarded.total.to_bits());
        assert_eq!(row[7], "true");

        let minimal = table.to_csv(CsvColumns {
            components: false,
            nonretarded: false,
            entropic: false,
            sphere_radius: None,
        });
        assert!(minimal.starts_with("d_nm,F_ret [J/m^2],converged\n"));
        assert_eq!(SweepTable::from_json(&table.to_json()).unwrap(), table);
    }

    #[test]
    fn empty_sweep_is_rejected() {
        let err = sweep_at(
            &au_bb_sio2(),
            &[],
            &QuadratureSpec::default(),
            &SumSpec::default(),
        )
        .unwrap_err();
        assert_eq!(err.code(), "INVALID_INPUT");
    }

    #[test]
    fn bisection_iterations_are_bounded() {
        let (lo, hi, tol) = (1e-9, 10e-9, 0.05e-9);
        let r = find_sign_crossover(
            &au_bb_sio2(),
            lo,
            hi,
            tol,
            &QuadratureSpec::default(),
            &SumSpec::default(),
        )
        .unwrap();
        let bound = ((hi - lo) / tol).log2().ceil() as usize;
        assert!(r.iterations <= bound);
        assert!(r.bracket.1 - r.bracket.0 <= tol);
        assert!(r.bracket.0 <= r.d && r.d <= r.bracket.1);
        assert!(r.d > 2e-9 && r.d < 5e-9);
    }

    #[test]
    fn symmetric_system_has_no_features() {
        let au = shipped::gold().model;
        let cfg = SystemConfig::at_room_temperature(au.clone(), shipped::bromobenzene().model, au)
            .unwrap();
        let q = QuadratureSpec::default();
        let s = SumSpec::default();
        let err = find_sign_crossover(&cfg, 1e-9, 10e-9, 0.1e-9, &q, &s).unwrap_err();
        assert_eq!(err.code(), "NO_SIGN_CHANGE");
        let err = find_max_repulsion(&cfg, 1e-9, 100e-9, 0.1e-9, &q, &s).unwrap_err();
        assert_eq!(err.code(), "NO_REPULSION");

        let report = features(&cfg, &FeatureRequest::default(), &q, &s).unwrap();
        assert!(report.crossover.is_none() && report.max_repulsion.is_none());
        assert_eq!(report.absent.len(), 3);
    }

    #[test]
    fn bad_brackets_are_input_errors() {
        let cfg = SystemConfig::at_room_temperature(
            DielectricModel::Vacuum,
            DielectricModel::Vacuum,
            DielectricModel::Vacuum,
        )
        .unwrap();
        let q = QuadratureSpec::default();
        let s = SumSpec::default();
        assert!(find_sign_crossover(&cfg, 5e-9, 1e-9, 1e-11, &q, &s)
            .unwrap_err()
            .is_input_error());
        assert!(find_tm_zero(&cfg, 1e-9, 5e-9, 0.0, &q, &s)
            .unwrap_err()
            .is_input_error());
    }
}
