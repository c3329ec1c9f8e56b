//! CSV output.
//!
//! Every file opens with `#` metadata lines: the crate version, the
//! configuration hash and, last, a generation timestamp. The rest of the
//! file depends only on the configuration. Reals are written with 17
//! significant digits; fits that do not apply are left empty.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use super::config::ExperimentConfig;
use super::run::{config_hash, SweepResult};
use crate::diagnostics::FitResult;
use crate::error::{Error, Result};
use crate::pseudoclassical::SectionPoint;

/// Formats a real with 17 significant digits; non-finite values become empty.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

fn fit_cells(fit: &Option<FitResult>) -> [String; 2] {
    match fit {
        Some(f) => [format_real(f.value), format_real(f.r_squared)],
        None => [String::new(), String::new()],
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

struct CsvFile {
    path: PathBuf,
    writer: csv::Writer<BufWriter<File>>,
}

impl CsvFile {
    fn create(path: PathBuf, hash: &str, extra: &[String], header: &[&str]) -> Result<Self> {
        let file = File::create(&path).map_err(io_err(&path))?;
        let mut w = BufWriter::new(file);
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut meta = format!(
            "# kicked-rotor {}\n# config_sha256 {hash}\n",
            env!("CARGO_PKG_VERSION")
        );
        for line in extra {
            meta.push_str(&format!("# {line}\n"));
        }
        meta.push_str(&format!("# generated_unix {stamp}\n"));
        w.write_all(meta.as_bytes()).map_err(io_err(&path))?;
        let mut writer = csv::Writer::from_writer(w);
        writer.write_record(header).map_err(|e| csv_err(&path, e))?;
        Ok(CsvFile { path, writer })
    }

    fn row<I, S>(&mut self, cells: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer
            .write_record(cells)
            .map_err(|e| csv_err(&self.path, e))
    }

    fn finish(mut self) -> Result<PathBuf> {
        self.writer.flush().map_err(io_err(&self.path))?;
        Ok(self.path)
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    }
}

/// True for a metadata line, which tools comparing outputs should skip.
pub fn is_metadata_line(line: &str) -> bool {
    line.starts_with('#')
}

/// Writes the summary, energy series and distribution files of a sweep into
/// `dir` (created if missing) and returns their paths.
///
/// * `<name>.csv`: one row per sweep point.
/// * `<name>_series.csv`: `E` and the zero-momentum fraction after every kick.
/// * `<name>_dist_<point>_k<kick>.csv`: momentum distribution `(p, probability)`.
pub fn write_sweep(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let cfg = &result.config;
    let name = &cfg.name;
    let axis_col = result.axis().map_or("point", |a| a.column());
    let hash = &result.config_hash;
    let mut written = Vec::new();

    let mut summary = CsvFile::create(
        dir.join(format!("{name}.csv")),
        hash,
        &[],
        &[
            axis_col,
            "kicks",
            "energy",
            "p0_fraction",
            "q",
            "q_r2",
            "diffusion",
            "diffusion_r2",
            "xi",
            "xi_r2",
            "n_max",
            "status",
        ],
    )?;
    for row in result.rows() {
        let [q, q_r2] = fit_cells(&row.power_law);
        let [d, d_r2] = fit_cells(&row.diffusion);
        let [xi, xi_r2] = fit_cells(&row.localization);
        summary.row([
            format_real(row.axis_value),
            row.params.kicks.to_string(),
            format_real(row.energy),
            format_real(row.p0_fraction),
            q,
            q_r2,
            d,
            d_r2,
            xi,
            xi_r2,
            row.n_max.to_string(),
            row.status.label().to_string(),
        ])?;
    }
    written.push(summary.finish()?);

    if cfg.output.series {
        let mut series = CsvFile::create(
            dir.join(format!("{name}_series.csv")),
            hash,
            &[],
            &[axis_col, "kick", "energy", "p0_fraction"],
        )?;
        for point in &result.points {
            let Some(traj) = &point.trajectory else {
                continue;
            };
            let v = format_real(point.row.axis_value);
            for (t, (e, p0)) in traj.energies.iter().zip(&traj.p0_fractions).enumerate() {
                series.row([v.clone(), t.to_string(), format_real(*e), format_real(*p0)])?;
            }
        }
        written.push(series.finish()?);
    }

    if cfg.output.distributions {
        for (i, point) in result.points.iter().enumerate() {
            let Some(traj) = &point.trajectory else {
                continue;
            };
            let mut kicks: Vec<usize> = traj.snapshots.iter().map(|(k, _)| *k).collect();
            kicks.push(traj.kicks());
            kicks.dedup();
            for kick in kicks {
                let dist = traj.snapshot(kick).expect("recorded snapshot");
                let meta = [
                    format!("{axis_col} {}", format_real(point.row.axis_value)),
                    format!("kick {kick}"),
                ];
                let mut f = CsvFile::create(
                    dir.join(format!("{name}_dist_{i:03}_k{kick}.csv")),
                    hash,
                    &meta,
                    &["p", "probability"],
                )?;
                for &(p, w) in dist.histogram(cfg.output.bins_per_unit).points() {
                    f.row([format_real(p), format_real(w)])?;
                }
                written.push(f.finish()?);
            }
        }
    }
    Ok(written)
}

/// Writes `<name>_section_<i>.csv` with columns `seed, step, theta, J`, one
/// file per section, ordered by seed then step.
pub fn write_sections(
    config: &ExperimentConfig,
    sections: &[Vec<SectionPoint>],
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let hash = config_hash(config);
    let mut written = Vec::new();
    for (i, (spec, points)) in config.sections.iter().zip(sections).enumerate() {
        let meta = [
            format!("k_eps {}", spec.k_eps),
            format!("alpha {}", spec.alpha),
            format!("ratio {}", spec.ratio),
            format!("phase0 {}", spec.phase0),
        ];
        let mut f = CsvFile::create(
            dir.join(format!("{}_section_{i}.csv", config.name)),
            &hash,
            &meta,
            &["seed", "step", "theta", "J"],
        )?;
        for p in points {
            f.row([
                p.seed.to_string(),
                p.step.to_string(),
                format_real(p.theta),
                format_real(p.j),
            ])?;
        }
        written.push(f.finish()?);
    }
    Ok(written)
}
