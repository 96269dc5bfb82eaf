//! The three subcommands: `run` (Monte Carlo sweep), `ed` (dense reference
//! energies over the same grid), `compare` (per-point relative errors).

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_pcg::Pcg64Mcg;

use stabsse_core::ed::{
    build_dense, mean_energy_full, mean_energy_truncated, symmetric_eigenvalues,
};
use stabsse_core::sse::run_schedule;

use crate::config::RunConfig;

pub const RUN_HEADER: &str = "T,beta,mean_n,energy,energy_stderr,state_accept,op_accept,seed";
pub const ED_HEADER: &str = "T,beta,energy_truncated_L,energy_full";

pub fn cmd_run(config: &RunConfig) -> Result<()> {
    config.validate()?;
    let catalog = config.build_catalog()?;
    let grid = config.grid()?;
    let mut rng = Pcg64Mcg::seed_from_u64(config.seed);
    let result = run_schedule(
        &catalog,
        config.cutoff,
        &grid,
        config.therm,
        config.meas,
        &mut rng,
    )?;

    let mut csv = config.comment_block();
    csv.push_str(RUN_HEADER);
    csv.push('\n');
    for p in result.points() {
        csv.push_str(&format!(
            "{:.6},{:.9},{:.9},{:.9},{:.9},{:.6},{:.6},{}\n",
            p.temperature,
            p.beta,
            p.mean_n,
            p.energy,
            p.energy_stderr,
            p.state_accept_rate,
            p.op_accept_rate,
            config.seed,
        ));
    }
    write_out(&config.out, &csv)?;
    if result.truncation_suspect() {
        eprintln!(
            "warning: <n> approaches L = {} at low temperature; the expansion order is \
             too small there (compare against the truncated reference, or raise L)",
            config.cutoff
        );
    }
    eprintln!(
        "wrote {} temperature rows to {}",
        result.points().len(),
        config.out
    );
    Ok(())
}

pub fn cmd_ed(config: &RunConfig) -> Result<()> {
    let catalog = config.build_catalog()?;
    let grid = config.grid()?;
    let hamiltonian = build_dense(&catalog)?;
    let spectrum = symmetric_eigenvalues(&hamiltonian)?;

    let mut csv = config.comment_block();
    csv.push_str(ED_HEADER);
    csv.push('\n');
    for &t in &grid {
        let beta = 1.0 / t;
        let truncated = mean_energy_truncated(&spectrum, beta, config.cutoff)?;
        let full = mean_energy_full(&spectrum, beta)?;
        csv.push_str(&format!(
            "{:.6},{:.9},{:.9},{:.9}\n",
            t, beta, truncated, full
        ));
    }
    write_out(&config.out, &csv)?;
    eprintln!("wrote {} reference rows to {}", grid.len(), config.out);
    Ok(())
}

/// Returns whether the comparison passed the threshold.
pub fn cmd_compare(mc_path: &Path, ed_path: &Path, threshold: f64) -> Result<bool> {
    let mc = CsvTable::read(mc_path)?;
    let ed = CsvTable::read(ed_path)?;
    let mc_t = mc.column("T")?;
    let mc_e = mc.column("energy")?;
    let ed_t = ed.column("T")?;
    // Prefer the truncated reference (same expansion order as the run);
    // fall back so two Monte Carlo files can be compared directly.
    let ed_e = ed
        .column("energy_truncated_L")
        .or_else(|_| ed.column("energy"))
        .or_else(|_| ed.column("energy_full"))?;

    if mc_t.len() != ed_t.len() {
        bail!(
            "temperature grids differ: {} rows vs {} rows",
            mc_t.len(),
            ed_t.len()
        );
    }
    for (i, (a, b)) in mc_t.iter().zip(&ed_t).enumerate() {
        if (a - b).abs() > 1e-9 {
            bail!("temperature grids differ at row {}: {a} vs {b}", i + 1);
        }
    }
    if mc_t.is_empty() {
        bail!("no data rows to compare");
    }

    println!(
        "{:>10} {:>16} {:>16} {:>12}",
        "T", "E_mc", "E_ref", "rel_err"
    );
    let mut max_err = 0.0f64;
    let mut max_t = mc_t[0];
    let mut failing = 0usize;
    for i in 0..mc_t.len() {
        let rel = ((mc_e[i] - ed_e[i]) / ed_e[i]).abs();
        let mark = if rel >= threshold { "  FAIL" } else { "" };
        println!(
            "{:>10.4} {:>16.9} {:>16.9} {:>12.6}{}",
            mc_t[i], mc_e[i], ed_e[i], rel, mark
        );
        if rel >= threshold {
            failing += 1;
        }
        if rel > max_err {
            max_err = rel;
            max_t = mc_t[i];
        }
    }
    println!("max relative error {max_err:.6} at T = {max_t:.4} (threshold {threshold})");
    if failing == 0 {
        println!("PASS");
        Ok(true)
    } else {
        println!(
            "FAIL: {failing} of {} points at or above threshold",
            mc_t.len()
        );
        Ok(false)
    }
}

fn write_out(path: &str, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {path}"))
}

struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl CsvTable {
    fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
        let header: Vec<String> = lines
            .next()
            .context("missing CSV header")?
            .split(',')
            .map(|s| s.trim().to_string())
            .collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .with_context(|| format!("row {}: bad number '{f}'", i + 1))
                })
                .collect::<Result<_>>()?;
            if row.len() != header.len() {
                bail!(
                    "row {} has {} fields, header has {}",
                    i + 1,
                    row.len(),
                    header.len()
                );
            }
            rows.push(row);
        }
        Ok(Self { header, rows })
    }

    fn column(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self
            .header
            .iter()
            .position(|h| h == name)
            .with_context(|| format!("no column '{name}' (have: {})", self.header.join(",")))?;
        Ok(self.rows.iter().map(|r| r[idx]).collect())
    }
}
