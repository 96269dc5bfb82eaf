//! Run configuration: defaults, key=value files, and the provenance comment
//! block echoed into every CSV (which parses back into the same config).

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use stabsse_core::sse::temperature_grid;
use stabsse_core::HamiltonianCatalog;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Model {
    #[value(name = "cnot_chain")]
    CnotChain,
    #[value(name = "tfi_chain")]
    TfiChain,
    #[value(name = "z2_plaquette")]
    Z2Plaquette,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::CnotChain => "cnot_chain",
            Model::TfiChain => "tfi_chain",
            Model::Z2Plaquette => "z2_plaquette",
        })
    }
}

impl FromStr for Model {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cnot_chain" => Ok(Model::CnotChain),
            "tfi_chain" => Ok(Model::TfiChain),
            "z2_plaquette" => Ok(Model::Z2Plaquette),
            other => bail!("unknown model '{other}'"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: Model,
    pub n: usize,
    pub lx: usize,
    pub ly: usize,
    pub h: f64,
    pub j: f64,
    pub j_star: f64,
    pub j_plaq: f64,
    /// Expansion cutoff L.
    pub cutoff: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
    pub therm: usize,
    pub meas: usize,
    pub seed: u64,
    pub out: String,
}

impl Default for RunConfig {
    /// The published sweep: ten-qubit CNOT chain at h/J = 4, L = 40,
    /// annealing from T = 10 down to 0.4 in steps of 0.4 with 5e4 + 5e4
    /// cycles per temperature.
    fn default() -> Self {
        Self {
            model: Model::CnotChain,
            n: 10,
            lx: 2,
            ly: 2,
            h: 4.0,
            j: 1.0,
            j_star: 1.0,
            j_plaq: 1.0,
            cutoff: 40,
            t_start: 10.0,
            t_end: 0.4,
            t_step: 0.4,
            therm: 50_000,
            meas: 50_000,
            seed: 1,
            out: String::from("run.csv"),
        }
    }
}

impl RunConfig {
    /// Load from a key=value file, or from a CSV written by this tool (its
    /// provenance comments carry the full configuration).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        if text.starts_with("## stabsse") {
            return Self::from_comments(&text);
        }
        let mut config = Self::default();
        config.apply_key_values(&text)?;
        Ok(config)
    }

    /// Apply `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_key_values(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').with_context(|| {
                format!("line {}: expected key=value, got '{line}'", lineno + 1)
            })?;
            self.apply(key.trim(), value.trim())
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(())
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
        where
            T::Err: fmt::Display,
        {
            value
                .parse()
                .map_err(|e| anyhow::anyhow!("bad value for {key}: {e}"))
        }
        match key {
            "model" => self.model = value.parse()?,
            "n" => self.n = parse(key, value)?,
            "lx" => self.lx = parse(key, value)?,
            "ly" => self.ly = parse(key, value)?,
            "h" => self.h = parse(key, value)?,
            "j" => self.j = parse(key, value)?,
            "j_star" => self.j_star = parse(key, value)?,
            "j_plaq" => self.j_plaq = parse(key, value)?,
            "L" => self.cutoff = parse(key, value)?,
            "t_start" => self.t_start = parse(key, value)?,
            "t_end" => self.t_end = parse(key, value)?,
            "t_step" => self.t_step = parse(key, value)?,
            "therm" => self.therm = parse(key, value)?,
            "meas" => self.meas = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "out" => self.out = value.to_string(),
            other => bail!("unknown config key '{other}'"),
        }
        Ok(())
    }

    /// Provenance block written at the top of every CSV. Stripping the
    /// leading `# ` turns it back into a config file that reproduces this
    /// config; the `##` prologue stays a comment either way.
    pub fn comment_block(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "## stabsse {} — reproducible sweep parameters\n",
            env!("CARGO_PKG_VERSION")
        ));
        s.push_str(&format!("# model={}\n", self.model));
        s.push_str(&format!("# n={}\n", self.n));
        s.push_str(&format!("# lx={}\n", self.lx));
        s.push_str(&format!("# ly={}\n", self.ly));
        s.push_str(&format!("# h={}\n", self.h));
        s.push_str(&format!("# j={}\n", self.j));
        s.push_str(&format!("# j_star={}\n", self.j_star));
        s.push_str(&format!("# j_plaq={}\n", self.j_plaq));
        s.push_str(&format!("# L={}\n", self.cutoff));
        s.push_str(&format!("# t_start={}\n", self.t_start));
        s.push_str(&format!("# t_end={}\n", self.t_end));
        s.push_str(&format!("# t_step={}\n", self.t_step));
        s.push_str(&format!("# therm={}\n", self.therm));
        s.push_str(&format!("# meas={}\n", self.meas));
        s.push_str(&format!("# seed={}\n", self.seed));
        s.push_str(&format!("# out={}\n", self.out));
        s
    }

    /// Rebuild a config from the comment block of a CSV.
    pub fn from_comments(text: &str) -> Result<Self> {
        let mut config = Self::default();
        let stripped: String = text
            .lines()
            .filter_map(|l| l.strip_prefix("# "))
            .map(|l| format!("{l}\n"))
            .collect();
        config.apply_key_values(&stripped)?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.therm == 0 || self.meas == 0 {
            bail!("thermalization and measurement cycle counts must be at least 1");
        }
        if self.cutoff == 0 {
            bail!("expansion cutoff L must be at least 1");
        }
        Ok(())
    }

    pub fn build_catalog(&self) -> Result<HamiltonianCatalog> {
        let catalog = match self.model {
            Model::CnotChain => HamiltonianCatalog::cnot_chain(self.n, self.h, self.j),
            Model::TfiChain => HamiltonianCatalog::tfi_chain(self.n, self.h, self.j),
            Model::Z2Plaquette => {
                HamiltonianCatalog::z2_plaquette(self.lx, self.ly, self.j_star, self.j_plaq)
            }
        };
        catalog.map_err(|e| anyhow::anyhow!("building {} catalog: {e}", self.model))
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        temperature_grid(self.t_start, self.t_end, self.t_step)
            .map_err(|e| anyhow::anyhow!("temperature grid: {e}"))
    }
}
