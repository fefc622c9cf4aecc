use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;
use tameaut::search::{SearchConfig, Strategy};
use tameaut::Field;

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Field characteristic; `verify` accepts it repeatedly.
    #[arg(long)]
    pub p: Vec<u64>,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Ascending coefficients of a monic irreducible modulus, e.g. `2,0,1`.
    #[arg(long)]
    pub modulus: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = tameaut::DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[arg(long, default_value_t = 12)]
    pub max_deg: u32,
    /// `bfs` or `mitm`.
    #[arg(long, default_value = "mitm")]
    pub strategy: String,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

/// Validated configuration echoed into every report. The worker count is
/// left out so reports do not depend on it.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub fields: Vec<String>,
    pub n: usize,
    pub seed: u64,
    pub degree_cap: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

fn parse_modulus(s: &str) -> Result<Vec<u64>> {
    s.split(',').map(|c| c.trim().parse::<u64>().with_context(|| format!("bad modulus coefficient `{c}`"))).collect()
}

impl CommonArgs {
    pub fn fields(&self, default: &[u64]) -> Result<Vec<Field>> {
        let ps: Vec<u64> = if self.p.is_empty() { default.to_vec() } else { self.p.clone() };
        let modulus = self.modulus.as_deref().map(parse_modulus).transpose()?;
        ps.iter()
            .map(|&p| {
                Field::new(p, self.k, modulus.as_deref()).with_context(|| format!("invalid field p={p} k={}", self.k))
            })
            .collect()
    }

    /// The single field of commands other than `verify`, F_3 by default.
    pub fn field(&self) -> Result<Field> {
        if self.p.len() > 1 {
            bail!("this command takes a single --p");
        }
        let mut fields = self.fields(&[3])?;
        Ok(fields.remove(0))
    }

    pub fn require_n(&self, min: usize, what: &str) -> Result<()> {
        if self.n < min {
            bail!("{what} needs --n {min} or more, got {}", self.n);
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            bail!("--n must be positive");
        }
        if self.degree_cap == 0 {
            bail!("--degree-cap must be positive");
        }
        Ok(())
    }

    pub fn run_config(&self, command: &'static str, fields: &[Field]) -> RunConfig {
        RunConfig {
            command,
            fields: fields.iter().map(|f| f.descriptor()).collect(),
            n: self.n,
            seed: self.seed,
            degree_cap: self.degree_cap,
            search: None,
            samples: None,
            out: self.out.as_ref().map(|p| p.display().to_string()),
        }
    }
}

impl SearchArgs {
    pub fn config(&self, degree_cap: u32) -> Result<SearchConfig> {
        let strategy: Strategy = self.strategy.parse()?;
        if self.workers == 0 {
            bail!("--workers must be positive");
        }
        let cfg =
            SearchConfig { max_len: self.max_len, max_deg: self.max_deg, degree_cap, strategy, workers: self.workers };
        cfg.validate()?;
        Ok(cfg)
    }
}
