//! Regression suite: one named check per identity, run per field with a
//! seed derived from `(seed, check id, field)`.
//!
//! A check either passes, fails with the first counterexample it met, or
//! reports that the field is too small for it to be meaningful. The suite
//! passes iff no check fails.

mod checks;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::field::Field;

/// Operations the suite must exercise.
pub const REQUIRED_OPS: &[&str] = &[
    "gens::psi",
    "gens::psi_i",
    "gens::phi_ijk",
    "gens::build_phi_m_word",
    "gens::good_special_composite",
    "gens::commutator_phi1",
    "gens::delta_conjugation",
    "gens::bad_to_good",
    "gens::classify_monomial",
    "torus::conjugation_formula",
    "torus::weighted_action_point",
    "torus::in_commutant_form",
    "torus::commutes_with_action",
    "torus::commutator_shape_check",
    "torus::torus_rescale_conjugacy",
    "torus::linearity_via_homothety",
    "lingrp::apply_standard",
    "lingrp::compose_standard",
    "lingrp::diagonal_fixing_analysis",
    "lingrp::survey_diagonal_fixers",
];

/// Composition convention used by the oracles. `Reversed` exists to show
/// that the suite detects a swapped convention.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Standard,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub fields: Vec<String>,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub convention: Convention,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    FieldTooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub field: String,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub verdict: CheckVerdict,
    /// First counterexample, or the reason the check could not run.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub results: Vec<CheckResult>,
    pub uncovered_ops: Vec<&'static str>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width summary table, one line per result.
    pub fn table(&self) -> String {
        let w = self.results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
        let mut out = format!("{:<w$}  {:<10}  {:<15}  {}\n", "check", "field", "verdict", "detail");
        for r in &self.results {
            let verdict = match r.verdict {
                CheckVerdict::Pass => "pass",
                CheckVerdict::Fail => "FAIL",
                CheckVerdict::FieldTooSmall => "field-too-small",
            };
            out.push_str(&format!(
                "{:<w$}  {:<10}  {:<15}  {}\n",
                r.id,
                r.field,
                verdict,
                r.detail.as_deref().unwrap_or("")
            ));
        }
        let fails = self.results.iter().filter(|r| r.verdict == CheckVerdict::Fail).count();
        let small = self.results.iter().filter(|r| r.verdict == CheckVerdict::FieldTooSmall).count();
        out.push_str(&format!(
            "{} checks, {} failed, {} field-too-small: {}\n",
            self.results.len(),
            fails,
            small,
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Inputs shared by every check.
pub(crate) struct Ctx {
    pub field: Field,
    pub n: usize,
    pub samples: usize,
    pub rng: ChaCha8Rng,
    pub convention: Convention,
}

impl Ctx {
    /// `f ∘ g` under the configured convention.
    pub fn compose(&self, f: &Endomorphism, g: &Endomorphism) -> Result<Endomorphism> {
        match self.convention {
            Convention::Standard => f.compose(g),
            Convention::Reversed => g.compose(f),
        }
    }
}

/// `Ok(None)` passes; `Ok(Some(_))` is a counterexample.
pub(crate) type CheckFn = fn(&mut Ctx) -> Result<Option<String>>;

pub(crate) struct Check {
    pub id: &'static str,
    pub covers: &'static [&'static str],
    pub run: CheckFn,
}

/// FNV-1a, for per-check seeds that are stable across platforms.
fn mix(seed: u64, parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for p in parts {
        for b in p.bytes().chain(std::iter::once(0)) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Operations in [`REQUIRED_OPS`] that no check covers.
pub fn uncovered_ops() -> Vec<&'static str> {
    let checks = checks::all();
    REQUIRED_OPS.iter().copied().filter(|op| !checks.iter().any(|c| c.covers.contains(op))).collect()
}

/// Ids of all checks, in report order.
pub fn check_ids() -> Vec<&'static str> {
    checks::all().iter().map(|c| c.id).collect()
}

pub fn run_suite(fields: &[Field], n: usize, seed: u64, samples: usize) -> Result<SuiteReport> {
    run_suite_with(fields, n, seed, samples, Convention::Standard)
}

pub fn run_suite_with(
    fields: &[Field],
    n: usize,
    seed: u64,
    samples: usize,
    convention: Convention,
) -> Result<SuiteReport> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("the suite needs n >= 4, got {n}")));
    }
    if fields.is_empty() {
        return Err(Error::InvalidArgument("no fields given".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    for f in fields {
        if !f.is_finite() {
            return Err(Error::InfiniteField);
        }
    }
    let checks = checks::all();
    let jobs: Vec<(&Check, &Field)> = checks.iter().flat_map(|c| fields.iter().map(move |f| (c, f))).collect();
    let mut results: Vec<CheckResult> = jobs
        .par_iter()
        .map(|(check, field)| {
            let desc = field.descriptor();
            let check_seed = mix(seed, &[check.id, &desc]);
            let mut ctx =
                Ctx { field: (*field).clone(), n, samples, rng: ChaCha8Rng::seed_from_u64(check_seed), convention };
            let (verdict, detail) = match (check.run)(&mut ctx) {
                Ok(None) => (CheckVerdict::Pass, None),
                Ok(Some(cex)) => (CheckVerdict::Fail, Some(cex)),
                Err(Error::FieldTooSmall(why)) => (CheckVerdict::FieldTooSmall, Some(why)),
                Err(e) => (CheckVerdict::Fail, Some(format!("error: {e}"))),
            };
            CheckResult { id: check.id, field: field.to_string(), n, seed: check_seed, samples, verdict, detail }
        })
        .collect();
    let uncovered = uncovered_ops();
    if !uncovered.is_empty() {
        results.push(CheckResult {
            id: "suite-coverage",
            field: "-".into(),
            n,
            seed,
            samples,
            verdict: CheckVerdict::Fail,
            detail: Some(format!("uncovered: {}", uncovered.join(", "))),
        });
    }
    let passed = results.iter().all(|r| r.verdict != CheckVerdict::Fail);
    Ok(SuiteReport {
        config: SuiteConfig { fields: fields.iter().map(|f| f.descriptor()).collect(), n, seed, samples, convention },
        passed,
        results,
        uncovered_ops: uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_required_op_is_covered() {
        assert_eq!(uncovered_ops(), Vec::<&str>::new());
    }

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids = check_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn seeds_differ_per_check() {
        assert_ne!(mix(1, &["a", "p=3 k=1"]), mix(1, &["b", "p=3 k=1"]));
        assert_ne!(mix(1, &["ab", "c"]), mix(1, &["a", "bc"]));
    }
}
