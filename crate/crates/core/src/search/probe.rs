//! Reachability probe for `x1 -> x1 + M` from the default generators.

use serde::Serialize;

use super::translate::DefaultWords;
use super::{find_word, LayerStats, SearchConfig, SearchOutcome, Verdict};
use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gens::{classify_monomial, Verdict as Class};
use crate::poly::{ExponentVector, Polynomial};
use crate::FINITE_FIELD_CAVEAT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeSource {
    Certificate,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub field: String,
    pub n: usize,
    pub target: String,
    pub classification: Class,
    pub config: SearchConfig,
    /// Whether the certificate builder was tried before searching.
    pub certificate_attempted: bool,
    pub source: ProbeSource,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub layers: Vec<LayerStats>,
    pub total_nodes: u64,
    pub total_pruned: u64,
    pub total_dedup_hits: u64,
    pub caveat: &'static str,
}

/// Classifies `M`, replays a translated certificate for good monomials and
/// for powers of a single generator (whose construction works in every odd
/// characteristic), and searches otherwise or when no certificate word
/// exists. An `Exhausted` verdict says nothing beyond the configured
/// bounds.
pub fn rips_probe(p: u64, n: usize, monomial: &ExponentVector, cfg: &SearchConfig) -> Result<ProbeReport> {
    let field = Field::prime(p)?;
    if monomial.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: monomial.nvars() });
    }
    if monomial.degree() < 2 {
        return Err(Error::InvalidArgument("the probe monomial needs degree at least 2".into()));
    }
    let class = classify_monomial(monomial, p)?;
    let words = DefaultWords::new(&field, n)?;
    let try_certificate = class.is_good() || monomial.support().len() == 1;
    let target = Endomorphism::elementary(0, &Polynomial::term(&field, monomial.clone(), field.one()))?;
    let base = |source, verdict, outcome: Option<SearchOutcome>| {
        let (layers, nodes, pruned, dedup) = match outcome {
            Some(o) => (o.layers, o.total_nodes, o.total_pruned, o.total_dedup_hits),
            None => (Vec::new(), 0, 0, 0),
        };
        ProbeReport {
            field: field.descriptor(),
            n,
            target: format!("x1 -> {}", target.image(0).render()),
            classification: class.verdict.clone(),
            config: cfg.clone(),
            certificate_attempted: try_certificate,
            source,
            verdict,
            layers,
            total_nodes: nodes,
            total_pruned: pruned,
            total_dedup_hits: dedup,
            caveat: FINITE_FIELD_CAVEAT,
        }
    };
    if try_certificate {
        if let Some(word) = words.word_for(&target)? {
            let length = word.length();
            return Ok(base(ProbeSource::Certificate, Verdict::Found { word, length }, None));
        }
    }
    let outcome = find_word(&target, words.generators(), cfg)?;
    Ok(base(ProbeSource::Search, outcome.verdict.clone(), Some(outcome)))
}
