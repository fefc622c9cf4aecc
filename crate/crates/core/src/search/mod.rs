//! Deterministic word search in the Cayley graph of a generator set.
//!
//! Breadth-first search appends letters on the right and keeps, for every
//! endomorphism, the first word reaching it in merge order (parent rank,
//! then letter rank). Layers therefore stay sorted and the first word found
//! for the target is the lexicographically least among the shortest ones.
//! Meet-in-the-middle runs the same search backwards from the target with
//! letters prepended and merge order (letter rank, parent rank).
//!
//! Children of one layer are computed in parallel and merged sequentially,
//! so outcomes and statistics do not depend on the worker count.

mod probe;
mod translate;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

pub use probe::{rips_probe, ProbeReport, ProbeSource};
pub use translate::{default_generators, DefaultWords};

use crate::endo::{Endomorphism, GeneratorSet, GeneratorWord, Letter};
use crate::error::{Error, Result};
use crate::poly::DEFAULT_DEGREE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Bfs,
    MeetInTheMiddle,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "bfs" => Ok(Strategy::Bfs),
            "mitm" | "meet-in-the-middle" => Ok(Strategy::MeetInTheMiddle),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_len: usize,
    /// Nodes of higher total degree are pruned.
    pub max_deg: u32,
    /// Hard cap for intermediate composition results.
    pub degree_cap: u32,
    pub strategy: Strategy,
    /// Worker threads; does not affect results.
    #[serde(skip)]
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_len: 6, max_deg: 12, degree_cap: DEFAULT_DEGREE_CAP, strategy: Strategy::Bfs, workers: 1 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_len == 0 || self.max_deg == 0 || self.degree_cap == 0 {
            return Err(Error::InvalidArgument("search bounds must be positive".into()));
        }
        if self.max_deg > self.degree_cap {
            return Err(Error::InvalidArgument(format!(
                "max degree {} exceeds the composition cap {}",
                self.max_deg, self.degree_cap
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Forward,
    Backward,
}

/// Statistics of one expanded layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerStats {
    pub side: Side,
    pub depth: usize,
    /// New endomorphisms in this layer.
    pub frontier: usize,
    pub generated: u64,
    pub pruned: u64,
    pub dedup_hits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// No node was pruned: within the length bound the space was explored
    /// entirely.
    Complete,
    /// Some nodes were pruned by the degree bound.
    Pruned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExhaustReason {
    LengthBound,
    /// A frontier became empty before the length bound.
    NoNewNodes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Found { word: GeneratorWord, length: u64 },
    Exhausted { completeness: Completeness, reason: ExhaustReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub layers: Vec<LayerStats>,
    pub total_nodes: u64,
    pub total_pruned: u64,
    pub total_dedup_hits: u64,
}

impl SearchOutcome {
    pub fn found_word(&self) -> Option<&GeneratorWord> {
        match &self.verdict {
            Verdict::Found { word, .. } => Some(word),
            _ => None,
        }
    }
}

/// A signed generator and the maps it contributes.
struct LetterDef {
    letter: Letter,
    forward: Endomorphism,
    backward: Endomorphism,
}

/// Letters in tie-break order: generators in declaration order, each as
/// `+1` followed by `-1` unless it is an involution.
fn letters(gens: &GeneratorSet) -> Vec<LetterDef> {
    let mut out = Vec::new();
    for g in gens.generators() {
        out.push(LetterDef {
            letter: Letter::new(g.tag.clone(), 1),
            forward: g.forward.clone(),
            backward: g.inverse.clone(),
        });
        if !g.is_involution() {
            out.push(LetterDef {
                letter: Letter::new(g.tag.clone(), -1),
                forward: g.inverse.clone(),
                backward: g.forward.clone(),
            });
        }
    }
    out
}

/// Node id and canonical key of a node added by an expansion.
type NewNode = (u32, Vec<u8>);

/// Search tree of one side: node 0 is the root.
struct Tree {
    parent: Vec<u32>,
    letter: Vec<u16>,
    layer: usize,
    index: HashMap<Vec<u8>, u32>,
    frontier: Vec<(u32, Endomorphism)>,
}

enum Child {
    Node(Vec<u8>, Endomorphism),
    Pruned,
}

impl Tree {
    fn new(root: Endomorphism) -> Tree {
        let mut index = HashMap::new();
        index.insert(root.canonical_key(), 0);
        Tree { parent: vec![0], letter: vec![0], layer: 0, index, frontier: vec![(0, root)] }
    }

    /// Letter indices from the root, in the side's reading order.
    fn word(&self, mut node: u32, side: Side) -> Vec<u16> {
        let mut out = Vec::new();
        while node != 0 {
            out.push(self.letter[node as usize]);
            node = self.parent[node as usize];
        }
        if side == Side::Forward {
            out.reverse();
        }
        out
    }

    /// Expands the frontier by one layer. Returns the stats and the new
    /// nodes with their keys, in merge order.
    fn expand(
        &mut self,
        side: Side,
        defs: &[LetterDef],
        cfg: &SearchConfig,
        pool: &rayon::ThreadPool,
    ) -> Result<(LayerStats, Vec<NewNode>)> {
        let frontier = std::mem::take(&mut self.frontier);
        let children: Vec<Vec<Child>> = pool.install(|| {
            frontier
                .par_iter()
                .map(|(_, node)| {
                    defs.iter()
                        .map(|d| {
                            let step = match side {
                                Side::Forward => &d.forward,
                                Side::Backward => &d.backward,
                            };
                            match node.compose_capped(step, cfg.degree_cap) {
                                Ok(e) if e.degree() <= cfg.max_deg => Ok(Child::Node(e.canonical_key(), e)),
                                Ok(_) | Err(Error::DegreeCapExceeded { .. }) => Ok(Child::Pruned),
                                Err(e) => Err(e),
                            }
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })?;
        self.layer += 1;
        let depth = self.layer;
        let mut stats = LayerStats { side, depth, frontier: 0, generated: 0, pruned: 0, dedup_hits: 0 };
        let mut new_ids = Vec::new();
        let mut next = Vec::new();
        // Forward: (parent rank, letter rank). Backward: (letter rank, parent rank).
        let order: Vec<(usize, usize)> = match side {
            Side::Forward => (0..frontier.len()).flat_map(|p| (0..defs.len()).map(move |l| (p, l))).collect(),
            Side::Backward => (0..defs.len()).flat_map(|l| (0..frontier.len()).map(move |p| (p, l))).collect(),
        };
        let mut children = children;
        for (p, l) in order {
            stats.generated += 1;
            match std::mem::replace(&mut children[p][l], Child::Pruned) {
                Child::Pruned => stats.pruned += 1,
                Child::Node(key, e) => {
                    if self.index.contains_key(&key) {
                        stats.dedup_hits += 1;
                        continue;
                    }
                    let id = self.parent.len() as u32;
                    self.parent.push(frontier[p].0);
                    self.letter.push(l as u16);
                    self.index.insert(key.clone(), id);
                    new_ids.push((id, key));
                    next.push((id, e));
                }
            }
        }
        stats.frontier = next.len();
        self.frontier = next;
        Ok((stats, new_ids))
    }
}

fn word_from_indices(defs: &[LetterDef], idx: &[u16]) -> GeneratorWord {
    GeneratorWord::from_letters(idx.iter().map(|&i| defs[i as usize].letter.clone()).collect())
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| Error::Internal(e.to_string()))
}

/// Shortest word over `gens` evaluating to `target`, lexicographically
/// least among the shortest, within the bounds of `cfg`.
pub fn find_word(target: &Endomorphism, gens: &GeneratorSet, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if gens.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    if target.nvars() != gens.nvars() {
        return Err(Error::ArityMismatch { expected: gens.nvars(), found: target.nvars() });
    }
    if target.field() != gens.field() {
        return Err(Error::FieldMismatch);
    }
    if !target.is_origin_preserving() {
        return Err(Error::InvalidArgument("search targets must be origin-preserving".into()));
    }
    if target.degree() > cfg.max_deg {
        return Err(Error::DegreeCapExceeded { degree: target.degree(), cap: cfg.max_deg });
    }
    let defs = letters(gens);
    let pool = build_pool(cfg.workers)?;
    let outcome = match cfg.strategy {
        Strategy::Bfs => bfs(target, gens, &defs, cfg, &pool)?,
        Strategy::MeetInTheMiddle => mitm(target, gens, &defs, cfg, &pool)?,
    };
    if let Some(w) = outcome.found_word() {
        if gens.eval_capped(w, cfg.degree_cap)? != *target {
            return Err(Error::Internal(format!("search produced a word not evaluating to the target: {w}")));
        }
    }
    Ok(outcome)
}

fn finish(verdict: Verdict, layers: Vec<LayerStats>, nodes: u64) -> SearchOutcome {
    let total_pruned = layers.iter().map(|l| l.pruned).sum();
    let total_dedup_hits = layers.iter().map(|l| l.dedup_hits).sum();
    SearchOutcome { verdict, layers, total_nodes: nodes, total_pruned, total_dedup_hits }
}

fn exhausted(layers: &[LayerStats], reason: ExhaustReason) -> Verdict {
    let pruned = layers.iter().any(|l| l.pruned > 0);
    Verdict::Exhausted { completeness: if pruned { Completeness::Pruned } else { Completeness::Complete }, reason }
}

fn found(defs: &[LetterDef], idx: &[u16]) -> Verdict {
    let word = word_from_indices(defs, idx);
    let length = word.length();
    Verdict::Found { word, length }
}

fn bfs(
    target: &Endomorphism,
    gens: &GeneratorSet,
    defs: &[LetterDef],
    cfg: &SearchConfig,
    pool: &rayon::ThreadPool,
) -> Result<SearchOutcome> {
    let target_key = target.canonical_key();
    let mut tree = Tree::new(Endomorphism::identity(gens.field(), gens.nvars()));
    let mut layers = Vec::new();
    if tree.index.contains_key(&target_key) {
        return Ok(finish(found(defs, &[]), layers, 1));
    }
    for _ in 0..cfg.max_len {
        let (stats, _) = tree.expand(Side::Forward, defs, cfg, pool)?;
        let empty = stats.frontier == 0;
        layers.push(stats);
        if let Some(&id) = tree.index.get(&target_key) {
            let nodes = tree.index.len() as u64;
            return Ok(finish(found(defs, &tree.word(id, Side::Forward)), layers, nodes));
        }
        if empty {
            let nodes = tree.index.len() as u64;
            return Ok(finish(exhausted(&layers, ExhaustReason::NoNewNodes), layers, nodes));
        }
    }
    let nodes = tree.index.len() as u64;
    Ok(finish(exhausted(&layers, ExhaustReason::LengthBound), layers, nodes))
}

fn mitm(
    target: &Endomorphism,
    gens: &GeneratorSet,
    defs: &[LetterDef],
    cfg: &SearchConfig,
    pool: &rayon::ThreadPool,
) -> Result<SearchOutcome> {
    let mut fwd = Tree::new(Endomorphism::identity(gens.field(), gens.nvars()));
    let mut bwd = Tree::new(target.clone());
    let mut layers = Vec::new();
    let nodes = |f: &Tree, b: &Tree| (f.index.len() + b.index.len()) as u64;
    if fwd.index.contains_key(&target.canonical_key()) {
        return Ok(finish(found(defs, &[]), layers, nodes(&fwd, &bwd)));
    }
    let (mut fdepth, mut bdepth) = (0usize, 0usize);
    while fdepth + bdepth < cfg.max_len {
        let (f_empty, b_empty) = (fwd.frontier.is_empty(), bwd.frontier.is_empty());
        if f_empty || b_empty {
            let n = nodes(&fwd, &bwd);
            return Ok(finish(exhausted(&layers, ExhaustReason::NoNewNodes), layers, n));
        }
        let side = if fwd.frontier.len() <= bwd.frontier.len() { Side::Forward } else { Side::Backward };
        let grown = match side {
            Side::Forward => &mut fwd,
            Side::Backward => &mut bwd,
        };
        let (stats, new_ids) = grown.expand(side, defs, cfg, pool)?;
        layers.push(stats);
        match side {
            Side::Forward => fdepth += 1,
            Side::Backward => bdepth += 1,
        }
        // Meets involving the new layer; all shorter meets were ruled out
        // when earlier layers were added.
        let mut best: Option<Vec<u16>> = None;
        for (id, key) in &new_ids {
            let (f_id, b_id) = match side {
                Side::Forward => match bwd.index.get(key) {
                    Some(&b) => (*id, b),
                    None => continue,
                },
                Side::Backward => match fwd.index.get(key) {
                    Some(&f) => (f, *id),
                    None => continue,
                },
            };
            let mut w = fwd.word(f_id, Side::Forward);
            w.extend(bwd.word(b_id, Side::Backward));
            if best.as_ref().is_none_or(|b| (w.len(), &w) < (b.len(), b)) {
                best = Some(w);
            }
        }
        if let Some(w) = best {
            let n = nodes(&fwd, &bwd);
            return Ok(finish(found(defs, &w), layers, n));
        }
    }
    let n = nodes(&fwd, &bwd);
    Ok(finish(exhausted(&layers, ExhaustReason::LengthBound), layers, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::gens::psi;
    use crate::poly::Polynomial;

    fn cfg(strategy: Strategy, max_len: usize) -> SearchConfig {
        SearchConfig { max_len, strategy, ..SearchConfig::default() }
    }

    #[test]
    fn trivial_targets() {
        let k = Field::prime(3).unwrap();
        let gens = default_generators(&k, 4).unwrap();
        for s in [Strategy::Bfs, Strategy::MeetInTheMiddle] {
            let id = find_word(&Endomorphism::identity(&k, 4), &gens, &cfg(s, 3)).unwrap();
            assert_eq!(id.found_word().unwrap(), &GeneratorWord::empty());
            let p = find_word(&psi(&k, 4).unwrap(), &gens, &cfg(s, 3)).unwrap();
            assert_eq!(p.found_word().unwrap().render(), "psi");
        }
    }

    #[test]
    fn strategies_agree() {
        let k = Field::prime(3).unwrap();
        let gens = default_generators(&k, 4).unwrap();
        let w = GeneratorWord::parse("t psi s2 psi^-1 s1").unwrap();
        let target = gens.eval(&w).unwrap();
        let a = find_word(&target, &gens, &cfg(Strategy::Bfs, 5)).unwrap();
        let b = find_word(&target, &gens, &cfg(Strategy::MeetInTheMiddle, 5)).unwrap();
        assert_eq!(a.found_word(), b.found_word());
        assert!(a.found_word().unwrap().length() <= 5);
    }

    #[test]
    fn preconditions() {
        let k = Field::prime(3).unwrap();
        let gens = default_generators(&k, 4).unwrap();
        let affine = Endomorphism::elementary_with(0, &Polynomial::one(&k, 4), false).unwrap();
        assert!(matches!(find_word(&affine, &gens, &cfg(Strategy::Bfs, 2)), Err(Error::InvalidArgument(_))));
        let big = Endomorphism::elementary(0, &Polynomial::parse(&k, 4, "x2^13").unwrap()).unwrap();
        assert!(matches!(find_word(&big, &gens, &cfg(Strategy::Bfs, 2)), Err(Error::DegreeCapExceeded { .. })));
        let empty = GeneratorSet::new("none", &k, 4);
        assert_eq!(find_word(&big, &empty, &cfg(Strategy::Bfs, 2)).unwrap_err(), Error::EmptyGeneratorSet);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let k = Field::prime(3).unwrap();
        let gens = default_generators(&k, 4).unwrap();
        let target = Endomorphism::elementary(0, &Polynomial::parse(&k, 4, "x2*x4").unwrap()).unwrap();
        let one = find_word(&target, &gens, &SearchConfig { workers: 1, ..cfg(Strategy::Bfs, 4) }).unwrap();
        let four = find_word(&target, &gens, &SearchConfig { workers: 4, ..cfg(Strategy::Bfs, 4) }).unwrap();
        assert_eq!(one, four);
    }
}
