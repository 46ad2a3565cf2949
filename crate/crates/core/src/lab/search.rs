//! Search over dealing sequences.
//!
//! Candidates are compared by score, then by the assignment sequence, so
//! equal scores resolve to the lexicographically smaller sequence. Local
//! moves swap two positions held by different players, which keeps every
//! hand at `s` cards.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficient::CoefficientEngine;
use crate::deck::DeckComposition;
use crate::error::{Error, Result};
use crate::exact::{self, ExactScalar};
use crate::lab::studies::conjecture_metric;
use crate::method::DealingMethod;

/// Longest sequence the exhaustive strategy accepts.
pub const EXHAUSTIVE_CAP: usize = 16;

/// How many co-optimal sequences are kept.
const CO_OPTIMAL_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchObjective {
    /// Leading variation-distance coefficient for the ordered deck.
    Coefficient,
    /// Spread of the position sums, see [`conjecture_metric`].
    Metric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    Exhaustive,
    Local,
    Anneal,
}

impl fmt::Display for SearchObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchObjective::Coefficient => "coefficient",
            SearchObjective::Metric => "metric",
        })
    }
}

impl FromStr for SearchObjective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coefficient" => Ok(SearchObjective::Coefficient),
            "metric" => Ok(SearchObjective::Metric),
            other => Err(Error::OutOfRange(format!("unknown objective {other:?}"))),
        }
    }
}

impl fmt::Display for SearchStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStrategy::Exhaustive => "exhaustive",
            SearchStrategy::Local => "local",
            SearchStrategy::Anneal => "anneal",
        })
    }
}

impl FromStr for SearchStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchStrategy::Exhaustive),
            "local" => Ok(SearchStrategy::Local),
            "anneal" => Ok(SearchStrategy::Anneal),
            other => Err(Error::OutOfRange(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub objective: SearchObjective,
    pub strategy: SearchStrategy,
    /// Candidate evaluations allowed after scoring the start.
    pub budget: u64,
    pub seed: u64,
    /// Starting sequence; back-and-forth when `None`.
    pub start: Option<DealingMethod>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: DealingMethod,
    pub score: ExactScalar,
    pub evaluations: u64,
    /// False when the exhaustive strategy ran out of budget.
    pub complete: bool,
    /// Distinct sequences (up to player relabeling) sharing the best score.
    pub co_optimal: Vec<DealingMethod>,
}

enum Scorer {
    Coefficient(Box<CoefficientEngine>),
    Metric,
}

impl Scorer {
    fn score(&self, method: &DealingMethod) -> Result<ExactScalar> {
        match self {
            Scorer::Coefficient(engine) => Ok(engine.evaluate(method)?.coefficient),
            Scorer::Metric => Ok(conjecture_metric(method)),
        }
    }
}

struct Tracker {
    best: DealingMethod,
    score: ExactScalar,
    co_optimal: Vec<DealingMethod>,
}

impl Tracker {
    fn new(method: DealingMethod, score: ExactScalar) -> Self {
        Self { co_optimal: vec![method.normalized()], best: method, score }
    }

    fn offer(&mut self, method: &DealingMethod, score: &ExactScalar) {
        match score.cmp(&self.score) {
            Ordering::Less => {
                self.best = method.clone();
                self.score = score.clone();
                self.co_optimal = vec![method.normalized()];
            }
            Ordering::Equal => {
                if method.assignment() < self.best.assignment() {
                    self.best = method.clone();
                }
                let normalized = method.normalized();
                if self.co_optimal.len() < CO_OPTIMAL_LIMIT && !self.co_optimal.contains(&normalized) {
                    self.co_optimal.push(normalized);
                }
            }
            Ordering::Greater => {}
        }
    }
}

/// Searches for a dealing sequence minimizing `config.objective` for `composition`.
pub fn search_dealing(composition: &DeckComposition, config: &SearchConfig) -> Result<SearchOutcome> {
    let players = composition.players();
    let hand = composition.hand_size();
    let n = composition.deck_size();
    if config.strategy == SearchStrategy::Exhaustive && n > EXHAUSTIVE_CAP {
        return Err(Error::OutOfRange(format!(
            "exhaustive search is limited to {EXHAUSTIVE_CAP} positions, got {n}"
        )));
    }
    let start = match &config.start {
        Some(m) => {
            composition.check_method(m)?;
            m.clone()
        }
        None => DealingMethod::back_and_forth(players, hand)?,
    };
    let scorer = match config.objective {
        SearchObjective::Coefficient => {
            Scorer::Coefficient(Box::new(CoefficientEngine::for_ordered_deck(composition)?))
        }
        SearchObjective::Metric => Scorer::Metric,
    };
    let start_score = scorer.score(&start)?;
    let mut tracker = Tracker::new(start.clone(), start_score.clone());
    let mut evaluations = 0u64;
    let mut complete = true;

    match config.strategy {
        SearchStrategy::Exhaustive => {
            let mut walker = CanonicalSequences::new(players, hand);
            while let Some(candidate) = walker.next_sequence() {
                if evaluations >= config.budget {
                    complete = false;
                    break;
                }
                let method = DealingMethod::new(candidate, players)?;
                evaluations += 1;
                let score = scorer.score(&method)?;
                tracker.offer(&method, &score);
            }
        }
        SearchStrategy::Local | SearchStrategy::Anneal => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut current = start;
            let mut current_score = start_score.clone();
            let initial_temperature = {
                let base = exact::to_f64(&start_score);
                if base > 0.0 { 0.1 * base } else { 1.0 }
            };
            for step in 0..config.budget {
                let (t, u) = loop {
                    let t = rng.gen_range(0..n);
                    let u = rng.gen_range(0..n);
                    if current.assignment()[t] != current.assignment()[u] {
                        break (t, u);
                    }
                };
                let candidate = current.swapped(t, u);
                let score = scorer.score(&candidate)?;
                evaluations += 1;
                tracker.offer(&candidate, &score);
                let accept = match config.strategy {
                    SearchStrategy::Local => score <= current_score,
                    _ => {
                        if score <= current_score {
                            true
                        } else {
                            let temperature = initial_temperature * (1.0 - step as f64 / config.budget as f64);
                            let delta = exact::to_f64(&(&score - &current_score));
                            temperature > 0.0 && rng.gen::<f64>() < (-delta / temperature).exp()
                        }
                    }
                };
                if accept {
                    current = candidate;
                    current_score = score;
                }
            }
        }
    }

    Ok(SearchOutcome {
        best: tracker.best,
        score: tracker.score,
        evaluations,
        complete,
        co_optimal: tracker.co_optimal,
    })
}

/// Lexicographic walk over sequences in which each player appears `hand`
/// times and players first appear in order `0, 1, 2, ...`. Every relabeling
/// class of dealing methods has exactly one such member.
struct CanonicalSequences {
    players: usize,
    hand: usize,
    seq: Vec<usize>,
    started: bool,
}

impl CanonicalSequences {
    fn new(players: usize, hand: usize) -> Self {
        Self { players, hand, seq: Vec::new(), started: false }
    }

    /// Smallest valid player for position `seq.len()` that is `>= from`.
    fn first_choice(&self, from: usize, used: &[usize]) -> Option<usize> {
        let introduced = self.seq.iter().copied().max().map_or(0, |m| m + 1);
        (from..self.players.min(introduced + 1)).find(|&p| used[p] < self.hand)
    }

    fn complete_from(&mut self, used: &mut [usize]) {
        while self.seq.len() < self.players * self.hand {
            let p = self.first_choice(0, used).expect("a valid prefix always extends");
            used[p] += 1;
            self.seq.push(p);
        }
    }

    fn next_sequence(&mut self) -> Option<Vec<usize>> {
        let mut used = vec![0usize; self.players];
        for &p in &self.seq {
            used[p] += 1;
        }
        if !self.started {
            self.started = true;
            self.complete_from(&mut used);
            return Some(self.seq.clone());
        }
        while let Some(last) = self.seq.pop() {
            used[last] -= 1;
            // Any valid prefix extends to a full sequence, so the first
            // larger choice at the deepest position is the successor.
            if let Some(p) = self.first_choice(last + 1, &used) {
                used[p] += 1;
                self.seq.push(p);
                self.complete_from(&mut used);
                return Some(self.seq.clone());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::next_permutation;

    fn config(objective: SearchObjective, strategy: SearchStrategy, budget: u64) -> SearchConfig {
        SearchConfig { objective, strategy, budget, seed: 7, start: None }
    }

    #[test]
    fn canonical_walk_counts() {
        let count = |l, s| {
            let mut w = CanonicalSequences::new(l, s);
            let mut all = Vec::new();
            while let Some(seq) = w.next_sequence() {
                all.push(seq);
            }
            all
        };
        assert_eq!(count(2, 2), vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0]]);
        // 9! / (3!^3 3!) = 280
        assert_eq!(count(3, 3).len(), 280);
        let seqs = count(4, 2);
        assert_eq!(seqs.len(), 2520 / 24);
        assert!(seqs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exhaustive_finds_the_optimum_of_all_sequences() {
        let comp = DeckComposition::new(vec![2, 2], 2, 2).unwrap();
        let engine = CoefficientEngine::for_ordered_deck(&comp).unwrap();
        let mut assignment = vec![0, 0, 1, 1];
        let mut brute: Option<(ExactScalar, Vec<usize>)> = None;
        loop {
            let m = DealingMethod::new(assignment.clone(), 2).unwrap();
            let score = engine.evaluate(&m).unwrap().coefficient;
            if brute.as_ref().is_none_or(|(b, _)| score < *b) {
                brute = Some((score, assignment.clone()));
            }
            if !next_permutation(&mut assignment) {
                break;
            }
        }
        let (best_score, _) = brute.unwrap();
        let out = search_dealing(&comp, &config(SearchObjective::Coefficient, SearchStrategy::Exhaustive, 100)).unwrap();
        assert!(out.complete);
        assert_eq!(out.evaluations, 3);
        assert_eq!(out.score, best_score);
    }

    #[test]
    fn exhaustive_respects_cap() {
        let comp = DeckComposition::new(vec![9, 9], 2, 9).unwrap();
        let err = search_dealing(&comp, &config(SearchObjective::Metric, SearchStrategy::Exhaustive, 10));
        assert!(matches!(err, Err(Error::OutOfRange(_))));
    }

    #[test]
    fn zero_budget_returns_start() {
        let comp = DeckComposition::new(vec![26, 26], 4, 13).unwrap();
        for strategy in [SearchStrategy::Local, SearchStrategy::Anneal] {
            let out = search_dealing(&comp, &config(SearchObjective::Metric, strategy, 0)).unwrap();
            assert_eq!(out.best, DealingMethod::back_and_forth(4, 13).unwrap());
            assert_eq!(out.score, exact::integer(4));
            assert_eq!(out.evaluations, 0);
        }
    }

    #[test]
    fn metric_search_reaches_two() {
        let comp = DeckComposition::new(vec![26, 26], 4, 13).unwrap();
        for strategy in [SearchStrategy::Local, SearchStrategy::Anneal] {
            let out = search_dealing(&comp, &config(SearchObjective::Metric, strategy, 20_000)).unwrap();
            assert_eq!(out.score, exact::integer(2), "{strategy}");
            assert_eq!(conjecture_metric(&out.best), exact::integer(2));
        }
    }

    #[test]
    fn search_is_deterministic() {
        let comp = DeckComposition::new(vec![5, 7], 4, 3).unwrap();
        let cfg = config(SearchObjective::Coefficient, SearchStrategy::Anneal, 200);
        let a = search_dealing(&comp, &cfg).unwrap();
        let b = search_dealing(&comp, &cfg).unwrap();
        assert_eq!(a.best, b.best);
        assert_eq!(a.score, b.score);
        assert_eq!(a.co_optimal, b.co_optimal);
    }
}
