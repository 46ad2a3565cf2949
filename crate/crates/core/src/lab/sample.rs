//! Seeded Monte Carlo a-shuffles.
//!
//! Sample `i` of a run with seed `s` draws from its own ChaCha8 stream
//! (`seed = s`, `stream = i`), so results do not depend on how samples are
//! split across threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::deck::{deal, enumerate_hand_profiles, stationary_probability, Deck, HandProfile};
use crate::error::{Error, Result};
use crate::exact;
use crate::method::DealingMethod;
use crate::shuffle::Permutation;

const CHUNK: u64 = 4096;

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one a-shuffle of `n` positions.
///
/// Every output position gets a uniform digit in `0..a`; listing the output
/// positions stably by digit gives `t_0, ..., t_{n-1}`, and the card at
/// position `j` moves to `t_j`. Cards keep their relative order within each
/// of the `a` packets, which is the riffle of a cut into `a` piles.
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, a: u64, rng: &mut R) -> Permutation {
    let digits: Vec<u64> = (0..n).map(|_| rng.gen_range(0..a)).collect();
    Permutation::new(positions_by_digit(&digits)).expect("stable sort yields a permutation")
}

fn positions_by_digit(digits: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..digits.len()).collect();
    order.sort_by_key(|&t| digits[t]);
    order
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleSample {
    pub permutation: Permutation,
    pub deck: Deck,
}

/// Sample number `index` of an a-shuffle of `deck` under `seed`.
pub fn sample_a_shuffle(deck: &Deck, a: u64, seed: u64, index: u64) -> Result<ShuffleSample> {
    if a == 0 {
        return Err(Error::OutOfRange("a must be at least 1".into()));
    }
    let mut rng = sample_rng(seed, index);
    let permutation = sample_permutation(deck.len(), a, &mut rng);
    let shuffled = deck.rearranged(permutation.apply(deck.cards())?)?;
    Ok(ShuffleSample { permutation, deck: shuffled })
}

#[derive(Debug, Clone)]
pub struct SimulationReport {
    pub a: u64,
    pub samples: u64,
    pub seed: u64,
    pub counts: BTreeMap<HandProfile, u64>,
    /// Variation distance between the observed hand frequencies and the
    /// limiting law.
    pub empirical_tv: f64,
}

/// Shuffles `deck` `samples` times, deals each result with `method` and
/// tallies the hands.
pub fn simulate_hand_distribution(
    deck: &Deck,
    method: &DealingMethod,
    a: u64,
    samples: u64,
    seed: u64,
) -> Result<SimulationReport> {
    let comp = deck.composition();
    comp.check_method(method)?;
    if a == 0 {
        return Err(Error::OutOfRange("a must be at least 1".into()));
    }
    if samples == 0 {
        return Err(Error::OutOfRange("at least one sample is required".into()));
    }

    let run_chunk = |start: u64| -> Result<BTreeMap<HandProfile, u64>> {
        let mut counts = BTreeMap::new();
        for index in start..(start + CHUNK).min(samples) {
            let sample = sample_a_shuffle(deck, a, seed, index)?;
            *counts.entry(deal(&sample.deck, method)?).or_insert(0) += 1;
        }
        Ok(counts)
    };
    let merge = |mut acc: BTreeMap<HandProfile, u64>, part: BTreeMap<HandProfile, u64>| {
        for (hand, c) in part {
            *acc.entry(hand).or_insert(0) += c;
        }
        acc
    };
    let starts: Vec<u64> = (0..samples).step_by(CHUNK as usize).collect();
    #[cfg(feature = "parallel")]
    let parts: Vec<_> = starts.par_iter().map(|&s| run_chunk(s)).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<_> = starts.iter().map(|&s| run_chunk(s)).collect::<Result<_>>()?;
    let counts = parts.into_iter().fold(BTreeMap::new(), merge);

    let mut distance = 0.0;
    for hand in enumerate_hand_profiles(comp) {
        let pi = exact::to_f64(&stationary_probability(comp, &hand)?);
        let observed = counts.get(&hand).copied().unwrap_or(0) as f64 / samples as f64;
        distance += (observed - pi).abs();
    }

    Ok(SimulationReport { a, samples, seed, counts, empirical_tv: distance / 2.0 })
}
