//! Exact a-shuffle probabilities and the brute-force oracle.
//!
//! Everything here enumerates permutations, so it only scales to small decks.
//! It is the independent reference the closed-form engine in
//! [`crate::coefficient`] is checked against.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::deck::{deal, next_permutation, stationary_probability, Color, Deck, HandProfile};
use crate::error::{Error, Result};
use crate::exact::{self, ExactScalar};
use crate::method::DealingMethod;
use crate::pair_stats::{w_statistic, z_statistic};

/// Largest deck the oracle enumerates unless configured otherwise.
pub const DEFAULT_ORACLE_CAP: usize = 10;

/// A bijection of positions: the object at position `i` moves to `mapping[i]`.
/// Stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || std::mem::replace(&mut seen[m], true) {
                return Err(Error::Inconsistent(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(Self { mapping })
    }

    /// From 1-based notation such as `[4, 3, 1, 2, 5]`.
    pub fn from_one_based(mapping: &[usize]) -> Result<Self> {
        if mapping.contains(&0) {
            return Err(Error::Inconsistent("1-based permutation contains 0".into()));
        }
        Self::new(mapping.iter().map(|m| m - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self { mapping: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// Number of `i` with `mapping[i] > mapping[i + 1]`.
    pub fn descents(&self) -> usize {
        self.mapping.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// `out[mapping[i]] = seq[i]`.
    pub fn apply<T: Clone>(&self, seq: &[T]) -> Result<Vec<T>> {
        if seq.len() != self.len() {
            return Err(Error::Inconsistent(format!(
                "permutation of {} applied to a sequence of {}",
                self.len(),
                seq.len()
            )));
        }
        let mut out = seq.to_vec();
        for (i, item) in seq.iter().enumerate() {
            out[self.mapping[i]] = item.clone();
        }
        Ok(out)
    }

    /// Performs `self` and then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation { mapping: self.mapping.iter().map(|&m| next.mapping[m]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { mapping: inv }
    }

    /// Position in the lexicographic listing of all permutations of this size.
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.mapping[i + 1..].iter().filter(|&&m| m < self.mapping[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Every permutation of `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut current: Vec<usize> = (0..n).collect();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Permutation { mapping: current.clone() };
            done = !next_permutation(&mut current);
            Some(out)
        })
    }
}

pub fn descents(permutation: &Permutation) -> usize {
    permutation.descents()
}

/// Probability that an a-shuffle of `n` distinct cards produces a given
/// permutation with `d` descents: `C(a + n - d - 1, n) / a^n`.
pub fn bayer_diaconis_prob(n: usize, d: usize, a: u64) -> Result<ExactScalar> {
    if n == 0 || a == 0 {
        return Err(Error::OutOfRange(format!("need n >= 1 and a >= 1, got n={n}, a={a}")));
    }
    if d >= n {
        return Err(Error::OutOfRange(format!("descent count {d} must be below n = {n}")));
    }
    let top = a + n as u64 - 1;
    let num = if top < d as u64 { BigUint::zero() } else { exact::binomial(top - d as u64, n as u64) };
    Ok(BigRational::new(BigInt::from(num), BigInt::from(BigUint::from(a).pow(n as u32))))
}

/// The `1/a` coefficient of [`bayer_diaconis_prob`]: `n((n-1)/2 - d) / n!`.
pub fn first_order_term(n: usize, d: usize) -> ExactScalar {
    let num = n as i64 * (n as i64 - 1) - 2 * n as i64 * d as i64;
    BigRational::new(BigInt::from(num), BigInt::from(exact::factorial(n as u64) * 2u32))
}

/// How many permutations carrying one deck to another have each descent count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTable {
    n: usize,
    counts: Vec<u64>,
}

impl DescentTable {
    pub fn new(n: usize) -> Self {
        Self { n, counts: vec![0; n.max(1)] }
    }

    pub fn record(&mut self, descents: usize) {
        self.counts[descents] += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `counts()[d]` is `b_d`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(1/a^n) sum_d b_d C(a + n - d - 1, n)`.
    pub fn transition_probability(&self, a: u64) -> ExactScalar {
        let n = self.n as u64;
        let mut num = BigUint::zero();
        for (d, &b) in self.counts.iter().enumerate() {
            if b == 0 || a + n < d as u64 + 1 {
                continue;
            }
            num += exact::binomial(a + n - d as u64 - 1, n) * b;
        }
        BigRational::new(BigInt::from(num), BigInt::from(BigUint::from(a).pow(self.n as u32)))
    }

    /// `sum_d b_d n((n-1)/2 - d) / n!`.
    pub fn first_order_coefficient(&self) -> ExactScalar {
        let n = self.n as i64;
        let num: i64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(d, &b)| b as i64 * (n * (n - 1) - 2 * n * d as i64))
            .sum();
        BigRational::new(BigInt::from(num), BigInt::from(exact::factorial(self.n as u64) * 2u32))
    }
}

fn check_same_composition(d1: &Deck, d2: &Deck) -> Result<()> {
    if d1.composition().counts() != d2.composition().counts() {
        return Err(Error::Inconsistent(
            "decks do not have the same composition".into(),
        ));
    }
    Ok(())
}

/// Brute-force enumerator with a hard size cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_ORACLE_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_scale(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::ScaleExceeded { n, cap: self.cap });
        }
        Ok(())
    }

    /// Descent table of `S(from, to)`, enumerating only the `prod p_i!`
    /// permutations that send each color block onto the matching positions.
    pub fn descent_table(&self, from: &Deck, to: &Deck) -> Result<DescentTable> {
        check_same_composition(from, to)?;
        let n = from.len();
        self.check_scale(n)?;
        let k = from.composition().colors();
        let positions = |deck: &Deck, color: Color| -> Vec<usize> {
            deck.cards()
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == color)
                .map(|(i, _)| i)
                .collect()
        };
        let sources: Vec<Vec<usize>> = (0..k).map(|c| positions(from, c)).collect();
        let mut targets: Vec<Vec<usize>> = (0..k).map(|c| positions(to, c)).collect();
        let mut mapping = vec![0usize; n];
        let mut table = DescentTable::new(n);
        loop {
            for (src, tgt) in sources.iter().zip(&targets) {
                for (&s, &t) in src.iter().zip(tgt) {
                    mapping[s] = t;
                }
            }
            table.record(mapping.windows(2).filter(|w| w[0] > w[1]).count());
            // Odometer over the per-color target orders.
            let mut color = k;
            loop {
                if color == 0 {
                    return Ok(table);
                }
                color -= 1;
                if next_permutation(&mut targets[color]) {
                    break;
                }
            }
        }
    }

    /// Descent tables from `from` to every rearrangement, by one sweep over
    /// all `n!` permutations.
    pub fn descent_tables(&self, from: &Deck) -> Result<BTreeMap<Vec<Color>, DescentTable>> {
        let n = from.len();
        self.check_scale(n)?;
        let mut tables: HashMap<Vec<Color>, DescentTable> = HashMap::new();
        let mut mapping: Vec<usize> = (0..n).collect();
        let mut image = vec![0; n];
        loop {
            for (i, &m) in mapping.iter().enumerate() {
                image[m] = from.cards()[i];
            }
            let d = mapping.windows(2).filter(|w| w[0] > w[1]).count();
            match tables.get_mut(&image) {
                Some(t) => t.record(d),
                None => {
                    let mut t = DescentTable::new(n);
                    t.record(d);
                    tables.insert(image.clone(), t);
                }
            }
            if !next_permutation(&mut mapping) {
                break;
            }
        }
        Ok(tables.into_iter().collect())
    }

    /// `P_a(from -> to)`.
    pub fn transition_probability(&self, from: &Deck, to: &Deck, a: u64) -> Result<ExactScalar> {
        if a == 0 {
            return Err(Error::OutOfRange("a must be at least 1".into()));
        }
        Ok(self.descent_table(from, to)?.transition_probability(a))
    }

    /// `c_1(from, to)`: the `1/a` coefficient of the transition probability.
    pub fn first_order_coefficient(&self, from: &Deck, to: &Deck) -> Result<ExactScalar> {
        Ok(self.descent_table(from, to)?.first_order_coefficient())
    }

    /// Exact law of the hands after an a-shuffle of `deck` dealt by `method`.
    pub fn hand_distribution(
        &self,
        deck: &Deck,
        method: &DealingMethod,
        a: u64,
    ) -> Result<BTreeMap<HandProfile, ExactScalar>> {
        Ok(self
            .hand_distributions(deck, method, &[a])?
            .into_iter()
            .map(|(hand, mut probs)| (hand, probs.remove(0)))
            .collect())
    }

    fn hand_distributions(
        &self,
        deck: &Deck,
        method: &DealingMethod,
        intensities: &[u64],
    ) -> Result<BTreeMap<HandProfile, Vec<ExactScalar>>> {
        deck.composition().check_method(method)?;
        if intensities.contains(&0) {
            return Err(Error::OutOfRange("a must be at least 1".into()));
        }
        let tables = self.descent_tables(deck)?;
        let mut law: BTreeMap<HandProfile, Vec<ExactScalar>> = BTreeMap::new();
        for (cards, table) in tables {
            let hand = deal(&deck.rearranged(cards)?, method)?;
            let entry = law
                .entry(hand)
                .or_insert_with(|| vec![ExactScalar::zero(); intensities.len()]);
            for (slot, &a) in entry.iter_mut().zip(intensities) {
                *slot += table.transition_probability(a);
            }
        }
        Ok(law)
    }

    /// `(1/2) sum_w |P_a(w) - Pi(w)|` by full enumeration.
    pub fn exact_hand_variation_distance(
        &self,
        deck: &Deck,
        method: &DealingMethod,
        a: u64,
    ) -> Result<ExactScalar> {
        Ok(self.exact_hand_variation_distances(deck, method, &[a])?.remove(0))
    }

    /// Variation distances for several shuffle intensities, sharing one enumeration.
    pub fn exact_hand_variation_distances(
        &self,
        deck: &Deck,
        method: &DealingMethod,
        intensities: &[u64],
    ) -> Result<Vec<ExactScalar>> {
        let law = self.hand_distributions(deck, method, intensities)?;
        let comp = deck.composition();
        let mut totals = vec![ExactScalar::zero(); intensities.len()];
        for (hand, probs) in law {
            let pi = stationary_probability(comp, &hand)?;
            for (total, p) in totals.iter_mut().zip(probs) {
                *total += (p - &pi).abs();
            }
        }
        Ok(totals.into_iter().map(|t| t / exact::integer(2)).collect())
    }

    /// `sum_{D' -> w} c_1(deck, D')` for every hand `w`.
    pub fn first_order_hand_terms(
        &self,
        deck: &Deck,
        method: &DealingMethod,
    ) -> Result<BTreeMap<HandProfile, ExactScalar>> {
        deck.composition().check_method(method)?;
        let mut terms: BTreeMap<HandProfile, ExactScalar> = BTreeMap::new();
        for (cards, table) in self.descent_tables(deck)? {
            let hand = deal(&deck.rearranged(cards)?, method)?;
            *terms.entry(hand).or_insert_with(ExactScalar::zero) += table.first_order_coefficient();
        }
        Ok(terms)
    }

    /// The `1/a` coefficient of the hand variation distance, assembled from
    /// per-arrangement `c_1` values: `(1/2) sum_w |sum_{D' -> w} c_1|`.
    pub fn first_order_hand_coefficient(&self, deck: &Deck, method: &DealingMethod) -> Result<ExactScalar> {
        let sum: ExactScalar = self
            .first_order_hand_terms(deck, method)?
            .values()
            .map(|v| v.abs())
            .sum();
        Ok(sum / exact::integer(2))
    }
}

/// `c_1(from, to) = (n / 2N) sum_{a<b} W(from, a, b) Z(to, a, b) / (n_a n_b)`.
pub fn c1_formula(from: &Deck, to: &Deck) -> Result<ExactScalar> {
    check_same_composition(from, to)?;
    let comp = from.composition();
    let k = comp.colors();
    let mut sum = ExactScalar::zero();
    for x in 0..k {
        for y in x + 1..k {
            let w = w_statistic(from, x, y)?;
            if w == 0 {
                continue;
            }
            let z = z_statistic(to, x, y)?;
            sum += exact::ratio(w * z, comp.count(x) as i64 * comp.count(y) as i64);
        }
    }
    let n = from.len() as i64;
    let arrangements = BigInt::from(comp.arrangements());
    Ok(sum * BigRational::new(BigInt::from(n), arrangements * 2))
}

fn checked_pow(base: u64, exp: usize) -> Result<u128> {
    (base as u128)
        .checked_pow(exp as u32)
        .ok_or_else(|| Error::OutOfRange(format!("{base}^{exp} is too large for the exact law")))
}

fn law_numerators(n: usize, a: u64) -> Result<Vec<u128>> {
    checked_pow(a, n)?;
    Permutation::all(n)
        .map(|p| {
            let top = a + n as u64 - 1;
            let d = p.descents() as u64;
            let c = if top < d { BigUint::zero() } else { exact::binomial(top - d, n as u64) };
            u128::try_from(c).map_err(|_| Error::OutOfRange("binomial overflow".into()))
        })
        .collect()
}

/// Probability of every permutation of `n` under an a-shuffle, in
/// lexicographic order of the permutations.
pub fn a_shuffle_law(n: usize, a: u64) -> Result<Vec<ExactScalar>> {
    if n == 0 || a == 0 || n > 8 {
        return Err(Error::OutOfRange(format!("law tables need 1 <= n <= 8 and a >= 1 (n={n}, a={a})")));
    }
    let den = checked_pow(a, n)?;
    Ok(law_numerators(n, a)?
        .into_iter()
        .map(|num| BigRational::new(BigInt::from(num), BigInt::from(den)))
        .collect())
}

/// Law of an a-shuffle followed by a b-shuffle, by exact convolution over
/// all pairs of permutations.
pub fn composed_shuffle_law(n: usize, a: u64, b: u64) -> Result<Vec<ExactScalar>> {
    if n == 0 || a == 0 || b == 0 || n > 8 {
        return Err(Error::OutOfRange(format!("law tables need 1 <= n <= 8 (n={n})")));
    }
    let den = checked_pow(a.saturating_mul(b), n)?;
    let first = law_numerators(n, a)?;
    let second = law_numerators(n, b)?;
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut out = vec![0u128; perms.len()];
    for (p, &wp) in perms.iter().zip(&first) {
        if wp == 0 {
            continue;
        }
        for (q, &wq) in perms.iter().zip(&second) {
            if wq == 0 {
                continue;
            }
            out[p.then(q).rank()] += wp * wq;
        }
    }
    Ok(out
        .into_iter()
        .map(|num| BigRational::new(BigInt::from(num), BigInt::from(den)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn deck(text: &str, players: usize) -> Deck {
        Deck::parse(text, players).unwrap()
    }

    #[test]
    fn descent_examples() {
        let p = Permutation::from_one_based(&[4, 3, 1, 2, 5]).unwrap();
        assert_eq!(descents(&p), 2);
        assert_eq!(Permutation::identity(6).descents(), 0);
        let rev = Permutation::from_one_based(&[5, 4, 3, 2, 1]).unwrap();
        assert_eq!(rev.descents(), 4);
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
    }

    #[test]
    fn apply_examples() {
        let p = Permutation::from_one_based(&[4, 3, 1, 2, 5]).unwrap();
        assert_eq!(p.apply(&[1, 2, 3, 4, 5]).unwrap(), vec![3, 4, 2, 1, 5]);
        assert_eq!(p.apply(&[2, 5, 4, 3, 1]).unwrap(), vec![4, 3, 5, 2, 1]);
        assert_eq!(p.apply(&[5, 3, 4, 1, 2]).unwrap(), vec![4, 1, 3, 5, 2]);
        assert_eq!(Permutation::identity(3).apply(&['x', 'y', 'z']).unwrap(), vec!['x', 'y', 'z']);
        assert!(p.apply(&[1, 2]).is_err());
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::from_one_based(&[4, 3, 1, 2, 5]).unwrap();
        assert_eq!(p.then(&p.inverse()), Permutation::identity(5));
        let ranks: Vec<usize> = Permutation::all(4).map(|q| q.rank()).collect();
        assert_eq!(ranks, (0..24).collect::<Vec<_>>());
    }

    #[test]
    fn bayer_diaconis_small() {
        let p = |d| bayer_diaconis_prob(3, d, 2).unwrap();
        assert_eq!(p(0), exact::ratio(4, 8));
        assert_eq!(p(1), exact::ratio(1, 8));
        assert_eq!(p(2), ExactScalar::zero());
        // Eulerian numbers for n = 3 are 1, 4, 1.
        assert_eq!(p(0) + p(1) * exact::integer(4) + p(2), ExactScalar::one());
        assert_eq!(bayer_diaconis_prob(5, 0, 1).unwrap(), ExactScalar::one());
        assert_eq!(bayer_diaconis_prob(5, 2, 1).unwrap(), ExactScalar::zero());
        assert_eq!(bayer_diaconis_prob(1, 0, 17).unwrap(), ExactScalar::one());
        assert!(bayer_diaconis_prob(3, 3, 2).is_err());
    }

    #[test]
    fn first_order_term_is_the_expansion_coefficient() {
        // a * (P_a - 1/n!) -> first_order_term; check the remainder shrinks like 1/a.
        let n = 5;
        for d in 0..n {
            let c = first_order_term(n, d);
            let big = 1u64 << 20;
            let p = bayer_diaconis_prob(n, d, big).unwrap();
            let inv = BigRational::new(BigInt::one(), BigInt::from(exact::factorial(n as u64)));
            let scaled = (p - inv) * exact::integer(big);
            assert!(exact::to_f64(&(scaled - &c)).abs() < 1e-4, "d={d}");
        }
    }

    #[test]
    fn two_card_transitions() {
        let rb = deck("RB", 2);
        let br = rb.rearranged(vec![0, 1]).unwrap();
        let o = Oracle::default();
        assert_eq!(o.transition_probability(&rb, &br, 2).unwrap(), exact::ratio(1, 4));
        assert_eq!(o.transition_probability(&rb, &rb, 2).unwrap(), exact::ratio(3, 4));
        let bd = deck("BR", 2);
        let rb2 = bd.rearranged(vec![1, 0]).unwrap();
        assert_eq!(o.first_order_coefficient(&bd, &rb2).unwrap(), exact::ratio(-1, 2));
        assert_eq!(o.first_order_coefficient(&bd, &bd).unwrap(), exact::ratio(1, 2));
        assert_eq!(c1_formula(&bd, &rb2).unwrap(), exact::ratio(-1, 2));
    }

    #[test]
    fn one_shuffle_is_identity() {
        let d = deck("BRGRBG", 3);
        let o = Oracle::default();
        for other in d.rearrangements() {
            let p = o.transition_probability(&d, &other, 1).unwrap();
            let expected = if other == d { ExactScalar::one() } else { ExactScalar::zero() };
            assert_eq!(p, expected);
        }
    }

    #[test]
    fn single_color_is_constant() {
        let d = deck("BBBB", 2);
        let o = Oracle::default();
        assert_eq!(o.first_order_coefficient(&d, &d).unwrap(), ExactScalar::zero());
        assert_eq!(c1_formula(&d, &d).unwrap(), ExactScalar::zero());
        let m = DealingMethod::cyclic(2, 2).unwrap();
        for a in [1, 2, 7] {
            assert_eq!(o.exact_hand_variation_distance(&d, &m, a).unwrap(), ExactScalar::zero());
        }
    }

    #[test]
    fn normalization_and_zero_sum() {
        let o = Oracle::default();
        for (text, players) in [("BBRR", 2), ("RBGRBG", 2), ("BRBGGRB", 7), ("RRBBBGGA", 2)] {
            let d = deck(text, players);
            let mut total_c1 = ExactScalar::zero();
            for a in [1u64, 2, 3, 5] {
                let total: ExactScalar = d
                    .rearrangements()
                    .map(|t| o.transition_probability(&d, &t, a).unwrap())
                    .sum();
                assert_eq!(total, ExactScalar::one(), "{text} a={a}");
            }
            for t in d.rearrangements() {
                let table = o.descent_table(&d, &t).unwrap();
                let expected: u64 = d
                    .composition()
                    .counts()
                    .iter()
                    .map(|&c| (1..=c as u64).product::<u64>())
                    .product();
                assert_eq!(table.total(), expected);
                total_c1 += table.first_order_coefficient();
            }
            assert_eq!(total_c1, ExactScalar::zero(), "{text}");
        }
    }

    #[test]
    fn sweep_and_block_enumeration_agree() {
        let o = Oracle::default();
        for text in ["BBRR", "BRGBRG", "RRBBGBR"] {
            let d = deck(text, text.len());
            let tables = o.descent_tables(&d).unwrap();
            assert_eq!(tables.len(), d.rearrangements().count());
            for (cards, table) in tables {
                let target = d.rearranged(cards).unwrap();
                assert_eq!(table, o.descent_table(&d, &target).unwrap());
            }
        }
    }

    #[test]
    fn formula_matches_oracle_exhaustively_for_small_decks() {
        let o = Oracle::default();
        for text in ["BRBR", "BBRGR", "RGBBGR", "GRBBRGB"] {
            let d = deck(text, text.len());
            for from in d.rearrangements() {
                for to in d.rearrangements() {
                    assert_eq!(
                        c1_formula(&from, &to).unwrap(),
                        o.first_order_coefficient(&from, &to).unwrap(),
                        "{from} -> {to}"
                    );
                }
            }
        }
    }

    #[test]
    fn scale_cap_is_enforced() {
        let d = deck("BBBBBBRRRRRR", 2);
        let o = Oracle::default();
        assert_eq!(
            o.transition_probability(&d, &d, 2),
            Err(Error::ScaleExceeded { n: 12, cap: 10 })
        );
        assert!(Oracle::with_cap(12).descent_table(&d, &d).is_ok());
        let other = deck("BBRRG", 5);
        assert!(matches!(
            o.transition_probability(&d, &other, 2),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn variation_distance_at_a_equals_one() {
        let d = deck("BBRR", 2);
        let m = DealingMethod::parse("1212", 2).unwrap();
        let o = Oracle::default();
        let hand = deal(&d, &m).unwrap();
        let pi = stationary_probability(d.composition(), &hand).unwrap();
        assert_eq!(
            o.exact_hand_variation_distance(&d, &m, 1).unwrap(),
            ExactScalar::one() - pi
        );
    }

    #[test]
    fn laws_are_normalized_and_compose() {
        for n in 1..=5 {
            for a in 1..=4u64 {
                let law = a_shuffle_law(n, a).unwrap();
                assert_eq!(law.iter().sum::<ExactScalar>(), ExactScalar::one());
            }
        }
        let n = 4;
        assert_eq!(composed_shuffle_law(n, 2, 3).unwrap(), a_shuffle_law(n, 6).unwrap());
    }
}
