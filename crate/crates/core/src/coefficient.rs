//! Closed-form leading coefficient of the hand variation distance.
//!
//! For a deck `D` dealt by a method, the variation distance between the hands
//! after an a-shuffle and their limiting law is `C / a + O(1/a^2)` with
//!
//! ```text
//! C = (n/4) * prod(p_j!) / n! * sum_w | sum_{x<y} W(D,x,y) * S(w,x,y) / (p_x p_y) |
//! ```
//!
//! where `S(w,x,y)` is the total of `Z(D',x,y)` over all arrangements `D'`
//! that deal to hand profile `w`. `S` has a closed form in terms of the hand
//! counts, the position sums of the method and the method's pair statistics
//! `Z(j,i)`, so no arrangement is ever enumerated.
//!
//! Internally every hand contributes `count(w) * Q(w) / (s^2 L)` with integer
//! `Q(w)` and `L = lcm(p_x p_y)`, so the sum over hands is carried out in
//! integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::deck::{enumerate_hand_profiles, Color, Deck, DeckComposition, HandProfile};
use crate::error::{Error, Result};
use crate::exact::{self, Accumulator, Count, ExactScalar};
use crate::method::DealingMethod;
use crate::pair_stats::w_statistic;

/// Result of a leading-coefficient evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientReport {
    /// Coefficient of `1/a` in the hand variation distance.
    pub coefficient: ExactScalar,
    /// Sum of the signed per-hand terms; zero for every valid input.
    pub signed_total: ExactScalar,
    /// First-order term of each hand, in enumeration order, when requested.
    /// Half the sum of their absolute values is `coefficient`.
    pub per_hand: Option<Vec<(HandProfile, ExactScalar)>>,
    pub composition: DeckComposition,
    pub method: String,
    pub profiles: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PairTerm {
    x: Color,
    y: Color,
    /// `W(D, x, y) * L / (p_x p_y)`.
    weight: i128,
}

/// Per-method quantities used by every hand.
struct MethodData {
    hand: i128,
    deck_size: i128,
    position_sums: Vec<i128>,
    z: Vec<Vec<i128>>,
}

impl MethodData {
    fn new(method: &DealingMethod) -> Self {
        Self {
            hand: method.hand_size() as i128,
            deck_size: method.len() as i128,
            position_sums: method.position_sums().into_iter().map(|v| v as i128).collect(),
            z: method
                .dealing_z_matrix()
                .into_iter()
                .map(|row| row.into_iter().map(|v| v as i128).collect())
                .collect(),
        }
    }

    /// `s^2 * sum_i x_i (n + 1 - 2 S_i / s + sum_{j != i} o_j Z(j,i) / s^2)`.
    fn scaled_pair_sum(&self, profile: &HandProfile, x: Color, y: Color) -> i128 {
        let s = self.hand;
        let players = self.position_sums.len();
        let mut total = 0i128;
        for i in 0..players {
            let xi = profile.get(x, i) as i128;
            if xi == 0 {
                continue;
            }
            let mut term = s * s * (self.deck_size + 1) - 2 * s * self.position_sums[i];
            for j in 0..players {
                if j != i {
                    let other = s - profile.get(x, j) as i128 - profile.get(y, j) as i128;
                    term += other * self.z[j][i];
                }
            }
            total += xi * term;
        }
        total
    }
}

/// Sum of `Z(D', x, y)` over every arrangement `D'` dealt to `profile` by `method`.
pub fn sum_z_over_profile(
    comp: &DeckComposition,
    profile: &HandProfile,
    method: &DealingMethod,
    x: Color,
    y: Color,
) -> Result<ExactScalar> {
    if x == y {
        return Err(Error::Inconsistent(format!("need two colors, got {} twice", x + 1)));
    }
    if x >= comp.colors() || y >= comp.colors() {
        return Err(Error::OutOfRange(format!(
            "colors {} and {} must lie in 1..={}",
            x + 1,
            y + 1,
            comp.colors()
        )));
    }
    comp.check_profile(profile)?;
    comp.check_method(method)?;
    let data = MethodData::new(method);
    let count = BigInt::from(profile.arrangement_count(comp.hand_size()).to_biguint());
    let scaled = data.scaled_pair_sum(profile, x, y);
    let s = comp.hand_size() as i64;
    Ok(BigRational::new(count * scaled, BigInt::from(s * s)))
}

/// Evaluates the leading coefficient for one deck over any number of methods,
/// enumerating the hand profiles once.
#[derive(Debug, Clone)]
pub struct CoefficientEngine {
    composition: DeckComposition,
    pairs: Vec<PairTerm>,
    common_denominator: i128,
    profiles: Vec<HandProfile>,
    keep_per_hand: bool,
}

impl CoefficientEngine {
    /// Engine for the color-ordered deck: only consecutive colors contribute,
    /// each with `W = 1`.
    pub fn for_ordered_deck(composition: &DeckComposition) -> Result<Self> {
        let pairs: Vec<(Color, Color, i64)> =
            (0..composition.colors().saturating_sub(1)).map(|i| (i, i + 1, 1)).collect();
        Self::build(composition, &pairs)
    }

    /// Engine for an arbitrary initial deck: every color pair with a non-zero
    /// digraph statistic contributes.
    pub fn for_deck(deck: &Deck) -> Result<Self> {
        let k = deck.composition().colors();
        let mut pairs = Vec::new();
        for x in 0..k {
            for y in x + 1..k {
                let w = w_statistic(deck, x, y)?;
                if w != 0 {
                    pairs.push((x, y, w));
                }
            }
        }
        Self::build(deck.composition(), &pairs)
    }

    fn build(composition: &DeckComposition, pairs: &[(Color, Color, i64)]) -> Result<Self> {
        let overflow = || Error::OutOfRange("too many colors for the common denominator".into());
        let product = |x: Color, y: Color| composition.count(x) as i128 * composition.count(y) as i128;
        let mut lcm = 1i128;
        for &(x, y, _) in pairs {
            let p = product(x, y);
            lcm = (lcm / lcm.gcd(&p)).checked_mul(p).ok_or_else(overflow)?;
        }
        let pairs = pairs
            .iter()
            .map(|&(x, y, w)| {
                Ok(PairTerm { x, y, weight: (w as i128).checked_mul(lcm / product(x, y)).ok_or_else(overflow)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            composition: composition.clone(),
            pairs,
            common_denominator: lcm,
            profiles: enumerate_hand_profiles(composition).collect(),
            keep_per_hand: false,
        })
    }

    /// Retain the signed per-hand terms in reports.
    pub fn keep_per_hand(mut self, keep: bool) -> Self {
        self.keep_per_hand = keep;
        self
    }

    pub fn composition(&self) -> &DeckComposition {
        &self.composition
    }

    pub fn profiles(&self) -> &[HandProfile] {
        &self.profiles
    }

    fn hand_term(&self, data: &MethodData, profile: &HandProfile) -> (Count, i128) {
        let q = self
            .pairs
            .iter()
            .map(|p| p.weight * data.scaled_pair_sum(profile, p.x, p.y))
            .sum();
        (profile.arrangement_count(self.composition.hand_size()), q)
    }

    fn accumulate<'a>(
        &self,
        data: &MethodData,
        profiles: impl Iterator<Item = &'a HandProfile>,
    ) -> (Accumulator, Accumulator) {
        let mut abs = Accumulator::new();
        let mut signed = Accumulator::new();
        for profile in profiles {
            let (count, q) = self.hand_term(data, profile);
            abs.add_product(&count, q.abs());
            signed.add_product(&count, q);
        }
        (abs, signed)
    }

    pub fn evaluate(&self, method: &DealingMethod) -> Result<CoefficientReport> {
        self.composition.check_method(method)?;
        let data = MethodData::new(method);
        let s = self.composition.hand_size() as i128;
        let inner_den = BigInt::from(s * s * self.common_denominator);

        #[cfg(feature = "parallel")]
        let (abs, signed) = self
            .profiles
            .par_chunks(512)
            .map(|chunk| self.accumulate(&data, chunk.iter()))
            .reduce(
                || (Accumulator::new(), Accumulator::new()),
                |(a1, s1), (a2, s2)| (a1.merge(a2), s1.merge(s2)),
            );
        #[cfg(not(feature = "parallel"))]
        let (abs, signed) = self.accumulate(&data, self.profiles.iter());

        let n = self.composition.deck_size() as u64;
        let prefactor = BigRational::new(
            BigInt::from(self.composition.color_factorials()) * n,
            BigInt::from(exact::factorial(n)) * 4,
        );
        let per_hand = self.keep_per_hand.then(|| {
            let scale = &prefactor * exact::integer(2) / BigRational::from_integer(inner_den.clone());
            self.profiles
                .iter()
                .map(|profile| {
                    let (count, q) = self.hand_term(&data, profile);
                    let num = BigInt::from(count.to_biguint()) * q;
                    (profile.clone(), BigRational::from_integer(num) * &scale)
                })
                .collect()
        });

        Ok(CoefficientReport {
            coefficient: BigRational::new(abs.total(), inner_den.clone()) * &prefactor,
            signed_total: BigRational::new(signed.total(), inner_den),
            per_hand,
            composition: self.composition.clone(),
            method: method.to_symbols(),
            profiles: self.profiles.len(),
        })
    }
}

/// Leading coefficient for the color-ordered initial deck.
pub fn leading_coefficient_ordered(
    composition: &DeckComposition,
    method: &DealingMethod,
) -> Result<CoefficientReport> {
    composition.check_method(method)?;
    CoefficientEngine::for_ordered_deck(composition)?.evaluate(method)
}

/// Leading coefficient for an arbitrary initial deck.
pub fn leading_coefficient_arbitrary(deck: &Deck, method: &DealingMethod) -> Result<CoefficientReport> {
    deck.composition().check_method(method)?;
    CoefficientEngine::for_deck(deck)?.evaluate(method)
}

/// Direct evaluation of the two-color, four-player formula
///
/// ```text
/// s / (b (n-b) C(n,b)) * sum | prod_j C(s, b_j) * ((n+1) b - (2/s) sum_j b_j S_j) |
/// ```
///
/// over black-card vectors `(b_1, .., b_4)`, with `S_j` the position sums.
pub fn two_type_closed_form(b: u32, cards: u32, method: &DealingMethod) -> Result<ExactScalar> {
    if cards == 0 || !cards.is_multiple_of(4) {
        return Err(Error::OutOfRange(format!("{cards} cards cannot be dealt to 4 players")));
    }
    if b == 0 || b >= cards {
        return Err(Error::OutOfRange(format!("b = {b} must lie in 1..{cards}")));
    }
    if method.players() != 4 || method.len() != cards as usize {
        return Err(Error::Inconsistent(format!(
            "two-type formula needs a 4-player method over {cards} cards"
        )));
    }
    let s = cards / 4;
    let sums: Vec<i64> = method.position_sums().into_iter().map(|v| v as i64).collect();
    let binoms: Vec<BigInt> = (0..=s).map(|v| BigInt::from(exact::binomial(s as u64, v as u64))).collect();
    let mut total = ExactScalar::zero();
    for b1 in 0..=s.min(b) {
        for b2 in 0..=s.min(b - b1) {
            for b3 in 0..=s.min(b - b1 - b2) {
                let b4 = b - b1 - b2 - b3;
                if b4 > s {
                    continue;
                }
                let hands = [b1, b2, b3, b4];
                let weight: BigInt = hands.iter().map(|&v| binoms[v as usize].clone()).product();
                let dot: i64 = hands.iter().zip(&sums).map(|(&v, &p)| v as i64 * p).sum();
                let bracket = exact::integer((cards as i64 + 1) * b as i64)
                    - exact::ratio(2 * dot, s as i64);
                let term = bracket * BigRational::from_integer(weight);
                total += if term < ExactScalar::zero() { -term } else { term };
            }
        }
    }
    let den = BigInt::from(exact::binomial(cards as u64, b as u64)) * (b as i64 * (cards - b) as i64);
    Ok(total * BigRational::new(BigInt::from(s), den))
}
