//! Decks, compositions and hand profiles.
//!
//! Colors are 0-based indices internally and are written with the letters
//! `B, R, G, A, C, D, ...` (or 1-based numbers) in text. Players are 0-based
//! as well; position sums and other user-facing positions are 1-based.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{self, Count, ExactScalar, FACTORIALS, MAX_U128_FACTORIAL};
use crate::method::DealingMethod;

/// 0-based color index.
pub type Color = usize;

/// Letters used for colors in the compact deck notation.
pub const COLOR_LETTERS: &str = "BRGACDEFHIJKLMNOPQSTUVWXYZ";

pub fn color_letter(color: Color) -> Option<char> {
    COLOR_LETTERS.chars().nth(color)
}

pub fn color_from_letter(letter: char) -> Option<Color> {
    COLOR_LETTERS.find(letter.to_ascii_uppercase())
}

/// Per-color card counts of a deck dealt to `players` players, `hand` cards each.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeckComposition {
    counts: Vec<u32>,
    players: usize,
    hand: usize,
}

impl DeckComposition {
    pub fn new(counts: Vec<u32>, players: usize, hand: usize) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidComposition("no colors".into()));
        }
        if let Some(i) = counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidComposition(format!(
                "color {} has no cards; drop absent colors",
                i + 1
            )));
        }
        if players < 2 {
            return Err(Error::InvalidComposition(format!(
                "need at least 2 players, got {players}"
            )));
        }
        if hand < 1 {
            return Err(Error::InvalidComposition("hand size must be positive".into()));
        }
        let total: u64 = counts.iter().map(|&c| c as u64).sum();
        if total != (players * hand) as u64 {
            return Err(Error::InvalidComposition(format!(
                "{players}·{hand} = {} cards dealt but the composition has {total}",
                players * hand
            )));
        }
        Ok(Self { counts, players, hand })
    }

    /// Two colors `(b, cards - b)` dealt to four players.
    pub fn two_type(b: u32, cards: u32) -> Result<Self> {
        if !cards.is_multiple_of(4) {
            return Err(Error::InvalidComposition(format!(
                "{cards} cards cannot be dealt to 4 players"
            )));
        }
        if b == 0 || b >= cards {
            return Err(Error::OutOfRange(format!("b = {b} must lie in 1..{cards}")));
        }
        Self::new(vec![b, cards - b], 4, cards as usize / 4)
    }

    pub fn colors(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, color: Color) -> u32 {
        self.counts[color]
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn hand_size(&self) -> usize {
        self.hand
    }

    pub fn deck_size(&self) -> usize {
        self.players * self.hand
    }

    /// Number of distinct arrangements, `n! / prod(p_i!)`.
    pub fn arrangements(&self) -> BigUint {
        exact::multinomial(self.counts.iter().copied())
    }

    /// Product of `p_i!`.
    pub fn color_factorials(&self) -> BigUint {
        self.counts
            .iter()
            .map(|&c| exact::factorial(c as u64))
            .product()
    }

    /// The deck with all color-1 cards first, then color 2, and so on.
    pub fn ordered_deck(&self) -> Deck {
        let cards = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(color, &c)| std::iter::repeat_n(color, c as usize))
            .collect();
        Deck { composition: self.clone(), cards }
    }

    pub fn check_method(&self, method: &DealingMethod) -> Result<()> {
        if method.players() != self.players || method.hand_size() != self.hand {
            return Err(Error::Inconsistent(format!(
                "method deals {} hands of {} but the composition needs {} hands of {}",
                method.players(),
                method.hand_size(),
                self.players,
                self.hand
            )));
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &HandProfile) -> Result<()> {
        if profile.colors != self.colors() || profile.players != self.players {
            return Err(Error::Inconsistent(format!(
                "hand profile is {}x{} but the composition is {}x{}",
                profile.colors,
                profile.players,
                self.colors(),
                self.players
            )));
        }
        for color in 0..self.colors() {
            let row: u32 = profile.row(color).iter().sum();
            if row != self.counts[color] {
                return Err(Error::Inconsistent(format!(
                    "color {} row sums to {row}, expected {}",
                    color + 1,
                    self.counts[color]
                )));
            }
        }
        for player in 0..self.players {
            if profile.hand_total(player) as usize != self.hand {
                return Err(Error::Inconsistent(format!(
                    "player {} holds {} cards, expected {}",
                    player + 1,
                    profile.hand_total(player),
                    self.hand
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for DeckComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "{} ({}x{})", counts.join(","), self.players, self.hand)
    }
}

/// A concrete card sequence, top card first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Deck {
    composition: DeckComposition,
    cards: Vec<Color>,
}

impl Deck {
    /// Builds a deck for `players` players. Colors must be `0..k` with every
    /// color present.
    pub fn new(cards: Vec<Color>, players: usize) -> Result<Self> {
        let n = cards.len();
        if players == 0 || !n.is_multiple_of(players) {
            return Err(Error::InvalidDeck(format!(
                "{n} cards cannot be dealt evenly to {players} players"
            )));
        }
        let k = cards.iter().max().map_or(0, |&m| m + 1);
        let mut counts = vec![0u32; k];
        for &c in &cards {
            counts[c] += 1;
        }
        if let Some(missing) = counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidDeck(format!(
                "color {} is absent but a later color is used",
                missing + 1
            )));
        }
        let composition = DeckComposition::new(counts, players, n / players)?;
        Ok(Self { composition, cards })
    }

    /// Parses letter notation (`BRRB`) or comma separated 1-based indices (`1,2,2,1`).
    pub fn parse(text: &str, players: usize) -> Result<Self> {
        let text = text.trim();
        let cards = if text.contains(',') {
            text.split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(c) if c >= 1 => Ok(c - 1),
                    _ => Err(Error::InvalidDeck(format!("bad color index {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|ch| {
                    color_from_letter(ch)
                        .ok_or_else(|| Error::InvalidDeck(format!("unknown color letter {ch:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if cards.is_empty() {
            return Err(Error::InvalidDeck("empty deck".into()));
        }
        Self::new(cards, players)
    }

    pub fn composition(&self) -> &DeckComposition {
        &self.composition
    }

    pub fn cards(&self) -> &[Color] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    /// Another arrangement of the same cards.
    pub fn rearranged(&self, cards: Vec<Color>) -> Result<Deck> {
        let mut counts = vec![0u32; self.composition.colors()];
        for &c in &cards {
            if c >= counts.len() {
                return Err(Error::Inconsistent(format!("color {} not in deck", c + 1)));
            }
            counts[c] += 1;
        }
        if counts != self.composition.counts {
            return Err(Error::Inconsistent(
                "rearrangement has a different composition".into(),
            ));
        }
        Ok(Deck { composition: self.composition.clone(), cards })
    }

    /// All distinct rearrangements in lexicographic order.
    pub fn rearrangements(&self) -> impl Iterator<Item = Deck> + '_ {
        let mut current: Vec<Color> = self.cards.clone();
        current.sort_unstable();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = current.clone();
            done = !next_permutation(&mut current);
            Some(Deck { composition: self.composition.clone(), cards: out })
        })
    }

    /// True when the deck is ordered by color index.
    pub fn is_ordered(&self) -> bool {
        self.cards.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for Deck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.composition.colors() <= COLOR_LETTERS.len() {
            for &c in &self.cards {
                write!(f, "{}", color_letter(c).unwrap())?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.cards.iter().map(|c| (c + 1).to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Rearranges `items` into the next lexicographic permutation; returns false
/// (leaving `items` sorted) after the last one.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Per-color, per-player card counts after dealing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HandProfile {
    colors: usize,
    players: usize,
    /// Row-major: `counts[color * players + player]`.
    counts: Vec<u32>,
}

impl HandProfile {
    pub fn from_matrix(rows: &[Vec<u32>]) -> Result<Self> {
        let colors = rows.len();
        let players = rows.first().map_or(0, Vec::len);
        if colors == 0 || players == 0 || rows.iter().any(|r| r.len() != players) {
            return Err(Error::Inconsistent("hand profile must be a non-empty matrix".into()));
        }
        Ok(Self { colors, players, counts: rows.concat() })
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn get(&self, color: Color, player: usize) -> u32 {
        self.counts[color * self.players + player]
    }

    pub fn row(&self, color: Color) -> &[u32] {
        &self.counts[color * self.players..(color + 1) * self.players]
    }

    pub fn flat(&self) -> &[u32] {
        &self.counts
    }

    pub fn hand_total(&self, player: usize) -> u32 {
        (0..self.colors).map(|c| self.get(c, player)).sum()
    }

    /// Cards held by `player` that are neither color `x` nor color `y`.
    pub fn other_count(&self, player: usize, x: Color, y: Color) -> u32 {
        self.hand_total(player) - self.get(x, player) - self.get(y, player)
    }

    /// `prod_j hand! / prod_i counts[i][j]!`: the number of arrangements
    /// dealing to this profile.
    pub fn arrangement_count(&self, hand: usize) -> Count {
        if hand <= MAX_U128_FACTORIAL {
            let mut acc: u128 = 1;
            let mut fits = true;
            for player in 0..self.players {
                let mut column = FACTORIALS[hand];
                for color in 0..self.colors {
                    column /= FACTORIALS[self.get(color, player) as usize];
                }
                match acc.checked_mul(column) {
                    Some(v) => acc = v,
                    None => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                return Count::Small(acc);
            }
        }
        let mut acc = BigUint::from(1u32);
        for player in 0..self.players {
            acc *= exact::multinomial((0..self.colors).map(|c| self.get(c, player)));
        }
        Count::Big(acc)
    }

    /// Text form: rows separated by `|`, entries by `,`.
    pub fn to_text(&self) -> String {
        (0..self.colors)
            .map(|c| {
                self.row(c)
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for HandProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Lexicographic stream over every hand profile of a composition.
///
/// Only the cells `(i, j)` with `i < k - 1` and `j < l - 1` are free; the last
/// column of each row and the whole last row are forced by the margins.
#[derive(Debug, Clone)]
pub struct HandProfiles {
    counts: Vec<u32>,
    players: usize,
    hand: u32,
    free: Vec<u32>,
    started: bool,
    finished: bool,
}

impl HandProfiles {
    fn new(comp: &DeckComposition) -> Self {
        let free_len = (comp.colors() - 1) * (comp.players() - 1);
        Self {
            counts: comp.counts().to_vec(),
            players: comp.players(),
            hand: comp.hand_size() as u32,
            free: vec![0; free_len],
            started: false,
            finished: false,
        }
    }

    /// Feasible value range of free cell `idx` given the cells before it.
    fn bounds(&self, idx: usize) -> (u32, u32) {
        let width = self.players - 1;
        let (row, col) = (idx / width, idx % width);
        let mut col_rem = vec![self.hand; self.players];
        for r in 0..row {
            let mut row_used = 0;
            for (c, rem) in col_rem.iter_mut().enumerate().take(width) {
                let v = self.free[r * width + c];
                *rem -= v;
                row_used += v;
            }
            col_rem[width] -= self.counts[r] - row_used;
        }
        let mut row_rem = self.counts[row];
        for c in 0..col {
            let v = self.free[row * width + c];
            col_rem[c] -= v;
            row_rem -= v;
        }
        let later: u32 = col_rem[col + 1..].iter().sum();
        let lo = row_rem.saturating_sub(later);
        let hi = row_rem.min(col_rem[col]);
        (lo, hi)
    }

    fn fill_from(&mut self, start: usize) {
        for idx in start..self.free.len() {
            self.free[idx] = self.bounds(idx).0;
        }
    }

    fn current(&self) -> HandProfile {
        let k = self.counts.len();
        let l = self.players;
        let width = l - 1;
        let mut counts = vec![0u32; k * l];
        let mut col_rem = vec![self.hand; l];
        for r in 0..k - 1 {
            let mut row_used = 0;
            for c in 0..width {
                let v = self.free[r * width + c];
                counts[r * l + c] = v;
                col_rem[c] -= v;
                row_used += v;
            }
            let last = self.counts[r] - row_used;
            counts[r * l + width] = last;
            col_rem[width] -= last;
        }
        counts[(k - 1) * l..].copy_from_slice(&col_rem);
        HandProfile { colors: k, players: l, counts }
    }
}

impl Iterator for HandProfiles {
    type Item = HandProfile;

    fn next(&mut self) -> Option<HandProfile> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.current());
        }
        for idx in (0..self.free.len()).rev() {
            let (_, hi) = self.bounds(idx);
            if self.free[idx] < hi {
                self.free[idx] += 1;
                self.fill_from(idx + 1);
                return Some(self.current());
            }
        }
        self.finished = true;
        None
    }
}

/// Every hand profile of `comp`, each exactly once, in lexicographic order of
/// the row-major count matrix.
pub fn enumerate_hand_profiles(comp: &DeckComposition) -> HandProfiles {
    HandProfiles::new(comp)
}

/// Limiting probability of a hand profile when the deck is uniformly random:
/// `s!^l / n! * prod_i p_i! / prod_{i,j} counts[i][j]!`.
pub fn stationary_probability(comp: &DeckComposition, profile: &HandProfile) -> Result<ExactScalar> {
    comp.check_profile(profile)?;
    let count = profile.arrangement_count(comp.hand_size()).to_biguint();
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(comp.arrangements()),
    ))
}

/// Number of arrangements that `method` deals into `profile`. The value does
/// not depend on the method; it only has to match the composition.
pub fn count_decks_for_profile(
    comp: &DeckComposition,
    profile: &HandProfile,
    method: &DealingMethod,
) -> Result<ExactScalar> {
    comp.check_profile(profile)?;
    comp.check_method(method)?;
    Ok(exact::from_biguint(
        profile.arrangement_count(comp.hand_size()).to_biguint(),
    ))
}

/// Hands produced by dealing `deck` with `method`.
pub fn deal(deck: &Deck, method: &DealingMethod) -> Result<HandProfile> {
    if deck.len() != method.len() {
        return Err(Error::Inconsistent(format!(
            "deck has {} cards but the method deals {}",
            deck.len(),
            method.len()
        )));
    }
    let k = deck.composition().colors();
    let l = method.players();
    let mut counts = vec![0u32; k * l];
    for (&color, &player) in deck.cards().iter().zip(method.assignment()) {
        counts[color * l + player] += 1;
    }
    Ok(HandProfile { colors: k, players: l, counts })
}
