//! Dealing methods: which player receives each card of the shuffled deck.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{self, ExactScalar};

const COMPASS: [char; 4] = ['N', 'E', 'S', 'W'];
const PLAYER_SYMBOLS: &str = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Symbol for a 0-based player index: `N, E, S, W` with four players,
/// `1, 2, ..., 9, A, B, ...` otherwise.
pub fn player_symbol(players: usize, player: usize) -> char {
    if players == 4 {
        COMPASS[player]
    } else {
        PLAYER_SYMBOLS.chars().nth(player).unwrap_or('?')
    }
}

fn parse_player_symbol(players: usize, ch: char) -> Option<usize> {
    let ch = ch.to_ascii_uppercase();
    if players == 4 {
        if let Some(p) = COMPASS.iter().position(|&c| c == ch) {
            return Some(p);
        }
    }
    PLAYER_SYMBOLS.find(ch).filter(|&p| p < players)
}

/// A fixed assignment of deck positions to players.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DealingMethod {
    assignment: Vec<usize>,
    players: usize,
    hand: usize,
}

impl DealingMethod {
    /// `assignment[t]` is the 0-based player receiving the card at position `t + 1`.
    pub fn new(assignment: Vec<usize>, players: usize) -> Result<Self> {
        if players < 2 {
            return Err(Error::InvalidMethod(format!("need at least 2 players, got {players}")));
        }
        let n = assignment.len();
        if n == 0 || !n.is_multiple_of(players) {
            return Err(Error::InvalidMethod(format!(
                "a sequence of length {n} cannot deal equal hands to {players} players"
            )));
        }
        let hand = n / players;
        let mut tally = vec![0usize; players];
        for &p in &assignment {
            if p >= players {
                return Err(Error::InvalidMethod(format!("player {} out of range", p + 1)));
            }
            tally[p] += 1;
        }
        if let Some(p) = tally.iter().position(|&t| t != hand) {
            return Err(Error::InvalidMethod(format!(
                "player {} receives {} cards, expected {hand}",
                p + 1,
                tally[p]
            )));
        }
        Ok(Self { assignment, players, hand })
    }

    /// Parses a player-symbol string such as `NESWWSEN` or `1212`.
    pub fn parse(text: &str, players: usize) -> Result<Self> {
        let assignment = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|ch| {
                parse_player_symbol(players, ch).ok_or_else(|| {
                    Error::InvalidMethod(format!("unknown player symbol {ch:?} for {players} players"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(assignment, players)
    }

    /// Number of distinct player symbols in `text`, for inferring the player count.
    pub fn count_symbols(text: &str) -> usize {
        let mut seen: Vec<char> = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_ascii_uppercase())
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn canonical(kind: CanonicalKind, players: usize, hand: usize) -> Result<Self> {
        if hand == 0 {
            return Err(Error::InvalidMethod("hand size must be positive".into()));
        }
        let assignment: Vec<usize> = match kind {
            CanonicalKind::Ordered => (0..players)
                .flat_map(|p| std::iter::repeat_n(p, hand))
                .collect(),
            CanonicalKind::Cyclic => (0..hand).flat_map(|_| 0..players).collect(),
            CanonicalKind::BackAndForth => (0..hand)
                .flat_map(|round| {
                    let forward = round % 2 == 0;
                    (0..players).map(move |p| if forward { p } else { players - 1 - p })
                })
                .collect(),
        };
        Self::new(assignment, players)
    }

    /// Player 1 gets the first `hand` cards, player 2 the next `hand`, ...
    pub fn ordered(players: usize, hand: usize) -> Result<Self> {
        Self::canonical(CanonicalKind::Ordered, players, hand)
    }

    /// Repeats `1, 2, ..., l`.
    pub fn cyclic(players: usize, hand: usize) -> Result<Self> {
        Self::canonical(CanonicalKind::Cyclic, players, hand)
    }

    /// Alternates `1..l` and `l..1`; odd hand sizes end on a forward pass.
    pub fn back_and_forth(players: usize, hand: usize) -> Result<Self> {
        Self::canonical(CanonicalKind::BackAndForth, players, hand)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn hand_size(&self) -> usize {
        self.hand
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// 1-based positions dealt to `player`, in increasing order.
    pub fn positions(&self, player: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == player)
            .map(|(t, _)| t + 1)
            .collect()
    }

    /// Sum of the 1-based positions dealt to `player`.
    pub fn position_sum(&self, player: usize) -> u64 {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == player)
            .map(|(t, _)| t as u64 + 1)
            .sum()
    }

    pub fn position_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.players];
        for (t, &p) in self.assignment.iter().enumerate() {
            sums[p] += t as u64 + 1;
        }
        sums
    }

    /// `#(j before i) - #(i before j)` over position pairs; 0 when `j == i`.
    pub fn dealing_z(&self, j: usize, i: usize) -> i64 {
        if j == i {
            return 0;
        }
        let (mut seen_j, mut seen_i) = (0i64, 0i64);
        let mut z = 0i64;
        for &p in &self.assignment {
            if p == i {
                z += seen_j;
                seen_i += 1;
            } else if p == j {
                z -= seen_i;
                seen_j += 1;
            }
        }
        z
    }

    /// Full matrix `z[j][i] = dealing_z(j, i)`, computed in one pass.
    pub fn dealing_z_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.players;
        let mut seen = vec![0i64; l];
        let mut z = vec![vec![0i64; l]; l];
        for &p in &self.assignment {
            for (q, &count) in seen.iter().enumerate() {
                if q != p {
                    z[q][p] += count;
                    z[p][q] -= count;
                }
            }
            seen[p] += 1;
        }
        z
    }

    /// `+1` when `j` receives a card before `i` does, `-1` otherwise.
    pub fn first_order_sign(&self, j: usize, i: usize) -> i64 {
        let first = |player| self.assignment.iter().position(|&p| p == player);
        if first(j) < first(i) {
            1
        } else {
            -1
        }
    }

    /// `l*s + 1 - 2 * position_sum(i) / s`, from the concrete sequence.
    pub fn position_term(&self, player: usize) -> ExactScalar {
        let n = self.len() as i64;
        exact::integer(n + 1) - exact::ratio(2 * self.position_sum(player) as i64, self.hand as i64)
    }

    /// Same sequence with players renamed by `relabel[old] = new`.
    pub fn relabeled(&self, relabel: &[usize]) -> Result<Self> {
        Self::new(self.assignment.iter().map(|&p| relabel[p]).collect(), self.players)
    }

    /// Relabels players in order of first appearance, giving the
    /// lexicographically smallest member of the relabeling class.
    pub fn normalized(&self) -> Self {
        let mut relabel = vec![usize::MAX; self.players];
        let mut next = 0;
        for &p in &self.assignment {
            if relabel[p] == usize::MAX {
                relabel[p] = next;
                next += 1;
            }
        }
        self.relabeled(&relabel).expect("relabeling preserves validity")
    }

    /// Exchanges the players at positions `t` and `u` (0-based).
    pub fn swapped(&self, t: usize, u: usize) -> Self {
        let mut assignment = self.assignment.clone();
        assignment.swap(t, u);
        Self { assignment, players: self.players, hand: self.hand }
    }

    pub fn to_symbols(&self) -> String {
        self.assignment
            .iter()
            .map(|&p| player_symbol(self.players, p))
            .collect()
    }
}

impl fmt::Display for DealingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_symbols())
    }
}

/// The three classical dealing methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalKind {
    Ordered,
    Cyclic,
    BackAndForth,
}

impl CanonicalKind {
    pub const ALL: [CanonicalKind; 3] =
        [CanonicalKind::Ordered, CanonicalKind::Cyclic, CanonicalKind::BackAndForth];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalKind::Ordered => "ordered",
            CanonicalKind::Cyclic => "cyclic",
            CanonicalKind::BackAndForth => "backforth",
        }
    }
}

impl fmt::Display for CanonicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CanonicalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ordered" => Ok(CanonicalKind::Ordered),
            "cyclic" => Ok(CanonicalKind::Cyclic),
            "backforth" | "back-and-forth" => Ok(CanonicalKind::BackAndForth),
            other => Err(Error::InvalidMethod(format!("unknown dealing kind {other:?}"))),
        }
    }
}

/// Closed form of `l*s + 1 - 2 * sum_t i_t / s` for the canonical methods
/// (`player` is 1-based here, matching the formula).
pub fn closed_form_position_term(
    kind: CanonicalKind,
    players: usize,
    hand: usize,
    player: usize,
) -> Result<ExactScalar> {
    if player == 0 || player > players {
        return Err(Error::OutOfRange(format!("player {player} not in 1..={players}")));
    }
    let base = players as i64 - 2 * player as i64 + 1;
    let s = hand as i64;
    Ok(match kind {
        CanonicalKind::Ordered => exact::integer(s * base),
        CanonicalKind::Cyclic => exact::integer(base),
        CanonicalKind::BackAndForth if hand.is_multiple_of(2) => exact::integer(0),
        CanonicalKind::BackAndForth => exact::ratio(base, s),
    })
}

/// Closed form of `dealing_z(j, i)` for the canonical methods, given
/// `first_order_sign(j, i)`.
pub fn closed_form_dealing_z(kind: CanonicalKind, hand: usize, sign: i64) -> i64 {
    let s = hand as i64;
    match kind {
        CanonicalKind::Ordered => s * s * sign,
        CanonicalKind::Cyclic => s * sign,
        CanonicalKind::BackAndForth if hand.is_multiple_of(2) => 0,
        CanonicalKind::BackAndForth => sign,
    }
}
