//! Digraph and pair statistics of a deck.

use crate::deck::{Color, Deck};
use crate::error::{Error, Result};

fn check_colors(deck: &Deck, x: Color, y: Color) -> Result<()> {
    let k = deck.composition().colors();
    if x == y {
        return Err(Error::Inconsistent(format!("pair statistic needs two colors, got {} twice", x + 1)));
    }
    if x >= k || y >= k {
        return Err(Error::OutOfRange(format!(
            "colors {} and {} must lie in 1..={k}",
            x + 1,
            y + 1
        )));
    }
    Ok(())
}

/// `#(x-y adjacent digraphs) - #(y-x adjacent digraphs)`.
pub fn w_statistic(deck: &Deck, x: Color, y: Color) -> Result<i64> {
    check_colors(deck, x, y)?;
    Ok(deck
        .cards()
        .windows(2)
        .map(|w| match (w[0], w[1]) {
            (a, b) if a == x && b == y => 1,
            (a, b) if a == y && b == x => -1,
            _ => 0,
        })
        .sum())
}

/// `#(x-y pairs) - #(y-x pairs)` over all position pairs `i < j`.
pub fn z_statistic(deck: &Deck, x: Color, y: Color) -> Result<i64> {
    check_colors(deck, x, y)?;
    let (mut seen_x, mut seen_y) = (0i64, 0i64);
    let mut z = 0;
    for &c in deck.cards() {
        if c == y {
            z += seen_x;
            seen_y += 1;
        } else if c == x {
            z -= seen_y;
            seen_x += 1;
        }
    }
    Ok(z)
}

/// `U(i)` for every 1-based position: cards of neither color before `i`,
/// minus those after `i`, minus `2i`.
pub fn positional_terms(deck: &Deck, x: Color, y: Color) -> Result<Vec<i64>> {
    check_colors(deck, x, y)?;
    let is_other: Vec<bool> = deck.cards().iter().map(|&c| c != x && c != y).collect();
    let total_other = is_other.iter().filter(|&&o| o).count() as i64;
    let mut before = 0i64;
    let mut terms = Vec::with_capacity(deck.len());
    for (idx, &other) in is_other.iter().enumerate() {
        let after = total_other - before - other as i64;
        terms.push(before - after - 2 * (idx as i64 + 1));
        before += other as i64;
    }
    Ok(terms)
}

/// The same statistic as [`z_statistic`], built by flipping cards to `x` one
/// at a time: each `x` card at position `i` contributes `n + 1 + U(i)`.
pub fn z_positional(deck: &Deck, x: Color, y: Color) -> Result<i64> {
    let n = deck.len() as i64;
    let terms = positional_terms(deck, x, y)?;
    Ok(deck
        .cards()
        .iter()
        .zip(&terms)
        .filter(|(&c, _)| c == x)
        .map(|(_, &u)| n + 1 + u)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn deck(text: &str, players: usize) -> Deck {
        Deck::parse(text, players).unwrap()
    }

    #[test]
    fn worked_deck() {
        let d = deck("BRRRBBBBRR", 2);
        assert_eq!(w_statistic(&d, 0, 1).unwrap(), 1);
        assert_eq!(w_statistic(&d, 1, 0).unwrap(), -1);
        assert_eq!(z_statistic(&d, 0, 1).unwrap(), 1);
        assert_eq!(z_statistic(&d, 1, 0).unwrap(), -1);
        assert_eq!(z_positional(&d, 0, 1).unwrap(), 1);
    }

    #[test]
    fn block_decks() {
        let d = deck("BBBRRRRR", 2);
        assert_eq!(w_statistic(&d, 0, 1).unwrap(), 1);
        assert_eq!(z_statistic(&d, 0, 1).unwrap(), 15);
        let single = deck("BRRRRR", 2);
        assert_eq!(z_positional(&single, 0, 1).unwrap(), 5);
    }

    #[test]
    fn same_color_rejected() {
        let d = deck("BRRB", 2);
        assert!(w_statistic(&d, 0, 0).is_err());
        assert!(z_statistic(&d, 1, 1).is_err());
        assert!(z_positional(&d, 0, 2).is_err());
    }

    #[test]
    fn positional_parity() {
        let d = deck("BGRRGBGR", 2);
        let n = d.len() as i64;
        let terms = positional_terms(&d, 0, 1).unwrap();
        let others = 3;
        for (idx, &c) in d.cards().iter().enumerate() {
            let u = terms[idx] + 2 * (idx as i64 + 1);
            assert!(u.abs() <= n);
            let expected = if c == 2 { others - 1 } else { others };
            assert_eq!((u - expected).rem_euclid(2), 0);
        }
    }

    fn brute_z(cards: &[usize], x: usize, y: usize) -> i64 {
        let mut z = 0;
        for i in 0..cards.len() {
            for j in i + 1..cards.len() {
                if cards[i] == x && cards[j] == y {
                    z += 1;
                } else if cards[i] == y && cards[j] == x {
                    z -= 1;
                }
            }
        }
        z
    }

    fn arb_deck(max_colors: usize, len: std::ops::Range<usize>) -> impl Strategy<Value = Deck> {
        (2..=max_colors).prop_flat_map(move |k| {
            prop::collection::vec(0..k, len.clone()).prop_filter_map("all colors present", move |mut cards| {
                for c in 0..k {
                    if !cards.contains(&c) {
                        cards.push(c);
                    }
                }
                let n = cards.len();
                Deck::new(cards, n).ok()
            })
        })
    }

    proptest! {
        #[test]
        fn statistics_agree(d in arb_deck(4, 2..40)) {
            let k = d.composition().colors();
            for x in 0..k {
                for y in 0..k {
                    if x == y { continue; }
                    let z = z_statistic(&d, x, y).unwrap();
                    prop_assert_eq!(z, brute_z(d.cards(), x, y));
                    prop_assert_eq!(z, z_positional(&d, x, y).unwrap());
                    prop_assert_eq!(z, -z_statistic(&d, y, x).unwrap());
                    prop_assert_eq!(w_statistic(&d, x, y).unwrap(), -w_statistic(&d, y, x).unwrap());
                }
            }
        }
    }
}
