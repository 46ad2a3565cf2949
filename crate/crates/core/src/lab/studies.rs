use num_bigint::BigInt;
use num_rational::BigRational;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::coefficient::{CoefficientEngine, CoefficientReport};
use crate::deck::DeckComposition;
use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::method::DealingMethod;

/// `sum_i |S_i - (n+1)s/2|`: how far the position sums are from being equal.
pub fn conjecture_metric(method: &DealingMethod) -> ExactScalar {
    let n = method.len() as i64;
    let s = method.hand_size() as i64;
    let doubled: i64 = method
        .position_sums()
        .into_iter()
        .map(|v| (2 * v as i64 - (n + 1) * s).abs())
        .sum();
    BigRational::new(BigInt::from(doubled), BigInt::from(2))
}

/// One report per method for the color-ordered deck, sharing a single
/// enumeration of the hand profiles.
pub fn compare_methods(
    composition: &DeckComposition,
    methods: &[DealingMethod],
) -> Result<Vec<CoefficientReport>> {
    for m in methods {
        composition.check_method(m)?;
    }
    let engine = CoefficientEngine::for_ordered_deck(composition)?;
    methods.iter().map(|m| engine.evaluate(m)).collect()
}

fn check_four_players(cards: u32, method: &DealingMethod) -> Result<()> {
    if method.players() != 4 || method.len() != cards as usize {
        return Err(Error::Inconsistent(format!(
            "need a 4-player method over {cards} cards, got {} players over {}",
            method.players(),
            method.len()
        )));
    }
    Ok(())
}

/// Leading coefficients of the two-color deck `(b, cards - b)` for each `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub b: u32,
    /// One coefficient per method, in the order given.
    pub coefficients: Vec<ExactScalar>,
}

pub fn two_type_sweep(cards: u32, methods: &[DealingMethod]) -> Result<Vec<SweepRow>> {
    for m in methods {
        check_four_players(cards, m)?;
    }
    let row = |b: u32| -> Result<SweepRow> {
        let engine = CoefficientEngine::for_ordered_deck(&DeckComposition::two_type(b, cards)?)?;
        let coefficients = methods
            .iter()
            .map(|m| engine.evaluate(m).map(|r| r.coefficient))
            .collect::<Result<Vec<_>>>()?;
        Ok(SweepRow { b, coefficients })
    };
    #[cfg(feature = "parallel")]
    let rows = (1..cards).into_par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows = (1..cards).map(row).collect();
    rows
}

/// Leading coefficient for the three-color ordered deck `(b, r, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub b: u32,
    pub r: u32,
    pub g: u32,
    pub coefficient: ExactScalar,
}

pub fn three_type_coefficient(b: u32, r: u32, cards: u32, method: &DealingMethod) -> Result<ExactScalar> {
    check_four_players(cards, method)?;
    if b == 0 || r == 0 || b + r >= cards {
        return Err(Error::OutOfRange(format!("need b, r, g >= 1 (b={b}, r={r}, cards={cards})")));
    }
    let comp = DeckComposition::new(vec![b, r, cards - b - r], 4, cards as usize / 4)?;
    Ok(CoefficientEngine::for_ordered_deck(&comp)?.evaluate(method)?.coefficient)
}

/// Every cell `b, r, g >= 1` with `b + r + g = cards`, ordered by `(b, r)`.
pub fn grid_three_types(cards: u32, method: &DealingMethod) -> Result<Vec<GridCell>> {
    check_four_players(cards, method)?;
    let cells: Vec<(u32, u32)> = (1..cards)
        .flat_map(|b| (1..cards.saturating_sub(b)).map(move |r| (b, r)))
        .collect();
    let cell = |&(b, r): &(u32, u32)| -> Result<GridCell> {
        Ok(GridCell { b, r, g: cards - b - r, coefficient: three_type_coefficient(b, r, cards, method)? })
    };
    #[cfg(feature = "parallel")]
    let out = cells.par_iter().map(cell).collect();
    #[cfg(not(feature = "parallel"))]
    let out = cells.iter().map(cell).collect();
    out
}
