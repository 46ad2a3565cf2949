//! Exact first-order analysis of shuffled-and-dealt hands for decks with
//! repeated cards.
//!
//! A deck of `n = l * s` cards in `k` colors is a-shuffled (Gilbert-Shannon-Reeds
//! model) and dealt to `l` players by a fixed dealing method. The variation
//! distance between the resulting hands and their limiting law behaves like
//! `C / a` for large `a`; this crate computes `C` exactly, compares dealing
//! methods by it and checks everything against brute-force enumeration and a
//! seeded Monte Carlo shuffler.
//!
//! * [`deck`]: compositions, decks, hand profiles and the limiting law.
//! * [`method`]: dealing methods, position sums and pair statistics of a method.
//! * [`pair_stats`]: digraph and pair statistics of a deck.
//! * [`shuffle`]: exact shuffle probabilities and the enumeration oracle.
//! * [`coefficient`]: the closed-form leading coefficient.
//! * [`lab`]: method catalog, numeric studies, search and simulation.

pub mod coefficient;
pub mod deck;
mod error;
pub mod exact;
pub mod lab;
pub mod method;
pub mod pair_stats;
pub mod shuffle;

pub use coefficient::{
    leading_coefficient_arbitrary, leading_coefficient_ordered, sum_z_over_profile,
    two_type_closed_form, CoefficientEngine, CoefficientReport,
};
pub use deck::{
    count_decks_for_profile, deal, enumerate_hand_profiles, stationary_probability, Color, Deck,
    DeckComposition, HandProfile,
};
pub use error::{Error, Result};
pub use exact::ExactScalar;
pub use method::{CanonicalKind, DealingMethod};
pub use shuffle::{bayer_diaconis_prob, c1_formula, Oracle, Permutation};
