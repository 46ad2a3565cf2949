//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use dealmix::exact::{self, format_exact, ratio};
use dealmix::lab::{conjectured_method, sample_permutation, three_type_coefficient, two_type_sweep};
use dealmix::method::closed_form_position_term;
use dealmix::pair_stats::{z_positional, z_statistic};
use dealmix::shuffle::{a_shuffle_law, bayer_diaconis_prob, composed_shuffle_law};
use dealmix::{
    enumerate_hand_profiles, leading_coefficient_arbitrary, stationary_probability, CanonicalKind,
    CoefficientEngine, DealingMethod, Deck, DeckComposition, ExactScalar, Oracle, Permutation,
};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

/// Limiting law sums to one and signed per-hand terms cancel.
fn normalizations(comp: &DeckComposition, signed_total: &ExactScalar) -> Result<(), String> {
    let total: ExactScalar = enumerate_hand_profiles(comp)
        .map(|h| stationary_probability(comp, &h).unwrap())
        .sum();
    ensure(total.is_one(), || format!("limiting law of {:?} sums to {}", comp.counts(), format_exact(&total)))?;
    ensure(signed_total.is_zero(), || {
        format!("signed terms of {:?} sum to {}", comp.counts(), format_exact(signed_total))
    })
}

fn criterion_1() -> Outcome {
    let expected: [(CanonicalKind, [u64; 4]); 3] = [
        (CanonicalKind::Ordered, [91, 260, 429, 598]),
        (CanonicalKind::Cyclic, [325, 338, 351, 364]),
        (CanonicalKind::BackAndForth, [343, 344, 345, 346]),
    ];
    for (kind, sums) in expected {
        let m = check(DealingMethod::canonical(kind, 4, 13))?;
        ensure(m.position_sums() == sums, || format!("{} sums {:?}", kind.name(), m.position_sums()))?;
        for j in 0..4 {
            let closed = check(closed_form_position_term(kind, 4, 13, j + 1))?;
            ensure(closed == m.position_term(j), || format!("{} closed form differs at player {}", kind.name(), j + 1))?;
        }
    }
    Ok("ordered, cyclic and back-and-forth position sums match at l=4, s=13".into())
}

fn criterion_2() -> Outcome {
    let bf = check(DealingMethod::back_and_forth(4, 13))?;
    let back_and_forth = check(three_type_coefficient(1, 1, 52, &bf))?;
    let conjectured = check(three_type_coefficient(1, 1, 52, conjectured_method()))?;
    ensure(back_and_forth == ratio(56, 1275), || format!("back-and-forth gives {}", format_exact(&back_and_forth)))?;
    ensure(conjectured == ratio(76, 1275), || format!("conjectured gives {}", format_exact(&conjectured)))?;
    Ok(format!(
        "(b,r)=(1,1): back-and-forth {}, conjectured {}",
        format_exact(&back_and_forth),
        format_exact(&conjectured)
    ))
}

/// Fixed family: for every `(k, l, s)` a handful of count vectors spread
/// between lopsided and balanced.
fn theorem_family() -> Vec<DeckComposition> {
    let mut family = Vec::new();
    for players in 2..=4usize {
        for hand in 2..=5usize {
            let n = (players * hand) as u32;
            let mut two: BTreeSet<Vec<u32>> = BTreeSet::new();
            for b in [1, 2, n / 3, n / 2, n - 1] {
                if b >= 1 && b < n {
                    two.insert(vec![b, n - b]);
                }
            }
            let mut three: BTreeSet<Vec<u32>> = BTreeSet::new();
            for (b, r) in [(1, 1), (1, n - 2 - 1), (2, 1), (n / 3, n / 3), (1, n / 2)] {
                if b >= 1 && r >= 1 && b + r < n {
                    three.insert(vec![b, r, n - b - r]);
                }
            }
            for counts in two.into_iter().chain(three) {
                family.push(DeckComposition::new(counts, players, hand).unwrap());
            }
        }
    }
    family
}

fn criterion_3() -> Outcome {
    let family = theorem_family();
    ensure(family.len() >= 50, || format!("family has only {} compositions", family.len()))?;
    for comp in &family {
        let (l, s) = (comp.players(), comp.hand_size());
        let engine = check(CoefficientEngine::for_ordered_deck(comp))?;
        let mut values = Vec::new();
        for kind in CanonicalKind::ALL {
            let report = check(engine.evaluate(&check(DealingMethod::canonical(kind, l, s))?))?;
            normalizations(comp, &report.signed_total)?;
            values.push(report.coefficient);
        }
        let (ordered, cyclic, bf) = (&values[0], &values[1], &values[2]);
        let factor = exact::integer(s as u64);
        let tag = || format!("{:?} l={l} s={s}", comp.counts());
        ensure(*ordered == cyclic * &factor, || format!("ordered != s * cyclic for {}", tag()))?;
        if s % 2 == 1 {
            ensure(*cyclic == bf * &factor, || format!("cyclic != s * back-and-forth for {}", tag()))?;
        } else {
            ensure(bf.is_zero(), || format!("back-and-forth nonzero for even s, {}", tag()))?;
        }
    }
    Ok(format!("{} compositions satisfy the s-factor relations", family.len()))
}

fn small_decks() -> Vec<(&'static str, usize)> {
    vec![
        ("BBRR", 2),
        ("BRBR", 2),
        ("RBBR", 2),
        ("BRRRRR", 2),
        ("BRRRRR", 3),
        ("BBRRRR", 2),
        ("BRRBRR", 3),
        ("BBBRRR", 3),
        ("RBRBRB", 2),
        ("BBRRRRRR", 2),
        ("BBRRRRRR", 4),
        ("BBBBRRRR", 4),
        ("RRBRBRRB", 2),
        ("BRGG", 2),
        ("BRGGGG", 2),
        ("BRGGGG", 3),
        ("BBRRGG", 3),
        ("GBRGBR", 2),
        ("BRRGGGGG", 2),
        ("BBRRGGGG", 4),
        ("GRBGRGBG", 4),
        ("BRGBRGGG", 2),
    ]
}

fn criterion_4() -> Outcome {
    let oracle = Oracle::default();
    let decks = small_decks();
    let mut checks = 0;
    for (text, players) in &decks {
        let deck = check(Deck::parse(text, *players))?;
        let hand = deck.len() / players;
        for kind in CanonicalKind::ALL {
            let method = check(DealingMethod::canonical(kind, *players, hand))?;
            let engine = check(leading_coefficient_arbitrary(&deck, &method))?;
            let brute = check(oracle.first_order_hand_coefficient(&deck, &method))?;
            ensure(engine.coefficient == brute, || {
                format!(
                    "{text} l={players} {}: engine {} vs enumeration {}",
                    kind.name(),
                    format_exact(&engine.coefficient),
                    format_exact(&brute)
                )
            })?;
            normalizations(deck.composition(), &engine.signed_total)?;
            checks += 1;
        }
    }
    Ok(format!("{} decks, {checks} deck/method pairs agree with enumeration", decks.len()))
}

fn criterion_5() -> Outcome {
    let deck = check(Deck::parse("BBRR", 2))?;
    let method = check(DealingMethod::ordered(2, 2))?;
    let report = check(leading_coefficient_arbitrary(&deck, &method))?;
    normalizations(deck.composition(), &report.signed_total)?;
    let coeff = report.coefficient;
    let intensities: Vec<u64> = (1..=12).map(|j| 1u64 << j).collect();
    let distances = check(Oracle::default().exact_hand_variation_distances(&deck, &method, &intensities))?;
    let errors: Vec<ExactScalar> = intensities
        .iter()
        .zip(&distances)
        .map(|(&a, vd)| (vd * exact::integer(a) - &coeff).abs())
        .collect();
    // Strictly decreasing from some j onward, through j = 12.
    let mut start = errors.len() - 1;
    while start > 0 && errors[start - 1] > errors[start] {
        start -= 1;
    }
    let tail: Vec<String> = errors[9..].iter().map(|e| format!("{:.3e}", exact::to_f64(e))).collect();
    ensure(start <= 9, || format!("error only decreasing from j={} on; tail {tail:?}", start + 1))?;
    let relative = exact::to_f64(&(&errors[11] / &coeff));
    ensure(relative <= 0.02, || format!("relative error at j=12 is {relative:.4}"))?;
    Ok(format!(
        "coefficient {}, error decreasing from j={}, relative error {relative:.2e} at a=4096",
        format_exact(&coeff),
        start + 1
    ))
}

fn criterion_6() -> Outcome {
    let bf = check(DealingMethod::back_and_forth(4, 13))?;
    let rows = check(two_type_sweep(52, &[conjectured_method().clone(), bf.clone()]))?;
    let mut csv = String::from("b,conjectured_num,conjectured_den,backforth_num,backforth_den,ratio\n");
    for row in &rows {
        let (conj, back) = (&row.coefficients[0], &row.coefficients[1]);
        ensure(conj <= back, || format!("conjectured exceeds back-and-forth at b={}", row.b))?;
        let r = conj / back;
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            row.b,
            conj.numer(),
            conj.denom(),
            back.numer(),
            back.denom(),
            exact::format_float(&r)
        )
        .unwrap();
        let comp = check(DeckComposition::two_type(row.b, 52))?;
        let engine = check(CoefficientEngine::for_ordered_deck(&comp))?;
        normalizations(&comp, &check(engine.evaluate(&bf))?.signed_total)?;
        normalizations(&comp, &check(engine.evaluate(conjectured_method()))?.signed_total)?;
    }
    ensure(rows.len() == 51, || format!("{} rows", rows.len()))?;
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("two_type_ratios.csv");
    check(std::fs::write(&path, &csv))?;
    Ok(format!("conjectured <= back-and-forth for b=1..51, ratios in {}", path.display()))
}

fn criterion_7() -> Outcome {
    let mut decks = 0u64;
    for n in 2..=8usize {
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let cards: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % 3;
                    c /= 3;
                    d
                })
                .collect();
            let Ok(deck) = Deck::new(cards, n) else { continue };
            decks += 1;
            let k = deck.composition().colors();
            for x in 0..k {
                for y in 0..k {
                    if x != y {
                        let (a, b) = (check(z_statistic(&deck, x, y))?, check(z_positional(&deck, x, y))?);
                        ensure(a == b, || format!("{deck} ({x},{y}): {a} vs {b}"))?;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=4usize);
        let mut cards: Vec<usize> = (0..52).map(|_| rng.gen_range(0..k)).collect();
        for (slot, color) in (0..k).enumerate() {
            if !cards.contains(&color) {
                cards[slot] = color;
            }
        }
        let deck = check(Deck::new(cards, 4))?;
        let k = deck.composition().colors();
        for x in 0..k {
            for y in 0..k {
                if x != y {
                    let (a, b) = (check(z_statistic(&deck, x, y))?, check(z_positional(&deck, x, y))?);
                    ensure(a == b, || format!("{deck} ({x},{y}): {a} vs {b}"))?;
                }
            }
        }
    }
    Ok(format!("{decks} small decks exhaustively and 10000 random 52-card decks"))
}

fn criterion_8() -> Outcome {
    for n in 1..=6usize {
        for (a, b) in [(2u64, 2u64), (2, 3), (3, 4)] {
            let target = check(a_shuffle_law(n, a * b))?;
            ensure(check(composed_shuffle_law(n, a, b))? == target, || format!("n={n} {a} then {b}"))?;
            ensure(check(composed_shuffle_law(n, b, a))? == target, || format!("n={n} {b} then {a}"))?;
        }
    }
    Ok("a-then-b equals ab for n=1..6 and (a,b) in {(2,2),(2,3),(3,4)}".into())
}

fn criterion_9() -> Outcome {
    let (n, a, samples) = (6usize, 4u64, 1_000_000u64);
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut counts = vec![0u64; 720];
    for _ in 0..samples {
        counts[sample_permutation(n, a, &mut rng).rank()] += 1;
    }
    let mut within = 0;
    for perm in Permutation::all(n) {
        let p = exact::to_f64(&check(bayer_diaconis_prob(n, perm.descents(), a))?);
        let freq = counts[perm.rank()] as f64 / samples as f64;
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        if p == 0.0 {
            within += (counts[perm.rank()] == 0) as usize;
        } else if (freq - p).abs() <= 4.0 * se {
            within += 1;
        }
    }
    let share = within as f64 / 720.0;
    ensure(share >= 0.99, || format!("only {within}/720 permutations within 4 standard errors"))?;
    Ok(format!("{within}/720 permutations within 4 standard errors"))
}

fn criterion_10() -> Outcome {
    // Criteria 3 to 6 check both normalizations for every composition they
    // touch; this pass repeats the check on the largest ones directly.
    for counts in [vec![26, 26], vec![1, 51], vec![1, 1, 50], vec![13, 13, 26]] {
        let comp = check(DeckComposition::new(counts, 4, 13))?;
        let engine = check(CoefficientEngine::for_ordered_deck(&comp))?;
        for kind in CanonicalKind::ALL {
            let report = check(engine.evaluate(&check(DealingMethod::canonical(kind, 4, 13))?))?;
            normalizations(&comp, &report.signed_total)?;
        }
    }
    Ok("limiting laws sum to 1 and signed hand terms sum to 0".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("position sums", criterion_1),
        ("three-color anchor values", criterion_2),
        ("s-factor relations", criterion_3),
        ("engine equals enumeration", criterion_4),
        ("a * VD(a) converges", criterion_5),
        ("two-color dominance sweep", criterion_6),
        ("positional pair statistic", criterion_7),
        ("shuffle composition law", criterion_8),
        ("sampler frequencies", criterion_9),
        ("normalizations", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({elapsed:.2}s): {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {:>2} {name} ({elapsed:.2}s): {reason}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
