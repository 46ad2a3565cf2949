use std::io::Write;

use dealmix::exact::{self, format_exact, format_float};
use dealmix::lab::{
    search_dealing, simulate_hand_distribution, two_type_sweep, grid_three_types, MethodSpec, SearchConfig,
    SearchObjective, SearchStrategy,
};
use dealmix::{
    leading_coefficient_arbitrary, stationary_probability, CoefficientEngine, DealingMethod, Deck,
    DeckComposition, ExactScalar, Oracle,
};
use num_traits::Zero;

use crate::output::{Table, TableSet};
use crate::{CliError, Command, DeckArgs, RunConfig};

type CmdResult<T> = Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Accepts the named grammar, plus bare digit or `NESW` strings as sequences.
fn method_spec(text: &str) -> CmdResult<MethodSpec> {
    match text.parse::<MethodSpec>() {
        Ok(spec) => Ok(spec),
        Err(e) => {
            let bare = !text.is_empty()
                && (text.chars().all(|c| c.is_ascii_digit())
                    || text.chars().all(|c| "NESWnesw".contains(c)));
            if bare {
                Ok(MethodSpec::Sequence(text.to_string()))
            } else {
                Err(e.into())
            }
        }
    }
}

fn method_specs(texts: &[String]) -> CmdResult<Vec<MethodSpec>> {
    if texts.is_empty() {
        return Err(invalid("at least one method is required"));
    }
    texts.iter().map(|t| method_spec(t)).collect()
}

fn implied_players(specs: &[MethodSpec]) -> Option<usize> {
    specs.iter().find_map(MethodSpec::implied_players)
}

enum Source {
    Ordered(DeckComposition),
    Explicit(Deck),
}

impl Source {
    fn composition(&self) -> &DeckComposition {
        match self {
            Source::Ordered(c) => c,
            Source::Explicit(d) => d.composition(),
        }
    }

    fn engine(&self) -> CmdResult<CoefficientEngine> {
        Ok(match self {
            Source::Ordered(c) => CoefficientEngine::for_ordered_deck(c)?,
            Source::Explicit(d) => CoefficientEngine::for_deck(d)?,
        })
    }
}

/// Works out players and hand size, filling whichever was not given.
fn shape(n: usize, players: Option<usize>, hand: Option<usize>, implied: Option<usize>) -> CmdResult<(usize, usize)> {
    let players = match (players, hand) {
        (Some(p), _) => p,
        (None, Some(h)) if h > 0 && n.is_multiple_of(h) => n / h,
        (None, Some(h)) => return Err(invalid(format!("{n} cards cannot form hands of {h}"))),
        (None, None) => implied.unwrap_or(4),
    };
    if players == 0 {
        return Err(invalid("players must be positive"));
    }
    let hand = hand.unwrap_or(n / players);
    if players * hand != n {
        return Err(invalid(format!(
            "composition mismatch: {players} players x {hand} cards = {} but the deck has {n} cards",
            players * hand
        )));
    }
    Ok((players, hand))
}

fn resolve(args: &DeckArgs, specs: &[MethodSpec]) -> CmdResult<Source> {
    let implied = implied_players(specs);
    match &args.deck {
        Some(text) => {
            let n = if text.contains(',') {
                text.split(',').count()
            } else {
                text.chars().filter(|c| !c.is_whitespace()).count()
            };
            let (players, hand) = shape(n, args.players, args.hand, implied)?;
            let deck = Deck::parse(text, players)?;
            if deck.composition().hand_size() != hand {
                return Err(invalid("hand size does not match the deck"));
            }
            Ok(Source::Explicit(deck))
        }
        None => {
            let n = args.comp.iter().map(|&c| c as usize).sum();
            let (players, hand) = shape(n, args.players, args.hand, implied)?;
            Ok(Source::Ordered(DeckComposition::new(args.comp.clone(), players, hand)?))
        }
    }
}

fn build(spec: &MethodSpec, comp: &DeckComposition) -> CmdResult<DealingMethod> {
    let method = spec.build(comp.players(), comp.hand_size())?;
    comp.check_method(&method)?;
    Ok(method)
}

fn exact_cells(value: &ExactScalar) -> [String; 2] {
    [format_exact(value), format_float(value)]
}

pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let tables = match &config.command {
        Command::Coeff { deck, method, per_hand } => coeff(deck, method, *per_hand)?,
        Command::Compare { deck, methods } => compare(deck, methods)?,
        Command::Grid3 { cards, method } => grid3(*cards, method)?,
        Command::Curve2 { cards, methods } => curve2(*cards, methods)?,
        Command::Oracle { deck, players, method, a, cap } => oracle(deck, *players, method, a, *cap)?,
        Command::Simulate { deck, players, method, a, samples, seed } => {
            simulate(deck, *players, method, *a, *samples, *seed)?
        }
        Command::Search { deck, objective, strategy, budget, seed, start } => {
            search(deck, objective, strategy, *budget, *seed, start.as_deref())?
        }
    };
    tables.write(config, out)?;
    Ok(())
}

fn coeff(args: &DeckArgs, method: &str, per_hand: bool) -> CmdResult<TableSet> {
    let spec = method_spec(method)?;
    let source = resolve(args, std::slice::from_ref(&spec))?;
    let m = build(&spec, source.composition())?;
    let report = source.engine()?.keep_per_hand(per_hand).evaluate(&m)?;

    let mut set = TableSet::default();
    let mut main = Table::new("coefficient", &["method", "coefficient", "float", "profiles"]);
    let [num, float] = exact_cells(&report.coefficient);
    main.push(vec![spec.to_string(), num, float, report.profiles.to_string()]);
    set.tables.push(main);
    if let Some(terms) = report.per_hand {
        let mut hands = Table::new("per_hand", &["hand", "term", "float"]);
        for (hand, term) in terms {
            let [num, float] = exact_cells(&term);
            hands.push(vec![hand.to_text(), num, float]);
        }
        set.tables.push(hands);
    }
    Ok(set)
}

fn compare(args: &DeckArgs, methods: &[String]) -> CmdResult<TableSet> {
    let specs = method_specs(methods)?;
    let source = resolve(args, &specs)?;
    let engine = source.engine()?;
    let mut values = Vec::new();
    for spec in &specs {
        values.push(engine.evaluate(&build(spec, source.composition())?)?.coefficient);
    }
    let mut table = Table::new("compare", &["method", "coefficient", "float", "ratio_to_next", "ratio_float"]);
    for (i, spec) in specs.iter().enumerate() {
        let [num, float] = exact_cells(&values[i]);
        let ratio = values.get(i + 1).filter(|next| !next.is_zero()).map(|next| &values[i] / next);
        let [r, rf] = ratio.map(|r| exact_cells(&r)).unwrap_or_default();
        table.push(vec![spec.to_string(), num, float, r, rf]);
    }
    Ok(TableSet { tables: vec![table], notes: Vec::new() })
}

fn four_player_method(spec: &MethodSpec, cards: u32) -> CmdResult<DealingMethod> {
    if cards == 0 || !cards.is_multiple_of(4) {
        return Err(invalid(format!("{cards} cards cannot be dealt to 4 players")));
    }
    Ok(spec.build(4, cards as usize / 4)?)
}

fn grid3(cards: u32, method: &str) -> CmdResult<TableSet> {
    let m = four_player_method(&method_spec(method)?, cards)?;
    let mut table = Table::new("grid3", &["b", "r", "num", "den", "float"]);
    for cell in grid_three_types(cards, &m)? {
        table.push(vec![
            cell.b.to_string(),
            cell.r.to_string(),
            cell.coefficient.numer().to_string(),
            cell.coefficient.denom().to_string(),
            format_float(&cell.coefficient),
        ]);
    }
    Ok(TableSet { tables: vec![table], notes: Vec::new() })
}

fn curve2(cards: u32, methods: &[String]) -> CmdResult<TableSet> {
    let specs = method_specs(methods)?;
    let built = specs.iter().map(|s| four_player_method(s, cards)).collect::<CmdResult<Vec<_>>>()?;
    let mut columns = vec!["b".to_string()];
    for spec in &specs {
        for suffix in ["num", "den", "float"] {
            columns.push(format!("{spec}_{suffix}"));
        }
    }
    if specs.len() == 2 {
        columns.push("ratio_float".into());
    }
    let mut table = Table { name: "curve2".into(), columns, rows: Vec::new() };
    for row in two_type_sweep(cards, &built)? {
        let mut cells = vec![row.b.to_string()];
        for c in &row.coefficients {
            cells.extend([c.numer().to_string(), c.denom().to_string(), format_float(c)]);
        }
        if let [first, second] = row.coefficients.as_slice() {
            cells.push(if second.is_zero() { String::new() } else { format_float(&(first / second)) });
        }
        table.push(cells);
    }
    Ok(TableSet { tables: vec![table], notes: Vec::new() })
}

fn small_deck(text: &str, players: Option<usize>, spec: &MethodSpec) -> CmdResult<Deck> {
    let players = players.or(spec.implied_players()).unwrap_or(2);
    Ok(Deck::parse(text, players)?)
}

fn oracle(text: &str, players: Option<usize>, method: &str, intensities: &[u64], cap: usize) -> CmdResult<TableSet> {
    let spec = method_spec(method)?;
    let deck = small_deck(text, players, &spec)?;
    let m = build(&spec, deck.composition())?;
    if intensities.is_empty() || intensities.contains(&0) {
        return Err(invalid("intensities must be positive"));
    }
    let oracle = Oracle::with_cap(cap);
    let distances = oracle.exact_hand_variation_distances(&deck, &m, intensities)?;
    let enumerated = oracle.first_order_hand_coefficient(&deck, &m)?;
    let closed = leading_coefficient_arbitrary(&deck, &m)?.coefficient;

    let mut vd = Table::new("variation_distance", &["a", "vd", "vd_float", "a_times_vd_float"]);
    for (&a, d) in intensities.iter().zip(&distances) {
        let [num, float] = exact_cells(d);
        vd.push(vec![a.to_string(), num, float, format_float(&(d * exact::integer(a)))]);
    }
    let mut coefficient = Table::new("coefficient", &["source", "coefficient", "float"]);
    for (source, value) in [("enumeration", &enumerated), ("closed_form", &closed)] {
        let [num, float] = exact_cells(value);
        coefficient.push(vec![source.into(), num, float]);
    }
    Ok(TableSet { tables: vec![vd, coefficient], notes: Vec::new() })
}

fn simulate(text: &str, players: Option<usize>, method: &str, a: u64, samples: u64, seed: u64) -> CmdResult<TableSet> {
    let spec = method_spec(method)?;
    let deck = small_deck(text, players, &spec)?;
    let m = build(&spec, deck.composition())?;
    let report = simulate_hand_distribution(&deck, &m, a, samples, seed)?;
    let comp = deck.composition();
    let mut table = Table::new("hands", &["hand", "count", "frequency", "limiting_float"]);
    for (hand, count) in &report.counts {
        let limit = stationary_probability(comp, hand)?;
        table.push(vec![
            hand.to_text(),
            count.to_string(),
            format!("{:.16e}", *count as f64 / samples as f64),
            format_float(&limit),
        ]);
    }
    let mut set = TableSet { tables: vec![table], notes: Vec::new() };
    set.note("seed", seed);
    set.note("samples", samples);
    set.note("a", a);
    set.note("empirical_tv", format!("{:.16e}", report.empirical_tv));
    Ok(set)
}

fn search(
    args: &DeckArgs,
    objective: &str,
    strategy: &str,
    budget: u64,
    seed: u64,
    start: Option<&str>,
) -> CmdResult<TableSet> {
    let objective: SearchObjective = objective.parse()?;
    let strategy: SearchStrategy = strategy.parse()?;
    let start_spec = start.map(method_spec).transpose()?;
    let source = resolve(args, start_spec.as_slice())?;
    let Source::Ordered(comp) = source else {
        return Err(invalid("search works on color-ordered decks; give --comp"));
    };
    let start = start_spec.map(|s| build(&s, &comp)).transpose()?;
    let outcome = search_dealing(&comp, &SearchConfig { objective, strategy, budget, seed, start })?;

    let mut table = Table::new("search", &["role", "sequence", "score", "float"]);
    let [num, float] = exact_cells(&outcome.score);
    table.push(vec!["best".into(), outcome.best.to_symbols(), num.clone(), float.clone()]);
    for m in &outcome.co_optimal {
        table.push(vec!["co_optimal".into(), m.to_symbols(), num.clone(), float.clone()]);
    }
    let mut set = TableSet { tables: vec![table], notes: Vec::new() };
    set.note("evaluations", outcome.evaluations);
    set.note("complete", outcome.complete);
    Ok(set)
}
