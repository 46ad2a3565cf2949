use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::method::{CanonicalKind, DealingMethod};

/// Four-player, 52-card sequence whose position sums are 344, 345, 344, 345.
pub const CONJECTURED_SEQUENCE: &str = "SNEWWSENNEWSWSENNESWWSENNESWWSENNESWWSENNESWWSENNESW";

static CONJECTURED: LazyLock<DealingMethod> = LazyLock::new(|| {
    assert_eq!(CONJECTURED_SEQUENCE.len(), 52, "conjectured sequence must have 52 symbols");
    DealingMethod::parse(CONJECTURED_SEQUENCE, 4).expect("conjectured sequence must deal 13 cards to each of N, E, S, W")
});

pub fn conjectured_method() -> &'static DealingMethod {
    &CONJECTURED
}

/// Named dealing methods: `ordered | cyclic | backforth | conjectured | seq:<symbols>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MethodSpec {
    Canonical(CanonicalKind),
    Conjectured,
    Sequence(String),
}

impl MethodSpec {
    pub fn build(&self, players: usize, hand: usize) -> Result<DealingMethod> {
        match self {
            MethodSpec::Canonical(kind) => DealingMethod::canonical(*kind, players, hand),
            MethodSpec::Conjectured => {
                if players != 4 || hand != 13 {
                    return Err(Error::InvalidMethod(format!(
                        "the conjectured sequence deals 4 hands of 13, not {players} hands of {hand}"
                    )));
                }
                Ok(conjectured_method().clone())
            }
            MethodSpec::Sequence(symbols) => {
                let method = DealingMethod::parse(symbols, players)?;
                if method.hand_size() != hand {
                    return Err(Error::InvalidMethod(format!(
                        "sequence deals hands of {}, expected {hand}",
                        method.hand_size()
                    )));
                }
                Ok(method)
            }
        }
    }

    /// Player count implied by a custom sequence.
    pub fn implied_players(&self) -> Option<usize> {
        match self {
            MethodSpec::Sequence(symbols) => Some(DealingMethod::count_symbols(symbols)),
            MethodSpec::Conjectured => Some(4),
            MethodSpec::Canonical(_) => None,
        }
    }

    /// Parses a comma separated list of specs.
    pub fn parse_list(text: &str) -> Result<Vec<MethodSpec>> {
        text.split(',').map(str::parse).collect()
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Canonical(kind) => write!(f, "{kind}"),
            MethodSpec::Conjectured => f.write_str("conjectured"),
            MethodSpec::Sequence(s) => write!(f, "seq:{s}"),
        }
    }
}

impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(symbols) = s.strip_prefix("seq:") {
            if symbols.is_empty() {
                return Err(Error::InvalidMethod("empty sequence".into()));
            }
            return Ok(MethodSpec::Sequence(symbols.to_string()));
        }
        if s.eq_ignore_ascii_case("conjectured") {
            return Ok(MethodSpec::Conjectured);
        }
        s.parse::<CanonicalKind>().map(MethodSpec::Canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjectured_sequence_is_valid() {
        let m = conjectured_method();
        assert_eq!(m.len(), 52);
        assert_eq!(m.players(), 4);
        assert_eq!(m.hand_size(), 13);
        assert_eq!(m.position_sums(), vec![344, 345, 344, 345]);
    }

    #[test]
    fn method_name_grammar() {
        for text in ["ordered", "cyclic", "backforth", "conjectured", "seq:1212"] {
            let spec: MethodSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("sideways".parse::<MethodSpec>().is_err());
        assert!("seq:".parse::<MethodSpec>().is_err());
        assert!(MethodSpec::Conjectured.build(4, 12).is_err());
        assert!("seq:1212".parse::<MethodSpec>().unwrap().build(2, 3).is_err());
        assert_eq!(MethodSpec::parse_list("ordered,cyclic").unwrap().len(), 2);
        assert_eq!("seq:112233".parse::<MethodSpec>().unwrap().implied_players(), Some(3));
    }
}
