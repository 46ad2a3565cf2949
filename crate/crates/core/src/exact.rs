//! Exact rational arithmetic helpers.
//!
//! Every probability and coefficient in this crate is an [`ExactScalar`], a
//! reduced big rational. The helpers here cover factorials, binomials, the
//! `p/q` text form used in CSV output and a signed accumulator that stays in
//! `i128` until it overflows.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

/// Largest `n` with `n!` representable in a `u128`.
pub const MAX_U128_FACTORIAL: usize = 34;

const fn factorial_table() -> [u128; MAX_U128_FACTORIAL + 1] {
    let mut table = [1u128; MAX_U128_FACTORIAL + 1];
    let mut i = 1;
    while i <= MAX_U128_FACTORIAL {
        table[i] = table[i - 1] * i as u128;
        i += 1;
    }
    table
}

pub(crate) static FACTORIALS: [u128; MAX_U128_FACTORIAL + 1] = factorial_table();

pub fn factorial(n: u64) -> BigUint {
    if (n as usize) <= MAX_U128_FACTORIAL {
        return BigUint::from(FACTORIALS[n as usize]);
    }
    let mut acc = BigUint::from(FACTORIALS[MAX_U128_FACTORIAL]);
    for i in (MAX_U128_FACTORIAL as u64 + 1)..=n {
        acc *= i;
    }
    acc
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `total! / prod(parts!)` in `u128`, or `None` on overflow.
pub fn multinomial_u128(parts: impl IntoIterator<Item = u32>) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut total: u64 = 0;
    for part in parts {
        for i in 1..=part as u64 {
            total += 1;
            // acc * total / i stays integral: acc is C(total - 1, i - 1)-scaled.
            acc = acc.checked_mul(total as u128)? / i as u128;
        }
    }
    Some(acc)
}

pub fn multinomial(parts: impl IntoIterator<Item = u32>) -> BigUint {
    let mut acc = BigUint::one();
    let mut total: u64 = 0;
    for part in parts {
        for i in 1..=part as u64 {
            total += 1;
            acc *= total;
            acc /= i;
        }
    }
    acc
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactScalar {
    BigRational::new(num.into(), den.into())
}

pub fn integer(value: impl Into<BigInt>) -> ExactScalar {
    BigRational::from_integer(value.into())
}

pub fn from_biguint(value: BigUint) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// `"num/den"`, with the denominator always written out.
pub fn format_exact(value: &ExactScalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"num/den"` or a plain integer.
pub fn parse_exact(text: &str) -> Option<ExactScalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn to_f64(value: &ExactScalar) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Float rendering with 17 significant digits.
pub fn format_float(value: &ExactScalar) -> String {
    format!("{:.16e}", to_f64(value))
}

/// Exact signed sum that runs in `i128` and spills into a `BigInt`.
#[derive(Debug, Clone, Default)]
pub struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_i128(&mut self, value: i128) {
        match self.small.checked_add(value) {
            Some(v) => self.small = v,
            None => {
                self.big += BigInt::from(self.small);
                self.small = value;
            }
        }
    }

    pub fn add_big(&mut self, value: BigInt) {
        self.big += value;
    }

    /// Adds `count * factor`.
    pub fn add_product(&mut self, count: &Count, factor: i128) {
        match count {
            Count::Small(c) => {
                let product = i128::try_from(*c)
                    .ok()
                    .and_then(|c| c.checked_mul(factor));
                match product {
                    Some(p) => self.add_i128(p),
                    None => self.add_big(BigInt::from(*c) * factor),
                }
            }
            Count::Big(c) => self.add_big(BigInt::from(c.clone()) * factor),
        }
    }

    pub fn merge(mut self, other: Accumulator) -> Accumulator {
        self.add_big(other.big);
        self.add_i128(other.small);
        self
    }

    pub fn total(&self) -> BigInt {
        &self.big + BigInt::from(self.small)
    }
}

/// Non-negative integer that is usually small enough for `u128`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Small(u128),
    Big(BigUint),
}

impl Count {
    pub fn to_biguint(&self) -> BigUint {
        match self {
            Count::Small(c) => BigUint::from(*c),
            Count::Big(c) => c.clone(),
        }
    }
}
