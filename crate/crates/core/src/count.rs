use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// An exact cardinality: an arbitrary-precision natural or `Infinite`.
///
/// Finite values order below `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(BigUint),
    Infinite,
}

impl Count {
    pub fn zero() -> Self {
        Count::Finite(BigUint::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Count::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Count::Finite(v) => Some(v),
            Count::Infinite => None,
        }
    }

    /// Parses a decimal natural or `inf`.
    pub fn parse(text: &str) -> Option<Self> {
        if text == "inf" {
            return Some(Count::Infinite);
        }
        text.parse::<BigUint>().ok().map(Count::Finite)
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count::Finite(BigUint::from(v))
    }
}

impl From<usize> for Count {
    fn from(v: usize) -> Self {
        Count::Finite(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count::Finite(v)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(v) => write!(f, "{v}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

/// `2^e` as an exact natural.
pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Smallest `t` with `2^t >= m` (0 for `m <= 1`).
pub fn ceil_log2(m: &BigUint) -> u64 {
    if m <= &BigUint::one() {
        0
    } else {
        (m - BigUint::one()).bits()
    }
}

/// Smallest `t` with `2^t > m`.
pub fn log2_above(m: &BigUint) -> u64 {
    m.bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinite_last() {
        assert!(Count::from(5u64) < Count::Infinite);
        assert!(Count::from(5u64) < Count::from(6u64));
    }

    #[test]
    fn display_and_parse() {
        let big = Count::Finite(pow2(200));
        let text = big.to_string();
        assert_eq!(text, "1606938044258990275541962092341162602522202993782792835301376");
        assert_eq!(Count::parse(&text), Some(big));
        assert_eq!(Count::parse("inf"), Some(Count::Infinite));
        assert_eq!(Count::parse("x"), None);
    }

    #[test]
    fn log_helpers() {
        let b = |v: u64| BigUint::from(v);
        assert_eq!(ceil_log2(&b(0)), 0);
        assert_eq!(ceil_log2(&b(1)), 0);
        assert_eq!(ceil_log2(&b(5)), 3);
        assert_eq!(ceil_log2(&b(8)), 3);
        assert_eq!(log2_above(&b(0)), 0);
        assert_eq!(log2_above(&b(2)), 2);
        assert_eq!(log2_above(&b(4)), 3);
        assert_eq!(log2_above(&b(7)), 3);
    }
}
