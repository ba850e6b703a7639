//! The value group `Z ∪ {∞}`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

/// A value of the (integer) value group, extended by the valuation of zero.
///
/// `Infinity` absorbs addition and compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValExt {
    Finite(i64),
    Infinity,
}

impl ValExt {
    pub const ZERO: ValExt = ValExt::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ValExt::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ValExt::Finite(v) => Some(v),
            ValExt::Infinity => None,
        }
    }

    /// `self ≥ 0`, i.e. the element lies in the valuation ring.
    pub fn is_integral(self) -> bool {
        self >= ValExt::ZERO
    }
}

impl From<i64> for ValExt {
    fn from(v: i64) -> Self {
        ValExt::Finite(v)
    }
}

impl Add for ValExt {
    type Output = ValExt;

    fn add(self, rhs: ValExt) -> ValExt {
        match (self, rhs) {
            (ValExt::Finite(a), ValExt::Finite(b)) => ValExt::Finite(a + b),
            _ => ValExt::Infinity,
        }
    }
}

impl Ord for ValExt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValExt::Finite(a), ValExt::Finite(b)) => a.cmp(b),
            (ValExt::Finite(_), ValExt::Infinity) => Ordering::Less,
            (ValExt::Infinity, ValExt::Finite(_)) => Ordering::Greater,
            (ValExt::Infinity, ValExt::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ValExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ValExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValExt::Finite(v) => write!(f, "{v}"),
            ValExt::Infinity => f.write_str("inf"),
        }
    }
}
