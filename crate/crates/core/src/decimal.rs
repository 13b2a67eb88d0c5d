//! Fixed-point decimals on the 10^-6 grid.
//!
//! Every membership degree, threshold, grade and Σ-count in this crate is an
//! integer count of millionths. Sums of degrees stay exact, and ratios are
//! compared by cross-multiplication, so threshold predicates never depend on
//! floating-point rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Number of fractional digits carried by every decimal.
pub const SCALE_DIGITS: usize = 6;
/// `10^SCALE_DIGITS`; the integer representation of `1`.
pub const SCALE: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalError {
    #[error("empty decimal literal")]
    Empty,
    #[error("malformed decimal literal {0:?}")]
    Malformed(String),
    #[error("decimal literal {0:?} has more than 6 fractional digits")]
    TooPrecise(String),
    #[error("decimal literal {0:?} is out of range")]
    Overflow(String),
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(String),
}

/// Signed exact decimal with six fractional digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Decimal(i64);

impl Decimal {
    pub const ZERO: Decimal = Decimal(0);
    pub const ONE: Decimal = Decimal(SCALE);

    pub const fn from_micros(micros: i64) -> Self {
        Decimal(micros)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    pub fn from_int(v: i64) -> Self {
        Decimal(v * SCALE)
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn checked_add(self, rhs: Decimal) -> Option<Decimal> {
        self.0.checked_add(rhs.0).map(Decimal)
    }
}

impl std::ops::Add for Decimal {
    type Output = Decimal;
    fn add(self, rhs: Decimal) -> Decimal {
        Decimal(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Decimal {
    type Output = Decimal;
    fn sub(self, rhs: Decimal) -> Decimal {
        Decimal(self.0 - rhs.0)
    }
}

impl std::iter::Sum for Decimal {
    fn sum<I: Iterator<Item = Decimal>>(iter: I) -> Decimal {
        Decimal(iter.map(|d| d.0).sum())
    }
}

impl FromStr for Decimal {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(DecimalError::Empty);
        }
        let malformed = || DecimalError::Malformed(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => {
                if f.is_empty() {
                    return Err(malformed());
                }
                (i, f)
            }
            None => (body, ""),
        };
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(malformed());
        }
        if frac_part.len() > SCALE_DIGITS {
            return Err(DecimalError::TooPrecise(s.to_string()));
        }
        let overflow = || DecimalError::Overflow(s.to_string());
        let int: i64 = int_part.parse().map_err(|_| overflow())?;
        let mut frac: i64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| malformed())?
        };
        for _ in frac_part.len()..SCALE_DIGITS {
            frac *= 10;
        }
        let magnitude = int
            .checked_mul(SCALE)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(overflow)?;
        Ok(Decimal(if negative { -magnitude } else { magnitude }))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let int = abs / SCALE as u64;
        let frac = abs % SCALE as u64;
        if frac == 0 {
            write!(f, "{sign}{int}")
        } else {
            let digits = format!("{frac:06}");
            write!(f, "{sign}{int}.{}", digits.trim_end_matches('0'))
        }
    }
}

/// Membership degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Degree(u32);

impl Degree {
    pub const ZERO: Degree = Degree(0);
    pub const ONE: Degree = Degree(SCALE as u32);

    pub fn from_micros(micros: u32) -> Result<Self, DecimalError> {
        if micros as i64 > SCALE {
            return Err(DecimalError::DegreeOutOfRange(
                Decimal::from_micros(micros as i64).to_string(),
            ));
        }
        Ok(Degree(micros))
    }

    pub const fn micros(self) -> u32 {
        self.0
    }

    pub fn to_decimal(self) -> Decimal {
        Decimal::from_micros(self.0 as i64)
    }

    /// `1 - self`.
    pub fn complement(self) -> Degree {
        Degree(SCALE as u32 - self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl TryFrom<Decimal> for Degree {
    type Error = DecimalError;

    fn try_from(d: Decimal) -> Result<Self, Self::Error> {
        if d.micros() < 0 || d.micros() > SCALE {
            return Err(DecimalError::DegreeOutOfRange(d.to_string()));
        }
        Ok(Degree(d.micros() as u32))
    }
}

impl FromStr for Degree {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Degree::try_from(s.parse::<Decimal>()?)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_decimal().fmt(f)
    }
}

/// Exact non-negative ratio `num / den` of two decimals, `den > 0`.
///
/// Used for conditional probabilities. Comparisons cross-multiply in `i128`.
#[derive(Debug, Clone, Copy)]
pub struct Proportion {
    num: Decimal,
    den: Decimal,
}

impl Proportion {
    /// Panics if `den` is not positive.
    pub fn new(num: Decimal, den: Decimal) -> Self {
        assert!(den.micros() > 0, "proportion denominator must be positive");
        Proportion { num, den }
    }

    pub fn numerator(&self) -> Decimal {
        self.num
    }

    pub fn denominator(&self) -> Decimal {
        self.den
    }

    /// Compares `num / den` with a decimal threshold.
    pub fn cmp_decimal(&self, t: Decimal) -> Ordering {
        let lhs = self.num.micros() as i128 * SCALE as i128;
        let rhs = t.micros() as i128 * self.den.micros() as i128;
        lhs.cmp(&rhs)
    }

    pub fn at_least(&self, t: Degree) -> bool {
        self.cmp_decimal(t.to_decimal()) != Ordering::Less
    }

    /// Lowest-terms fraction of the underlying integers, e.g. `25/33`.
    pub fn reduced(&self) -> (i64, i64) {
        let g = self.num.micros().gcd(&self.den.micros());
        if g == 0 {
            return (0, 1);
        }
        (self.num.micros() / g, self.den.micros() / g)
    }
}

impl PartialEq for Proportion {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Proportion {}

impl PartialOrd for Proportion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Proportion {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num.micros() as i128 * other.den.micros() as i128;
        let rhs = other.num.micros() as i128 * self.den.micros() as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}
