//! Exact rationals and real quadratic surds `(a + b·√d) / c`.
//!
//! Floors and comparisons are computed with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A rational `num/den` in lowest terms, or a normalized quadratic surd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExactNumber {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Rational { num: i128, den: i128 },
    /// `(a + b·√d) / c` with `b ≠ 0`, `d > 1` square-free, `c > 0` and
    /// `gcd(a, b, c) = 1`.
    Surd { a: i128, b: i128, d: i128, c: i128 },
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

/// `⌊√n⌋` for `n ≥ 0`.
pub(crate) fn isqrt(n: i128) -> i128 {
    debug_assert!(n >= 0);
    (n as u128).isqrt() as i128
}

/// Splits `d` into `k² · r` with `r` square-free.
fn extract_square(d: i128) -> (i128, i128) {
    let mut k = 1;
    let mut r = d;
    let mut p = 2;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, r)
}

/// `⌊b·√d⌋` for non-square `d` (or `b = 0`), by sign-aware squaring.
fn floor_b_sqrt_d(b: i128, d: i128) -> Result<i128> {
    if b == 0 {
        return Ok(0);
    }
    let sq = checked(b.checked_mul(b).and_then(|x| x.checked_mul(d)))?;
    let root = isqrt(sq);
    debug_assert!(root * root != sq, "d must not be a perfect square");
    Ok(if b > 0 { root } else { -root - 1 })
}

/// `⌊(a + b·√d) / c⌋` for `c > 0` and non-square `d` (any `d` if `b = 0`).
pub(crate) fn floor_quadratic(a: i128, b: i128, d: i128, c: i128) -> Result<i128> {
    // a + b√d lies strictly inside (m, m + 1) with m = a + ⌊b√d⌋, and no
    // multiple of c lies strictly inside an open unit interval.
    let m = checked(a.checked_add(floor_b_sqrt_d(b, d)?))?;
    Ok(Integer::div_floor(&m, &c))
}

impl ExactNumber {
    pub fn integer(n: i128) -> Self {
        ExactNumber::Rational { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        ExactNumber::integer(0)
    }

    pub fn rational(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(ExactNumber::Rational {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    /// `(a + b·√d) / c`, normalized; collapses to a rational when `b = 0`
    /// or `d` is a perfect square.
    pub fn surd(a: i128, b: i128, d: i128, c: i128) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroDenominator);
        }
        if d < 0 {
            return Err(Error::InvalidArgument(format!("negative radicand {d}")));
        }
        let (mut a, mut b, mut c) = if c < 0 { (-a, -b, -c) } else { (a, b, c) };
        let (k, d) = if d == 0 { (0, 1) } else { extract_square(d) };
        b = checked(b.checked_mul(k))?;
        if b == 0 || d == 1 {
            let num = checked(a.checked_add(b))?;
            return ExactNumber::rational(num, c);
        }
        let g = a.gcd(&b).gcd(&c);
        a /= g;
        b /= g;
        c /= g;
        Ok(ExactNumber::Surd { a, b, d, c })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactNumber::Rational { .. })
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, ExactNumber::Rational { den: 1, .. })
    }

    /// Radicand of a surd; `None` for rationals.
    pub fn radicand(&self) -> Option<i128> {
        match *self {
            ExactNumber::Surd { d, .. } => Some(d),
            ExactNumber::Rational { .. } => None,
        }
    }

    /// Coefficients `(a, b, c)` over the radicand `d`, so the value is
    /// `(a + b·√d) / c`. Rationals have `b = 0`.
    pub(crate) fn coefficients(&self) -> (i128, i128, i128) {
        match *self {
            ExactNumber::Rational { num, den } => (num, 0, den),
            ExactNumber::Surd { a, b, c, .. } => (a, b, c),
        }
    }

    /// Common radicand of two numbers if they can be added exactly.
    pub(crate) fn shared_radicand(&self, other: &ExactNumber) -> Result<Option<i128>> {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => Err(Error::IncompatibleRadicands(x, y)),
            (x, y) => Ok(x.or(y)),
        }
    }

    pub fn floor(&self) -> i128 {
        match *self {
            ExactNumber::Rational { num, den } => Integer::div_floor(&num, &den),
            ExactNumber::Surd { a, b, d, c } => {
                floor_quadratic(a, b, d, c).expect("normalized surd floor fits in i128")
            }
        }
    }

    pub fn checked_floor(&self) -> Result<i128> {
        match *self {
            ExactNumber::Rational { num, den } => Ok(Integer::div_floor(&num, &den)),
            ExactNumber::Surd { a, b, d, c } => floor_quadratic(a, b, d, c),
        }
    }

    pub fn add(&self, other: &ExactNumber) -> Result<ExactNumber> {
        let d = self.shared_radicand(other)?;
        let (a1, b1, c1) = self.coefficients();
        let (a2, b2, c2) = other.coefficients();
        let a = checked(a1.checked_mul(c2).and_then(|x| x.checked_add(a2.checked_mul(c1)?)))?;
        let b = checked(b1.checked_mul(c2).and_then(|x| x.checked_add(b2.checked_mul(c1)?)))?;
        let c = checked(c1.checked_mul(c2))?;
        ExactNumber::surd(a, b, d.unwrap_or(1), c)
    }

    pub fn neg(&self) -> ExactNumber {
        match *self {
            ExactNumber::Rational { num, den } => ExactNumber::Rational { num: -num, den },
            ExactNumber::Surd { a, b, d, c } => ExactNumber::Surd { a: -a, b: -b, d, c },
        }
    }

    pub fn sub(&self, other: &ExactNumber) -> Result<ExactNumber> {
        self.add(&other.neg())
    }

    pub fn mul_int(&self, k: i128) -> Result<ExactNumber> {
        let (a, b, c) = self.coefficients();
        let a = checked(a.checked_mul(k))?;
        let b = checked(b.checked_mul(k))?;
        ExactNumber::surd(a, b, self.radicand().unwrap_or(1), c)
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match *self {
            ExactNumber::Rational { num, .. } => num.signum() as i32,
            ExactNumber::Surd { a, b, d, .. } => {
                // sign(a + b√d), never zero for non-square d and b ≠ 0
                if a >= 0 && b > 0 {
                    1
                } else if a <= 0 && b < 0 {
                    -1
                } else {
                    let a2 = a.unsigned_abs().pow(2);
                    let b2d = b.unsigned_abs().pow(2) * d.unsigned_abs();
                    match (a2.cmp(&b2d), a > 0) {
                        (Ordering::Greater, true) | (Ordering::Less, false) => 1,
                        _ => -1,
                    }
                }
            }
        }
    }

    /// Exact comparison. Fails for surds over different radicands.
    pub fn cmp_exact(&self, other: &ExactNumber) -> Result<Ordering> {
        Ok(self.sub(other)?.signum().cmp(&0))
    }
}

impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExactNumber::Rational { num, den: 1 } => write!(f, "{num}"),
            ExactNumber::Rational { num, den } => write!(f, "{num}/{den}"),
            ExactNumber::Surd { a, b, d, c } => {
                let sign = if b < 0 { '-' } else { '+' };
                write!(f, "({a}{sign}{}*sqrt({d}))/{c}", b.abs())
            }
        }
    }
}

impl FromStr for ExactNumber {
    type Err = Error;

    /// Accepts `p`, `p/q`, `(a+b*sqrt(d))/c` and `(a+b*sqrt(d))` with
    /// optional signs. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NumberLiteral(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let int = |t: &str| -> Result<i128> {
            let t = t.strip_prefix('+').unwrap_or(t);
            if t.is_empty() || t.starts_with('+') {
                return Err(bad());
            }
            t.parse::<i128>().map_err(|_| bad())
        };
        if let Some(rest) = text.strip_prefix('(') {
            let mut depth = 1;
            let close = rest
                .char_indices()
                .find(|&(_, ch)| {
                    match ch {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(bad)?;
            let (body, tail) = (&rest[..close], &rest[close + 1..]);
            let c = match tail {
                "" => 1,
                t => int(t.strip_prefix('/').ok_or_else(bad)?)?,
            };
            let (head, radicand) = body.split_once("sqrt(").ok_or_else(bad)?;
            let d = int(radicand.strip_suffix(')').ok_or_else(bad)?)?;
            let head = head.strip_suffix('*').ok_or_else(bad)?;
            // "a+b" or "a-b": split at the last sign past the first character
            let split = head
                .char_indices()
                .skip(1)
                .filter(|&(_, ch)| ch == '+' || ch == '-')
                .map(|(i, _)| i)
                .last()
                .ok_or_else(bad)?;
            let a = int(&head[..split])?;
            let b = int(&head[split..])?;
            return ExactNumber::surd(a, b, d, c);
        }
        match text.split_once('/') {
            Some((p, q)) => ExactNumber::rational(int(p)?, int(q)?),
            None => Ok(ExactNumber::integer(int(&text)?)),
        }
    }
}
