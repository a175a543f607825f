//! Lower mechanical words `s(n) = ⌊(n+1)α + β⌋ − ⌊nα + β⌋` with exact
//! rational or quadratic-surd parameters.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{floor_quadratic, ExactNumber};
use crate::stream::{periodicity_of_prefix, InfiniteWord, PeriodicityReport};
use crate::words::{Alphabet, Letter};

/// `⌊x⌋`, exactly.
pub fn exact_floor(x: &ExactNumber) -> i128 {
    x.floor()
}

/// Slope and intercept of a lower mechanical word. Both must be rational
/// or share one radicand so that `nα + β` stays a quadratic surd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MechanicalWordSpec {
    alpha: ExactNumber,
    beta: ExactNumber,
    // nα + β = (n·a1·c2 + a2·c1 + (n·b1·c2 + b2·c1)·√d) / (c1·c2)
    d: i128,
    a_step: i128,
    a_base: i128,
    b_step: i128,
    b_base: i128,
    den: i128,
}

impl MechanicalWordSpec {
    pub fn new(alpha: ExactNumber, beta: ExactNumber) -> Result<Self> {
        let d = alpha.shared_radicand(&beta)?.unwrap_or(1);
        let (a1, b1, c1) = alpha.coefficients();
        let (a2, b2, c2) = beta.coefficients();
        let mul = |x: i128, y: i128| x.checked_mul(y).ok_or(Error::Overflow);
        Ok(MechanicalWordSpec {
            alpha,
            beta,
            d,
            a_step: mul(a1, c2)?,
            a_base: mul(a2, c1)?,
            b_step: mul(b1, c2)?,
            b_base: mul(b2, c1)?,
            den: mul(c1, c2)?,
        })
    }

    pub fn alpha(&self) -> ExactNumber {
        self.alpha
    }

    pub fn beta(&self) -> ExactNumber {
        self.beta
    }

    /// `⌊nα + β⌋`.
    pub fn floor_at(&self, n: u64) -> Result<i128> {
        let n = n as i128;
        let lin = |step: i128, base: i128| {
            step.checked_mul(n)
                .and_then(|x| x.checked_add(base))
                .ok_or(Error::Overflow)
        };
        floor_quadratic(lin(self.a_step, self.a_base)?, lin(self.b_step, self.b_base)?, self.d, self.den)
    }

    /// The `n`-th letter `⌊(n+1)α + β⌋ − ⌊nα + β⌋`.
    pub fn letter(&self, n: u64) -> Result<i128> {
        Ok(self.floor_at(n + 1)? - self.floor_at(n)?)
    }

    /// Smallest letter value: `⌊α⌋`.
    pub fn min_letter(&self) -> i128 {
        self.alpha.floor()
    }

    /// Letter values the word can take: `{α}` for integer `α`, otherwise
    /// `{⌊α⌋, ⌊α⌋ + 1}`.
    pub fn letter_values(&self) -> Vec<i128> {
        let lo = self.min_letter();
        if self.alpha.is_integer() {
            vec![lo]
        } else {
            vec![lo, lo + 1]
        }
    }

    /// Alphabet whose letter names are the decimal letter values; letter id
    /// `k` stands for the value `⌊α⌋ + k`.
    pub fn alphabet(&self) -> Arc<Alphabet> {
        Alphabet::new(self.letter_values().iter().map(i128::to_string)).expect("distinct letter values")
    }

    /// The infinite word, letter ids offset by `⌊α⌋`.
    pub fn to_stream(&self) -> InfiniteWord {
        let mech = *self;
        let lo = self.min_letter();
        InfiniteWord::from_function(&self.alphabet(), move |i| {
            let v = mech.letter(i as u64).expect("mechanical letter overflow");
            Letter::from((v - lo) as usize)
        })
    }
}

/// `⌊(n+1)α + β⌋ − ⌊nα + β⌋`.
pub fn lower_mechanical_letter(alpha: &ExactNumber, beta: &ExactNumber, n: u64) -> Result<i128> {
    MechanicalWordSpec::new(*alpha, *beta)?.letter(n)
}

/// The lower mechanical word with slope `alpha` and intercept `beta`.
pub fn lower_mechanical_word(alpha: &ExactNumber, beta: &ExactNumber) -> Result<InfiniteWord> {
    Ok(MechanicalWordSpec::new(*alpha, *beta)?.to_stream())
}

fn mechanical_prefix(mech: &MechanicalWordSpec, window: usize) -> Result<Vec<Letter>> {
    let lo = mech.min_letter();
    (0..window as u64)
        .map(|i| Ok(Letter::from((mech.letter(i)? - lo) as usize)))
        .collect()
}

/// Periodicity scan for a rational slope `p/q` over at least `4q` letters
/// with periods up to `q`. A rational slope always yields a purely
/// periodic word whose period divides `q`.
pub fn rational_periodicity_check(
    alpha: &ExactNumber,
    beta: &ExactNumber,
    window: Option<usize>,
) -> Result<PeriodicityReport> {
    let q = match *alpha {
        ExactNumber::Rational { den, .. } => den as usize,
        ExactNumber::Surd { .. } => return Err(Error::NotRational(alpha.to_string())),
    };
    let mech = MechanicalWordSpec::new(*alpha, *beta)?;
    let window = window.unwrap_or(0).max(4 * q);
    Ok(periodicity_of_prefix(&mechanical_prefix(&mech, window)?, q))
}

/// Periodicity scan for an irrational slope; expected to find nothing.
pub fn aperiodicity_evidence(
    alpha: &ExactNumber,
    beta: &ExactNumber,
    max_period: usize,
    window: usize,
) -> Result<PeriodicityReport> {
    if alpha.is_rational() {
        return Err(Error::NotIrrational(alpha.to_string()));
    }
    if max_period == 0 || window < 2 * max_period {
        return Err(Error::InvalidArgument(format!(
            "need 0 < max_period and window ≥ 2·max_period (got {max_period}, {window})"
        )));
    }
    let mech = MechanicalWordSpec::new(*alpha, *beta)?;
    Ok(periodicity_of_prefix(&mechanical_prefix(&mech, window)?, max_period))
}
