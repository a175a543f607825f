//! Lazily forced, memoized infinite words.
//!
//! An [`InfiniteWord`] owns a generator and a growable buffer of forced
//! letters. Forcing takes `&mut self`; the already-forced prefix can be
//! read through `&self` via [`InfiniteWord::forced`].

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::language::{purely_morphic_language_upto, LanguageSample, Limits};
use crate::morphism::Morphism;
use crate::words::{collect_factors, contains_factor, Alphabet, Letter, Word};

/// Default number of consecutive empty images a morphic image may scan
/// before giving up.
pub const DEFAULT_FUEL: usize = 1_000_000;

type LetterFn = Arc<dyn Fn(usize) -> Letter + Send + Sync>;

#[derive(Clone)]
enum Generator {
    Function(LetterFn),
    Cycle(Vec<Letter>),
    Prepend {
        prefix: Vec<Letter>,
        tail: Box<InfiniteWord>,
    },
    Drop {
        offset: usize,
        inner: Box<InfiniteWord>,
    },
    MorphImage {
        morphism: Morphism,
        source: Box<InfiniteWord>,
        fuel: usize,
        cursor: usize,
    },
    /// The buffer itself is the source: letters are appended as images of
    /// already-forced letters, starting after the first.
    FixedPoint {
        morphism: Morphism,
        start: Letter,
        cursor: usize,
    },
}

/// What an infinite word was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamKind {
    Function,
    Cycle(Word),
    Prepend,
    Drop,
    MorphImage,
    FixedPoint { morphism: Morphism, start: Letter },
}

#[derive(Clone)]
pub struct InfiniteWord {
    alphabet: Arc<Alphabet>,
    generator: Generator,
    memo: Vec<Letter>,
}

impl fmt::Debug for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InfiniteWord")
            .field("kind", &self.kind())
            .field("forced", &self.memo.len())
            .finish()
    }
}

impl InfiniteWord {
    /// The word whose `i`-th letter is `g(i)`.
    pub fn from_function<F>(alphabet: &Arc<Alphabet>, g: F) -> InfiniteWord
    where
        F: Fn(usize) -> Letter + Send + Sync + 'static,
    {
        InfiniteWord {
            alphabet: alphabet.clone(),
            generator: Generator::Function(Arc::new(g)),
            memo: Vec::new(),
        }
    }

    /// `u u u ...` for non-empty `u`.
    pub fn cycle(u: &Word) -> Result<InfiniteWord> {
        if u.is_empty() {
            return Err(Error::EmptyWord("cycle"));
        }
        Ok(InfiniteWord {
            alphabet: u.alphabet().clone(),
            generator: Generator::Cycle(u.letters().to_vec()),
            memo: Vec::new(),
        })
    }

    /// `p · uu`.
    pub fn prepend(p: &Word, uu: InfiniteWord) -> Result<InfiniteWord> {
        if !Alphabet::same(p.alphabet(), &uu.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        if p.is_empty() {
            return Ok(uu);
        }
        Ok(InfiniteWord {
            alphabet: uu.alphabet.clone(),
            generator: Generator::Prepend {
                prefix: p.letters().to_vec(),
                tail: Box::new(uu),
            },
            memo: Vec::new(),
        })
    }

    /// The suffix starting at position `n`.
    pub fn drop_prefix(self, n: usize) -> InfiniteWord {
        if n == 0 {
            return self;
        }
        InfiniteWord {
            alphabet: self.alphabet.clone(),
            generator: Generator::Drop {
                offset: n,
                inner: Box::new(self),
            },
            memo: Vec::new(),
        }
    }

    /// `f(u₀) f(u₁) f(u₂) ...`, skipping empty images. Forcing fails once
    /// `fuel` consecutive source letters produce no output.
    pub fn morph_image(f: &Morphism, uu: InfiniteWord, fuel: usize) -> Result<InfiniteWord> {
        if !Alphabet::same(f.source(), &uu.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        if fuel == 0 {
            return Err(Error::InvalidArgument("fuel must be positive".into()));
        }
        Ok(InfiniteWord {
            alphabet: f.target().clone(),
            generator: Generator::MorphImage {
                morphism: f.clone(),
                source: Box::new(uu),
                fuel,
                cursor: 0,
            },
            memo: Vec::new(),
        })
    }

    /// The fixed point of `f` starting with `a`; requires `f` prolongable
    /// on `a`.
    pub fn fixed_point(f: &Morphism, a: Letter) -> Result<InfiniteWord> {
        if !f.is_prolongable(a) {
            let name = if f.source().contains(a) {
                f.source().name(a).to_string()
            } else {
                format!("#{}", a.0)
            };
            return Err(Error::NotProlongable(name));
        }
        Ok(InfiniteWord {
            alphabet: f.source().clone(),
            memo: f.image_letters(a).to_vec(),
            generator: Generator::FixedPoint {
                morphism: f.clone(),
                start: a,
                cursor: 1,
            },
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn kind(&self) -> StreamKind {
        match &self.generator {
            Generator::Function(_) => StreamKind::Function,
            Generator::Cycle(u) => {
                StreamKind::Cycle(Word::from_letters_unchecked(self.alphabet.clone(), u.clone()))
            }
            Generator::Prepend { .. } => StreamKind::Prepend,
            Generator::Drop { .. } => StreamKind::Drop,
            Generator::MorphImage { .. } => StreamKind::MorphImage,
            Generator::FixedPoint { morphism, start, .. } => StreamKind::FixedPoint {
                morphism: morphism.clone(),
                start: *start,
            },
        }
    }

    /// Letters forced so far.
    pub fn forced(&self) -> &[Letter] {
        &self.memo
    }

    fn force(&mut self, n: usize) -> Result<()> {
        if self.memo.len() >= n {
            return Ok(());
        }
        let size = self.alphabet.len();
        let check = |l: Letter| {
            if l.index() < size {
                Ok(l)
            } else {
                Err(Error::LetterOutOfRange { id: l.0, size })
            }
        };
        match &mut self.generator {
            Generator::Function(g) => {
                for i in self.memo.len()..n {
                    self.memo.push(check(g(i))?);
                }
            }
            Generator::Cycle(u) => {
                for i in self.memo.len()..n {
                    self.memo.push(u[i % u.len()]);
                }
            }
            Generator::Prepend { prefix, tail } => {
                for i in self.memo.len()..n {
                    let l = match prefix.get(i) {
                        Some(&l) => l,
                        None => tail.at(i - prefix.len())?,
                    };
                    self.memo.push(l);
                }
            }
            Generator::Drop { offset, inner } => {
                inner.force(*offset + n)?;
                let start = *offset + self.memo.len();
                self.memo.extend_from_slice(&inner.memo[start..*offset + n]);
            }
            Generator::MorphImage {
                morphism,
                source,
                fuel,
                cursor,
            } => {
                let mut idle = 0;
                while self.memo.len() < n {
                    let l = source.at(*cursor)?;
                    *cursor += 1;
                    let image = morphism.image_letters(l);
                    if image.is_empty() {
                        idle += 1;
                        if idle >= *fuel {
                            return Err(Error::FuelExhausted { budget: *fuel });
                        }
                    } else {
                        idle = 0;
                        self.memo.extend_from_slice(image);
                    }
                }
            }
            Generator::FixedPoint {
                morphism, cursor, ..
            } => {
                while self.memo.len() < n {
                    // Prolongability guarantees the buffer stays ahead of
                    // the cursor.
                    let l = self.memo[*cursor];
                    *cursor += 1;
                    let image = morphism.image_letters(l).to_vec();
                    self.memo.extend_from_slice(&image);
                }
            }
        }
        Ok(())
    }

    /// The letter at position `i`.
    pub fn at(&mut self, i: usize) -> Result<Letter> {
        self.force(i + 1)?;
        Ok(self.memo[i])
    }

    /// The prefix of length `n`.
    pub fn take(&mut self, n: usize) -> Result<Word> {
        self.force(n)?;
        Ok(Word::from_letters_unchecked(
            self.alphabet.clone(),
            self.memo[..n].to_vec(),
        ))
    }

    /// The first `n` letters as a slice.
    pub fn prefix(&mut self, n: usize) -> Result<&[Letter]> {
        self.force(n)?;
        Ok(&self.memo[..n])
    }

    /// `p` is a prefix of this word.
    pub fn has_prefix(&mut self, p: &Word) -> Result<bool> {
        if !Alphabet::same(p.alphabet(), &self.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.prefix(p.len())? == p.letters())
    }

    /// `w` occurs within the first `window` letters. `false` only means it
    /// was not seen there.
    pub fn occurs_in_prefix(&mut self, w: &Word, window: usize) -> Result<bool> {
        if !Alphabet::same(w.alphabet(), &self.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        if window < w.len() {
            return Err(Error::InvalidArgument(format!(
                "window {window} shorter than the word ({})",
                w.len()
            )));
        }
        Ok(contains_factor(self.prefix(window)?, w.letters()))
    }

    /// Factors of length at most `n` of the first `window` letters. The
    /// sample is certified complete for `Cycle(u)` when
    /// `window ≥ 2|u| + n`, and for fixed points of non-erasing morphisms
    /// when it coincides with the purely morphic language of the first
    /// letter.
    pub fn word_language_upto(&mut self, n: usize, window: usize) -> Result<LanguageSample> {
        if window < n {
            return Err(Error::InvalidArgument(format!(
                "window {window} shorter than factor length {n}"
            )));
        }
        let alphabet = self.alphabet.clone();
        let mut raw: HashSet<&[Letter]> = HashSet::new();
        collect_factors(self.prefix(window)?, n, |f| {
            raw.insert(f);
        });
        let words: HashSet<Word> = raw
            .into_iter()
            .map(|f| Word::from_letters_unchecked(alphabet.clone(), f.to_vec()))
            .collect();
        let complete = match &self.generator {
            Generator::Cycle(u) => window >= 2 * u.len() + n,
            Generator::FixedPoint { morphism, start, .. } => {
                let axiom = Word::from_letters_unchecked(self.alphabet.clone(), vec![*start]);
                let reference = purely_morphic_language_upto(morphism, &axiom, n, &Limits::default())?;
                reference.is_complete() && reference.words() == &words
            }
            _ => false,
        };
        Ok(LanguageSample::new(words, n, complete, None))
    }

    /// Number of distinct length-`n` factors seen in the first `window`
    /// letters.
    pub fn factor_complexity(&mut self, n: usize, window: usize) -> Result<Complexity> {
        let sample = self.word_language_upto(n, window)?;
        Ok(Complexity {
            count: sample.count_of_len(n),
            exact: sample.is_complete(),
        })
    }

    /// Smallest `(preperiod, period)` with `period ≤ max_period` such that
    /// the first `window` letters are periodic from `preperiod` on. The
    /// preperiod is at most `window / 2` and at least two full periods must
    /// fit after it.
    pub fn detect_periodicity(&mut self, max_period: usize, window: usize) -> Result<PeriodicityReport> {
        if max_period == 0 || window < 2 * max_period {
            return Err(Error::InvalidArgument(format!(
                "need 0 < max_period and window ≥ 2·max_period (got {max_period}, {window})"
            )));
        }
        Ok(periodicity_of_prefix(self.prefix(window)?, max_period))
    }
}

/// Periodicity search on a finite prefix; see
/// [`InfiniteWord::detect_periodicity`].
pub fn periodicity_of_prefix(x: &[Letter], max_period: usize) -> PeriodicityReport {
    let window = x.len();
    let mut best: Option<(usize, usize)> = None;
    for period in 1..=max_period.min(window) {
        // smallest start from which x[i] == x[i + period] holds to the end
        let preperiod = (0..window - period)
            .rev()
            .find(|&i| x[i] != x[i + period])
            .map_or(0, |i| i + 1);
        if preperiod > window / 2 || window - preperiod < 2 * period {
            continue;
        }
        if best.is_none_or(|b| (preperiod, period) < b) {
            best = Some((preperiod, period));
        }
    }
    let status = match best {
        Some((0, period)) => Periodicity::PurelyPeriodic { period },
        Some((preperiod, period)) => Periodicity::EventuallyPeriodic { preperiod, period },
        None => Periodicity::NoPeriodFound { max_period, window },
    };
    PeriodicityReport { status }
}

/// Factor count with a flag telling whether the underlying sample was
/// complete (exact) or only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Complexity {
    pub count: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Periodicity {
    PurelyPeriodic { period: usize },
    EventuallyPeriodic { preperiod: usize, period: usize },
    /// No period up to `max_period` in the searched prefix. Evidence only.
    NoPeriodFound { max_period: usize, window: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub status: Periodicity,
}

impl PeriodicityReport {
    pub fn period(&self) -> Option<usize> {
        match self.status {
            Periodicity::PurelyPeriodic { period } | Periodicity::EventuallyPeriodic { period, .. } => {
                Some(period)
            }
            Periodicity::NoPeriodFound { .. } => None,
        }
    }

    pub fn is_purely_periodic(&self) -> bool {
        matches!(self.status, Periodicity::PurelyPeriodic { .. })
    }
}

impl fmt::Display for PeriodicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Periodicity::PurelyPeriodic { period } => write!(f, "PurelyPeriodic({period})"),
            Periodicity::EventuallyPeriodic { preperiod, period } => {
                write!(f, "EventuallyPeriodic({preperiod}, {period})")
            }
            Periodicity::NoPeriodFound { max_period, window } => {
                write!(f, "NoPeriodFound(max_period={max_period}, window={window})")
            }
        }
    }
}
