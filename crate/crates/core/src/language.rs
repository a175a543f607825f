//! Factorial languages and (purely) morphic languages sampled in a length
//! window, plus the bounded / pushy analysis of D0L systems.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::reachable_from;
use crate::morphism::{LetterClass, LetterClassification, Morphism};
use crate::oracle::CounterexampleReport;
use crate::words::{collect_factors, sorted_shortlex, Alphabet, Letter, Word};

/// Default total number of letters an enumeration may materialize.
pub const DEFAULT_MAX_CELLS: usize = 50_000_000;

/// Environment variable overriding [`DEFAULT_MAX_CELLS`].
pub const MAX_CELLS_ENV: &str = "MORPHOWORD_MAX_CELLS";

/// Resource bounds for language enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Iteration depth for the erasing fallback. `None` picks
    /// `max(8, 2·|Σ|)`.
    pub depth: Option<usize>,
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            depth: None,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

impl Limits {
    /// Defaults, with `max_cells` taken from `MORPHOWORD_MAX_CELLS` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_CELLS_ENV) {
            limits.max_cells = raw.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{MAX_CELLS_ENV} must be a positive integer"))
            })?;
        }
        Ok(limits)
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn depth_for(&self, alphabet_len: usize) -> usize {
        self.depth.unwrap_or_else(|| default_depth(alphabet_len))
    }
}

pub fn default_depth(alphabet_len: usize) -> usize {
    8.max(2 * alphabet_len)
}

/// A finite sample of a language: every member of length at most
/// `length_bound` that was found. When `complete` is set the sample is
/// exactly the language restricted to that window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSample {
    words: HashSet<Word>,
    length_bound: usize,
    complete: bool,
    depth: Option<usize>,
}

impl LanguageSample {
    pub fn new(words: HashSet<Word>, length_bound: usize, complete: bool, depth: Option<usize>) -> Self {
        debug_assert!(words.iter().all(|w| w.len() <= length_bound));
        LanguageSample {
            words,
            length_bound,
            complete,
            depth,
        }
    }

    pub fn words(&self) -> &HashSet<Word> {
        &self.words
    }

    pub fn into_words(self) -> HashSet<Word> {
        self.words
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Iteration depth used by a bounded-depth fallback, if any.
    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// Members in shortlex order.
    pub fn sorted(&self) -> Vec<Word> {
        sorted_shortlex(&self.words)
    }

    /// Number of members of length exactly `n`.
    pub fn count_of_len(&self, n: usize) -> usize {
        self.words.iter().filter(|w| w.len() == n).count()
    }
}

/// Every factor of every member is a member.
pub fn is_factorial(set: &HashSet<Word>) -> bool {
    set.iter().all(|w| w.factors_upto(w.len()).iter().all(|f| set.contains(f)))
}

/// The least factorial superset.
pub fn factor_closure(set: &HashSet<Word>) -> HashSet<Word> {
    let mut out = HashSet::new();
    for w in set {
        out.extend(w.factors_upto(w.len()));
    }
    out
}

struct CellBudget {
    used: usize,
    cap: usize,
}

impl CellBudget {
    fn new(cap: usize) -> Self {
        CellBudget { used: 0, cap }
    }

    fn spend(&mut self, cells: usize) -> Result<()> {
        self.used = self.used.saturating_add(cells);
        if self.used > self.cap {
            Err(Error::SizeCap { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

fn check_axiom(f: &Morphism, axiom: &Word) -> Result<()> {
    f.require_endomorphism()?;
    if Alphabet::same(axiom.alphabet(), f.source()) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

fn to_words(alphabet: &Arc<Alphabet>, raw: HashSet<Vec<Letter>>) -> HashSet<Word> {
    raw.into_iter()
        .map(|l| Word::from_letters_unchecked(alphabet.clone(), l))
        .collect()
}

/// Least fixed point of `S ↦ S ∪ Fac≤n(axiom) ∪ ⋃_{v∈S} Fac≤n(f(v))`.
fn windowed_closure(
    f: &Morphism,
    axiom: &[Letter],
    n: usize,
    budget: &mut CellBudget,
) -> Result<HashSet<Vec<Letter>>> {
    let mut set: HashSet<Vec<Letter>> = HashSet::new();
    let mut work: Vec<Vec<Letter>> = Vec::new();
    let admit = |factor: &[Letter], set: &mut HashSet<Vec<Letter>>, work: &mut Vec<Vec<Letter>>| {
        if !set.contains(factor) {
            set.insert(factor.to_vec());
            work.push(factor.to_vec());
            factor.len().max(1)
        } else {
            0
        }
    };
    let mut spent = 0;
    collect_factors(axiom, n, |fac| spent += admit(fac, &mut set, &mut work));
    budget.spend(spent)?;
    while let Some(v) = work.pop() {
        let image = f.apply_letters(&v);
        let mut spent = image.len();
        collect_factors(&image, n, |fac| spent += admit(fac, &mut set, &mut work));
        budget.spend(spent)?;
    }
    Ok(set)
}

/// `f^0(axiom), ..., f^depth(axiom)` as raw letter vectors.
fn iterates(f: &Morphism, axiom: &[Letter], depth: usize, budget: &mut CellBudget) -> Result<Vec<Vec<Letter>>> {
    let mut out = vec![axiom.to_vec()];
    budget.spend(axiom.len())?;
    for _ in 0..depth {
        let next = f.apply_letters(out.last().expect("non-empty"));
        budget.spend(next.len())?;
        out.push(next);
    }
    Ok(out)
}

/// Members of length at most `n` of the purely morphic language of
/// `(f, axiom)`: the factor closure of `{f^k(axiom) : k ≥ 0}`.
///
/// For non-erasing `f` the result is complete. For erasing `f` it is the
/// factor closure of `f^k(axiom)` for `k ≤ depth`, flagged incomplete.
pub fn purely_morphic_language_upto(
    f: &Morphism,
    axiom: &Word,
    n: usize,
    limits: &Limits,
) -> Result<LanguageSample> {
    check_axiom(f, axiom)?;
    let mut budget = CellBudget::new(limits.max_cells);
    if !f.is_erasing() {
        let raw = windowed_closure(f, axiom.letters(), n, &mut budget)?;
        return Ok(LanguageSample::new(to_words(f.source(), raw), n, true, None));
    }
    let depth = limits.depth_for(f.source().len());
    let mut raw: HashSet<Vec<Letter>> = HashSet::new();
    for w in iterates(f, axiom.letters(), depth, &mut budget)? {
        collect_factors(&w, n, |fac| {
            if !raw.contains(fac) {
                raw.insert(fac.to_vec());
            }
        });
    }
    Ok(LanguageSample::new(to_words(f.source(), raw), n, false, Some(depth)))
}

/// Members of length at most `n` of the morphic language: the factor
/// closure of `h` applied to the purely morphic language of `(f, axiom)`.
/// Complete when both `f` and `h` are non-erasing.
pub fn morphic_language_upto(
    f: &Morphism,
    h: &Morphism,
    axiom: &Word,
    n: usize,
    limits: &Limits,
) -> Result<LanguageSample> {
    check_axiom(f, axiom)?;
    if !Alphabet::same(h.source(), f.source()) {
        return Err(Error::AlphabetMismatch);
    }
    let mut budget = CellBudget::new(limits.max_cells);
    let mut raw: HashSet<Vec<Letter>> = HashSet::new();
    let absorb = |w: &[Letter], raw: &mut HashSet<Vec<Letter>>| {
        let image = h.apply_letters(w);
        collect_factors(&image, n, |fac| {
            if !raw.contains(fac) {
                raw.insert(fac.to_vec());
            }
        });
        image.len()
    };
    if !f.is_erasing() && !h.is_erasing() {
        let inner = windowed_closure(f, axiom.letters(), n, &mut budget)?;
        for v in &inner {
            let spent = absorb(v, &mut raw);
            budget.spend(spent)?;
        }
        return Ok(LanguageSample::new(to_words(h.target(), raw), n, true, None));
    }
    let depth = limits.depth_for(f.source().len());
    for w in iterates(f, axiom.letters(), depth, &mut budget)? {
        let spent = absorb(&w, &mut raw);
        budget.spend(spent)?;
    }
    Ok(LanguageSample::new(to_words(h.target(), raw), n, false, Some(depth)))
}

/// The purely morphic language generated by `w` is finite, i.e. every
/// letter of `w` is mortal or bounded.
pub fn is_bounded_word(f: &Morphism, w: &Word) -> Result<bool> {
    check_axiom(f, w)?;
    let classes = f.classify_letters()?;
    Ok(w.letters().iter().all(|&a| classes.is_bounded(a)))
}

/// Which extremal growing occurrence a pumping cycle follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A cycle of extremal growing letters whose bounded side blocks contain an
/// immortal letter. Iterating the cycle concatenates ever more non-empty
/// bounded blocks next to the growing letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushyWitness {
    pub side: Side,
    /// Reachable growing letter the walk started from.
    pub start: Letter,
    /// Growing letters on the cycle, in walk order.
    pub cycle: Vec<Letter>,
    /// `labels[i]` is the bounded block beside `cycle[i + 1]` inside
    /// `f(cycle[i])` (cyclically).
    pub labels: Vec<Word>,
}

impl PushyWitness {
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let names: Vec<&str> = self.cycle.iter().map(|&l| alphabet.name(l)).collect();
        let labels: Vec<String> = self.labels.iter().map(|w| w.to_string()).collect();
        format!(
            "{} cycle [{}] with blocks [{}]",
            self.side,
            names.join(" -> "),
            labels.join(", ")
        )
    }
}

/// Growing letters that occur in some iterate of `axiom`.
fn reachable_growing(f: &Morphism, classes: &LetterClassification, axiom: &Word) -> Vec<Letter> {
    let n = f.source().len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut s: Vec<usize> = f.image_letters(Letter::from(a)).iter().map(|l| l.index()).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let reach = reachable_from(&succ, axiom.letters().iter().map(|l| l.index()));
    (0..n)
        .map(Letter::from)
        .filter(|&a| reach[a.index()] && classes.is_growing(a))
        .collect()
}

/// Extremal growing letter of `f(b)` on `side`, and the bounded block
/// between it and that end of the image.
fn extremal_step(f: &Morphism, classes: &LetterClassification, b: Letter, side: Side) -> (Letter, Vec<Letter>) {
    let image = f.image_letters(b);
    let pos = match side {
        Side::Left => image.iter().position(|&c| classes.is_growing(c)),
        Side::Right => image.iter().rposition(|&c| classes.is_growing(c)),
    }
    .expect("image of a growing letter contains a growing letter");
    let label = match side {
        Side::Left => image[..pos].to_vec(),
        Side::Right => image[pos + 1..].to_vec(),
    };
    (image[pos], label)
}

/// Finds a pumping cycle proving that the purely morphic language of
/// `(f, axiom)` contains arbitrarily long bounded words, or `None` when
/// bounded words are of bounded length (the axiom is not pushy).
pub fn pushy_witness(f: &Morphism, axiom: &Word) -> Result<Option<PushyWitness>> {
    check_axiom(f, axiom)?;
    let classes = f.classify_letters()?;
    let starts = reachable_growing(f, &classes, axiom);
    for side in [Side::Left, Side::Right] {
        for &start in &starts {
            let mut path: Vec<Letter> = vec![start];
            let mut labels: Vec<Vec<Letter>> = Vec::new();
            let entry = loop {
                let current = *path.last().expect("non-empty path");
                let (next, label) = extremal_step(f, &classes, current, side);
                labels.push(label);
                if let Some(i) = path.iter().position(|&l| l == next) {
                    break i;
                }
                path.push(next);
            };
            let cycle_labels = &labels[entry..];
            let pumps = cycle_labels
                .iter()
                .flatten()
                .any(|&c| classes.class(c) == LetterClass::BoundedImmortal);
            if pumps {
                return Ok(Some(PushyWitness {
                    side,
                    start,
                    cycle: path[entry..].to_vec(),
                    labels: cycle_labels
                        .iter()
                        .map(|l| Word::from_letters_unchecked(f.source().clone(), l.clone()))
                        .collect(),
                }));
            }
        }
    }
    Ok(None)
}

/// The purely morphic language of `(f, axiom)` has infinitely many bounded
/// members.
pub fn is_pushy(f: &Morphism, axiom: &Word) -> Result<bool> {
    Ok(pushy_witness(f, axiom)?.is_some())
}

/// Pushiness under `f` and under `f^(p+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCheck {
    pub base: bool,
    pub power: bool,
    pub exponent: usize,
    /// Present when the two verdicts differ.
    pub counterexample: Option<CounterexampleReport>,
}

impl PowerCheck {
    pub fn agrees(&self) -> bool {
        self.base == self.power
    }
}

/// Compares `is_pushy(f, axiom)` with `is_pushy(f^(p+1), axiom)`. The two
/// always agree over a finite alphabet; a mismatch is reported as a
/// counterexample.
pub fn pushy_power_check(f: &Morphism, axiom: &Word, p: usize) -> Result<PowerCheck> {
    let exponent = p + 1;
    let base = is_pushy(f, axiom)?;
    let power = is_pushy(&f.power(exponent)?, axiom)?;
    let counterexample = (base != power).then(|| {
        CounterexampleReport::new("pushy_power_check", f, axiom)
            .verdict("pushy(f)", base)
            .verdict(format!("pushy(f^{exponent})"), power)
            .witness(format!("verdicts differ for exponent {exponent}"))
    });
    Ok(PowerCheck {
        base,
        power,
        exponent,
        counterexample,
    })
}
