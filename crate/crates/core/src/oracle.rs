//! Brute-force oracles for differential testing of the symbolic
//! algorithms. They iterate morphisms literally and are bounded by explicit
//! caps; none of them consults the letter classification.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactNumber;
use crate::language::{is_pushy, purely_morphic_language_upto, Limits};
use crate::morphism::Morphism;
use crate::words::{collect_factors, sorted_shortlex, Alphabet, Letter, Word};

/// Verdict of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriState<W> {
    Conclusive { value: bool, witness: W },
    Inconclusive { bounds: String },
}

impl<W> TriState<W> {
    pub fn value(&self) -> Option<bool> {
        match self {
            TriState::Conclusive { value, .. } => Some(*value),
            TriState::Inconclusive { .. } => None,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        self.value().is_some()
    }
}

/// Why a letter was judged bounded or unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedWitness {
    /// `f^first(a) = f^second(a)`: the iterates cycle.
    Repeat { first: usize, second: usize },
    /// `letter` occurs in some iterate of `a`, `f^power(letter)` contains
    /// `letter` and a second occurrence of an immortal `partner`, so every
    /// `power` steps at least one more letter survives.
    Pump {
        letter: Letter,
        power: usize,
        partner: Letter,
    },
}

impl fmt::Display for BoundedWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundedWitness::Repeat { first, second } => write!(f, "f^{first}(a) = f^{second}(a)"),
            BoundedWitness::Pump {
                letter,
                power,
                partner,
            } => write!(
                f,
                "f^{power}(#{}) contains #{} and immortal #{}",
                letter.0, letter.0, partner.0
            ),
        }
    }
}

/// Evidence for or against pushiness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PushyEvidence {
    /// A bounded factor of the required length.
    LongBoundedFactor(Word),
    /// The set of bounded factors stopped changing.
    Stabilized { depth: usize, distinct: usize },
}

impl fmt::Display for PushyEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PushyEvidence::LongBoundedFactor(w) => write!(f, "bounded factor {w}"),
            PushyEvidence::Stabilized { depth, distinct } => {
                write!(f, "{distinct} bounded factors, unchanged up to depth {depth}")
            }
        }
    }
}

/// `⋃_{k ≤ depth} Fac≤maxlen(f^k(axiom))`.
pub fn brute_force_factors(
    f: &Morphism,
    axiom: &Word,
    depth: usize,
    max_len: usize,
    cap: usize,
) -> Result<HashSet<Word>> {
    f.require_endomorphism()?;
    let mut raw: HashSet<Vec<Letter>> = HashSet::new();
    let mut current = axiom.letters().to_vec();
    let mut cells = 0usize;
    for k in 0..=depth {
        if k > 0 {
            current = f.apply_letters(&current);
        }
        cells += current.len();
        if cells > cap {
            return Err(Error::SizeCap { cap });
        }
        collect_factors(&current, max_len, |fac| {
            if !raw.contains(fac) {
                raw.insert(fac.to_vec());
            }
        });
    }
    Ok(raw
        .into_iter()
        .map(|l| Word::from_letters_unchecked(f.source().clone(), l))
        .collect())
}

/// Unrolls `brute_force_factors` depth by depth until the set has not
/// changed for `stable_depths` consecutive depths. Returns the set and the
/// depth reached, or `None` if the cap is hit first.
pub fn stabilized_factors(
    f: &Morphism,
    axiom: &Word,
    max_len: usize,
    stable_depths: usize,
    cap: usize,
) -> Result<Option<(HashSet<Word>, usize)>> {
    f.require_endomorphism()?;
    let mut raw: HashSet<Vec<Letter>> = HashSet::new();
    let mut current = axiom.letters().to_vec();
    let mut unchanged = 0;
    let mut depth = 0;
    loop {
        if current.len() > cap {
            return Ok(None);
        }
        let before = raw.len();
        collect_factors(&current, max_len, |fac| {
            if !raw.contains(fac) {
                raw.insert(fac.to_vec());
            }
        });
        if depth > 0 && raw.len() == before {
            unchanged += 1;
            if unchanged >= stable_depths {
                break;
            }
        } else {
            unchanged = 0;
        }
        current = f.apply_letters(&current);
        depth += 1;
    }
    let words = raw
        .into_iter()
        .map(|l| Word::from_letters_unchecked(f.source().clone(), l))
        .collect();
    Ok(Some((words, depth)))
}

fn letter_iterates(f: &Morphism, a: Letter, iters: usize, len_cap: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![a]];
    for _ in 0..iters {
        let next = f.apply_letters(out.last().expect("non-empty"));
        if next.len() > len_cap {
            break;
        }
        out.push(next);
    }
    out
}

/// Decides whether `{f^k(a)}` is finite by direct iteration: a repeated
/// iterate proves boundedness, a pumping letter proves unboundedness.
pub fn brute_force_bounded(f: &Morphism, a: Letter, iters: usize, len_cap: usize) -> TriState<BoundedWitness> {
    // certificates only need short iterates of single letters
    const PROBE_CAP: usize = 1 << 12;
    let n = f.source().len();
    let probes: Vec<Vec<Vec<Letter>>> = (0..n)
        .map(|b| letter_iterates(f, Letter::from(b), iters, len_cap.min(PROBE_CAP)))
        .collect();
    // letters that reproduce themselves
    let selfish: Vec<bool> = (0..n)
        .map(|e| probes[e].iter().skip(1).any(|w| w.contains(&Letter::from(e))))
        .collect();
    // letters certified never to vanish: some iterate contains a selfish letter
    let immortal: Vec<bool> = (0..n)
        .map(|c| probes[c].iter().any(|w| w.iter().any(|l| selfish[l.index()])))
        .collect();
    let pump = |b: Letter| {
        probes[b.index()].iter().enumerate().skip(1).find_map(|(power, w)| {
            let first = w.iter().position(|&l| l == b)?;
            let partner = w
                .iter()
                .enumerate()
                .find(|&(i, l)| i != first && immortal[l.index()])?
                .1;
            Some(BoundedWitness::Pump {
                letter: b,
                power,
                partner: *partner,
            })
        })
    };

    let mut seen: HashMap<Vec<Letter>, usize> = HashMap::new();
    let mut tried = vec![false; n];
    let mut current = vec![a];
    let mut computed = 0;
    for k in 0..=iters {
        if k > 0 {
            current = f.apply_letters(&current);
            if current.len() > len_cap {
                break;
            }
        }
        computed += 1;
        if let Some(&j) = seen.get(&current) {
            return TriState::Conclusive {
                value: true,
                witness: BoundedWitness::Repeat { first: j, second: k },
            };
        }
        for &b in &current {
            if !tried[b.index()] {
                tried[b.index()] = true;
                if let Some(witness) = pump(b) {
                    return TriState::Conclusive { value: false, witness };
                }
            }
        }
        seen.insert(current.clone(), k);
    }
    TriState::Inconclusive {
        bounds: format!("iters={iters}, len_cap={len_cap}, computed {computed} iterates"),
    }
}

/// Searches the iterates of `axiom` for long factors made of bounded
/// letters (boundedness decided per letter by [`brute_force_bounded`]).
pub fn brute_force_pushy(
    f: &Morphism,
    axiom: &Word,
    depth: usize,
    len_target: usize,
    cap: usize,
) -> Result<TriState<PushyEvidence>> {
    const STABLE_DEPTHS: usize = 3;
    f.require_endomorphism()?;
    if !Alphabet::same(axiom.alphabet(), f.source()) {
        return Err(Error::AlphabetMismatch);
    }
    let n = f.source().len();
    let letter_iters = 4 * n + 8;
    let mut bounded = vec![false; n];
    for (b, slot) in bounded.iter_mut().enumerate() {
        match brute_force_bounded(f, Letter::from(b), letter_iters, cap).value() {
            Some(v) => *slot = v,
            None => {
                return Ok(TriState::Inconclusive {
                    bounds: format!("boundedness of letter #{b} undecided"),
                })
            }
        }
    }
    let min_depth = 2 * n + 2;
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut runs_seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut current = axiom.letters().to_vec();
    let mut unchanged = 0;
    for k in 0..=depth {
        if k > 0 {
            current = f.apply_letters(&current);
        }
        if current.len() > cap {
            return Ok(TriState::Inconclusive {
                bounds: format!("iterate {k} exceeds {cap} letters"),
            });
        }
        let before = seen.len();
        for run in current.split(|l| !bounded[l.index()]) {
            if run.len() >= len_target {
                return Ok(TriState::Conclusive {
                    value: true,
                    witness: PushyEvidence::LongBoundedFactor(Word::from_letters_unchecked(
                        f.source().clone(),
                        run[..len_target].to_vec(),
                    )),
                });
            }
            if runs_seen.insert(run.to_vec()) {
                collect_factors(run, run.len(), |fac| {
                    if !seen.contains(fac) {
                        seen.insert(fac.to_vec());
                    }
                });
            }
        }
        if k > 0 && seen.len() == before {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        if unchanged >= STABLE_DEPTHS && k >= min_depth {
            return Ok(TriState::Conclusive {
                value: false,
                witness: PushyEvidence::Stabilized {
                    depth: k,
                    distinct: seen.len(),
                },
            });
        }
    }
    Ok(TriState::Inconclusive {
        bounds: format!("depth={depth}, len_target={len_target}"),
    })
}

/// `⌊(a + b·√d) / c⌋` from a decimal expansion of `√d` to `digits` places.
/// Refuses to answer when the value is within `10^-(digits-2)` of an
/// integer.
pub fn decimal_floor_raw(a: i128, b: i128, d: i128, c: i128, digits: u32) -> Result<i128> {
    if digits < 20 {
        return Err(Error::InvalidArgument("at least 20 digits are required".into()));
    }
    if c == 0 {
        return Err(Error::ZeroDenominator);
    }
    if d < 0 {
        return Err(Error::InvalidArgument(format!("negative radicand {d}")));
    }
    let (a, b, c) = if c < 0 { (-a, -b, -c) } else { (a, b, c) };
    let scale = BigInt::from(10).pow(digits);
    // s ≤ √d·10^digits < s + 1
    let s = (BigInt::from(d) * &scale * &scale).sqrt();
    let exact_root = &s * &s == BigInt::from(d) * &scale * &scale;
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let base = &a * &scale;
    let (lo, hi) = if exact_root {
        let v = &base + &b * &s;
        (v.clone(), v)
    } else if b >= BigInt::from(0) {
        (&base + &b * &s, &base + &b * (&s + 1))
    } else {
        (&base + &b * (&s + 1), &base + &b * &s)
    };
    // widen by 10^-(digits-2) in value units, i.e. 100·c numerator units
    let margin = &c * 100;
    let denom = &c * &scale;
    let lo_floor = Integer::div_floor(&(lo - &margin), &denom);
    let hi_floor = Integer::div_floor(&(hi + &margin), &denom);
    if lo_floor != hi_floor {
        return Err(Error::NeedMoreDigits { digits });
    }
    i128::try_from(&lo_floor).map_err(|_| Error::Overflow)
}

/// Decimal-expansion floor of an [`ExactNumber`].
pub fn decimal_floor_oracle(x: &ExactNumber, digits: u32) -> Result<i128> {
    match *x {
        ExactNumber::Rational { num, den } => {
            if digits < 20 {
                return Err(Error::InvalidArgument("at least 20 digits are required".into()));
            }
            Ok(Integer::div_floor(&num, &den))
        }
        ExactNumber::Surd { a, b, d, c } => decimal_floor_raw(a, b, d, c, digits),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub value: String,
}

/// Structured record of a disagreement: the morphism, the axiom, the
/// verdicts that differ and the witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub check: String,
    pub morphism: String,
    pub axiom: String,
    pub verdicts: Vec<Verdict>,
    pub witness: String,
}

impl CounterexampleReport {
    pub fn new(check: impl Into<String>, f: &Morphism, axiom: &Word) -> Self {
        CounterexampleReport {
            check: check.into(),
            morphism: f.to_inline(),
            axiom: axiom.to_string(),
            verdicts: Vec::new(),
            witness: String::new(),
        }
    }

    pub fn verdict(mut self, name: impl Into<String>, value: impl fmt::Display) -> Self {
        self.verdicts.push(Verdict {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = witness.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample ({})", self.check)?;
        writeln!(f, "  morphism: {}", self.morphism)?;
        writeln!(f, "  axiom: {}", self.axiom)?;
        for v in &self.verdicts {
            writeln!(f, "  {}: {}", v.name, v.value)?;
        }
        write!(f, "  witness: {}", self.witness)
    }
}

/// Bounds for the differential checks below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub iters: usize,
    pub len_cap: usize,
    pub depth: usize,
    pub len_target: usize,
    pub stable_depths: usize,
    pub cap: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            iters: 24,
            len_cap: 100_000,
            depth: 40,
            len_target: 12,
            stable_depths: 3,
            cap: 2_000_000,
        }
    }
}

/// Outcome of one differential check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossCheck {
    Agree,
    Inconclusive,
    Disagree(Box<CounterexampleReport>),
}

/// Letter classification against [`brute_force_bounded`], letter by
/// letter. Returns one outcome per letter.
pub fn verify_classification(f: &Morphism, bounds: &OracleBounds) -> Result<Vec<CrossCheck>> {
    let classes = f.classify_letters()?;
    Ok(f.source()
        .letters()
        .map(|a| match brute_force_bounded(f, a, bounds.iters, bounds.len_cap) {
            TriState::Inconclusive { .. } => CrossCheck::Inconclusive,
            TriState::Conclusive { value, witness } => {
                if value == classes.is_bounded(a) {
                    CrossCheck::Agree
                } else {
                    let letter = Word::from_letters_unchecked(f.source().clone(), vec![a]);
                    CrossCheck::Disagree(Box::new(
                        CounterexampleReport::new("classify_letters", f, &letter)
                            .verdict("symbolic", classes.class(a))
                            .verdict("oracle bounded", value)
                            .witness(witness.to_string()),
                    ))
                }
            }
        })
        .collect())
}

/// [`is_pushy`] against [`brute_force_pushy`].
pub fn verify_pushy(f: &Morphism, axiom: &Word, bounds: &OracleBounds) -> Result<CrossCheck> {
    let symbolic = is_pushy(f, axiom)?;
    Ok(match brute_force_pushy(f, axiom, bounds.depth, bounds.len_target, bounds.cap)? {
        TriState::Inconclusive { .. } => CrossCheck::Inconclusive,
        TriState::Conclusive { value, .. } if value == symbolic => CrossCheck::Agree,
        TriState::Conclusive { value, witness } => CrossCheck::Disagree(Box::new(
            CounterexampleReport::new("is_pushy", f, axiom)
                .verdict("symbolic", symbolic)
                .verdict("oracle", value)
                .witness(witness.to_string()),
        )),
    })
}

/// Complete windowed enumeration against the depth-stabilized unrolling.
/// Erasing morphisms yield [`CrossCheck::Inconclusive`].
pub fn verify_language(f: &Morphism, axiom: &Word, n: usize, bounds: &OracleBounds) -> Result<CrossCheck> {
    let sample = purely_morphic_language_upto(f, axiom, n, &Limits::default())?;
    if !sample.is_complete() {
        return Ok(CrossCheck::Inconclusive);
    }
    let Some((oracle, depth)) = stabilized_factors(f, axiom, n, bounds.stable_depths, bounds.cap)? else {
        return Ok(CrossCheck::Inconclusive);
    };
    if &oracle == sample.words() {
        return Ok(CrossCheck::Agree);
    }
    let missing: Vec<String> = sorted_shortlex(oracle.difference(sample.words()))
        .iter()
        .map(Word::to_string)
        .collect();
    let extra: Vec<String> = sorted_shortlex(sample.words().difference(&oracle))
        .iter()
        .map(Word::to_string)
        .collect();
    Ok(CrossCheck::Disagree(Box::new(
        CounterexampleReport::new("purely_morphic_language_upto", f, axiom)
            .verdict("window", n)
            .verdict("symbolic size", sample.len())
            .verdict("oracle size", oracle.len())
            .witness(format!(
                "oracle depth {depth}; only in oracle: [{}]; only in symbolic: [{}]",
                missing.join(", "),
                extra.join(", ")
            )),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(f: &Morphism, s: &str) -> Word {
        f.source().parse_word(s).unwrap()
    }

    #[test]
    fn factors_examples() {
        let tm = Morphism::parse("0 -> 0 1; 1 -> 1 0").unwrap();
        let got = brute_force_factors(&tm, &word(&tm, "0"), 4, 2, 1 << 20).unwrap();
        assert_eq!(got.len(), 7);

        let f = Morphism::parse("a -> a b; b -> b a").unwrap();
        let got = brute_force_factors(&f, &word(&f, "aab"), 0, 9, 1 << 20).unwrap();
        assert_eq!(got, word(&f, "aab").factors_upto(9));

        let dead = Morphism::parse("a -> eps").unwrap();
        let got = brute_force_factors(&dead, &word(&dead, "a"), 3, 3, 1 << 20).unwrap();
        assert_eq!(got, HashSet::from([word(&dead, ""), word(&dead, "a")]));

        assert_eq!(
            brute_force_factors(&tm, &word(&tm, "0"), 30, 2, 1000),
            Err(Error::SizeCap { cap: 1000 })
        );
    }

    #[test]
    fn factors_monotone_in_depth() {
        let f = Morphism::parse("a -> a b; b -> a").unwrap();
        let mut prev = HashSet::new();
        for depth in 0..8 {
            let cur = brute_force_factors(&f, &word(&f, "a"), depth, 4, 1 << 20).unwrap();
            assert!(prev.is_subset(&cur));
            prev = cur;
        }
    }

    #[test]
    fn bounded_examples() {
        let swap = Morphism::parse("a -> b; b -> a").unwrap();
        assert_eq!(
            brute_force_bounded(&swap, Letter(0), 10, 100),
            TriState::Conclusive {
                value: true,
                witness: BoundedWitness::Repeat { first: 0, second: 2 }
            }
        );
        let dbl = Morphism::parse("a -> a a").unwrap();
        assert_eq!(brute_force_bounded(&dbl, Letter(0), 10, 100).value(), Some(false));

        let er = Morphism::parse("a -> a b; b -> eps").unwrap();
        assert!(!brute_force_bounded(&er, Letter(0), 1, 100).is_conclusive());
        assert_eq!(brute_force_bounded(&er, Letter(0), 2, 100).value(), Some(true));

        // a -> bb -> aa -> bbbb ...
        let f = Morphism::parse("a -> b b; b -> a").unwrap();
        assert!(matches!(
            brute_force_bounded(&f, Letter(0), 10, 100),
            TriState::Conclusive {
                value: false,
                witness: BoundedWitness::Pump { power: 2, .. }
            }
        ));
        assert_eq!(brute_force_bounded(&f, Letter(1), 10, 100).value(), Some(false));

        let lin = Morphism::parse("a -> a b; b -> b").unwrap();
        assert_eq!(brute_force_bounded(&lin, Letter(0), 10, 100).value(), Some(false));
        assert_eq!(brute_force_bounded(&lin, Letter(1), 10, 100).value(), Some(true));
    }

    #[test]
    fn pushy_examples() {
        let f = Morphism::parse("a -> a b b; b -> b").unwrap();
        match brute_force_pushy(&f, &word(&f, "a"), 20, 6, 1 << 20).unwrap() {
            TriState::Conclusive {
                value: true,
                witness: PushyEvidence::LongBoundedFactor(w),
            } => assert_eq!(w.to_string(), "bbbbbb"),
            other => panic!("{other:?}"),
        }

        let g = Morphism::parse("a -> a a").unwrap();
        assert_eq!(brute_force_pushy(&g, &word(&g, "a"), 20, 6, 1 << 20).unwrap().value(), Some(false));

        let h = Morphism::parse("a -> a b a; b -> b").unwrap();
        match brute_force_pushy(&h, &word(&h, "a"), 20, 6, 1 << 20).unwrap() {
            TriState::Conclusive {
                value: false,
                witness: PushyEvidence::Stabilized { distinct, .. },
            } => assert_eq!(distinct, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decimal_floor_examples() {
        let x: ExactNumber = "(3-1*sqrt(5))/2".parse().unwrap();
        assert_eq!(decimal_floor_oracle(&x, 50).unwrap(), 0);
        assert_eq!(decimal_floor_oracle(&"7/2".parse().unwrap(), 50).unwrap(), 3);
        assert_eq!(decimal_floor_oracle(&"(0+1*sqrt(5))/1".parse().unwrap(), 50).unwrap(), 2);
        assert!(decimal_floor_oracle(&x, 10).is_err());
        // √(10^40 + 1) - 10^20 ≈ 5·10^-21: too close to 0 for 20 digits
        assert_eq!(
            decimal_floor_raw(-100_000_000_000_000_000_000, 1, 100_000_000_000_000_000_000_000_000_000_000_000_001, 1, 20),
            Err(Error::NeedMoreDigits { digits: 20 })
        );
    }

    #[test]
    fn report_renders() {
        let f = Morphism::parse("a -> a b; b -> b").unwrap();
        let r = CounterexampleReport::new("demo", &f, &word(&f, "a"))
            .verdict("x", true)
            .witness("w");
        assert_eq!(
            r.to_json(),
            r#"{"check":"demo","morphism":"a -> a b; b -> b","axiom":"a","verdicts":[{"name":"x","value":"true"}],"witness":"w"}"#
        );
        assert!(r.to_string().contains("morphism: a -> a b; b -> b"));
    }
}
