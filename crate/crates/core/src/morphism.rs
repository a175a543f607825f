//! Morphisms between word monoids and the growth classification of letters.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{reaches_any, strongly_connected_components};
use crate::words::{Alphabet, Letter, Word};

/// A total map from source letters to target words, extended
/// concatenatively to words.
#[derive(Clone)]
pub struct Morphism {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<Vec<Letter>>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({})", self.to_inline())
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        Alphabet::same(&self.source, &other.source)
            && Alphabet::same(&self.target, &other.target)
            && self.images == other.images
    }
}

impl Eq for Morphism {}

impl Morphism {
    /// Builds a morphism from one image per source letter, in id order.
    pub fn new(source: &Arc<Alphabet>, target: &Arc<Alphabet>, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} images, got {}",
                source.len(),
                images.len()
            )));
        }
        let images = images
            .into_iter()
            .map(|w| {
                if Alphabet::same(w.alphabet(), target) {
                    Ok(w.into_letters())
                } else {
                    Err(Error::AlphabetMismatch)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn endomorphism(alphabet: &Arc<Alphabet>, images: Vec<Word>) -> Result<Self> {
        Morphism::new(alphabet, alphabet, images)
    }

    /// Endomorphism from raw letter-id images. Panics on out-of-range ids.
    pub fn from_raw(alphabet: &Arc<Alphabet>, images: Vec<Vec<Letter>>) -> Self {
        assert_eq!(images.len(), alphabet.len());
        assert!(images.iter().flatten().all(|l| alphabet.contains(*l)));
        Morphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images,
        }
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Morphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images: alphabet.letters().map(|l| vec![l]).collect(),
        }
    }

    /// Parses the rule format: one `name -> token token ...` rule per line
    /// (or per `;`-separated segment), `eps` for an empty image, `#`
    /// comments. The alphabet is every name that appears, in order of first
    /// appearance, and each name needs exactly one rule.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
            *seen.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        let mut first_line: Vec<usize> = Vec::new();
        let mut rules: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        let segments = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| line.split(';').map(move |seg| (i + 1, seg)));
        for (line, segment) in segments {
            let segment = segment.split('#').next().unwrap_or("").trim();
            if segment.is_empty() {
                continue;
            }
            let (lhs, rhs) = segment.split_once("->").ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `name -> image`, got `{segment}`"),
            })?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(Error::Parse {
                    line,
                    message: format!("left-hand side must be a single letter name, got `{lhs}`"),
                });
            }
            let head = intern(lhs, &mut names);
            let mut image = Vec::new();
            let tokens: Vec<&str> = rhs.split_whitespace().collect();
            if !(tokens.len() == 1 && (tokens[0] == "eps" || tokens[0] == "ε")) {
                for token in tokens {
                    if token == "eps" || token == "ε" {
                        return Err(Error::Parse {
                            line,
                            message: "`eps` must be the whole right-hand side".into(),
                        });
                    }
                    image.push(intern(token, &mut names));
                }
            }
            first_line.resize(names.len(), line);
            rules.push((line, head, image));
        }
        if names.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "no rules".into(),
            });
        }
        let mut images: Vec<Option<Vec<Letter>>> = vec![None; names.len()];
        for (line, head, image) in rules {
            if images[head].is_some() {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate rule for `{}`", names[head]),
                });
            }
            images[head] = Some(image.into_iter().map(Letter::from).collect());
        }
        if let Some(i) = images.iter().position(Option::is_none) {
            return Err(Error::Parse {
                line: first_line[i],
                message: format!("no rule for letter `{}`", names[i]),
            });
        }
        let alphabet = Alphabet::new(names)?;
        Ok(Morphism {
            source: alphabet.clone(),
            target: alphabet,
            images: images.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Rule-format text, one rule per line.
    pub fn to_rules(&self) -> String {
        self.rule_lines().join("\n") + "\n"
    }

    /// Single-line rule format with `;` separators.
    pub fn to_inline(&self) -> String {
        self.rule_lines().join("; ")
    }

    fn rule_lines(&self) -> Vec<String> {
        self.source
            .letters()
            .map(|a| {
                let image = &self.images[a.index()];
                let rhs = if image.is_empty() {
                    "eps".to_string()
                } else {
                    image
                        .iter()
                        .map(|&l| self.target.name(l))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!("{} -> {}", self.source.name(a), rhs)
            })
            .collect()
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn is_endomorphism(&self) -> bool {
        Alphabet::same(&self.source, &self.target)
    }

    pub(crate) fn require_endomorphism(&self) -> Result<()> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(Error::NotEndomorphism)
        }
    }

    /// True when some letter has an empty image.
    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(Vec::is_empty)
    }

    pub fn image_letters(&self, a: Letter) -> &[Letter] {
        &self.images[a.index()]
    }

    pub fn image(&self, a: Letter) -> Word {
        Word::from_letters_unchecked(self.target.clone(), self.images[a.index()].clone())
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if !Alphabet::same(w.alphabet(), &self.source) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Word::from_letters_unchecked(
            self.target.clone(),
            self.apply_letters(w.letters()),
        ))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() * self.max_image_len().max(1));
        for &l in letters {
            out.extend_from_slice(&self.images[l.index()]);
        }
        out
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if !Alphabet::same(&inner.target, &self.source) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|w| self.apply_letters(w)).collect(),
        })
    }

    /// The `k`-th iterate; `power(0)` is the identity.
    pub fn power(&self, k: usize) -> Result<Morphism> {
        self.require_endomorphism()?;
        let mut acc = Morphism::identity(&self.source);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut m = IncidenceMatrix::zeros(self.target.len(), self.source.len());
        for (a, image) in self.images.iter().enumerate() {
            for b in image {
                m.entries[b.index() * m.cols + a] += 1;
            }
        }
        m
    }

    /// Classifies every letter as mortal, bounded-immortal or growing.
    pub fn classify_letters(&self) -> Result<LetterClassification> {
        self.require_endomorphism()?;
        let n = self.source.len();

        // Mortal letters: least fixed point of "every image letter is mortal".
        let mut mortal = vec![false; n];
        let mut rounds = 0;
        loop {
            let next: Vec<bool> = (0..n)
                .map(|a| mortal[a] || self.images[a].iter().all(|b| mortal[b.index()]))
                .collect();
            if next == mortal {
                break;
            }
            mortal = next;
            rounds += 1;
        }

        // Occurrence graph on immortal letters, edges with multiplicity.
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut out_mult = vec![0usize; n];
        for a in (0..n).filter(|&a| !mortal[a]) {
            for b in self.images[a].iter().map(|b| b.index()) {
                if !mortal[b] {
                    out_mult[a] += 1;
                    if !succ[a].contains(&b) {
                        succ[a].push(b);
                    }
                }
            }
        }
        let comps = strongly_connected_components(&succ);
        let mut expanding = vec![false; n];
        for comp in &comps {
            let has_edge = comp.len() > 1 || succ[comp[0]].contains(&comp[0]);
            let branches = comp.iter().any(|&v| out_mult[v] >= 2);
            if has_edge && branches && !mortal[comp[0]] {
                for &v in comp {
                    expanding[v] = true;
                }
            }
        }
        let growing = reaches_any(&succ, &expanding);
        let classes = (0..n)
            .map(|a| {
                if mortal[a] {
                    LetterClass::Mortal
                } else if growing[a] {
                    LetterClass::Growing
                } else {
                    LetterClass::BoundedImmortal
                }
            })
            .collect();
        Ok(LetterClassification {
            classes,
            mortal_rounds: rounds,
        })
    }

    /// `f(a) = a·s` with `s` non-empty and `a` growing, so that the iterates
    /// of `a` are strictly longer prefixes of one infinite word.
    pub fn is_prolongable(&self, a: Letter) -> bool {
        if !self.is_endomorphism() || !self.source.contains(a) {
            return false;
        }
        let image = &self.images[a.index()];
        if image.len() < 2 || image[0] != a {
            return false;
        }
        matches!(
            self.classify_letters().map(|c| c.class(a)),
            Ok(LetterClass::Growing)
        )
    }
}

/// Growth class of a letter under iteration of an endomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterClass {
    /// Erased after finitely many steps.
    Mortal,
    /// Never erased, but the iterates take finitely many values.
    BoundedImmortal,
    /// Iterate lengths tend to infinity.
    Growing,
}

impl LetterClass {
    pub fn is_bounded(self) -> bool {
        !matches!(self, LetterClass::Growing)
    }

    pub fn label(self) -> &'static str {
        match self {
            LetterClass::Mortal => "Mortal",
            LetterClass::BoundedImmortal => "BoundedImmortal",
            LetterClass::Growing => "Growing",
        }
    }
}

impl fmt::Display for LetterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterClassification {
    classes: Vec<LetterClass>,
    mortal_rounds: usize,
}

impl LetterClassification {
    pub fn class(&self, a: Letter) -> LetterClass {
        self.classes[a.index()]
    }

    pub fn classes(&self) -> &[LetterClass] {
        &self.classes
    }

    pub fn is_bounded(&self, a: Letter) -> bool {
        self.classes[a.index()].is_bounded()
    }

    pub fn is_growing(&self, a: Letter) -> bool {
        self.classes[a.index()] == LetterClass::Growing
    }

    pub fn is_mortal(&self, a: Letter) -> bool {
        self.classes[a.index()] == LetterClass::Mortal
    }

    /// Rounds the mortal-letter fixpoint needed to stabilize.
    pub fn mortal_rounds(&self) -> usize {
        self.mortal_rounds
    }
}

/// `M[b][a]` = occurrences of letter `b` in the image of letter `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl IncidenceMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IncidenceMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IncidenceMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    pub fn column_sum(&self, col: usize) -> u64 {
        (0..self.rows).map(|r| self.get(r, col)).sum()
    }

    pub fn mul(&self, rhs: &IncidenceMatrix) -> Result<IncidenceMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument("matrix dimensions".into()));
        }
        let mut out = IncidenceMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cell = &mut out.entries[i * rhs.cols + j];
                    *cell = a
                        .checked_mul(rhs.get(k, j))
                        .and_then(|p| cell.checked_add(p))
                        .ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<IncidenceMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let mut acc = IncidenceMatrix::identity(self.rows);
        for _ in 0..k {
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tm() -> Morphism {
        Morphism::parse("0 -> 0 1\n1 -> 1 0").unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = tm();
        let w = f.source().parse_word("01").unwrap();
        assert_eq!(f.apply(&w).unwrap().to_string(), "0110");
        let e = Word::empty(f.source());
        assert!(f.apply(&e).unwrap().is_empty());

        let g = Morphism::parse("a -> eps; b -> b").unwrap();
        let w = g.source().parse_word("ab").unwrap();
        assert_eq!(g.apply(&w).unwrap().to_string(), "b");
    }

    #[test]
    fn apply_rejects_foreign_word() {
        let f = tm();
        let other = Alphabet::from_chars("xy").unwrap();
        assert_eq!(
            f.apply(&other.parse_word("x").unwrap()),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn powers_and_composition() {
        let f = tm();
        let f2 = f.power(2).unwrap();
        assert_eq!(f2.image(Letter(0)).to_string(), "0110");
        assert_eq!(f.power(0).unwrap(), Morphism::identity(f.source()));
        assert_eq!(Morphism::identity(f.source()).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&f).unwrap(), f2);
    }

    #[test]
    fn compose_checks_alphabets() {
        let f = tm();
        let g = Morphism::parse("a -> a b; b -> a").unwrap();
        assert_eq!(f.compose(&g), Err(Error::AlphabetMismatch));
        let h = Morphism::new(
            f.source(),
            g.source(),
            vec![g.source().parse_word("a").unwrap(), g.source().parse_word("b").unwrap()],
        )
        .unwrap();
        assert_eq!(h.power(2), Err(Error::NotEndomorphism));
        assert_eq!(h.classify_letters(), Err(Error::NotEndomorphism));
        assert!(g.compose(&h).is_ok());
    }

    #[test]
    fn parse_format() {
        let f = Morphism::parse("# Thue-Morse\n0 -> 0 1\n1 -> 1 0   # swap\n").unwrap();
        assert_eq!(f, tm());
        assert_eq!(Morphism::parse(&f.to_rules()).unwrap(), f);
        assert_eq!(f.to_inline(), "0 -> 0 1; 1 -> 1 0");

        let g = Morphism::parse("a->a b b; b->b").unwrap();
        assert_eq!(g.source().names(), ["a", "b"]);
        assert_eq!(g.image(Letter(0)).to_string(), "abb");

        assert!(matches!(Morphism::parse("a -> b"), Err(Error::Parse { .. })));
        assert!(matches!(
            Morphism::parse("a -> a\na -> b\nb -> b"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(Morphism::parse("a b"), Err(Error::Parse { .. })));
        assert!(matches!(Morphism::parse("# nothing"), Err(Error::Parse { .. })));
        assert!(matches!(
            Morphism::parse("a -> a eps"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn incidence_matrix_laws() {
        let f = Morphism::parse("a -> a b b; b -> b a; c -> eps").unwrap();
        let m = f.incidence_matrix();
        assert_eq!(m.get(1, 0), 2);
        assert_eq!(m.column_sum(0), 3);
        assert_eq!(m.column_sum(2), 0);
        let f3 = f.power(3).unwrap();
        assert_eq!(f3.incidence_matrix(), m.pow(3).unwrap());
        let w = f.source().parse_word("abcab").unwrap();
        let counts = m.apply(&w.letter_counts()).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), f.apply(&w).unwrap().len() as u64);
    }

    #[test]
    fn classification_examples() {
        use LetterClass::*;
        let f = Morphism::parse("a -> a b; b -> b").unwrap();
        assert_eq!(f.classify_letters().unwrap().classes(), [Growing, BoundedImmortal]);

        let f = Morphism::parse("a -> eps").unwrap();
        assert_eq!(f.classify_letters().unwrap().classes(), [Mortal]);

        // a -> bb -> aa -> bbbb: both letters grow. Verdict confirmed by the
        // pumping certificate of the brute-force oracle (see oracle tests).
        let f = Morphism::parse("a -> b b; b -> a").unwrap();
        assert_eq!(f.classify_letters().unwrap().classes(), [Growing, Growing]);

        let f = Morphism::parse("a -> b c; b -> c; c -> eps").unwrap();
        let c = f.classify_letters().unwrap();
        assert_eq!(c.classes(), [Mortal, Mortal, Mortal]);
        assert_eq!(c.mortal_rounds(), 3);

        // Immortal side branch on a self-loop makes a grow linearly.
        let f = Morphism::parse("a -> a c; c -> c").unwrap();
        assert_eq!(f.classify_letters().unwrap().classes(), [Growing, BoundedImmortal]);
        // A mortal side branch does not.
        let f = Morphism::parse("a -> a c; c -> eps").unwrap();
        assert_eq!(f.classify_letters().unwrap().classes(), [BoundedImmortal, Mortal]);
        // Permutation of letters: bounded.
        let f = Morphism::parse("a -> b; b -> a").unwrap();
        assert_eq!(
            f.classify_letters().unwrap().classes(),
            [BoundedImmortal, BoundedImmortal]
        );
    }

    #[test]
    fn prolongable_examples() {
        let f = tm();
        assert!(f.is_prolongable(Letter(0)));
        assert!(!Morphism::parse("a -> a").unwrap().is_prolongable(Letter(0)));
        assert!(!Morphism::parse("a -> b a; b -> b a").unwrap().is_prolongable(Letter(0)));
        // Starts with a but only mortal material follows.
        assert!(!Morphism::parse("a -> a b; b -> eps").unwrap().is_prolongable(Letter(0)));
        assert!(!f.is_prolongable(Letter(7)));
    }
}
