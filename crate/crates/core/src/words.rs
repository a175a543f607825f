//! Finite words over interned alphabets.
//!
//! Letters are dense integer ids into an [`Alphabet`] name table. A [`Word`]
//! carries a shared handle to its alphabet so that operations mixing words
//! from different alphabets can be rejected.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A letter id. Valid ids of an alphabet `A` are `0..A.len()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Letter {
    fn from(i: usize) -> Self {
        Letter(i as u32)
    }
}

/// An ordered, non-empty finite set of named letters.
#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Vec<String>,
    ids: HashMap<String, Letter>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet {
            names: Vec::new(),
            ids: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("bad letter name {name:?}")));
            }
            if out.ids.contains_key(&name) {
                return Err(Error::DuplicateLetter(name));
            }
            out.ids.insert(name.clone(), Letter::from(out.names.len()));
            out.names.push(name);
        }
        if out.names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Arc::new(out))
    }

    /// One letter per character, in order.
    pub fn from_chars(letters: &str) -> Result<Arc<Alphabet>> {
        Alphabet::new(letters.chars().map(String::from))
    }

    /// Letters named `0`, `1`, ..., `size - 1`.
    pub fn numbered(size: usize) -> Result<Arc<Alphabet>> {
        Alphabet::new((0..size).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len()).map(Letter::from)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.names.len()
    }

    /// True when every letter name is a single character, so words can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word written either as whitespace-separated letter names or,
    /// for compact alphabets, as a run of characters. `eps` and `ε` denote
    /// the empty word.
    pub fn parse_word(self: &Arc<Self>, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "eps" || text == "ε" {
            return Ok(Word::empty(self));
        }
        let letters = if text.contains(char::is_whitespace) || !self.is_compact() {
            text.split_whitespace()
                .map(|t| self.letter(t))
                .collect::<Result<Vec<_>>>()?
        } else {
            let mut buf = [0u8; 4];
            text.chars()
                .map(|c| self.letter(c.encode_utf8(&mut buf)))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word::from_letters_unchecked(self.clone(), letters))
    }

    pub(crate) fn same(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// A finite word. The empty word is valid.
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && Alphabet::same(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        let sep = if self.alphabet.is_compact() { "" } else { " " };
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(self.alphabet.name(l))?;
        }
        Ok(())
    }
}

impl Word {
    pub fn new(alphabet: &Arc<Alphabet>, letters: Vec<Letter>) -> Result<Word> {
        if let Some(&bad) = letters.iter().find(|l| !alphabet.contains(**l)) {
            return Err(Error::LetterOutOfRange {
                id: bad.0,
                size: alphabet.len(),
            });
        }
        Ok(Word::from_letters_unchecked(alphabet.clone(), letters))
    }

    pub(crate) fn from_letters_unchecked(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.iter().all(|l| alphabet.contains(*l)));
        Word { alphabet, letters }
    }

    pub fn empty(alphabet: &Arc<Alphabet>) -> Word {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    pub fn single(alphabet: &Arc<Alphabet>, letter: Letter) -> Result<Word> {
        Word::new(alphabet, vec![letter])
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn same_alphabet(&self, other: &Word) -> bool {
        Alphabet::same(&self.alphabet, &other.alphabet)
    }

    fn check_alphabet(&self, other: &Word) -> Result<()> {
        if self.same_alphabet(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// The contiguous slice `[start, end)` as a word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters_unchecked(self.alphabet.clone(), self.letters[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_alphabet(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_letters_unchecked(self.alphabet.clone(), letters))
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word::from_letters_unchecked(self.alphabet.clone(), self.letters.repeat(times))
    }

    /// `self` is a prefix of `w`.
    pub fn is_prefix_of(&self, w: &Word) -> Result<bool> {
        self.check_alphabet(w)?;
        Ok(w.letters.starts_with(&self.letters))
    }

    /// `self` occurs as a contiguous factor of `w`.
    pub fn is_factor_of(&self, w: &Word) -> Result<bool> {
        self.check_alphabet(w)?;
        Ok(contains_factor(&w.letters, &self.letters))
    }

    /// All distinct factors of length at most `max_len`, including ε.
    pub fn factors_upto(&self, max_len: usize) -> HashSet<Word> {
        let mut seen: HashSet<&[Letter]> = HashSet::new();
        collect_factors(&self.letters, max_len, |f| {
            seen.insert(f);
        });
        seen.into_iter()
            .map(|f| Word::from_letters_unchecked(self.alphabet.clone(), f.to_vec()))
            .collect()
    }

    /// Distinct factors of length exactly `len`.
    pub fn factors_of_len(&self, len: usize) -> HashSet<Word> {
        if len > self.len() {
            return HashSet::new();
        }
        if len == 0 {
            return HashSet::from([Word::empty(&self.alphabet)]);
        }
        let seen: HashSet<&[Letter]> = self.letters.windows(len).collect();
        seen.into_iter()
            .map(|f| Word::from_letters_unchecked(self.alphabet.clone(), f.to_vec()))
            .collect()
    }

    /// The primitive root and its exponent: `root^exponent == self` with the
    /// exponent maximal.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return Err(Error::EmptyWord("primitive root"));
        }
        let period = smallest_period(&self.letters);
        let n = self.len();
        let root_len = if n.is_multiple_of(period) { period } else { n };
        Ok((self.slice(0, root_len), n / root_len))
    }

    /// All `|w|` rotations in rotation order, duplicates kept.
    pub fn conjugates(&self) -> Result<Vec<Word>> {
        if self.is_empty() {
            return Err(Error::EmptyWord("conjugates"));
        }
        let n = self.len();
        Ok((0..n)
            .map(|i| {
                let mut letters = Vec::with_capacity(n);
                letters.extend_from_slice(&self.letters[i..]);
                letters.extend_from_slice(&self.letters[..i]);
                Word::from_letters_unchecked(self.alphabet.clone(), letters)
            })
            .collect())
    }

    /// Occurrence count per letter id.
    pub fn letter_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.alphabet.len()];
        for l in &self.letters {
            counts[l.index()] += 1;
        }
        counts
    }

    /// Prefix dump: the compact string when every letter name is a single
    /// character, otherwise one letter name per line.
    pub fn dump(&self) -> String {
        let sep = if self.alphabet.is_compact() { "" } else { "\n" };
        self.letters
            .iter()
            .map(|&l| self.alphabet.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Shortlex order: shorter words first, then lexicographic by letter id.
pub fn shortlex(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.letters.cmp(&b.letters))
}

/// Sorts a set of words into shortlex order.
pub fn sorted_shortlex<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Vec<Word> {
    let mut v: Vec<Word> = words.into_iter().cloned().collect();
    v.sort_by(shortlex);
    v
}

pub(crate) fn contains_factor(haystack: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

/// Calls `visit` once per factor occurrence of length `0..=max_len`
/// (ε is visited once).
pub(crate) fn collect_factors<'a>(
    letters: &'a [Letter],
    max_len: usize,
    mut visit: impl FnMut(&'a [Letter]),
) {
    visit(&[]);
    for start in 0..letters.len() {
        let end = letters.len().min(start + max_len);
        for stop in start + 1..=end {
            visit(&letters[start..stop]);
        }
    }
}

/// Border array (failure function): `border[i]` is the length of the
/// longest proper border of `w[..i]`.
pub(crate) fn border_array(w: &[Letter]) -> Vec<usize> {
    let mut border = vec![0usize; w.len() + 1];
    let mut k = 0usize;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = border[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        border[i + 1] = k;
    }
    border
}

/// Smallest period of a non-empty word.
pub(crate) fn smallest_period(w: &[Letter]) -> usize {
    w.len() - border_array(w)[w.len()]
}
