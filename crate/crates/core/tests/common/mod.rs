#![allow(dead_code)]

use std::sync::Arc;

use morphoword::{Alphabet, Letter, Morphism, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SPACE_SEED: u64 = 20_240_517;

/// All words over `k` letters of length `lo..=hi`, shortlex order.
pub fn all_words(k: usize, lo: usize, hi: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 0..=hi {
        if len >= lo {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(Letter::from(a));
                    v
                })
            })
            .collect();
    }
    out
}

/// Words of length `lo..=hi` over at most `k` letters, one per renaming
/// class: letters appear first in the order 0, 1, 2, ...
pub fn canonical_words(k: usize, lo: usize, hi: usize) -> Vec<Vec<Letter>> {
    all_words(k, lo, hi)
        .into_iter()
        .filter(|w| {
            let mut next = 0;
            w.iter().all(|l| {
                if l.index() < next {
                    true
                } else if l.index() == next {
                    next += 1;
                    true
                } else {
                    false
                }
            })
        })
        .collect()
}

/// Every endomorphism of a `k`-letter alphabet with images of length at
/// most `max_len`.
pub fn all_endomorphisms(alphabet: &Arc<Alphabet>, max_len: usize) -> Vec<Morphism> {
    let k = alphabet.len();
    let images = all_words(k, 0, max_len);
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        out.push(Morphism::from_raw(alphabet, idx.iter().map(|&i| images[i].clone()).collect()));
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < images.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Uniform sample of endomorphisms with images of length at most `max_len`.
pub fn sample_endomorphisms(alphabet: &Arc<Alphabet>, max_len: usize, count: usize, rng: &mut impl Rng) -> Vec<Morphism> {
    let images = all_words(alphabet.len(), 0, max_len);
    (0..count)
        .map(|_| {
            let chosen = alphabet.letters().map(|_| images[rng.gen_range(0..images.len())].clone()).collect();
            Morphism::from_raw(alphabet, chosen)
        })
        .collect()
}

pub fn words(alphabet: &Arc<Alphabet>, lo: usize, hi: usize) -> Vec<Word> {
    all_words(alphabet.len(), lo, hi)
        .into_iter()
        .map(|w| Word::new(alphabet, w).unwrap())
        .collect()
}

/// The morphism spaces of the power-invariance checks: every 2-letter
/// endomorphism with images of length ≤ 3 with axioms of length ≤ 2, and a
/// seeded sample of 500 3-letter endomorphisms with images of length ≤ 2.
pub fn power_check_spaces() -> Vec<(Morphism, Vec<Word>)> {
    let mut rng = StdRng::seed_from_u64(SPACE_SEED);
    let two = Alphabet::from_chars("ab").unwrap();
    let three = Alphabet::from_chars("abc").unwrap();
    let axioms2 = words(&two, 0, 2);
    let axioms3 = words(&three, 0, 2);
    let mut out: Vec<(Morphism, Vec<Word>)> = all_endomorphisms(&two, 3)
        .into_iter()
        .map(|f| (f, axioms2.clone()))
        .collect();
    out.extend(
        sample_endomorphisms(&three, 2, 500, &mut rng)
            .into_iter()
            .map(|f| (f, axioms3.clone())),
    );
    out
}
