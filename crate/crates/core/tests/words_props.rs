use std::collections::HashSet;

use morphoword::{Alphabet, Letter, Word};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..3, 0..=max_len).prop_map(|v| {
        let abc = Alphabet::from_chars("abc").unwrap();
        Word::new(&abc, v.into_iter().map(Letter).collect()).unwrap()
    })
}

fn nonempty(max_len: usize) -> impl Strategy<Value = Word> {
    word(max_len).prop_filter("non-empty", |w| !w.is_empty())
}

proptest! {
    #[test]
    fn concat_associative_with_identity(u in word(6), v in word(6), w in word(6)) {
        let left = u.concat(&v).unwrap().concat(&w).unwrap();
        let right = u.concat(&v.concat(&w).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let eps = Word::empty(u.alphabet());
        prop_assert_eq!(&u.concat(&eps).unwrap(), &u);
        prop_assert_eq!(&eps.concat(&u).unwrap(), &u);
    }

    #[test]
    fn primitive_root_matches_divisor_search(w in nonempty(12)) {
        let (root, k) = w.primitive_root().unwrap();
        prop_assert_eq!(&root.repeat(k), &w);
        let n = w.len();
        let best = (1..=n)
            .rev()
            .filter(|e| n % e == 0)
            .find(|&e| w.slice(0, n / e).repeat(e) == w)
            .unwrap();
        prop_assert_eq!(k, best);
    }

    #[test]
    fn distinct_conjugates_count_root_length(w in nonempty(10)) {
        let n = w.len();
        let rotations: HashSet<Vec<Letter>> = (0..n)
            .map(|i| [&w.letters()[i..], &w.letters()[..i]].concat())
            .collect();
        let conj: HashSet<Word> = w.conjugates().unwrap().into_iter().collect();
        let (root, _) = w.primitive_root().unwrap();
        prop_assert_eq!(conj.len(), root.len());
        prop_assert_eq!(rotations.len(), root.len());
        prop_assert!(conj.iter().all(|c| rotations.contains(c.letters())));
    }

    #[test]
    fn factors_match_slices(w in word(12)) {
        let n = w.len();
        let mut brute: HashSet<Word> = HashSet::new();
        for i in 0..=n {
            for j in i..=n {
                brute.insert(w.slice(i, j));
            }
        }
        prop_assert_eq!(w.factors_upto(n), brute.clone());
        for len in 0..=n {
            let expected: HashSet<Word> = brute.iter().filter(|f| f.len() == len).cloned().collect();
            prop_assert_eq!(w.factors_of_len(len), expected);
        }
    }

    #[test]
    fn factor_and_prefix_agree_with_slices(w in word(8), u in word(3)) {
        let n = w.len();
        let is_factor = (0..=n).any(|i| i + u.len() <= n && w.slice(i, i + u.len()) == u);
        prop_assert_eq!(u.is_factor_of(&w).unwrap(), is_factor);
        prop_assert_eq!(u.is_prefix_of(&w).unwrap(), u.len() <= n && w.slice(0, u.len()) == u);
    }

    #[test]
    fn display_parse_round_trip(w in word(10)) {
        prop_assert_eq!(&w.alphabet().parse_word(&w.to_string()).unwrap(), &w);
    }
}
