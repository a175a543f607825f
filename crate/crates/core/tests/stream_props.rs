use morphoword::stream::DEFAULT_FUEL;
use morphoword::{Alphabet, InfiniteWord, Letter, Morphism, Word};
use proptest::prelude::*;

fn word(lo: usize, hi: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..3, lo..=hi).prop_map(|v| {
        let abc = Alphabet::from_chars("abc").unwrap();
        Word::new(&abc, v.into_iter().map(Letter).collect()).unwrap()
    })
}

/// Prolongable morphisms on `abc`: `a -> a s` with `s` non-empty and
/// containing `a` or a growing letter, other images arbitrary non-empty.
fn prolongable() -> impl Strategy<Value = Morphism> {
    (
        prop::collection::vec(0u32..3, 1..3),
        prop::collection::vec(0u32..3, 1..3),
        prop::collection::vec(0u32..3, 1..3),
    )
        .prop_map(|(s, b, c)| {
            let abc = Alphabet::from_chars("abc").unwrap();
            let a_img: Vec<Letter> = std::iter::once(0).chain(s).map(Letter).collect();
            let to = |v: Vec<u32>| v.into_iter().map(Letter).collect();
            Morphism::from_raw(&abc, vec![a_img, to(b), to(c)])
        })
        .prop_filter("prolongable", |f| f.is_prolongable(Letter(0)))
}

proptest! {
    #[test]
    fn take_splits_at_drop(u in word(1, 4), n in 0usize..20, m in 0usize..20) {
        let mut s = InfiniteWord::cycle(&u).unwrap();
        let whole = s.take(n + m).unwrap();
        let mut rest = s.clone().drop_prefix(n);
        let head = s.take(n).unwrap();
        prop_assert_eq!(whole, head.concat(&rest.take(m).unwrap()).unwrap());
    }

    #[test]
    fn at_is_stable_across_forcing(u in word(1, 5), i in 0usize..40) {
        let mut s = InfiniteWord::cycle(&u).unwrap();
        let first = s.at(i).unwrap();
        s.take(100).unwrap();
        prop_assert_eq!(s.at(i).unwrap(), first);
        prop_assert_eq!(first, u.letters()[i % u.len()]);
    }

    #[test]
    fn prepend_associates(u in word(0, 4), v in word(0, 4), c in word(1, 3)) {
        let tail = || InfiniteWord::cycle(&c).unwrap();
        let mut left = InfiniteWord::prepend(&u.concat(&v).unwrap(), tail()).unwrap();
        let mut right = InfiniteWord::prepend(&u, InfiniteWord::prepend(&v, tail()).unwrap()).unwrap();
        prop_assert_eq!(left.take(30).unwrap(), right.take(30).unwrap());
    }

    #[test]
    fn fixed_point_equation(f in prolongable()) {
        let mut x = InfiniteWord::fixed_point(&f, Letter(0)).unwrap();
        let mut image = InfiniteWord::morph_image(&f, InfiniteWord::fixed_point(&f, Letter(0)).unwrap(), DEFAULT_FUEL).unwrap();
        prop_assert_eq!(x.take(2_000).unwrap(), image.take(2_000).unwrap());
    }

    #[test]
    fn periodic_complexity_monotone(u in word(1, 6)) {
        let mut s = InfiniteWord::cycle(&u).unwrap();
        let counts: Vec<usize> = (0..12).map(|n| s.factor_complexity(n, 2 * u.len() + n).unwrap().count).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn fixed_point_equation_at_ten_thousand() {
    for rules in ["0 -> 0 1; 1 -> 1 0", "0 -> 0 1; 1 -> 0"] {
        let f = Morphism::parse(rules).unwrap();
        let a = f.source().letter("0").unwrap();
        let mut x = InfiniteWord::fixed_point(&f, a).unwrap();
        let mut image = InfiniteWord::morph_image(&f, InfiniteWord::fixed_point(&f, a).unwrap(), DEFAULT_FUEL).unwrap();
        assert_eq!(x.take(10_000).unwrap(), image.take(10_000).unwrap());
    }
}
