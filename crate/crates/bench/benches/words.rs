use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use morphoword::{
    is_pushy, lower_mechanical_word, purely_morphic_language_upto, ExactNumber, InfiniteWord, Limits,
};
use morphoword_bench::{cyclic_fibonacci, morphism, CHAIN, FIBONACCI, PUSHY, THUE_MORSE};

fn fixed_point_prefix(c: &mut Criterion) {
    let tm = morphism(THUE_MORSE);
    let zero = tm.source().letter("0").unwrap();
    let mut group = c.benchmark_group("fixed_point_take");
    for n in [1_000usize, 100_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| {
                let mut t = InfiniteWord::fixed_point(&tm, zero).unwrap();
                black_box(t.take(n).unwrap())
            })
        });
    }
    group.finish();
}

fn mechanical_prefix(c: &mut Criterion) {
    let alpha: ExactNumber = "(3-1*sqrt(5))/2".parse().unwrap();
    let beta = ExactNumber::zero();
    c.bench_function("mechanical_take_10000", |b| {
        b.iter(|| {
            let mut s = lower_mechanical_word(&alpha, &beta).unwrap();
            black_box(s.take(10_000).unwrap())
        })
    });
}

fn classification(c: &mut Criterion) {
    let f = cyclic_fibonacci(64);
    c.bench_function("classify_64_letters", |b| b.iter(|| black_box(f.classify_letters().unwrap())));
    let chain = morphism(CHAIN);
    let a = chain.source().parse_word("a").unwrap();
    c.bench_function("is_pushy_chain", |b| b.iter(|| black_box(is_pushy(&chain, &a).unwrap())));
}

fn language(c: &mut Criterion) {
    let mut group = c.benchmark_group("purely_morphic_language");
    for (name, rules) in [("thue_morse", THUE_MORSE), ("fibonacci", FIBONACCI), ("pushy", PUSHY)] {
        let f = morphism(rules);
        let axiom = f.source().parse_word(f.source().name(morphoword::Letter(0))).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| black_box(purely_morphic_language_upto(&f, &axiom, 12, &Limits::default()).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, fixed_point_prefix, mechanical_prefix, classification, language);
criterion_main!(benches);
