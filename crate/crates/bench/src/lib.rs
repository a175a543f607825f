//! Fixtures shared by the benchmarks.

use morphoword::Morphism;

pub const THUE_MORSE: &str = "0 -> 0 1; 1 -> 1 0";
pub const FIBONACCI: &str = "a -> a b; b -> a";
pub const PUSHY: &str = "a -> a b b; b -> b";
pub const CHAIN: &str = "a -> a b; b -> b c; c -> c d; d -> d";

pub fn morphism(rules: &str) -> Morphism {
    Morphism::parse(rules).expect("fixture parses")
}

/// `a_0 -> a_0 a_1, a_i -> a_{i+1} (i < k-1), a_{k-1} -> a_0`: a primitive
/// morphism over `k` letters.
pub fn cyclic_fibonacci(k: usize) -> Morphism {
    let rules: Vec<String> = (0..k)
        .map(|i| match i {
            0 => "x0 -> x0 x1".to_string(),
            i if i + 1 == k => format!("x{i} -> x0"),
            i => format!("x{i} -> x{}", i + 1),
        })
        .collect();
    morphism(&rules.join("; "))
}
