//! Combinatorics on words: finite words over interned alphabets, morphisms
//! and their letter classification, purely morphic and morphic languages,
//! lazy infinite words, and lower mechanical words with exact quadratic
//! parameters.
//!
//! ```
//! use morphoword::{InfiniteWord, Morphism};
//!
//! let tm = Morphism::parse("0 -> 0 1; 1 -> 1 0").unwrap();
//! let zero = tm.source().letter("0").unwrap();
//! let mut t = InfiniteWord::fixed_point(&tm, zero).unwrap();
//! assert_eq!(t.take(8).unwrap().dump(), "01101001");
//! ```

pub mod error;
pub mod exact;
mod graph;
pub mod language;
pub mod morphism;
pub mod oracle;
pub mod stream;
pub mod sturmian;
pub mod words;

pub use error::{Error, Result};
pub use exact::ExactNumber;
pub use language::{
    factor_closure, is_bounded_word, is_factorial, is_pushy, morphic_language_upto, pushy_power_check,
    pushy_witness, purely_morphic_language_upto, LanguageSample, Limits, PowerCheck, PushyWitness, Side,
};
pub use morphism::{IncidenceMatrix, LetterClass, LetterClassification, Morphism};
pub use oracle::{CounterexampleReport, TriState};
pub use stream::{Complexity, InfiniteWord, Periodicity, PeriodicityReport, StreamKind};
pub use sturmian::{lower_mechanical_letter, lower_mechanical_word, MechanicalWordSpec};
pub use words::{shortlex, sorted_shortlex, Alphabet, Letter, Word};
