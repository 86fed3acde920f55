//! The fixed word corpus used by the cross-validation sweeps.
//!
//! Twenty-five words of arity at most 3, covering commutator-only words
//! (zero exponent sums), power words, and mixed shapes. Sweep tests and the
//! CLI `sweep` command both consume this list, so it is part of the public
//! surface.

use crate::word::{parse_word, Word};

/// Word texts, in sweep order.
pub const WORDS: &[&str] = &[
    "x1",
    "x1^2",
    "x1^3",
    "x1^6",
    "x1 x2",
    "x1^2 x2^2",
    "x1^2 x2^3",
    "[x1,x2]",
    "[x1,x2]^2",
    "[x1,x2]^3",
    "x1 x2 x1^-1 x2^-1",
    "x1^2 [x1,x2]",
    "x1^4 [x1,x2]^2",
    "x1^3 [x1,x2]",
    "x1 [x2,x3]",
    "x1^2 [x2,x3]",
    "[x1,x2] [x1,x3]",
    "[x1,x2] [x2,x3]^2",
    "[x1,x2] x3^2",
    "[[x1,x2],x3]",
    "x1 x2 x3 x1^-1 x2^-1 x3^-1",
    "[x1,x2^2]",
    "[x1^2,x2] [x1,x3]",
    "x1^2 x2 [x1,x3]^2",
    "x1^-1 x2^-1 x1 x2 x3^2",
];

/// Parses the full corpus.
pub fn words() -> Vec<Word> {
    WORDS
        .iter()
        .map(|t| parse_word(t, None).expect("corpus words are well-formed"))
        .collect()
}

/// Corpus words of arity at most `k`.
pub fn words_up_to_arity(k: usize) -> Vec<Word> {
    words().into_iter().filter(|w| w.arity() <= k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_enough_and_small_arity() {
        let ws = words();
        assert!(ws.len() >= 20);
        assert!(ws.iter().all(|w| w.arity() <= 3 && w.arity() >= 1));
    }

    #[test]
    fn corpus_covers_both_types() {
        use num_traits::Zero;
        let mut type1 = 0;
        let mut type2 = 0;
        for w in words() {
            let sig = crate::signature::class2_signature(&w);
            if sig.exponent_sums().iter().all(|a| a.is_zero()) {
                type1 += 1;
            } else {
                type2 += 1;
            }
        }
        assert!(type1 >= 5, "need commutator-only words, got {type1}");
        assert!(
            type2 >= 5,
            "need words with non-zero exponent sums, got {type2}"
        );
    }
}
