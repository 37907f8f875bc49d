//! Admitted `n`-letter words and the complexity function.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::spectral::is_primitive;
use crate::substitution::Substitution;
use crate::word::Word;

/// A lexicographically ordered, duplicate-free set of words of one length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordSet {
    length: usize,
    words: Vec<Word>,
}

impl WordSet {
    pub fn from_words<I: IntoIterator<Item = Word>>(length: usize, words: I) -> Self {
        let set: BTreeSet<Word> = words.into_iter().collect();
        debug_assert!(set.iter().all(|w| w.len() == length));
        WordSet { length, words: set.into_iter().collect() }
    }

    pub fn word_length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Position of `w` in the ordering, if present.
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.binary_search(w).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

impl<'a> IntoIterator for &'a WordSet {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

pub(crate) fn require_primitive(s: &Substitution) -> Result<()> {
    if is_primitive(&s.matrix())? {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

/// All admitted words of length `n`.
///
/// Grows a seed from the letter `a` until it is at least `n` long, then
/// repeatedly substitutes it and harvests its length-`n` factors. The search
/// stops once two consecutive passes add no new word.
pub fn admitted_words(s: &Substitution, n: usize) -> Result<WordSet> {
    require_primitive(s)?;
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    Ok(admitted_words_unchecked(s, n))
}

pub(crate) fn admitted_words_unchecked(s: &Substitution, n: usize) -> WordSet {
    // the only primitive substitution that never grows is a ↦ a
    if n > 1 && s.images().iter().all(|w| w.len() == 1) {
        return WordSet { length: n, words: Vec::new() };
    }
    let mut seed = Word::single(0);
    while seed.len() < n {
        seed = s.iterate(&seed);
    }
    let mut found: HashSet<Word> = HashSet::new();
    let mut quiet_passes = 0;
    while quiet_passes < 2 {
        let before = found.len();
        seed = s.iterate(&seed);
        for factor in seed.windows(n) {
            if !found.contains(factor) {
                found.insert(Word::from(factor));
            }
        }
        if found.len() == before {
            quiet_passes += 1;
        } else {
            quiet_passes = 0;
        }
    }
    let mut words: Vec<Word> = found.into_iter().collect();
    words.sort_unstable();
    WordSet { length: n, words }
}

/// The complexity function: number of admitted words of length `n`.
pub fn complexity(s: &Substitution, n: usize) -> Result<usize> {
    admitted_words(s, n).map(|set| set.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::examples::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    fn strings(set: &WordSet) -> Vec<String> {
        set.iter().map(Word::to_string).collect()
    }

    #[test]
    fn fibonacci_words() {
        let fib = sub(FIBONACCI);
        assert_eq!(strings(&admitted_words(&fib, 1).unwrap()), ["a", "b"]);
        assert_eq!(strings(&admitted_words(&fib, 2).unwrap()), ["ab", "ba", "bb"]);
        assert_eq!(strings(&admitted_words(&fib, 3).unwrap()), ["aba", "abb", "bab", "bba"]);
        assert_eq!(complexity(&fib, 5).unwrap(), 6);
    }

    #[test]
    fn thue_morse_words() {
        let tm = sub(THUE_MORSE);
        assert_eq!(complexity(&tm, 2).unwrap(), 4);
        assert_eq!(
            strings(&admitted_words(&tm, 3).unwrap()),
            ["aab", "aba", "abb", "baa", "bab", "bba"]
        );
    }

    #[test]
    fn one_letter_words_are_the_alphabet() {
        for text in [TRIBONACCI, DISCONNECTED, HEXIBONACCI] {
            let s = sub(text);
            assert_eq!(complexity(&s, 1).unwrap(), s.alphabet_size());
        }
    }

    #[test]
    fn identity_has_no_long_words() {
        let id = sub("a");
        assert_eq!(complexity(&id, 1).unwrap(), 1);
        assert!(admitted_words(&id, 2).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(admitted_words(&sub(FIBONACCI), 0), Err(Error::ZeroLength));
        assert_eq!(admitted_words(&sub("a.b"), 2), Err(Error::NotPrimitive));
    }
}
