//! Letters and finite words.
//!
//! Letters are dense indices `0..l`; the characters `a`–`z` are only a
//! presentation of them. Letters beyond `z` (which can arise on derived
//! alphabets such as return words) display as `<n>`.

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

pub type Letter = u8;

/// Renders a letter as `a`, `b`, … or `<n>` past `z`.
pub fn letter_name(letter: Letter) -> String {
    if letter < 26 {
        char::from(b'a' + letter).to_string()
    } else {
        format!("<{letter}>")
    }
}

/// A finite word over a dense alphabet. The derived ordering is lexicographic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    /// Parses a word written in `a`–`z`. Returns `None` on any other character.
    pub fn from_letters(text: &str) -> Option<Self> {
        text.bytes()
            .map(|b| b.is_ascii_lowercase().then(|| b - b'a'))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// Number of occurrences of each letter, indexed by letter.
    pub fn letter_counts(&self, alphabet_size: usize) -> Vec<i64> {
        let mut counts = vec![0; alphabet_size];
        for &x in &self.0 {
            counts[x as usize] += 1;
        }
        counts
    }

    /// All contiguous subwords of length `n`, in order of position.
    pub fn factors(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        self.0.windows(n.max(1)).filter(move |_| n > 0).map(|w| Word(w.to_vec()))
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&x| x == letter).count()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            if x < 26 {
                write!(f, "{}", char::from(b'a' + x))?;
            } else {
                write!(f, "<{x}>")?;
            }
        }
        Ok(())
    }
}

/// Orders words by length first, then lexicographically.
pub fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let w = Word::from_letters("abca").unwrap();
        assert_eq!(w.letters(), &[0, 1, 2, 0]);
        assert_eq!(w.to_string(), "abca");
        assert!(Word::from_letters("aB").is_none());
        assert_eq!(Word::new(vec![0, 27]).to_string(), "a<27>");
    }

    #[test]
    fn factors_of_short_word() {
        let w = Word::from_letters("abb").unwrap();
        let f: Vec<String> = w.factors(2).map(|w| w.to_string()).collect();
        assert_eq!(f, ["ab", "bb"]);
        assert_eq!(w.factors(4).count(), 0);
        assert_eq!(w.factors(0).count(), 0);
    }

    #[test]
    fn shortlex_order() {
        let mut v: Vec<Word> = ["ac", "a", "abcd", "ab"]
            .iter()
            .map(|s| Word::from_letters(s).unwrap())
            .collect();
        v.sort_by(shortlex);
        let s: Vec<String> = v.iter().map(Word::to_string).collect();
        assert_eq!(s, ["a", "ab", "ac", "abcd"]);
    }
}
