//! Substitutions on a finite alphabet: parsing, iteration, powers,
//! composition and the substitution matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::word::{Letter, Word};

/// Largest alphabet expressible in the `a`–`z` text encoding.
pub const MAX_TEXT_ALPHABET: usize = 26;

/// Largest alphabet a derived substitution (e.g. on return words) may have.
pub const MAX_ALPHABET: usize = Letter::MAX as usize + 1;

/// A substitution: image words for the letters `0..l`, in letter order.
///
/// Every image is nonempty and the letters used across all images are
/// exactly the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    images: Vec<Word>,
}

impl Substitution {
    /// Builds a substitution from its images, enforcing the validation rules.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let size = images.len();
        if size == 0 {
            return Err(Error::AlphabetMismatch { alphabet_size: 0 });
        }
        if size > MAX_ALPHABET {
            return Err(Error::AlphabetTooLarge(size));
        }
        let mut used = vec![false; size];
        for (index, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage { index });
            }
            for &x in image.iter() {
                match used.get_mut(x as usize) {
                    Some(slot) => *slot = true,
                    None => return Err(Error::AlphabetMismatch { alphabet_size: size }),
                }
            }
        }
        if used.iter().any(|u| !u) {
            return Err(Error::AlphabetMismatch { alphabet_size: size });
        }
        Ok(Substitution { images })
    }

    /// Parses the short text encoding: images over `a`–`z` separated by `.`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        for (position, c) in text.chars().enumerate() {
            if c != '.' && !c.is_ascii_lowercase() {
                return Err(Error::IllegalCharacter { found: c, position });
            }
        }
        let images: Vec<Word> = text
            .split('.')
            .map(|field| Word::from_letters(field).expect("characters checked above"))
            .collect();
        if images.len() > MAX_TEXT_ALPHABET {
            return Err(Error::AlphabetTooLarge(images.len()));
        }
        Substitution::new(images)
    }

    /// The text encoding accepted by [`Substitution::parse`].
    pub fn encode(&self) -> String {
        self.to_string()
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.images.len()).map(|x| x as Letter)
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// First letter of the image of `letter`.
    pub fn first_of(&self, letter: Letter) -> Letter {
        self.images[letter as usize][0]
    }

    /// Last letter of the image of `letter`.
    pub fn last_of(&self, letter: Letter) -> Letter {
        self.images[letter as usize].last().expect("images are nonempty")
    }

    /// Applies the substitution once to `word`, concatenating letter images.
    pub fn iterate(&self, word: &Word) -> Word {
        let len = word.iter().map(|&x| self.images[x as usize].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &x in word.iter() {
            out.extend_from_slice(&self.images[x as usize]);
        }
        Word::new(out)
    }

    /// Applies the substitution `times` times.
    pub fn iterate_n(&self, word: &Word, times: usize) -> Word {
        let mut w = word.clone();
        for _ in 0..times {
            w = self.iterate(&w);
        }
        w
    }

    /// The substitution `φᵖ`.
    pub fn power(&self, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroPower);
        }
        let images = self
            .letters()
            .map(|x| self.iterate_n(&Word::single(x), p))
            .collect();
        Ok(Substitution { images })
    }

    /// The composition `self ∘ inner`, sending `x` to `self(inner(x))`.
    pub fn compose(&self, inner: &Substitution) -> Result<Self> {
        if self.alphabet_size() != inner.alphabet_size() {
            return Err(Error::AlphabetSizeMismatch {
                left: self.alphabet_size(),
                right: inner.alphabet_size(),
            });
        }
        let images = inner.images.iter().map(|w| self.iterate(w)).collect();
        Ok(Substitution { images })
    }

    /// `m[i][j]` is the number of occurrences of letter `i` in the image of letter `j`.
    pub fn matrix(&self) -> IntegerMatrix {
        let n = self.alphabet_size();
        let mut m = IntegerMatrix::zeros(n);
        for (j, image) in self.images.iter().enumerate() {
            for &i in image.iter() {
                m[(i as usize, j)] += 1;
            }
        }
        m
    }

    /// Whether every image starts with the same letter.
    pub fn is_left_proper(&self) -> bool {
        let first = self.first_of(0);
        self.letters().all(|x| self.first_of(x) == first)
    }

    /// Whether every image ends with the same letter.
    pub fn is_right_proper(&self) -> bool {
        let last = self.last_of(0);
        self.letters().all(|x| self.last_of(x) == last)
    }
}

impl FromStr for Substitution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Substitution::parse(s)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{image}")?;
        }
        Ok(())
    }
}

/// The five substitutions used throughout the tests and documentation.
pub mod examples {
    pub const FIBONACCI: &str = "b.ba";
    pub const THUE_MORSE: &str = "ab.ba";
    pub const TRIBONACCI: &str = "ab.ac.a";
    pub const DISCONNECTED: &str = "abcda.ab.cdbc.db";
    pub const HEXIBONACCI: &str = "ab.ac.ad.ae.af.a";
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_letters(s).unwrap()
    }

    #[test]
    fn parse_fibonacci() {
        let s = sub(FIBONACCI);
        assert_eq!(s.alphabet_size(), 2);
        assert_eq!(s.image(0), &w("b"));
        assert_eq!(s.image(1), &w("ba"));
    }

    #[test]
    fn parse_identity() {
        let s = sub("a");
        assert_eq!(s.alphabet_size(), 1);
        assert_eq!(s.image(0), &w("a"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Substitution::parse("b.b"),
            Err(Error::AlphabetMismatch { alphabet_size: 2 })
        );
        assert_eq!(Substitution::parse("b..a"), Err(Error::EmptyImage { index: 1 }));
        assert_eq!(
            Substitution::parse("aB"),
            Err(Error::IllegalCharacter { found: 'B', position: 1 })
        );
        // a letter outside the alphabet
        assert_eq!(
            Substitution::parse("ac.b"),
            Err(Error::AlphabetMismatch { alphabet_size: 2 })
        );
        assert!(matches!(Substitution::parse(""), Err(Error::EmptyImage { index: 0 })));
    }

    #[test]
    fn iterate_words() {
        let fib = sub(FIBONACCI);
        assert_eq!(fib.iterate(&w("ba")), w("bab"));
        assert_eq!(fib.iterate(&Word::empty()), Word::empty());
        assert_eq!(sub(THUE_MORSE).iterate(&w("ab")), w("abba"));
    }

    #[test]
    fn powers() {
        assert_eq!(sub(FIBONACCI).power(2).unwrap(), sub("ba.bab"));
        assert_eq!(sub(TRIBONACCI).power(2).unwrap(), sub("abac.aba.ab"));
        assert_eq!(sub(TRIBONACCI).power(1).unwrap(), sub(TRIBONACCI));
        assert_eq!(sub(FIBONACCI).power(0), Err(Error::ZeroPower));
    }

    #[test]
    fn compositions() {
        let fib = sub(FIBONACCI);
        assert_eq!(fib.compose(&sub("a.b")).unwrap(), fib);
        assert_eq!(fib.compose(&sub("b.ab")).unwrap(), sub("ba.bba"));
        assert!(matches!(
            fib.compose(&sub("a")),
            Err(Error::AlphabetSizeMismatch { .. })
        ));
    }

    #[test]
    fn matrices() {
        assert_eq!(sub(FIBONACCI).matrix().to_rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(sub(THUE_MORSE).matrix().to_rows(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(
            sub(TRIBONACCI).matrix().to_rows(),
            vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]
        );
    }

    #[test]
    fn encode_examples() {
        assert_eq!(sub(FIBONACCI).encode(), "b.ba");
        assert_eq!(sub(HEXIBONACCI).encode(), "ab.ac.ad.ae.af.a");
        assert_eq!(sub("a").encode(), "a");
    }

    #[test]
    fn properness() {
        assert!(sub("ab.ab").is_left_proper());
        assert!(sub(FIBONACCI).is_left_proper());
        assert!(!sub(THUE_MORSE).is_left_proper());
        assert!(sub("ba.bba").is_right_proper());
    }
}
