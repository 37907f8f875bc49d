//! Fixed letters, return words and the recognisability decision.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::language::{admitted_words_unchecked, require_primitive};
use crate::substitution::Substitution;
use crate::word::{shortlex, Letter, Word};

/// A letter `f` with `φᵏ(f)` beginning with `f`, for the least such `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedLetter {
    pub letter: Letter,
    pub order: usize,
}

/// Return words to a fixed letter, in (length, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnWordSet {
    pub base: Letter,
    pub words: Vec<Word>,
}

impl ReturnWordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|v| v == w)
    }
}

/// The fixed letter of smallest order, ties broken by the smallest letter.
///
/// Follows the first-letter map `x ↦ first(φ(x))`; a letter is fixed exactly
/// when it lies on a cycle of this map, with order the cycle length.
pub fn fixed_letter(s: &Substitution) -> FixedLetter {
    let l = s.alphabet_size();
    let mut best: Option<FixedLetter> = None;
    for start in s.letters() {
        let mut x = start;
        for order in 1..=l {
            x = s.first_of(x);
            if x == start {
                if best.map_or(true, |b| order < b.order) {
                    best = Some(FixedLetter { letter: start, order });
                }
                break;
            }
        }
    }
    best.expect("the first-letter map on a finite alphabet has a cycle")
}

/// All return words to the fixed letter `f`.
///
/// Finds a length `L` (doubling from 2) such that every admitted word of
/// length `L` contains `f` at least twice. A return word `v` then has
/// `|v| < L`, so `vf` sits between consecutive occurrences of `f` inside some
/// admitted `L`-word and a single scan of those words is complete.
pub fn return_words(s: &Substitution, f: FixedLetter) -> Result<ReturnWordSet> {
    require_primitive(s)?;
    Ok(return_words_unchecked(s, f.letter))
}

pub(crate) fn return_words_unchecked(s: &Substitution, f: Letter) -> ReturnWordSet {
    let mut length = 2;
    let words = loop {
        let set = admitted_words_unchecked(s, length);
        if set.iter().all(|w| w.count(f) >= 2) {
            break set;
        }
        length *= 2;
    };
    let mut found = BTreeSet::new();
    for w in &words {
        let positions: Vec<usize> =
            w.iter().enumerate().filter(|(_, &x)| x == f).map(|(i, _)| i).collect();
        for pair in positions.windows(2) {
            found.insert(Word::from(&w[pair[0]..pair[1]]));
        }
    }
    let mut words: Vec<Word> = found.into_iter().collect();
    words.sort_by(shortlex);
    ReturnWordSet { base: f, words }
}

/// Whether the primitive substitution `s` is recognisable (equivalently,
/// its subshift is aperiodic).
///
/// `s` fails to be recognisable exactly when `φ^{k·n}(vv') = φ^{k·n}(v'v)`
/// for every pair of return words `v, v'`, with `k` the order of the fixed
/// letter and `n` the alphabet size. A single return word means the subshift
/// is periodic.
pub fn is_recognisable(s: &Substitution) -> Result<bool> {
    require_primitive(s)?;
    let f = fixed_letter(s);
    let rw = return_words_unchecked(s, f.letter);
    let depth = f.order * s.alphabet_size();
    for (i, v) in rw.words.iter().enumerate() {
        for w in &rw.words[i + 1..] {
            if !images_agree(s, &v.concat(w), &w.concat(v), depth) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Materialised words longer than this are compared lazily.
const EAGER_LIMIT: usize = 1 << 16;

/// Whether `φ^depth(u) = φ^depth(w)`.
///
/// Differing fingerprints of the two images prove inequality outright.
/// Otherwise equality is confirmed exactly: equal images stay equal under
/// further substitution, so an early agreement settles it, and long images
/// are streamed letter by letter.
pub fn images_agree(s: &Substitution, u: &Word, w: &Word, depth: usize) -> bool {
    let fingerprint = ImageFingerprint::new(s, depth);
    if fingerprint.of(u) != fingerprint.of(w) {
        return false;
    }
    let (mut u, mut w) = (u.clone(), w.clone());
    for level in 0..=depth {
        if u == w {
            return true;
        }
        if level == depth {
            return false;
        }
        if u.len() > EAGER_LIMIT || w.len() > EAGER_LIMIT {
            let remaining = depth - level;
            return Expansion::new(s, &u, remaining).eq(Expansion::new(s, &w, remaining));
        }
        u = s.iterate(&u);
        w = s.iterate(&w);
    }
    unreachable!()
}

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

/// Polynomial hashes of `φ^depth(x)` for every letter, built level by level
/// from `hash(uv) = hash(u)·B^|v| + hash(v)`.
struct ImageFingerprint {
    hash: Vec<u64>,
    shift: Vec<u64>,
}

impl ImageFingerprint {
    fn new(s: &Substitution, depth: usize) -> Self {
        let mut hash: Vec<u64> = s.letters().map(|x| x as u64 + 1).collect();
        let mut shift = vec![BASE; s.alphabet_size()];
        for _ in 0..depth {
            let (mut next_hash, mut next_shift) = (Vec::new(), Vec::new());
            for x in s.letters() {
                let (h, p) = fold(&hash, &shift, s.image(x));
                next_hash.push(h);
                next_shift.push(p);
            }
            hash = next_hash;
            shift = next_shift;
        }
        ImageFingerprint { hash, shift }
    }

    fn of(&self, w: &[Letter]) -> (u64, u64) {
        fold(&self.hash, &self.shift, w)
    }
}

fn fold(hash: &[u64], shift: &[u64], w: &[Letter]) -> (u64, u64) {
    w.iter().fold((0, 1), |(h, p), &x| {
        let x = x as usize;
        ((mul_mod(h, shift[x]) + hash[x]) % MODULUS, mul_mod(p, shift[x]))
    })
}

/// Streams the letters of `φ^depth(word)` without materialising it.
struct Expansion<'a> {
    sub: &'a Substitution,
    stack: Vec<(&'a [Letter], usize)>,
}

impl<'a> Expansion<'a> {
    fn new(sub: &'a Substitution, word: &'a [Letter], depth: usize) -> Self {
        Expansion { sub, stack: vec![(word, depth)] }
    }
}

impl Iterator for Expansion<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        loop {
            let (slice, depth) = self.stack.last_mut()?;
            let Some((&x, rest)) = slice.split_first() else {
                self.stack.pop();
                continue;
            };
            *slice = rest;
            if *depth == 0 {
                return Some(x);
            }
            let d = *depth - 1;
            self.stack.push((self.sub.image(x), d));
        }
    }
}
