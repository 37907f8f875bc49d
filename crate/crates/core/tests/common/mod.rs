#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use subtile::recognisability::is_recognisable;
use subtile::spectral::is_primitive;
use subtile::{Substitution, Word};

pub fn sub(text: &str) -> Substitution {
    Substitution::parse(text).unwrap()
}

pub fn word(text: &str) -> Word {
    Word::from_letters(text).unwrap()
}

/// A random valid substitution with `alphabet` letters and images of length
/// `1..=max_len`, or `None` when the draw misses a letter.
pub fn random_substitution(rng: &mut impl Rng, alphabet: usize, max_len: usize) -> Option<Substitution> {
    let images = (0..alphabet)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Word::new((0..len).map(|_| rng.gen_range(0..alphabet) as u8).collect())
        })
        .collect();
    Substitution::new(images).ok()
}

/// `count` distinct primitive recognisable substitutions on 2..=4 letters
/// with images of length at most 5, drawn from a fixed seed.
pub fn primitive_recognisable_sample(count: usize, seed: u64) -> Vec<Substitution> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<Substitution> = Vec::new();
    while out.len() < count {
        let alphabet = rng.gen_range(2..=4);
        let Some(s) = random_substitution(&mut rng, alphabet, 5) else { continue };
        if out.contains(&s) || !is_primitive(&s.matrix()).unwrap() {
            continue;
        }
        if is_recognisable(&s).unwrap() {
            out.push(s);
        }
    }
    out
}

/// Length-`n` factors of `φᵐ(a)` for the least `m` giving at least
/// 100 000 letters. `s` must grow.
pub fn brute_force_factors(s: &Substitution, n: usize) -> Vec<Word> {
    let mut w = Word::single(0);
    while w.len() < 100_000 {
        w = s.iterate(&w);
    }
    let set: std::collections::HashSet<&[u8]> = w.windows(n).collect();
    let mut words: Vec<Word> = set.into_iter().map(Word::from).collect();
    words.sort();
    words
}
