//! Invariants checked on random substitutions against independent oracles.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use subtile::cohomology::{ap_cycle_data, collared_substitution_edge, properise};
use subtile::complexes::{anderson_putnam, barge_diamond, edge_map, eventual_range, Vertex};
use subtile::io::{check_latex, export_report, render_complex, Report};
use subtile::language::{admitted_words, complexity};
use subtile::recognisability::{fixed_letter, images_agree, is_recognisable, return_words};
use subtile::spectral::{eigenvalues, is_primitive, pf_data};
use subtile::{IntegerMatrix, Substitution, Word};

fn substitution(max_alphabet: usize, max_len: usize) -> impl Strategy<Value = Substitution> {
    (1..=max_alphabet)
        .prop_flat_map(move |l| {
            prop::collection::vec(prop::collection::vec(0..l as u8, 1..=max_len), l)
        })
        .prop_filter_map("every letter must occur", |images| {
            Substitution::new(images.into_iter().map(Word::new).collect()).ok()
        })
}

/// Primitive and growing, which rules out only `a ↦ a`.
fn primitive(max_alphabet: usize, max_len: usize) -> impl Strategy<Value = Substitution> {
    substitution(max_alphabet, max_len).prop_filter("primitive", |s| {
        is_primitive(&s.matrix()).unwrap() && s.images().iter().any(|w| w.len() > 1)
    })
}

fn primitive_recognisable(max_alphabet: usize, max_len: usize) -> impl Strategy<Value = Substitution> {
    primitive(max_alphabet, max_len).prop_filter("recognisable", |s| is_recognisable(s).unwrap())
}

/// Wielandt: a nonnegative `n × n` matrix is primitive iff its
/// `(n² − 2n + 2)`-th power is positive. Computed on the zero pattern.
fn wielandt_primitive(pattern: &[Vec<bool>]) -> bool {
    let n = pattern.len();
    let mut power = pattern.to_vec();
    for _ in 1..(n * n + 2 - 2 * n) {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).any(|k| power[i][k] && pattern[k][j]);
            }
        }
        power = next;
    }
    power.iter().flatten().all(|&x| x)
}

fn long_word(s: &Substitution, from: u8, min_len: usize) -> Word {
    let mut w = Word::single(from);
    while w.len() < min_len {
        w = s.iterate(&w);
    }
    w
}

#[test]
fn primitivity_matches_wielandt_on_all_small_patterns() {
    for n in 1..=4usize {
        for bits in 0u32..(1 << (n * n)) {
            let rows: Vec<Vec<i64>> =
                (0..n).map(|i| (0..n).map(|j| ((bits >> (i * n + j)) & 1) as i64).collect()).collect();
            let pattern: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect();
            let m = IntegerMatrix::from_rows(&rows).unwrap();
            assert_eq!(is_primitive(&m).unwrap(), wielandt_primitive(&pattern), "{rows:?}");
        }
    }
}

#[test]
fn primitivity_ignores_entry_sizes() {
    let a = IntegerMatrix::from_rows(&[vec![0, 3], vec![2, 5]]).unwrap();
    assert!(is_primitive(&a).unwrap());
    let b = IntegerMatrix::from_rows(&[vec![0, 7], vec![9, 0]]).unwrap();
    assert!(!is_primitive(&b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encode_parse_round_trip(s in substitution(6, 8)) {
        prop_assert_eq!(Substitution::parse(&s.encode()).unwrap(), s);
    }

    #[test]
    fn abelianisation(s in substitution(4, 5), w in prop::collection::vec(0u8..4, 0..12)) {
        let l = s.alphabet_size() as u8;
        let w = Word::new(w.into_iter().filter(|&x| x < l).collect());
        let counts = w.letter_counts(s.alphabet_size());
        prop_assert_eq!(
            s.matrix().apply(&counts).unwrap(),
            s.iterate(&w).letter_counts(s.alphabet_size())
        );
    }

    #[test]
    fn power_and_composition_multiply_matrices(s in substitution(3, 3), p in 1usize..4) {
        let m = s.matrix();
        prop_assert_eq!(s.power(p).unwrap().matrix(), m.pow(p as u32).unwrap());
        prop_assert_eq!(s.compose(&s).unwrap().matrix(), m.mul(&m).unwrap());
        let w = Word::single(0);
        prop_assert_eq!(s.power(p).unwrap().iterate(&w), s.iterate_n(&w, p));
    }

    #[test]
    fn eigenvalues_sum_to_trace_and_multiply_to_det(s in substitution(5, 4)) {
        let m = s.matrix();
        let values = eigenvalues(&m).unwrap();
        prop_assert_eq!(values.len(), m.dim());
        let sum: f64 = values.iter().map(|e| e.re).sum();
        let (mut re, mut im) = (1.0f64, 0.0f64);
        for e in &values {
            (re, im) = (re * e.re - im * e.im, re * e.im + im * e.re);
        }
        let trace = m.trace() as f64;
        let det: f64 = m.det().to_string().parse().unwrap();
        prop_assert!((sum - trace).abs() <= 1e-6 * trace.abs().max(1.0), "{} vs {}", sum, trace);
        prop_assert!((re - det).abs() <= 1e-6 * det.abs().max(1.0), "{} vs {}", re, det);
        prop_assert!(im.abs() <= 1e-6 * det.abs().max(1.0));
    }

    #[test]
    fn perron_frobenius_residuals(s in primitive(4, 5)) {
        let m = s.matrix();
        let pf = pf_data(&m).unwrap();
        let n = m.dim();
        let lambda = pf.pf_eigenvalue;
        for i in 0..n {
            let mr: f64 = (0..n).map(|j| m[(i, j)] as f64 * pf.frequencies[j]).sum();
            prop_assert!((mr - lambda * pf.frequencies[i]).abs() < 1e-8 * lambda);
            let lm: f64 = (0..n).map(|j| pf.tile_lengths[j] * m[(j, i)] as f64).sum();
            prop_assert!((lm - lambda * pf.tile_lengths[i]).abs() < 1e-8 * lambda * pf.tile_lengths[i]);
        }
        prop_assert!((pf.frequencies.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert_eq!(pf.tile_lengths.iter().copied().fold(f64::INFINITY, f64::min), 1.0);
    }

    #[test]
    fn language_matches_brute_force(s in primitive(4, 4)) {
        for n in 1..=6 {
            let ours: Vec<Word> = admitted_words(&s, n).unwrap().words().to_vec();
            prop_assert_eq!(&ours, &common::brute_force_factors(&s, n), "n = {}", n);
        }
    }

    #[test]
    fn language_is_factorial_and_extendable(s in primitive(4, 4)) {
        let mut previous = admitted_words(&s, 1).unwrap();
        for n in 2..=6 {
            let current = admitted_words(&s, n).unwrap();
            for w in &current {
                prop_assert!(previous.contains(&Word::from(&w[1..])));
                prop_assert!(previous.contains(&Word::from(&w[..n - 1])));
            }
            for w in &previous {
                prop_assert!(current.iter().any(|v| v[..n - 1] == w[..] || v[1..] == w[..]));
            }
            let (p, q) = (previous.len(), current.len());
            prop_assert!(p <= q && q <= s.alphabet_size() * p);
            previous = current;
        }
    }

    #[test]
    fn return_words_are_the_gaps_in_a_long_word(s in primitive(4, 4)) {
        let f = fixed_letter(&s);
        let rw = return_words(&s, f).unwrap();
        let w = long_word(&s.power(f.order).unwrap(), f.letter, 100_000);
        let positions: Vec<usize> = w.iter().enumerate().filter(|(_, &x)| x == f.letter).map(|(i, _)| i).collect();
        let gaps: BTreeSet<Word> = positions.windows(2).map(|p| Word::from(&w[p[0]..p[1]])).collect();
        let ours: BTreeSet<Word> = rw.words.iter().cloned().collect();
        prop_assert_eq!(ours, gaps);
        for v in &rw.words {
            prop_assert_eq!(v[0], f.letter);
            prop_assert_eq!(v.count(f.letter), 1);
            let mut vf = v.clone();
            vf.push(f.letter);
            prop_assert!(admitted_words(&s, vf.len()).unwrap().contains(&vf));
        }
    }

    #[test]
    fn recognisability_survives_squaring(s in primitive(3, 4)) {
        prop_assert_eq!(is_recognisable(&s).unwrap(), is_recognisable(&s.power(2).unwrap()).unwrap());
    }

    #[test]
    fn image_comparison_matches_expansion(
        s in substitution(3, 3),
        u in prop::collection::vec(0u8..3, 1..5),
        w in prop::collection::vec(0u8..3, 1..5),
        depth in 0usize..6,
    ) {
        let l = s.alphabet_size() as u8;
        let u = Word::new(u.into_iter().map(|x| x % l).collect());
        let w = Word::new(w.into_iter().map(|x| x % l).collect());
        let expected = s.iterate_n(&u, depth) == s.iterate_n(&w, depth);
        prop_assert_eq!(images_agree(&s, &u, &w, depth), expected);
        prop_assert!(images_agree(&s, &u, &u, depth));
    }

    #[test]
    fn complexes_have_the_expected_shape(s in primitive(4, 4)) {
        let two = complexity(&s, 2).unwrap();
        let three = complexity(&s, 3).unwrap();
        let l = s.alphabet_size();
        let bd = barge_diamond(&s).unwrap();
        prop_assert_eq!((bd.vertices.len(), bd.edges.len()), (2 * l, l + two));
        let ap = anderson_putnam(&s).unwrap();
        prop_assert_eq!((ap.vertices.len(), ap.edges.len()), (two, three));
        for e in &ap.edges {
            let (Vertex::Collar(src), Vertex::Collar(dst)) = (&ap.vertices[e.source], &ap.vertices[e.target]) else {
                panic!("non-collar vertex in an Anderson-Putnam complex");
            };
            prop_assert_eq!(&e.label[..2], &src[..]);
            prop_assert_eq!(&e.label[1..], &dst[..]);
        }
        prop_assert_eq!(render_complex(&bd), render_complex(&barge_diamond(&s).unwrap()));

        let er = eventual_range(&s).unwrap();
        let again: BTreeSet<Word> = er.edges.iter().map(|w| edge_map(&s, w)).collect();
        let edges: BTreeSet<Word> = er.edges.iter().cloned().collect();
        prop_assert_eq!(again, edges);
        prop_assert!(er.component_count >= 1);
        prop_assert_eq!(er.edges.len() + er.component_count, er.vertex_count + er.first_betti);
    }

    #[test]
    fn cycle_data_is_consistent(s in primitive_recognisable(4, 4)) {
        let data = ap_cycle_data(&s).unwrap();
        let ap = anderson_putnam(&s).unwrap();
        prop_assert_eq!(data.generators.len(), ap.first_betti());
        for cycle in data.generators.iter().chain(&data.images) {
            for row in &data.boundary {
                prop_assert_eq!(row.iter().zip(cycle).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
        for e in &data.edges {
            let image = collared_substitution_edge(&s, e).unwrap();
            prop_assert_eq!(image.len(), s.image(e[1]).len());
            for pair in image.windows(2) {
                prop_assert_eq!(&pair[0][1..], &pair[1][..2]);
            }
        }
    }

    #[test]
    fn properisation_is_consistent(s in primitive_recognisable(4, 4)) {
        let p = properise(&s).unwrap();
        let f = p.fixed;
        for (i, v) in p.return_alphabet.iter().enumerate() {
            let mut rebuilt = Word::empty();
            for &x in p.pre_left_proper.image(i as u8).iter() {
                rebuilt.extend_from(&p.return_alphabet[x as usize]);
            }
            prop_assert_eq!(rebuilt, s.iterate_n(v, f.order));
        }
        prop_assert!(p.left_proper.is_left_proper());
        prop_assert!(p.right_conjugate.is_right_proper());
        prop_assert!(p.full_proper.is_left_proper() && p.full_proper.is_right_proper());
        let m = p.pre_left_proper.matrix();
        prop_assert_eq!(p.left_proper.matrix(), m.pow(p.left_power as u32).unwrap());
        prop_assert_eq!(
            p.full_proper.matrix(),
            p.left_proper.matrix().mul(&p.right_conjugate.matrix()).unwrap()
        );
    }

    #[test]
    fn reports_are_balanced(s in substitution(4, 4)) {
        let tex = export_report(&Report::compute(&s));
        prop_assert!(check_latex(&tex).is_ok(), "{}", s);
    }
}
