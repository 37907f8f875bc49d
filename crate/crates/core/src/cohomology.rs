//! First Čech cohomology of the tiling space, by three routes:
//!
//! * **Barge–Diamond**: `lim M_φᵀ / Zᵏ ⊕ Zˡ`, where `k + 1` and `l` are the
//!   number of components and the first Betti number of the eventual range.
//! * **Anderson–Putnam**: the map induced on `H¹` of the modified
//!   Anderson–Putnam complex by the collared substitution.
//! * **Properisation**: `lim M_ψᵀ` for the substitution `ψ` induced on
//!   return words.
//!
//! Each route yields a [`CohomologyPresentation`]; the direct limits are
//! kept as presentations and only their ranks are evaluated.

use std::fmt;

use crate::complexes::{anderson_putnam_from, eventual_range_from, EventualRange};
use crate::error::{Error, Result};
use crate::exact::{integer_kernel_basis, solve_in_basis_integer};
use crate::language::{admitted_words_unchecked, require_primitive, WordSet};
use crate::matrix::IntegerMatrix;
use crate::recognisability::{fixed_letter, is_recognisable, return_words_unchecked, FixedLetter};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BargeDiamond,
    AndersonPutnam,
    Properisation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BargeDiamond => "Barge-Diamond",
            Method::AndersonPutnam => "Anderson-Putnam",
            Method::Properisation => "Properisation",
        })
    }
}

/// A presentation of `Ȟ¹` as a direct limit of an integer matrix, possibly
/// with a free quotient `Zᵏ` and a free summand `Zˡ` (Barge–Diamond only).
///
/// For the Barge–Diamond route `matrix` is `M_φ` and the limit is taken of
/// its transpose. For the other two routes `matrix` is already the map on
/// cohomology and the limit is taken of it directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyPresentation {
    pub method: Method,
    pub matrix: IntegerMatrix,
    pub quotient_rank: usize,
    pub free_rank: usize,
    pub rank: usize,
}

impl CohomologyPresentation {
    fn new(method: Method, matrix: IntegerMatrix, quotient_rank: usize, free_rank: usize) -> Self {
        let mut p = CohomologyPresentation { method, matrix, quotient_rank, free_rank, rank: 0 };
        p.rank = cohomology_rank(&p);
        p
    }

    /// Plain-text form, e.g. `lim M^T / Z^1 ⊕ Z^2`.
    pub fn render(&self) -> String {
        let base = match self.method {
            Method::BargeDiamond => "lim M^T",
            Method::AndersonPutnam => "lim M_AP",
            Method::Properisation => "lim M_psi^T",
        };
        let mut out = base.to_string();
        if self.quotient_rank > 0 {
            out.push_str(&format!(" / Z^{}", self.quotient_rank));
        }
        if self.free_rank > 0 {
            out.push_str(&format!(" ⊕ Z^{}", self.free_rank));
        }
        out
    }

    /// LaTeX math for the Barge–Diamond group, e.g. `\varinjlim M^T \oplus \mathbb{Z}^1`.
    pub fn render_latex(&self) -> String {
        let mut out = String::from("\\varinjlim M^T");
        if self.quotient_rank > 0 {
            out.push_str(&format!(" / \\mathbb{{Z}}^{}", self.quotient_rank));
        }
        if self.free_rank > 0 {
            out.push_str(&format!(" \\oplus \\mathbb{{Z}}^{}", self.free_rank));
        }
        out
    }
}

/// Rank of the presented group: `stable_rank(M) − k + l`.
pub fn cohomology_rank(p: &CohomologyPresentation) -> usize {
    (p.matrix.stable_rank() + p.free_rank)
        .checked_sub(p.quotient_rank)
        .expect("quotient rank cannot exceed the rank of the limit")
}

fn require_primitive_recognisable(s: &Substitution) -> Result<()> {
    require_primitive(s)?;
    if !is_recognisable(s)? {
        return Err(Error::NotRecognisable);
    }
    Ok(())
}

/// Barge–Diamond presentation read off the eventual range.
pub fn bd_cohomology(s: &Substitution) -> Result<CohomologyPresentation> {
    require_primitive_recognisable(s)?;
    let two = admitted_words_unchecked(s, 2);
    Ok(bd_from_range(s, &eventual_range_from(s, &two)))
}

fn bd_from_range(s: &Substitution, er: &EventualRange) -> CohomologyPresentation {
    CohomologyPresentation::new(
        Method::BargeDiamond,
        s.matrix(),
        er.component_count.saturating_sub(1),
        er.first_betti,
    )
}

/// Image of the Anderson–Putnam edge `ijk` under the collared substitution:
/// with `φ(j) = a₁…a_L`, the edges `[r(i)a₁a₂], [a₁a₂a₃], …, [a_{L−1}a_L l(k)]`,
/// or the single edge `[r(i) a₁ l(k)]` when `L = 1`.
pub fn collared_substitution_edge(s: &Substitution, edge: &Word) -> Result<Vec<Word>> {
    require_primitive(s)?;
    let three = admitted_words_unchecked(s, 3);
    if edge.len() != 3 || !three.contains(edge) {
        return Err(Error::EdgeNotAdmitted(edge.to_string()));
    }
    Ok(collared_image(s, edge))
}

pub(crate) fn collared_image(s: &Substitution, edge: &Word) -> Vec<Word> {
    let mut collared = Vec::with_capacity(s.image(edge[1]).len() + 2);
    collared.push(s.last_of(edge[0]));
    collared.extend_from_slice(s.image(edge[1]));
    collared.push(s.first_of(edge[2]));
    collared.windows(3).map(Word::from).collect()
}

/// Intermediate data of the Anderson–Putnam computation.
#[derive(Debug, Clone)]
pub struct ApCycleData {
    pub vertices: WordSet,
    pub edges: WordSet,
    /// Rows indexed by vertices, columns by edges; edge `abc` has boundary `bc − ab`.
    pub boundary: Vec<Vec<i64>>,
    /// Integer basis of the cycle space `ker B`.
    pub generators: Vec<Vec<i64>>,
    /// Each generator pushed through the collared substitution.
    pub images: Vec<Vec<i64>>,
    /// Column `j` holds the coordinates of `images[j]` in the generator basis.
    pub homology_matrix: IntegerMatrix,
}

/// Runs the Anderson–Putnam computation and keeps the intermediate data.
pub fn ap_cycle_data(s: &Substitution) -> Result<ApCycleData> {
    let two = admitted_words_unchecked(s, 2);
    let three = admitted_words_unchecked(s, 3);
    let complex = anderson_putnam_from(&two, &three);

    let mut boundary = vec![vec![0i64; three.len()]; two.len()];
    for (j, e) in complex.edges.iter().enumerate() {
        boundary[e.target][j] += 1;
        boundary[e.source][j] -= 1;
    }
    let generators = integer_kernel_basis(&boundary, three.len());

    let edge_images: Vec<Vec<usize>> = three
        .iter()
        .map(|e| {
            collared_image(s, e)
                .iter()
                .map(|w| three.index_of(w).ok_or_else(|| Error::EdgeNotAdmitted(w.to_string())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let images: Vec<Vec<i64>> = generators
        .iter()
        .map(|g| {
            let mut v = vec![0i64; three.len()];
            for (e, &coeff) in g.iter().enumerate() {
                if coeff != 0 {
                    for &target in &edge_images[e] {
                        v[target] += coeff;
                    }
                }
            }
            v
        })
        .collect();

    let r = generators.len();
    let mut homology_matrix = IntegerMatrix::zeros(r);
    for (j, image) in images.iter().enumerate() {
        let coords = solve_in_basis_integer(&generators, image).ok_or(Error::BasisSolveFailure)?;
        for (i, c) in coords.into_iter().enumerate() {
            homology_matrix[(i, j)] = c;
        }
    }
    Ok(ApCycleData { vertices: two, edges: three, boundary, generators, images, homology_matrix })
}

/// Anderson–Putnam presentation: the transpose of the induced map on
/// homology of the modified Anderson–Putnam complex.
///
/// The cycle basis is an exact integer kernel basis, so the matrix agrees
/// with other choices only up to conjugation in `GL(R, Z)`.
pub fn ap_cohomology(s: &Substitution) -> Result<CohomologyPresentation> {
    require_primitive_recognisable(s)?;
    let data = ap_cycle_data(s)?;
    Ok(CohomologyPresentation::new(Method::AndersonPutnam, data.homology_matrix.transpose(), 0, 0))
}

/// The substitution induced on return words and its proper versions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Properisation {
    pub fixed: FixedLetter,
    /// Return words; the `i`-th becomes the letter `i` of the new alphabet.
    pub return_alphabet: Vec<Word>,
    pub pre_left_proper: Substitution,
    pub left_power: usize,
    pub left_proper: Substitution,
    pub right_conjugate: Substitution,
    pub full_proper: Substitution,
}

/// Splits `w` before every occurrence of `f`. `w` must start with `f`.
fn split_at_letter(w: &Word, f: Letter) -> Vec<Word> {
    let mut parts: Vec<Word> = Vec::new();
    for &x in w.iter() {
        if x == f || parts.is_empty() {
            parts.push(Word::empty());
        }
        parts.last_mut().unwrap().push(x);
    }
    parts
}

/// Computes the pre-left properisation `ψ` on return words to the fixed
/// letter, its least left proper power `ψⁱ`, the right conjugate of `ψⁱ`, and
/// the full properisation `x ↦ ψⁱ((ψⁱ)^(R)(x))`.
pub fn properise(s: &Substitution) -> Result<Properisation> {
    require_primitive(s)?;
    let fixed = fixed_letter(s);
    let rw = return_words_unchecked(s, fixed.letter);
    if rw.is_empty() {
        // a ↦ a admits no two-letter word, so nothing returns to f
        return Err(Error::NotRecognisable);
    }

    let mut images = Vec::with_capacity(rw.len());
    for v in &rw.words {
        let image = s.iterate_n(v, fixed.order);
        let letters = split_at_letter(&image, fixed.letter)
            .into_iter()
            .map(|seg| {
                rw.index_of(&seg)
                    .map(|i| i as Letter)
                    .ok_or_else(|| Error::DecompositionFailure(seg.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(Word::new(letters));
    }
    let pre_left_proper = Substitution::new(images)?;

    let cap = 2 * rw.len() * rw.len();
    let mut left_power = 1;
    let mut left_proper = pre_left_proper.clone();
    while !left_proper.is_left_proper() {
        left_power += 1;
        if left_power > cap {
            return Err(Error::LeftPowerNotFound(cap));
        }
        left_proper = left_proper.compose(&pre_left_proper)?;
    }

    let right_conjugate = right_conjugate(&left_proper);
    let full_proper = left_proper.compose(&right_conjugate)?;
    Ok(Properisation {
        fixed,
        return_alphabet: rw.words,
        pre_left_proper,
        left_power,
        left_proper,
        right_conjugate,
        full_proper,
    })
}

/// The right conjugate of a left proper substitution: `a·w_b ↦ w_b·a`.
pub fn right_conjugate(left_proper: &Substitution) -> Substitution {
    let images = left_proper
        .images()
        .iter()
        .map(|w| {
            let mut letters = w[1..].to_vec();
            letters.push(w[0]);
            Word::new(letters)
        })
        .collect();
    Substitution::new(images).expect("rotation preserves the letters used")
}

/// Properisation presentation: `lim M_ψᵀ`, reported as the matrix `M_ψᵀ`.
pub fn properisation_cohomology(s: &Substitution) -> Result<CohomologyPresentation> {
    require_primitive_recognisable(s)?;
    let p = properise(s)?;
    Ok(CohomologyPresentation::new(
        Method::Properisation,
        p.pre_left_proper.matrix().transpose(),
        0,
        0,
    ))
}

/// All three presentations, computed after a single precondition check.
pub fn all_cohomology(s: &Substitution) -> Result<[CohomologyPresentation; 3]> {
    require_primitive_recognisable(s)?;
    let two = admitted_words_unchecked(s, 2);
    let bd = bd_from_range(s, &eventual_range_from(s, &two));
    let ap = CohomologyPresentation::new(
        Method::AndersonPutnam,
        ap_cycle_data(s)?.homology_matrix.transpose(),
        0,
        0,
    );
    let proper = CohomologyPresentation::new(
        Method::Properisation,
        properise(s)?.pre_left_proper.matrix().transpose(),
        0,
        0,
    );
    Ok([bd, ap, proper])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::poly_to_i64;
    use crate::substitution::examples::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_letters(s).unwrap()
    }

    fn strings(ws: &[Word]) -> Vec<String> {
        ws.iter().map(Word::to_string).collect()
    }

    #[test]
    fn barge_diamond_presentations() {
        let fib = bd_cohomology(&sub(FIBONACCI)).unwrap();
        assert_eq!((fib.quotient_rank, fib.free_rank, fib.rank), (0, 0, 2));
        assert_eq!(fib.render(), "lim M^T");

        let tm = bd_cohomology(&sub(THUE_MORSE)).unwrap();
        assert_eq!((tm.quotient_rank, tm.free_rank, tm.rank), (0, 1, 2));
        assert_eq!(tm.render(), "lim M^T ⊕ Z^1");
        assert_eq!(tm.render_latex(), "\\varinjlim M^T \\oplus \\mathbb{Z}^1");

        let dis = bd_cohomology(&sub(DISCONNECTED)).unwrap();
        assert_eq!((dis.quotient_rank, dis.free_rank, dis.rank), (1, 0, 3));
        assert_eq!(dis.render(), "lim M^T / Z^1");
    }

    #[test]
    fn gating() {
        assert_eq!(bd_cohomology(&sub("a.b")), Err(Error::NotPrimitive));
        assert_eq!(bd_cohomology(&sub("ab.ab")), Err(Error::NotRecognisable));
        assert_eq!(ap_cohomology(&sub("aa")), Err(Error::NotRecognisable));
        assert_eq!(properisation_cohomology(&sub("ab.ab")), Err(Error::NotRecognisable));
    }

    #[test]
    fn collared_edges() {
        let fib = sub(FIBONACCI);
        assert_eq!(strings(&collared_substitution_edge(&fib, &w("bab")).unwrap()), ["abb"]);
        assert_eq!(strings(&collared_substitution_edge(&fib, &w("aba")).unwrap()), ["bba", "bab"]);
        let tri = sub(TRIBONACCI);
        assert_eq!(strings(&collared_substitution_edge(&tri, &w("aab")).unwrap()), ["bab", "aba"]);
        assert_eq!(
            collared_substitution_edge(&fib, &w("aaa")),
            Err(Error::EdgeNotAdmitted("aaa".into()))
        );
    }

    #[test]
    fn anderson_putnam_char_polys() {
        let fib = ap_cohomology(&sub(FIBONACCI)).unwrap();
        assert_eq!(fib.matrix.dim(), 2);
        assert_eq!(poly_to_i64(&fib.matrix.char_poly()).unwrap(), [1, -1, -1]);
        let tm = ap_cohomology(&sub(THUE_MORSE)).unwrap();
        assert_eq!(poly_to_i64(&tm.matrix.char_poly()).unwrap(), [1, -1, -2, 0]);
        let tri = ap_cohomology(&sub(TRIBONACCI)).unwrap();
        assert_eq!(tri.matrix.det(), 1.into());
        assert_eq!(tri.matrix.trace(), 1);
    }

    #[test]
    fn properisations() {
        let tri = properise(&sub(TRIBONACCI)).unwrap();
        assert_eq!(tri.pre_left_proper, sub("b.bc.ba"));
        assert_eq!(tri.left_power, 1);
        assert_eq!(tri.full_proper, sub("bc.babc.bbc"));

        let tm = properise(&sub(THUE_MORSE)).unwrap();
        assert_eq!(strings(&tm.return_alphabet), ["a", "ab", "abb"]);
        assert_eq!(tm.pre_left_proper, sub("b.ca.cba"));
        assert_eq!(tm.left_power, 2);
        assert_eq!(tm.left_proper, sub("ca.cbab.cbacab"));
        assert_eq!(
            tm.full_proper,
            sub("cacbacab.cbabcacbabcbacab.cbabcacbacabcacbabcbacab")
        );
        assert!(tm.right_conjugate.is_right_proper());
        assert!(tm.full_proper.is_left_proper() && tm.full_proper.is_right_proper());

        let fib = properise(&sub(FIBONACCI)).unwrap();
        assert_eq!(fib.pre_left_proper, sub("b.ba"));
        assert_eq!(fib.right_conjugate, sub("b.ab"));
        assert_eq!(fib.full_proper, sub("ba.bba"));
    }

    #[test]
    fn properisation_matrices() {
        let tm = properisation_cohomology(&sub(THUE_MORSE)).unwrap();
        let printed = IntegerMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(tm.matrix, printed.transpose());
        assert_eq!(tm.rank, 2);
        let tri = properisation_cohomology(&sub(TRIBONACCI)).unwrap();
        assert_eq!(tri.rank, 3);
        assert_eq!(properisation_cohomology(&sub(HEXIBONACCI)).unwrap().rank, 6);
    }

    #[test]
    fn rank_formula() {
        let p = CohomologyPresentation::new(Method::BargeDiamond, IntegerMatrix::identity(1), 0, 0);
        assert_eq!(cohomology_rank(&p), 1);
    }
}
