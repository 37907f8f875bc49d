//! The Barge–Diamond complex, the modified Anderson–Putnam complex and the
//! eventual range of the Barge–Diamond edge map.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;

use crate::error::Result;
use crate::language::{admitted_words_unchecked, require_primitive, WordSet};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    BargeDiamond,
    AndersonPutnam,
    EventualRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// In node `v⁺` of a letter.
    In(Letter),
    /// Out node `v⁻` of a letter.
    Out(Letter),
    /// Anderson–Putnam vertex labelled by a two-letter word.
    Collar(Word),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Word,
}

/// A finite directed multigraph with labelled vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub kind: ComplexKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Complex {
    pub fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|x| x == v)
    }

    /// Connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut uf = UnionFind::<usize>::new(n);
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        let labels: BTreeSet<usize> = (0..n).map(|v| uf.find(v)).collect();
        labels.len()
    }

    /// Rank of the first homology, `E − V + C`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }
}

fn barge_diamond_vertices(l: usize) -> Vec<Vertex> {
    (0..l as Letter).flat_map(|x| [Vertex::In(x), Vertex::Out(x)]).collect()
}

/// Builds the Barge–Diamond complex from the admitted two-letter words.
pub fn barge_diamond(s: &Substitution) -> Result<Complex> {
    require_primitive(s)?;
    let two = admitted_words_unchecked(s, 2);
    Ok(barge_diamond_from(s.alphabet_size(), &two))
}

pub(crate) fn barge_diamond_from(l: usize, two: &WordSet) -> Complex {
    let vertices = barge_diamond_vertices(l);
    // v_x⁺ sits at 2x, v_x⁻ at 2x + 1
    let mut edges: Vec<Edge> = (0..l)
        .map(|x| Edge { source: 2 * x, target: 2 * x + 1, label: Word::single(x as Letter) })
        .collect();
    edges.extend(two.iter().map(|w| Edge {
        source: 2 * w[0] as usize + 1,
        target: 2 * w[1] as usize,
        label: w.clone(),
    }));
    Complex { kind: ComplexKind::BargeDiamond, vertices, edges }
}

/// Builds the modified Anderson–Putnam complex: a vertex per admitted
/// two-letter word and an edge `ij → jk` per admitted word `ijk`.
pub fn anderson_putnam(s: &Substitution) -> Result<Complex> {
    require_primitive(s)?;
    let two = admitted_words_unchecked(s, 2);
    let three = admitted_words_unchecked(s, 3);
    Ok(anderson_putnam_from(&two, &three))
}

pub(crate) fn anderson_putnam_from(two: &WordSet, three: &WordSet) -> Complex {
    let vertices = two.iter().cloned().map(Vertex::Collar).collect();
    let edges = three
        .iter()
        .map(|w| Edge {
            source: two.index_of(&Word::from(&w[..2])).expect("factor of admitted word"),
            target: two.index_of(&Word::from(&w[1..])).expect("factor of admitted word"),
            label: w.clone(),
        })
        .collect();
    Complex { kind: ComplexKind::AndersonPutnam, vertices, edges }
}

/// The eventual range of the Barge–Diamond edge map `ij ↦ r(i) l(j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualRange {
    pub edges: WordSet,
    pub vertex_count: usize,
    pub component_count: usize,
    pub first_betti: usize,
}

impl EventualRange {
    /// The surviving edges as a subgraph of the Barge–Diamond complex,
    /// restricted to their endpoints.
    pub fn complex(&self) -> Complex {
        let mut vertices: BTreeSet<Vertex> = BTreeSet::new();
        for w in &self.edges {
            vertices.insert(Vertex::Out(w[0]));
            vertices.insert(Vertex::In(w[1]));
        }
        // keep the in/out interleaving of the full complex
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_by_key(|v| match v {
            Vertex::In(x) => 2 * *x as usize,
            Vertex::Out(x) => 2 * *x as usize + 1,
            Vertex::Collar(_) => usize::MAX,
        });
        let index = |v: &Vertex| vertices.iter().position(|x| x == v).unwrap();
        let edges = self
            .edges
            .iter()
            .map(|w| Edge {
                source: index(&Vertex::Out(w[0])),
                target: index(&Vertex::In(w[1])),
                label: w.clone(),
            })
            .collect();
        Complex { kind: ComplexKind::EventualRange, vertices, edges }
    }
}

/// The edge map on two-letter words: `ij ↦ (last letter of φ(i))(first letter of φ(j))`.
pub fn edge_map(s: &Substitution, w: &Word) -> Word {
    Word::new(vec![s.last_of(w[0]), s.first_of(w[1])])
}

/// Iterates the edge map on the admitted two-letter words until the size of
/// the image stops changing.
pub fn eventual_range(s: &Substitution) -> Result<EventualRange> {
    require_primitive(s)?;
    let two = admitted_words_unchecked(s, 2);
    Ok(eventual_range_from(s, &two))
}

pub(crate) fn eventual_range_from(s: &Substitution, two: &WordSet) -> EventualRange {
    let mut current = two.clone();
    loop {
        let image = WordSet::from_words(2, current.iter().map(|w| edge_map(s, w)));
        let stable = image.len() == current.len();
        current = image;
        if stable {
            break;
        }
    }
    let mut er = EventualRange { edges: current, vertex_count: 0, component_count: 0, first_betti: 0 };
    let complex = er.complex();
    er.vertex_count = complex.vertices.len();
    er.component_count = complex.component_count();
    er.first_betti = complex.first_betti();
    er
}
