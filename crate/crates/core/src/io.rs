//! Save files, TikZ rendering of strips and complexes, and the LaTeX report.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::cohomology::{all_cohomology, properise, CohomologyPresentation, Properisation};
use crate::complexes::{anderson_putnam, barge_diamond, eventual_range, Complex, ComplexKind, EventualRange, Vertex};
use crate::error::{Error, Result};
use crate::language::{complexity, require_primitive};
use crate::matrix::IntegerMatrix;
use crate::recognisability::{fixed_letter, is_recognisable, return_words, FixedLetter, ReturnWordSet};
use crate::spectral::{eigenvalues, is_primitive, pf_data, report_eigenvalues, PfData, ReportedEigenvalue};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

/// Tile colours for the letters `a` to `f`.
pub const PALETTE: [&str; 6] = ["red", "blue", "green", "magenta", "brown", "cyan"];

/// Colour used once the palette runs out; such tiles also carry a label.
pub const FALLBACK_COLOUR: &str = "gray";

const TILE: f64 = 0.5;
const RADIUS: f64 = 2.0;

/// Largest `n` in the complexity table of a report.
pub const COMPLEXITY_TABLE_LENGTH: usize = 10;

/// Tiles drawn in the strip of a report.
pub const REPORT_STRIP_LENGTH: usize = 20;

pub fn letter_colour(letter: Letter) -> &'static str {
    PALETTE.get(letter as usize).copied().unwrap_or(FALLBACK_COLOUR)
}

/// A word in LaTeX math mode; letters past `z` become `\langle n\rangle`.
pub fn latex_word(w: &Word) -> String {
    let mut out = String::new();
    for &x in w.iter() {
        if x < 26 {
            out.push(char::from(b'a' + x));
        } else {
            let _ = write!(out, "\\langle {x}\\rangle ");
        }
    }
    out
}

fn node_letter(x: Letter) -> String {
    if x < 26 {
        char::from(b'a' + x).to_string()
    } else {
        format!("x{x}")
    }
}

fn coord(v: f64) -> String {
    let v = if v.abs() < 5e-7 { 0.0 } else { v };
    format!("{v:.6}")
}

// ---------------------------------------------------------------------------
// save files

/// A named substitution in a save file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaveEntry {
    pub name: String,
    pub substitution: Substitution,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses a save file: one `name = encoded` pair per line. Text after `#`
/// is a comment and blank lines are ignored. Names are made of ASCII letters,
/// digits, `_` and `-` and must be unique.
pub fn parse_save_file(text: &str) -> Result<Vec<SaveEntry>> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::SaveFile { line, message };
        let (name, encoded) =
            content.split_once('=').ok_or_else(|| err("expected `name = substitution`".into()))?;
        let name = name.trim();
        if !valid_name(name) {
            return Err(err(format!("invalid name {name:?}")));
        }
        if !seen.insert(name.to_string()) {
            return Err(err(format!("duplicate name {name:?}")));
        }
        let substitution = Substitution::parse(encoded).map_err(|e| err(e.to_string()))?;
        entries.push(SaveEntry { name: name.to_string(), substitution });
    }
    Ok(entries)
}

pub fn write_save_file(entries: &[SaveEntry]) -> String {
    entries.iter().map(|e| format!("{} = {}\n", e.name, e.substitution.encode())).collect()
}

// ---------------------------------------------------------------------------
// strips

/// The first `count` letters of `φᵐ(f)`, for the fixed letter `f` and the
/// least `m` with `|φᵐ(f)| ≥ count`.
pub fn strip_letters(s: &Substitution, count: usize) -> Result<Word> {
    require_primitive(s)?;
    if count == 0 {
        return Err(Error::ZeroLength);
    }
    let f = fixed_letter(s);
    let mut w = Word::single(f.letter);
    while w.len() < count {
        let next = s.iterate(&w);
        if next.len() == w.len() {
            // a ↦ a: the tiling is a single repeated tile
            w = Word::new(vec![f.letter; count]);
            break;
        }
        w = next;
    }
    Ok(Word::from(&w[..count]))
}

/// A row of `count` coloured square tiles inside a thick border.
pub fn render_strip(s: &Substitution, count: usize) -> Result<String> {
    let letters = strip_letters(s, count)?;
    let mut out = String::from("\\begin{tikzpicture}\n");
    for (i, &x) in letters.iter().enumerate() {
        let left = i as f64 * TILE;
        let right = left + TILE;
        let _ = writeln!(out, "\\fill [{}] ({left:.1},0.0) rectangle ({right:.1},{TILE:.1});", letter_colour(x));
        if x as usize >= PALETTE.len() {
            let centre = left + TILE / 2.0;
            let _ = writeln!(out, "\\node at ({centre:.2},0.25) {{\\tiny ${}$}};", latex_word(&Word::single(x)));
        }
    }
    let width = letters.len() as f64 * TILE;
    let _ = writeln!(out, "\\draw[ultra thick] (0,0) rectangle ({width},{TILE});");
    out.push_str("\\end{tikzpicture}\n");
    Ok(out)
}

// ---------------------------------------------------------------------------
// complexes

/// TikZ code for a complex. Barge–Diamond complexes and eventual ranges put
/// `v_a⁺, v_a⁻, v_b⁺, …` counterclockwise on a circle from angle 0; the
/// Anderson–Putnam complex spaces its vertices evenly on a circle.
pub fn render_complex(c: &Complex) -> String {
    if c.vertices.is_empty() {
        return "\\begin{tikzpicture}\n\\end{tikzpicture}\n".to_string();
    }
    match c.kind {
        ComplexKind::BargeDiamond | ComplexKind::EventualRange => render_in_out(c),
        ComplexKind::AndersonPutnam => render_collared(c),
    }
}

const NODE_STYLE: &str = "fill,circle,draw,inner sep = 0pt, outer sep = 0pt, minimum size=2mm";

fn render_in_out(c: &Complex) -> String {
    let slots = c
        .vertices
        .iter()
        .filter_map(|v| match v {
            Vertex::In(x) | Vertex::Out(x) => Some(2 * (*x as usize + 1)),
            Vertex::Collar(_) => None,
        })
        .max()
        .unwrap_or(0);
    let name = |v: &Vertex| match v {
        Vertex::In(x) => format!("{}i", node_letter(*x)),
        Vertex::Out(x) => format!("{}o", node_letter(*x)),
        Vertex::Collar(w) => w.to_string(),
    };
    let mut out = String::from("\\begin{tikzpicture}[->, node distance=2cm, auto]\n");
    for v in &c.vertices {
        let slot = match v {
            Vertex::In(x) => 2 * *x as usize,
            Vertex::Out(x) => 2 * *x as usize + 1,
            Vertex::Collar(_) => 0,
        };
        let angle = 2.0 * PI * slot as f64 / slots as f64;
        let _ = writeln!(
            out,
            "\\node [{NODE_STYLE}] ({}) at ({},{}) {{}};",
            name(v),
            coord(RADIUS * angle.cos()),
            coord(RADIUS * angle.sin())
        );
    }
    for e in &c.edges {
        let (src, dst) = (name(&c.vertices[e.source]), name(&c.vertices[e.target]));
        let label = latex_word(&e.label);
        if e.label.len() == 1 {
            let _ = writeln!(
                out,
                "\\draw ({src}) edge[bend right=110, looseness=3, ->, {}, ultra thick] node {{${label}$}}({dst});",
                letter_colour(e.label[0])
            );
            continue;
        }
        let _ = writeln!(
            out,
            "\\draw [-,ultra thick, bend right, draw=white, line width=6pt, looseness=0.7] ({src}) to ({dst});"
        );
        if e.label[0] == e.label[1] {
            let _ = writeln!(out, "\\draw [->,ultra thick, bend left, looseness=0.7] ({src}) to node {{${label}$}} ({dst});");
        } else {
            let _ = writeln!(
                out,
                "\\draw [->,ultra thick, bend right, looseness=0.7, swap] ({src}) to node {{${label}$}} ({dst});"
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

fn render_collared(c: &Complex) -> String {
    let n = c.vertices.len();
    let mut out = String::from("\\begin{tikzpicture}[->, node distance=2cm, auto]\n");
    for (i, v) in c.vertices.iter().enumerate() {
        let label = match v {
            Vertex::Collar(w) => latex_word(w),
            Vertex::In(x) | Vertex::Out(x) => latex_word(&Word::single(*x)),
        };
        let angle = 2.0 * PI * i as f64 / n as f64;
        let _ = writeln!(
            out,
            "\\node [{NODE_STYLE}, label={{${label}$}}] (v{i}) at ({},{}) {{}};",
            coord(RADIUS * angle.cos()),
            coord(RADIUS * angle.sin())
        );
    }
    for e in &c.edges {
        let label = latex_word(&e.label);
        if e.source == e.target {
            let _ = writeln!(
                out,
                "\\draw [->,thick] (v{0}) edge[loop above] node {{${label}$}} (v{0});",
                e.source
            );
        } else {
            let _ = writeln!(
                out,
                "\\draw [->,thick, bend left=15] (v{}) to node {{${label}$}} (v{});",
                e.source, e.target
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

// ---------------------------------------------------------------------------
// report

/// A report section that is either computed or skipped with a reason.
pub type Gated<T> = std::result::Result<T, String>;

fn gate<T>(r: Result<T>) -> Gated<T> {
    r.map_err(|e| e.to_string())
}

/// Everything the report shows about one substitution.
#[derive(Debug, Clone)]
pub struct Report {
    pub substitution: Substitution,
    pub matrix: IntegerMatrix,
    pub primitive: bool,
    pub eigenvalues: Gated<Vec<ReportedEigenvalue>>,
    pub pf: Gated<PfData>,
    pub fixed: FixedLetter,
    pub return_words: Gated<ReturnWordSet>,
    pub recognisable: Gated<bool>,
    /// `(n, p(n))` for `n = 1..=COMPLEXITY_TABLE_LENGTH`.
    pub complexity: Gated<Vec<(usize, usize)>>,
    pub barge_diamond: Gated<Complex>,
    pub anderson_putnam: Gated<Complex>,
    pub eventual_range: Gated<EventualRange>,
    pub properisation: Gated<Properisation>,
    pub cohomology: Gated<[CohomologyPresentation; 3]>,
    pub strip: Gated<String>,
}

impl Report {
    /// Computes every section, recording a skip reason where a
    /// precondition fails.
    pub fn compute(s: &Substitution) -> Report {
        let matrix = s.matrix();
        let primitive = is_primitive(&matrix).unwrap_or(false);
        let recognisable = gate(is_recognisable(s));
        let proper_gate = match &recognisable {
            Ok(true) => Ok(()),
            Ok(false) => Err(Error::NotRecognisable.to_string()),
            Err(e) => Err(e.clone()),
        };
        let fixed = fixed_letter(s);
        Report {
            substitution: s.clone(),
            primitive,
            eigenvalues: gate(eigenvalues(&matrix).map(|v| report_eigenvalues(&v))),
            pf: gate(pf_data(&matrix)),
            fixed,
            return_words: gate(return_words(s, fixed)),
            complexity: gate(
                (1..=COMPLEXITY_TABLE_LENGTH).map(|n| complexity(s, n).map(|p| (n, p))).collect(),
            ),
            barge_diamond: gate(barge_diamond(s)),
            anderson_putnam: gate(anderson_putnam(s)),
            eventual_range: gate(eventual_range(s)),
            properisation: proper_gate.clone().and_then(|_| gate(properise(s))),
            cohomology: proper_gate.and_then(|_| gate(all_cohomology(s))),
            strip: gate(render_strip(s, REPORT_STRIP_LENGTH)),
            recognisable,
            matrix,
        }
    }

    /// Rank of the first cohomology, when computed.
    pub fn rank(&self) -> Option<usize> {
        self.cohomology.as_ref().ok().map(|c| c[0].rank)
    }
}

pub fn format_eigenvalue(e: &ReportedEigenvalue) -> String {
    if e.complex_pair {
        format!("{:.2} (complex pair, modulus)", e.value)
    } else {
        format!("{:.2}", e.value)
    }
}

pub fn join_words(words: &[Word]) -> String {
    words.iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
}

/// A matrix as a parenthesised LaTeX array inside `equation*`.
pub fn latex_matrix(m: &IntegerMatrix) -> String {
    if m.dim() == 0 {
        return "\\begin{equation*} () \\end{equation*}\n".to_string();
    }
    let mut out = format!("\\begin{{equation*}} \\left( \\begin{{array}}{{{}}}\n", "c".repeat(m.dim()));
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(" & "));
        out.push_str("\\\\");
    }
    out.push_str(" \\end{array} \\right)\n\\end{equation*}\n");
    out
}

/// A substitution as an aligned LaTeX array `a ↦ …`, coloured by letter
/// when the palette covers the alphabet.
pub fn latex_substitution(s: &Substitution, coloured: bool) -> String {
    let paint = |w: &Word| -> String {
        if !coloured {
            return latex_word(w);
        }
        w.iter()
            .map(|&x| format!("\\color{{{}}}{}", letter_colour(x), latex_word(&Word::single(x))))
            .collect()
    };
    let mut out = String::from("\\[\\begin{array}{rll}\n");
    let rows: Vec<String> = s
        .letters()
        .map(|x| format!("{} & \\mapsto & {}", paint(&Word::single(x)), paint(s.image(x))))
        .collect();
    out.push_str(&rows.join("\\\\\n"));
    out.push_str("\n\\end{array}\\]\n");
    out
}

fn skipped(heading: &str, reason: &str) -> String {
    format!("{heading} : skipped: {reason}\n\n")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

/// A standalone LaTeX document laying out the report.
pub fn export_report(r: &Report) -> String {
    let mut out = String::new();
    out.push_str("\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\usepackage{xcolor}\n");
    out.push_str("\\usepackage{tikz}\n\\begin{document}\n\\begin{center}\n\n");

    let coloured = r.substitution.alphabet_size() <= PALETTE.len();
    out.push_str(&latex_substitution(&r.substitution, coloured));
    out.push_str("\n\\vspace{5mm}\n\n");

    let _ = writeln!(out, "Primitive: {}\n", yes_no(r.primitive));
    out.push_str("Substitution Matrix :\n\n");
    out.push_str(&latex_matrix(&r.matrix));
    out.push('\n');

    match &r.eigenvalues {
        Ok(values) => {
            let list: Vec<String> = values.iter().map(format_eigenvalue).collect();
            let _ = writeln!(out, "Eigenvalues : {}\n", list.join(", "));
        }
        Err(reason) => out.push_str(&skipped("Eigenvalues", reason)),
    }
    match &r.pf {
        Ok(pf) => {
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(", ");
            let _ = writeln!(out, "Perron-Frobenius Eigenvalue : {:.6}\n", pf.pf_eigenvalue);
            let _ = writeln!(out, "Tile Lengths : {}\n", fmt(&pf.tile_lengths));
            let _ = writeln!(out, "Letter Frequencies : {}\n", fmt(&pf.frequencies));
        }
        Err(reason) => out.push_str(&skipped("Perron-Frobenius Data", reason)),
    }

    let _ = writeln!(out, "Fixed Letter : {}\n", Word::single(r.fixed.letter));
    match &r.return_words {
        Ok(rw) => {
            let _ = writeln!(out, "Return Words : {}\n", join_words(&rw.words));
        }
        Err(reason) => out.push_str(&skipped("Return Words", reason)),
    }
    match &r.recognisable {
        Ok(b) => {
            let _ = writeln!(out, "Recognisable: {}\n", yes_no(*b));
        }
        Err(reason) => out.push_str(&skipped("Recognisable", reason)),
    }
    match &r.complexity {
        Ok(table) => {
            out.push_str("Complexity :\n\n\\begin{tabular}{c|");
            out.push_str(&"c".repeat(table.len()));
            out.push_str("}\n$n$");
            for (n, _) in table {
                let _ = write!(out, " & {n}");
            }
            out.push_str("\\\\\n\\hline\n$p(n)$");
            for (_, p) in table {
                let _ = write!(out, " & {p}");
            }
            out.push_str("\n\\end{tabular}\n\n");
        }
        Err(reason) => out.push_str(&skipped("Complexity", reason)),
    }

    match &r.properisation {
        Ok(p) => {
            out.push_str("Full Properisation :\n");
            out.push_str(&latex_substitution(&p.full_proper, false));
            out.push_str("\n\\vspace{5mm}\n\n");
        }
        Err(reason) => out.push_str(&skipped("Full Properisation", reason)),
    }
    match &r.cohomology {
        Ok([bd, ap, proper]) => {
            let _ = writeln!(out, "Barge Diamond Cohomology Group : ${}$\n", bd.render_latex());
            out.push_str("\\vspace{2mm}\n\nProperisation Cohomology Matrix :\n\n");
            out.push_str(&latex_matrix(&proper.matrix));
            out.push_str("\n\\vspace{2mm}\n\nAnderson-Putnam Cohomology Matrix :\n\n");
            out.push_str(&latex_matrix(&ap.matrix));
            let _ = writeln!(out, "\n\\vspace{{2mm}}\n\nCohomology Rank : {}\n", bd.rank);
        }
        Err(reason) => {
            for heading in [
                "Barge Diamond Cohomology Group",
                "Properisation Cohomology Matrix",
                "Anderson-Putnam Cohomology Matrix",
                "Cohomology Rank",
            ] {
                out.push_str(&skipped(heading, reason));
            }
        }
    }

    out.push_str("\\vspace{2mm}\n\n\\textbf{Barge-Diamond Complex}\n\n");
    match &r.barge_diamond {
        Ok(c) => out.push_str(&render_complex(c)),
        Err(reason) => out.push_str(&skipped("Barge-Diamond Complex", reason)),
    }
    out.push_str("\n\\vspace{2mm}\n\n\\textbf{Eventual Range}\n\n");
    match &r.eventual_range {
        Ok(er) => {
            let _ = writeln!(
                out,
                "Components : {}, First Betti Number : {}\n",
                er.component_count, er.first_betti
            );
            out.push_str(&render_complex(&er.complex()));
        }
        Err(reason) => out.push_str(&skipped("Eventual Range", reason)),
    }
    out.push_str("\n\\vspace{2mm}\n\n\\textbf{Anderson-Putnam Complex}\n\n");
    match &r.anderson_putnam {
        Ok(c) => out.push_str(&render_complex(c)),
        Err(reason) => out.push_str(&skipped("Anderson-Putnam Complex", reason)),
    }
    out.push_str("\n\\vspace{2mm}\n\n\\textbf{Tiling}\n\n");
    match &r.strip {
        Ok(strip) => out.push_str(strip),
        Err(reason) => out.push_str(&skipped("Tiling", reason)),
    }
    out.push_str("\n\\end{center}\n\\end{document}\n");
    out
}

// ---------------------------------------------------------------------------
// checks

/// Smoke check on generated LaTeX: `\begin`/`\end` pairs nest correctly,
/// braces balance, inline math delimiters pair up and no control characters
/// other than newline and tab occur.
pub fn check_latex(tex: &str) -> std::result::Result<(), String> {
    if let Some(c) = tex.chars().find(|c| c.is_control() && *c != '\n' && *c != '\t') {
        return Err(format!("control character {c:?}"));
    }
    let bytes = tex.as_bytes();
    let mut envs: Vec<String> = Vec::new();
    let mut depth = 0i64;
    let mut dollars = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => {
                let rest = &tex[i + 1..];
                for (keyword, opening) in [("begin{", true), ("end{", false)] {
                    if let Some(after) = rest.strip_prefix(keyword) {
                        let name = after.split('}').next().unwrap_or("").to_string();
                        if opening {
                            envs.push(name);
                        } else if envs.pop().as_deref() != Some(name.as_str()) {
                            return Err(format!("unbalanced \\end{{{name}}}"));
                        }
                    }
                }
                // skip the escaped character so `\{`, `\}`, `\$` and `\\` are literal
                i += 2;
                continue;
            }
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unmatched }".into());
                }
            }
            b'$' => dollars += 1,
            _ => {}
        }
        i += 1;
    }
    if let Some(open) = envs.pop() {
        return Err(format!("unclosed environment {open}"));
    }
    if depth != 0 {
        return Err("unmatched {".into());
    }
    if dollars % 2 != 0 {
        return Err("unpaired $".into());
    }
    Ok(())
}
