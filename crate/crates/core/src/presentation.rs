//! Homogeneous monoid presentations, Coxeter matrices and graph products.
//!
//! A presentation here is always *homogeneous*: every defining relation
//! equates two words of the same length. Equivalence classes of words are
//! then finite, the word problem is decidable by saturating a word under
//! relation rewrites in both directions, and the presented monoid is
//! graded by word length with trivial units. Artin presentations and
//! graph products are the two structured constructors; both record their
//! Coxeter matrix so that downstream certificates (for instance, proofs
//! that two principal ideals are disjoint) can point at a matrix entry.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::word::{alternating_product, Letter, Word};

/// Entry of a Coxeter matrix: the order `m(i,j)` of the product of two
/// reflections, with `Infinite` meaning no relation between the pair.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum CoxeterEntry {
    Finite(u32),
    Infinite,
}

impl CoxeterEntry {
    pub fn is_finite(self) -> bool {
        matches!(self, CoxeterEntry::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            CoxeterEntry::Finite(m) => Some(m),
            CoxeterEntry::Infinite => None,
        }
    }
}

impl fmt::Display for CoxeterEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoxeterEntry::Finite(m) => write!(f, "{m}"),
            CoxeterEntry::Infinite => write!(f, "inf"),
        }
    }
}

/// A symmetric matrix with unit diagonal and off-diagonal entries in
/// `{2, 3, …} ∪ {∞}`, determining an Artin presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterMatrix {
    n: usize,
    entries: Vec<CoxeterEntry>,
}

/// Violations of the Coxeter matrix shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterError {
    NotSquare { rows: usize, row: usize, len: usize },
    BadDiagonal { i: usize },
    NotSymmetric { i: usize, j: usize },
    OffDiagonalTooSmall { i: usize, j: usize, m: u32 },
}

impl fmt::Display for CoxeterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoxeterError::NotSquare { rows, row, len } => {
                write!(f, "row {row} has {len} entries, expected {rows}")
            }
            CoxeterError::BadDiagonal { i } => write!(f, "diagonal entry ({i},{i}) must be 1"),
            CoxeterError::NotSymmetric { i, j } => {
                write!(f, "entries ({i},{j}) and ({j},{i}) differ")
            }
            CoxeterError::OffDiagonalTooSmall { i, j, m } => {
                write!(f, "entry ({i},{j}) is {m}, off-diagonal entries must be at least 2")
            }
        }
    }
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<CoxeterEntry>>) -> Result<Self, CoxeterError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::NotSquare { rows: n, row: i, len: row.len() });
            }
        }
        let entries: Vec<CoxeterEntry> = rows.into_iter().flatten().collect();
        let m = CoxeterMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != CoxeterEntry::Finite(1) {
                return Err(CoxeterError::BadDiagonal { i });
            }
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(CoxeterError::NotSymmetric { i, j });
                }
                if let CoxeterEntry::Finite(v) = m.get(i, j) {
                    if v < 2 {
                        return Err(CoxeterError::OffDiagonalTooSmall { i, j, m: v });
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of the free monoid on `n` generators: all off-diagonal
    /// entries infinite.
    pub fn all_infinite(n: usize) -> Self {
        let mut m = CoxeterMatrix {
            n,
            entries: alloc::vec![CoxeterEntry::Infinite; n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = CoxeterEntry::Finite(1);
        }
        m
    }

    /// The dihedral matrix `I₂(m)` on two generators.
    pub fn dihedral(m: u32) -> Self {
        CoxeterMatrix::new(alloc::vec![
            alloc::vec![CoxeterEntry::Finite(1), CoxeterEntry::Finite(m)],
            alloc::vec![CoxeterEntry::Finite(m), CoxeterEntry::Finite(1)],
        ])
        .expect("dihedral matrix is well formed")
    }

    /// Matrix of the braid monoid on `strands` strands: `m = 3` for
    /// adjacent generators, `m = 2` otherwise.
    pub fn braid(strands: usize) -> Self {
        let n = strands.saturating_sub(1);
        let mut rows = alloc::vec![alloc::vec![CoxeterEntry::Finite(2); n]; n];
        for i in 0..n {
            rows[i][i] = CoxeterEntry::Finite(1);
            if i + 1 < n {
                rows[i][i + 1] = CoxeterEntry::Finite(3);
                rows[i + 1][i] = CoxeterEntry::Finite(3);
            }
        }
        CoxeterMatrix::new(rows).expect("braid matrix is well formed")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> CoxeterEntry {
        self.entries[i * self.n + j]
    }

    /// All off-diagonal entries lie in `{2, ∞}`.
    pub fn is_right_angled(&self) -> bool {
        self.offending_entry().is_none()
    }

    /// All off-diagonal entries equal 2, so the monoid is free abelian.
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| self.get(i, j) == CoxeterEntry::Finite(2))
        })
    }

    /// First entry (row-major, `i < j`) with `m ∉ {2, ∞}`, the witness
    /// pair for everything the classifier reports about a non
    /// right-angled matrix.
    pub fn offending_entry(&self) -> Option<(usize, usize, u32)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let CoxeterEntry::Finite(m) = self.get(i, j) {
                    if m != 2 {
                        return Some((i, j, m));
                    }
                }
            }
        }
        None
    }

    /// Submatrix on the given sorted generator subset.
    pub fn submatrix(&self, subset: &[usize]) -> CoxeterMatrix {
        let k = subset.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in subset {
            for &j in subset {
                entries.push(self.get(i, j));
            }
        }
        CoxeterMatrix { n: k, entries }
    }

    /// Matrix with rows and columns permuted by `perm` (new index `i`
    /// takes old index `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        self.submatrix(perm)
    }

    /// Compact one-line rendering, rows separated by `/`.
    pub fn display_rows(&self) -> String {
        use fmt::Write;
        let mut out = String::new();
        for i in 0..self.n {
            if i > 0 {
                out.push_str(" / ");
            }
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self.get(i, j));
            }
        }
        out
    }
}

/// Finite simplicial graph: vertex set `0..n` and a set of undirected
/// edges without loops. Vertices index the factors of a graph product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { vertex: usize, n: usize },
    Loop { vertex: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            GraphError::Loop { vertex } => write!(f, "loop at vertex {vertex} not allowed"),
        }
    }
}

impl SimplicialGraph {
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = BTreeSet::new();
        for &(a, b) in edge_list {
            if a == b {
                return Err(GraphError::Loop { vertex: a });
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            edges.insert((a.min(b), a.max(b)));
        }
        Ok(SimplicialGraph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.insert((i, j));
            }
        }
        SimplicialGraph { n, edges }
    }

    pub fn edgeless(n: usize) -> Self {
        SimplicialGraph { n, edges: BTreeSet::new() }
    }

    /// Path `0 – 1 – … – n-1`.
    pub fn path(n: usize) -> Self {
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        SimplicialGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }
}

/// Exceeding the configured bound on a saturation class. Saturation is
/// all-or-nothing: a partial class would silently weaken every judgement
/// built on top of it, so the sweep stops with this error instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCapExceeded {
    pub word: Word,
    pub cap: usize,
}

impl fmt::Display for ClassCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "saturation class of a word of length {} exceeds the cap of {} words",
            self.word.len(),
            self.cap
        )
    }
}

/// Default bound on the size of a single saturation class.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    Inhomogeneous { lhs: Word, rhs: Word },
    TrivialRelation { word: Word },
    LetterOutOfRange { word: Word, alphabet_size: usize },
    AlphabetTooLarge { alphabet_size: usize },
    FactorCountMismatch { vertices: usize, factors: usize },
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::Inhomogeneous { lhs, rhs } => write!(
                f,
                "relation sides have lengths {} and {}; only length-preserving relations are supported",
                lhs.len(),
                rhs.len()
            ),
            PresentationError::TrivialRelation { word } => {
                write!(f, "relation equates a word of length {} with itself", word.len())
            }
            PresentationError::LetterOutOfRange { word: _, alphabet_size } => {
                write!(f, "relation uses a letter outside the alphabet of size {alphabet_size}")
            }
            PresentationError::AlphabetTooLarge { alphabet_size } => {
                write!(f, "alphabet size {alphabet_size} exceeds the supported maximum")
            }
            PresentationError::FactorCountMismatch { vertices, factors } => {
                write!(f, "graph has {vertices} vertices but {factors} factors were given")
            }
        }
    }
}

/// A finitely presented monoid with length-preserving relations.
#[derive(Clone, Debug)]
pub struct HomogeneousPresentation {
    alphabet_size: usize,
    relations: Vec<(Word, Word)>,
    rules: Vec<(Word, Word)>,
    label: String,
    coxeter: Option<CoxeterMatrix>,
}

impl HomogeneousPresentation {
    /// Builds a presentation from raw relations. Each relation is stored
    /// with its lexicographically smaller side first; duplicates
    /// collapse.
    pub fn new(
        alphabet_size: usize,
        relations: Vec<(Word, Word)>,
        label: impl Into<String>,
    ) -> Result<Self, PresentationError> {
        if alphabet_size > Letter::MAX as usize + 1 {
            return Err(PresentationError::AlphabetTooLarge { alphabet_size });
        }
        let mut normalized = BTreeSet::new();
        for (lhs, rhs) in relations {
            if lhs.len() != rhs.len() {
                return Err(PresentationError::Inhomogeneous { lhs, rhs });
            }
            for w in [&lhs, &rhs] {
                if w.max_letter().is_some_and(|s| s as usize >= alphabet_size) {
                    return Err(PresentationError::LetterOutOfRange {
                        word: w.clone(),
                        alphabet_size,
                    });
                }
            }
            if lhs == rhs {
                return Err(PresentationError::TrivialRelation { word: lhs });
            }
            let (a, b) = if lhs < rhs { (lhs, rhs) } else { (rhs, lhs) };
            normalized.insert((a, b));
        }
        let relations: Vec<(Word, Word)> = normalized.into_iter().collect();
        let mut rules = Vec::with_capacity(relations.len() * 2);
        for (a, b) in &relations {
            rules.push((a.clone(), b.clone()));
            rules.push((b.clone(), a.clone()));
        }
        Ok(HomogeneousPresentation {
            alphabet_size,
            relations,
            rules,
            label: label.into(),
            coxeter: None,
        })
    }

    /// The free monoid on `n` generators.
    pub fn free(n: usize) -> Self {
        let mut p = HomogeneousPresentation::new(n, Vec::new(), alloc::format!("Free({n})"))
            .expect("free presentation is well formed");
        p.coxeter = Some(CoxeterMatrix::all_infinite(n));
        p
    }

    /// The Artin presentation of a Coxeter matrix: one relation
    /// `⟨s_i s_j⟩^m = ⟨s_j s_i⟩^m` per unordered pair with `m` finite,
    /// and no relation for infinite entries.
    pub fn artin(matrix: &CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut relations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let CoxeterEntry::Finite(m) = matrix.get(i, j) {
                    relations.push((
                        alternating_product(i as Letter, j as Letter, m as usize),
                        alternating_product(j as Letter, i as Letter, m as usize),
                    ));
                }
            }
        }
        let label = alloc::format!("Artin({})", matrix.display_rows());
        let mut p = HomogeneousPresentation::new(n, relations, label)
            .expect("Artin relations are homogeneous");
        p.coxeter = Some(matrix.clone());
        p
    }

    /// The graph product of `factors` over `graph`: the free product of
    /// the factors with commutation relations between generators of
    /// factors joined by an edge. A complete graph yields the direct
    /// product, an edgeless graph the free product.
    ///
    /// When every factor carries a Coxeter matrix the product does too:
    /// factor blocks on the diagonal, 2 across edges, ∞ across
    /// non-edges.
    pub fn graph_product(
        graph: &SimplicialGraph,
        factors: &[HomogeneousPresentation],
    ) -> Result<Self, PresentationError> {
        if graph.vertex_count() != factors.len() {
            return Err(PresentationError::FactorCountMismatch {
                vertices: graph.vertex_count(),
                factors: factors.len(),
            });
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut total = 0usize;
        for f in factors {
            offsets.push(total);
            total += f.alphabet_size();
        }
        if total > Letter::MAX as usize + 1 {
            return Err(PresentationError::AlphabetTooLarge { alphabet_size: total });
        }
        let shift = |w: &Word, off: usize| {
            Word::from_letters(w.letters().iter().map(|&s| s + off as Letter).collect())
        };
        let mut relations = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            for (lhs, rhs) in f.relations() {
                relations.push((shift(lhs, offsets[k]), shift(rhs, offsets[k])));
            }
        }
        for (a, b) in graph.edges() {
            for x in 0..factors[a].alphabet_size() {
                for y in 0..factors[b].alphabet_size() {
                    let u = (offsets[a] + x) as Letter;
                    let v = (offsets[b] + y) as Letter;
                    relations.push((
                        Word::from_letters(alloc::vec![u, v]),
                        Word::from_letters(alloc::vec![v, u]),
                    ));
                }
            }
        }
        let factor_labels: Vec<&str> = factors.iter().map(|f| f.label()).collect();
        let edge_desc: Vec<String> =
            graph.edges().map(|(a, b)| alloc::format!("{a}-{b}")).collect();
        let label = alloc::format!(
            "GraphProduct(edges {}; {})",
            if edge_desc.is_empty() { String::from("none") } else { edge_desc.join(",") },
            factor_labels.join(", ")
        );
        let mut p = HomogeneousPresentation::new(total, relations, label)?;
        if factors.iter().all(|f| f.coxeter().is_some()) {
            let mut rows =
                alloc::vec![alloc::vec![CoxeterEntry::Infinite; total]; total];
            for i in 0..total {
                rows[i][i] = CoxeterEntry::Finite(1);
            }
            for (k, f) in factors.iter().enumerate() {
                let m = f.coxeter().expect("checked above");
                for x in 0..f.alphabet_size() {
                    for y in 0..f.alphabet_size() {
                        rows[offsets[k] + x][offsets[k] + y] = m.get(x, y);
                    }
                }
            }
            for (a, b) in graph.edges() {
                for x in 0..factors[a].alphabet_size() {
                    for y in 0..factors[b].alphabet_size() {
                        rows[offsets[a] + x][offsets[b] + y] = CoxeterEntry::Finite(2);
                        rows[offsets[b] + y][offsets[a] + x] = CoxeterEntry::Finite(2);
                    }
                }
            }
            p.coxeter = Some(CoxeterMatrix::new(rows).expect("block matrix is well formed"));
        }
        Ok(p)
    }

    /// Presentation induced on a generator subset: the relations fully
    /// supported on the subset, with letters renumbered in subset order.
    /// Returns the restricted presentation together with the map from
    /// new letters back to ambient ones.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> (HomogeneousPresentation, Vec<usize>) {
        let letters: Vec<usize> = subset.iter().copied().collect();
        let mut back = BTreeMap::new();
        for (new, &old) in letters.iter().enumerate() {
            back.insert(old as Letter, new as Letter);
        }
        let mut support = alloc::vec![false; self.alphabet_size];
        for &s in &letters {
            support[s] = true;
        }
        let renumber = |w: &Word| {
            Word::from_letters(w.letters().iter().map(|s| back[s]).collect())
        };
        let relations: Vec<(Word, Word)> = self
            .relations
            .iter()
            .filter(|(lhs, rhs)| lhs.supported_on(&support) && rhs.supported_on(&support))
            .map(|(lhs, rhs)| (renumber(lhs), renumber(rhs)))
            .collect();
        let names: Vec<String> = letters
            .iter()
            .map(|&s| Word::generator(s as Letter).symbols(self.alphabet_size))
            .collect();
        let label = alloc::format!("{} on {{{}}}", self.label, names.join(","));
        let mut p = HomogeneousPresentation::new(letters.len(), relations, label)
            .expect("restriction preserves well-formedness");
        p.coxeter = self.coxeter.as_ref().map(|m| m.submatrix(&letters));
        (p, letters)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The Coxeter matrix, when this presentation was built as an Artin
    /// presentation or a graph product of such.
    pub fn coxeter(&self) -> Option<&CoxeterMatrix> {
        self.coxeter.as_ref()
    }

    /// True for the free monoid on one generator.
    pub fn is_free_abelian_rank1(&self) -> bool {
        self.alphabet_size == 1 && self.relations.is_empty()
    }

    /// The saturation class of `word`: its closure under applying any
    /// relation, in either direction, at any position. Members all share
    /// the length of `word`. The class is the full equivalence class of
    /// the word in the presented monoid.
    pub fn saturate(&self, word: &Word, cap: usize) -> Result<BTreeSet<Word>, ClassCapExceeded> {
        let mut seen = BTreeSet::new();
        seen.insert(word.clone());
        let mut queue = alloc::vec![word.clone()];
        while let Some(u) = queue.pop() {
            for (from, to) in &self.rules {
                let l = from.len();
                if l > u.len() {
                    continue;
                }
                for i in 0..=u.len() - l {
                    if &u.letters()[i..i + l] == from.letters() {
                        let mut v = u.letters().to_vec();
                        v[i..i + l].copy_from_slice(to.letters());
                        let v = Word::from_letters(v);
                        if !seen.contains(&v) {
                            if seen.len() >= cap {
                                return Err(ClassCapExceeded { word: word.clone(), cap });
                            }
                            seen.insert(v.clone());
                            queue.push(v);
                        }
                    }
                }
            }
        }
        Ok(seen)
    }

    /// Lexicographically least member of the saturation class.
    pub fn canonical(&self, word: &Word, cap: usize) -> Result<Word, ClassCapExceeded> {
        let class = self.saturate(word, cap)?;
        Ok(class.into_iter().next().expect("class contains the word itself"))
    }

    /// Whether `u` and `v` present the same element. Words of different
    /// lengths are distinct outright; otherwise the saturation of `u` is
    /// searched for `v`, stopping as soon as it is found.
    pub fn equal(&self, u: &Word, v: &Word, cap: usize) -> Result<bool, ClassCapExceeded> {
        if u.len() != v.len() {
            return Ok(false);
        }
        if u == v {
            return Ok(true);
        }
        let mut seen = BTreeSet::new();
        seen.insert(u.clone());
        let mut queue = alloc::vec![u.clone()];
        while let Some(w) = queue.pop() {
            for (from, to) in &self.rules {
                let l = from.len();
                if l > w.len() {
                    continue;
                }
                for i in 0..=w.len() - l {
                    if &w.letters()[i..i + l] == from.letters() {
                        let mut x = w.letters().to_vec();
                        x[i..i + l].copy_from_slice(to.letters());
                        let x = Word::from_letters(x);
                        if x == *v {
                            return Ok(true);
                        }
                        if !seen.contains(&x) {
                            if seen.len() >= cap {
                                return Err(ClassCapExceeded { word: u.clone(), cap });
                            }
                            seen.insert(x.clone());
                            queue.push(x);
                        }
                    }
                }
            }
        }
        Ok(false)
    }
}
