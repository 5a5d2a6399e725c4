//! Line-oriented monoid spec files.
//!
//! The first significant line names one of four forms:
//!
//! ```text
//! coxeter            # Artin monoid of an explicit Coxeter matrix
//! 1 3 2
//! 3 1 3
//! 2 3 1
//! ```
//!
//! ```text
//! free 2             # free monoid on two generators
//! ```
//!
//! ```text
//! graphproduct       # graph product of named factors
//! vertices 3
//! edge 0 1
//! edge 1 2
//! factor free 1
//! factor dihedral 3
//! factor coxeter 1 3 / 3 1
//! ```
//!
//! ```text
//! presentation 2     # arbitrary homogeneous presentation
//! relation aa = bb
//! ```
//!
//! `inf` denotes an infinite Coxeter entry, `#` starts a comment, and
//! blank lines are ignored. Words in relations use the same literals
//! as the command line: letters `a`..`z` or indexed `s1s2` form.

use rlcm_core::presentation::{
    CoxeterEntry, CoxeterMatrix, HomogeneousPresentation, SimplicialGraph,
};
use rlcm_core::Word;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for SpecParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SpecParseError {}

fn err(line: usize, message: impl Into<String>) -> SpecParseError {
    SpecParseError { line, message: message.into() }
}

/// A graph-product factor as written in the file.
#[derive(Clone, Debug)]
pub enum FactorSpec {
    Free(usize),
    Dihedral(u32),
    Coxeter(CoxeterMatrix),
}

impl FactorSpec {
    pub fn presentation(&self) -> HomogeneousPresentation {
        match self {
            FactorSpec::Free(n) => HomogeneousPresentation::free(*n),
            FactorSpec::Dihedral(m) => {
                HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(*m))
            }
            FactorSpec::Coxeter(matrix) => HomogeneousPresentation::artin(matrix),
        }
    }
}

/// The structural form the file used, kept alongside the presentation
/// because classification treats graph products by their factors.
#[derive(Clone, Debug)]
pub enum SpecStructure {
    Coxeter(CoxeterMatrix),
    Free(usize),
    GraphProduct { graph: SimplicialGraph, factors: Vec<FactorSpec> },
    Relations,
}

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub presentation: HomogeneousPresentation,
    pub structure: SpecStructure,
}

fn parse_coxeter_rows(
    rows: &[(usize, Vec<&str>)],
    header_line: usize,
) -> Result<CoxeterMatrix, SpecParseError> {
    if rows.is_empty() {
        return Err(err(header_line, "expected matrix rows after the header"));
    }
    let mut entries = Vec::new();
    for &(line, ref tokens) in rows {
        let mut row = Vec::new();
        for token in tokens {
            row.push(parse_entry(token, line)?);
        }
        entries.push((line, row));
    }
    let first_line = entries[0].0;
    let matrix_rows: Vec<Vec<CoxeterEntry>> = entries.iter().map(|(_, r)| r.clone()).collect();
    CoxeterMatrix::new(matrix_rows).map_err(|e| err(first_line, e.to_string()))
}

fn parse_entry(token: &str, line: usize) -> Result<CoxeterEntry, SpecParseError> {
    if token == "inf" {
        return Ok(CoxeterEntry::Infinite);
    }
    token
        .parse::<u32>()
        .map(CoxeterEntry::Finite)
        .map_err(|_| err(line, format!("expected a Coxeter entry or `inf`, found `{token}`")))
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, SpecParseError> {
    token.parse().map_err(|_| err(line, format!("expected {what}, found `{token}`")))
}

fn parse_factor(tokens: &[&str], line: usize) -> Result<FactorSpec, SpecParseError> {
    match tokens {
        ["free", n] => Ok(FactorSpec::Free(parse_usize(n, line, "a generator count")?)),
        ["dihedral", m] => {
            let m = parse_usize(m, line, "a dihedral parameter")?;
            if m < 2 {
                return Err(err(line, "dihedral parameter must be at least 2"));
            }
            Ok(FactorSpec::Dihedral(m as u32))
        }
        ["coxeter", rest @ ..] => {
            let rows: Vec<(usize, Vec<&str>)> = rest
                .split(|&t| t == "/")
                .map(|row| (line, row.to_vec()))
                .collect();
            Ok(FactorSpec::Coxeter(parse_coxeter_rows(&rows, line)?))
        }
        _ => Err(err(line, "expected `free <n>`, `dihedral <m>`, or `coxeter <rows>`")),
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, SpecParseError> {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(i, raw)| {
                let uncommented = raw.split('#').next().unwrap_or("");
                (i + 1, uncommented.split_whitespace().collect::<Vec<_>>())
            })
            .filter(|(_, tokens)| !tokens.is_empty())
            .collect();
        let Some((header_line, header)) = lines.first() else {
            return Err(err(1, "empty spec file"));
        };
        match header[0] {
            "coxeter" => {
                if header.len() > 1 {
                    return Err(err(*header_line, "matrix rows belong on their own lines"));
                }
                let matrix = parse_coxeter_rows(&lines[1..], *header_line)?;
                Ok(SpecFile {
                    presentation: HomogeneousPresentation::artin(&matrix),
                    structure: SpecStructure::Coxeter(matrix),
                })
            }
            "free" => {
                let [_, n] = header.as_slice() else {
                    return Err(err(*header_line, "expected `free <n>`"));
                };
                let n = parse_usize(n, *header_line, "a generator count")?;
                if lines.len() > 1 {
                    return Err(err(lines[1].0, "unexpected content after `free`"));
                }
                Ok(SpecFile {
                    presentation: HomogeneousPresentation::free(n),
                    structure: SpecStructure::Free(n),
                })
            }
            "graphproduct" => Self::parse_graph_product(&lines, *header_line),
            "presentation" => Self::parse_relations(&lines, *header_line, header),
            other => Err(err(
                *header_line,
                format!(
                    "unknown spec form `{other}`; expected `coxeter`, `free`, \
                     `graphproduct`, or `presentation`"
                ),
            )),
        }
    }

    fn parse_graph_product(
        lines: &[(usize, Vec<&str>)],
        header_line: usize,
    ) -> Result<SpecFile, SpecParseError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut factors: Vec<FactorSpec> = Vec::new();
        for (line, tokens) in &lines[1..] {
            match tokens[0] {
                "vertices" => {
                    let [_, n] = tokens.as_slice() else {
                        return Err(err(*line, "expected `vertices <n>`"));
                    };
                    if vertex_count.is_some() {
                        return Err(err(*line, "duplicate `vertices` line"));
                    }
                    vertex_count = Some(parse_usize(n, *line, "a vertex count")?);
                }
                "edge" => {
                    let [_, a, b] = tokens.as_slice() else {
                        return Err(err(*line, "expected `edge <a> <b>`"));
                    };
                    edges.push((
                        parse_usize(a, *line, "a vertex index")?,
                        parse_usize(b, *line, "a vertex index")?,
                    ));
                }
                "factor" => factors.push(parse_factor(&tokens[1..], *line)?),
                other => {
                    return Err(err(
                        *line,
                        format!("expected `vertices`, `edge`, or `factor`, found `{other}`"),
                    ))
                }
            }
        }
        let Some(n) = vertex_count else {
            return Err(err(header_line, "graph product needs a `vertices <n>` line"));
        };
        if factors.len() != n {
            return Err(err(
                header_line,
                format!("graph has {n} vertices but {} factor lines", factors.len()),
            ));
        }
        let graph = SimplicialGraph::new(n, &edges)
            .map_err(|e| err(header_line, e.to_string()))?;
        let factor_presentations: Vec<HomogeneousPresentation> =
            factors.iter().map(FactorSpec::presentation).collect();
        let presentation = HomogeneousPresentation::graph_product(&graph, &factor_presentations)
            .map_err(|e| err(header_line, e.to_string()))?;
        Ok(SpecFile { presentation, structure: SpecStructure::GraphProduct { graph, factors } })
    }

    fn parse_relations(
        lines: &[(usize, Vec<&str>)],
        header_line: usize,
        header: &[&str],
    ) -> Result<SpecFile, SpecParseError> {
        let [_, n] = header else {
            return Err(err(header_line, "expected `presentation <n>`"));
        };
        let n = parse_usize(n, header_line, "a generator count")?;
        let mut relations = Vec::new();
        for (line, tokens) in &lines[1..] {
            if tokens[0] != "relation" {
                return Err(err(*line, format!("expected `relation <lhs> = <rhs>`")));
            }
            let [_, lhs, eq, rhs] = tokens.as_slice() else {
                return Err(err(*line, "expected `relation <lhs> = <rhs>`"));
            };
            if *eq != "=" {
                return Err(err(*line, "expected `=` between the two sides"));
            }
            let lhs = Word::parse(lhs, n).map_err(|e| err(*line, e.to_string()))?;
            let rhs = Word::parse(rhs, n).map_err(|e| err(*line, e.to_string()))?;
            if lhs.len() != rhs.len() {
                return Err(err(
                    *line,
                    "relation sides have different lengths; only homogeneous \
                     presentations are supported",
                ));
            }
            relations.push((lhs, rhs));
        }
        let presentation = HomogeneousPresentation::new(n, relations, "Presented")
            .map_err(|e| err(header_line, e.to_string()))?;
        Ok(SpecFile { presentation, structure: SpecStructure::Relations })
    }
}
