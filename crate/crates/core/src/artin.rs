//! Classification of Artin monoids and the Nica-amenability verdict.
//!
//! The classifier reads everything off the Coxeter matrix: right-angled
//! means every off-diagonal entry is 2 or ∞, spherical means every
//! connected component of the Coxeter diagram lies in the finite-type
//! catalogue, abelian means every off-diagonal entry is 2.
//!
//! Nica amenability of an Artin monoid is decided by right-angledness
//! alone. The positive direction is Crisp and Laca's amenability of
//! graph products; the negative direction embeds the dihedral Artin
//! monoid on any offending pair as a parabolic submonoid and uses that
//! amenability passes to such submonoids. [`dihedral_witness_report`]
//! re-enacts the hypotheses of that embedding argument on a finite
//! ball, so the abstract verdict can be cross-examined computationally.

use crate::ball::Ball;
use crate::inclusions::{
    FactorizationWitness, InclusionError, OrthogonalityWitness, ParabolicInclusion,
    RespectsWitness,
};
use crate::presentation::{
    ClassCapExceeded, CoxeterEntry, CoxeterMatrix, HomogeneousPresentation, SimplicialGraph,
};
use crate::verdict::Verdict;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

/// Where an Artin monoid sits in the standard taxonomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinClass {
    pub right_angled: bool,
    pub spherical: bool,
    pub abelian: bool,
    /// First off-diagonal entry outside `{2, ∞}`, present exactly when
    /// the matrix is not right-angled.
    pub offending_entry: Option<(usize, usize, u32)>,
}

/// The concrete reason a verdict is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Generators `i` and `j` span a parabolic copy of the dihedral
    /// Artin monoid with parameter `m ∉ {2, ∞}`.
    DihedralParabolic { i: usize, j: usize, m: u32 },
    /// A graph-product factor that is itself not Nica amenable.
    NonAmenableFactor { index: usize },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Obstruction::DihedralParabolic { i, j, m } => {
                write!(f, "parabolic dihedral submonoid on generators {i}, {j} with m = {m}")
            }
            Obstruction::NonAmenableFactor { index } => {
                write!(f, "factor {index} is not Nica amenable")
            }
        }
    }
}

/// Outcome of the amenability question, always carrying the citation
/// for the theorem that produced it. `Unknown` is a real answer:
/// whether graph products of general Nica-amenable monoids stay Nica
/// amenable is open, and the tool reports that rather than guessing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmenabilityVerdict {
    NicaAmenable { reason: &'static str, citation: &'static str },
    NotNicaAmenable { witness: Obstruction, reason: &'static str, citation: &'static str },
    Unknown { reason: &'static str, citation: &'static str },
}

impl AmenabilityVerdict {
    pub fn citation(&self) -> &'static str {
        match self {
            AmenabilityVerdict::NicaAmenable { citation, .. }
            | AmenabilityVerdict::NotNicaAmenable { citation, .. }
            | AmenabilityVerdict::Unknown { citation, .. } => citation,
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            AmenabilityVerdict::NicaAmenable { reason, .. }
            | AmenabilityVerdict::NotNicaAmenable { reason, .. }
            | AmenabilityVerdict::Unknown { reason, .. } => reason,
        }
    }
}

impl fmt::Display for AmenabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmenabilityVerdict::NicaAmenable { reason, citation } => {
                write!(f, "Nica amenable: {reason} ({citation})")
            }
            AmenabilityVerdict::NotNicaAmenable { witness, reason, citation } => {
                write!(f, "not Nica amenable: {reason}; witness: {witness} ({citation})")
            }
            AmenabilityVerdict::Unknown { reason, citation } => {
                write!(f, "unknown: {reason} ({citation})")
            }
        }
    }
}

/// Caveat attached to reports on Artin monoids that are neither
/// right-angled nor spherical, where even the quasi-lattice structure
/// of the group embedding is not settled.
pub fn quasi_lattice_caveat() -> &'static str {
    "for Artin monoids that are neither spherical nor right-angled, it is not known \
     whether the embedding into the Artin group induces a quasi-lattice order"
}

/// One connected component of the Coxeter diagram: vertices joined by
/// the edges with `m ≥ 3`, each edge keeping its label (`None` = ∞).
struct DiagramComponent {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize, Option<u32>)>,
}

fn diagram_components(matrix: &CoxeterMatrix) -> Vec<DiagramComponent> {
    let n = matrix.rank();
    let mut component = alloc::vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = alloc::vec![start];
        component[start] = count;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if w != v
                    && component[w] == usize::MAX
                    && matrix.get(v, w) != CoxeterEntry::Finite(2)
                {
                    component[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    let mut out: Vec<DiagramComponent> = (0..count)
        .map(|_| DiagramComponent { vertices: Vec::new(), edges: Vec::new() })
        .collect();
    for v in 0..n {
        out[component[v]].vertices.push(v);
        for w in v + 1..n {
            match matrix.get(v, w) {
                CoxeterEntry::Finite(2) => {}
                CoxeterEntry::Finite(m) => out[component[v]].edges.push((v, w, Some(m))),
                CoxeterEntry::Infinite => out[component[v]].edges.push((v, w, None)),
            }
        }
    }
    out
}

/// Whether one diagram component is in the finite-type catalogue:
/// `A_n`, `B_n`, `D_n`, `E₆`, `E₇`, `E₈`, `F₄`, `H₃`, `H₄`, or
/// `I₂(m)` with `m` finite.
fn component_is_spherical(c: &DiagramComponent) -> bool {
    if c.edges.iter().any(|&(_, _, m)| m.is_none()) {
        return false;
    }
    // A tree has one edge fewer than it has vertices; anything denser
    // contains a cycle and is affine or worse.
    if c.edges.len() + 1 != c.vertices.len() {
        return c.vertices.len() == 1 && c.edges.is_empty();
    }
    let mut degree: Vec<usize> = alloc::vec![0; c.vertices.len()];
    let local = |v: usize| c.vertices.iter().position(|&u| u == v).unwrap();
    for &(v, w, _) in &c.edges {
        degree[local(v)] += 1;
        degree[local(w)] += 1;
    }
    if degree.iter().any(|&d| d > 3) || degree.iter().filter(|&&d| d == 3).count() > 1 {
        return false;
    }
    if let Some(branch) = degree.iter().position(|&d| d == 3) {
        // One degree-3 vertex: all labels must be 3 and the three arm
        // lengths, sorted, must be (1, 1, k), (1, 2, 2), (1, 2, 3) or
        // (1, 2, 4), giving D, E₆, E₇, E₈.
        if c.edges.iter().any(|&(_, _, m)| m != Some(3)) {
            return false;
        }
        let mut arms = Vec::new();
        for next in 0..c.vertices.len() {
            if !c.edges.iter().any(|&(v, w, _)| {
                (local(v), local(w)) == (branch, next) || (local(w), local(v)) == (branch, next)
            }) {
                continue;
            }
            let mut len = 1;
            let mut prev = branch;
            let mut here = next;
            loop {
                let onward = c.edges.iter().find_map(|&(v, w, _)| {
                    let (a, b) = (local(v), local(w));
                    if a == here && b != prev {
                        Some(b)
                    } else if b == here && a != prev {
                        Some(a)
                    } else {
                        None
                    }
                });
                match onward {
                    Some(v) => {
                        len += 1;
                        prev = here;
                        here = v;
                    }
                    None => break,
                }
            }
            arms.push(len);
        }
        arms.sort_unstable();
        return matches!(arms.as_slice(), [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4]);
    }
    // No branch vertex: the component is a path. Walk it from one end
    // and read off the edge labels in order.
    if c.vertices.len() == 1 {
        return true;
    }
    if c.vertices.len() == 2 {
        return true;
    }
    let end = degree.iter().position(|&d| d == 1).expect("a path has ends");
    let mut labels = Vec::new();
    let mut prev = usize::MAX;
    let mut here = end;
    loop {
        let step = c.edges.iter().find_map(|&(v, w, m)| {
            let (a, b) = (local(v), local(w));
            if a == here && b != prev {
                Some((b, m.unwrap()))
            } else if b == here && a != prev {
                Some((a, m.unwrap()))
            } else {
                None
            }
        });
        match step {
            Some((v, m)) => {
                labels.push(m);
                prev = here;
                here = v;
            }
            None => break,
        }
    }
    let k = labels.len();
    let heavy: Vec<usize> = (0..k).filter(|&i| labels[i] != 3).collect();
    match heavy.as_slice() {
        [] => true,
        [i] => match labels[*i] {
            // A single 4 gives B at an end and F₄ in the middle of a
            // four-vertex path; a single 5 at an end gives H₃ or H₄.
            4 => *i == 0 || *i == k - 1 || (k == 3 && *i == 1),
            5 => (*i == 0 || *i == k - 1) && k <= 3,
            _ => false,
        },
        _ => false,
    }
}

/// Reads the taxonomy off the matrix. Sphericity matches each diagram
/// component against the finite-type catalogue; no group enumeration
/// happens here.
pub fn classify(matrix: &CoxeterMatrix) -> ArtinClass {
    ArtinClass {
        right_angled: matrix.is_right_angled(),
        spherical: diagram_components(matrix).iter().all(component_is_spherical),
        abelian: matrix.is_abelian(),
        offending_entry: matrix.offending_entry(),
    }
}

/// The amenability dichotomy for Artin monoids: right-angled ones are
/// Nica amenable, all others are not, witnessed by a dihedral
/// parabolic submonoid on an offending pair.
pub fn amenability_verdict(matrix: &CoxeterMatrix) -> AmenabilityVerdict {
    match matrix.offending_entry() {
        None => AmenabilityVerdict::NicaAmenable {
            reason: "every off-diagonal Coxeter entry lies in {2, ∞}, so the monoid is a \
                     graph product of free monoids and its quasi-lattice order is amenable",
            citation: "Crisp-Laca 2002, Theorem 20",
        },
        Some((i, j, m)) => AmenabilityVerdict::NotNicaAmenable {
            witness: Obstruction::DihedralParabolic { i, j, m },
            reason: "the offending pair spans a parabolic dihedral Artin submonoid with \
                     parameter outside {2, ∞}, whose quasi-lattice order is not amenable, \
                     and non-amenability passes up from parabolic submonoids",
            citation: "Crisp-Laca 2002, Proposition 28; embedding per Crisp 1999, Theorem 1.3",
        },
    }
}

/// Why a dihedral witness report cannot be produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessReportError {
    /// Right-angled matrices have no offending pair to witness.
    RightAngled,
    /// Rank-2 input with `m ∉ {2, ∞}`: the witness would be the whole
    /// monoid, so there is no proper inclusion to examine.
    AlreadyDihedral { m: u32 },
    Cap(ClassCapExceeded),
}

impl fmt::Display for WitnessReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessReportError::RightAngled => {
                write!(f, "right-angled matrices admit no dihedral witness")
            }
            WitnessReportError::AlreadyDihedral { m } => {
                write!(
                    f,
                    "the monoid is already the dihedral Artin monoid with m = {m}; \
                     the witness is the whole monoid"
                )
            }
            WitnessReportError::Cap(e) => write!(f, "{e}"),
        }
    }
}

impl From<ClassCapExceeded> for WitnessReportError {
    fn from(e: ClassCapExceeded) -> Self {
        WitnessReportError::Cap(e)
    }
}

/// The finite-ball cross-examination of the dihedral witness: the
/// parabolic inclusion on the offending pair together with the three
/// embedding hypotheses checked at the given radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralWitnessReport {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    pub radius: usize,
    pub closure: Verdict<FactorizationWitness>,
    pub orthogonality: Verdict<OrthogonalityWitness>,
    pub respects: Verdict<RespectsWitness>,
}

impl DihedralWitnessReport {
    /// True when every hypothesis of the embedding argument was
    /// verified outright at this radius.
    pub fn all_hold(&self) -> bool {
        self.closure.holds() && self.orthogonality.holds() && self.respects.holds()
    }
}

/// Builds the ball of the Artin monoid of `matrix` and checks, at the
/// given radius, that the parabolic submonoid on the first offending
/// pair is closed under factorization, preserves orthogonality, and
/// respects LCMs. These are exactly the hypotheses under which a
/// representation of the dihedral piece extends by zero, which is how
/// the negative amenability verdict is reached.
pub fn dihedral_witness_report(
    matrix: &CoxeterMatrix,
    radius: usize,
    cap: usize,
) -> Result<DihedralWitnessReport, WitnessReportError> {
    let (i, j, m) = match matrix.offending_entry() {
        Some(entry) => entry,
        None => return Err(WitnessReportError::RightAngled),
    };
    if matrix.rank() == 2 {
        return Err(WitnessReportError::AlreadyDihedral { m });
    }
    let presentation = HomogeneousPresentation::artin(matrix);
    let ball = Ball::enumerate(&presentation, radius, cap)?;
    let subset: BTreeSet<usize> = [i, j].into_iter().collect();
    let inclusion = match ParabolicInclusion::new(&ball, &subset) {
        Ok(inc) => inc,
        Err(InclusionError::Cap(e)) => return Err(WitnessReportError::Cap(e)),
        Err(InclusionError::GeneratorOutOfRange { .. }) => {
            unreachable!("offending pair indices come from the matrix itself")
        }
    };
    Ok(DihedralWitnessReport {
        i,
        j,
        m,
        radius,
        closure: inclusion.check_closed_under_factorization(),
        orthogonality: inclusion.check_preserves_orthogonality(),
        respects: inclusion.check_respects_lcm(),
    })
}

/// A graph-product factor as the propagation rule sees it: its own
/// verdict, plus whether it is the free monoid on one generator, the
/// one case where the product is recognizably right-angled Artin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFactor {
    pub verdict: AmenabilityVerdict,
    pub is_free_abelian_rank1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCountMismatch {
    pub vertices: usize,
    pub factors: usize,
}

impl fmt::Display for FactorCountMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph has {} vertices but {} factor verdicts were given", self.vertices, self.factors)
    }
}

/// Propagates factor verdicts through a graph product. A graph product
/// of Nica-amenable monoids over amenable quasi-lattice orders is only
/// known to be Nica amenable in special cases, so the rule is
/// deliberately asymmetric: one bad factor sinks the product, while
/// all-good factors yield `Unknown` unless every factor is ℕ, making
/// the product a right-angled Artin monoid.
pub fn propagate_graph_product(
    graph: &SimplicialGraph,
    factors: &[GraphFactor],
) -> Result<AmenabilityVerdict, FactorCountMismatch> {
    if graph.vertex_count() != factors.len() {
        return Err(FactorCountMismatch {
            vertices: graph.vertex_count(),
            factors: factors.len(),
        });
    }
    for (index, factor) in factors.iter().enumerate() {
        if matches!(factor.verdict, AmenabilityVerdict::NotNicaAmenable { .. }) {
            return Ok(AmenabilityVerdict::NotNicaAmenable {
                witness: Obstruction::NonAmenableFactor { index },
                reason: "a graph product with Nica-amenable quasi-lattice order would make \
                         every factor Nica amenable, and this factor is not",
                citation: "Crisp-Laca 2002, Theorem 20 (contrapositive)",
            });
        }
    }
    if factors.iter().all(|f| f.is_free_abelian_rank1) {
        return Ok(AmenabilityVerdict::NicaAmenable {
            reason: "every factor is the free monoid on one generator, so the product is a \
                     right-angled Artin monoid",
            citation: "Crisp-Laca 2002, Theorem 20",
        });
    }
    if factors.iter().any(|f| matches!(f.verdict, AmenabilityVerdict::Unknown { .. })) {
        return Ok(AmenabilityVerdict::Unknown {
            reason: "some factor verdicts are themselves unknown",
            citation: "no applicable closure theorem",
        });
    }
    Ok(AmenabilityVerdict::Unknown {
        reason: "whether graph products of Nica-amenable monoids are Nica amenable is an \
                 open problem outside the right-angled Artin case",
        citation: "no applicable closure theorem; the known result covers only the converse",
    })
}
