//! Matrix representations of a ball and the positivity functional.
//!
//! Two kinds of representation are supported. A [`Representation`]
//! assigns an explicit rational matrix to each generator, validated
//! against the defining relations. A [`TruncatedRegularRep`] is the
//! left regular action on the ball itself: basis vector δ_q is sent by
//! x to δ_{xq} when the product still fits in the ball, to 0 otherwise.
//!
//! On top of these sit the covariance and Wick identity checks, the
//! diagonal conditional expectation, the alternating-sum functional
//! `Z(F)` whose positivity is the dilation criterion, and the
//! extension of a submonoid representation by zero.
//!
//! Truncation discipline: range projections `λ(x)λ(x)ᵀ` are exact
//! diagonal projections onto in-ball ideals, so identities built only
//! from them are compared on the whole ball. Identities that move
//! vectors up in length, like the Wick formula, are compared only on
//! columns δ_q that every factor keeps inside the ball.

use crate::ball::{Ball, ElementId};
use crate::inclusions::ParabolicInclusion;
use crate::lcm::{self, LcmResult};
use crate::matrix::{rational, Rational, RationalMatrix};
use crate::presentation::HomogeneousPresentation;
use crate::verdict::Verdict;
use crate::word::{Letter, Word};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepError {
    WrongGeneratorCount { expected: usize, found: usize },
    NotSquare { generator: Letter },
    DimensionMismatch { generator: Letter, expected: usize, found: usize },
    RelationViolated { lhs: Word, rhs: Word },
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::WrongGeneratorCount { expected, found } => {
                write!(f, "expected {} generator matrices, found {}", expected, found)
            }
            RepError::NotSquare { generator } => {
                write!(f, "matrix for generator {} is not square", generator)
            }
            RepError::DimensionMismatch { generator, expected, found } => {
                write!(
                    f,
                    "matrix for generator {} is {}-dimensional, expected {}",
                    generator, found, expected
                )
            }
            RepError::RelationViolated { lhs, rhs } => {
                write!(f, "matrices violate the relation {:?} = {:?}", lhs, rhs)
            }
        }
    }
}

/// An assignment of square rational matrices to the generators that
/// satisfies every defining relation, so products depend only on the
/// element and not on the chosen word.
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: HomogeneousPresentation,
    dim: usize,
    generators: Vec<RationalMatrix>,
    isometric: Vec<bool>,
    unitary: Vec<bool>,
}

impl Representation {
    pub fn new(
        presentation: &HomogeneousPresentation,
        generators: Vec<RationalMatrix>,
    ) -> Result<Self, RepError> {
        if generators.len() != presentation.alphabet_size() {
            return Err(RepError::WrongGeneratorCount {
                expected: presentation.alphabet_size(),
                found: generators.len(),
            });
        }
        let dim = generators.first().map_or(0, RationalMatrix::rows);
        for (s, g) in generators.iter().enumerate() {
            if !g.is_square() {
                return Err(RepError::NotSquare { generator: s as Letter });
            }
            if g.rows() != dim {
                return Err(RepError::DimensionMismatch {
                    generator: s as Letter,
                    expected: dim,
                    found: g.rows(),
                });
            }
        }
        let rep = Representation {
            presentation: presentation.clone(),
            dim,
            generators,
            isometric: Vec::new(),
            unitary: Vec::new(),
        };
        for (lhs, rhs) in rep.presentation.relations() {
            if rep.word_matrix(lhs) != rep.word_matrix(rhs) {
                return Err(RepError::RelationViolated { lhs: lhs.clone(), rhs: rhs.clone() });
            }
        }
        let id = RationalMatrix::identity(dim);
        let mut rep = rep;
        for g in &rep.generators {
            let iso = g.transpose().mul(g) == id;
            rep.isometric.push(iso);
            rep.unitary.push(iso && g.mul(&g.transpose()) == id);
        }
        Ok(rep)
    }

    pub fn presentation(&self) -> &HomogeneousPresentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrix(&self, s: Letter) -> &RationalMatrix {
        &self.generators[s as usize]
    }

    pub fn generator_isometric(&self, s: Letter) -> bool {
        self.isometric[s as usize]
    }

    pub fn generator_unitary(&self, s: Letter) -> bool {
        self.unitary[s as usize]
    }

    pub fn is_isometric(&self) -> bool {
        self.isometric.iter().all(|&b| b)
    }

    /// Product of the generator matrices along `w`, left to right.
    /// Relation-compatibility makes this constant on congruence
    /// classes.
    pub fn word_matrix(&self, w: &Word) -> RationalMatrix {
        let mut m = RationalMatrix::identity(self.dim);
        for &s in w.letters() {
            m = m.mul(&self.generators[s as usize]);
        }
        m
    }

    pub fn element_matrix(&self, ball: &Ball, x: ElementId) -> RationalMatrix {
        self.word_matrix(ball.element(x).canonical())
    }
}

/// The left regular representation cut down to a ball: each element
/// acts by left multiplication where the product still fits, and by
/// zero where it would leave the ball.
pub struct TruncatedRegularRep<'a> {
    ball: &'a Ball,
}

/// Builds the truncated regular representation and asserts its two
/// projection identities: `λ(s)ᵀλ(s)` is the diagonal projection onto
/// the columns kept by `s`, and `λ(s)λ(s)ᵀ` is the diagonal projection
/// onto `sP ∩ ball`. Both come down to left multiplication by a
/// generator being injective inside the ball, which the assertions
/// verify directly.
pub fn build_regular_rep(ball: &Ball) -> TruncatedRegularRep<'_> {
    let rep = TruncatedRegularRep { ball };
    for s in 0..ball.presentation().alphabet_size() {
        let gid = match ball.id_of(&Word::generator(s as Letter)) {
            Ok(Some(gid)) => gid,
            _ => continue,
        };
        let mut seen = alloc::vec![false; ball.len()];
        for q in ball.ids() {
            if let Some(p) = rep.image(gid, q) {
                assert!(
                    !seen[p.index()],
                    "left multiplication by generator {} is not injective in the ball",
                    s
                );
                seen[p.index()] = true;
            }
        }
        for p in ball.ids() {
            assert_eq!(
                seen[p.index()],
                ball.divides(gid, p),
                "range of generator {} does not match its ideal",
                s
            );
        }
    }
    rep
}

impl<'a> TruncatedRegularRep<'a> {
    pub fn ball(&self) -> &'a Ball {
        self.ball
    }

    pub fn dim(&self) -> usize {
        self.ball.len()
    }

    /// `λ_L(x) δ_q`, or `None` for the zeroed columns.
    pub fn image(&self, x: ElementId, q: ElementId) -> Option<ElementId> {
        if self.ball.length_of(x) + self.ball.length_of(q) > self.ball.radius() {
            return None;
        }
        let p = self
            .ball
            .mul(x, q)
            .expect("class already enumerated within the cap")
            .expect("product of in-ball lengths stays in the ball");
        Some(p)
    }

    /// `λ_L(x)` as a dense 0/1 matrix.
    pub fn matrix_of(&self, x: ElementId) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.ball.len(), self.ball.len());
        for q in self.ball.ids() {
            if let Some(p) = self.image(x, q) {
                m.set(p.index(), q.index(), rational(1));
            }
        }
        m
    }

    /// Diagonal of `λ_L(x) λ_L(x)ᵀ` as exact counts. The product is
    /// always diagonal, because the (p, p') entry counts columns sent
    /// to both δ_p and δ_{p'} at once.
    pub fn range_counts(&self, x: ElementId) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; self.ball.len()];
        for q in self.ball.ids() {
            if let Some(p) = self.image(x, q) {
                counts[p.index()] += 1;
            }
        }
        counts
    }
}

/// Either kind of representation, for the checks that accept both.
pub enum RepRef<'r> {
    Dense(&'r Representation),
    Regular(&'r TruncatedRegularRep<'r>),
}

impl RepRef<'_> {
    fn operator(&self, ball: &Ball, x: ElementId) -> RationalMatrix {
        match self {
            RepRef::Dense(v) => v.element_matrix(ball, x),
            RepRef::Regular(r) => r.matrix_of(x),
        }
    }
}

/// An entry where `V_x V_xᵀ V_y V_yᵀ` differs from the projection
/// belonging to the LCM of the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovarianceFailure {
    pub x: ElementId,
    pub y: ElementId,
    pub row: usize,
    pub col: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for CovarianceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "covariance fails for (#{}, #{}) at entry ({}, {}): {} ≠ {}",
            self.x.index(),
            self.y.index(),
            self.row,
            self.col,
            self.lhs,
            self.rhs
        )
    }
}

/// An entry where `V_xᵀ V_y` differs from `V_{z₁} V_{z₂}ᵀ` for the LCM
/// quotients `z₁, z₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WickFailure {
    pub x: ElementId,
    pub y: ElementId,
    pub row: usize,
    pub col: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for WickFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Wick identity fails for (#{}, #{}) at entry ({}, {}): {} ≠ {}",
            self.x.index(),
            self.y.index(),
            self.row,
            self.col,
            self.lhs,
            self.rhs
        )
    }
}

fn first_difference(lhs: &RationalMatrix, rhs: &RationalMatrix) -> Option<(usize, usize)> {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Checks `V_x V_xᵀ V_y V_yᵀ = V_r V_rᵀ` (or `= 0` for provably
/// disjoint ideals) for each listed pair. Pairs whose LCM the ball
/// cannot resolve make the verdict inconclusive, never a guess.
///
/// Range projections of the regular representation are diagonal, so
/// there the comparison runs over exact diagonal counts; for a dense
/// representation the full matrix identity is compared.
pub fn check_covariance(
    rep: &RepRef<'_>,
    ball: &Ball,
    pairs: &[(ElementId, ElementId)],
) -> Verdict<CovarianceFailure> {
    let mut inconclusive = false;
    for &(x, y) in pairs {
        let target = match lcm::lcm(ball, x, y) {
            LcmResult::Lcm { r } => Some(r),
            LcmResult::ProvenEmpty { .. } => None,
            _ => {
                inconclusive = true;
                continue;
            }
        };
        match rep {
            RepRef::Regular(reg) => {
                let dx = reg.range_counts(x);
                let dy = reg.range_counts(y);
                let dr = target.map(|r| reg.range_counts(r));
                for p in 0..ball.len() {
                    let lhs = dx[p] * dy[p];
                    let rhs = dr.as_ref().map_or(0, |d| d[p]);
                    if lhs != rhs {
                        return Verdict::Fails(CovarianceFailure {
                            x,
                            y,
                            row: p,
                            col: p,
                            lhs: rational(lhs as i64),
                            rhs: rational(rhs as i64),
                        });
                    }
                }
            }
            RepRef::Dense(v) => {
                let vx = v.element_matrix(ball, x);
                let vy = v.element_matrix(ball, y);
                let lhs = vx.mul(&vx.transpose()).mul(&vy.mul(&vy.transpose()));
                let rhs = match target {
                    Some(r) => {
                        let vr = v.element_matrix(ball, r);
                        vr.mul(&vr.transpose())
                    }
                    None => RationalMatrix::zeros(v.dim(), v.dim()),
                };
                if let Some((i, j)) = first_difference(&lhs, &rhs) {
                    return Verdict::Fails(CovarianceFailure {
                        x,
                        y,
                        row: i,
                        col: j,
                        lhs: lhs.get(i, j).clone(),
                        rhs: rhs.get(i, j).clone(),
                    });
                }
            }
        }
    }
    if inconclusive {
        Verdict::Inconclusive { bound: ball.radius() }
    } else {
        Verdict::Holds
    }
}

/// Checks the Wick identity `V_xᵀ V_y = V_{z₁} V_{z₂}ᵀ`, where
/// `x·z₁ = y·z₂` is the LCM of the pair, or `V_xᵀ V_y = 0` when the
/// ideals are provably disjoint.
///
/// For the regular representation the identity moves columns up by as
/// much as the longest of `x, y, z₁, z₂`, so only columns δ_q with
/// `|q| + D ≤ L` are compared; a dense representation is compared in
/// full.
pub fn check_wick(
    rep: &RepRef<'_>,
    ball: &Ball,
    pairs: &[(ElementId, ElementId)],
) -> Verdict<WickFailure> {
    let mut inconclusive = false;
    for &(x, y) in pairs {
        let quotients = match lcm::lcm(ball, x, y) {
            LcmResult::Lcm { r } => {
                let z1 = ball.quotient(x, r).expect("lcm is a multiple of x");
                let z2 = ball.quotient(y, r).expect("lcm is a multiple of y");
                Some((z1, z2))
            }
            LcmResult::ProvenEmpty { .. } => None,
            _ => {
                inconclusive = true;
                continue;
            }
        };
        match rep {
            RepRef::Regular(reg) => {
                let mut depth = ball.length_of(x).max(ball.length_of(y));
                if let Some((z1, z2)) = quotients {
                    depth = depth.max(ball.length_of(z1)).max(ball.length_of(z2));
                }
                for q in ball.ids() {
                    if ball.length_of(q) + depth > ball.radius() {
                        continue;
                    }
                    let mut lhs = alloc::vec![0u64; ball.len()];
                    let b = reg.image(y, q).expect("safe column stays in the ball");
                    for &(d, p) in ball.factorizations(b) {
                        if d == x {
                            lhs[p.index()] += 1;
                        }
                    }
                    let mut rhs = alloc::vec![0u64; ball.len()];
                    if let Some((z1, z2)) = quotients {
                        for &(d, m) in ball.factorizations(q) {
                            if d == z2 {
                                let t = reg.image(z1, m).expect("safe column stays in the ball");
                                rhs[t.index()] += 1;
                            }
                        }
                    }
                    if let Some(row) = (0..ball.len()).find(|&p| lhs[p] != rhs[p]) {
                        return Verdict::Fails(WickFailure {
                            x,
                            y,
                            row,
                            col: q.index(),
                            lhs: rational(lhs[row] as i64),
                            rhs: rational(rhs[row] as i64),
                        });
                    }
                }
            }
            RepRef::Dense(v) => {
                let lhs = v.element_matrix(ball, x).transpose().mul(&v.element_matrix(ball, y));
                let rhs = match quotients {
                    Some((z1, z2)) => v
                        .element_matrix(ball, z1)
                        .mul(&v.element_matrix(ball, z2).transpose()),
                    None => RationalMatrix::zeros(v.dim(), v.dim()),
                };
                if let Some((i, j)) = first_difference(&lhs, &rhs) {
                    return Verdict::Fails(WickFailure {
                        x,
                        y,
                        row: i,
                        col: j,
                        lhs: lhs.get(i, j).clone(),
                        rhs: rhs.get(i, j).clone(),
                    });
                }
            }
        }
    }
    if inconclusive {
        Verdict::Inconclusive { bound: ball.radius() }
    } else {
        Verdict::Holds
    }
}

/// Compression onto the diagonal: the matrix-level conditional
/// expectation that kills every off-diagonal unit `λ(p)λ(q)ᵀ`, `p ≠ q`.
pub fn diagonal_expectation(a: &RationalMatrix) -> RationalMatrix {
    a.diagonal_part()
}

/// Anything that assigns a matrix to each ball element. Covers both
/// representation kinds and the extension-by-zero family, which is not
/// multiplicative on all of `P` in the representation sense but still
/// feeds the `Z` functional.
pub trait OperatorFamily {
    fn dim(&self) -> usize;
    fn operator(&self, ball: &Ball, x: ElementId) -> RationalMatrix;
}

impl OperatorFamily for TruncatedRegularRep<'_> {
    fn dim(&self) -> usize {
        self.ball.len()
    }

    fn operator(&self, _ball: &Ball, x: ElementId) -> RationalMatrix {
        self.matrix_of(x)
    }
}

impl OperatorFamily for RepRef<'_> {
    fn dim(&self) -> usize {
        match self {
            RepRef::Dense(v) => v.dim(),
            RepRef::Regular(r) => r.dim(),
        }
    }

    fn operator(&self, ball: &Ball, x: ElementId) -> RationalMatrix {
        RepRef::operator(self, ball, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZFunctionalError {
    /// Some generator matrix is not a contraction, so positivity of
    /// the functional would be meaningless.
    NotContractive { generator: Letter },
    /// A subset's LCM is unresolved at this radius; no matrix is
    /// produced rather than a guessed term.
    Unresolved { subset: Vec<ElementId>, bound: usize },
}

impl fmt::Display for ZFunctionalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZFunctionalError::NotContractive { generator } => {
                write!(f, "generator {} is not a contraction", generator)
            }
            ZFunctionalError::Unresolved { subset, bound } => {
                write!(
                    f,
                    "the LCM of a subset of {} elements is unresolved within radius {}",
                    subset.len(),
                    bound
                )
            }
        }
    }
}

/// The alternating sum `Z(F) = Σ_{U ⊆ F} (−1)^{|U|} T(∨U) T(∨U)ᵀ`,
/// with `T(∨∅) = I` and a zero term whenever `∨U` is provably empty.
/// Positive semidefiniteness of this matrix for every finite `F` is
/// the dilation criterion for contractive families.
///
/// Every generator is first verified to be a contraction (`I − TᵀT`
/// positive semidefinite); every subset LCM must be resolved.
pub fn z_functional<Fam: OperatorFamily + ?Sized>(
    family: &Fam,
    ball: &Ball,
    f: &[ElementId],
) -> Result<RationalMatrix, ZFunctionalError> {
    let dim = family.dim();
    let id = RationalMatrix::identity(dim);
    for s in 0..ball.presentation().alphabet_size() {
        if let Ok(Some(gid)) = ball.id_of(&Word::generator(s as Letter)) {
            let t = family.operator(ball, gid);
            let defect = id.sub(&t.transpose().mul(&t));
            if !defect.psd().expect("contraction defect is symmetric") {
                return Err(ZFunctionalError::NotContractive { generator: s as Letter });
            }
        }
    }
    let mut elems: Vec<ElementId> = f.to_vec();
    elems.sort_unstable();
    elems.dedup();
    assert!(elems.len() < 64, "subset enumeration over more than 63 elements");
    let mut sum = RationalMatrix::zeros(dim, dim);
    for mask in 0u64..(1u64 << elems.len()) {
        let subset: Vec<ElementId> =
            elems.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let term = if subset.is_empty() {
            id.clone()
        } else {
            match lcm::lcm_set(ball, &subset) {
                LcmResult::Lcm { r } => {
                    let t = family.operator(ball, r);
                    t.mul(&t.transpose())
                }
                LcmResult::ProvenEmpty { .. } => continue,
                _ => {
                    return Err(ZFunctionalError::Unresolved {
                        subset,
                        bound: ball.radius(),
                    })
                }
            }
        };
        sum = if mask.count_ones() % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    Ok(sum)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionError {
    /// The representation is over a different presentation than the
    /// restricted one of the inclusion.
    PresentationMismatch,
    /// The inclusion is not verified closed under factorization, which
    /// the construction requires.
    HypothesisNotVerified,
    /// A product `p · q` inside the ball where `T(pq) ≠ T(p) T(q)`.
    MultiplicativityFailed { p: ElementId, q: ElementId },
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::PresentationMismatch => {
                write!(f, "representation does not match the restricted presentation")
            }
            ExtensionError::HypothesisNotVerified => {
                write!(f, "inclusion is not verified closed under factorization")
            }
            ExtensionError::MultiplicativityFailed { p, q } => {
                write!(f, "extension is not multiplicative at #{} · #{}", p.index(), q.index())
            }
        }
    }
}

/// The extension-by-zero family over the ambient ball: members of the
/// submonoid keep their matrices, everything else acts by zero.
#[derive(Debug)]
pub struct ZeroExtension {
    dim: usize,
    table: Vec<RationalMatrix>,
}

impl OperatorFamily for ZeroExtension {
    fn dim(&self) -> usize {
        self.dim
    }

    fn operator(&self, _ball: &Ball, x: ElementId) -> RationalMatrix {
        self.table[x.index()].clone()
    }
}

/// Extends a representation of the submonoid to the whole ball by
/// zero. Factorization-closure is the hypothesis that makes the
/// extension multiplicative: a product landing in the submonoid forces
/// both factors in, so a zero factor only ever meets a zero product.
/// Multiplicativity is verified on every in-ball factorization.
pub fn extend_by_zero(
    inc: &ParabolicInclusion<'_>,
    v: &Representation,
) -> Result<ZeroExtension, ExtensionError> {
    let restricted = inc.restricted_presentation();
    if v.presentation().alphabet_size() != restricted.alphabet_size()
        || v.presentation().relations() != restricted.relations()
    {
        return Err(ExtensionError::PresentationMismatch);
    }
    if !inc.check_closed_under_factorization().holds() {
        return Err(ExtensionError::HypothesisNotVerified);
    }
    let ball = inc.ball();
    let mut back = alloc::vec![None; ball.presentation().alphabet_size()];
    for (new, &old) in inc.letter_map().iter().enumerate() {
        back[old] = Some(new as Letter);
    }
    let dim = v.dim();
    let zero = RationalMatrix::zeros(dim, dim);
    let table: Vec<RationalMatrix> = ball
        .ids()
        .map(|p| match inc.member_word(p) {
            Some(w) => {
                let letters = w
                    .letters()
                    .iter()
                    .map(|&l| back[l as usize].expect("member words use subset letters"))
                    .collect();
                v.word_matrix(&Word::from_letters(letters))
            }
            None => zero.clone(),
        })
        .collect();
    for z in ball.ids() {
        for &(p, q) in ball.factorizations(z) {
            if table[z.index()] != table[p.index()].mul(&table[q.index()]) {
                return Err(ExtensionError::MultiplicativityFailed { p, q });
            }
        }
    }
    Ok(ZeroExtension { dim, table })
}
