//! Least common multiples of principal right ideals, within a ball.
//!
//! For elements `x, y` of a ball the intersection `xP ∩ yP ∩ ball` is
//! computed exactly from the divisibility tables. Results are certified:
//! [`LcmResult::Lcm`] is returned only when a unique minimal-length
//! member divides every other member, and emptiness is only ever
//! *proven* by a rule that survives outside the ball (generators of
//! infinite Coxeter order have disjoint ideals, and disjointness is
//! inherited by their multiples). Everything else is reported as
//! bounded: empty up to the radius, or inconclusive.

use crate::ball::{Ball, ElementId};
use crate::bitset::BitSet;
use crate::presentation::CoxeterEntry;
use crate::verdict::Verdict;
use crate::word::Letter;
use alloc::vec::Vec;
use core::fmt;

/// Certified outcome of an LCM computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcmResult {
    /// `r` is a common multiple and every common multiple inside the
    /// ball is a multiple of `r`.
    Lcm { r: ElementId },
    /// No common multiple exists at all; the reason can be re-verified.
    ProvenEmpty { reason: EmptyReason },
    /// No common multiple of length at most `bound` exists; longer ones
    /// may.
    EmptyUpTo { bound: usize },
    /// The intersection is nonempty but the ball does not certify a
    /// least member (several minimal members, or a member that is not a
    /// multiple of the minimal one).
    InconclusiveUpTo { bound: usize },
}

impl LcmResult {
    /// Resolved means the result is a definite statement about the full
    /// monoid's intersection or a certified in-ball LCM, as opposed to
    /// evidence that ran out at the radius.
    pub fn is_resolved(&self) -> bool {
        matches!(self, LcmResult::Lcm { .. } | LcmResult::ProvenEmpty { .. })
    }
}

/// A machine-checkable proof that two principal right ideals are
/// disjoint in the full monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmptyReason {
    /// Generators `g`, `h` of infinite Coxeter order left-divide `x`
    /// and `y` respectively. In an Artin monoid `gP ∩ hP = ∅` when
    /// `m(g,h) = ∞`, and `xP ∩ yP ⊆ gP ∩ hP`.
    InfiniteOrderGenerators {
        x: ElementId,
        g: Letter,
        y: ElementId,
        h: Letter,
    },
}

impl EmptyReason {
    /// Re-checks the certificate against the ball it came from: the
    /// named generators must divide the named elements and their
    /// Coxeter entry must be infinite.
    pub fn verify(&self, ball: &Ball) -> bool {
        match *self {
            EmptyReason::InfiniteOrderGenerators { x, g, y, h } => {
                let matrix = match ball.presentation().coxeter() {
                    Some(m) => m,
                    None => return false,
                };
                if matrix.get(g as usize, h as usize) != CoxeterEntry::Infinite {
                    return false;
                }
                generator_divides(ball, g, x) && generator_divides(ball, h, y)
            }
        }
    }
}

impl fmt::Display for EmptyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EmptyReason::InfiniteOrderGenerators { g, h, .. } => write!(
                f,
                "generators {} and {} have infinite Coxeter order and divide the two sides",
                g, h
            ),
        }
    }
}

fn generator_divides(ball: &Ball, g: Letter, x: ElementId) -> bool {
    match ball.id_of(&crate::word::Word::generator(g)) {
        Ok(Some(gid)) => ball.divides(gid, x),
        _ => false,
    }
}

/// Generators that left-divide `x`, as letters.
fn divisor_generators(ball: &Ball, x: ElementId) -> Vec<Letter> {
    ball.factorizations(x)
        .iter()
        .filter(|&&(p, _)| ball.length_of(p) == 1)
        .map(|&(p, _)| ball.element(p).canonical().letters()[0])
        .collect()
}

/// Looks for a pair of infinite-order generators dividing `x` and `y`.
/// Requires the presentation to carry a Coxeter matrix; hand-built
/// presentations never produce proofs of emptiness.
pub(crate) fn proven_empty(ball: &Ball, x: ElementId, y: ElementId) -> Option<EmptyReason> {
    let matrix = ball.presentation().coxeter()?;
    let gens_x = divisor_generators(ball, x);
    let gens_y = divisor_generators(ball, y);
    for &g in &gens_x {
        for &h in &gens_y {
            if matrix.get(g as usize, h as usize) == CoxeterEntry::Infinite {
                return Some(EmptyReason::InfiniteOrderGenerators { x, g, y, h });
            }
        }
    }
    None
}

/// `(⋂ xP) ∩ ball` for the listed elements, exact. The empty list gives
/// the whole ball (the empty intersection).
pub fn ideal_intersection(ball: &Ball, xs: &[ElementId]) -> BitSet {
    let mut members = BitSet::new(ball.len());
    for id in ball.ids() {
        members.insert(id.index());
    }
    for &x in xs {
        members.intersect_with(ball.multiples(x));
    }
    members
}

/// Structure of a nonempty in-ball intersection, used by both the LCM
/// certificate and the right-LCM sweep.
pub(crate) enum IntersectionShape {
    Empty,
    /// Unique minimal member dividing every member.
    Principal { r: ElementId },
    /// Two distinct members of the same minimal length. Neither divides
    /// the other, so no in-ball member generates the intersection.
    TwoMinimal { m1: ElementId, m2: ElementId },
    /// Unique minimal member, but some member escapes its ideal. The
    /// minimal member is the first set bit; the sweep only needs the
    /// shape.
    StrayMember,
}

pub(crate) fn analyze(ball: &Ball, members: &BitSet) -> IntersectionShape {
    analyze_with(ball, members, |r| ball.multiples(r))
}

/// Shape analysis against a caller-supplied divisibility table, so the
/// parabolic sweeps can classify intersections inside the submonoid.
pub(crate) fn analyze_with<'b>(
    ball: &Ball,
    members: &BitSet,
    multiples_of: impl Fn(ElementId) -> &'b BitSet,
) -> IntersectionShape {
    let first = match members.iter().next() {
        Some(i) => ElementId(i as u32),
        None => return IntersectionShape::Empty,
    };
    // Ids are shortlex-ordered, so minimal-length members come first.
    let min_len = ball.length_of(first);
    if let Some(second) = members
        .iter()
        .skip(1)
        .map(|i| ElementId(i as u32))
        .take_while(|&m| ball.length_of(m) == min_len)
        .next()
    {
        return IntersectionShape::TwoMinimal { m1: first, m2: second };
    }
    if members.iter().any(|i| !multiples_of(first).contains(i)) {
        return IntersectionShape::StrayMember;
    }
    IntersectionShape::Principal { r: first }
}

/// Least common multiple of `x` and `y`, certified within the ball.
pub fn lcm(ball: &Ball, x: ElementId, y: ElementId) -> LcmResult {
    let members = ball.multiples(x).intersection(ball.multiples(y));
    match analyze(ball, &members) {
        IntersectionShape::Empty => match proven_empty(ball, x, y) {
            Some(reason) => LcmResult::ProvenEmpty { reason },
            None => LcmResult::EmptyUpTo { bound: ball.radius() },
        },
        IntersectionShape::Principal { r } => LcmResult::Lcm { r },
        IntersectionShape::TwoMinimal { .. } | IntersectionShape::StrayMember => {
            LcmResult::InconclusiveUpTo { bound: ball.radius() }
        }
    }
}

/// LCM of a finite nonempty set, with the same certificate semantics as
/// the pairwise version applied to the joint intersection.
pub fn lcm_set(ball: &Ball, f: &[ElementId]) -> LcmResult {
    let members = ideal_intersection(ball, f);
    match analyze(ball, &members) {
        IntersectionShape::Empty => {
            for (i, &x) in f.iter().enumerate() {
                for &y in &f[i + 1..] {
                    if let Some(reason) = proven_empty(ball, x, y) {
                        return LcmResult::ProvenEmpty { reason };
                    }
                }
            }
            LcmResult::EmptyUpTo { bound: ball.radius() }
        }
        IntersectionShape::Principal { r } => LcmResult::Lcm { r },
        IntersectionShape::TwoMinimal { .. } | IntersectionShape::StrayMember => {
            LcmResult::InconclusiveUpTo { bound: ball.radius() }
        }
    }
}

/// Witness against the right-LCM property: the common multiples of `x`
/// and `y` include two minimal members `m1 ≠ m2` whose own ideals are
/// provably disjoint, so no element can generate `xP ∩ yP`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightLcmWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub m1: ElementId,
    pub m2: ElementId,
    pub reason: EmptyReason,
}

impl fmt::Display for RightLcmWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "two minimal common multiples with provably disjoint ideals ({})",
            self.reason
        )
    }
}

/// Sweeps all element pairs and checks that each intersection is
/// certified principal or empty. Fails demands a proof: two minimal
/// common multiples whose own intersection is provably empty. A pair
/// that is merely uncertified makes the verdict inconclusive.
pub fn verify_right_lcm(ball: &Ball) -> Verdict<RightLcmWitness> {
    let mut inconclusive = false;
    for x in ball.ids() {
        for y in ball.ids() {
            if y < x {
                continue;
            }
            let members = ball.multiples(x).intersection(ball.multiples(y));
            match analyze(ball, &members) {
                IntersectionShape::Empty | IntersectionShape::Principal { .. } => {}
                IntersectionShape::TwoMinimal { m1, m2 } => {
                    let joint = ball.multiples(m1).intersection(ball.multiples(m2));
                    if joint.is_empty() {
                        if let Some(reason) = proven_empty(ball, m1, m2) {
                            return Verdict::Fails(RightLcmWitness { x, y, m1, m2, reason });
                        }
                    }
                    inconclusive = true;
                }
                IntersectionShape::StrayMember => {
                    inconclusive = true;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{CoxeterMatrix, HomogeneousPresentation, SimplicialGraph};
    use crate::word::Word;

    fn ball(p: &HomogeneousPresentation, radius: usize) -> Ball {
        Ball::enumerate(p, radius, 100_000).unwrap()
    }

    fn id(b: &Ball, s: &str) -> ElementId {
        b.id_of(&Word::parse(s, b.presentation().alphabet_size()).unwrap())
            .unwrap()
            .unwrap()
    }

    #[test]
    fn dihedral_generator_lcm_is_the_alternating_product() {
        for m in [2u32, 3, 4] {
            let p = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(m));
            let b = ball(&p, m as usize + 1);
            let (a, bb) = (id(&b, "a"), id(&b, "b"));
            let expect = b
                .id_of(&crate::word::alternating_product(0, 1, m as usize))
                .unwrap()
                .unwrap();
            assert_eq!(lcm(&b, a, bb), LcmResult::Lcm { r: expect });
        }
    }

    #[test]
    fn free_monoid_generators_are_provably_disjoint() {
        let p = HomogeneousPresentation::free(2);
        let b = ball(&p, 3);
        let (a, bb) = (id(&b, "a"), id(&b, "b"));
        match lcm(&b, a, bb) {
            LcmResult::ProvenEmpty { reason } => assert!(reason.verify(&b)),
            other => panic!("expected proven emptiness, got {other:?}"),
        }
    }

    #[test]
    fn same_first_letter_non_multiples_are_only_empty_up_to_bound() {
        // aa and ab share no multiple in F₂⁺, but the only proof rule
        // needs infinite-order generator divisors on both sides, and
        // both are divisible by a alone.
        let p = HomogeneousPresentation::free(2);
        let b = ball(&p, 4);
        let r = lcm(&b, id(&b, "aa"), id(&b, "ab"));
        assert_eq!(r, LcmResult::EmptyUpTo { bound: 4 });
    }

    #[test]
    fn nested_ideals_resolve_to_the_larger_element() {
        let p = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3));
        let b = ball(&p, 4);
        let a = id(&b, "a");
        let bab = id(&b, "bab");
        assert_eq!(lcm(&b, a, bab), LcmResult::Lcm { r: id(&b, "aba") });
        assert_eq!(lcm(&b, a, a), LcmResult::Lcm { r: a });
    }

    #[test]
    fn intersection_matches_multiples_of_the_lcm() {
        let p = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3));
        let b = ball(&p, 4);
        let members = ideal_intersection(&b, &[id(&b, "a"), id(&b, "b")]);
        let expect = [id(&b, "aba"), id(&b, "aaba"), id(&b, "abaa")];
        let got: alloc::vec::Vec<usize> = members.iter().collect();
        let mut want: alloc::vec::Vec<usize> = expect.iter().map(|e| e.index()).collect();
        want.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(members, b.multiples(id(&b, "aba")).clone());
    }

    #[test]
    fn lcm_of_longer_dihedral_pair_is_beyond_small_radius() {
        // In the braid presentation lcm(aa, bb) has length 6.
        let p = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3));
        let b = ball(&p, 5);
        assert_eq!(
            lcm(&b, id(&b, "aa"), id(&b, "bb")),
            LcmResult::EmptyUpTo { bound: 5 }
        );
        let b6 = ball(&p, 6);
        match lcm(&b6, id(&b6, "aa"), id(&b6, "bb")) {
            LcmResult::Lcm { r } => assert_eq!(b6.length_of(r), 6),
            other => panic!("expected an LCM at radius 6, got {other:?}"),
        }
    }

    #[test]
    fn set_lcm_degenerates_to_the_single_element() {
        let p = HomogeneousPresentation::free(2);
        let b = ball(&p, 3);
        let ab = id(&b, "ab");
        assert_eq!(lcm_set(&b, &[ab]), LcmResult::Lcm { r: ab });
    }

    #[test]
    fn analyzer_distinguishes_competing_minimals_from_strays() {
        let p = HomogeneousPresentation::free(2);
        let b = ball(&p, 3);
        let mut members = BitSet::new(b.len());
        members.insert(id(&b, "a").index());
        members.insert(id(&b, "b").index());
        match analyze(&b, &members) {
            IntersectionShape::TwoMinimal { m1, m2 } => {
                assert_eq!((m1, m2), (id(&b, "a"), id(&b, "b")));
            }
            _ => panic!("expected two minimal members"),
        }
        let mut members = BitSet::new(b.len());
        members.insert(id(&b, "a").index());
        members.insert(id(&b, "ba").index());
        match analyze(&b, &members) {
            IntersectionShape::StrayMember => {}
            _ => panic!("expected a stray member"),
        }
    }

    #[test]
    fn set_lcm_reports_proven_emptiness_from_any_disjoint_pair() {
        let p = HomogeneousPresentation::free(2);
        let b = ball(&p, 3);
        let f = [id(&b, "a"), id(&b, "b"), id(&b, "ab")];
        match lcm_set(&b, &f) {
            LcmResult::ProvenEmpty { reason } => assert!(reason.verify(&b)),
            other => panic!("expected proven emptiness, got {other:?}"),
        }
    }

    #[test]
    fn set_lcm_in_free_abelian_rank3_is_the_product() {
        let graph = SimplicialGraph::complete(3);
        let factors = alloc::vec![
            HomogeneousPresentation::free(1),
            HomogeneousPresentation::free(1),
            HomogeneousPresentation::free(1),
        ];
        let p = HomogeneousPresentation::graph_product(&graph, &factors).unwrap();
        let b = ball(&p, 4);
        let f = [id(&b, "a"), id(&b, "b"), id(&b, "c")];
        assert_eq!(lcm_set(&b, &f), LcmResult::Lcm { r: id(&b, "abc") });
    }

    #[test]
    fn right_lcm_sweep_holds_on_artin_examples() {
        for p in [
            HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3)),
            HomogeneousPresentation::free(2),
        ] {
            let b = ball(&p, 4);
            assert_eq!(verify_right_lcm(&b), Verdict::Holds);
        }
    }

    #[test]
    fn right_lcm_sweep_holds_on_the_path_graph_product() {
        let graph = SimplicialGraph::path(3);
        let factors = alloc::vec![
            HomogeneousPresentation::free(1),
            HomogeneousPresentation::free(1),
            HomogeneousPresentation::free(1),
        ];
        let p = HomogeneousPresentation::graph_product(&graph, &factors).unwrap();
        let b = ball(&p, 4);
        assert_eq!(verify_right_lcm(&b), Verdict::Holds);
    }
}
