//! Parabolic submonoid inclusions and their lattice compatibility.
//!
//! A subset `S₁` of the generators spans a submonoid `P₁ ⊆ P`. Whether
//! the pair `(P₁, P)` interacts well with least common multiples is
//! governed by three properties, each checked here on a ball:
//!
//! * *closed under factorization*: whenever a member of `P₁` factors in
//!   `P`, both factors lie in `P₁` again;
//! * *preserves orthogonality*: two members have disjoint principal
//!   ideals in `P₁` exactly when they do in `P`;
//! * *respects LCMs*: for members `x, y` the ambient intersection
//!   `xP ∩ yP` equals `(xP₁ ∩ yP₁)P`.
//!
//! Factorizations of in-ball elements are in-ball, so the first check
//! is exact on the truncation and always decisive. The other two
//! compare in-ball ideal data and escalate: a verified disagreement is
//! a failure with a replayable witness, agreement certified on at least
//! one informative pair (with nothing contradictory elsewhere) passes,
//! and a sweep whose every pair ran out of radius is inconclusive.

use crate::ball::{Ball, ElementId};
use crate::bitset::BitSet;
use crate::lcm::{self, EmptyReason, IntersectionShape, RightLcmWitness};
use crate::presentation::{ClassCapExceeded, CoxeterEntry, HomogeneousPresentation};
use crate::verdict::Verdict;
use crate::word::{Letter, Word};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionError {
    GeneratorOutOfRange { index: usize, alphabet_size: usize },
    Cap(ClassCapExceeded),
}

impl fmt::Display for InclusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InclusionError::GeneratorOutOfRange { index, alphabet_size } => {
                write!(f, "generator {} is out of range for alphabet size {}", index, alphabet_size)
            }
            InclusionError::Cap(e) => e.fmt(f),
        }
    }
}

impl From<ClassCapExceeded> for InclusionError {
    fn from(e: ClassCapExceeded) -> Self {
        InclusionError::Cap(e)
    }
}

/// A member of the submonoid with an ambient factorization that
/// escapes it: `w = x · y` with `x` or `y` outside `P₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub w: ElementId,
    pub x: ElementId,
    pub y: ElementId,
}

impl fmt::Display for FactorizationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "member #{} factors as #{} · #{} with a factor outside the submonoid",
            self.w.index(),
            self.x.index(),
            self.y.index()
        )
    }
}

/// Members whose ideals are provably disjoint inside the submonoid yet
/// share the ambient common multiple `ambient_multiple`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub reason: EmptyReason,
    pub ambient_multiple: ElementId,
}

impl fmt::Display for OrthogonalityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{} and #{} have provably disjoint ideals in the submonoid ({}) yet #{} is an ambient common multiple",
            self.x.index(),
            self.y.index(),
            self.reason,
            self.ambient_multiple.index()
        )
    }
}

/// An ambient common multiple of `x` and `y` that is not a multiple of
/// any common multiple they have inside the submonoid. Any such inner
/// common multiple would be at most as long as `stray`, hence inside
/// the ball, so the witness proves the violation outright.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RespectsWitness {
    pub x: ElementId,
    pub y: ElementId,
    pub stray: ElementId,
}

impl fmt::Display for RespectsWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{} is a common multiple of #{} and #{} in the ambient monoid but not a multiple of any of their submonoid common multiples",
            self.stray.index(),
            self.x.index(),
            self.y.index()
        )
    }
}

/// A generator subset together with the membership and divisibility
/// data of the submonoid it spans, restricted to a ball.
///
/// Membership is decided on whole congruence classes: an element
/// belongs to `P₁` when some word of its class uses only the chosen
/// letters. `P₁`-divisibility likewise quantifies over factorizations,
/// so `z ∈ xP₁` requires a factorization `z = x · q` with `q` a member.
pub struct ParabolicInclusion<'a> {
    ball: &'a Ball,
    subset: Vec<usize>,
    member: BitSet,
    member_word: Vec<Option<Word>>,
    sub_multiples: Vec<BitSet>,
    generator_ids: Vec<Option<ElementId>>,
    restricted: HomogeneousPresentation,
    letter_map: Vec<usize>,
}

impl<'a> ParabolicInclusion<'a> {
    pub fn new(ball: &'a Ball, subset: &BTreeSet<usize>) -> Result<Self, InclusionError> {
        let n = ball.presentation().alphabet_size();
        let mut support = alloc::vec![false; n];
        for &s in subset {
            if s >= n {
                return Err(InclusionError::GeneratorOutOfRange { index: s, alphabet_size: n });
            }
            support[s] = true;
        }
        let (restricted, letter_map) = ball.presentation().restrict(subset);

        let mut member = BitSet::new(ball.len());
        let mut member_word = alloc::vec![None; ball.len()];
        for id in ball.ids() {
            if let Some(w) = ball.parabolic_member(id, &support)? {
                member.insert(id.index());
                member_word[id.index()] = Some(w);
            }
        }

        // z ∈ pP₁ exactly when some factorization z = p · q has q in
        // the submonoid; both factors being members makes z one too.
        let mut sub_multiples = alloc::vec![BitSet::new(ball.len()); ball.len()];
        for z in ball.ids() {
            for &(p, q) in ball.factorizations(z) {
                if member.contains(p.index()) && member.contains(q.index()) {
                    sub_multiples[p.index()].insert(z.index());
                }
            }
        }

        let generator_ids = subset
            .iter()
            .map(|&s| ball.id_of(&Word::generator(s as Letter)).ok().flatten())
            .collect();

        Ok(ParabolicInclusion {
            ball,
            subset: subset.iter().copied().collect(),
            member,
            member_word,
            sub_multiples,
            generator_ids,
            restricted,
            letter_map,
        })
    }

    pub fn ball(&self) -> &Ball {
        self.ball
    }

    /// The chosen generators, as ambient letters in ascending order.
    pub fn generators(&self) -> &[usize] {
        &self.subset
    }

    /// The submonoid on its own alphabet, with the surviving relations.
    pub fn restricted_presentation(&self) -> &HomogeneousPresentation {
        &self.restricted
    }

    /// Ambient letter for each letter of the restricted presentation.
    pub fn letter_map(&self) -> &[usize] {
        &self.letter_map
    }

    pub fn is_member(&self, x: ElementId) -> bool {
        self.member.contains(x.index())
    }

    /// A spelling of `x` over the chosen letters, when `x` is a member.
    pub fn member_word(&self, x: ElementId) -> Option<&Word> {
        self.member_word[x.index()].as_ref()
    }

    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.member.iter().map(|i| ElementId(i as u32))
    }

    pub fn member_count(&self) -> usize {
        self.member.count()
    }

    /// In-ball members of `xP₁`. Meaningful for members `x`; empty
    /// otherwise.
    pub fn sub_multiples(&self, x: ElementId) -> &BitSet {
        &self.sub_multiples[x.index()]
    }

    /// Emptiness certificate for `xP₁ ∩ yP₁`, using only divisors and
    /// Coxeter entries from the chosen subset. The same letters divide
    /// ambiently, so the certificate also proves `xP ∩ yP = ∅`.
    fn proven_empty_inside(&self, x: ElementId, y: ElementId) -> Option<EmptyReason> {
        let matrix = self.ball.presentation().coxeter()?;
        for (i, &g) in self.subset.iter().enumerate() {
            let gid = self.generator_ids[i]?;
            if !self.sub_multiples[gid.index()].contains(x.index()) {
                continue;
            }
            for (j, &h) in self.subset.iter().enumerate() {
                let hid = self.generator_ids[j]?;
                if !self.sub_multiples[hid.index()].contains(y.index()) {
                    continue;
                }
                if matrix.get(g, h) == CoxeterEntry::Infinite {
                    return Some(EmptyReason::InfiniteOrderGenerators {
                        x,
                        g: g as Letter,
                        y,
                        h: h as Letter,
                    });
                }
            }
        }
        None
    }

    /// Every ambient factorization of every member must stay in the
    /// submonoid. Factorizations of in-ball elements are in-ball, so
    /// the sweep is exact for the truncation and never inconclusive.
    pub fn check_closed_under_factorization(&self) -> Verdict<FactorizationWitness> {
        for w in self.members() {
            for &(x, y) in self.ball.factorizations(w) {
                if !self.is_member(x) || !self.is_member(y) {
                    return Verdict::Fails(FactorizationWitness { w, x, y });
                }
            }
        }
        Verdict::Holds
    }

    /// Disjointness of principal ideals must agree between `P₁` and
    /// `P`, swept over unordered pairs of non-identity members.
    ///
    /// A pair is settled when a common multiple shows up inside the
    /// submonoid (then both sides are nonempty), or when both sides are
    /// empty in-ball and an emptiness certificate covers them. A
    /// certificate of inner disjointness together with an ambient
    /// common multiple is a proven failure. Pairs with one-sided
    /// in-ball evidence taint the verdict, and a sweep where no pair
    /// settled at all stays inconclusive.
    pub fn check_preserves_orthogonality(&self) -> Verdict<OrthogonalityWitness> {
        let mut tainted = false;
        let mut open = 0usize;
        let mut settled = 0usize;
        for x in self.members() {
            if x == ElementId::IDENTITY {
                continue;
            }
            for y in self.members() {
                if y <= x {
                    continue;
                }
                let inner = self.sub_multiples(x).intersection(self.sub_multiples(y));
                if !inner.is_empty() {
                    settled += 1;
                    continue;
                }
                let ambient = self.ball.multiples(x).intersection(self.ball.multiples(y));
                let certificate = self.proven_empty_inside(x, y);
                if let Some(stray) = ambient.first() {
                    match certificate {
                        Some(reason) => {
                            return Verdict::Fails(OrthogonalityWitness {
                                x,
                                y,
                                reason,
                                ambient_multiple: ElementId(stray as u32),
                            });
                        }
                        // Inner side merely empty-at-radius while the
                        // ambient side is nonempty: unresolved tension.
                        None => tainted = true,
                    }
                } else if certificate.is_some() || lcm::proven_empty(self.ball, x, y).is_some() {
                    settled += 1;
                } else {
                    open += 1;
                }
            }
        }
        if tainted || (open > 0 && settled == 0) {
            return Verdict::Inconclusive { bound: self.ball.radius() };
        }
        Verdict::Holds
    }

    /// For members `x, y` the ambient intersection `xP ∩ yP` must equal
    /// `(xP₁ ∩ yP₁)P`. Inside the ball both sides are known exactly:
    /// any inner common multiple dividing an in-ball element is itself
    /// in-ball, so the right side meets the ball in exactly the union
    /// of `mP ∩ ball` over in-ball inner common multiples `m`.
    ///
    /// A mismatch is therefore a proven failure, whatever the radius.
    /// Pairs agree by set equality, or by both sides being empty with a
    /// disjointness certificate; pairs that are empty-empty without a
    /// certificate stay open, and a sweep with only open pairs is
    /// inconclusive.
    pub fn check_respects_lcm(&self) -> Verdict<RespectsWitness> {
        let mut open = 0usize;
        let mut settled = 0usize;
        for x in self.members() {
            if x == ElementId::IDENTITY {
                continue;
            }
            for y in self.members() {
                if y <= x {
                    continue;
                }
                let inner = self.sub_multiples(x).intersection(self.sub_multiples(y));
                let ambient = self.ball.multiples(x).intersection(self.ball.multiples(y));
                if inner.is_empty() {
                    if let Some(stray) = ambient.first() {
                        return Verdict::Fails(RespectsWitness {
                            x,
                            y,
                            stray: ElementId(stray as u32),
                        });
                    }
                    if self.proven_empty_inside(x, y).is_some()
                        || lcm::proven_empty(self.ball, x, y).is_some()
                    {
                        settled += 1;
                    } else {
                        open += 1;
                    }
                    continue;
                }
                let mut covered = BitSet::new(self.ball.len());
                for m in inner.iter() {
                    covered.union_with(self.ball.multiples(ElementId(m as u32)));
                }
                if covered == ambient {
                    settled += 1;
                } else {
                    // covered ⊆ ambient always, so the difference is an
                    // ambient multiple escaping the inner ideals.
                    let stray = ambient.iter().find(|&i| !covered.contains(i)).unwrap();
                    return Verdict::Fails(RespectsWitness {
                        x,
                        y,
                        stray: ElementId(stray as u32),
                    });
                }
            }
        }
        if open > 0 && settled == 0 {
            return Verdict::Inconclusive { bound: self.ball.radius() };
        }
        Verdict::Holds
    }

    /// Right-LCM sweep of the submonoid itself, with all ideal data
    /// filtered through `P₁`-divisibility. Mirrors the ambient sweep.
    pub fn verify_right_lcm(&self) -> Verdict<RightLcmWitness> {
        let mut inconclusive = false;
        for x in self.members() {
            for y in self.members() {
                if y < x {
                    continue;
                }
                let inner = self.sub_multiples(x).intersection(self.sub_multiples(y));
                match lcm::analyze_with(self.ball, &inner, |r| self.sub_multiples(r)) {
                    IntersectionShape::Empty | IntersectionShape::Principal { .. } => {}
                    IntersectionShape::TwoMinimal { m1, m2 } => {
                        let joint = self.sub_multiples(m1).intersection(self.sub_multiples(m2));
                        if joint.is_empty() {
                            if let Some(reason) = self.proven_empty_inside(m1, m2) {
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
            Verdict::Inconclusive { bound: self.ball.radius() }
        } else {
            Verdict::Holds
        }
    }
}
