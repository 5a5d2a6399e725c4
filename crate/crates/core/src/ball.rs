//! Balls of bounded word length in a presented monoid.
//!
//! A [`Ball`] enumerates every element of length at most the radius,
//! identified by the lexicographically least word of its saturation
//! class. Identifiers are assigned in shortlex order of canonical words,
//! so smaller ids never have greater length. Alongside the elements the
//! ball stores complete left-divisibility data: every factorization
//! `r = p · q` with all three elements in the ball, and for each element
//! the set of its multiples as a bitset over ids. The divisibility
//! tables are what the LCM and inclusion machinery consumes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::presentation::{ClassCapExceeded, HomogeneousPresentation};
use crate::verdict::Verdict;
use crate::word::{Letter, Word};

/// Index of an element in a [`Ball`]. Ids are ordered by shortlex on
/// canonical words: comparing ids of equal-length elements compares
/// their canonical words lexicographically.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One element of the ball: its canonical word and the size of its
/// saturation class.
#[derive(Clone, Debug)]
pub struct Element {
    canonical: Word,
    class_size: usize,
}

impl Element {
    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn length(&self) -> usize {
        self.canonical.len()
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }
}

/// A witness that multiplication by some element is not injective: `p x`
/// and `p y` (or `x p` and `y p`) coincide while `x ≠ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationWitness {
    pub side: Side,
    pub multiplier: Word,
    pub x: Word,
    pub y: Word,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl core::fmt::Display for CancellationWitness {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let (a, b) = match self.side {
            Side::Left => ("p·x = p·y", "left"),
            Side::Right => ("x·p = y·p", "right"),
        };
        write!(f, "{b} cancellation fails: {a} with x ≠ y (|p| = {})", self.multiplier.len())
    }
}

/// All elements of length at most `radius`, with divisibility tables.
pub struct Ball {
    presentation: HomogeneousPresentation,
    radius: usize,
    cap: usize,
    elements: Vec<Element>,
    /// First id of each length, plus a sentinel: elements of length `l`
    /// occupy ids `length_start[l] .. length_start[l + 1]`.
    length_start: Vec<u32>,
    /// Canonical word of an in-ball element to its id.
    index: BTreeMap<Word, ElementId>,
    /// All factorizations `r = p · q` within the ball, stored per `r` as
    /// `(p, q)` pairs sorted by id. Every class word of `r` contributes
    /// each of its splits, so the table sees through the relations.
    factorizations: Vec<Vec<(ElementId, ElementId)>>,
    /// `multiples[p]` is the set of `r` in the ball with `r = p · q` for
    /// some `q`, as a bitset over ids.
    multiples: Vec<BitSet>,
}

impl Ball {
    /// Enumerates the ball of the given radius. The `cap` bounds the
    /// size of any single saturation class; exceeding it aborts the
    /// whole construction, since a truncated class would corrupt every
    /// table built from it.
    pub fn enumerate(
        presentation: &HomogeneousPresentation,
        radius: usize,
        cap: usize,
    ) -> Result<Ball, ClassCapExceeded> {
        let n = presentation.alphabet_size();
        let mut elements = Vec::new();
        let mut index: BTreeMap<Word, ElementId> = BTreeMap::new();
        let mut length_start = alloc::vec![0u32];

        elements.push(Element { canonical: Word::empty(), class_size: 1 });
        index.insert(Word::empty(), ElementId(0));
        length_start.push(1);

        // Elements of length l + 1 are exactly the canonical forms of
        // w·s over in-ball w of length l and generators s: every word
        // of length l + 1 splits off its last letter, and rewriting the
        // length-l prefix first cannot change the class of the product.
        let mut previous: Vec<Word> = alloc::vec![Word::empty()];
        for _ in 1..=radius {
            let mut layer: BTreeMap<Word, usize> = BTreeMap::new();
            for w in &previous {
                for s in 0..n {
                    let extended = w.concat(&Word::generator(s as Letter));
                    let class = presentation.saturate(&extended, cap)?;
                    let canonical = class.iter().next().expect("class is nonempty").clone();
                    layer.entry(canonical).or_insert(class.len());
                }
            }
            previous = layer.keys().cloned().collect();
            for (canonical, class_size) in layer {
                let id = ElementId(elements.len() as u32);
                index.insert(canonical.clone(), id);
                elements.push(Element { canonical, class_size });
            }
            length_start.push(elements.len() as u32);
        }

        let mut ball = Ball {
            presentation: presentation.clone(),
            radius,
            cap,
            elements,
            length_start,
            index,
            factorizations: Vec::new(),
            multiples: Vec::new(),
        };
        ball.build_divisibility()?;
        Ok(ball)
    }

    /// Fills the factorization and multiples tables by splitting every
    /// class word of every element at every position.
    fn build_divisibility(&mut self) -> Result<(), ClassCapExceeded> {
        let count = self.elements.len();
        let mut factorizations: Vec<alloc::collections::BTreeSet<(ElementId, ElementId)>> =
            alloc::vec![alloc::collections::BTreeSet::new(); count];
        for r in 0..count {
            let rid = ElementId(r as u32);
            let class = self.presentation.saturate(&self.elements[r].canonical, self.cap)?;
            for w in &class {
                for split in 0..=w.len() {
                    let p = self.id_of(&w.prefix(split))?.expect("prefix is in the ball");
                    let q = self.id_of(&w.suffix_from(split))?.expect("suffix is in the ball");
                    factorizations[rid.index()].insert((p, q));
                }
            }
        }
        let mut multiples = alloc::vec![BitSet::new(count); count];
        for (r, pairs) in factorizations.iter().enumerate() {
            for &(p, _) in pairs {
                multiples[p.index()].insert(r);
            }
        }
        self.factorizations = factorizations.into_iter().map(|s| s.into_iter().collect()).collect();
        self.multiples = multiples;
        Ok(())
    }

    pub fn presentation(&self) -> &HomogeneousPresentation {
        &self.presentation
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn class_cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, id: ElementId) -> &Element {
        &self.elements[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.elements.len() as u32).map(ElementId)
    }

    pub fn length_of(&self, id: ElementId) -> usize {
        self.elements[id.index()].length()
    }

    /// Ids of all elements of exactly the given length.
    pub fn elements_of_length(&self, l: usize) -> impl Iterator<Item = ElementId> {
        let (lo, hi) = if l < self.length_start.len() - 1 {
            (self.length_start[l], self.length_start[l + 1])
        } else {
            (0, 0)
        };
        (lo..hi).map(ElementId)
    }

    /// Number of elements of each length, index 0 through the radius.
    pub fn census(&self) -> Vec<usize> {
        (0..=self.radius)
            .map(|l| (self.length_start[l + 1] - self.length_start[l]) as usize)
            .collect()
    }

    /// Id of the element presented by `word`, or `None` when its length
    /// exceeds the radius.
    pub fn id_of(&self, word: &Word) -> Result<Option<ElementId>, ClassCapExceeded> {
        if word.len() > self.radius {
            return Ok(None);
        }
        if let Some(&id) = self.index.get(word) {
            return Ok(Some(id));
        }
        let canonical = self.presentation.canonical(word, self.cap)?;
        Ok(self.index.get(&canonical).copied())
    }

    /// The saturation class of an element, recomputed on demand.
    pub fn class(&self, id: ElementId) -> Result<alloc::collections::BTreeSet<Word>, ClassCapExceeded> {
        self.presentation.saturate(&self.elements[id.index()].canonical, self.cap)
    }

    /// Product of two ball elements, when it stays inside the ball.
    pub fn mul(&self, a: ElementId, b: ElementId) -> Result<Option<ElementId>, ClassCapExceeded> {
        let w = self.elements[a.index()].canonical.concat(&self.elements[b.index()].canonical);
        self.id_of(&w)
    }

    /// Whether `p` left-divides `r`, i.e. `r = p · q` for some ball
    /// element `q`.
    pub fn divides(&self, p: ElementId, r: ElementId) -> bool {
        self.multiples[p.index()].contains(r.index())
    }

    /// Some right quotient `q` with `r = p · q`, if one exists. With a
    /// left-cancellative presentation it is unique.
    pub fn quotient(&self, p: ElementId, r: ElementId) -> Option<ElementId> {
        self.factorizations[r.index()]
            .iter()
            .find(|&&(d, _)| d == p)
            .map(|&(_, q)| q)
    }

    /// All factorizations `r = p · q` as `(p, q)` pairs, sorted by id.
    pub fn factorizations(&self, r: ElementId) -> &[(ElementId, ElementId)] {
        &self.factorizations[r.index()]
    }

    /// The set of in-ball multiples of `p` (its principal right ideal
    /// intersected with the ball), as a bitset over ids.
    pub fn multiples(&self, p: ElementId) -> &BitSet {
        &self.multiples[p.index()]
    }

    /// Left divisors of `r`, ascending by id.
    pub fn divisors(&self, r: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        let mut last = None;
        self.factorizations[r.index()].iter().filter_map(move |&(p, _)| {
            if last == Some(p) {
                None
            } else {
                last = Some(p);
                Some(p)
            }
        })
    }

    /// Searches for a cancellation failure: elements `p, x ≠ y` with
    /// `p x = p y` (left) or `x p = y p` (right), over all pairs whose
    /// products stay in the ball. `Holds` means multiplication is
    /// injective as far as the ball can see, which is evidence, not
    /// proof; a witness refutes cancellativity outright.
    pub fn check_cancellativity(&self) -> Result<Verdict<CancellationWitness>, ClassCapExceeded> {
        for side in [Side::Left, Side::Right] {
            for p in self.ids() {
                let pl = self.length_of(p);
                if pl == 0 {
                    continue;
                }
                let mut seen: BTreeMap<ElementId, ElementId> = BTreeMap::new();
                for x in self.ids() {
                    if pl + self.length_of(x) > self.radius {
                        continue;
                    }
                    let product = match side {
                        Side::Left => self.mul(p, x)?,
                        Side::Right => self.mul(x, p)?,
                    }
                    .expect("product length is within the radius");
                    if let Some(&y) = seen.get(&product) {
                        return Ok(Verdict::Fails(CancellationWitness {
                            side,
                            multiplier: self.elements[p.index()].canonical.clone(),
                            x: self.elements[y.index()].canonical.clone(),
                            y: self.elements[x.index()].canonical.clone(),
                        }));
                    }
                    seen.insert(product, x);
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// Whether the element lies in the submonoid generated by the given
    /// letters: some word of its class uses only those letters.
    pub fn parabolic_member(
        &self,
        id: ElementId,
        support: &[bool],
    ) -> Result<Option<Word>, ClassCapExceeded> {
        let class = self.class(id)?;
        Ok(class.into_iter().find(|w| w.supported_on(support)))
    }
}
