//! Three-valued outcomes for property checks on finite truncations.
//!
//! Checks against a ball of bounded radius can confirm a property on the
//! truncation, refute it with a concrete witness, or run out of evidence.
//! The three cases are kept apart so that a caller can never mistake
//! "nothing contradicted it up to radius 5" for a proof.

use core::fmt;

/// Outcome of a check, carrying a witness type `W` for failures.
///
/// `Holds` means every instance inside the examined truncation was
/// verified. `Fails` carries a finite witness that refutes the property
/// outright; witnesses are made of explicit elements and can be replayed
/// independently. `Inconclusive` records the radius that was exhausted
/// without either confirming all instances or finding a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
    Inconclusive { bound: usize },
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    /// Rewraps the witness, keeping the other two cases intact.
    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
            Verdict::Inconclusive { bound } => Verdict::Inconclusive { bound },
        }
    }

    /// Combines two verdicts for a conjunction of properties: any
    /// failure dominates, then any inconclusive, and `Holds` only when
    /// both sides hold. Of two failures the first is kept; of two
    /// inconclusive bounds the smaller, since that radius already
    /// limited the evidence.
    pub fn and(self, other: Verdict<W>) -> Verdict<W> {
        match (self, other) {
            (Verdict::Fails(w), _) | (_, Verdict::Fails(w)) => Verdict::Fails(w),
            (Verdict::Inconclusive { bound: a }, Verdict::Inconclusive { bound: b }) => {
                Verdict::Inconclusive { bound: a.min(b) }
            }
            (Verdict::Inconclusive { bound }, _) | (_, Verdict::Inconclusive { bound }) => {
                Verdict::Inconclusive { bound }
            }
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails(w) => write!(f, "fails: {w}"),
            Verdict::Inconclusive { bound } => {
                write!(f, "inconclusive up to radius {bound}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_prefers_failure_over_inconclusive_over_holds() {
        let f: Verdict<&str> = Verdict::Fails("w");
        let i: Verdict<&str> = Verdict::Inconclusive { bound: 3 };
        let h: Verdict<&str> = Verdict::Holds;
        assert_eq!(h.clone().and(h.clone()), Verdict::Holds);
        assert_eq!(h.clone().and(i.clone()), Verdict::Inconclusive { bound: 3 });
        assert_eq!(i.clone().and(f.clone()), Verdict::Fails("w"));
        assert_eq!(f.clone().and(h), Verdict::Fails("w"));
        let i5: Verdict<&str> = Verdict::Inconclusive { bound: 5 };
        assert_eq!(i.and(i5), Verdict::Inconclusive { bound: 3 });
    }
}
