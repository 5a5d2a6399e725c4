//! The spherical flag of the classifier checked against brute force on
//! the Coxeter group itself. By Matsumoto's theorem the group is in
//! bijection with braid-move classes of reduced words, and a word is
//! non-reduced exactly when its class contains a repeated adjacent
//! letter. That turns group enumeration into a breadth-first search
//! over word classes, independent of any diagram pattern matching.

use proptest::prelude::*;
use rlcm_core::artin::classify;
use rlcm_core::presentation::{CoxeterEntry, CoxeterMatrix};
use rlcm_core::word::alternating_product;
use rlcm_core::Letter;
use std::collections::BTreeSet;

/// All words obtainable by braid moves: replacing an alternating
/// subword `stst…` of length `m(s,t)` by `tsts…`.
fn braid_class(word: &[Letter], matrix: &CoxeterMatrix) -> BTreeSet<Vec<Letter>> {
    let n = matrix.rank();
    let mut moves = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if let CoxeterEntry::Finite(m) = matrix.get(s, t) {
                let forward = alternating_product(s as Letter, t as Letter, m as usize);
                let backward = alternating_product(t as Letter, s as Letter, m as usize);
                moves.push((forward.letters().to_vec(), backward.letters().to_vec()));
            }
        }
    }
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    seen.insert(word.to_vec());
    let mut queue = vec![word.to_vec()];
    while let Some(u) = queue.pop() {
        for (a, b) in &moves {
            for (from, to) in [(a, b), (b, a)] {
                if from.len() > u.len() {
                    continue;
                }
                for i in 0..=u.len() - from.len() {
                    if &u[i..i + from.len()] == from.as_slice() {
                        let mut v = u.clone();
                        v[i..i + from.len()].copy_from_slice(to);
                        if seen.insert(v.clone()) {
                            queue.push(v);
                        }
                    }
                }
            }
        }
    }
    seen
}

fn has_adjacent_repeat(word: &[Letter]) -> bool {
    word.windows(2).any(|w| w[0] == w[1])
}

/// Order of the Coxeter group, or `None` once more than `cap` elements
/// have been found.
fn coxeter_group_order(matrix: &CoxeterMatrix, cap: usize) -> Option<usize> {
    let n = matrix.rank();
    let mut total = 1usize;
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut classified: BTreeSet<Vec<Letter>> = BTreeSet::new();
        let mut next = Vec::new();
        for word in &frontier {
            for s in 0..n {
                let mut extended = word.clone();
                extended.push(s as Letter);
                if classified.contains(&extended) {
                    continue;
                }
                let class = braid_class(&extended, matrix);
                let reduced = !class.iter().any(|w| has_adjacent_repeat(w));
                let mut representative = None;
                for w in class {
                    if representative.is_none() {
                        representative = Some(w.clone());
                    }
                    classified.insert(w);
                }
                if reduced {
                    next.push(representative.expect("class is nonempty"));
                }
            }
        }
        total += next.len();
        if total > cap {
            return None;
        }
        frontier = next;
    }
    Some(total)
}

#[test]
fn small_group_orders_are_reproduced() {
    assert_eq!(coxeter_group_order(&CoxeterMatrix::dihedral(3), 200), Some(6));
    assert_eq!(coxeter_group_order(&CoxeterMatrix::dihedral(4), 200), Some(8));
    assert_eq!(coxeter_group_order(&CoxeterMatrix::braid(4), 200), Some(24));
    assert_eq!(coxeter_group_order(&CoxeterMatrix::dihedral(2), 200), Some(4));
}

fn rank3(m01: u32, m02: u32, m12: u32) -> CoxeterMatrix {
    let entry = |m: u32| if m == 0 { CoxeterEntry::Infinite } else { CoxeterEntry::Finite(m) };
    let one = CoxeterEntry::Finite(1);
    CoxeterMatrix::new(vec![
        vec![one, entry(m01), entry(m02)],
        vec![entry(m01), one, entry(m12)],
        vec![entry(m02), entry(m12), one],
    ])
    .unwrap()
}

/// Exhaustive rank ≤ 3 sweep over entries {2, 3, 4, 6, ∞}: the
/// catalogue matcher and the group enumeration must agree on
/// finiteness everywhere. Every finite group in this range has order
/// at most 48, so a cap of 200 separates the two outcomes cleanly.
#[test]
fn sphericity_matches_group_finiteness_on_small_ranks() {
    let entries = [2u32, 3, 4, 6, 0];
    for &m in &entries {
        let matrix = if m == 0 {
            CoxeterMatrix::new(vec![
                vec![CoxeterEntry::Finite(1), CoxeterEntry::Infinite],
                vec![CoxeterEntry::Infinite, CoxeterEntry::Finite(1)],
            ])
            .unwrap()
        } else {
            CoxeterMatrix::dihedral(m)
        };
        let finite = coxeter_group_order(&matrix, 200).is_some();
        assert_eq!(classify(&matrix).spherical, finite, "rank 2, m = {m}");
    }
    for &m01 in &entries {
        for &m02 in &entries {
            for &m12 in &entries {
                let matrix = rank3(m01, m02, m12);
                let finite = coxeter_group_order(&matrix, 200).is_some();
                assert_eq!(
                    classify(&matrix).spherical,
                    finite,
                    "rank 3, entries ({m01}, {m02}, {m12})"
                );
            }
        }
    }
}

fn arbitrary_matrix(rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    prop::collection::vec(prop::sample::select(vec![2u32, 3, 4, 5, 6, 0]), rank * rank)
        .prop_map(move |picks| {
            let mut rows =
                vec![vec![CoxeterEntry::Finite(1); rank]; rank];
            for i in 0..rank {
                for j in i + 1..rank {
                    let m = picks[i * rank + j];
                    let entry =
                        if m == 0 { CoxeterEntry::Infinite } else { CoxeterEntry::Finite(m) };
                    rows[i][j] = entry;
                    rows[j][i] = entry;
                }
            }
            CoxeterMatrix::new(rows).unwrap()
        })
}

proptest! {
    #[test]
    fn classification_is_invariant_under_generator_relabeling(
        (matrix, perm) in (2usize..=5).prop_flat_map(|rank| {
            (arbitrary_matrix(rank), Just((0..rank).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let relabeled = matrix.permuted(&perm);
        let before = classify(&matrix);
        let after = classify(&relabeled);
        prop_assert_eq!(before.right_angled, after.right_angled);
        prop_assert_eq!(before.spherical, after.spherical);
        prop_assert_eq!(before.abelian, after.abelian);
        prop_assert_eq!(before.offending_entry.is_some(), after.offending_entry.is_some());
    }
}
