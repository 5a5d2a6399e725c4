//! Acceptance gate for the toolkit: eight sweeps, one test each, every
//! comparison exact. Each test prints a single pass line; a failure
//! panics with the offending instance.
//!
//! The test monoids are the rank-two free abelian monoid, the free
//! monoid on two generators, the dihedral Artin monoids with m = 3 and
//! m = 4, the positive braid monoid on four strands, and the
//! right-angled Artin monoid of the path a - b - c.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlcm_core::ball::{Ball, ElementId};
use rlcm_core::inclusions::ParabolicInclusion;
use rlcm_core::lcm::{ideal_intersection, lcm, LcmResult};
use rlcm_core::matrix::{rational, Rational, RationalMatrix};
use rlcm_core::presentation::{
    CoxeterEntry, CoxeterMatrix, HomogeneousPresentation, SimplicialGraph,
};
use rlcm_core::replab::{
    build_regular_rep, check_covariance, check_wick, diagonal_expectation, extend_by_zero,
    z_functional, RepRef, Representation, TruncatedRegularRep,
};
use rlcm_core::word::alternating_product;
use rlcm_core::Word;

const L: usize = 5;
const CAP: usize = 1_000_000;

fn entry(m: u32) -> CoxeterEntry {
    if m == 0 {
        CoxeterEntry::Infinite
    } else {
        CoxeterEntry::Finite(m)
    }
}

fn path_raag_matrix() -> CoxeterMatrix {
    CoxeterMatrix::new(vec![
        vec![entry(1), entry(2), entry(0)],
        vec![entry(2), entry(1), entry(2)],
        vec![entry(0), entry(2), entry(1)],
    ])
    .expect("a fixed symmetric matrix")
}

fn corpus() -> Vec<HomogeneousPresentation> {
    vec![
        HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(2)),
        HomogeneousPresentation::free(2),
        HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3)),
        HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(4)),
        HomogeneousPresentation::artin(&CoxeterMatrix::braid(4)),
        HomogeneousPresentation::artin(&path_raag_matrix()),
    ]
}

fn el(ball: &Ball, text: &str) -> ElementId {
    let word = Word::parse(text, ball.presentation().alphabet_size()).expect("test word");
    ball.id_of(&word).expect("cap not hit").expect("word within radius")
}

/// Divisibility recomputed from scratch: `x` divides `r` exactly when
/// some in-ball `q` multiplies out to `r`. Homogeneity keeps every
/// quotient of an in-ball element in-ball, so the table is complete.
fn product_divisibility(ball: &Ball) -> Vec<Vec<bool>> {
    let n = ball.len();
    let mut table = vec![vec![false; n]; n];
    for x in ball.ids() {
        for q in ball.ids() {
            if let Some(r) = ball.mul(x, q).expect("cap not hit") {
                table[x.index()][r.index()] = true;
            }
        }
    }
    table
}

#[test]
fn lcm_certificates_agree_with_the_product_table_oracle() {
    for presentation in corpus() {
        let ball = Ball::enumerate(&presentation, L, CAP).unwrap();
        let label = presentation.label();
        let divides = product_divisibility(&ball);

        for x in ball.ids() {
            let lib = ideal_intersection(&ball, &[x]);
            for r in ball.ids() {
                assert_eq!(
                    lib.contains(r.index()),
                    divides[x.index()][r.index()],
                    "{label}: ideal membership mismatch at ({x:?}, {r:?})"
                );
            }
        }

        for x in ball.ids() {
            for y in ball.ids() {
                let members: Vec<ElementId> = ball
                    .ids()
                    .filter(|r| divides[x.index()][r.index()] && divides[y.index()][r.index()])
                    .collect();
                let joint = ideal_intersection(&ball, &[x, y]);
                assert_eq!(
                    members.iter().map(|m| m.index()).collect::<Vec<_>>(),
                    joint.iter().collect::<Vec<_>>(),
                    "{label}: joint ideal mismatch at ({x:?}, {y:?})"
                );

                let result = lcm(&ball, x, y);
                if members.is_empty() {
                    match result {
                        LcmResult::ProvenEmpty { reason } => {
                            assert!(reason.verify(&ball), "{label}: bad emptiness certificate")
                        }
                        LcmResult::EmptyUpTo { bound } => assert_eq!(bound, L),
                        other => panic!("{label}: empty intersection but lcm said {other:?}"),
                    }
                    continue;
                }
                let least = members[0];
                let least_len = ball.length_of(least);
                let unique_minimal =
                    members.iter().filter(|&&m| ball.length_of(m) == least_len).count() == 1;
                let principal = unique_minimal
                    && members.iter().all(|&m| divides[least.index()][m.index()]);
                if principal {
                    assert_eq!(
                        result,
                        LcmResult::Lcm { r: least },
                        "{label}: principal intersection at ({x:?}, {y:?}) not certified"
                    );
                } else {
                    match result {
                        LcmResult::InconclusiveUpTo { bound } => assert_eq!(bound, L),
                        other => panic!(
                            "{label}: non-principal in-ball intersection at ({x:?}, {y:?}) \
                             but lcm said {other:?}"
                        ),
                    }
                }
            }
        }

        if let Some(matrix) = presentation.coxeter() {
            for s in 0..matrix.rank() {
                for t in 0..matrix.rank() {
                    if s == t {
                        continue;
                    }
                    let sx = el(&ball, &Word::generator(s as u16).symbols(matrix.rank()));
                    let tx = el(&ball, &Word::generator(t as u16).symbols(matrix.rank()));
                    match matrix.get(s, t) {
                        CoxeterEntry::Finite(m) => {
                            let join = alternating_product(s as u16, t as u16, m as usize);
                            let expected = ball.id_of(&join).unwrap().unwrap();
                            assert_eq!(
                                lcm(&ball, sx, tx),
                                LcmResult::Lcm { r: expected },
                                "{label}: generator pair ({s}, {t}) missed the alternating join"
                            );
                        }
                        CoxeterEntry::Infinite => {
                            assert!(
                                matches!(lcm(&ball, sx, tx), LcmResult::ProvenEmpty { .. }),
                                "{label}: infinite pair ({s}, {t}) not proven empty"
                            );
                        }
                    }
                }
            }
        }
    }
    println!("acceptance 1/8 (lcm vs brute-force ideal intersection): pass");
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[test]
fn ball_censuses_match_frozen_counts_and_closed_forms() {
    let d3 = Ball::enumerate(
        &HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3)),
        3,
        CAP,
    )
    .unwrap();
    assert_eq!(d3.census(), vec![1, 2, 4, 7]);

    let f2 = Ball::enumerate(&HomogeneousPresentation::free(2), 3, CAP).unwrap();
    assert_eq!(f2.census(), vec![1, 2, 4, 8]);

    for k in 1..=3 {
        let factors = vec![HomogeneousPresentation::free(1); k];
        let product =
            HomogeneousPresentation::graph_product(&SimplicialGraph::complete(k), &factors)
                .unwrap();
        let ball = Ball::enumerate(&product, L, CAP).unwrap();
        let expected: Vec<usize> = (0..=L).map(|l| binomial(l + k - 1, k - 1)).collect();
        assert_eq!(ball.census(), expected, "free abelian monoid of rank {k}");
    }
    println!("acceptance 2/8 (ball censuses): pass");
}

fn resolved_pairs(ball: &Ball) -> Vec<(ElementId, ElementId)> {
    let mut pairs = Vec::new();
    for x in ball.ids() {
        for y in ball.ids() {
            if lcm(ball, x, y).is_resolved() {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

#[test]
fn regular_rep_passes_covariance_and_wick_on_resolved_pairs() {
    for presentation in corpus() {
        let ball = Ball::enumerate(&presentation, L, CAP).unwrap();
        let regular = build_regular_rep(&ball);
        let rep = RepRef::Regular(&regular);
        let pairs = resolved_pairs(&ball);
        assert!(!pairs.is_empty());
        assert!(
            check_covariance(&rep, &ball, &pairs).holds(),
            "{}: covariance broke on a resolved pair",
            presentation.label()
        );
        assert!(
            check_wick(&rep, &ball, &pairs).holds(),
            "{}: the adjoint product formula broke on a resolved pair",
            presentation.label()
        );
    }

    let nn = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(2));
    let ball = Ball::enumerate(&nn, L, CAP).unwrap();
    let shift = RationalMatrix::from_rows(vec![
        vec![rational(0), rational(0), rational(0)],
        vec![rational(1), rational(0), rational(0)],
        vec![rational(0), rational(1), rational(0)],
    ])
    .unwrap();
    let rep = Representation::new(&nn, vec![shift.clone(), shift]).unwrap();
    let dense = RepRef::Dense(&rep);
    let pairs = resolved_pairs(&ball);
    assert!(check_covariance(&dense, &ball, &pairs).failed());
    assert!(check_wick(&dense, &ball, &pairs).failed());
    println!("acceptance 3/8 (covariance and adjoint products on resolved pairs): pass");
}

/// `λ(p)λ(q)ᵀ` assembled from the image maps: the `(i, j)` entry counts
/// the basis vectors sent to `i` by `p` and to `j` by `q`.
fn rank_one_product(
    rep: &TruncatedRegularRep<'_>,
    ball: &Ball,
    p: ElementId,
    q: ElementId,
) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(ball.len(), ball.len());
    for k in ball.ids() {
        if let (Some(i), Some(j)) = (rep.image(p, k), rep.image(q, k)) {
            let bumped = out.get(i.index(), j.index()).clone() + rational(1);
            out.set(i.index(), j.index(), bumped);
        }
    }
    out
}

#[test]
fn expectation_collapses_to_the_diagonal_and_balls_cancel() {
    for presentation in corpus() {
        let ball = Ball::enumerate(&presentation, L, CAP).unwrap();
        assert!(
            ball.check_cancellativity().unwrap().holds(),
            "{}: cancellativity sweep",
            presentation.label()
        );
        let regular = build_regular_rep(&ball);
        let small: Vec<ElementId> =
            ball.ids().filter(|&x| ball.length_of(x) <= 2).collect();
        for &p in &small {
            for &q in &small {
                let product = rank_one_product(&regular, &ball, p, q);
                let expectation = diagonal_expectation(&product);
                if p == q {
                    assert_eq!(expectation, product, "{}: range projection not diagonal", presentation.label());
                } else {
                    assert!(
                        expectation.is_zero(),
                        "{}: expectation of λ({p:?})λ({q:?})ᵀ has a diagonal part",
                        presentation.label()
                    );
                }
            }
        }
    }

    // Anchor the counting construction against plain matrix products.
    let nn = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(2));
    let ball = Ball::enumerate(&nn, L, CAP).unwrap();
    let regular = build_regular_rep(&ball);
    let small: Vec<ElementId> = ball.ids().filter(|&x| ball.length_of(x) <= 1).collect();
    for &p in &small {
        for &q in &small {
            assert_eq!(
                rank_one_product(&regular, &ball, p, q),
                regular.matrix_of(p).mul(&regular.matrix_of(q).transpose())
            );
        }
    }
    println!("acceptance 4/8 (diagonal expectation and cancellativity): pass");
}

fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut det = rational(0);
    for (j, pivot) in rows[0].iter().enumerate() {
        if pivot == &rational(0) {
            continue;
        }
        let minor: Vec<Vec<Rational>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let signed = if j % 2 == 0 { pivot.clone() } else { -pivot.clone() };
        det += signed * determinant(&minor);
    }
    det
}

/// Positive semidefiniteness by the textbook criterion: a symmetric
/// matrix is PSD exactly when every principal minor is nonnegative.
fn psd_by_minors(m: &RationalMatrix) -> bool {
    let n = m.rows();
    assert!(n <= 6, "the minor oracle is exponential");
    for mask in 1u32..(1 << n) {
        let index: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rows: Vec<Vec<Rational>> = index
            .iter()
            .map(|&i| index.iter().map(|&j| m.get(i, j).clone()).collect())
            .collect();
        if determinant(&rows) < rational(0) {
            return false;
        }
    }
    true
}

fn corner(m: &RationalMatrix, k: usize) -> RationalMatrix {
    RationalMatrix::from_fn(k, k, |i, j| m.get(i, j).clone())
}

fn cyclic_permutation(dim: usize) -> RationalMatrix {
    RationalMatrix::from_fn(dim, dim, |i, j| {
        if i == (j + 1) % dim {
            rational(1)
        } else {
            rational(0)
        }
    })
}

#[test]
fn z_functional_positivity_and_extension_collapse() {
    let d3 = HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3));
    let ball = Ball::enumerate(&d3, 4, CAP).unwrap();
    let regular = build_regular_rep(&ball);
    let a = el(&ball, "a");
    let b = el(&ball, "b");

    let z = z_functional(&regular, &ball, &[a, b]).unwrap();
    let n = ball.len();
    let projection = |g: ElementId| {
        RationalMatrix::from_fn(n, n, |i, j| {
            if i == j && ball.divides(g, ElementId(i as u32)) {
                rational(1)
            } else {
                rational(0)
            }
        })
    };
    let identity = RationalMatrix::identity(n);
    let expected = identity.sub(&projection(a)).mul(&identity.sub(&projection(b)));
    assert_eq!(z, expected, "Z must equal the product of complementary projections");
    assert!(z.psd().unwrap());

    let subset: BTreeSet<usize> = [0].into_iter().collect();
    let inclusion = ParabolicInclusion::new(&ball, &subset).unwrap();
    let unitary =
        Representation::new(inclusion.restricted_presentation(), vec![cyclic_permutation(4)])
            .unwrap();
    assert!(unitary.generator_unitary(0));
    let extension = extend_by_zero(&inclusion, &unitary).unwrap();
    let z_ab = z_functional(&extension, &ball, &[a, b]).unwrap();
    let z_a = z_functional(&extension, &ball, &[a]).unwrap();
    assert!(z_ab.is_zero(), "Z({{a, b}}) of the unitary extension must vanish");
    assert_eq!(z_ab, z_a);

    let half = Ratio::new(BigInt::from(1), BigInt::from(2));
    let third = Ratio::new(BigInt::from(1), BigInt::from(3));
    let mut symmetric_corpus: Vec<RationalMatrix> = (1..=6).map(|k| corner(&z, k)).collect();
    symmetric_corpus.push(z_ab);
    symmetric_corpus.extend([
        RationalMatrix::from_rows(vec![vec![rational(0)]]).unwrap(),
        RationalMatrix::from_rows(vec![vec![rational(-1)]]).unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(2), rational(1)],
            vec![rational(1), rational(2)],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(1), rational(2)],
            vec![rational(2), rational(1)],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(0), rational(0)],
            vec![rational(0), rational(1)],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(0), rational(1)],
            vec![rational(1), rational(0)],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(1), half.clone()],
            vec![half, third],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(1), rational(1), rational(1)],
            vec![rational(1), rational(1), rational(1)],
            vec![rational(1), rational(1), rational(1)],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(2), rational(-1), rational(0)],
            vec![rational(-1), rational(2), rational(-1)],
            vec![rational(0), rational(-1), rational(2)],
        ])
        .unwrap(),
        RationalMatrix::from_rows(vec![
            vec![rational(1), rational(0), rational(0)],
            vec![rational(0), rational(0), rational(1)],
            vec![rational(0), rational(1), rational(0)],
        ])
        .unwrap(),
    ]);
    for m in &symmetric_corpus {
        assert_eq!(
            m.psd().unwrap(),
            psd_by_minors(m),
            "elimination and minor oracle disagree on {m:?}"
        );
    }
    println!("acceptance 5/8 (alternating-sum functional and PSD oracle): pass");
}

fn chain_checks(inclusion: &ParabolicInclusion<'_>, context: &str) {
    let closure = inclusion.check_closed_under_factorization();
    if closure.holds() {
        assert!(
            !inclusion.verify_right_lcm().failed(),
            "{context}: a factorization-closed parabolic stopped being right-LCM"
        );
        if inclusion.check_preserves_orthogonality().holds() {
            assert!(
                !inclusion.check_respects_lcm().failed(),
                "{context}: closure and orthogonality held but the lcm respect check failed"
            );
        }
    }
}

#[test]
fn inclusion_checks_hold_and_their_verdicts_chain() {
    let braid = HomogeneousPresentation::artin(&CoxeterMatrix::braid(4));
    let ball = Ball::enumerate(&braid, L, CAP).unwrap();
    let subset: BTreeSet<usize> = [0, 1].into_iter().collect();
    let inclusion = ParabolicInclusion::new(&ball, &subset).unwrap();
    assert!(inclusion.check_closed_under_factorization().holds());
    assert!(inclusion.check_preserves_orthogonality().holds());
    assert!(inclusion.check_respects_lcm().holds());

    for presentation in corpus() {
        let ball = Ball::enumerate(&presentation, 4, CAP).unwrap();
        let n = presentation.alphabet_size();
        for mask in 1..(1u32 << n) - 1 {
            let subset: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let inclusion = ParabolicInclusion::new(&ball, &subset).unwrap();
            chain_checks(&inclusion, presentation.label());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..20 {
        let rank = rng.gen_range(3..=4usize);
        let mut rows = vec![vec![entry(1); rank]; rank];
        for i in 0..rank {
            for j in (i + 1)..rank {
                let m = if rng.gen_bool(0.5) { entry(2) } else { entry(0) };
                rows[i][j] = m;
                rows[j][i] = m;
            }
        }
        let matrix = CoxeterMatrix::new(rows).unwrap();
        let presentation = HomogeneousPresentation::artin(&matrix);
        let ball = Ball::enumerate(&presentation, 4, CAP).unwrap();
        let mask = rng.gen_range(1..(1u32 << rank) - 1);
        let subset: BTreeSet<usize> = (0..rank).filter(|i| mask >> i & 1 == 1).collect();
        let inclusion = ParabolicInclusion::new(&ball, &subset).unwrap();
        chain_checks(&inclusion, &format!("random right-angled round {round}"));
    }
    println!("acceptance 6/8 (parabolic inclusion checks and chains): pass");
}

fn alternating(s: usize, t: usize, m: usize) -> Vec<usize> {
    (0..m).map(|i| if i % 2 == 0 { s } else { t }).collect()
}

/// All words reachable by replacing one alternating block `stst...` of
/// the defining length with its mirror image.
fn braid_class(word: &[usize], matrix: &CoxeterMatrix) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(word.to_vec());
    let mut frontier = vec![word.to_vec()];
    while let Some(w) = frontier.pop() {
        for s in 0..matrix.rank() {
            for t in 0..matrix.rank() {
                if s == t {
                    continue;
                }
                let CoxeterEntry::Finite(m) = matrix.get(s, t) else { continue };
                let m = m as usize;
                if m < 2 || m > w.len() {
                    continue;
                }
                let pattern = alternating(s, t, m);
                let mirror = alternating(t, s, m);
                for start in 0..=w.len() - m {
                    if w[start..start + m] == pattern[..] {
                        let mut next = w.clone();
                        next[start..start + m].copy_from_slice(&mirror);
                        if seen.insert(next.clone()) {
                            frontier.push(next);
                        }
                    }
                }
            }
        }
    }
    seen
}

/// Order of the Coxeter group by breadth-first search over classes of
/// reduced words: a word is non-reduced exactly when its class contains
/// an adjacent repeated letter, and classes of reduced words of a given
/// length are in bijection with group elements of that length.
fn coxeter_group_order(matrix: &CoxeterMatrix, cap: usize) -> Option<usize> {
    let mut total = 1usize;
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    loop {
        let mut classified: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut next: Vec<Vec<usize>> = Vec::new();
        for w in &frontier {
            for s in 0..matrix.rank() {
                let mut candidate = w.clone();
                candidate.push(s);
                if classified.contains(&candidate) {
                    continue;
                }
                let class = braid_class(&candidate, matrix);
                let reduced =
                    !class.iter().any(|v| v.windows(2).any(|pair| pair[0] == pair[1]));
                if reduced {
                    next.push(candidate);
                }
                classified.extend(class);
            }
        }
        total += next.len();
        if total > cap {
            return None;
        }
        if next.is_empty() {
            return Some(total);
        }
        frontier = next;
    }
}

fn rank3(m01: u32, m02: u32, m12: u32) -> CoxeterMatrix {
    CoxeterMatrix::new(vec![
        vec![entry(1), entry(m01), entry(m02)],
        vec![entry(m01), entry(1), entry(m12)],
        vec![entry(m02), entry(m12), entry(1)],
    ])
    .unwrap()
}

#[test]
fn classifier_matches_the_exhaustive_and_group_oracles() {
    use rlcm_core::artin::{
        amenability_verdict, classify, propagate_graph_product, AmenabilityVerdict, GraphFactor,
        Obstruction,
    };

    assert_eq!(coxeter_group_order(&CoxeterMatrix::dihedral(3), 200), Some(6));
    assert_eq!(coxeter_group_order(&CoxeterMatrix::dihedral(4), 200), Some(8));
    assert_eq!(coxeter_group_order(&CoxeterMatrix::braid(4), 200), Some(24));

    let entries = [2u32, 3, 4, 6, 0];
    for &m in &entries {
        let matrix = CoxeterMatrix::new(vec![
            vec![entry(1), entry(m)],
            vec![entry(m), entry(1)],
        ])
        .unwrap();
        let amenable = matches!(amenability_verdict(&matrix), AmenabilityVerdict::NicaAmenable { .. });
        assert_eq!(amenable, matrix.is_right_angled(), "rank 2, m = {m}");
        assert_eq!(
            classify(&matrix).spherical,
            coxeter_group_order(&matrix, 200).is_some(),
            "rank 2, m = {m}"
        );
    }
    for &m01 in &entries {
        for &m02 in &entries {
            for &m12 in &entries {
                let matrix = rank3(m01, m02, m12);
                let amenable =
                    matches!(amenability_verdict(&matrix), AmenabilityVerdict::NicaAmenable { .. });
                assert_eq!(
                    amenable,
                    matrix.is_right_angled(),
                    "rank 3, entries ({m01}, {m02}, {m12})"
                );
                assert_eq!(
                    classify(&matrix).spherical,
                    coxeter_group_order(&matrix, 200).is_some(),
                    "rank 3, entries ({m01}, {m02}, {m12})"
                );
            }
        }
    }

    let edge = SimplicialGraph::new(2, &[(0, 1)]).unwrap();
    let rank1 = GraphFactor {
        verdict: amenability_verdict(&CoxeterMatrix::all_infinite(1)),
        is_free_abelian_rank1: true,
    };
    let dihedral = GraphFactor {
        verdict: amenability_verdict(&CoxeterMatrix::dihedral(3)),
        is_free_abelian_rank1: false,
    };
    let raag = GraphFactor {
        verdict: amenability_verdict(&path_raag_matrix()),
        is_free_abelian_rank1: false,
    };

    let sunk = propagate_graph_product(&edge, &[rank1.clone(), dihedral]).unwrap();
    let AmenabilityVerdict::NotNicaAmenable { witness, .. } = &sunk else {
        panic!("a non-amenable factor must sink the product")
    };
    assert_eq!(*witness, Obstruction::NonAmenableFactor { index: 1 });

    let open = propagate_graph_product(&edge, &[raag.clone(), raag]).unwrap();
    assert!(matches!(open, AmenabilityVerdict::Unknown { .. }));

    let lattice = propagate_graph_product(&edge, &[rank1.clone(), rank1]).unwrap();
    assert!(matches!(lattice, AmenabilityVerdict::NicaAmenable { .. }));
    println!("acceptance 7/8 (amenability dichotomy, sphericity, propagation): pass");
}

fn fixture(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests/fixtures");
    path.push(name);
    path.to_str().expect("fixture paths are utf-8").to_owned()
}

#[test]
fn check_reports_are_byte_identical_across_runs() {
    let shift = fixture("shift_nn.rep");
    let cyclic = fixture("cyclic4.rep");
    let invocations: Vec<(&str, Vec<&str>)> = vec![
        ("braid_b4.monoid", vec!["check", "", "inclusion", "--subset", "s1,s2"]),
        ("dihedral3.monoid", vec!["check", "", "covariance"]),
        ("dihedral4.monoid", vec!["check", "", "rightlcm"]),
        ("free2.monoid", vec!["check", "", "wick"]),
        ("nn.monoid", vec!["check", "", "covariance", "--rep", &shift]),
        ("path_raag.monoid", vec!["check", "", "zf", "--set", "a,b,c"]),
        ("square.monoid", vec!["check", "", "cancellativity"]),
        ("dihedral3.monoid", vec!["check", "", "zf", "--subset", "a", "--set", "a,b", "--rep", &cyclic]),
    ];
    for (name, template) in invocations {
        let spec = fixture(name);
        let mut args: Vec<&str> = template.clone();
        args[1] = &spec;
        args.extend(["--radius", "4", "--json"]);
        let mut outputs = Vec::new();
        for _ in 0..3 {
            let output = Command::new(env!("CARGO_BIN_EXE_rlcm"))
                .args(&args)
                .output()
                .expect("the binary spawns");
            assert_eq!(
                output.status.code(),
                Some(0),
                "{name}: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            outputs.push(output.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "{name}: run 2 diverged");
        assert_eq!(outputs[0], outputs[2], "{name}: run 3 diverged");
        serde_json::from_slice::<serde_json::Value>(&outputs[0])
            .expect("deterministic output is also valid JSON");
    }
    println!("acceptance 8/8 (byte-identical check reports): pass");
}
