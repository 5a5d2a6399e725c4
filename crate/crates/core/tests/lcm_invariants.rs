//! The LCM certificates checked against an oracle built the other way
//! around: instead of consulting the ball's divisibility tables, the
//! oracle multiplies every pair out, derives common multiples from the
//! product table alone, and classifies the intersection shape itself.
//! The two paths share nothing past `mul`, so systematic agreement on
//! every pair is strong evidence for both.

use rlcm_core::lcm::{lcm, lcm_set, verify_right_lcm, LcmResult};
use rlcm_core::presentation::{CoxeterMatrix, HomogeneousPresentation, SimplicialGraph};
use rlcm_core::{Ball, ElementId};

fn corpus() -> Vec<HomogeneousPresentation> {
    vec![
        HomogeneousPresentation::free(2),
        HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3)),
        HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(4)),
        HomogeneousPresentation::artin(&CoxeterMatrix::braid(4)),
        HomogeneousPresentation::graph_product(
            &SimplicialGraph::complete(2),
            &[HomogeneousPresentation::free(1), HomogeneousPresentation::free(1)],
        )
        .unwrap(),
        HomogeneousPresentation::graph_product(
            &SimplicialGraph::path(3),
            &[
                HomogeneousPresentation::free(1),
                HomogeneousPresentation::free(1),
                HomogeneousPresentation::free(1),
            ],
        )
        .unwrap(),
    ]
}

/// Divisibility recomputed from scratch: `x | z` iff some in-ball `q`
/// multiplies out to `z`.
fn product_divisibility(ball: &Ball) -> Vec<Vec<bool>> {
    let mut table = vec![vec![false; ball.len()]; ball.len()];
    for a in ball.ids() {
        for b in ball.ids() {
            if let Some(z) = ball.mul(a, b).unwrap() {
                table[a.index()][z.index()] = true;
            }
        }
    }
    table
}

/// What the certificate for a pair must be, derived from the oracle
/// table alone: `Lcm` for a principal intersection, an empty kind for
/// an empty one, inconclusive otherwise.
enum OracleShape {
    Empty,
    Principal(ElementId),
    Unresolved,
}

fn oracle_shape(ball: &Ball, div: &[Vec<bool>], x: ElementId, y: ElementId) -> OracleShape {
    let members: Vec<ElementId> =
        ball.ids().filter(|z| div[x.index()][z.index()] && div[y.index()][z.index()]).collect();
    let Some(&first) = members.first() else {
        return OracleShape::Empty;
    };
    let minimal_length = ball.length_of(first);
    let minimal = members.iter().filter(|&&m| ball.length_of(m) == minimal_length).count();
    if minimal > 1 {
        return OracleShape::Unresolved;
    }
    if members.iter().all(|&m| div[first.index()][m.index()]) {
        OracleShape::Principal(first)
    } else {
        OracleShape::Unresolved
    }
}

#[test]
fn certificates_match_the_product_direction_oracle_on_every_pair() {
    for p in corpus() {
        let ball = Ball::enumerate(&p, 4, 1_000_000).unwrap();
        let div = product_divisibility(&ball);
        for x in ball.ids() {
            for y in ball.ids() {
                let result = lcm(&ball, x, y);
                match oracle_shape(&ball, &div, x, y) {
                    OracleShape::Principal(r) => {
                        assert_eq!(result, LcmResult::Lcm { r }, "{} {:?} {:?}", p.label(), x, y);
                    }
                    OracleShape::Empty => match result {
                        LcmResult::ProvenEmpty { reason } => assert!(reason.verify(&ball)),
                        LcmResult::EmptyUpTo { bound } => assert_eq!(bound, ball.radius()),
                        other => panic!("{}: empty intersection reported as {other:?}", p.label()),
                    },
                    OracleShape::Unresolved => {
                        assert_eq!(result, LcmResult::InconclusiveUpTo { bound: ball.radius() });
                    }
                }
            }
        }
    }
}

fn same_kind(a: &LcmResult, b: &LcmResult, ball: &Ball) -> bool {
    match (a, b) {
        (LcmResult::Lcm { r: ra }, LcmResult::Lcm { r: rb }) => ra == rb,
        (
            LcmResult::ProvenEmpty { .. } | LcmResult::EmptyUpTo { .. },
            LcmResult::ProvenEmpty { .. } | LcmResult::EmptyUpTo { .. },
        ) => {
            for side in [a, b] {
                if let LcmResult::ProvenEmpty { reason } = side {
                    assert!(reason.verify(ball));
                }
            }
            true
        }
        (LcmResult::InconclusiveUpTo { .. }, LcmResult::InconclusiveUpTo { .. }) => true,
        _ => false,
    }
}

#[test]
fn lcm_is_commutative_up_to_certificate_payload() {
    for p in corpus() {
        let ball = Ball::enumerate(&p, 4, 1_000_000).unwrap();
        for x in ball.ids() {
            for y in ball.ids() {
                assert!(same_kind(&lcm(&ball, x, y), &lcm(&ball, y, x), &ball));
            }
        }
    }
}

#[test]
fn lcm_absorbs_multiples() {
    for p in corpus() {
        let ball = Ball::enumerate(&p, 4, 1_000_000).unwrap();
        for x in ball.ids() {
            assert_eq!(lcm(&ball, x, x), LcmResult::Lcm { r: x });
            for y in ball.ids() {
                if let Some(z) = ball.mul(x, y).unwrap() {
                    assert_eq!(lcm(&ball, x, z), LcmResult::Lcm { r: z });
                }
            }
        }
    }
}

/// When a pairwise LCM resolves, folding a third element in through
/// `lcm_set` is the same as taking the LCM with the resolved element.
#[test]
fn set_lcm_is_associative_through_resolved_pairs() {
    for p in [
        HomogeneousPresentation::artin(&CoxeterMatrix::dihedral(3)),
        HomogeneousPresentation::graph_product(
            &SimplicialGraph::complete(2),
            &[HomogeneousPresentation::free(1), HomogeneousPresentation::free(1)],
        )
        .unwrap(),
        HomogeneousPresentation::free(2),
    ] {
        let ball = Ball::enumerate(&p, 4, 1_000_000).unwrap();
        for x in ball.ids() {
            for y in ball.ids() {
                let LcmResult::Lcm { r } = lcm(&ball, x, y) else {
                    continue;
                };
                for z in ball.ids() {
                    assert!(same_kind(&lcm_set(&ball, &[x, y, z]), &lcm(&ball, r, z), &ball));
                }
            }
        }
    }
}

/// Anything certified inside a smaller ball must be certified
/// identically inside a bigger one.
#[test]
fn resolved_certificates_are_stable_under_radius_growth() {
    for p in corpus() {
        let small = Ball::enumerate(&p, 3, 1_000_000).unwrap();
        let large = Ball::enumerate(&p, 4, 1_000_000).unwrap();
        for x in small.ids() {
            for y in small.ids() {
                match lcm(&small, x, y) {
                    LcmResult::Lcm { r } => {
                        assert_eq!(lcm(&large, x, y), LcmResult::Lcm { r }, "{}", p.label());
                    }
                    LcmResult::ProvenEmpty { .. } => {
                        assert!(matches!(lcm(&large, x, y), LcmResult::ProvenEmpty { .. }));
                    }
                    LcmResult::EmptyUpTo { .. } | LcmResult::InconclusiveUpTo { .. } => {}
                }
            }
        }
    }
}

#[test]
fn right_lcm_sweep_holds_across_the_corpus() {
    for p in corpus() {
        let ball = Ball::enumerate(&p, 4, 1_000_000).unwrap();
        assert!(verify_right_lcm(&ball).holds(), "{}", p.label());
    }
}
