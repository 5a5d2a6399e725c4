//! Command implementations behind the `rlcm` binary.
//!
//! Each command takes the raw spec text, builds the ball, runs the
//! requested computation, and returns a `Report`. Errors split into two
//! kinds with distinct exit codes: `Usage` for anything wrong with the
//! input (exit 2) and `Cap` for a saturation class blowing past the
//! configured bound (exit 3). Verdicts themselves are results, not
//! errors; a check that fails still exits 0 unless `--assert-holds`
//! asked for a hard gate.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use rlcm_core::artin::{
    amenability_verdict, classify, dihedral_witness_report, propagate_graph_product,
    quasi_lattice_caveat, AmenabilityVerdict, GraphFactor, Obstruction, WitnessReportError,
};
use rlcm_core::ball::{Ball, ElementId};
use rlcm_core::inclusions::ParabolicInclusion;
use rlcm_core::lcm::{lcm, lcm_set, verify_right_lcm, LcmResult};
use rlcm_core::presentation::{ClassCapExceeded, CoxeterMatrix};
use rlcm_core::replab::{
    build_regular_rep, check_covariance, check_wick, extend_by_zero, z_functional,
    ExtensionError, RepRef, Representation, ZFunctionalError,
};
use rlcm_core::verdict::Verdict;
use rlcm_core::Word;
use serde_json::{json, Value};

use crate::repfile;
use crate::report::{
    cancellation_witness_value, element_value, factorization_witness_value, lcm_value,
    matrix_value, orthogonality_witness_value, rational_value, respects_witness_value,
    right_lcm_witness_value, sha256_hex, verdict_value, Report,
};
use crate::specfile::{FactorSpec, SpecFile, SpecStructure};

pub const DEFAULT_RADIUS: usize = 5;
pub const DEFAULT_CAP: usize = 1_000_000;
pub const CAP_ENV: &str = "RLCM_CAP";

#[derive(Clone, Debug)]
pub enum CliError {
    /// Malformed input: spec, words, flags, or a representation file.
    Usage(String),
    /// A saturation class exceeded the cap during enumeration.
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => write!(f, "{m}"),
        }
    }
}

impl From<ClassCapExceeded> for CliError {
    fn from(e: ClassCapExceeded) -> Self {
        CliError::Cap(format!("{e}; raise --cap or the {CAP_ENV} variable"))
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub radius: usize,
    pub cap: usize,
}

/// Where the representation for `check covariance|wick|zf` comes from.
pub enum RepSource {
    Regular,
    File(String),
}

impl RepSource {
    fn name(&self) -> &'static str {
        match self {
            RepSource::Regular => "regular",
            RepSource::File(_) => "file",
        }
    }
}

fn parse_spec(text: &str) -> Result<SpecFile, CliError> {
    SpecFile::parse(text).map_err(|e| usage(format!("spec: {e}")))
}

fn build_ball(spec: &SpecFile, opts: Options) -> Result<Ball, CliError> {
    Ok(Ball::enumerate(&spec.presentation, opts.radius, opts.cap)?)
}

/// Parses a word argument and resolves it in the ball. Any word of
/// length at most the radius denotes an element; longer words are
/// rejected rather than silently truncated.
fn parse_element(ball: &Ball, token: &str) -> Result<ElementId, CliError> {
    let n = ball.presentation().alphabet_size();
    let word = Word::parse(token, n).map_err(|e| usage(format!("word `{token}`: {e}")))?;
    match ball.id_of(&word) {
        Ok(Some(id)) => Ok(id),
        Ok(None) => Err(usage(format!(
            "word `{token}` has length {}, beyond radius {}; raise --radius",
            word.len(),
            ball.radius()
        ))),
        Err(e) => Err(e.into()),
    }
}

fn parse_subset(arg: &str, n: usize) -> Result<BTreeSet<usize>, CliError> {
    let mut subset = BTreeSet::new();
    for token in arg.split(',') {
        let token = token.trim();
        let word =
            Word::parse(token, n).map_err(|e| usage(format!("subset entry `{token}`: {e}")))?;
        match word.letters() {
            [letter] => subset.insert(*letter as usize),
            _ => {
                return Err(usage(format!("subset entry `{token}` is not a single generator")))
            }
        };
    }
    Ok(subset)
}

fn parse_set(arg: &str, ball: &Ball) -> Result<Vec<ElementId>, CliError> {
    arg.split(',').map(|token| parse_element(ball, token.trim())).collect()
}

fn subset_names(subset: &BTreeSet<usize>, n: usize) -> Vec<String> {
    subset.iter().map(|&s| Word::generator(s as u16).symbols(n)).collect()
}

fn push_header(human: &mut String, ball: &Ball, opts: Options) {
    let _ = writeln!(human, "monoid: {}", ball.presentation().label());
    let _ = writeln!(
        human,
        "ball: radius {}, {} elements (cap {})",
        opts.radius,
        ball.len(),
        opts.cap
    );
}

pub fn cmd_ball(spec_text: &str, opts: Options) -> Result<Report, CliError> {
    let spec = parse_spec(spec_text)?;
    let ball = build_ball(&spec, opts)?;
    let census = ball.census();

    let mut human = String::new();
    push_header(&mut human, &ball, opts);
    for (l, count) in census.iter().enumerate() {
        let _ = writeln!(human, "  length {l}: {count}");
    }
    let _ = writeln!(human, "total: {}", ball.len());

    Ok(Report {
        command: "ball",
        digest: sha256_hex(spec_text.as_bytes()),
        parameters: json!({ "radius": opts.radius, "cap": opts.cap }),
        results: json!({
            "monoid": ball.presentation().label(),
            "census": census,
            "elements": ball.len(),
        }),
        all_hold: true,
        human,
    })
}

pub fn cmd_lcm(
    spec_text: &str,
    x: Option<&str>,
    y: Option<&str>,
    set: Option<&str>,
    opts: Options,
) -> Result<Report, CliError> {
    let spec = parse_spec(spec_text)?;
    let ball = build_ball(&spec, opts)?;

    let (result, parameters, described) = match (x, y, set) {
        (Some(x), Some(y), None) => {
            let xe = parse_element(&ball, x)?;
            let ye = parse_element(&ball, y)?;
            let result = lcm(&ball, xe, ye);
            let params = json!({ "radius": opts.radius, "cap": opts.cap, "x": x, "y": y });
            (result, params, format!("lcm({x}, {y})"))
        }
        (None, None, Some(set)) => {
            let ids = parse_set(set, &ball)?;
            let result = lcm_set(&ball, &ids);
            let params = json!({ "radius": opts.radius, "cap": opts.cap, "set": set });
            (result, params, format!("lcm{{{set}}}"))
        }
        _ => {
            return Err(usage(
                "give two words, or a single --set of comma-separated words",
            ))
        }
    };

    let mut human = String::new();
    push_header(&mut human, &ball, opts);
    match &result {
        LcmResult::Lcm { r } => {
            let n = ball.presentation().alphabet_size();
            let _ = writeln!(
                human,
                "{described} = {}  (length {})",
                ball.element(*r).canonical().symbols(n),
                ball.length_of(*r)
            );
        }
        LcmResult::ProvenEmpty { reason } => {
            let _ = writeln!(human, "{described}: no common multiple exists");
            let _ = writeln!(human, "  certificate: {reason}");
        }
        LcmResult::EmptyUpTo { bound } => {
            let _ = writeln!(
                human,
                "{described}: no common multiple of length <= {bound}; longer ones may exist"
            );
        }
        LcmResult::InconclusiveUpTo { bound } => {
            let _ = writeln!(
                human,
                "{described}: unresolved at radius {bound}; the in-ball intersection has no certified least member"
            );
        }
    }

    Ok(Report {
        command: "lcm",
        digest: sha256_hex(spec_text.as_bytes()),
        parameters,
        results: json!({
            "monoid": ball.presentation().label(),
            "result": lcm_value(&ball, &result),
            "resolved": result.is_resolved(),
        }),
        all_hold: result.is_resolved(),
        human,
    })
}

/// Outcome counts of a sweep over all ordered pairs of ball elements.
struct Sweep {
    pairs: usize,
    holds: usize,
    failures: usize,
    unresolved: usize,
    bound: Option<usize>,
    witness: Option<Value>,
    witness_text: Option<String>,
}

fn sweep_pairs<W>(
    ball: &Ball,
    mut check: impl FnMut(ElementId, ElementId) -> Verdict<W>,
    witness_json: impl Fn(&W) -> Value,
    witness_text: impl Fn(&W) -> String,
) -> Sweep {
    let mut sweep = Sweep {
        pairs: 0,
        holds: 0,
        failures: 0,
        unresolved: 0,
        bound: None,
        witness: None,
        witness_text: None,
    };
    for x in ball.ids() {
        for y in ball.ids() {
            sweep.pairs += 1;
            match check(x, y) {
                Verdict::Holds => sweep.holds += 1,
                Verdict::Fails(w) => {
                    sweep.failures += 1;
                    if sweep.witness.is_none() {
                        sweep.witness = Some(witness_json(&w));
                        sweep.witness_text = Some(witness_text(&w));
                    }
                }
                Verdict::Inconclusive { bound } => {
                    sweep.unresolved += 1;
                    sweep.bound = Some(sweep.bound.map_or(bound, |b: usize| b.min(bound)));
                }
            }
        }
    }
    sweep
}

fn overall(failures: usize, unresolved: usize) -> &'static str {
    if failures > 0 {
        "fails"
    } else if unresolved > 0 {
        "inconclusive"
    } else {
        "holds"
    }
}

/// The regular representation requires a cancellative ball; the check
/// is rerun here so a bad spec surfaces as an input error instead of a
/// panic from the constructor.
fn require_cancellative(ball: &Ball) -> Result<(), CliError> {
    match ball.check_cancellativity()? {
        Verdict::Holds => Ok(()),
        v => Err(usage(format!(
            "the ball is not cancellative ({v}); the truncated regular representation is unavailable"
        ))),
    }
}

fn parse_rep_file(
    text: &str,
    presentation: &rlcm_core::presentation::HomogeneousPresentation,
) -> Result<Representation, CliError> {
    repfile::parse_representation(text, presentation)
        .map_err(|e| usage(format!("representation: {e}")))
}

pub fn cmd_check(
    spec_text: &str,
    kind: &str,
    subset: Option<&str>,
    set: Option<&str>,
    rep: &RepSource,
    opts: Options,
) -> Result<Report, CliError> {
    let spec = parse_spec(spec_text)?;
    let ball = build_ball(&spec, opts)?;
    let n = ball.presentation().alphabet_size();

    let mut parameters = json!({
        "radius": opts.radius,
        "cap": opts.cap,
        "check": kind,
    });
    if let Some(sub) = subset {
        parameters["subset"] = json!(sub);
    }
    if let Some(set) = set {
        parameters["set"] = json!(set);
    }
    if matches!(kind, "covariance" | "wick" | "zf") {
        parameters["rep"] = json!(rep.name());
    }

    let mut results = json!({
        "monoid": ball.presentation().label(),
        "elements": ball.len(),
        "check": kind,
    });
    let mut human = String::new();
    push_header(&mut human, &ball, opts);

    let reject_subset = || -> Result<(), CliError> {
        match subset {
            Some(_) => Err(usage(format!("--subset does not apply to `{kind}`"))),
            None => Ok(()),
        }
    };
    let reject_set = || -> Result<(), CliError> {
        match set {
            Some(_) => Err(usage(format!("--set does not apply to `{kind}`"))),
            None => Ok(()),
        }
    };
    let reject_rep = || -> Result<(), CliError> {
        match rep {
            RepSource::File(_) => Err(usage(format!("--rep does not apply to `{kind}`"))),
            RepSource::Regular => Ok(()),
        }
    };

    let all_hold = match kind {
        "cancellativity" => {
            reject_subset()?;
            reject_set()?;
            reject_rep()?;
            let verdict = ball.check_cancellativity()?;
            let _ = match &verdict {
                Verdict::Holds => writeln!(human, "cancellativity: holds"),
                Verdict::Fails(w) => {
                    let (eq, ne) = match w.side {
                        rlcm_core::ball::Side::Left => ("m\u{b7}x = m\u{b7}y", "left"),
                        rlcm_core::ball::Side::Right => ("x\u{b7}m = y\u{b7}m", "right"),
                    };
                    writeln!(
                        human,
                        "cancellativity: fails ({ne} multiplication by {} folds {} and {}; {eq})",
                        w.multiplier.symbols(n),
                        w.x.symbols(n),
                        w.y.symbols(n),
                    )
                }
                Verdict::Inconclusive { bound } => {
                    writeln!(human, "cancellativity: inconclusive up to radius {bound}")
                }
            };
            results["cancellativity"] =
                verdict_value(&verdict, |w| cancellation_witness_value(&ball, w));
            verdict.holds()
        }
        "rightlcm" => {
            reject_set()?;
            reject_rep()?;
            let verdict = match subset {
                None => verify_right_lcm(&ball),
                Some(sub) => {
                    let subset = parse_subset(sub, n)?;
                    let inclusion = ParabolicInclusion::new(&ball, &subset)
                        .map_err(|e| usage(format!("subset: {e}")))?;
                    inclusion.verify_right_lcm()
                }
            };
            let _ = writeln!(human, "right-lcm property: {verdict}");
            results["right_lcm"] = verdict_value(&verdict, |w| right_lcm_witness_value(&ball, w));
            verdict.holds()
        }
        "inclusion" => {
            reject_set()?;
            reject_rep()?;
            let sub = subset.ok_or_else(|| {
                usage("`inclusion` needs --subset with the parabolic generators")
            })?;
            let subset = parse_subset(sub, n)?;
            let inclusion = ParabolicInclusion::new(&ball, &subset)
                .map_err(|e| usage(format!("subset: {e}")))?;
            let closure = inclusion.check_closed_under_factorization();
            let orthogonality = inclusion.check_preserves_orthogonality();
            let respects = inclusion.check_respects_lcm();
            let _ = writeln!(
                human,
                "parabolic submonoid on {{{}}}: {} of {} elements",
                subset_names(&subset, n).join(", "),
                inclusion.member_count(),
                ball.len()
            );
            let _ = writeln!(human, "closed under factorization: {closure}");
            let _ = writeln!(human, "preserves orthogonality: {orthogonality}");
            let _ = writeln!(human, "respects lcms: {respects}");
            let holds = closure.holds() && orthogonality.holds() && respects.holds();
            results["subset"] = json!(subset_names(&subset, n));
            results["members"] = json!(inclusion.member_count());
            results["closure"] = verdict_value(&closure, |w| factorization_witness_value(&ball, w));
            results["orthogonality"] =
                verdict_value(&orthogonality, |w| orthogonality_witness_value(&ball, w));
            results["respects_lcm"] =
                verdict_value(&respects, |w| respects_witness_value(&ball, w));
            results["overall"] = json!(if holds {
                "holds"
            } else if closure.failed() || orthogonality.failed() || respects.failed() {
                "fails"
            } else {
                "inconclusive"
            });
            holds
        }
        "covariance" | "wick" => {
            reject_subset()?;
            reject_set()?;
            let dense;
            let regular;
            let family = match rep {
                RepSource::Regular => {
                    require_cancellative(&ball)?;
                    regular = build_regular_rep(&ball);
                    RepRef::Regular(&regular)
                }
                RepSource::File(text) => {
                    dense = parse_rep_file(text, ball.presentation())?;
                    RepRef::Dense(&dense)
                }
            };
            let word = |x: ElementId| ball.element(x).canonical().symbols(n);
            let sweep = if kind == "covariance" {
                sweep_pairs(
                    &ball,
                    |x, y| check_covariance(&family, &ball, &[(x, y)]),
                    |w| {
                        json!({
                            "x": element_value(&ball, w.x),
                            "y": element_value(&ball, w.y),
                            "row": w.row, "col": w.col,
                            "lhs": rational_value(&w.lhs), "rhs": rational_value(&w.rhs),
                        })
                    },
                    |w| {
                        format!(
                            "covariance fails for ({}, {}) at entry ({}, {}): {} ≠ {}",
                            word(w.x), word(w.y), w.row, w.col, w.lhs, w.rhs
                        )
                    },
                )
            } else {
                sweep_pairs(
                    &ball,
                    |x, y| check_wick(&family, &ball, &[(x, y)]),
                    |w| {
                        json!({
                            "x": element_value(&ball, w.x),
                            "y": element_value(&ball, w.y),
                            "row": w.row, "col": w.col,
                            "lhs": rational_value(&w.lhs), "rhs": rational_value(&w.rhs),
                        })
                    },
                    |w| {
                        format!(
                            "adjoint product differs for ({}, {}) at entry ({}, {}): {} ≠ {}",
                            word(w.x), word(w.y), w.row, w.col, w.lhs, w.rhs
                        )
                    },
                )
            };
            let overall = overall(sweep.failures, sweep.unresolved);
            let _ = writeln!(
                human,
                "{kind} over all {} ordered pairs: {} hold, {} fail, {} unresolved",
                sweep.pairs, sweep.holds, sweep.failures, sweep.unresolved
            );
            if let Some(text) = &sweep.witness_text {
                let _ = writeln!(human, "  first failure: {text}");
            }
            if let Some(bound) = sweep.bound {
                let _ = writeln!(human, "  unresolved pairs are inconclusive at radius {bound}");
            }
            let _ = writeln!(human, "overall: {overall}");
            results["pairs"] = json!(sweep.pairs);
            results["holds"] = json!(sweep.holds);
            results["failures"] = json!(sweep.failures);
            results["unresolved"] = json!(sweep.unresolved);
            results["overall"] = json!(overall);
            if let Some(bound) = sweep.bound {
                results["bound"] = json!(bound);
            }
            if let Some(witness) = sweep.witness {
                results["witness"] = witness;
            }
            sweep.failures == 0 && sweep.unresolved == 0
        }
        "zf" => {
            let set_arg =
                set.ok_or_else(|| usage("`zf` needs --set with comma-separated words"))?;
            let f = parse_set(set_arg, &ball)?;
            results["set"] =
                json!(f.iter().map(|&x| element_value(&ball, x)).collect::<Vec<_>>());
            check_zf(&ball, subset, rep, &f, &mut results, &mut human)?
        }
        other => {
            return Err(usage(format!(
                "unknown check `{other}`; expected cancellativity, rightlcm, inclusion, \
                 covariance, wick, or zf"
            )))
        }
    };

    Ok(Report {
        command: "check",
        digest: sha256_hex(spec_text.as_bytes()),
        parameters,
        results,
        all_hold,
        human,
    })
}

/// Evaluates the alternating-sum functional for `check zf`, in one of
/// three representation modes: the truncated regular representation, a
/// dense representation from a file, or a file representation of a
/// parabolic submonoid extended by zero to the ambient ball.
fn check_zf(
    ball: &Ball,
    subset: Option<&str>,
    rep: &RepSource,
    f: &[ElementId],
    results: &mut Value,
    human: &mut String,
) -> Result<bool, CliError> {
    let n = ball.presentation().alphabet_size();
    let regular;
    let dense;
    let dense_ref;
    let extension;

    let family: &dyn rlcm_core::replab::OperatorFamily = match (rep, subset) {
        (RepSource::Regular, None) => {
            require_cancellative(ball)?;
            regular = build_regular_rep(ball);
            &regular
        }
        (RepSource::Regular, Some(_)) => {
            return Err(usage(
                "zf with --subset extends a file representation by zero; give --rep <file>",
            ))
        }
        (RepSource::File(text), None) => {
            dense = parse_rep_file(text, ball.presentation())?;
            dense_ref = RepRef::Dense(&dense);
            &dense_ref
        }
        (RepSource::File(text), Some(sub)) => {
            let subset = parse_subset(sub, n)?;
            let inclusion = ParabolicInclusion::new(ball, &subset)
                .map_err(|e| usage(format!("subset: {e}")))?;
            let closure = inclusion.check_closed_under_factorization();
            results["closure"] =
                verdict_value(&closure, |w| factorization_witness_value(ball, w));
            let _ = writeln!(
                human,
                "extending by zero from the submonoid on {{{}}}",
                subset_names(&subset, n).join(", ")
            );
            let _ = writeln!(human, "closed under factorization: {closure}");
            match &closure {
                Verdict::Holds => {}
                Verdict::Fails(_) => {
                    results["overall"] = json!("fails");
                    let _ = writeln!(
                        human,
                        "the submonoid is not closed under factorization, so the extension is undefined"
                    );
                    return Ok(false);
                }
                Verdict::Inconclusive { bound } => {
                    results["overall"] = json!("inconclusive");
                    results["bound"] = json!(bound);
                    let _ = writeln!(
                        human,
                        "closure is unresolved at radius {bound}; raise --radius"
                    );
                    return Ok(false);
                }
            }
            let restricted = parse_rep_file(text, inclusion.restricted_presentation())?;
            extension = match extend_by_zero(&inclusion, &restricted) {
                Ok(ext) => ext,
                Err(ExtensionError::PresentationMismatch | ExtensionError::HypothesisNotVerified) => {
                    unreachable!("presentation and closure were checked above")
                }
                Err(ExtensionError::MultiplicativityFailed { p, q }) => {
                    return Err(usage(format!(
                        "extension is not multiplicative at {} \u{b7} {}",
                        ball.element(p).canonical().symbols(n),
                        ball.element(q).canonical().symbols(n)
                    )))
                }
            };
            &extension
        }
    };

    let set_names: Vec<String> =
        f.iter().map(|&x| ball.element(x).canonical().symbols(n)).collect();
    match z_functional(family, ball, f) {
        Ok(z) => {
            let psd = z.psd().expect("the functional is symmetric by construction");
            let _ = writeln!(human, "Z({{{}}}) computed, dimension {}", set_names.join(", "), z.rows());
            let _ = writeln!(human, "positive semidefinite: {}", if psd { "yes" } else { "no" });
            results["z"] = matrix_value(&z);
            results["psd"] = json!(psd);
            results["overall"] = json!(if psd { "holds" } else { "fails" });
            Ok(psd)
        }
        Err(ZFunctionalError::NotContractive { generator }) => Err(usage(format!(
            "generator `{}` is not a contraction, so the functional is undefined \
             for this representation",
            Word::generator(generator).symbols(n)
        ))),
        Err(ZFunctionalError::Unresolved { subset, bound }) => {
            let names: Vec<Value> = subset.iter().map(|&x| element_value(ball, x)).collect();
            let _ = writeln!(
                human,
                "Z({{{}}}) is unresolved: the join of a subset has no certificate at radius {bound}",
                set_names.join(", ")
            );
            results["unresolved_subset"] = Value::Array(names);
            results["bound"] = json!(bound);
            results["overall"] = json!("inconclusive");
            Ok(false)
        }
    }
}

fn coxeter_value(matrix: &CoxeterMatrix) -> Value {
    let rows: Vec<Value> = (0..matrix.rank())
        .map(|i| {
            Value::Array(
                (0..matrix.rank())
                    .map(|j| Value::String(matrix.get(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn obstruction_value(witness: &Obstruction) -> Value {
    match *witness {
        Obstruction::DihedralParabolic { i, j, m } => {
            json!({ "kind": "dihedral_parabolic", "i": i, "j": j, "m": m })
        }
        Obstruction::NonAmenableFactor { index } => {
            json!({ "kind": "non_amenable_factor", "index": index })
        }
    }
}

fn amenability_value(verdict: &AmenabilityVerdict) -> Value {
    match verdict {
        AmenabilityVerdict::NicaAmenable { reason, citation } => {
            json!({ "kind": "nica_amenable", "reason": reason, "citation": citation })
        }
        AmenabilityVerdict::NotNicaAmenable { witness, reason, citation } => json!({
            "kind": "not_nica_amenable",
            "witness": obstruction_value(witness),
            "reason": reason,
            "citation": citation,
        }),
        AmenabilityVerdict::Unknown { reason, citation } => {
            json!({ "kind": "unknown", "reason": reason, "citation": citation })
        }
    }
}

fn amenability_text(verdict: &AmenabilityVerdict) -> String {
    match verdict {
        AmenabilityVerdict::NicaAmenable { .. } => "Nica amenable".into(),
        AmenabilityVerdict::NotNicaAmenable { witness, .. } => {
            format!("not Nica amenable ({witness})")
        }
        AmenabilityVerdict::Unknown { .. } => "unknown".into(),
    }
}

fn factor_matrix(factor: &FactorSpec) -> CoxeterMatrix {
    match factor {
        FactorSpec::Free(n) => CoxeterMatrix::all_infinite(*n),
        FactorSpec::Dihedral(m) => CoxeterMatrix::dihedral(*m),
        FactorSpec::Coxeter(matrix) => matrix.clone(),
    }
}

pub fn cmd_classify(spec_text: &str, opts: Options) -> Result<Report, CliError> {
    let spec = parse_spec(spec_text)?;
    let Some(matrix) = spec.presentation.coxeter().cloned() else {
        return Err(usage(
            "the spec file does not present an Artin monoid; `classify` needs a Coxeter matrix",
        ));
    };
    let class = classify(&matrix);
    let verdict = amenability_verdict(&matrix);

    let mut human = String::new();
    let _ = writeln!(human, "monoid: {}", spec.presentation.label());
    let _ = writeln!(human, "coxeter matrix:");
    for line in matrix.display_rows().lines() {
        let _ = writeln!(human, "  {line}");
    }
    let _ = writeln!(
        human,
        "class: {}right-angled, {}spherical, {}abelian",
        if class.right_angled { "" } else { "not " },
        if class.spherical { "" } else { "not " },
        if class.abelian { "" } else { "not " },
    );
    let _ = writeln!(human, "verdict: {}", amenability_text(&verdict));
    let _ = writeln!(human, "  reason: {}", verdict.reason());
    let _ = writeln!(human, "  citation: {}", verdict.citation());

    let mut results = json!({
        "monoid": spec.presentation.label(),
        "coxeter": coxeter_value(&matrix),
        "class": {
            "right_angled": class.right_angled,
            "spherical": class.spherical,
            "abelian": class.abelian,
            "offending_entry": class.offending_entry.map(|(i, j, m)| json!({ "i": i, "j": j, "m": m })),
        },
        "verdict": amenability_value(&verdict),
    });

    if !class.right_angled {
        match dihedral_witness_report(&matrix, opts.radius, opts.cap) {
            Ok(report) => {
                let needs_ball = report.closure.failed()
                    || report.orthogonality.failed()
                    || report.respects.failed();
                let witness_ball = if needs_ball {
                    Some(Ball::enumerate(&spec.presentation, opts.radius, opts.cap)?)
                } else {
                    None
                };
                let wb = witness_ball.as_ref();
                results["witness_check"] = json!({
                    "i": report.i,
                    "j": report.j,
                    "m": report.m,
                    "radius": report.radius,
                    "closure": verdict_value(&report.closure, |w| {
                        factorization_witness_value(wb.expect("built for failures"), w)
                    }),
                    "orthogonality": verdict_value(&report.orthogonality, |w| {
                        orthogonality_witness_value(wb.expect("built for failures"), w)
                    }),
                    "respects_lcm": verdict_value(&report.respects, |w| {
                        respects_witness_value(wb.expect("built for failures"), w)
                    }),
                });
                let _ = writeln!(
                    human,
                    "witness check at radius {}: closure {}, orthogonality {}, respects lcms {}",
                    report.radius, report.closure, report.orthogonality, report.respects
                );
            }
            Err(WitnessReportError::AlreadyDihedral { m }) => {
                results["witness_check"] = json!({
                    "note": format!("the monoid itself is the dihedral obstruction (m = {m})"),
                });
                let _ = writeln!(
                    human,
                    "witness check: the monoid itself is the dihedral obstruction (m = {m})"
                );
            }
            Err(WitnessReportError::RightAngled) => {
                unreachable!("guarded by the classification above")
            }
            Err(WitnessReportError::Cap(e)) => return Err(e.into()),
        }
    }

    if !class.spherical && !class.right_angled {
        results["caveat"] = json!(quasi_lattice_caveat());
        let _ = writeln!(human, "caveat: {}", quasi_lattice_caveat());
    }

    if let SpecStructure::GraphProduct { graph, factors } = &spec.structure {
        let graph_factors: Vec<GraphFactor> = factors
            .iter()
            .map(|f| {
                let m = factor_matrix(f);
                GraphFactor {
                    verdict: amenability_verdict(&m),
                    is_free_abelian_rank1: m.rank() == 1,
                }
            })
            .collect();
        let propagated = propagate_graph_product(graph, &graph_factors)
            .map_err(|e| usage(e.to_string()))?;
        let factor_values: Vec<Value> =
            graph_factors.iter().map(|f| amenability_value(&f.verdict)).collect();
        results["propagation"] = json!({
            "factors": factor_values,
            "combined": amenability_value(&propagated),
        });
        let _ = writeln!(human, "graph product over {} vertices:", factors.len());
        for (i, f) in graph_factors.iter().enumerate() {
            let _ = writeln!(human, "  factor {i}: {}", amenability_text(&f.verdict));
        }
        let _ = writeln!(human, "  combined: {}", amenability_text(&propagated));
        let _ = writeln!(human, "  citation: {}", propagated.citation());
    }

    Ok(Report {
        command: "classify",
        digest: sha256_hex(spec_text.as_bytes()),
        parameters: json!({ "radius": opts.radius, "cap": opts.cap }),
        results,
        all_hold: true,
        human,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const OPTS: Options = Options { radius: 4, cap: 100_000 };

    #[test]
    fn lcm_command_reports_the_dihedral_join() {
        let report = cmd_lcm("coxeter\n1 3\n3 1\n", Some("a"), Some("b"), None, OPTS).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.results["result"]["element"], json!("aba"));
        assert!(report.human.contains("lcm(a, b) = aba"));
    }

    #[test]
    fn lcm_command_wants_exactly_one_input_shape() {
        let e = cmd_lcm("free 2\n", Some("a"), None, None, OPTS).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = cmd_lcm("free 2\n", Some("a"), Some("b"), Some("a,b"), OPTS).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn words_beyond_the_radius_are_usage_errors() {
        let e = cmd_lcm("free 2\n", Some("aaaaa"), Some("b"), None, OPTS).unwrap_err();
        let CliError::Usage(message) = &e else { panic!("expected usage") };
        assert!(message.contains("beyond radius 4"));
    }

    #[test]
    fn ball_command_counts_the_free_monoid() {
        let report = cmd_ball("free 2\n", OPTS).unwrap();
        assert_eq!(report.results["census"], json!([1, 2, 4, 8, 16]));
        assert_eq!(report.results["elements"], json!(31));
    }

    #[test]
    fn check_rejects_unknown_kinds_and_stray_flags() {
        let e = cmd_check("free 2\n", "banana", None, None, &RepSource::Regular, OPTS);
        assert_eq!(e.unwrap_err().exit_code(), 2);
        let e = cmd_check("free 2\n", "cancellativity", Some("a"), None, &RepSource::Regular, OPTS);
        assert_eq!(e.unwrap_err().exit_code(), 2);
        let e = cmd_check("free 2\n", "covariance", None, Some("a,b"), &RepSource::Regular, OPTS);
        assert_eq!(e.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn covariance_sweep_is_clean_on_the_naturals() {
        let report =
            cmd_check("free 1\n", "covariance", None, None, &RepSource::Regular, OPTS).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.results["overall"], json!("holds"));
        assert_eq!(report.results["pairs"], json!(25));
        assert_eq!(report.results["failures"], json!(0));
        assert_eq!(report.results["unresolved"], json!(0));
    }

    #[test]
    fn covariance_sweep_defers_unresolved_dihedral_pairs() {
        let report = cmd_check(
            "coxeter\n1 3\n3 1\n",
            "covariance",
            None,
            None,
            &RepSource::Regular,
            OPTS,
        )
        .unwrap();
        assert!(!report.all_hold);
        assert_eq!(report.results["overall"], json!("inconclusive"));
        assert_eq!(report.results["failures"], json!(0));
        assert!(report.results["unresolved"].as_u64().unwrap() > 0);
    }

    #[test]
    fn shift_representation_fails_covariance_on_the_plane() {
        let spec = "graphproduct\nvertices 2\nedge 0 1\nfactor free 1\nfactor free 1\n";
        let rep = "dim 3\ngenerator a\n0 0 0\n1 0 0\n0 1 0\ngenerator b\n0 0 0\n1 0 0\n0 1 0\n";
        let report = cmd_check(
            spec,
            "covariance",
            None,
            None,
            &RepSource::File(rep.into()),
            OPTS,
        )
        .unwrap();
        assert_eq!(report.results["overall"], json!("fails"));
        assert!(report.results["witness"].is_object());
    }

    #[test]
    fn inclusion_check_verifies_a_braid_parabolic() {
        let spec = "coxeter\n1 3 2\n3 1 3\n2 3 1\n";
        let report =
            cmd_check(spec, "inclusion", Some("s1,s2"), None, &RepSource::Regular, OPTS).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.results["closure"]["verdict"], json!("holds"));
        assert_eq!(report.results["subset"], json!(["a", "b"]));
    }

    #[test]
    fn zf_on_the_dihedral_regular_rep_is_positive() {
        let report = cmd_check(
            "coxeter\n1 3\n3 1\n",
            "zf",
            None,
            Some("a,b"),
            &RepSource::Regular,
            OPTS,
        )
        .unwrap();
        assert!(report.all_hold);
        assert_eq!(report.results["psd"], json!(true));
    }

    #[test]
    fn zf_extension_collapses_for_a_unitary_file_rep() {
        let spec = "coxeter\n1 3\n3 1\n";
        let rep = "dim 2\ngenerator a\n0 1\n1 0\n";
        let report = cmd_check(
            spec,
            "zf",
            Some("a"),
            Some("a,b"),
            &RepSource::File(rep.into()),
            OPTS,
        )
        .unwrap();
        assert!(report.all_hold);
        let z = &report.results["z"];
        assert_eq!(z, &json!([["0", "0"], ["0", "0"]]));
    }

    #[test]
    fn classify_needs_a_coxeter_matrix() {
        let e = cmd_classify("presentation 2\nrelation aa = bb\n", OPTS).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn classify_reports_the_braid_obstruction_with_its_witness_check() {
        let report = cmd_classify("coxeter\n1 3 2\n3 1 3\n2 3 1\n", OPTS).unwrap();
        let results = &report.results;
        assert_eq!(results["class"]["right_angled"], json!(false));
        assert_eq!(results["class"]["spherical"], json!(true));
        assert_eq!(results["verdict"]["kind"], json!("not_nica_amenable"));
        assert_eq!(results["witness_check"]["closure"]["verdict"], json!("holds"));
        assert_eq!(results["witness_check"]["m"], json!(3));
        assert!(results.get("caveat").is_none());
    }

    #[test]
    fn classify_caveats_monoids_outside_the_quasi_lattice_theorems() {
        let report = cmd_classify("coxeter\n1 3 3\n3 1 3\n3 3 1\n", OPTS).unwrap();
        let results = &report.results;
        assert_eq!(results["class"]["spherical"], json!(false));
        assert_eq!(results["class"]["right_angled"], json!(false));
        assert!(results["caveat"].as_str().is_some());
        assert!(report.human.contains("caveat"));
    }

    #[test]
    fn classify_propagates_graph_product_factors() {
        let spec = "graphproduct\nvertices 2\nedge 0 1\nfactor free 1\nfactor dihedral 3\n";
        let report = cmd_classify(spec, OPTS).unwrap();
        let propagation = &report.results["propagation"];
        assert_eq!(propagation["combined"]["kind"], json!("not_nica_amenable"));
        assert_eq!(
            propagation["combined"]["witness"],
            json!({ "kind": "non_amenable_factor", "index": 1 })
        );
    }

    #[test]
    fn non_cancellative_specs_cannot_use_the_regular_rep() {
        let spec = "presentation 3\nrelation ab = ac\n";
        let e = cmd_check(spec, "covariance", None, None, &RepSource::Regular, OPTS).unwrap_err();
        let CliError::Usage(message) = &e else { panic!("expected usage") };
        assert!(message.contains("not cancellative"));
    }
}
