//! Decision pipelines for local polynomial convexity at the origin.
//!
//! All predicates are exact sign tests on conjugation-invariant quantities
//! of the family matrices (traces, determinants, commutator determinants),
//! so verdicts are independent of any irrational conjugator used for the
//! certificates. Undecided is a first-class outcome: the sufficient
//! conditions implemented here are not necessary outside the star region,
//! and the CLI points such inputs at the numerical hull probe.

use serde::Serialize;
use thiserror::Error;

use crate::certify::{
    build_fiber_certificate, build_kallin_base_vs_rest, build_kallin_rays, Certificate,
    SeparatingPoly,
};
use crate::mat2::{commutator_det, triple_trace_obstruction, Mat2, SpectrumKind};
use crate::normalform::{
    reduced_length, simultaneous_rotation_form, simultaneous_triangularize,
    three_plane_normal_form, NormalFormError, Shape,
};
use crate::planes::WeinstockFamily;
use crate::scalar::{Scalar, Sign};

/// Decision outcome for a plane-family union at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Outcome {
    Convex,
    NotConvex,
    Undecided,
}

/// Which rule produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Rule {
    WeinstockPair,
    Thm1a,
    Thm1b,
    Thm2i,
    Thm2ii,
    Thm3iCommuting,
    Thm3iSymmetric,
    Thm3iMixed,
    Thm3ii,
    NoRuleApplies,
}

/// The ray direction of a plane's image under z^2 + w^2 in rotation
/// coordinates: (det A - 1, tr A). The base plane carries (1, 0).
#[derive(Debug, Clone, PartialEq)]
pub struct VVector<F: Scalar> {
    pub first: F,
    pub second: F,
}

impl<F: Scalar> VVector<F> {
    pub fn base() -> Self {
        VVector {
            first: F::one(),
            second: F::zero(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }
}

/// Region classification of a matrix pair for the three-plane rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum OmegaClass {
    /// Inside the region where the sufficient conditions hold.
    OmegaStar,
    /// In the admissible region but strictly outside the star subset.
    OmegaMinusStar,
    /// On the boundary: a defining inequality degenerates to an exact zero.
    OmegaBoundaryOfStar,
    /// The first matrix has a repeated eigenvalue.
    OutsideOmega,
}

/// Evidence attached to a negative verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness<F: Scalar> {
    /// Plane indices (0 = base) whose ray directions are positively
    /// colinear.
    ColinearPair { l: usize, m: usize },
    /// A pair of planes whose reduction fails the two-plane criterion.
    PairFailure {
        j: usize,
        k: usize,
        reduced: Mat2<F>,
    },
}

/// One checked hypothesis in the decision trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub check: String,
    pub pass: bool,
    pub note: String,
}

fn entry(check: impl Into<String>, pass: bool, note: impl Into<String>) -> TraceEntry {
    TraceEntry {
        check: check.into(),
        pass,
        note: note.into(),
    }
}

/// Decision result: outcome, rule, optional witness and certificate, the
/// region classification for two-matrix families, and the hypothesis trace.
#[derive(Debug, Clone)]
pub struct Verdict<F: Scalar> {
    pub outcome: Outcome,
    pub rule: Rule,
    pub witness: Option<Witness<F>>,
    pub certificate: Option<Certificate>,
    pub omega: Option<OmegaClass>,
    pub trace: Vec<TraceEntry>,
}

impl<F: Scalar> Verdict<F> {
    fn new(outcome: Outcome, rule: Rule) -> Self {
        Verdict {
            outcome,
            rule,
            witness: None,
            certificate: None,
            omega: None,
            trace: Vec::new(),
        }
    }
}

/// A verdict about the pair of planes (i, j), indices into the family with
/// 0 = base plane.
#[derive(Debug, Clone)]
pub struct PairVerdict<F: Scalar> {
    pub i: usize,
    pub j: usize,
    pub verdict: Verdict<F>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecideError {
    #[error("plane {0} is degenerate: the matrix has eigenvalues +-i")]
    DegeneratePlane(usize),
    #[error("pairwise hypothesis fails for planes ({0}, {1})")]
    PairwiseHypothesisFails(usize, usize),
    #[error("the pair lies outside the admissible region (repeated eigenvalue)")]
    OutsideOmega,
    #[error("ray direction undefined: spectrum is real with distinct eigenvalues")]
    RealDistinctSpectrum,
    #[error("zero vector has no ray direction")]
    ZeroVector,
    #[error("rule requires exactly two matrices, family has {0}")]
    NotTwoPlanes(usize),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
}

/// The two-plane criterion in normal form: R^2 union M(A) fails to be
/// locally polynomially convex at 0 exactly when A has a purely imaginary
/// eigenvalue of modulus greater than one, i.e. tr A = 0 and det A > 1.
pub fn weinstock_pair<F: Scalar>(a: &Mat2<F>) -> Result<Verdict<F>, DecideError> {
    if !a.is_totally_real() {
        return Err(DecideError::DegeneratePlane(1));
    }
    let tr = a.trace();
    let det = a.det();
    let not_convex = tr.is_zero() && (det.clone() - F::one()).sign() == Sign::Positive;
    let mut v = if not_convex {
        Verdict::new(Outcome::NotConvex, Rule::WeinstockPair)
    } else {
        Verdict::new(Outcome::Convex, Rule::WeinstockPair)
    };
    v.trace.push(entry(
        "weinstock(tr=0 and det>1)",
        !not_convex,
        format!("tr = {tr}, det = {det}"),
    ));
    Ok(v)
}

/// Ray direction (det A - 1, tr A); defined when the spectrum is a
/// conjugate pair, which includes scalar matrices.
pub fn v_vector<F: Scalar>(a: &Mat2<F>) -> Result<VVector<F>, DecideError> {
    let kind = a.spectrum().kind;
    if kind == SpectrumKind::ComplexConjugate || a.is_scalar() {
        Ok(VVector {
            first: a.det() - F::one(),
            second: a.trace(),
        })
    } else {
        Err(DecideError::RealDistinctSpectrum)
    }
}

/// True iff W = cV for some c > 0.
pub fn positively_colinear<F: Scalar>(
    v: &VVector<F>,
    w: &VVector<F>,
) -> Result<bool, DecideError> {
    if v.is_zero() || w.is_zero() {
        return Err(DecideError::ZeroVector);
    }
    let cross = v.first.clone() * w.second.clone() - v.second.clone() * w.first.clone();
    let dot = v.first.clone() * w.first.clone() + v.second.clone() * w.second.clone();
    Ok(cross.is_zero() && dot.sign() == Sign::Positive)
}

fn validate_family<F: Scalar>(f: &WeinstockFamily<F>) -> Result<(), DecideError> {
    for (j, a) in f.matrices.iter().enumerate() {
        if !a.is_totally_real() {
            return Err(DecideError::DegeneratePlane(j + 1));
        }
    }
    Ok(())
}

/// Certificate for a single plane pair in normal form (R^2, M(A)), built
/// through the rotation or triangular machinery on the singleton family.
fn certify_single<F: Scalar>(a: &Mat2<F>) -> Option<Certificate> {
    let single = std::slice::from_ref(a);
    if a.spectrum().kind == SpectrumKind::ComplexConjugate {
        let conj = simultaneous_rotation_form(single).ok()?;
        build_kallin_rays(single, &conj).ok().map(Certificate::Kallin)
    } else {
        let conj = simultaneous_triangularize(single).ok()?;
        build_fiber_certificate(&conj).ok().map(Certificate::Fiber)
    }
}

/// Decides every pairwise union: (0, j) through the two-plane criterion on
/// A_j, and (j, k) through the reduction B = (A_j A_k + I)(A_j - A_k)^-1.
/// Non-transverse distinct pairs are undecidable at this level and come
/// back Undecided; identical pairs are trivially convex.
pub fn pairwise_verdicts<F: Scalar>(
    f: &WeinstockFamily<F>,
) -> Result<Vec<PairVerdict<F>>, DecideError> {
    validate_family(f)?;
    let n = f.matrices.len();
    let mut out = Vec::new();
    for j in 0..n {
        let a = &f.matrices[j];
        let mut v = weinstock_pair(a).map_err(|_| DecideError::DegeneratePlane(j + 1))?;
        if v.outcome == Outcome::Convex {
            v.certificate = certify_single(a);
        } else {
            v.witness = Some(Witness::PairFailure {
                j: 0,
                k: j + 1,
                reduced: a.clone(),
            });
        }
        out.push(PairVerdict {
            i: 0,
            j: j + 1,
            verdict: v,
        });
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let (aj, ak) = (&f.matrices[j], &f.matrices[k]);
            let verdict = if aj == ak {
                let mut v = Verdict::new(Outcome::Convex, Rule::WeinstockPair);
                v.trace.push(entry(
                    "pair.identical",
                    true,
                    "identical planes: the union is a single totally-real plane",
                ));
                v
            } else if aj.sub(ak).det().is_zero() {
                let mut v = Verdict::new(Outcome::Undecided, Rule::NoRuleApplies);
                v.trace.push(entry(
                    "pair.transversal",
                    false,
                    "planes meet in a line; the pairwise reduction is unavailable",
                ));
                v
            } else {
                let b = crate::normalform::pairwise_reduce(aj, ak)?;
                let mut v = weinstock_pair(&b)?;
                if v.outcome == Outcome::Convex {
                    v.certificate = certify_single(&b);
                } else {
                    v.witness = Some(Witness::PairFailure {
                        j: j + 1,
                        k: k + 1,
                        reduced: b,
                    });
                }
                v
            };
            out.push(PairVerdict {
                i: j + 1,
                j: k + 1,
                verdict,
            });
        }
    }
    Ok(out)
}

/// Checks the commutator condition: vanishing pairwise commutator
/// determinants, plus the triple-trace condition on a maximal reduction
/// when the reduced length is three. Returns trace entries either way.
fn commutator_condition<F: Scalar>(
    mats: &[Mat2<F>],
    trace: &mut Vec<TraceEntry>,
) -> Result<bool, DecideError> {
    let mut ok = true;
    for j in 0..mats.len() {
        for k in (j + 1)..mats.len() {
            if !commutator_det(&mats[j], &mats[k]).is_zero() {
                trace.push(entry(
                    "condition2.commutator-dets",
                    false,
                    format!("det[A_{}, A_{}] != 0", j + 1, k + 1),
                ));
                ok = false;
            }
        }
    }
    if !ok {
        return Ok(false);
    }
    trace.push(entry(
        "condition2.commutator-dets",
        true,
        "all pairwise commutator determinants vanish",
    ));
    if mats.is_empty() {
        return Ok(true);
    }
    let report = reduced_length(mats)?;
    if report.reduced_length == 3 {
        let idx = &report.maximal_reduction;
        for &a in idx {
            for &b in idx {
                for &c in idx {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    if !triple_trace_obstruction(&mats[a], &mats[b], &mats[c]).is_zero()
                    {
                        trace.push(entry(
                            "condition2.triple-trace",
                            false,
                            format!(
                                "Tr(ABC - CBA) != 0 on the maximal reduction {:?}",
                                idx
                            ),
                        ));
                        return Ok(false);
                    }
                }
            }
        }
        trace.push(entry(
            "condition2.triple-trace",
            true,
            "triple-trace obstruction vanishes on the maximal reduction",
        ));
    }
    Ok(true)
}

/// The general sufficient rule: under the commutator condition, a family
/// with all-real spectra is convex via simultaneous triangularization,
/// and a family with a non-real member is convex iff no two ray directions
/// (including the base ray (1, 0)) are positively colinear.
pub fn theorem1_decide<F: Scalar>(
    f: &WeinstockFamily<F>,
) -> Result<Verdict<F>, DecideError> {
    validate_family(f)?;
    let mats = &f.matrices;
    let mut trace = Vec::new();
    if !commutator_condition(mats, &mut trace)? {
        let mut v = Verdict::new(Outcome::Undecided, Rule::NoRuleApplies);
        v.trace = trace;
        return Ok(v);
    }
    let all_real = mats
        .iter()
        .all(|m| m.spectrum().kind != SpectrumKind::ComplexConjugate);
    if all_real {
        trace.push(entry(
            "spectra.all-real",
            true,
            "every matrix has real eigenvalues",
        ));
        let certificate = if mats.is_empty() {
            None
        } else {
            let conj = simultaneous_triangularize(mats)?;
            Some(Certificate::Fiber(
                build_fiber_certificate(&conj)
                    .map_err(|e| NormalFormError::HypothesisFailed(e.to_string()))?,
            ))
        };
        let mut v = Verdict::new(Outcome::Convex, Rule::Thm1a);
        v.certificate = certificate;
        v.trace = trace;
        return Ok(v);
    }
    trace.push(entry(
        "spectra.all-real",
        false,
        "some matrix has non-real eigenvalues: rotation-form route",
    ));
    // Under the commutator condition every member is a rotation form in a
    // common basis, so its spectrum is a conjugate pair or it is scalar.
    let mut rays = vec![VVector::base()];
    for m in mats {
        rays.push(v_vector(m)?);
    }
    for l in 0..rays.len() {
        for mth in (l + 1)..rays.len() {
            if positively_colinear(&rays[l], &rays[mth])? {
                trace.push(entry(
                    "rays.distinct",
                    false,
                    format!("V_{l} and V_{mth} are positively colinear"),
                ));
                let mut v = Verdict::new(Outcome::NotConvex, Rule::Thm1b);
                v.witness = Some(Witness::ColinearPair { l, m: mth });
                v.trace = trace;
                return Ok(v);
            }
        }
    }
    trace.push(entry(
        "rays.distinct",
        true,
        "no pair of image rays is positively colinear",
    ));
    let conj = simultaneous_rotation_form(mats)?;
    let cert = build_kallin_rays(mats, &conj)
        .map_err(|e| NormalFormError::HypothesisFailed(e.to_string()))?;
    let mut v = Verdict::new(Outcome::Convex, Rule::Thm1b);
    v.certificate = Some(Certificate::Kallin(cert));
    v.trace = trace;
    Ok(v)
}

fn pairwise_all_convex<F: Scalar>(
    pairs: &[PairVerdict<F>],
) -> Result<(), DecideError> {
    for p in pairs {
        if p.verdict.outcome != Outcome::Convex {
            return Err(DecideError::PairwiseHypothesisFails(p.i, p.j));
        }
    }
    Ok(())
}

/// The sign-condition rule for exactly three planes.
pub fn theorem2_decide<F: Scalar>(
    f: &WeinstockFamily<F>,
) -> Result<Verdict<F>, DecideError> {
    if f.matrices.len() != 2 {
        return Err(DecideError::NotTwoPlanes(f.matrices.len()));
    }
    pairwise_all_convex(&pairwise_verdicts(f)?)?;
    let (a1, a2) = (&f.matrices[0], &f.matrices[1]);
    let d12 = commutator_det(a1, a2);
    let (det1, det2) = (a1.det(), a2.det());
    let mut trace = vec![entry(
        "pairwise.convex",
        true,
        "all pairwise unions are locally polynomially convex",
    )];
    let signs = (d12.sign(), det1.sign(), det2.sign());
    let (rule, poly) = match signs {
        (Sign::Positive, Sign::Positive, Sign::Positive) => {
            (Rule::Thm2i, SeparatingPoly::ZsqPlusWsq)
        }
        (Sign::Negative, Sign::Negative, Sign::Negative) => {
            (Rule::Thm2ii, SeparatingPoly::ZsqMinusWsq)
        }
        _ => {
            trace.push(entry(
                "signs(det[A1,A2], det A1, det A2)",
                false,
                format!(
                    "det[A1,A2] = {d12}, det A1 = {det1}, det A2 = {det2}: \
                     neither all positive nor all negative"
                ),
            ));
            let mut v = Verdict::new(Outcome::Undecided, Rule::NoRuleApplies);
            v.trace = trace;
            return Ok(v);
        }
    };
    trace.push(entry(
        "signs(det[A1,A2], det A1, det A2)",
        true,
        format!("det[A1,A2] = {d12}, det A1 = {det1}, det A2 = {det2}"),
    ));
    let conj = three_plane_normal_form(a1, a2)?;
    let cert = build_kallin_base_vs_rest(poly, &conj, true)
        .map_err(|e| NormalFormError::HypothesisFailed(e.to_string()))?;
    let mut v = Verdict::new(Outcome::Convex, rule);
    v.certificate = Some(Certificate::Kallin(cert));
    v.trace = trace;
    Ok(v)
}

/// The conjugation-invariant quantities behind the three-plane open
/// conditions: det(form_j + form_j^T) up to the positive factor 4, for the
/// canonical T of the relevant case. By the stabilizer invariance these do
/// not depend on the choice of T.
///
/// Real-distinct case with det[A1, A2] > 0 (symmetric shape):
///   (det A1, det A2).
/// Real-distinct with det[A1, A2] < 0 (mixed shape):
///   (det A1, det A2 + det[A1, A2]/disc(A1)).
/// Non-real case: (tr(A1)^2 / 4, (tr(A2)^2 - 4 det[A1, A2]/disc(A1)) / 4).
pub fn omega_star_quantities<F: Scalar>(a1: &Mat2<F>, a2: &Mat2<F>) -> Option<(F, F)> {
    let spec1 = a1.spectrum();
    let d12 = commutator_det(a1, a2);
    let four = F::from_int(4);
    match spec1.kind {
        SpectrumKind::RealRepeated => None,
        SpectrumKind::RealDistinct => {
            if d12.is_zero() {
                None
            } else if d12.sign() == Sign::Positive {
                Some((a1.det(), a2.det()))
            } else {
                Some((a1.det(), a2.det() + d12 / spec1.disc))
            }
        }
        SpectrumKind::ComplexConjugate => {
            let tr1 = a1.trace();
            let tr2 = a2.trace();
            let q1 = tr1.clone() * tr1 / four.clone();
            let q2 = (tr2.clone() * tr2 - four.clone() * d12 / spec1.disc) / four;
            Some((q1, q2))
        }
    }
}

/// Classifies a matrix pair against the region where the three-plane
/// sufficient conditions hold. Membership exactly on the boundary requires
/// an exact zero of a defining quantity with no other quantity negative.
pub fn classify_omega<F: Scalar>(a1: &Mat2<F>, a2: &Mat2<F>) -> OmegaClass {
    let spec1 = a1.spectrum();
    if spec1.kind == SpectrumKind::RealRepeated {
        return OmegaClass::OutsideOmega;
    }
    if spec1.kind == SpectrumKind::RealDistinct
        && commutator_det(a1, a2).is_zero()
    {
        // Commuting first case: convexity holds outright.
        return OmegaClass::OmegaStar;
    }
    let (q1, q2) = omega_star_quantities(a1, a2)
        .expect("quantities defined off the repeated-eigenvalue locus");
    match (q1.sign(), q2.sign()) {
        (Sign::Positive, Sign::Positive) => OmegaClass::OmegaStar,
        (Sign::Negative, _) | (_, Sign::Negative) => OmegaClass::OmegaMinusStar,
        _ => OmegaClass::OmegaBoundaryOfStar,
    }
}

/// The open-condition rule for exactly three planes on the admissible
/// region: requires pairwise convexity, then tests the case-dependent
/// positivity conditions; convex verdicts carry a separation certificate
/// in the normal-form coordinates.
pub fn theorem3_decide<F: Scalar>(
    f: &WeinstockFamily<F>,
) -> Result<Verdict<F>, DecideError> {
    if f.matrices.len() != 2 {
        return Err(DecideError::NotTwoPlanes(f.matrices.len()));
    }
    pairwise_all_convex(&pairwise_verdicts(f)?)?;
    let (a1, a2) = (&f.matrices[0], &f.matrices[1]);
    let spec1 = a1.spectrum();
    if spec1.kind == SpectrumKind::RealRepeated {
        return Err(DecideError::OutsideOmega);
    }
    let omega = classify_omega(a1, a2);
    let mut trace = vec![entry(
        "pairwise.convex",
        true,
        "all pairwise unions are locally polynomially convex",
    )];

    let undecided = |mut trace: Vec<TraceEntry>, note: String| {
        trace.push(entry("thm3.conditions", false, note));
        let mut v = Verdict::new(Outcome::Undecided, Rule::NoRuleApplies);
        v.omega = Some(omega);
        v.trace = trace;
        Ok(v)
    };

    match spec1.kind {
        SpectrumKind::RealDistinct => {
            let d12 = commutator_det(a1, a2);
            if d12.is_zero() {
                // First case: the pair is simultaneously triangularizable,
                // so the all-real rule applies.
                trace.push(entry(
                    "thm3.commuting",
                    true,
                    "det[A1, A2] = 0: simultaneous triangularization route",
                ));
                let conj = simultaneous_triangularize(&f.matrices)?;
                let cert = build_fiber_certificate(&conj)
                    .map_err(|e| NormalFormError::HypothesisFailed(e.to_string()))?;
                let mut v = Verdict::new(Outcome::Convex, Rule::Thm3iCommuting);
                v.certificate = Some(Certificate::Fiber(cert));
                v.omega = Some(omega);
                v.trace = trace;
                return Ok(v);
            }
            let (q1, q2) = omega_star_quantities(a1, a2).expect("distinct eigenvalues");
            let symmetric = d12.sign() == Sign::Positive;
            let rule = if symmetric {
                Rule::Thm3iSymmetric
            } else {
                Rule::Thm3iMixed
            };
            if !(q1.sign() == Sign::Positive && q2.sign() == Sign::Positive) {
                return undecided(
                    trace,
                    format!(
                        "det(form_j + form_j^T) > 0 fails: quantities {q1}, {q2}"
                    ),
                );
            }
            trace.push(entry(
                "thm3.symmetrized-dets",
                true,
                format!("both symmetrized determinants positive: {q1}, {q2}"),
            ));
            let conj = three_plane_normal_form(a1, a2)?;
            let expected = if symmetric {
                Shape::DiagonalPlusSymmetric
            } else {
                Shape::DiagonalPlusMixed
            };
            if conj.shape != expected {
                return Err(NormalFormError::HypothesisFailed(format!(
                    "normal form reached {:?}, expected {:?}",
                    conj.shape, expected
                ))
                .into());
            }
            let cert =
                build_kallin_base_vs_rest(SeparatingPoly::ZsqPlusWsq, &conj, true)
                    .map_err(|e| NormalFormError::HypothesisFailed(e.to_string()))?;
            let mut v = Verdict::new(Outcome::Convex, rule);
            v.certificate = Some(Certificate::Kallin(cert));
            v.omega = Some(omega);
            v.trace = trace;
            Ok(v)
        }
        SpectrumKind::ComplexConjugate => {
            let (q1, q2) = omega_star_quantities(a1, a2).expect("non-real spectrum");
            if !(q1.sign() == Sign::Positive && q2.sign() == Sign::Positive) {
                return undecided(
                    trace,
                    format!(
                        "rotation-case positivity fails: s1^2 quantity {q1}, \
                         s21 s22 quantity {q2}"
                    ),
                );
            }
            trace.push(entry(
                "thm3.rotation-positivity",
                true,
                format!("s1^2 quantity {q1} and s21 s22 quantity {q2} positive"),
            ));
            let conj = three_plane_normal_form(a1, a2)?;
            let cert =
                build_kallin_base_vs_rest(SeparatingPoly::ZsqPlusWsq, &conj, true)
                    .map_err(|e| NormalFormError::HypothesisFailed(e.to_string()))?;
            let mut v = Verdict::new(Outcome::Convex, Rule::Thm3ii);
            v.certificate = Some(Certificate::Kallin(cert));
            v.omega = Some(omega);
            v.trace = trace;
            Ok(v)
        }
        SpectrumKind::RealRepeated => unreachable!("handled above"),
    }
}

/// Self-verifies an attached certificate and records the outcome in the
/// verdict trace. Verdicts are exact and never depend on the certificate,
/// but a convex verdict whose certificate fails its own verifier should
/// be visible immediately.
fn check_certificate<F: Scalar>(v: &mut Verdict<F>) {
    if let Some(cert) = &v.certificate {
        let report = crate::certify::verify_certificate(cert);
        v.trace.push(entry(
            "certificate.self-check",
            report.ok,
            if report.ok {
                "attached certificate verifies".to_string()
            } else {
                format!("attached certificate rejected: {:?}", report.reasons)
            },
        ));
    }
}

/// Runs the full pipeline: pairwise checks, the general commutator rule,
/// then for two-matrix families the sign rule and the open-condition rule.
/// Returns the first decisive verdict, otherwise Undecided with the
/// accumulated trace.
pub fn decide<F: Scalar>(f: &WeinstockFamily<F>) -> Result<Verdict<F>, DecideError> {
    validate_family(f)?;
    // The union is a set: duplicate matrices do not change it.
    let mut mats: Vec<Mat2<F>> = Vec::new();
    let mut deduped = false;
    for m in &f.matrices {
        if mats.contains(m) {
            deduped = true;
        } else {
            mats.push(m.clone());
        }
    }
    let family = WeinstockFamily {
        matrices: mats,
        provenance: f.provenance.clone(),
    };
    let mut trace = Vec::new();
    if deduped {
        trace.push(entry(
            "family.dedupe",
            true,
            "duplicate planes removed before deciding",
        ));
    }
    if family.is_empty() {
        let mut v = Verdict::new(Outcome::Convex, Rule::Thm1a);
        v.trace = trace;
        v.trace.push(entry(
            "family.base-only",
            true,
            "no matrices: the union is the base plane alone",
        ));
        return Ok(v);
    }

    let pairs = pairwise_verdicts(&family)?;
    let mut pairwise_ok = true;
    for p in &pairs {
        match p.verdict.outcome {
            Outcome::NotConvex => {
                trace.push(entry(
                    "pairwise",
                    false,
                    format!(
                        "pair ({}, {}) fails the two-plane criterion",
                        p.i, p.j
                    ),
                ));
                let mut v = Verdict::new(Outcome::NotConvex, Rule::WeinstockPair);
                v.witness = p.verdict.witness.clone();
                v.trace = trace;
                if family.len() == 2 {
                    v.omega = Some(classify_omega(
                        &family.matrices[0],
                        &family.matrices[1],
                    ));
                }
                return Ok(v);
            }
            Outcome::Undecided => {
                pairwise_ok = false;
                trace.push(entry(
                    "pairwise",
                    false,
                    format!("pair ({}, {}) could not be decided", p.i, p.j),
                ));
            }
            Outcome::Convex => {}
        }
    }
    if pairwise_ok {
        trace.push(entry("pairwise", true, "all pairwise unions convex"));
    }

    // Single plane: the two-plane criterion is already complete, and the
    // general rule supplies its certificate.
    if family.len() == 1 {
        let mut v = theorem1_decide(&family)?;
        v.rule = Rule::WeinstockPair;
        let mut full = trace;
        full.append(&mut v.trace);
        v.trace = full;
        check_certificate(&mut v);
        return Ok(v);
    }

    let t1 = theorem1_decide(&family)?;
    if t1.outcome != Outcome::Undecided {
        let mut v = t1;
        let mut full = trace;
        full.append(&mut v.trace);
        v.trace = full;
        check_certificate(&mut v);
        return Ok(v);
    }
    trace.extend(t1.trace);

    if family.len() == 2 {
        let omega = classify_omega(&family.matrices[0], &family.matrices[1]);
        if pairwise_ok {
            let t2 = theorem2_decide(&family)?;
            if t2.outcome == Outcome::Convex {
                let mut v = t2;
                v.omega = Some(omega);
                let mut full = trace;
                full.append(&mut v.trace);
                v.trace = full;
                check_certificate(&mut v);
                return Ok(v);
            }
            trace.extend(t2.trace);
            if omega != OmegaClass::OutsideOmega {
                let t3 = theorem3_decide(&family)?;
                if t3.outcome == Outcome::Convex {
                    let mut v = t3;
                    let mut full = trace;
                    full.append(&mut v.trace);
                    v.trace = full;
                    check_certificate(&mut v);
                    return Ok(v);
                }
                trace.extend(t3.trace);
            } else {
                trace.push(entry(
                    "thm3.omega",
                    false,
                    "pair lies outside the admissible region",
                ));
            }
        }
        let mut v = Verdict::new(Outcome::Undecided, Rule::NoRuleApplies);
        v.omega = Some(omega);
        v.trace = trace;
        return Ok(v);
    }

    let mut v = Verdict::new(Outcome::Undecided, Rule::NoRuleApplies);
    v.trace = trace;
    Ok(v)
}
