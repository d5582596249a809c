//! Constructive conjugations: real Jordan rotation form, simultaneous
//! rotation form, simultaneous triangularization, reduced length and the
//! three-plane normal forms.
//!
//! Verdicts never depend on the conjugators built here: a conjugator may
//! contain square roots, so it is carried in double precision (plus exact
//! entries whenever the arithmetic stayed rational) and the decision layer
//! re-derives its predicates from the original exact matrices.

use serde::Serialize;
use thiserror::Error;

use crate::mat2::{commutator, commutator_det, triple_trace_obstruction, Mat2, SpectrumKind};
use crate::scalar::{Scalar, Sign};

/// The canonical shape reached by a conjugation.
///
/// `RotationForm` covers both the all-rotation case (every form is
/// [[s, -t], [t, s]]) and the three-plane complex case where the pilot is a
/// rotation form and the second matrix is [[s21, -t2], [t2, s22]]; in both,
/// off-diagonals are antisymmetric. The `DiagonalPlus*` shapes have a
/// diagonal first form and a symmetric (resp. antisymmetric-off-diagonal)
/// second form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    RotationForm,
    UpperTriangular,
    DiagonalPlusSymmetric,
    DiagonalPlusMixed,
}

/// Result of a constructive conjugation A_j -> S^-1 A_j S.
#[derive(Debug, Clone)]
pub struct ConjugationResult<F: Scalar> {
    pub conjugator: Mat2<f64>,
    pub canonical_forms: Vec<Mat2<f64>>,
    pub shape: Shape,
    /// Max deviation of S^-1 A_j S from the claimed canonical form,
    /// evaluated in double precision.
    pub residual: f64,
    /// Exact conjugator, when its entries stayed in the scalar field.
    pub exact_conjugator: Option<Mat2<F>>,
    /// Exact canonical forms, when the arithmetic stayed in the field;
    /// entries forced to vanish by the shape are then exact zeros.
    pub exact_forms: Option<Vec<Mat2<F>>>,
}

/// Reduced length of a family plus one maximal reduction realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub reduced_length: usize,
    pub maximal_reduction: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("matrix has real spectrum; no rotation form exists")]
    RealSpectrum,
    #[error("matrix has a repeated real eigenvalue")]
    RepeatedRealSpectrum,
    #[error("planes are not transverse (det(A1 - A2) = 0)")]
    NotTransverse,
    #[error("base matrix is not totally real (A^2 + I singular)")]
    DegenerateBase,
    #[error("empty family")]
    EmptyFamily,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
}

fn max_abs_diff(a: &Mat2<f64>, b: &Mat2<f64>) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a.e[i][j] - b.e[i][j]).abs());
        }
    }
    m
}

fn residual_for<F: Scalar>(
    mats: &[Mat2<F>],
    conjugator: &Mat2<f64>,
    claimed: &[Mat2<f64>],
) -> f64 {
    let inv = conjugator
        .inverse()
        .expect("conjugator is invertible by construction");
    mats.iter()
        .zip(claimed)
        .map(|(a, c)| max_abs_diff(&inv.mul(&a.to_f64()).mul(conjugator), c))
        .fold(0.0, f64::max)
}

/// Eigenvector direction of `a` for eigenvalue `lambda`, in exact field
/// arithmetic. For a non-scalar matrix the direction is unique up to scale.
fn eigen_direction<G: Scalar>(a: &Mat2<G>, lambda: &G) -> [G; 2] {
    let b = a.e[0][1].clone();
    let c = a.e[1][0].clone();
    if !b.is_zero() {
        [b, lambda.clone() - a.e[0][0].clone()]
    } else if !c.is_zero() {
        [lambda.clone() - a.e[1][1].clone(), c]
    } else {
        // Diagonal matrix: pick the axis whose entry is nearer lambda,
        // which stays correct when lambda carries floating round-off.
        let d1 = lambda.clone() - a.e[0][0].clone();
        let d2 = lambda.clone() - a.e[1][1].clone();
        let gap = d1.clone() * d1 - d2.clone() * d2;
        if gap.sign() == Sign::Positive {
            [G::zero(), G::one()]
        } else {
            [G::one(), G::zero()]
        }
    }
}

fn cross<G: Scalar>(u: &[G; 2], v: &[G; 2]) -> G {
    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()
}

/// Completes an eigenvector to a basis [v w]; the companion is a standard
/// basis vector, keeping the conjugator as sparse as possible.
fn complete_basis<G: Scalar>(v: &[G; 2]) -> Mat2<G> {
    if !v[1].is_zero() {
        Mat2::new(v[0].clone(), G::one(), v[1].clone(), G::zero())
    } else {
        Mat2::new(v[0].clone(), G::zero(), v[1].clone(), G::one())
    }
}

/// Rotation-form conjugation in any field that can take the needed square
/// root: returns (S, canonical) with S^-1 A S = [[p, -q], [q, p]], q > 0.
fn rotation_core<G: Scalar>(a: &Mat2<G>) -> Option<(Mat2<G>, Mat2<G>)> {
    let two = G::from_int(2);
    let p = a.trace() / two.clone();
    let qsq = a.det() - p.clone() * p.clone();
    let q = qsq.sqrt_exact()?;
    if q.is_zero() {
        return None;
    }
    // disc < 0 forces b != 0 (and c != 0): (a-d)^2 + 4bc < 0.
    let b = a.e[0][1].clone();
    let v1 = [b.clone(), p.clone() - a.e[0][0].clone()];
    // Basis {v1, -v2} with v = v1 + i v2 the eigenvector for p + iq.
    let s = Mat2::new(v1[0].clone(), G::zero(), v1[1].clone(), -q.clone());
    let canonical = Mat2::rotation_form(p, q);
    Some((s, canonical))
}

/// Conjugates a matrix with non-real eigenvalues p +- iq to the rotation
/// form [[p, -q], [q, p]] by a real matrix.
pub fn real_jordan_rotation_form<F: Scalar>(
    a: &Mat2<F>,
) -> Result<ConjugationResult<F>, NormalFormError> {
    if a.spectrum().kind != SpectrumKind::ComplexConjugate {
        return Err(NormalFormError::RealSpectrum);
    }
    let exact = rotation_core(a);
    let (conjugator, canonical) = match &exact {
        Some((s, c)) => (s.to_f64(), c.to_f64()),
        None => rotation_core(&a.to_f64()).ok_or_else(|| {
            NormalFormError::HypothesisFailed(
                "spectrum indistinguishable from real at working precision".into(),
            )
        })?,
    };
    let residual = residual_for(
        std::slice::from_ref(a),
        &conjugator,
        std::slice::from_ref(&canonical),
    );
    let (exact_conjugator, exact_forms) = match exact {
        Some((s, c)) => (Some(s), Some(vec![c])),
        None => (None, None),
    };
    Ok(ConjugationResult {
        conjugator,
        canonical_forms: vec![canonical],
        shape: Shape::RotationForm,
        residual,
        exact_conjugator,
        exact_forms,
    })
}

/// Simultaneous rotation form for a family with vanishing pairwise
/// commutator determinants and at least one non-real member: one real S
/// puts every member in the form [[s_j, -t_j], [t_j, s_j]].
pub fn simultaneous_rotation_form<F: Scalar>(
    mats: &[Mat2<F>],
) -> Result<ConjugationResult<F>, NormalFormError> {
    if mats.is_empty() {
        return Err(NormalFormError::EmptyFamily);
    }
    for j in 0..mats.len() {
        for k in (j + 1)..mats.len() {
            if !commutator_det(&mats[j], &mats[k]).is_zero() {
                return Err(NormalFormError::HypothesisFailed(format!(
                    "det[A_{}, A_{}] != 0",
                    j + 1,
                    k + 1
                )));
            }
        }
    }
    let pilot = mats
        .iter()
        .position(|m| m.spectrum().kind == SpectrumKind::ComplexConjugate)
        .ok_or_else(|| {
            NormalFormError::HypothesisFailed("no member has non-real spectrum".into())
        })?;

    let exact_pair = rotation_core(&mats[pilot]);
    let mut exact_forms_acc = None;
    let (conjugator, canonical_forms) = if let Some((s_exact, _)) = &exact_pair {
        let s_inv = s_exact.inverse().expect("eigenbasis is invertible");
        let mut forms = Vec::with_capacity(mats.len());
        for m in mats {
            let g = s_inv.mul(m).mul(s_exact);
            // The commutator hypothesis forces equal diagonal and
            // antisymmetric off-diagonal entries exactly.
            if !(g.e[0][0].clone() - g.e[1][1].clone()).is_zero()
                || !(g.e[0][1].clone() + g.e[1][0].clone()).is_zero()
            {
                return Err(NormalFormError::HypothesisFailed(
                    "conjugated member is not in rotation form".into(),
                ));
            }
            forms.push(g);
        }
        let conj = s_exact.to_f64();
        let approx_forms: Vec<_> = forms.iter().map(Mat2::to_f64).collect();
        exact_forms_acc = Some(forms);
        (conj, approx_forms)
    } else {
        let (s, _) = rotation_core(&mats[pilot].to_f64()).ok_or_else(|| {
            NormalFormError::HypothesisFailed(
                "spectrum indistinguishable from real at working precision".into(),
            )
        })?;
        let s_inv = s.inverse().expect("eigenbasis is invertible");
        let forms = mats
            .iter()
            .map(|m| {
                let g = s_inv.mul(&m.to_f64()).mul(&s);
                let sj = m.trace().to_f64() / 2.0;
                let tj = (g.e[1][0] - g.e[0][1]) / 2.0;
                Mat2::rotation_form(sj, tj)
            })
            .collect();
        (s, forms)
    };
    let residual = residual_for(mats, &conjugator, &canonical_forms);
    let exact_conjugator = exact_pair.map(|(s, _)| s);
    Ok(ConjugationResult {
        conjugator,
        canonical_forms,
        shape: Shape::RotationForm,
        residual,
        exact_conjugator,
        exact_forms: exact_forms_acc,
    })
}

/// Reduces a transverse pair of planes (M(A1), M(A2)) to a pair
/// (R^2, M(B)): the original pair is locally polynomially convex at the
/// origin iff the reduced one is.
pub fn pairwise_reduce<F: Scalar>(
    a1: &Mat2<F>,
    a2: &Mat2<F>,
) -> Result<Mat2<F>, NormalFormError> {
    let diff_inv = a1
        .sub(a2)
        .inverse()
        .ok_or(NormalFormError::NotTransverse)?;
    if !a1.is_totally_real() {
        return Err(NormalFormError::DegenerateBase);
    }
    Ok(a1.mul(a2).add(&Mat2::identity()).mul(&diff_inv))
}

/// Exact maximum cardinality of a subsequence with no commuting pair, found
/// by exhaustive search (families here are small). Ties break toward the
/// lexicographically first index set.
pub fn reduced_length<F: Scalar>(
    mats: &[Mat2<F>],
) -> Result<ReductionReport, NormalFormError> {
    let n = mats.len();
    if n == 0 {
        return Err(NormalFormError::EmptyFamily);
    }
    assert!(n <= 20, "family too large for exhaustive reduction search");
    // commuting[i] has bit j set iff A_i and A_j commute (i != j).
    let mut commuting = vec![0u32; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if commutator(&mats[i], &mats[j]) == Mat2::zero() {
                commuting[i] |= 1 << j;
                commuting[j] |= 1 << i;
            }
        }
    }
    let mut best: u32 = 1; // singleton {0} is vacuously reduced
    let mut best_count = 1;
    for subset in 1u32..(1 << n) {
        let count = subset.count_ones() as usize;
        if count <= best_count && !(count == best_count && subset < best) {
            continue;
        }
        let reduced = (0..n)
            .all(|i| (subset >> i) & 1 == 0 || subset & commuting[i] == 0);
        if reduced && (count > best_count || subset < best) {
            best = subset;
            best_count = count;
        }
    }
    let maximal_reduction = (0..n).filter(|i| (best >> i) & 1 == 1).collect();
    Ok(ReductionReport {
        reduced_length: best_count,
        maximal_reduction,
    })
}

/// Simultaneous real triangularizability test: every member must have real
/// spectrum, all pairwise commutator determinants must vanish, and at
/// reduced length three the triple-trace obstruction must vanish on a
/// maximal reduction.
pub fn florentino_triangularizable<F: Scalar>(
    mats: &[Mat2<F>],
) -> Result<bool, NormalFormError> {
    if mats.is_empty() {
        return Err(NormalFormError::EmptyFamily);
    }
    for m in mats {
        if m.spectrum().disc.sign() == Sign::Negative {
            return Ok(false);
        }
    }
    for j in 0..mats.len() {
        for k in (j + 1)..mats.len() {
            if !commutator_det(&mats[j], &mats[k]).is_zero() {
                return Ok(false);
            }
        }
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
                    if !triple_trace_obstruction(&mats[a], &mats[b], &mats[c]).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Candidate common eigendirections: the (at most two) real eigendirections
/// of the matrix, provided the square roots stay in the field.
fn eigen_candidates<G: Scalar>(a: &Mat2<G>) -> Option<Vec<[G; 2]>> {
    let two = G::from_int(2);
    let spec = a.spectrum();
    let r = spec.disc.sqrt_exact()?;
    let l1 = (spec.trace.clone() + r.clone()) / two.clone();
    let l2 = (spec.trace - r) / two;
    let mut out = vec![eigen_direction(a, &l1)];
    let d2 = eigen_direction(a, &l2);
    if !cross(&out[0], &d2).is_zero() {
        out.push(d2);
    }
    // Directions along e1 first, so already-triangular input stays fixed.
    out.sort_by_key(|v| !v[1].is_zero());
    Some(out)
}

fn triangularize_with_pilot<G: Scalar>(
    mats: &[Mat2<G>],
    pilot: usize,
    tol: f64,
) -> Option<(Mat2<G>, Vec<Mat2<G>>)> {
    let candidates = eigen_candidates(&mats[pilot])?;
    'candidates: for v in &candidates {
        for m in mats {
            let image = m.mul_vec(v);
            let obstruction = cross(&image, v);
            let scale = v
                .iter()
                .map(|x| x.to_f64().abs())
                .fold(0.0, f64::max)
                .powi(2)
                * m.to_f64()
                    .e
                    .iter()
                    .flatten()
                    .fold(1.0f64, |acc, x| acc.max(x.abs()));
            if !obstruction.is_tiny(tol * scale.max(1.0)) {
                continue 'candidates;
            }
        }
        let s = complete_basis(v);
        let s_inv = s.inverse().expect("basis completion is invertible");
        let forms = mats
            .iter()
            .map(|m| {
                let g = s_inv.mul(m).mul(&s);
                // Common eigenvector: first column is (lambda, 0).
                Mat2::new(
                    g.e[0][0].clone(),
                    g.e[0][1].clone(),
                    G::zero(),
                    g.e[1][1].clone(),
                )
            })
            .collect();
        return Some((s, forms));
    }
    None
}

/// Conjugates a triangularizable family to exact upper-triangular form by
/// a single real matrix. For 2x2 matrices a family is simultaneously
/// upper-triangularizable over R iff it has a common real eigenvector, and
/// the candidates are the eigendirections of any non-scalar member.
pub fn simultaneous_triangularize<F: Scalar>(
    mats: &[Mat2<F>],
) -> Result<ConjugationResult<F>, NormalFormError> {
    if !florentino_triangularizable(mats)? {
        return Err(NormalFormError::HypothesisFailed(
            "family is not simultaneously triangularizable".into(),
        ));
    }
    let pilot = mats.iter().position(|m| !m.is_scalar());
    let Some(pilot) = pilot else {
        // All-scalar family: already diagonal.
        return Ok(ConjugationResult {
            conjugator: Mat2::identity(),
            canonical_forms: mats.iter().map(Mat2::to_f64).collect(),
            shape: Shape::UpperTriangular,
            residual: 0.0,
            exact_conjugator: Some(Mat2::identity()),
            exact_forms: Some(mats.to_vec()),
        });
    };

    if let Some((s, forms)) = triangularize_with_pilot(mats, pilot, 0.0) {
        let conjugator = s.to_f64();
        let canonical_forms: Vec<_> = forms.iter().map(Mat2::to_f64).collect();
        let residual = residual_for(mats, &conjugator, &canonical_forms);
        return Ok(ConjugationResult {
            conjugator,
            canonical_forms,
            shape: Shape::UpperTriangular,
            residual,
            exact_conjugator: Some(s),
            exact_forms: Some(forms),
        });
    }

    let approx: Vec<Mat2<f64>> = mats.iter().map(Mat2::to_f64).collect();
    let (s, forms) = triangularize_with_pilot(&approx, pilot, 1e-9)
        .ok_or_else(|| {
            NormalFormError::HypothesisFailed(
                "no common eigenvector found at working precision".into(),
            )
        })?;
    let residual = residual_for(mats, &s, &forms);
    Ok(ConjugationResult {
        conjugator: s,
        canonical_forms: forms,
        shape: Shape::UpperTriangular,
        residual,
        exact_conjugator: None,
        exact_forms: None,
    })
}

/// Three-plane normal form core, generic over the scalar field; returns
/// (S, form1, form2, shape). Fails (None) only when a needed square root
/// leaves the field.
fn three_plane_core<G: Scalar>(
    a1: &Mat2<G>,
    a2: &Mat2<G>,
    kind: SpectrumKind,
    zero_tol: f64,
) -> Option<(Mat2<G>, Mat2<G>, Mat2<G>, Shape)> {
    let two = G::from_int(2);
    match kind {
        SpectrumKind::RealDistinct => {
            let spec = a1.spectrum();
            let r = spec.disc.sqrt_exact()?;
            let l1 = (spec.trace.clone() + r.clone()) / two.clone();
            let l2 = (spec.trace - r) / two;
            let v1 = eigen_direction(a1, &l1);
            let v2 = eigen_direction(a1, &l2);
            let s0 = Mat2::new(
                v1[0].clone(),
                v2[0].clone(),
                v1[1].clone(),
                v2[1].clone(),
            );
            let s0_inv = s0.inverse()?;
            let m = s0_inv.mul(a2).mul(&s0);
            let d1 = Mat2::diag(l1, l2);
            let b = m.e[0][1].clone();
            let c = m.e[1][0].clone();
            let bc = b.clone() * c.clone();
            if bc.is_tiny(zero_tol) {
                // det[A1, A2] = 0: the second matrix is already triangular
                // in the eigenbasis (up to a swap).
                if c.is_tiny(zero_tol) {
                    let cleaned = Mat2::new(
                        m.e[0][0].clone(),
                        m.e[0][1].clone(),
                        G::zero(),
                        m.e[1][1].clone(),
                    );
                    return Some((s0, d1, cleaned, Shape::UpperTriangular));
                }
                let swap = Mat2::new(G::zero(), G::one(), G::one(), G::zero());
                let s = s0.mul(&swap);
                let d1s = Mat2::diag(
                    d1.e[1][1].clone(),
                    d1.e[0][0].clone(),
                );
                let cleaned = Mat2::new(
                    m.e[1][1].clone(),
                    m.e[1][0].clone(),
                    G::zero(),
                    m.e[0][0].clone(),
                );
                return Some((s, d1s, cleaned, Shape::UpperTriangular));
            }
            let same_sign = bc.sign() == Sign::Positive;
            let (g1sq, g2sq) = (abs_val(&c), abs_val(&b));
            let g1 = g1sq.sqrt_exact()?;
            let g2 = g2sq.sqrt_exact()?;
            // S -> S0 * diag(1/g1, 1/g2): off-diagonals become
            // b*g1/g2 and c*g2/g1.
            let d = Mat2::diag(G::one() / g1.clone(), G::one() / g2.clone());
            let s = s0.mul(&d);
            let upper = b * g1.clone() / g2.clone();
            let lower = c * g2 / g1;
            let form2 = Mat2::new(
                m.e[0][0].clone(),
                upper,
                lower,
                m.e[1][1].clone(),
            );
            let shape = if same_sign {
                Shape::DiagonalPlusSymmetric
            } else {
                Shape::DiagonalPlusMixed
            };
            Some((s, d1, form2, shape))
        }
        SpectrumKind::ComplexConjugate => {
            let (s1, rot1) = rotation_core(a1)?;
            let s1_inv = s1.inverse()?;
            let m = s1_inv.mul(a2).mul(&s1);
            let off_sum = m.e[0][1].clone() + m.e[1][0].clone();
            if off_sum.is_tiny(zero_tol) {
                let t2 = (m.e[1][0].clone() - m.e[0][1].clone()) / two;
                let form2 = Mat2::new(
                    m.e[0][0].clone(),
                    -t2.clone(),
                    t2,
                    m.e[1][1].clone(),
                );
                return Some((s1, rot1, form2, Shape::RotationForm));
            }
            let h = (m.e[0][0].clone() - m.e[1][1].clone()) / off_sum;
            let root = (h.clone() * h.clone() + G::one()).sqrt_exact()?;
            let mu = -h + root; // the larger of the two real roots
            let g = Mat2::new(mu.clone(), -G::one(), G::one(), mu);
            let g_inv = g.inverse()?;
            let m2 = g.mul(&m).mul(&g_inv);
            let s = s1.mul(&g_inv);
            let t2 = (m2.e[1][0].clone() - m2.e[0][1].clone()) / two;
            let form2 = Mat2::new(
                m2.e[0][0].clone(),
                -t2.clone(),
                t2,
                m2.e[1][1].clone(),
            );
            Some((s, rot1, form2, Shape::RotationForm))
        }
        SpectrumKind::RealRepeated => None,
    }
}

fn abs_val<G: Scalar>(x: &G) -> G {
    if x.sign() == Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Normal form for a three-plane configuration (base plane implicit): the
/// first matrix becomes diagonal or a rotation form, the second becomes
/// symmetric or antisymmetric off-diagonal, fixing the coordinates used by
/// the three-plane separation certificates.
pub fn three_plane_normal_form<F: Scalar>(
    a1: &Mat2<F>,
    a2: &Mat2<F>,
) -> Result<ConjugationResult<F>, NormalFormError> {
    let kind = a1.spectrum().kind;
    if kind == SpectrumKind::RealRepeated {
        return Err(NormalFormError::RepeatedRealSpectrum);
    }
    let mats = [a1.clone(), a2.clone()];
    if let Some((s, f1, f2, shape)) = three_plane_core(a1, a2, kind, 0.0) {
        let conjugator = s.to_f64();
        let canonical_forms = vec![f1.to_f64(), f2.to_f64()];
        let residual = residual_for(&mats, &conjugator, &canonical_forms);
        return Ok(ConjugationResult {
            conjugator,
            canonical_forms,
            shape,
            residual,
            exact_conjugator: Some(s),
            exact_forms: Some(vec![f1, f2]),
        });
    }
    let (s, f1, f2, shape) = three_plane_core(&a1.to_f64(), &a2.to_f64(), kind, 1e-12)
        .ok_or_else(|| {
            NormalFormError::HypothesisFailed(
                "normal form unreachable at working precision".into(),
            )
        })?;
    let residual = residual_for(&mats, &s, &[f1.clone(), f2.clone()]);
    Ok(ConjugationResult {
        conjugator: s,
        canonical_forms: vec![f1, f2],
        shape,
        residual,
        exact_conjugator: None,
        exact_forms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint, Rat};

    fn m(rows: [[i64; 2]; 2]) -> Mat2<Rat> {
        Mat2::from_i64(rows)
    }

    #[test]
    fn rotation_form_already_canonical() {
        let a = m([[3, -2], [2, 3]]);
        let r = real_jordan_rotation_form(&a).unwrap();
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.exact_forms.as_ref().unwrap()[0], a);
    }

    #[test]
    fn rotation_form_irrational() {
        let a = m([[1, -2], [1, 1]]);
        let r = real_jordan_rotation_form(&a).unwrap();
        assert!(r.residual <= 1e-9);
        assert!(r.exact_forms.is_none());
        let c = &r.canonical_forms[0];
        let sqrt2 = 2f64.sqrt();
        assert!((c.e[0][0] - 1.0).abs() < 1e-12);
        assert!((c.e[1][0] - sqrt2).abs() < 1e-12);
        assert!((c.e[0][1] + sqrt2).abs() < 1e-12);
    }

    #[test]
    fn rotation_form_rejects_real_spectrum() {
        assert_eq!(
            real_jordan_rotation_form(&m([[1, 0], [0, 2]])).unwrap_err(),
            NormalFormError::RealSpectrum
        );
    }

    #[test]
    fn simultaneous_rotation_examples() {
        let a = m([[1, -1], [1, 1]]);
        let r = simultaneous_rotation_form(std::slice::from_ref(&a)).unwrap();
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.exact_forms.as_ref().unwrap()[0], a);

        let b = m([[2, -1], [1, 2]]);
        let r2 = simultaneous_rotation_form(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(r2.exact_forms.as_ref().unwrap().clone(), vec![a.clone(), b]);

        let err =
            simultaneous_rotation_form(&[a, m([[1, 0], [0, 2]])]).unwrap_err();
        assert!(matches!(err, NormalFormError::HypothesisFailed(_)));
    }

    #[test]
    fn pairwise_reduce_examples() {
        let a1 = m([[1, -1], [1, 1]]);
        let a2 = m([[2, -1], [1, 2]]);
        let b = pairwise_reduce(&a1, &a2).unwrap();
        assert_eq!(b, m([[-2, 3], [-3, -2]]));
        let spec = b.spectrum();
        assert_eq!(spec.kind, SpectrumKind::ComplexConjugate);
        assert_eq!(spec.trace, rint(-4));
        assert_eq!(spec.det, rint(13));

        // Zero second matrix reduces to the inverse of the first.
        let inv = pairwise_reduce(&a1, &Mat2::zero()).unwrap();
        assert_eq!(inv, a1.inverse().unwrap());

        assert_eq!(
            pairwise_reduce(&a1, &a1).unwrap_err(),
            NormalFormError::NotTransverse
        );
    }

    #[test]
    fn reduced_length_examples() {
        let a = m([[1, 0], [0, 2]]);
        assert_eq!(
            reduced_length(std::slice::from_ref(&a)).unwrap().reduced_length,
            1
        );
        assert_eq!(
            reduced_length(&[a.clone(), a.mul(&a)]).unwrap().reduced_length,
            1
        );
        let b = m([[0, 1], [1, 0]]);
        let rep = reduced_length(&[a, b]).unwrap();
        assert_eq!(rep.reduced_length, 2);
        assert_eq!(rep.maximal_reduction, vec![0, 1]);
        assert!(reduced_length::<Rat>(&[]).is_err());
    }

    #[test]
    fn florentino_examples() {
        let u1 = m([[1, 1], [0, 2]]);
        let u2 = m([[3, 5], [0, 4]]);
        assert!(florentino_triangularizable(&[u1, u2]).unwrap());
        assert!(!florentino_triangularizable(&[
            m([[1, 0], [0, 2]]),
            m([[0, 1], [1, 0]]),
        ])
        .unwrap());
        assert!(!florentino_triangularizable(&[m([[0, -1], [1, 0]])]).unwrap());
    }

    #[test]
    fn florentino_trace_obstruction_at_length_three() {
        // Pairwise commutator dets vanish, triple trace does not.
        let a = m([[1, 0], [0, 0]]);
        let b = m([[1, 1], [0, 0]]);
        let c = m([[0, 0], [1, 1]]);
        assert_eq!(commutator_det(&a, &b), rint(0));
        assert_eq!(commutator_det(&a, &c), rint(0));
        assert_eq!(commutator_det(&b, &c), rint(0));
        assert_eq!(reduced_length(&[a.clone(), b.clone(), c.clone()]).unwrap().reduced_length, 3);
        assert!(!triple_trace_obstruction(&a, &b, &c).is_zero());
        assert!(!florentino_triangularizable(&[a.clone(), b.clone(), c.clone()]).unwrap());
        let err = simultaneous_triangularize(&[a, b, c]).unwrap_err();
        assert!(matches!(err, NormalFormError::HypothesisFailed(_)));
    }

    #[test]
    fn triangularize_conjugated_uppers() {
        let t = m([[1, 0], [1, 1]]);
        let t_inv = t.inverse().unwrap();
        let u1 = t.mul(&m([[1, 1], [0, 2]])).mul(&t_inv);
        let u2 = t.mul(&m([[3, 5], [0, 4]])).mul(&t_inv);
        let r = simultaneous_triangularize(&[u1, u2]).unwrap();
        let forms = r.exact_forms.expect("rational eigenvalues stay exact");
        for f in &forms {
            assert!(f.e[1][0].is_zero());
        }
        assert!(r.residual <= 1e-9);
    }

    #[test]
    fn triangularize_all_scalar() {
        let r = simultaneous_triangularize(&[
            Mat2::<Rat>::identity(),
            Mat2::identity().scale(&rint(3)),
        ])
        .unwrap();
        assert_eq!(r.conjugator, Mat2::identity());
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn three_plane_symmetric_case() {
        // b' = 1, c' = 4: g = (2, 1) and the off-diagonal becomes 2.
        let a1 = m([[1, 0], [0, 2]]);
        let a2 = m([[5, 1], [4, 1]]);
        let r = three_plane_normal_form(&a1, &a2).unwrap();
        assert_eq!(r.shape, Shape::DiagonalPlusSymmetric);
        let forms = r.exact_forms.unwrap();
        assert_eq!(forms[1].e[0][1], forms[1].e[1][0]);
        assert_eq!(abs_val(&forms[1].e[0][1]), rint(2));
        assert!(r.residual <= 1e-9);
    }

    #[test]
    fn three_plane_quadratic_symmetric_coefficient() {
        // m1 - m4 = 0 forces mu = 1 (root of mu^2 - 1 = 0).
        let a1 = m([[1, -1], [1, 1]]);
        let a2 = m([[2, 3], [1, 2]]);
        let r = three_plane_normal_form(&a1, &a2).unwrap();
        assert_eq!(r.shape, Shape::RotationForm);
        let forms = r.exact_forms.expect("mu = 1 stays rational");
        assert_eq!(forms[1].e[0][1], -forms[1].e[1][0].clone());
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn three_plane_quadratic_general() {
        // (m1, m2, m3, m4) = (1, 2, 1, 0): mu^2 + (2/3) mu - 1 = 0, so the
        // larger root is (-1 + sqrt 10)/3.
        let a1 = m([[0, -1], [1, 0]]);
        let a2 = m([[1, 2], [1, 0]]);
        let r = three_plane_normal_form(&a1, &a2).unwrap();
        assert_eq!(r.shape, Shape::RotationForm);
        assert!(r.exact_forms.is_none());
        assert!(r.residual <= 1e-9);
        let f2 = &r.canonical_forms[1];
        assert!((f2.e[0][1] + f2.e[1][0]).abs() < 1e-12);
        // Conjugation preserves trace and determinant.
        assert!((f2.e[0][0] + f2.e[1][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_plane_rejects_repeated_spectrum() {
        assert_eq!(
            three_plane_normal_form(&Mat2::<Rat>::identity(), &m([[1, 2], [3, 4]]))
                .unwrap_err(),
            NormalFormError::RepeatedRealSpectrum
        );
    }

    #[test]
    fn three_plane_mixed_case() {
        let a1 = m([[1, 0], [0, -1]]);
        let a2 = m([[1, -1], [1, -2]]);
        let r = three_plane_normal_form(&a1, &a2).unwrap();
        assert_eq!(r.shape, Shape::DiagonalPlusMixed);
        let forms = r.exact_forms.unwrap();
        assert_eq!(forms[1].e[0][1], -forms[1].e[1][0].clone());
    }

    #[test]
    fn quadratic_root_invariance_of_symmetrized_det() {
        // Both roots of the quadratic produce the same value of
        // det(form2 + form2^T).
        let a2f = m([[2, 1], [4, -1]]).to_f64();
        let h = (a2f.e[0][0] - a2f.e[1][1]) / (a2f.e[0][1] + a2f.e[1][0]);
        let mut dets = Vec::new();
        for mu in [-h + (h * h + 1.0).sqrt(), -h - (h * h + 1.0).sqrt()] {
            let g = Mat2::new(mu, -1.0, 1.0, mu);
            let m2 = g.mul(&a2f).mul(&g.inverse().unwrap());
            let sym = m2.add(&m2.transpose());
            dets.push(sym.det());
        }
        assert!((dets[0] - dets[1]).abs() < 1e-9);
    }

    #[test]
    fn is_tiny_semantics() {
        assert!(rint(0).is_tiny(0.0));
        assert!(!rat(1, 1_000_000_000).is_tiny(1.0));
        assert!(1e-12f64.is_tiny(1e-9));
        assert!(!1e-6f64.is_tiny(1e-9));
    }
}
