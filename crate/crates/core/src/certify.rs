//! Separation certificates for convex verdicts, and their verification.
//!
//! A Kallin certificate records, for each plane, the exact quadratic form
//! obtained by restricting the separating polynomial to that plane in the
//! certificate's coordinates, together with a target region of the complex
//! plane. A fiber certificate records a simultaneous upper-triangular form
//! and the fiber directions of the projection (z, w) -> w. Verification
//! re-derives every condition from the certificate fields alone and never
//! consults the verdict that produced it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Cplx;
use crate::mat2::Mat2;
use crate::normalform::{ConjugationResult, Shape};
use crate::scalar::{rat_from_str, Rat, Scalar, Sign};

/// Separating polynomials that occur in certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparatingPoly {
    #[serde(rename = "z2+w2")]
    ZsqPlusWsq,
    #[serde(rename = "z2-w2")]
    ZsqMinusWsq,
    #[serde(rename = "w")]
    W,
    #[serde(rename = "z2")]
    Zsq,
}

/// A certificate coefficient: exact rational when the arithmetic stayed
/// rational, tagged double precision where a conjugator was irrational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoefRepr", into = "CoefRepr")]
pub enum Coef {
    Exact(Rat),
    Approx(f64),
}

#[derive(Serialize, Deserialize, Clone)]
enum CoefRepr {
    #[serde(rename = "rat")]
    Rat(String),
    #[serde(rename = "approx")]
    Approx(f64),
}

impl TryFrom<CoefRepr> for Coef {
    type Error = String;
    fn try_from(r: CoefRepr) -> Result<Self, String> {
        match r {
            CoefRepr::Rat(s) => rat_from_str(&s)
                .map(Coef::Exact)
                .map_err(|e| e.to_string()),
            CoefRepr::Approx(x) => Ok(Coef::Approx(x)),
        }
    }
}

impl From<Coef> for CoefRepr {
    fn from(c: Coef) -> CoefRepr {
        match c {
            Coef::Exact(r) => CoefRepr::Rat(r.to_string()),
            Coef::Approx(x) => CoefRepr::Approx(x),
        }
    }
}

impl Coef {
    pub fn from_scalar<F: Scalar>(x: &F) -> Coef {
        match x.to_rat() {
            Some(r) => Coef::Exact(r),
            None => Coef::Approx(x.to_f64()),
        }
    }
    pub fn as_f64(&self) -> f64 {
        match self {
            Coef::Exact(r) => r.to_f64(),
            Coef::Approx(x) => *x,
        }
    }
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Coef::Exact(r) => Some(r),
            Coef::Approx(_) => None,
        }
    }
    fn vanishes(&self, tol: f64) -> bool {
        match self {
            Coef::Exact(r) => r.is_zero(),
            Coef::Approx(x) => x.abs() <= tol,
        }
    }
}

/// Complex coefficient of a restricted form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CCoef {
    pub re: Coef,
    pub im: Coef,
}

impl CCoef {
    fn from_cplx<F: Scalar>(z: &Cplx<F>) -> CCoef {
        CCoef {
            re: Coef::from_scalar(&z.re),
            im: Coef::from_scalar(&z.im),
        }
    }
}

/// Complex-valued quadratic form cxx x^2 + cxy xy + cyy y^2 in the real
/// plane parameters, with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadForm<F: Scalar> {
    pub cxx: Cplx<F>,
    pub cxy: Cplx<F>,
    pub cyy: Cplx<F>,
}

impl<F: Scalar> QuadForm<F> {
    pub fn eval(&self, x: &F, y: &F) -> Cplx<F> {
        let xx = Cplx::from_real(x.clone() * x.clone());
        let xy = Cplx::from_real(x.clone() * y.clone());
        let yy = Cplx::from_real(y.clone() * y.clone());
        self.cxx.clone() * xx + self.cxy.clone() * xy + self.cyy.clone() * yy
    }
}

/// Restriction of a polynomial to a plane; degree-one polynomials restrict
/// to a linear map of the parameters instead of a quadratic form.
#[derive(Debug, Clone, PartialEq)]
pub enum RestrictedPoly<F: Scalar> {
    Quadratic(QuadForm<F>),
    Linear { cx: Cplx<F>, cy: Cplx<F> },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("unsupported polynomial for this certificate")]
    UnsupportedPolynomial,
    #[error("conjugation did not reach upper-triangular form")]
    NotTriangular,
    #[error("certificate not applicable: {0}")]
    NotApplicable(String),
}

/// Restricts F to the plane M(A) parametrized by (A + iI)(x, y); `None`
/// denotes the base plane R^2 with z = x, w = y.
pub fn restrict_poly_to_plane<F: Scalar>(
    poly: SeparatingPoly,
    plane: Option<&Mat2<F>>,
) -> RestrictedPoly<F> {
    // Coefficient vectors of z and w as linear forms in (x, y).
    let (zx, zy, wx, wy) = match plane {
        None => (Cplx::one(), Cplx::zero(), Cplx::zero(), Cplx::one()),
        Some(a) => (
            Cplx::new(a.e[0][0].clone(), F::one()),
            Cplx::from_real(a.e[0][1].clone()),
            Cplx::from_real(a.e[1][0].clone()),
            Cplx::new(a.e[1][1].clone(), F::one()),
        ),
    };
    let two = Cplx::from_real(F::from_int(2));
    match poly {
        SeparatingPoly::W => RestrictedPoly::Linear { cx: wx, cy: wy },
        SeparatingPoly::Zsq => RestrictedPoly::Quadratic(QuadForm {
            cxx: zx.clone() * zx.clone(),
            cxy: two * zx * zy.clone(),
            cyy: zy.clone() * zy,
        }),
        SeparatingPoly::ZsqPlusWsq => RestrictedPoly::Quadratic(QuadForm {
            cxx: zx.clone() * zx.clone() + wx.clone() * wx.clone(),
            cxy: two * (zx * zy.clone() + wx * wy.clone()),
            cyy: zy.clone() * zy + wy.clone() * wy,
        }),
        SeparatingPoly::ZsqMinusWsq => RestrictedPoly::Quadratic(QuadForm {
            cxx: zx.clone() * zx.clone() - wx.clone() * wx.clone(),
            cxy: two * (zx * zy.clone() - wx * wy.clone()),
            cyy: zy.clone() * zy - wy.clone() * wy,
        }),
    }
}

/// Classification of a real quadratic form a x^2 + b xy + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Definiteness {
    PosDef,
    NegDef,
    Indefinite,
    PosSemi,
    NegSemi,
    Zero,
}

/// Exact classification by the signs of the coefficients and of b^2 - 4ac.
pub fn definiteness<F: Scalar>(a: &F, b: &F, c: &F) -> Definiteness {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Definiteness::Zero;
    }
    let disc = b.clone() * b.clone() - F::from_int(4) * a.clone() * c.clone();
    match disc.sign() {
        Sign::Positive => Definiteness::Indefinite,
        Sign::Negative => {
            if a.sign() == Sign::Positive {
                Definiteness::PosDef
            } else {
                Definiteness::NegDef
            }
        }
        Sign::Zero => {
            // b^2 = 4ac forces a and c to share a sign (or vanish).
            match (a.clone() + c.clone()).sign() {
                Sign::Positive => Definiteness::PosSemi,
                Sign::Negative => Definiteness::NegSemi,
                Sign::Zero => Definiteness::Zero,
            }
        }
    }
}

/// Strict definiteness of a possibly inexact form: the definite sign when
/// it clears the guard band, `None` otherwise (semidefinite and borderline
/// cases are unverifiable and rejected by callers).
fn definite_sign(a: &Coef, b: &Coef, c: &Coef) -> Option<Sign> {
    if let (Some(ae), Some(be), Some(ce)) = (a.exact(), b.exact(), c.exact()) {
        return match definiteness(ae, be, ce) {
            Definiteness::PosDef => Some(Sign::Positive),
            Definiteness::NegDef => Some(Sign::Negative),
            _ => None,
        };
    }
    let (af, bf, cf) = (a.as_f64(), b.as_f64(), c.as_f64());
    let scale = af.abs().max(bf.abs()).max(cf.abs()).max(1.0);
    let tol = 1e-9 * scale;
    let disc = bf * bf - 4.0 * af * cf;
    if disc < -tol * scale {
        if af > tol {
            Some(Sign::Positive)
        } else if af < -tol {
            Some(Sign::Negative)
        } else {
            None
        }
    } else {
        None
    }
}

/// Target region of the complex plane for one plane's image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum TargetSet {
    /// The ray { beta * (dirRe + i dirIm) : beta >= 0 }.
    RayFromOrigin { dir_re: Coef, dir_im: Coef },
    /// (C \ R) union {0}.
    NonRealUnionZero,
    /// A compact subset of the real line.
    RealSegment,
}

/// Structural shape of the zero fiber of the separating polynomial on the
/// certified compacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ZeroFiberShape {
    OriginOnly,
    RealLinesInBase,
}

/// How the two-sided separation lemma is applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum KallinStructure {
    /// Per-plane rays pairwise meeting only at 0; the union is certified
    /// plane by plane (the previously joined rays stay polynomially convex).
    RaysThroughOrigin,
    /// Base plane versus the union of the rest; the rest's own union must
    /// be polynomially convex, which the decision layer establishes from
    /// the pairwise hypothesis.
    BaseVersusRest { rest_pairwise_convex: bool },
}

/// Image of one plane under the separating polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneImage {
    pub cxx: CCoef,
    pub cxy: CCoef,
    pub cyy: CCoef,
    pub target: TargetSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KallinCertificate {
    pub polynomial: SeparatingPoly,
    pub structure: KallinStructure,
    /// Real change of coordinates in which the images were computed.
    pub conjugator: [[f64; 2]; 2],
    /// Index 0 is the base plane.
    pub images: Vec<PlaneImage>,
    pub zero_fiber: ZeroFiberShape,
    /// Max deviation of the conjugated matrices from their canonical forms.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiberCertificate {
    pub conjugator: [[f64; 2]; 2],
    /// Upper-triangular conjugated matrices; lower-left entries are zero.
    pub triangular_forms: Vec<[[Coef; 2]; 2]>,
    /// Fiber directions nu_j + i, read off the lower-right entries.
    pub directions: Vec<CCoef>,
    pub residual: f64,
}

/// A certificate attached to a convex verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum Certificate {
    Kallin(KallinCertificate),
    Fiber(FiberCertificate),
}

/// Verification outcome with human-readable reasons for failure.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub reasons: Vec<String>,
}

impl VerificationReport {
    fn pass() -> Self {
        VerificationReport {
            ok: true,
            reasons: Vec::new(),
        }
    }
    fn fail(&mut self, reason: impl Into<String>) {
        self.ok = false;
        self.reasons.push(reason.into());
    }
}

const RESIDUAL_BOUND: f64 = 1e-9;

fn quad_to_image<F: Scalar>(q: &QuadForm<F>, target: TargetSet) -> PlaneImage {
    PlaneImage {
        cxx: CCoef::from_cplx(&q.cxx),
        cxy: CCoef::from_cplx(&q.cxy),
        cyy: CCoef::from_cplx(&q.cyy),
        target,
    }
}

fn restrict_to_image<F: Scalar>(
    poly: SeparatingPoly,
    plane: Option<&Mat2<F>>,
    target: TargetSet,
) -> PlaneImage {
    match restrict_poly_to_plane(poly, plane) {
        RestrictedPoly::Quadratic(q) => quad_to_image(&q, target),
        RestrictedPoly::Linear { .. } => unreachable!("degree-two polynomial"),
    }
}

fn mat_to_coefs<F: Scalar>(m: &Mat2<F>) -> [[Coef; 2]; 2] {
    [
        [Coef::from_scalar(&m.e[0][0]), Coef::from_scalar(&m.e[0][1])],
        [Coef::from_scalar(&m.e[1][0]), Coef::from_scalar(&m.e[1][1])],
    ]
}

fn coef_zero() -> Coef {
    Coef::Exact(Rat::from_integer(0.into()))
}

fn coef_one() -> Coef {
    Coef::Exact(Rat::from_integer(1.into()))
}

/// Builds the ray-style certificate for the all-rotation-form path: the
/// restriction of z^2 + w^2 to a rotation-form plane is
/// ((det - 1) + i tr)(x^2 + y^2), so the coefficients come exactly from the
/// original matrices even when the conjugator is irrational.
pub fn build_kallin_rays<F: Scalar>(
    mats: &[Mat2<F>],
    conj: &ConjugationResult<F>,
) -> Result<KallinCertificate, CertifyError> {
    if conj.shape != Shape::RotationForm {
        return Err(CertifyError::NotApplicable(
            "rotation form required for the ray certificate".into(),
        ));
    }
    let mut images = Vec::with_capacity(mats.len() + 1);
    images.push(restrict_to_image::<F>(
        SeparatingPoly::ZsqPlusWsq,
        None,
        TargetSet::RayFromOrigin {
            dir_re: coef_one(),
            dir_im: coef_zero(),
        },
    ));
    for a in mats {
        let re = a.det() - F::one();
        let im = a.trace();
        let gamma = CCoef {
            re: Coef::from_scalar(&re),
            im: Coef::from_scalar(&im),
        };
        images.push(PlaneImage {
            cxx: gamma.clone(),
            cxy: CCoef {
                re: coef_zero(),
                im: coef_zero(),
            },
            cyy: gamma.clone(),
            target: TargetSet::RayFromOrigin {
                dir_re: gamma.re,
                dir_im: gamma.im,
            },
        });
    }
    Ok(KallinCertificate {
        polynomial: SeparatingPoly::ZsqPlusWsq,
        structure: KallinStructure::RaysThroughOrigin,
        conjugator: conj.conjugator.e,
        images,
        zero_fiber: ZeroFiberShape::OriginOnly,
        residual: conj.residual,
    })
}

/// Builds the base-versus-rest certificate used by the three-plane rules:
/// the base image stays on a real target while the other images land in
/// (C \ R) union {0} via a definite imaginary part.
pub fn build_kallin_base_vs_rest<F: Scalar>(
    poly: SeparatingPoly,
    conj: &ConjugationResult<F>,
    rest_pairwise_convex: bool,
) -> Result<KallinCertificate, CertifyError> {
    if !matches!(
        poly,
        SeparatingPoly::ZsqPlusWsq | SeparatingPoly::ZsqMinusWsq
    ) {
        return Err(CertifyError::UnsupportedPolynomial);
    }
    let base_target = match poly {
        SeparatingPoly::ZsqPlusWsq => TargetSet::RayFromOrigin {
            dir_re: coef_one(),
            dir_im: coef_zero(),
        },
        _ => TargetSet::RealSegment,
    };
    let zero_fiber = match poly {
        SeparatingPoly::ZsqPlusWsq => ZeroFiberShape::OriginOnly,
        _ => ZeroFiberShape::RealLinesInBase,
    };
    let mut images = Vec::new();
    match &conj.exact_forms {
        Some(forms) => {
            images.push(restrict_to_image::<F>(poly, None, base_target));
            for f in forms {
                images.push(restrict_to_image(
                    poly,
                    Some(f),
                    TargetSet::NonRealUnionZero,
                ));
            }
        }
        None => {
            images.push(restrict_to_image::<f64>(poly, None, base_target));
            for f in &conj.canonical_forms {
                images.push(restrict_to_image(
                    poly,
                    Some(f),
                    TargetSet::NonRealUnionZero,
                ));
            }
        }
    }
    Ok(KallinCertificate {
        polynomial: poly,
        structure: KallinStructure::BaseVersusRest {
            rest_pairwise_convex,
        },
        conjugator: conj.conjugator.e,
        images,
        zero_fiber,
        residual: conj.residual,
    })
}

/// Builds the fiber certificate for a simultaneously triangularized family.
pub fn build_fiber_certificate<F: Scalar>(
    conj: &ConjugationResult<F>,
) -> Result<FiberCertificate, CertifyError> {
    if conj.shape != Shape::UpperTriangular || conj.residual > RESIDUAL_BOUND {
        return Err(CertifyError::NotTriangular);
    }
    let (triangular_forms, directions): (Vec<_>, Vec<_>) = match &conj.exact_forms {
        Some(forms) => forms
            .iter()
            .map(|f| {
                (
                    mat_to_coefs(f),
                    CCoef {
                        re: Coef::from_scalar(&f.e[1][1]),
                        im: coef_one(),
                    },
                )
            })
            .unzip(),
        None => conj
            .canonical_forms
            .iter()
            .map(|f| {
                (
                    mat_to_coefs(f),
                    CCoef {
                        re: Coef::Approx(f.e[1][1]),
                        im: coef_one(),
                    },
                )
            })
            .unzip(),
    };
    Ok(FiberCertificate {
        conjugator: conj.conjugator.e,
        triangular_forms,
        directions,
        residual: conj.residual,
    })
}

/// Colinearity with positive ratio of two inexact plane vectors.
fn rays_positively_colinear(u: (&Coef, &Coef), v: (&Coef, &Coef)) -> bool {
    if let (Some(u1), Some(u2), Some(v1), Some(v2)) =
        (u.0.exact(), u.1.exact(), v.0.exact(), v.1.exact())
    {
        let cross = u1 * v2 - u2 * v1;
        let dot = u1 * v1 + u2 * v2;
        return cross.is_zero() && dot.sign() == Sign::Positive;
    }
    let (u1, u2, v1, v2) = (u.0.as_f64(), u.1.as_f64(), v.0.as_f64(), v.1.as_f64());
    let scale = (u1.abs() + u2.abs()).max(1e-300) * (v1.abs() + v2.abs()).max(1e-300);
    (u1 * v2 - u2 * v1).abs() <= 1e-9 * scale && u1 * v1 + u2 * v2 > 0.0
}

fn coefs_equal(a: &Coef, b: &Coef, tol: f64) -> bool {
    if let (Some(ae), Some(be)) = (a.exact(), b.exact()) {
        return ae == be;
    }
    (a.as_f64() - b.as_f64()).abs() <= tol
}

/// What the zero set of one image form contributes to the zero fiber.
enum FiberPiece {
    Origin,
    RealLines,
    Unverifiable(&'static str),
}

fn image_scale(img: &PlaneImage) -> f64 {
    [
        img.cxx.re.as_f64(),
        img.cxy.re.as_f64(),
        img.cyy.re.as_f64(),
        img.cxx.im.as_f64(),
        img.cxy.im.as_f64(),
        img.cyy.im.as_f64(),
    ]
    .iter()
    .fold(1.0f64, |m, x| m.max(x.abs()))
}

fn fiber_piece(img: &PlaneImage) -> FiberPiece {
    let tol = 1e-9 * image_scale(img);
    if definite_sign(&img.cxx.im, &img.cxy.im, &img.cyy.im).is_some() {
        // Imaginary part vanishes only at the origin.
        return FiberPiece::Origin;
    }
    let imag_zero = img.cxx.im.vanishes(tol)
        && img.cxy.im.vanishes(tol)
        && img.cyy.im.vanishes(tol);
    if imag_zero {
        // Real form: definite -> origin; indefinite -> two real lines.
        if let (Some(a), Some(b), Some(c)) = (
            img.cxx.re.exact(),
            img.cxy.re.exact(),
            img.cyy.re.exact(),
        ) {
            return match definiteness(a, b, c) {
                Definiteness::PosDef | Definiteness::NegDef => FiberPiece::Origin,
                Definiteness::Indefinite => FiberPiece::RealLines,
                _ => FiberPiece::Unverifiable("degenerate real image form"),
            };
        }
        let (a, b, c) = (
            img.cxx.re.as_f64(),
            img.cxy.re.as_f64(),
            img.cyy.re.as_f64(),
        );
        let scale = image_scale(img);
        let disc = b * b - 4.0 * a * c;
        if disc < -tol * scale && a.abs() > tol {
            return FiberPiece::Origin;
        }
        if disc > tol * scale {
            return FiberPiece::RealLines;
        }
        return FiberPiece::Unverifiable("degenerate real image form");
    }
    // Mixed form: the ray case gamma (x^2 + y^2) with gamma != 0 also
    // vanishes only at the origin.
    let gamma_form = img.cxy.re.vanishes(tol)
        && img.cxy.im.vanishes(tol)
        && coefs_equal(&img.cxx.re, &img.cyy.re, tol)
        && coefs_equal(&img.cxx.im, &img.cyy.im, tol);
    let gamma_nonzero = !(img.cxx.re.vanishes(tol) && img.cxx.im.vanishes(tol));
    if gamma_form && gamma_nonzero {
        FiberPiece::Origin
    } else {
        FiberPiece::Unverifiable("image form with unrecognized zero set")
    }
}

fn check_image_in_target(idx: usize, img: &PlaneImage, report: &mut VerificationReport) {
    let tol = 1e-9 * image_scale(img);
    match &img.target {
        TargetSet::RayFromOrigin { dir_re, dir_im } => {
            // The form must be gamma (x^2 + y^2) with gamma on the ray.
            if !(img.cxy.re.vanishes(tol) && img.cxy.im.vanishes(tol)) {
                report.fail(format!("image {idx}: cross term breaks the ray form"));
                return;
            }
            if !(coefs_equal(&img.cxx.re, &img.cyy.re, tol)
                && coefs_equal(&img.cxx.im, &img.cyy.im, tol))
            {
                report.fail(format!("image {idx}: x^2 and y^2 coefficients differ"));
                return;
            }
            if !rays_positively_colinear((&img.cxx.re, &img.cxx.im), (dir_re, dir_im)) {
                report.fail(format!("image {idx}: coefficient off the declared ray"));
            }
        }
        TargetSet::NonRealUnionZero => {
            if definite_sign(&img.cxx.im, &img.cxy.im, &img.cyy.im).is_none() {
                report.fail(format!(
                    "image {idx}: imaginary part is not definite, image may touch R"
                ));
            }
        }
        TargetSet::RealSegment => {
            if !(img.cxx.im.vanishes(tol)
                && img.cxy.im.vanishes(tol)
                && img.cyy.im.vanishes(tol))
            {
                report.fail(format!("image {idx}: imaginary part not identically zero"));
            }
        }
    }
}

/// True iff the two targets intersect only at the origin, for the target
/// shapes occurring here.
fn targets_meet_only_at_origin(a: &TargetSet, b: &TargetSet) -> bool {
    use TargetSet::*;
    match (a, b) {
        (
            RayFromOrigin {
                dir_re: ar,
                dir_im: ai,
            },
            RayFromOrigin {
                dir_re: br,
                dir_im: bi,
            },
        ) => !rays_positively_colinear((ar, ai), (br, bi)),
        (RayFromOrigin { dir_im, .. }, NonRealUnionZero)
        | (NonRealUnionZero, RayFromOrigin { dir_im, .. }) => dir_im.vanishes(0.0),
        (RealSegment, NonRealUnionZero) | (NonRealUnionZero, RealSegment) => true,
        // Two real-line targets, or two (C\R) u {0} targets, can overlap.
        _ => false,
    }
}

/// Verifies a Kallin certificate from its fields alone.
pub fn verify_kallin(cert: &KallinCertificate) -> VerificationReport {
    let mut report = VerificationReport::pass();
    if !matches!(
        cert.polynomial,
        SeparatingPoly::ZsqPlusWsq | SeparatingPoly::ZsqMinusWsq
    ) {
        report.fail("unsupported separating polynomial");
        return report;
    }
    if cert.images.len() < 2 {
        report.fail("certificate must cover the base plane and at least one more");
        return report;
    }
    if cert.residual > RESIDUAL_BOUND {
        report.fail(format!(
            "conjugation residual {} exceeds {}",
            cert.residual, RESIDUAL_BOUND
        ));
    }
    for (idx, img) in cert.images.iter().enumerate() {
        check_image_in_target(idx, img, &mut report);
    }
    match &cert.structure {
        KallinStructure::RaysThroughOrigin => {
            for (idx, img) in cert.images.iter().enumerate() {
                if !matches!(img.target, TargetSet::RayFromOrigin { .. }) {
                    report.fail(format!("image {idx}: ray structure requires ray targets"));
                }
            }
            for i in 0..cert.images.len() {
                for j in (i + 1)..cert.images.len() {
                    if !targets_meet_only_at_origin(
                        &cert.images[i].target,
                        &cert.images[j].target,
                    ) {
                        report.fail(format!("targets {i} and {j} overlap beyond 0"));
                    }
                }
            }
        }
        KallinStructure::BaseVersusRest {
            rest_pairwise_convex,
        } => {
            let base = &cert.images[0].target;
            if matches!(base, TargetSet::NonRealUnionZero) {
                report.fail("base target must be contained in the real line");
            }
            for (idx, img) in cert.images.iter().enumerate().skip(1) {
                if !matches!(img.target, TargetSet::NonRealUnionZero) {
                    report.fail(format!(
                        "image {idx}: rest side must target (C\\R) u {{0}}"
                    ));
                }
                if !targets_meet_only_at_origin(base, &img.target) {
                    report.fail(format!("base target meets target {idx} beyond 0"));
                }
            }
            if cert.images.len() > 2 && !rest_pairwise_convex {
                report.fail(
                    "several planes on the rest side but their union is not \
                     known to be polynomially convex",
                );
            }
        }
    }
    // Zero fiber: re-derive the structure from the image forms.
    let mut lines_somewhere = false;
    for (idx, img) in cert.images.iter().enumerate() {
        match fiber_piece(img) {
            FiberPiece::Origin => {}
            FiberPiece::RealLines => {
                if idx != 0 {
                    report.fail(format!(
                        "image {idx}: real lines in the zero fiber outside the base plane"
                    ));
                }
                lines_somewhere = true;
            }
            FiberPiece::Unverifiable(why) => {
                report.fail(format!("image {idx}: {why}"));
            }
        }
    }
    match cert.zero_fiber {
        ZeroFiberShape::OriginOnly => {
            if lines_somewhere {
                report.fail("declared origin-only zero fiber but found real lines");
            }
        }
        ZeroFiberShape::RealLinesInBase => {
            if !lines_somewhere {
                report.fail("declared real-line zero fiber but none derived");
            }
        }
    }
    report
}

/// Verifies a fiber certificate: exact upper-triangularity, direction
/// consistency, and the residual bound. The fiber structure of w over a
/// triangular family (single segments off 0, real lines through 0 in the
/// zero slice) follows from the shape itself.
pub fn verify_fiber_certificate(cert: &FiberCertificate) -> VerificationReport {
    let mut report = VerificationReport::pass();
    if cert.residual > RESIDUAL_BOUND {
        report.fail(format!(
            "conjugation residual {} exceeds {}",
            cert.residual, RESIDUAL_BOUND
        ));
    }
    if cert.triangular_forms.len() != cert.directions.len() {
        report.fail("directions and forms disagree in length");
        return report;
    }
    for (j, form) in cert.triangular_forms.iter().enumerate() {
        if !form[1][0].vanishes(0.0) {
            report.fail(format!("form {j}: lower-left entry is not zero"));
        }
        let dir = &cert.directions[j];
        if !coefs_equal(&dir.re, &form[1][1], 1e-12)
            || !coefs_equal(&dir.im, &coef_one(), 1e-12)
        {
            report.fail(format!("direction {j} does not match its form"));
        }
    }
    report
}

/// Verifies either certificate kind.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    match cert {
        Certificate::Kallin(k) => verify_kallin(k),
        Certificate::Fiber(f) => verify_fiber_certificate(f),
    }
}
