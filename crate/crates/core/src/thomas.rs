//! The one-parameter family of three totally-real planes whose pairwise
//! unions are locally polynomially convex while the triple union is not,
//! approaching the boundary of the star region as the parameter shrinks.
//!
//! Matrix entries live in Q(sqrt 3), so every classification of this
//! family is exact; conversion to floating point happens only at the
//! probe boundary.

use thiserror::Error;

use crate::complex::Cplx;
use crate::mat2::{Mat2, Spectrum};
use crate::planes::GraphPlane;
use crate::scalar::{rint, Rat, Scalar, Sqrt3};

/// The matrix pair at one parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct ThomasPair {
    pub epsilon: Rat,
    pub a1: Mat2<Sqrt3>,
    pub a2: Mat2<Sqrt3>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThomasError {
    #[error("parameter must avoid 0, 1 and -1")]
    DegenerateEpsilon,
}

fn sqrt3_rat(r: Rat) -> Sqrt3 {
    Sqrt3::from_rat(r)
}

/// 1/sqrt(3) = sqrt(3)/3 as an exact field element.
fn inv_root3() -> Sqrt3 {
    Sqrt3::new(Rat::from_integer(0.into()), crate::scalar::rat(1, 3))
}

fn check_eps(eps: &Rat) -> Result<(), ThomasError> {
    let one = rint(1);
    if eps.is_zero() || *eps == one || *eps == -one {
        return Err(ThomasError::DegenerateEpsilon);
    }
    Ok(())
}

/// The pair of matrices
///   A1 = [[ e/(sqrt3 (1+e)), 1/(1+e) ], [ -1/(1-e), -e/(sqrt3 (1-e)) ]],
///   A2 = [[ -e/(sqrt3 (1+e)), 1/(1+e) ], [ -1/(1-e), e/(sqrt3 (1-e)) ]],
/// exact in Q(sqrt 3).
pub fn thomas_matrices(eps: &Rat) -> Result<ThomasPair, ThomasError> {
    check_eps(eps)?;
    let one = rint(1);
    let plus = &one + eps; // 1 + e
    let minus = &one - eps; // 1 - e
    let diag = inv_root3() * sqrt3_rat(eps / &plus); // e/(sqrt3 (1+e))
    let diag2 = inv_root3() * sqrt3_rat(eps / &minus); // e/(sqrt3 (1-e))
    let upper = sqrt3_rat(&one / &plus);
    let lower = sqrt3_rat(-(&one / &minus));
    let a1 = Mat2::new(
        diag.clone(),
        upper.clone(),
        lower.clone(),
        -diag2.clone(),
    );
    let a2 = Mat2::new(-diag, upper, lower, diag2);
    Ok(ThomasPair {
        epsilon: eps.clone(),
        a1,
        a2,
    })
}

/// The limit of the family as the parameter goes to zero: both matrices
/// become the 90-degree rotation, which sits on the boundary of the star
/// region.
pub fn thomas_limit_pair() -> (Mat2<Sqrt3>, Mat2<Sqrt3>) {
    let j = Mat2::new(
        Sqrt3::zero(),
        Sqrt3::one(),
        -Sqrt3::one(),
        Sqrt3::zero(),
    );
    (j.clone(), j)
}

/// Spectra from the closed-form expressions
///   sigma(A1) = { (-e^2 +- sqrt(4 e^2 - 3)) / (sqrt3 (1 - e^2)) },
///   sigma(A2) = { (+e^2 +- sqrt(4 e^2 - 3)) / (sqrt3 (1 - e^2)) },
/// returned as exact (trace, det) data and cross-checked against the
/// characteristic polynomials of the matrices.
pub fn thomas_spectra(eps: &Rat) -> Result<(Spectrum<Sqrt3>, Spectrum<Sqrt3>), ThomasError> {
    let pair = thomas_matrices(eps)?;
    let s1 = pair.a1.spectrum();
    let s2 = pair.a2.spectrum();

    // Closed form: 2s = -+ 2 e^2/(sqrt3 (1 - e^2)), s^2 + t^2 read off the
    // radicand 4 e^2 - 3 (negative for small e).
    let one = rint(1);
    let esq = eps * eps;
    let denom = &one - &esq; // 1 - e^2
    let trace1 = inv_root3() * sqrt3_rat(rint(-2) * &esq / &denom);
    let radicand = rint(4) * &esq - rint(3);
    // det = (s^2 - (4e^2-3)/ (3 (1-e^2)^2 ... computed as
    // ((-e^2)^2 - (4 e^2 - 3)) / (3 (1 - e^2)^2) = (3 - e^2)/(3(1 - e^2)).
    let det_closed =
        sqrt3_rat((&esq * &esq - &radicand) / (rint(3) * &denom * &denom));
    assert_eq!(s1.trace, trace1, "closed-form trace mismatch for A1");
    assert_eq!(s1.det, det_closed, "closed-form det mismatch for A1");
    assert_eq!(s2.trace, -trace1, "closed-form trace mismatch for A2");
    assert_eq!(s2.det, det_closed, "closed-form det mismatch for A2");
    Ok((s1, s2))
}

/// The three graph planes
///   P0: w = conj(z),
///   P1: w = -(sqrt3 (sqrt3 - i) / 2e) z + ((-1 + sqrt3 i)/2) conj(z),
///   P2: w = -(sqrt3 (sqrt3 + i) / 2e) z - ((1 + sqrt3 i)/2) conj(z),
/// with coefficients exact in Q(sqrt 3).
pub fn thomas_graphs(
    eps: &Rat,
) -> Result<[GraphPlane<Sqrt3>; 3], ThomasError> {
    if eps.is_zero() {
        return Err(ThomasError::DegenerateEpsilon);
    }
    let half = crate::scalar::rat(1, 2);
    let p0 = GraphPlane::new(Cplx::zero(), Cplx::one());
    // -(sqrt3(sqrt3 - i))/(2e) = (-3 + sqrt3 i)/(2e).
    let a1 = Cplx::new(
        sqrt3_rat(crate::scalar::rat(-3, 2) / eps),
        Sqrt3::new(Rat::from_integer(0.into()), &half / eps),
    );
    let b1 = Cplx::new(
        sqrt3_rat(-half.clone()),
        Sqrt3::new(Rat::from_integer(0.into()), half.clone()),
    );
    let p1 = GraphPlane::new(a1, b1);
    let a2 = Cplx::new(
        sqrt3_rat(crate::scalar::rat(-3, 2) / eps),
        Sqrt3::new(Rat::from_integer(0.into()), -(&half / eps)),
    );
    let b2 = Cplx::new(
        sqrt3_rat(-half.clone()),
        Sqrt3::new(Rat::from_integer(0.into()), -half),
    );
    let p2 = GraphPlane::new(a2, b2);
    Ok([p0, p1, p2])
}

/// The coordinate change (z, w) -> (z + w, i(w - z)) that carries the
/// graph triple onto the normal form with base plane R^2.
pub fn thomas_coordinate_change() -> crate::complex::CMat2<Sqrt3> {
    crate::complex::CMat2::new(
        Cplx::one(),
        Cplx::one(),
        -Cplx::i(),
        Cplx::i(),
    )
}
