//! Exact 2x2 matrix arithmetic, spectra classification and commutator
//! algebra.
//!
//! Eigenvalues are never materialized as floats inside predicates: a
//! [`Spectrum`] carries trace, determinant and discriminant, and every
//! downstream test is phrased in those quantities ("purely imaginary"
//! becomes trace = 0 and det > 0, "modulus > 1" becomes det > 1, and so
//! on).

use std::fmt;

use serde::Serialize;

use crate::complex::{CMat2, Cplx};
use crate::scalar::{Scalar, Sign};

/// 2x2 matrix with exact entries, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<F: Scalar> {
    pub e: [[F; 2]; 2],
}

impl<F: Scalar> Mat2<F> {
    pub fn new(a11: F, a12: F, a21: F, a22: F) -> Self {
        Mat2 {
            e: [[a11, a12], [a21, a22]],
        }
    }

    pub fn from_rows(rows: [[F; 2]; 2]) -> Self {
        Mat2 { e: rows }
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        Mat2::new(
            F::from_int(rows[0][0]),
            F::from_int(rows[0][1]),
            F::from_int(rows[1][0]),
            F::from_int(rows[1][1]),
        )
    }

    pub fn zero() -> Self {
        Mat2::new(F::zero(), F::zero(), F::zero(), F::zero())
    }

    pub fn identity() -> Self {
        Mat2::new(F::one(), F::zero(), F::zero(), F::one())
    }

    pub fn diag(a: F, d: F) -> Self {
        Mat2::new(a, F::zero(), F::zero(), d)
    }

    /// Rotation-scaling form [[s, -t], [t, s]].
    pub fn rotation_form(s: F, t: F) -> Self {
        Mat2::new(s.clone(), -t.clone(), t, s)
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.e[i][j]
    }

    pub fn trace(&self) -> F {
        self.e[0][0].clone() + self.e[1][1].clone()
    }

    pub fn det(&self) -> F {
        self.e[0][0].clone() * self.e[1][1].clone()
            - self.e[0][1].clone() * self.e[1][0].clone()
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(
            self.e[0][0].clone(),
            self.e[1][0].clone(),
            self.e[0][1].clone(),
            self.e[1][1].clone(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.e[0][0].clone() + rhs.e[0][0].clone(),
            self.e[0][1].clone() + rhs.e[0][1].clone(),
            self.e[1][0].clone() + rhs.e[1][0].clone(),
            self.e[1][1].clone() + rhs.e[1][1].clone(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.e[0][0].clone() - rhs.e[0][0].clone(),
            self.e[0][1].clone() - rhs.e[0][1].clone(),
            self.e[1][0].clone() - rhs.e[1][0].clone(),
            self.e[1][1].clone() - rhs.e[1][1].clone(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = |i: usize, j: usize| {
            self.e[i][0].clone() * rhs.e[0][j].clone()
                + self.e[i][1].clone() * rhs.e[1][j].clone()
        };
        Mat2::new(p(0, 0), p(0, 1), p(1, 0), p(1, 1))
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat2::new(
            self.e[0][0].clone() * s.clone(),
            self.e[0][1].clone() * s.clone(),
            self.e[1][0].clone() * s.clone(),
            self.e[1][1].clone() * s.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Mat2::new(
            -self.e[0][0].clone(),
            -self.e[0][1].clone(),
            -self.e[1][0].clone(),
            -self.e[1][1].clone(),
        )
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        Some(Mat2::new(
            self.e[1][1].clone() / d.clone(),
            -self.e[0][1].clone() / d.clone(),
            -self.e[1][0].clone() / d.clone(),
            self.e[0][0].clone() / d,
        ))
    }

    pub fn mul_vec(&self, v: &[F; 2]) -> [F; 2] {
        [
            self.e[0][0].clone() * v[0].clone() + self.e[0][1].clone() * v[1].clone(),
            self.e[1][0].clone() * v[0].clone() + self.e[1][1].clone() * v[1].clone(),
        ]
    }

    /// T^-1 * self * T.
    pub fn conjugate_by(&self, t: &Self) -> Option<Self> {
        let ti = t.inverse()?;
        Some(ti.mul(self).mul(t))
    }

    pub fn is_scalar(&self) -> bool {
        self.e[0][1].is_zero()
            && self.e[1][0].is_zero()
            && (self.e[0][0].clone() - self.e[1][1].clone()).is_zero()
    }

    /// A + iI as a complex matrix; its columns span the plane M(A).
    pub fn plus_i_identity(&self) -> CMat2<F> {
        CMat2::new(
            Cplx::new(self.e[0][0].clone(), F::one()),
            Cplx::from_real(self.e[0][1].clone()),
            Cplx::from_real(self.e[1][0].clone()),
            Cplx::new(self.e[1][1].clone(), F::one()),
        )
    }

    pub fn to_f64(&self) -> Mat2<f64> {
        Mat2::new(
            self.e[0][0].to_f64(),
            self.e[0][1].to_f64(),
            self.e[1][0].to_f64(),
            self.e[1][1].to_f64(),
        )
    }

    /// Spectrum via the characteristic polynomial x^2 - tr x + det.
    pub fn spectrum(&self) -> Spectrum<F> {
        let trace = self.trace();
        let det = self.det();
        let disc =
            trace.clone() * trace.clone() - F::from_int(4) * det.clone();
        let kind = match disc.sign() {
            Sign::Positive => SpectrumKind::RealDistinct,
            Sign::Zero => SpectrumKind::RealRepeated,
            Sign::Negative => SpectrumKind::ComplexConjugate,
        };
        Spectrum {
            trace,
            det,
            disc,
            kind,
        }
    }

    /// A plane M(A) = (A + iI)R^2 is totally real iff det(A^2 + I) != 0,
    /// i.e. iff the spectrum of A avoids +-i, i.e. not (tr = 0 and det = 1).
    pub fn is_totally_real(&self) -> bool {
        !(self.trace().is_zero() && (self.det() - F::one()).is_zero())
    }
}

impl<F: Scalar> fmt::Display for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// Classification of a 2x2 real spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SpectrumKind {
    RealDistinct,
    RealRepeated,
    ComplexConjugate,
}

/// Spectral data of a 2x2 matrix, kept symbolic: for the complex-conjugate
/// kind the eigenvalues are (trace/2) +- i sqrt(-disc)/2 but are never
/// stored as floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<F: Scalar> {
    pub trace: F,
    pub det: F,
    pub disc: F,
    pub kind: SpectrumKind,
}

impl<F: Scalar> Spectrum<F> {
    /// Eigenvalues as floating complex numbers, for reporting only.
    pub fn eigenvalues_f64(&self) -> [(f64, f64); 2] {
        let half_tr = self.trace.to_f64() / 2.0;
        let d = self.disc.to_f64();
        if d >= 0.0 {
            let r = d.sqrt() / 2.0;
            [(half_tr + r, 0.0), (half_tr - r, 0.0)]
        } else {
            let r = (-d).sqrt() / 2.0;
            [(half_tr, r), (half_tr, -r)]
        }
    }
}

/// AB - BA, exact.
pub fn commutator<F: Scalar>(a: &Mat2<F>, b: &Mat2<F>) -> Mat2<F> {
    a.mul(b).sub(&b.mul(a))
}

/// det(AB - BA), the pairwise triangularizability obstruction.
pub fn commutator_det<F: Scalar>(a: &Mat2<F>, b: &Mat2<F>) -> F {
    commutator(a, b).det()
}

/// Tr(ABC - CBA), the extra obstruction at reduced length three.
pub fn triple_trace_obstruction<F: Scalar>(
    a: &Mat2<F>,
    b: &Mat2<F>,
    c: &Mat2<F>,
) -> F {
    a.mul(b).mul(c).sub(&c.mul(b).mul(a)).trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint, Rat};

    fn m(rows: [[i64; 2]; 2]) -> Mat2<Rat> {
        Mat2::from_i64(rows)
    }

    #[test]
    fn spectrum_identity() {
        let s = Mat2::<Rat>::identity().spectrum();
        assert_eq!(s.trace, rint(2));
        assert_eq!(s.det, rint(1));
        assert_eq!(s.disc, rint(0));
        assert_eq!(s.kind, SpectrumKind::RealRepeated);
    }

    #[test]
    fn spectrum_rotation_by_two() {
        // [[0,-2],[2,0]] has eigenvalues +-2i.
        let s = m([[0, -2], [2, 0]]).spectrum();
        assert_eq!(s.trace, rint(0));
        assert_eq!(s.det, rint(4));
        assert_eq!(s.disc, rint(-16));
        assert_eq!(s.kind, SpectrumKind::ComplexConjugate);
        let ev = s.eigenvalues_f64();
        assert!((ev[0].1 - 2.0).abs() < 1e-12 && ev[0].0.abs() < 1e-12);
    }

    #[test]
    fn spectrum_ninety_degree_rotation() {
        let s = m([[0, 1], [-1, 0]]).spectrum();
        assert_eq!(s.trace, rint(0));
        assert_eq!(s.det, rint(1));
        assert_eq!(s.disc, rint(-4));
        assert_eq!(s.kind, SpectrumKind::ComplexConjugate);
    }

    #[test]
    fn commutator_examples() {
        let a = m([[1, 0], [0, 2]]);
        assert_eq!(commutator(&a, &a.mul(&a)), Mat2::zero());
        let b = m([[0, 1], [1, 0]]);
        assert_eq!(commutator(&a, &b), m([[0, -1], [1, 0]]));
        assert_eq!(commutator_det(&a, &b), rint(1));
        let c = m([[0, -1], [1, 0]]);
        assert_eq!(commutator(&a, &c), m([[0, 1], [1, 0]]));
        assert_eq!(commutator_det(&a, &c), rint(-1));
    }

    #[test]
    fn commutator_det_rotation_vs_diag() {
        // Matches -t1^2 (s22 - s21)^2 = -(2-1)^2 for the rotation/diagonal pair.
        let a1 = m([[0, -1], [1, 0]]);
        let a2 = m([[1, 0], [0, 2]]);
        assert_eq!(commutator_det(&a1, &a2), rint(-1));
    }

    #[test]
    fn triple_trace_examples() {
        let a = m([[0, 1], [0, 0]]);
        let b = m([[0, 0], [1, 0]]);
        let c = m([[1, 0], [0, 0]]);
        assert_eq!(triple_trace_obstruction(&a, &b, &c), rint(1));
        // Two equal arguments cancel by cyclicity of the trace.
        assert_eq!(triple_trace_obstruction(&a, &a, &c), rint(0));
        // Upper triangular triples share diagonals in both products.
        let u1 = m([[1, 1], [0, 2]]);
        let u2 = m([[3, 5], [0, 4]]);
        let u3 = m([[-2, 7], [0, 1]]);
        assert_eq!(triple_trace_obstruction(&u1, &u2, &u3), rint(0));
    }

    #[test]
    fn totally_real_checks() {
        assert!(Mat2::<Rat>::zero().is_totally_real());
        assert!(!m([[0, 1], [-1, 0]]).is_totally_real());
        assert!(m([[0, -2], [2, 0]]).is_totally_real());
        assert!(Mat2::new(rint(0), rat(-1, 2), rat(1, 2), rint(0)).is_totally_real());
    }

    #[test]
    fn inverse_and_conjugation() {
        let a = m([[1, 2], [3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat2::identity());
        assert!(m([[1, 2], [2, 4]]).inverse().is_none());
        let t = m([[1, 1], [0, 1]]);
        let conj = a.conjugate_by(&t).unwrap();
        assert_eq!(conj.trace(), a.trace());
        assert_eq!(conj.det(), a.det());
    }
}
