//! Complex numbers and 2x2 complex matrices over an exact scalar field.
//!
//! Used for plane spans in C^2 and for restricting polynomials to planes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Complex number with exact real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Cplx<F: Scalar> {
    pub re: F,
    pub im: F,
}

impl<F: Scalar> Cplx<F> {
    pub fn new(re: F, im: F) -> Self {
        Cplx { re, im }
    }
    pub fn from_real(re: F) -> Self {
        Cplx {
            re,
            im: F::zero(),
        }
    }
    pub fn zero() -> Self {
        Cplx::new(F::zero(), F::zero())
    }
    pub fn one() -> Self {
        Cplx::new(F::one(), F::zero())
    }
    pub fn i() -> Self {
        Cplx::new(F::zero(), F::one())
    }
    pub fn conj(&self) -> Self {
        Cplx::new(self.re.clone(), -self.im.clone())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    /// |z|^2, exact.
    pub fn norm_sq(&self) -> F {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
    pub fn scale(&self, s: &F) -> Self {
        Cplx::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return None;
        }
        Some(Cplx::new(
            self.re.clone() / n.clone(),
            -self.im.clone() / n,
        ))
    }
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<F: Scalar> Add for Cplx<F> {
    type Output = Cplx<F>;
    fn add(self, rhs: Cplx<F>) -> Cplx<F> {
        Cplx::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<F: Scalar> Sub for Cplx<F> {
    type Output = Cplx<F>;
    fn sub(self, rhs: Cplx<F>) -> Cplx<F> {
        Cplx::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<F: Scalar> Mul for Cplx<F> {
    type Output = Cplx<F>;
    fn mul(self, rhs: Cplx<F>) -> Cplx<F> {
        Cplx::new(
            self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl<F: Scalar> Neg for Cplx<F> {
    type Output = Cplx<F>;
    fn neg(self) -> Cplx<F> {
        Cplx::new(-self.re, -self.im)
    }
}

impl<F: Scalar> fmt::Display for Cplx<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

/// 2x2 complex matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat2<F: Scalar> {
    pub e: [[Cplx<F>; 2]; 2],
}

impl<F: Scalar> CMat2<F> {
    pub fn new(e11: Cplx<F>, e12: Cplx<F>, e21: Cplx<F>, e22: Cplx<F>) -> Self {
        CMat2 {
            e: [[e11, e12], [e21, e22]],
        }
    }
    pub fn from_cols(c1: [Cplx<F>; 2], c2: [Cplx<F>; 2]) -> Self {
        let [a, c] = c1;
        let [b, d] = c2;
        CMat2::new(a, b, c, d)
    }
    pub fn det(&self) -> Cplx<F> {
        self.e[0][0].clone() * self.e[1][1].clone()
            - self.e[0][1].clone() * self.e[1][0].clone()
    }
    pub fn inv(&self) -> Option<CMat2<F>> {
        let d = self.det().inv()?;
        Some(CMat2::new(
            self.e[1][1].clone() * d.clone(),
            -self.e[0][1].clone() * d.clone(),
            -self.e[1][0].clone() * d.clone(),
            self.e[0][0].clone() * d,
        ))
    }
    pub fn mul_mat(&self, rhs: &CMat2<F>) -> CMat2<F> {
        let p = |i: usize, j: usize| {
            self.e[i][0].clone() * rhs.e[0][j].clone()
                + self.e[i][1].clone() * rhs.e[1][j].clone()
        };
        CMat2::new(p(0, 0), p(0, 1), p(1, 0), p(1, 1))
    }
    pub fn mul_vec(&self, v: &[Cplx<F>; 2]) -> [Cplx<F>; 2] {
        [
            self.e[0][0].clone() * v[0].clone() + self.e[0][1].clone() * v[1].clone(),
            self.e[1][0].clone() * v[0].clone() + self.e[1][1].clone() * v[1].clone(),
        ]
    }
    /// Real and imaginary parts as entry arrays, row major.
    pub fn re_parts(&self) -> [[F; 2]; 2] {
        [
            [self.e[0][0].re.clone(), self.e[0][1].re.clone()],
            [self.e[1][0].re.clone(), self.e[1][1].re.clone()],
        ]
    }
    pub fn im_parts(&self) -> [[F; 2]; 2] {
        [
            [self.e[0][0].im.clone(), self.e[0][1].im.clone()],
            [self.e[1][0].im.clone(), self.e[1][1].im.clone()],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint, Rat};

    #[test]
    fn complex_mul_inv() {
        let z = Cplx::new(rat(1, 2), rint(3));
        let w = z.inv().unwrap();
        assert_eq!(z * w, Cplx::<Rat>::one());
        assert!(Cplx::<Rat>::zero().inv().is_none());
    }

    #[test]
    fn cmat_inverse() {
        let m = CMat2::new(
            Cplx::new(rint(1), rint(1)),
            Cplx::from_real(rint(2)),
            Cplx::i(),
            Cplx::new(rint(0), rint(-1)),
        );
        let inv = m.inv().unwrap();
        let id = m.mul_mat(&inv);
        assert_eq!(id.e[0][0], Cplx::one());
        assert_eq!(id.e[0][1], Cplx::zero());
        assert_eq!(id.e[1][0], Cplx::zero());
        assert_eq!(id.e[1][1], Cplx::one());
    }
}
