//! Exact scalar arithmetic.
//!
//! Every decision predicate in this crate reduces to sign tests on
//! polynomials in matrix entries, so the scalars that feed predicates are
//! exact: arbitrary-precision rationals ([`Rat`]) or elements of the real
//! quadratic field Q(sqrt 3) ([`Sqrt3`], used by the one-parameter
//! counterexample family whose entries involve 1/sqrt(3)). Floating point
//! ([`f64`]) implements the same [`Scalar`] interface but is only used to
//! build conjugating matrices and residuals, never to decide anything.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, canonical form (reduced, positive denominator)
/// is maintained by the underlying implementation.
pub type Rat = BigRational;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_pos(self) -> bool {
        self == Sign::Positive
    }
    pub fn is_neg(self) -> bool {
        self == Sign::Negative
    }
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

/// The scalar interface shared by `Rat`, `Sqrt3` and `f64`.
///
/// All arithmetic is by value; the matrices here are 2x2 so cloning is
/// cheap relative to the big-integer operations themselves.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Exact sign. For `f64` this is the floating sign and must not be
    /// used in verdict predicates.
    fn sign(&self) -> Sign;
    fn to_f64(&self) -> f64;
    /// Exact conversion to a rational, when the value is rational.
    fn to_rat(&self) -> Option<Rat>;
    /// Exact square root within the same field, when one exists.
    fn sqrt_exact(&self) -> Option<Self>;
    /// Zero test with a floating tolerance. Exact fields ignore the
    /// tolerance and test exact vanishing; `f64` compares |x| <= tol.
    fn is_tiny(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn sign(&self) -> Sign {
        if <Rat as Zero>::is_zero(self) {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if <Rat as Zero>::is_zero(self) {
            return Some(<Rat as Zero>::zero());
        }
        let nr = self.numer().sqrt();
        let dr = self.denom().sqrt();
        if &(&nr * &nr) == self.numer() && &(&dr * &dr) == self.denom() {
            Some(Rat::new(nr, dr))
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self) -> Sign {
        if *self > 0.0 {
            Sign::Positive
        } else if *self < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rat(&self) -> Option<Rat> {
        None
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
    fn is_tiny(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

/// Convenience constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Convenience constructor for integers.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, integer, or decimal literals into an exact rational.
///
/// Decimals expand digit-by-digit (`0.25` -> 25/100); they never round-trip
/// through floating point, so boundary classifications downstream see exact
/// zeros.
pub fn rat_from_str(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let invalid = || ParseRatError::Invalid(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let numer: BigInt = p.trim().parse().map_err(|_| invalid())?;
        let denom: BigInt = q.trim().parse().map_err(|_| invalid())?;
        if denom.is_zero() {
            return Err(ParseRatError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rat::new(numer, denom));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(invalid());
        }
        let mut digits = String::with_capacity(int_digits.len() + frac_part.len());
        digits.push_str(int_digits);
        digits.push_str(frac_part);
        if digits.is_empty() {
            return Err(invalid());
        }
        let numer: BigInt = digits.parse().map_err(|_| invalid())?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rat::new(BigInt::from(sign) * numer, denom));
    }
    let n: BigInt = s.parse().map_err(|_| invalid())?;
    Ok(Rat::from_integer(n))
}

/// Element of Q(sqrt 3), stored as `a + b*sqrt(3)` with rational `a`, `b`.
///
/// This is an ordered field under the real embedding with sqrt(3) > 0, so
/// every sign test stays exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Sqrt3 {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt3 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Sqrt3 { a, b }
    }
    pub fn from_rat(a: Rat) -> Self {
        Sqrt3 {
            a,
            b: <Rat as Zero>::zero(),
        }
    }
    /// sqrt(3) itself.
    pub fn root3() -> Self {
        Sqrt3 {
            a: <Rat as Zero>::zero(),
            b: <Rat as One>::one(),
        }
    }
    pub fn conj(&self) -> Self {
        Sqrt3 {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }
    /// Field norm a^2 - 3 b^2 (product with the conjugate).
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rint(3) * &self.b * &self.b
    }
    pub fn is_rational(&self) -> bool {
        <Rat as Zero>::is_zero(&self.b)
    }
}

impl fmt::Display for Sqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if <Rat as Zero>::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if <Rat as Zero>::is_zero(&self.a) {
            write!(f, "{}*r3", self.b)
        } else {
            write!(f, "{}+{}*r3", self.a, self.b)
        }
    }
}

impl Add for Sqrt3 {
    type Output = Sqrt3;
    fn add(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3 {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for Sqrt3 {
    type Output = Sqrt3;
    fn sub(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3 {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Mul for Sqrt3 {
    type Output = Sqrt3;
    fn mul(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3 {
            a: &self.a * &rhs.a + rint(3) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for Sqrt3 {
    type Output = Sqrt3;
    fn div(self, rhs: Sqrt3) -> Sqrt3 {
        let n = rhs.norm();
        assert!(!<Rat as Zero>::is_zero(&n), "division by zero in Q(sqrt 3)");
        let c = rhs.conj();
        let prod = self * c;
        Sqrt3 {
            a: prod.a / &n,
            b: prod.b / &n,
        }
    }
}

impl Neg for Sqrt3 {
    type Output = Sqrt3;
    fn neg(self) -> Sqrt3 {
        Sqrt3 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Scalar for Sqrt3 {
    fn zero() -> Self {
        Sqrt3::from_rat(<Rat as Zero>::zero())
    }
    fn one() -> Self {
        Sqrt3::from_rat(<Rat as One>::one())
    }
    fn from_int(n: i64) -> Self {
        Sqrt3::from_rat(rint(n))
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(&self.a) && <Rat as Zero>::is_zero(&self.b)
    }
    fn sign(&self) -> Sign {
        // sign(a + b*sqrt3) via the signs of a, b and of a^2 - 3 b^2.
        let sa = Scalar::sign(&self.a);
        let sb = Scalar::sign(&self.b);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (Sign::Positive, Sign::Positive) => Sign::Positive,
            (Sign::Negative, Sign::Negative) => Sign::Negative,
            _ => {
                // a and b have opposite signs; compare |a| with |b|*sqrt(3).
                match Scalar::sign(&self.norm()) {
                    Sign::Zero => Sign::Zero, // impossible: sqrt3 irrational
                    Sign::Positive => sa,
                    Sign::Negative => sb,
                }
            }
        }
    }
    fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.a) + Scalar::to_f64(&self.b) * 3f64.sqrt()
    }
    fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.a.clone())
        } else {
            None
        }
    }
    fn sqrt_exact(&self) -> Option<Self> {
        // Solve (x + y*sqrt3)^2 = a + b*sqrt3.
        if self.sign() == Sign::Negative {
            return None;
        }
        if <Rat as Zero>::is_zero(&self.b) {
            if let Some(x) = self.a.sqrt_exact() {
                return Some(Sqrt3::from_rat(x));
            }
            // a = 3 y^2 gives sqrt = y*sqrt3.
            if let Some(y) = (&self.a / rint(3)).sqrt_exact() {
                return Some(Sqrt3::new(<Rat as Zero>::zero(), y));
            }
            return None;
        }
        // x^2 + 3 y^2 = a, 2 x y = b  =>  x^2 is a root of u^2 - a u + 3 b^2/4.
        let disc = &self.a * &self.a - rint(3) * &self.b * &self.b;
        let root = disc.sqrt_exact()?;
        for u in [(&self.a + &root) / rint(2), (&self.a - &root) / rint(2)] {
            if u.is_negative() {
                continue;
            }
            if let Some(x) = u.sqrt_exact() {
                if !<Rat as Zero>::is_zero(&x) {
                    let y = &self.b / (rint(2) * &x);
                    let cand = Sqrt3::new(x, y);
                    if cand.clone() * cand.clone() == *self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(rat_from_str("3/4").unwrap(), rat(3, 4));
        assert_eq!(rat_from_str("-7").unwrap(), rint(-7));
        assert_eq!(rat_from_str("0.25").unwrap(), rat(1, 4));
        assert_eq!(rat_from_str("-0.05").unwrap(), rat(-1, 20));
        assert_eq!(rat_from_str("2.").unwrap(), rint(2));
        assert!(matches!(
            rat_from_str("1/0"),
            Err(ParseRatError::ZeroDenominator(_))
        ));
        assert!(rat_from_str("abc").is_err());
        assert!(rat_from_str("").is_err());
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(rat(9, 4).sqrt_exact(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt_exact(), None);
        assert_eq!(rat(-1, 1).sqrt_exact(), None);
        assert_eq!(rint(0).sqrt_exact(), Some(rint(0)));
    }

    #[test]
    fn sqrt3_field_ops() {
        let r3 = Sqrt3::root3();
        assert_eq!(r3.clone() * r3.clone(), Sqrt3::from_int(3));
        let x = Sqrt3::new(rat(1, 2), rat(-2, 3));
        let inv = Sqrt3::one() / x.clone();
        assert_eq!(x * inv, Sqrt3::one());
    }

    #[test]
    fn sqrt3_sign() {
        // 2 - sqrt3 > 0, 1 - sqrt3 < 0.
        assert_eq!(Sqrt3::new(rint(2), rint(-1)).sign(), Sign::Positive);
        assert_eq!(Sqrt3::new(rint(1), rint(-1)).sign(), Sign::Negative);
        assert_eq!(Sqrt3::new(rint(-5), rint(3)).sign(), Sign::Positive);
        assert_eq!(Sqrt3::zero().sign(), Sign::Zero);
    }

    #[test]
    fn sqrt3_sqrt() {
        // (1 + sqrt3)^2 = 4 + 2 sqrt3.
        let sq = Sqrt3::new(rint(4), rint(2));
        assert_eq!(sq.sqrt_exact(), Some(Sqrt3::new(rint(1), rint(1))));
        assert_eq!(Sqrt3::from_int(3).sqrt_exact(), Some(Sqrt3::root3()));
        assert_eq!(Sqrt3::from_int(2).sqrt_exact(), None);
    }
}
