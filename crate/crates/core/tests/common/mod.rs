//! Shared helpers for the integration and acceptance suites: deterministic
//! random rational data, family generators for every decision regime, and
//! an independent common-eigenvector oracle over quadratic extensions.

#![allow(dead_code)]

use rand_core::{RngCore, SeedableRng};

use planecvx::mat2::Mat2;
use planecvx::scalar::{rat, rint, Rat, Scalar, Sign};

pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Uniform integer in [lo, hi].
pub fn int_in(rng: &mut Rng, lo: i64, hi: i64) -> i64 {
    lo + (rng.next_u64() % ((hi - lo + 1) as u64)) as i64
}

/// Random rational with numerator in [-num, num] and denominator in
/// [1, den].
pub fn rat_in(rng: &mut Rng, num: i64, den: i64) -> Rat {
    rat(int_in(rng, -num, num), int_in(rng, 1, den))
}

pub fn mat_in(rng: &mut Rng, num: i64, den: i64) -> Mat2<Rat> {
    Mat2::new(
        rat_in(rng, num, den),
        rat_in(rng, num, den),
        rat_in(rng, num, den),
        rat_in(rng, num, den),
    )
}

/// Random invertible rational matrix with small entries.
pub fn invertible_mat(rng: &mut Rng, num: i64, den: i64) -> Mat2<Rat> {
    loop {
        let t = mat_in(rng, num, den);
        if !t.det().is_zero() {
            return t;
        }
    }
}

/// Random totally-real matrix (excludes eigenvalues +-i).
pub fn totally_real_mat(rng: &mut Rng, num: i64, den: i64) -> Mat2<Rat> {
    loop {
        let a = mat_in(rng, num, den);
        if a.is_totally_real() {
            return a;
        }
    }
}

/// Random rotation-form matrix [[s, -t], [t, s]] with t != 0 and without
/// the eigenvalues +-i.
pub fn rotation_mat(rng: &mut Rng, num: i64, den: i64) -> Mat2<Rat> {
    loop {
        let s = rat_in(rng, num, den);
        let t = rat_in(rng, num, den);
        if t.is_zero() {
            continue;
        }
        let m = Mat2::rotation_form(s, t);
        if m.is_totally_real() {
            return m;
        }
    }
}

/// Random upper-triangular matrix.
pub fn upper_mat(rng: &mut Rng, num: i64, den: i64) -> Mat2<Rat> {
    Mat2::new(
        rat_in(rng, num, den),
        rat_in(rng, num, den),
        rint(0),
        rat_in(rng, num, den),
    )
}

pub fn conjugate_all(mats: &[Mat2<Rat>], t: &Mat2<Rat>) -> Vec<Mat2<Rat>> {
    let ti = t.inverse().expect("invertible conjugator");
    mats.iter().map(|m| t.mul(m).mul(&ti)).collect()
}

/// Element of Q(sqrt d) for a fixed nonnegative rational d, used by the
/// brute-force eigenvector oracle. Panics on mixed-field arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        QuadExt { a, b, d }
    }
    pub fn from_rat(a: Rat, d: &Rat) -> Self {
        QuadExt {
            a,
            b: rint(0),
            d: d.clone(),
        }
    }
    pub fn root(d: &Rat) -> Self {
        QuadExt {
            a: rint(0),
            b: rint(1),
            d: d.clone(),
        }
    }
    pub fn is_zero(&self) -> bool {
        // If d is an exact square the representation is not unique, but
        // callers only build roots of non-square discriminants.
        self.a.is_zero() && self.b.is_zero()
    }
    fn same(&self, other: &QuadExt) {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
    }
    pub fn add(&self, o: &QuadExt) -> QuadExt {
        self.same(o);
        QuadExt::new(&self.a + &o.a, &self.b + &o.b, self.d.clone())
    }
    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        self.same(o);
        QuadExt::new(&self.a - &o.a, &self.b - &o.b, self.d.clone())
    }
    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        self.same(o);
        QuadExt::new(
            &self.a * &o.a + &self.d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
            self.d.clone(),
        )
    }
}

/// Exact brute-force test for a common real eigenvector of a 2x2 family:
/// enumerate the (at most two) eigendirections of the first non-scalar
/// member and check them against every member, working in Q when the
/// discriminant is a perfect square and in Q(sqrt disc) otherwise (where
/// the representation a + b sqrt(d) is unique). This is the independent
/// oracle for simultaneous real triangularizability.
pub fn common_real_eigenvector_exists(mats: &[Mat2<Rat>]) -> bool {
    let Some(pilot) = mats.iter().find(|m| !m.is_scalar()) else {
        return true; // all scalar
    };
    let spec = pilot.spectrum();
    if spec.disc.sign() == Sign::Negative {
        return false; // no real eigenvector at all
    }
    let half = rat(1, 2);
    if let Some(r) = spec.disc.sqrt_exact() {
        // Rational eigenvalues and rational candidate directions.
        let mut candidates: Vec<[Rat; 2]> = Vec::new();
        for lambda in [
            (&spec.trace + &r) * &half,
            (&spec.trace - &r) * &half,
        ] {
            let b = &pilot.e[0][1];
            let c = &pilot.e[1][0];
            let dir: [Rat; 2] = if !b.is_zero() {
                [b.clone(), &lambda - &pilot.e[0][0]]
            } else if !c.is_zero() {
                [&lambda - &pilot.e[1][1], c.clone()]
            } else if (&lambda - &pilot.e[0][0]).is_zero() {
                [rint(1), rint(0)]
            } else {
                [rint(0), rint(1)]
            };
            if !(dir[0].is_zero() && dir[1].is_zero()) {
                candidates.push(dir);
            }
        }
        'rat_cand: for v in &candidates {
            for m in mats {
                let mv = [
                    &m.e[0][0] * &v[0] + &m.e[0][1] * &v[1],
                    &m.e[1][0] * &v[0] + &m.e[1][1] * &v[1],
                ];
                if !(&mv[0] * &v[1] - &mv[1] * &v[0]).is_zero() {
                    continue 'rat_cand;
                }
            }
            return true;
        }
        return false;
    }
    // Irrational eigenvalues: disc is not a square, so a + b sqrt(d) = 0
    // iff a = b = 0, and exact zero tests are faithful. The off-diagonals
    // cannot both vanish here (that would make disc a square).
    let d = spec.disc.clone();
    let lift = |x: &Rat| QuadExt::from_rat(x.clone(), &d);
    let mut candidates: Vec<[QuadExt; 2]> = Vec::new();
    for sign in [1i64, -1] {
        let lambda = QuadExt::new(&spec.trace * &half, &half * rint(sign), d.clone());
        let b = &pilot.e[0][1];
        let c = &pilot.e[1][0];
        let dir = if !b.is_zero() {
            [lift(b), lambda.sub(&lift(&pilot.e[0][0]))]
        } else {
            [lambda.sub(&lift(&pilot.e[1][1])), lift(c)]
        };
        candidates.push(dir);
    }
    'cand: for v in &candidates {
        for m in mats {
            // cross(M v, v) must vanish exactly.
            let mv = [
                lift(&m.e[0][0]).mul(&v[0]).add(&lift(&m.e[0][1]).mul(&v[1])),
                lift(&m.e[1][0]).mul(&v[0]).add(&lift(&m.e[1][1]).mul(&v[1])),
            ];
            let cross = mv[0].mul(&v[1]).sub(&mv[1].mul(&v[0]));
            if !cross.is_zero() {
                continue 'cand;
            }
        }
        return true;
    }
    false
}

/// Double-precision eigenvalue classification used as the floating-point
/// side of the exactness cross-checks.
pub fn f64_has_large_imaginary_eigenvalue(a: &Mat2<Rat>) -> bool {
    let m = a.to_f64();
    let tr = m.e[0][0] + m.e[1][1];
    let det = m.e[0][0] * m.e[1][1] - m.e[0][1] * m.e[1][0];
    let disc = tr * tr - 4.0 * det;
    // Purely imaginary eigenvalues of modulus > 1 require a conjugate
    // pair with zero real part and |lambda|^2 = det > 1.
    disc < 0.0 && tr == 0.0 && det > 1.0
}

/// Generators for the decision regimes; every generator returns a family
/// plus the rule its verdict is expected to carry when it fires.
pub mod families {
    use super::*;
    use planecvx::planes::WeinstockFamily;

    /// Simultaneously triangularizable family with real spectra.
    pub fn triangular(rng: &mut Rng, size: usize) -> WeinstockFamily<Rat> {
        let t = invertible_mat(rng, 3, 2);
        let mats: Vec<_> = (0..size)
            .map(|_| loop {
                let u = upper_mat(rng, 3, 2);
                if u.is_totally_real() {
                    break u;
                }
            })
            .collect();
        WeinstockFamily::new(conjugate_all(&mats, &t))
    }

    /// Commuting rotation-form family in a common random basis.
    pub fn rotation(rng: &mut Rng, size: usize) -> WeinstockFamily<Rat> {
        let t = invertible_mat(rng, 3, 2);
        let mats: Vec<_> = (0..size).map(|_| rotation_mat(rng, 3, 2)).collect();
        WeinstockFamily::new(conjugate_all(&mats, &t))
    }

    /// Two-plane instance satisfying the all-positive sign rule.
    pub fn positive_signs(rng: &mut Rng) -> WeinstockFamily<Rat> {
        loop {
            let l1 = rat_in(rng, 3, 2);
            let l2 = rat_in(rng, 3, 2);
            if (l1.clone() - l2.clone()).is_zero()
                || (l1.clone() * l2.clone()).sign() != Sign::Positive
            {
                continue;
            }
            let s21 = rat_in(rng, 3, 2);
            let s22 = rat_in(rng, 3, 2);
            let t2 = rat_in(rng, 2, 2);
            if t2.is_zero() {
                continue;
            }
            let prod = s21.clone() * s22.clone() - t2.clone() * t2.clone();
            if prod.sign() != Sign::Positive {
                continue;
            }
            let a1 = Mat2::diag(l1, l2);
            let a2 = Mat2::new(s21, t2.clone(), t2, s22);
            if !a1.is_totally_real()
                || !a2.is_totally_real()
                || a1.sub(&a2).det().is_zero()
            {
                continue;
            }
            let t = invertible_mat(rng, 2, 2);
            return WeinstockFamily::new(conjugate_all(&[a1, a2], &t));
        }
    }

    /// Two-plane instance satisfying the all-negative sign rule.
    pub fn negative_signs(rng: &mut Rng) -> WeinstockFamily<Rat> {
        loop {
            let l1 = rat_in(rng, 3, 2);
            let l2 = rat_in(rng, 3, 2);
            if (l1.clone() * l2.clone()).sign() != Sign::Negative {
                continue;
            }
            let s21 = rat_in(rng, 3, 2);
            let s22 = rat_in(rng, 3, 2);
            let t2 = rat_in(rng, 2, 2);
            if t2.is_zero() {
                continue;
            }
            let bound = -(t2.clone() * t2.clone());
            if !((s21.clone() * s22.clone() - bound).sign() == Sign::Negative) {
                continue;
            }
            let a1 = Mat2::diag(l1, l2);
            let a2 = Mat2::new(s21, -t2.clone(), t2, s22);
            if !a1.is_totally_real()
                || !a2.is_totally_real()
                || a1.sub(&a2).det().is_zero()
            {
                continue;
            }
            let t = invertible_mat(rng, 2, 2);
            return WeinstockFamily::new(conjugate_all(&[a1, a2], &t));
        }
    }

    /// Two-plane instance in the non-real open-condition regime.
    pub fn rotation_open(rng: &mut Rng) -> WeinstockFamily<Rat> {
        loop {
            let s1 = rat_in(rng, 3, 2);
            let t1 = rat_in(rng, 3, 2);
            if s1.is_zero() || t1.is_zero() {
                continue;
            }
            let a1 = Mat2::rotation_form(s1, t1);
            let s21 = rat_in(rng, 3, 2);
            let s22 = rat_in(rng, 3, 2);
            let t2 = rat_in(rng, 2, 2);
            if (s21.clone() * s22.clone()).sign() != Sign::Positive
                || (s21.clone() - s22.clone()).is_zero()
            {
                continue;
            }
            let a2 = Mat2::new(s21, -t2.clone(), t2, s22);
            if !a1.is_totally_real()
                || !a2.is_totally_real()
                || a1.sub(&a2).det().is_zero()
            {
                continue;
            }
            let t = invertible_mat(rng, 2, 2);
            return WeinstockFamily::new(conjugate_all(&[a1, a2], &t));
        }
    }

    /// Two-plane instance in the mixed-shape open-condition regime:
    /// det[A1, A2] < 0 with both open quantities positive.
    pub fn mixed_open(rng: &mut Rng) -> WeinstockFamily<Rat> {
        loop {
            let l1 = rat_in(rng, 3, 2);
            let l2 = rat_in(rng, 3, 2);
            if (l1.clone() - l2.clone()).is_zero()
                || (l1.clone() * l2.clone()).sign() != Sign::Positive
            {
                continue;
            }
            let s21 = rat_in(rng, 3, 2);
            let s22 = rat_in(rng, 3, 2);
            let t2 = rat_in(rng, 2, 2);
            if t2.is_zero() || (s21.clone() * s22.clone()).sign() != Sign::Positive {
                continue;
            }
            let a1 = Mat2::diag(l1, l2);
            let a2 = Mat2::new(s21, -t2.clone(), t2, s22);
            if !a1.is_totally_real()
                || !a2.is_totally_real()
                || a1.sub(&a2).det().is_zero()
            {
                continue;
            }
            let t = invertible_mat(rng, 2, 2);
            return WeinstockFamily::new(conjugate_all(&[a1, a2], &t));
        }
    }
}
