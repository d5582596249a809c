//! Plane representations, validity and transversality checks, and the
//! reduction of a raw plane collection to normal form: the base plane
//! becomes R^2 and every other plane becomes M(A) = (A + iI)R^2 for a real
//! 2x2 matrix A.

use thiserror::Error;

use crate::complex::{CMat2, Cplx};
use crate::mat2::Mat2;
use crate::scalar::Scalar;

/// A real 2-plane in C^2 given by two spanning vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneSpan<F: Scalar> {
    pub v1: [Cplx<F>; 2],
    pub v2: [Cplx<F>; 2],
}

impl<F: Scalar> PlaneSpan<F> {
    pub fn new(v1: [Cplx<F>; 2], v2: [Cplx<F>; 2]) -> Self {
        PlaneSpan { v1, v2 }
    }

    /// Standard R^2 = span{(1,0), (0,1)}.
    pub fn base() -> Self {
        PlaneSpan {
            v1: [Cplx::one(), Cplx::zero()],
            v2: [Cplx::zero(), Cplx::one()],
        }
    }

    /// Span of the columns of A + iI.
    pub fn from_matrix(a: &Mat2<F>) -> Self {
        let m = a.plus_i_identity();
        PlaneSpan {
            v1: [m.e[0][0].clone(), m.e[1][0].clone()],
            v2: [m.e[0][1].clone(), m.e[1][1].clone()],
        }
    }

    /// Spanning vectors as a complex 2x2 matrix, columns v1, v2.
    pub fn span_matrix(&self) -> CMat2<F> {
        CMat2::from_cols(self.v1.clone(), self.v2.clone())
    }

    /// The point x*v1 + y*v2 in R^4 coordinates (re z, im z, re w, im w).
    pub fn point_f64(&self, x: f64, y: f64) -> [f64; 4] {
        let (a1, b1) = self.v1[0].to_f64();
        let (c1, d1) = self.v1[1].to_f64();
        let (a2, b2) = self.v2[0].to_f64();
        let (c2, d2) = self.v2[1].to_f64();
        [
            a1 * x + a2 * y,
            b1 * x + b2 * y,
            c1 * x + c2 * y,
            d1 * x + d2 * y,
        ]
    }
}

/// The plane { (z, a z + b conj(z)) : z in C }.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPlane<F: Scalar> {
    pub a: Cplx<F>,
    pub b: Cplx<F>,
}

impl<F: Scalar> GraphPlane<F> {
    pub fn new(a: Cplx<F>, b: Cplx<F>) -> Self {
        GraphPlane { a, b }
    }
}

/// A plane family in normal form: base plane R^2 plus matrices A_1..A_N.
#[derive(Debug, Clone, PartialEq)]
pub struct WeinstockFamily<F: Scalar> {
    pub matrices: Vec<Mat2<F>>,
    /// The C-linear change of coordinates that produced this form, when the
    /// family was extracted from raw spans.
    pub provenance: Option<CMat2<F>>,
}

impl<F: Scalar> WeinstockFamily<F> {
    pub fn new(matrices: Vec<Mat2<F>>) -> Self {
        WeinstockFamily {
            matrices,
            provenance: None,
        }
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("plane {0} is not totally real (its spanning vectors are C-dependent)")]
    NotTotallyReal(usize),
    #[error("plane {0} meets the base plane in a line or worse")]
    NotTransverseToBase(usize),
    #[error("conjugating matrix is singular")]
    SingularT,
    #[error("base index {0} out of range")]
    BadBaseIndex(usize),
}

/// True iff the span is a totally-real plane: the spanning vectors are
/// linearly independent over C. A zero determinant means the span is either
/// degenerate or a complex line.
pub fn is_totally_real_span<F: Scalar>(p: &PlaneSpan<F>) -> bool {
    !p.span_matrix().det().is_zero()
}

/// True iff M(A) and M(B) meet only at the origin, i.e. det(A - B) != 0.
pub fn transversal<F: Scalar>(a: &Mat2<F>, b: &Mat2<F>) -> bool {
    !a.sub(b).det().is_zero()
}

/// Extracts the normal form of a plane collection with designated base.
///
/// The C-linear map sending the base spanning vectors to e1, e2 carries
/// plane j onto (A_j + iI)R^2 with A_j = Re(W) Im(W)^-1, where W is the
/// mapped spanning matrix of plane j.
pub fn to_weinstock_form<F: Scalar>(
    planes: &[PlaneSpan<F>],
    base_index: usize,
) -> Result<WeinstockFamily<F>, PlaneError> {
    let base = planes.get(base_index).ok_or(PlaneError::BadBaseIndex(base_index))?;
    if !is_totally_real_span(base) {
        return Err(PlaneError::NotTotallyReal(base_index));
    }
    let change = base
        .span_matrix()
        .inv()
        .expect("nonzero determinant implies invertible");
    let mut matrices = Vec::with_capacity(planes.len().saturating_sub(1));
    for (j, plane) in planes.iter().enumerate() {
        if j == base_index {
            continue;
        }
        if !is_totally_real_span(plane) {
            return Err(PlaneError::NotTotallyReal(j));
        }
        let w = change.mul_mat(&plane.span_matrix());
        let im = Mat2::from_rows(w.im_parts());
        let im_inv = im.inverse().ok_or(PlaneError::NotTransverseToBase(j))?;
        let a = Mat2::from_rows(w.re_parts()).mul(&im_inv);
        matrices.push(a);
    }
    Ok(WeinstockFamily {
        matrices,
        provenance: Some(change),
    })
}

/// Conjugates every family matrix by a real invertible T (A -> T A T^-1).
/// Every verdict downstream is invariant under this map.
pub fn apply_real_conjugation<F: Scalar>(
    f: &WeinstockFamily<F>,
    t: &Mat2<F>,
) -> Result<WeinstockFamily<F>, PlaneError> {
    let t_inv = t.inverse().ok_or(PlaneError::SingularT)?;
    let matrices = f
        .matrices
        .iter()
        .map(|a| t.mul(a).mul(&t_inv))
        .collect();
    Ok(WeinstockFamily {
        matrices,
        provenance: f.provenance.clone(),
    })
}

/// Spanning vectors of a graph plane: the images of z = 1 and z = i.
pub fn graph_to_span<F: Scalar>(g: &GraphPlane<F>) -> PlaneSpan<F> {
    let v1 = [Cplx::one(), g.a.clone() + g.b.clone()];
    let v2 = [
        Cplx::i(),
        Cplx::i() * (g.a.clone() - g.b.clone()),
    ];
    PlaneSpan::new(v1, v2)
}

/// Exact rank of the real span of a list of C^2 vectors, viewed in R^4.
/// Used to compare planes as subspaces without angle tolerances.
pub fn real_rank<F: Scalar>(vectors: &[[Cplx<F>; 2]]) -> usize {
    let mut rows: Vec<[F; 4]> = vectors
        .iter()
        .map(|v| {
            [
                v[0].re.clone(),
                v[0].im.clone(),
                v[1].re.clone(),
                v[1].im.clone(),
            ]
        })
        .collect();
    let mut rank = 0;
    for col in 0..4 {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = F::one() / rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone() * inv.clone();
                for c in col..4 {
                    rows[r][c] =
                        rows[r][c].clone() - factor.clone() * rows[rank][c].clone();
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact subspace equality of two planes given by spans.
pub fn same_plane<F: Scalar>(p: &PlaneSpan<F>, q: &PlaneSpan<F>) -> bool {
    let stacked = [
        p.v1.clone(),
        p.v2.clone(),
        q.v1.clone(),
        q.v2.clone(),
    ];
    real_rank(&stacked) == 2
        && real_rank(&[p.v1.clone(), p.v2.clone()]) == 2
        && real_rank(&[q.v1.clone(), q.v2.clone()]) == 2
}
