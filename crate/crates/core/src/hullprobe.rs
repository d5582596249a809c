//! Numerical hull probe: decide whether a query point can be separated
//! from a sampled plane union by a polynomial of bounded degree.
//!
//! The probe minimizes the maximum of Re(e^{-i theta_k} p(s)) over all
//! samples s and polygon angles theta_k, subject to p(q) = 1; the polygon
//! with m sides overestimates |p(s)| up to the factor cos(pi/m), which the
//! margin absorbs. A point is reported separated when the optimum stays
//! below 1 - margin; the converse direction is evidence only and is never
//! reported as a hull membership proof.

use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lp::{solve, LpColumns, LpStatus};
use crate::planes::{PlaneSpan, WeinstockFamily};
use crate::scalar::Scalar;

/// Deterministic samples of the plane union inside a closed ball.
#[derive(Debug, Clone)]
pub struct SampleCloud {
    /// Points in R^4 coordinates (re z, im z, re w, im w).
    pub points: Vec<[f64; 4]>,
    /// Index of the plane each point lies on (0 = base).
    pub plane_of: Vec<usize>,
    pub per_plane_counts: Vec<usize>,
    pub radius: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SeparationStatus {
    Separated,
    NotSeparated,
    Infeasible,
}

/// Outcome of one separation solve.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeparationResult {
    pub t_star: f64,
    /// Complex coefficients over the monomial basis z^a w^b, a + b <= degree.
    pub coefficients: Vec<(f64, f64)>,
    pub degree: usize,
    pub polygon_sides: usize,
    pub status: SeparationStatus,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HullProbeError {
    #[error("invalid probe parameters: {0}")]
    Precondition(String),
    #[error("LP numerical failure: {0}")]
    LpNumericalFailure(String),
}

/// Orthonormal basis of the plane in R^4, so disc parameters map
/// isometrically into the ball.
fn orthonormal_basis(span: &PlaneSpan<f64>) -> [[f64; 4]; 2] {
    let v1 = span.point_f64(1.0, 0.0);
    let v2 = span.point_f64(0.0, 1.0);
    let n1 = (v1.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let e1: [f64; 4] = std::array::from_fn(|i| v1[i] / n1);
    let d: f64 = (0..4).map(|i| e1[i] * v2[i]).sum();
    let mut u2: [f64; 4] = std::array::from_fn(|i| v2[i] - d * e1[i]);
    let n2 = (u2.iter().map(|x| x * x).sum::<f64>()).sqrt();
    for x in &mut u2 {
        *x /= n2;
    }
    [e1, u2]
}

fn spans_of<F: Scalar>(f: &WeinstockFamily<F>) -> Vec<PlaneSpan<f64>> {
    let mut spans = vec![PlaneSpan::<f64>::base()];
    for a in &f.matrices {
        spans.push(PlaneSpan::from_matrix(&a.to_f64()));
    }
    spans
}

/// Samples every plane of the family: the origin, uniformly drawn disc
/// points, and a boundary ring, all inside the closed ball of the given
/// radius. Deterministic in the seed.
pub fn sample_planes<F: Scalar>(
    f: &WeinstockFamily<F>,
    radius: f64,
    n_per_plane: usize,
    seed: u64,
) -> SampleCloud {
    assert!(radius > 0.0 && n_per_plane >= 1);
    let spans = spans_of(f);
    let mut points = Vec::new();
    let mut plane_of = Vec::new();
    let mut per_plane_counts = Vec::new();
    let n_ring = (n_per_plane / 8).clamp(16, 64);
    for (p, span) in spans.iter().enumerate() {
        let basis = orthonormal_basis(span);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
            seed ^ (p as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        let push = |x: f64, y: f64, points: &mut Vec<[f64; 4]>| {
            let mut pt = [0.0; 4];
            for i in 0..4 {
                pt[i] = basis[0][i] * x + basis[1][i] * y;
            }
            let norm = pt.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > radius {
                for v in &mut pt {
                    *v *= radius / norm;
                }
            }
            points.push(pt);
        };
        let start = points.len();
        points.push([0.0; 4]);
        for _ in 0..n_per_plane {
            let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
            let th = 2.0 * std::f64::consts::PI * ((rng.next_u64() >> 11) as f64
                / (1u64 << 53) as f64);
            let r = radius * u.sqrt();
            push(r * th.cos(), r * th.sin(), &mut points);
        }
        for k in 0..n_ring {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n_ring as f64);
            push(radius * th.cos(), radius * th.sin(), &mut points);
        }
        let count = points.len() - start;
        plane_of.extend(std::iter::repeat_n(p, count));
        per_plane_counts.push(count);
    }
    SampleCloud {
        points,
        plane_of,
        per_plane_counts,
        radius,
        seed,
    }
}

/// Monomial exponent list for degree d: (a, b) with a + b <= d, ordered by
/// total degree then descending a.
pub fn monomial_basis(degree: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 0..=degree as u32 {
        for a in (0..=d).rev() {
            out.push((a, d - a));
        }
    }
    out
}

fn cplx_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cplx_pow(base: (f64, f64), e: u32) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    for _ in 0..e {
        acc = cplx_mul(acc, base);
    }
    acc
}

/// Values of all basis monomials at a point.
pub fn monomial_values(basis: &[(u32, u32)], pt: &[f64; 4]) -> Vec<(f64, f64)> {
    let z = (pt[0], pt[1]);
    let w = (pt[2], pt[3]);
    basis
        .iter()
        .map(|&(a, b)| cplx_mul(cplx_pow(z, a), cplx_pow(w, b)))
        .collect()
}

/// Evaluates a coefficient vector at a point.
pub fn evaluate_poly(
    basis: &[(u32, u32)],
    coeffs: &[(f64, f64)],
    pt: &[f64; 4],
) -> (f64, f64) {
    let vals = monomial_values(basis, pt);
    let mut acc = (0.0, 0.0);
    for (c, v) in coeffs.iter().zip(vals) {
        let prod = cplx_mul(*c, v);
        acc.0 += prod.0;
        acc.1 += prod.1;
    }
    acc
}

/// Reusable separation solver: the bulk of the LP matrix depends only on
/// the cloud, degree and polygon count, not on the query point.
pub struct SeparationOracle {
    basis: Vec<(u32, u32)>,
    polygon: usize,
    margin: f64,
    radius: f64,
    /// Inequality data: for sample i, the monomial values phi(s_i).
    sample_values: Vec<Vec<(f64, f64)>>,
    angles: Vec<(f64, f64)>, // (cos, sin) per polygon direction
}

impl SeparationOracle {
    pub fn new(
        cloud: &SampleCloud,
        degree: usize,
        polygon: usize,
        margin: f64,
    ) -> Result<Self, HullProbeError> {
        if degree < 1 {
            return Err(HullProbeError::Precondition("degree must be >= 1".into()));
        }
        if polygon < 8 || polygon % 2 != 0 {
            return Err(HullProbeError::Precondition(
                "polygon side count must be even and >= 8".into(),
            ));
        }
        if !(0.0..1.0).contains(&margin) {
            return Err(HullProbeError::Precondition(
                "margin must lie in [0, 1)".into(),
            ));
        }
        let basis = monomial_basis(degree);
        let sample_values = cloud
            .points
            .iter()
            .map(|pt| monomial_values(&basis, pt))
            .collect();
        let angles = (0..polygon)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * (k as f64) / (polygon as f64);
                (th.cos(), th.sin())
            })
            .collect();
        Ok(SeparationOracle {
            basis,
            polygon,
            margin,
            radius: cloud.radius,
            sample_values,
            angles,
        })
    }

    pub fn degree(&self) -> usize {
        self.basis.last().map(|&(a, b)| (a + b) as usize).unwrap_or(0)
    }

    pub fn basis(&self) -> &[(u32, u32)] {
        &self.basis
    }

    /// Max over samples and polygon angles of Re(e^{-i th} p(s)).
    fn polygonal_max(&self, coeffs: &[(f64, f64)]) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for vals in &self.sample_values {
            let mut acc = (0.0, 0.0);
            for (c, v) in coeffs.iter().zip(vals) {
                let prod = cplx_mul(*c, *v);
                acc.0 += prod.0;
                acc.1 += prod.1;
            }
            // max_k cos th_k * re + sin th_k * im; for even polygon counts
            // this is cos-distance to the nearest direction.
            for &(ck, sk) in &self.angles {
                let v = ck * acc.0 + sk * acc.1;
                if v > worst {
                    worst = v;
                }
            }
        }
        worst
    }

    /// Solves the separation program for one query point.
    pub fn separate(&self, q: [f64; 4]) -> Result<SeparationResult, HullProbeError> {
        let qnorm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if qnorm > 2.0 * self.radius {
            return Err(HullProbeError::Precondition(
                "query point farther than twice the sampling radius".into(),
            ));
        }
        let m = self.basis.len();
        let n_u = 2 * m; // re/im parts of the coefficients
        let rows = n_u + 1; // + the level variable t
        let qvals = monomial_values(&self.basis, &q);
        // Equality rows: Re p(q) = 1 and Im p(q) = 0.
        let mut eq1 = vec![0.0; rows];
        let mut eq2 = vec![0.0; rows];
        for (j, &(re, im)) in qvals.iter().enumerate() {
            eq1[2 * j] = re;
            eq1[2 * j + 1] = -im;
            eq2[2 * j] = im;
            eq2[2 * j + 1] = re;
        }
        // Dual of: min t s.t. G(u, t) <= 0, E u = (1, 0). The right-hand
        // side is -c_primal and the objective is max -(nu . (1, 0)).
        let mut b = vec![0.0; rows];
        b[n_u] = -1.0;
        let lp = SeparationColumns {
            oracle: self,
            eq1,
            eq2,
            b,
        };
        let sol = solve(&lp).map_err(|e| HullProbeError::LpNumericalFailure(e.to_string()))?;
        match sol.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => {
                // Dual infeasibility would mean an unbounded primal, which
                // the polygon constraints rule out.
                return Err(HullProbeError::LpNumericalFailure(
                    "dual separation program reported infeasible".into(),
                ));
            }
            LpStatus::Unbounded => {
                // Unbounded dual = infeasible primal: p(q) = 1 impossible.
                return Ok(SeparationResult {
                    t_star: f64::INFINITY,
                    coefficients: vec![(0.0, 0.0); m],
                    degree: self.degree(),
                    polygon_sides: self.polygon,
                    status: SeparationStatus::Infeasible,
                });
            }
        }
        // The duals of the dual program are the primal witnesses.
        let coeffs: Vec<(f64, f64)> = (0..m)
            .map(|j| (sol.duals[2 * j], sol.duals[2 * j + 1]))
            .collect();
        let pq = {
            let mut acc = (0.0, 0.0);
            for (c, v) in coeffs.iter().zip(&qvals) {
                let prod = cplx_mul(*c, *v);
                acc.0 += prod.0;
                acc.1 += prod.1;
            }
            acc
        };
        // Tolerances scale with the witness size: hard-to-separate points
        // produce large coefficients and correspondingly larger round-off.
        let coeff_scale: f64 = coeffs
            .iter()
            .zip(&qvals)
            .map(|(c, v)| (c.0.abs() + c.1.abs()) * (v.0.abs() + v.1.abs()))
            .sum::<f64>()
            .max(1.0);
        let tol = 1e-9 * coeff_scale + 1e-7;
        if (pq.0 - 1.0).abs() > tol || pq.1.abs() > tol {
            return Err(HullProbeError::LpNumericalFailure(format!(
                "witness normalization off: p(q) = {} + {} i",
                pq.0, pq.1
            )));
        }
        // Re-evaluate the level from the witness itself; the LP optimum
        // must agree (strong duality) up to round-off.
        let t_star = self.polygonal_max(&coeffs);
        let lp_t = -sol.objective;
        if (t_star - lp_t).abs() > tol * (1.0 + lp_t.abs()) {
            return Err(HullProbeError::LpNumericalFailure(format!(
                "recovered level {t_star} disagrees with LP optimum {lp_t}"
            )));
        }
        let status = if t_star < 1.0 - self.margin {
            SeparationStatus::Separated
        } else {
            SeparationStatus::NotSeparated
        };
        Ok(SeparationResult {
            t_star,
            coefficients: coeffs,
            degree: self.degree(),
            polygon_sides: self.polygon,
            status,
        })
    }
}

/// Column provider for the dual separation program. Column j < S*m is the
/// (sample, angle) pair (j / m, j % m); the four trailing columns are the
/// split equality multipliers. Pricing exploits that the m angle columns
/// of one sample share their monomial values: the most negative reduced
/// cost over the angles is attained at the polygon direction nearest to
/// atan2(Q, P), so each sample prices in O(coefficients) instead of
/// O(polygon * coefficients).
struct SeparationColumns<'a> {
    oracle: &'a SeparationOracle,
    eq1: Vec<f64>,
    eq2: Vec<f64>,
    b: Vec<f64>,
}

impl SeparationColumns<'_> {
    fn n_ineq(&self) -> usize {
        self.oracle.sample_values.len() * self.oracle.polygon
    }

    /// (P, Q) with dot(col_(i,k), y) = cos th_k P + sin th_k Q - y_t.
    fn sample_dots(&self, i: usize, y: &[f64]) -> (f64, f64) {
        let mut p = 0.0;
        let mut q = 0.0;
        for (j, &(re, im)) in self.oracle.sample_values[i].iter().enumerate() {
            let (ya, yb) = (y[2 * j], y[2 * j + 1]);
            p += re * ya - im * yb;
            q += im * ya + re * yb;
        }
        (p, q)
    }
}

impl LpColumns for SeparationColumns<'_> {
    fn rows(&self) -> usize {
        self.b.len()
    }
    fn cols(&self) -> usize {
        self.n_ineq() + 4
    }
    fn rhs(&self) -> &[f64] {
        &self.b
    }
    fn cost(&self, j: usize) -> f64 {
        match j.checked_sub(self.n_ineq()) {
            Some(0) => 1.0,
            Some(2) => -1.0,
            _ => 0.0,
        }
    }
    fn column_into(&self, j: usize, out: &mut [f64]) {
        let n_ineq = self.n_ineq();
        let n_u = self.rows() - 1;
        if j < n_ineq {
            let i = j / self.oracle.polygon;
            let (ck, sk) = self.oracle.angles[j % self.oracle.polygon];
            for (jj, &(re, im)) in self.oracle.sample_values[i].iter().enumerate() {
                out[2 * jj] = re * ck + im * sk;
                out[2 * jj + 1] = -im * ck + re * sk;
            }
            out[n_u] = -1.0;
        } else {
            let (vec, sign) = match j - n_ineq {
                0 => (&self.eq1, 1.0),
                1 => (&self.eq2, 1.0),
                2 => (&self.eq1, -1.0),
                _ => (&self.eq2, -1.0),
            };
            for (r, v) in vec.iter().enumerate() {
                out[r] = v * sign;
            }
        }
    }

    fn price(
        &self,
        y: &[f64],
        in_basis: &[bool],
        zero_costs: bool,
        tol: f64,
        bland: bool,
    ) -> Option<(usize, f64)> {
        let mm = self.oracle.polygon;
        let n_ineq = self.n_ineq();
        let y_t = y[self.rows() - 1];
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.oracle.sample_values.len() {
            let (p, q) = self.sample_dots(i, y);
            if bland {
                for k in 0..mm {
                    let j = i * mm + k;
                    if in_basis[j] {
                        continue;
                    }
                    let (ck, sk) = self.oracle.angles[k];
                    let rc = y_t - (ck * p + sk * q);
                    if rc < -tol {
                        return Some((j, rc));
                    }
                }
                continue;
            }
            // Nearest polygon direction to atan2(q, p) maximizes the dot.
            let phi = q.atan2(p).rem_euclid(2.0 * std::f64::consts::PI);
            let kf = phi * (mm as f64) / (2.0 * std::f64::consts::PI);
            let k = (kf.round() as usize) % mm;
            let j = i * mm + k;
            if in_basis[j] {
                // Rare: evaluate the remaining angles for this sample.
                for kk in 0..mm {
                    let jj = i * mm + kk;
                    if in_basis[jj] {
                        continue;
                    }
                    let (ck, sk) = self.oracle.angles[kk];
                    let rc = y_t - (ck * p + sk * q);
                    if rc < -tol {
                        match best {
                            Some((_, b)) if rc >= b => {}
                            _ => best = Some((jj, rc)),
                        }
                    }
                }
                continue;
            }
            let (ck, sk) = self.oracle.angles[k];
            // The nearest direction maximizes the dot, so if this reduced
            // cost clears the threshold no other angle of the sample does.
            let rc = y_t - (ck * p + sk * q);
            if rc < -tol {
                match best {
                    Some((_, b)) if rc >= b => {}
                    _ => best = Some((j, rc)),
                }
            }
        }
        // Equality multiplier columns.
        for off in 0..4 {
            let j = n_ineq + off;
            if in_basis[j] {
                continue;
            }
            let (vec, sign): (&Vec<f64>, f64) = match off {
                0 => (&self.eq1, 1.0),
                1 => (&self.eq2, 1.0),
                2 => (&self.eq1, -1.0),
                _ => (&self.eq2, -1.0),
            };
            let mut dot = 0.0;
            for (r, v) in vec.iter().enumerate() {
                dot += y[r] * v * sign;
            }
            let cj = if zero_costs { 0.0 } else { self.cost(j) };
            let rc = cj - dot;
            if rc < -tol {
                if bland {
                    return Some((j, rc));
                }
                match best {
                    Some((_, b)) if rc >= b => {}
                    _ => best = Some((j, rc)),
                }
            }
        }
        best
    }
}

/// One-shot convenience wrapper over [`SeparationOracle`].
pub fn separate_point(
    cloud: &SampleCloud,
    q: [f64; 4],
    degree: usize,
    polygon: usize,
    margin: f64,
) -> Result<SeparationResult, HullProbeError> {
    SeparationOracle::new(cloud, degree, polygon, margin)?.separate(q)
}

/// Which 2-parameter slice of C^2 the probe grid ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum GridSlice {
    /// (u, iv): real first coordinate, imaginary second.
    Axis,
    /// (zeta, i zeta) for complex zeta = u + iv: the complex line w = iz.
    ComplexLine,
}

impl GridSlice {
    pub fn point(&self, u: f64, v: f64) -> [f64; 4] {
        match self {
            GridSlice::Axis => [u, 0.0, 0.0, v],
            GridSlice::ComplexLine => [u, v, -v, u],
        }
    }
}

/// Probe grid specification: an n x n grid over a 2-parameter slice with
/// u, v ranging over [-extent, extent], keeping only points at distance at
/// least `min_plane_dist` from every plane of the family.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GridSpec {
    pub n: usize,
    pub extent: f64,
    pub min_plane_dist: f64,
    pub slice: GridSlice,
}

/// Exact Euclidean distance from a point to a plane through the origin.
pub fn distance_to_plane(span: &PlaneSpan<f64>, q: &[f64; 4]) -> f64 {
    let basis = orthonormal_basis(span);
    let norm_sq: f64 = q.iter().map(|v| v * v).sum();
    let p1: f64 = (0..4).map(|i| basis[0][i] * q[i]).sum();
    let p2: f64 = (0..4).map(|i| basis[1][i] * q[i]).sum();
    (norm_sq - p1 * p1 - p2 * p2).max(0.0).sqrt()
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbePointReport {
    pub point: [f64; 4],
    pub status: Option<SeparationStatus>,
    pub t_star: Option<f64>,
    pub coefficients: Option<Vec<(f64, f64)>>,
    /// For separated points: max |p| over a four-times denser resample;
    /// soundness holds when it stays below 1 - margin/2.
    pub soundness_max: Option<f64>,
    pub soundness_violation: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeReport {
    pub degree: usize,
    pub polygon_sides: usize,
    pub margin: f64,
    pub radius: f64,
    pub samples_per_plane: usize,
    pub seed: u64,
    pub grid: Option<GridSpec>,
    pub points: Vec<ProbePointReport>,
    pub attempted: usize,
    pub separated: usize,
    pub not_separated: usize,
    pub failed: usize,
    pub separated_fraction: f64,
    /// Separation is certified by the witness polynomial; no point is ever
    /// claimed to lie inside the hull.
    pub note: String,
}

/// Grid points for a spec, filtered by distance to the family's planes.
pub fn grid_points<F: Scalar>(f: &WeinstockFamily<F>, grid: &GridSpec) -> Vec<[f64; 4]> {
    let spans = spans_of(f);
    let mut out = Vec::new();
    for iu in 0..grid.n {
        for iv in 0..grid.n {
            let frac = |i: usize| {
                if grid.n == 1 {
                    0.0
                } else {
                    -1.0 + 2.0 * (i as f64) / ((grid.n - 1) as f64)
                }
            };
            let q = grid.slice.point(grid.extent * frac(iu), grid.extent * frac(iv));
            let dist = spans
                .iter()
                .map(|s| distance_to_plane(s, &q))
                .fold(f64::INFINITY, f64::min);
            if dist >= grid.min_plane_dist {
                out.push(q);
            }
        }
    }
    out
}

/// Runs the separation oracle over a set of probe points, with a
/// soundness re-check of every witness on a denser resample.
#[allow(clippy::too_many_arguments)]
pub fn probe_points<F: Scalar>(
    f: &WeinstockFamily<F>,
    points: &[[f64; 4]],
    radius: f64,
    samples_per_plane: usize,
    degree: usize,
    polygon: usize,
    margin: f64,
    seed: u64,
) -> Result<ProbeReport, HullProbeError> {
    let cloud = sample_planes(f, radius, samples_per_plane, seed);
    let oracle = SeparationOracle::new(&cloud, degree, polygon, margin)?;
    let dense = sample_planes(f, radius, samples_per_plane * 4, seed.wrapping_add(1));
    let basis = monomial_basis(degree);

    let reports: Vec<ProbePointReport> = points
        .par_iter()
        .map(|&q| match oracle.separate(q) {
            Ok(res) => {
                let (soundness_max, violation) =
                    if res.status == SeparationStatus::Separated {
                        let mut worst = 0.0f64;
                        for pt in &dense.points {
                            let v = evaluate_poly(&basis, &res.coefficients, pt);
                            worst = worst.max((v.0 * v.0 + v.1 * v.1).sqrt());
                        }
                        (Some(worst), worst >= 1.0 - margin / 2.0)
                    } else {
                        (None, false)
                    };
                ProbePointReport {
                    point: q,
                    status: Some(res.status),
                    t_star: Some(res.t_star),
                    coefficients: Some(res.coefficients),
                    soundness_max,
                    soundness_violation: violation,
                    error: None,
                }
            }
            Err(e) => ProbePointReport {
                point: q,
                status: None,
                t_star: None,
                coefficients: None,
                soundness_max: None,
                soundness_violation: false,
                error: Some(e.to_string()),
            },
        })
        .collect();

    let separated = reports
        .iter()
        .filter(|r| r.status == Some(SeparationStatus::Separated) && !r.soundness_violation)
        .count();
    let not_separated = reports
        .iter()
        .filter(|r| {
            r.status == Some(SeparationStatus::NotSeparated) || r.soundness_violation
        })
        .count();
    let failed = reports.iter().filter(|r| r.error.is_some()).count();
    let attempted = reports.len();
    Ok(ProbeReport {
        degree,
        polygon_sides: polygon,
        margin,
        radius,
        samples_per_plane,
        seed,
        grid: None,
        points: reports,
        attempted,
        separated,
        not_separated,
        failed,
        separated_fraction: if attempted == 0 {
            0.0
        } else {
            separated as f64 / attempted as f64
        },
        note: "not-separated is evidence, not a hull membership proof".into(),
    })
}

/// Grid-driven probe.
#[allow(clippy::too_many_arguments)]
pub fn probe_grid<F: Scalar>(
    f: &WeinstockFamily<F>,
    grid: &GridSpec,
    radius: f64,
    samples_per_plane: usize,
    degree: usize,
    polygon: usize,
    margin: f64,
    seed: u64,
) -> Result<ProbeReport, HullProbeError> {
    let pts = grid_points(f, grid);
    let mut report = probe_points(
        f,
        &pts,
        radius,
        samples_per_plane,
        degree,
        polygon,
        margin,
        seed,
    )?;
    report.grid = Some(*grid);
    Ok(report)
}
