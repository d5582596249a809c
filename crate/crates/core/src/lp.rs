//! A self-contained dense linear-programming solver: two-phase revised
//! simplex with an explicitly maintained basis inverse.
//!
//! Solves min c.x subject to A x = b, x >= 0. Problems provide their
//! columns through [`LpColumns`], so callers with structured constraint
//! matrices (the hull probe generates one column per sample/angle pair)
//! can supply a pricing routine that exploits the structure; [`DenseLp`]
//! is the plain dense implementation.

use thiserror::Error;

/// Column access for a standard-form problem min c.x, A x = b, x >= 0.
pub trait LpColumns: Sync {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn rhs(&self) -> &[f64];
    /// Phase-2 objective coefficient of column j.
    fn cost(&self, j: usize) -> f64;
    fn column_into(&self, j: usize, out: &mut [f64]);

    /// Returns the column with the most negative reduced cost
    /// rc_j = cost_j - y.a_j (cost_j = 0 for every column in phase one),
    /// or the first eligible column in index order under Bland's rule.
    /// Columns marked basic are skipped. The default scans densely.
    fn price(
        &self,
        y: &[f64],
        in_basis: &[bool],
        zero_costs: bool,
        tol: f64,
        bland: bool,
    ) -> Option<(usize, f64)> {
        let mut scratch = vec![0.0; self.rows()];
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.cols() {
            if in_basis[j] {
                continue;
            }
            self.column_into(j, &mut scratch);
            let mut dot = 0.0;
            for r in 0..self.rows() {
                dot += y[r] * scratch[r];
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

/// Dense standard-form problem, column-major constraint matrix.
#[derive(Debug, Clone)]
pub struct DenseLp {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl DenseLp {
    pub fn new(rows: usize, cols: usize) -> Self {
        DenseLp {
            rows,
            cols,
            data: vec![0.0; rows * cols],
            b: vec![0.0; rows],
            c: vec![0.0; cols],
        }
    }
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }
}

impl LpColumns for DenseLp {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn rhs(&self) -> &[f64] {
        &self.b
    }
    fn cost(&self, j: usize) -> f64 {
        self.c[j]
    }
    fn column_into(&self, j: usize, out: &mut [f64]) {
        out.copy_from_slice(self.col(j));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    /// Nonzero structural variables (index, value).
    pub x: Vec<(usize, f64)>,
    /// Row multipliers y with A^T y <= c at optimality.
    pub duals: Vec<f64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("simplex iteration limit reached")]
    IterationLimit,
    #[error("basis matrix is numerically singular")]
    SingularBasis,
}

const RCOST_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-7;
const REFACTOR_EVERY: usize = 128;
const STALL_LIMIT: usize = 256;

struct Simplex<'a, C: LpColumns> {
    lp: &'a C,
    rows: usize,
    /// Row scaling making the right-hand side nonnegative.
    row_sign: Vec<f64>,
    b_eff: Vec<f64>,
    /// Basis variable per row; indices >= lp.cols() are artificials.
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// Row-major basis inverse.
    binv: Vec<f64>,
    xb: Vec<f64>,
}

impl<'a, C: LpColumns> Simplex<'a, C> {
    fn new(lp: &'a C) -> Self {
        let rows = lp.rows();
        let row_sign: Vec<f64> = lp
            .rhs()
            .iter()
            .map(|&v| if v < 0.0 { -1.0 } else { 1.0 })
            .collect();
        let b_eff: Vec<f64> = lp
            .rhs()
            .iter()
            .zip(&row_sign)
            .map(|(&v, &s)| v * s)
            .collect();
        let basis: Vec<usize> = (0..rows).map(|r| lp.cols() + r).collect();
        let mut in_basis = vec![false; lp.cols() + rows];
        for &j in &basis {
            in_basis[j] = true;
        }
        let mut binv = vec![0.0; rows * rows];
        for r in 0..rows {
            binv[r * rows + r] = 1.0;
        }
        Simplex {
            lp,
            rows,
            row_sign,
            b_eff: b_eff.clone(),
            basis,
            in_basis,
            binv,
            xb: b_eff,
        }
    }

    /// Writes the sign-adjusted column of variable j into `out`.
    fn column_into(&self, j: usize, out: &mut [f64]) {
        if j >= self.lp.cols() {
            out.fill(0.0);
            out[j - self.lp.cols()] = 1.0;
        } else {
            self.lp.column_into(j, out);
            for r in 0..self.rows {
                out[r] *= self.row_sign[r];
            }
        }
    }

    /// c_B^T B^-1, with phase-dependent costs.
    fn multipliers(&self, zero_costs: bool) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = self.basic_cost(bi, zero_costs);
            if cb != 0.0 {
                let row = &self.binv[i * self.rows..(i + 1) * self.rows];
                for r in 0..self.rows {
                    y[r] += cb * row[r];
                }
            }
        }
        y
    }

    fn basic_cost(&self, j: usize, zero_costs: bool) -> f64 {
        if j >= self.lp.cols() {
            if zero_costs {
                1.0 // phase-1 artificial cost
            } else {
                0.0
            }
        } else if zero_costs {
            0.0
        } else {
            self.lp.cost(j)
        }
    }

    /// d = B^-1 a_j.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let rows = self.rows;
        let mut col = vec![0.0; rows];
        self.column_into(j, &mut col);
        let mut d = vec![0.0; rows];
        for i in 0..rows {
            let row = &self.binv[i * rows..(i + 1) * rows];
            let mut acc = 0.0;
            for r in 0..rows {
                acc += row[r] * col[r];
            }
            d[i] = acc;
        }
        d
    }

    fn refactorize(&mut self) -> Result<(), LpError> {
        let rows = self.rows;
        // Gauss-Jordan inverse of the basis matrix with partial pivoting.
        let mut scratch = vec![0.0; rows];
        let mut m = vec![0.0; rows * rows];
        for (i, &bi) in self.basis.iter().enumerate() {
            self.column_into(bi, &mut scratch);
            for r in 0..rows {
                m[r * rows + i] = scratch[r];
            }
        }
        let mut inv = vec![0.0; rows * rows];
        for r in 0..rows {
            inv[r * rows + r] = 1.0;
        }
        for col in 0..rows {
            let mut piv = col;
            let mut best = m[col * rows + col].abs();
            for r in (col + 1)..rows {
                let v = m[r * rows + col].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-12 {
                return Err(LpError::SingularBasis);
            }
            if piv != col {
                for k in 0..rows {
                    m.swap(col * rows + k, piv * rows + k);
                    inv.swap(col * rows + k, piv * rows + k);
                }
            }
            let p = m[col * rows + col];
            for k in 0..rows {
                m[col * rows + k] /= p;
                inv[col * rows + k] /= p;
            }
            for r in 0..rows {
                if r != col {
                    let f = m[r * rows + col];
                    if f != 0.0 {
                        for k in 0..rows {
                            m[r * rows + k] -= f * m[col * rows + k];
                            inv[r * rows + k] -= f * inv[col * rows + k];
                        }
                    }
                }
            }
        }
        self.binv = inv;
        for i in 0..rows {
            let row = &self.binv[i * rows..(i + 1) * rows];
            let mut acc = 0.0;
            for r in 0..rows {
                acc += row[r] * self.b_eff[r];
            }
            self.xb[i] = acc.max(0.0);
        }
        Ok(())
    }

    /// Prices artificial columns (phase one only: their cost is 1).
    fn price_artificials(&self, y: &[f64], tol: f64, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.rows {
            let j = self.lp.cols() + r;
            if self.in_basis[j] {
                continue;
            }
            let rc = 1.0 - y[r];
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

    /// One simplex phase. `zero_costs` selects the phase-1 objective
    /// (sum of artificials) instead of the structural costs.
    fn run(&mut self, zero_costs: bool, max_iter: usize) -> Result<LpStatus, LpError> {
        let mut stall = 0usize;
        let mut last_obj = f64::INFINITY;
        let mut since_refactor = 0usize;
        for _iter in 0..max_iter {
            if since_refactor >= REFACTOR_EVERY {
                self.refactorize()?;
                since_refactor = 0;
            }
            let y = self.multipliers(zero_costs);
            // Providers see sign-folded multipliers so they can ignore the
            // row flips entirely.
            let y_signed: Vec<f64> = y
                .iter()
                .zip(&self.row_sign)
                .map(|(&v, &s)| v * s)
                .collect();
            let bland = stall >= STALL_LIMIT;
            let mut enter =
                self.lp
                    .price(&y_signed, &self.in_basis, zero_costs, RCOST_TOL, bland);
            // Artificial columns may only re-enter during phase one.
            if zero_costs {
                let art = self.price_artificials(&y, RCOST_TOL, bland);
                enter = match (enter, art) {
                    (None, a) => a,
                    (e, None) => e,
                    (Some((je, re)), Some((ja, ra))) => {
                        if bland {
                            Some(if je < ja { (je, re) } else { (ja, ra) })
                        } else if ra < re {
                            Some((ja, ra))
                        } else {
                            Some((je, re))
                        }
                    }
                };
            }
            let Some((jin, _)) = enter else {
                // Declare optimality only against a freshly refactorized
                // inverse: accumulated pivot drift must not leak into the
                // final multipliers.
                if since_refactor > 0 {
                    self.refactorize()?;
                    since_refactor = 0;
                    continue;
                }
                return Ok(LpStatus::Optimal);
            };
            let d = self.ftran(jin);
            // Ratio test; rows holding an artificial at zero with d < 0
            // would otherwise let the artificial grow back, so they bind
            // the step at zero.
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let candidate = if d[i] > PIVOT_TOL {
                    Some(self.xb[i].max(0.0) / d[i])
                } else if self.basis[i] >= self.lp.cols()
                    && d[i] < -PIVOT_TOL
                    && self.xb[i] <= FEAS_TOL
                {
                    Some(0.0)
                } else {
                    None
                };
                if let Some(theta) = candidate {
                    let better = match leave {
                        None => true,
                        Some((li, lt)) => {
                            if theta < lt - 1e-12 {
                                true
                            } else if theta <= lt + 1e-12 {
                                // Ties: drop artificials first; then
                                // Bland's smallest index under the
                                // anti-cycling rule, largest pivot
                                // magnitude otherwise.
                                let art_i = self.basis[i] >= self.lp.cols();
                                let art_li = self.basis[li] >= self.lp.cols();
                                if art_i != art_li {
                                    art_i
                                } else if bland {
                                    self.basis[i] < self.basis[li]
                                } else {
                                    d[i].abs() > d[li].abs()
                                }
                            } else {
                                false
                            }
                        }
                    };
                    if better {
                        leave = Some((i, theta));
                    }
                }
            }
            let Some((p, theta)) = leave else {
                return Ok(LpStatus::Unbounded);
            };
            // Pivot: update the inverse and the basic solution.
            let rows = self.rows;
            let dp = d[p];
            for k in 0..rows {
                self.binv[p * rows + k] /= dp;
            }
            self.xb[p] = theta.max(0.0);
            for i in 0..rows {
                if i != p && d[i] != 0.0 {
                    let f = d[i];
                    for k in 0..rows {
                        self.binv[i * rows + k] -= f * self.binv[p * rows + k];
                    }
                    self.xb[i] = (self.xb[i] - f * theta).max(-1e-12);
                }
            }
            self.in_basis[self.basis[p]] = false;
            self.in_basis[jin] = true;
            self.basis[p] = jin;
            since_refactor += 1;

            let obj: f64 = self
                .basis
                .iter()
                .zip(&self.xb)
                .map(|(&bi, &x)| self.basic_cost(bi, zero_costs) * x)
                .sum();
            if obj < last_obj - 1e-12 {
                stall = 0;
                last_obj = obj;
            } else {
                stall += 1;
            }
        }
        Err(LpError::IterationLimit)
    }
}

/// Two-phase simplex for min c.x, A x = b, x >= 0.
pub fn solve<C: LpColumns>(lp: &C) -> Result<LpSolution, LpError> {
    let mut s = Simplex::new(lp);
    let cols = lp.cols();
    let max_iter = 50_000 + 200 * lp.rows();

    let status = s.run(true, max_iter)?;
    if status == LpStatus::Unbounded {
        // The phase-1 objective is bounded below by zero.
        return Err(LpError::SingularBasis);
    }
    let art_level: f64 = s
        .basis
        .iter()
        .zip(&s.xb)
        .filter(|(&bi, _)| bi >= cols)
        .map(|(_, &x)| x.max(0.0))
        .sum();
    let bscale = lp.rhs().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if art_level > FEAS_TOL * bscale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            objective: f64::NAN,
            x: Vec::new(),
            duals: Vec::new(),
        });
    }

    // Phase 2: artificials may not re-enter; those still basic sit at
    // zero and the ratio-test guard keeps them there.
    let status = s.run(false, max_iter)?;
    if status == LpStatus::Unbounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            objective: f64::NEG_INFINITY,
            x: Vec::new(),
            duals: Vec::new(),
        });
    }

    let objective: f64 = s
        .basis
        .iter()
        .zip(&s.xb)
        .map(|(&bi, &x)| if bi < cols { lp.cost(bi) * x } else { 0.0 })
        .sum();
    let x: Vec<(usize, f64)> = s
        .basis
        .iter()
        .zip(&s.xb)
        .filter(|(&bi, &xv)| bi < cols && xv > 0.0)
        .map(|(&bi, &xv)| (bi, xv))
        .collect();
    let y_eff = s.multipliers(false);
    let duals: Vec<f64> = y_eff
        .iter()
        .zip(&s.row_sign)
        .map(|(&y, &sg)| y * sg)
        .collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective,
        x,
        duals,
    })
}
