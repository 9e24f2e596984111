//! Lattice bases, dual lattices, and enumeration of lattice points inside
//! sup-norm product boxes.
//!
//! A lattice is `L = A Z^k` for an invertible real matrix `A` whose columns
//! are the generators. The dual lattice is `L* = A* Z^k` with
//! `A* = (A^-1)^T`. Enumeration derives integer candidate bounds from
//! `n = A^-1 w` and filters candidates by exact box membership, so no
//! lattice reduction is needed at the dimensions used here (k <= 8).

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::SupNormBox;

/// Default cap on the integer candidate count of one enumeration call.
pub const DEFAULT_CANDIDATE_CAP: u64 = 1_000_000_000;

/// Relative slack applied when converting real candidate bounds to integer
/// ranges, so points exactly on box faces are never lost to rounding.
const BOUND_PAD: f64 = 1e-9;

/// Invertible k x k basis matrix with a residual-certified cached inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix {
    mat: DMatrix<f64>,
    inv: DMatrix<f64>,
    det: f64,
}

impl BasisMatrix {
    /// Build from a square matrix whose columns generate the lattice.
    ///
    /// Rejects matrices failing `|det A| > 1e-10 * (max column sup-norm)^k`
    /// or whose computed inverse has max-norm residual above 1e-12.
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        let k = mat.nrows();
        if k < 2 || mat.ncols() != k {
            return Err(Error::InvalidParameter(format!(
                "basis must be square with k >= 2, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("basis entries must be finite".into()));
        }
        let det = mat.determinant();
        let col_scale = (0..k)
            .map(|j| mat.column(j).amax())
            .fold(0.0_f64, f64::max);
        if det.abs() <= 1e-10 * col_scale.powi(k as i32) {
            return Err(Error::SingularMatrix(format!(
                "|det| = {:e} below threshold for column scale {:e}",
                det.abs(),
                col_scale
            )));
        }
        let inv = mat
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::SingularMatrix("inverse computation failed".into()))?;
        Self::with_inverse(mat, inv, det)
    }

    /// Build from rows (outer vec = rows), the form configs arrive in.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidParameter("basis rows must form a square matrix".into()));
        }
        Self::new(DMatrix::from_fn(k, k, |i, j| rows[i][j]))
    }

    fn with_inverse(mat: DMatrix<f64>, inv: DMatrix<f64>, det: f64) -> Result<Self> {
        let k = mat.nrows();
        let residual = (&mat * &inv - DMatrix::<f64>::identity(k, k)).amax();
        if residual > 1e-12 {
            return Err(Error::SingularMatrix(format!(
                "inverse residual {:e} exceeds 1e-12",
                residual
            )));
        }
        Ok(Self { mat, inv, det })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// Embed integer coordinates: `w = A n`.
    pub fn embed(&self, coords: &[i64]) -> Vec<f64> {
        let k = self.dim();
        let mut w = vec![0.0; k];
        for (j, &n) in coords.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let nf = n as f64;
            for i in 0..k {
                w[i] += self.mat[(i, j)] * nf;
            }
        }
        w
    }
}

/// A lattice with its dual basis, determinant, and density cached.
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: BasisMatrix,
    dual_basis: BasisMatrix,
    det: f64,
    density: f64,
}

/// One lattice point: integer coordinates and the embedded vector `A n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub embedded: Vec<f64>,
}

impl Lattice {
    /// `make_lattice`: wraps a basis with its dual `(A^-1)^T`, determinant,
    /// and density `1/|det A|`.
    pub fn new(basis: BasisMatrix) -> Result<Self> {
        let dual_mat = basis.inverse().transpose();
        // (A*)^-1 = A^T exactly; reuse it instead of re-inverting numerically.
        let dual_inv = basis.matrix().transpose();
        let dual_det = dual_mat.determinant();
        let dual_basis = BasisMatrix::with_inverse(dual_mat, dual_inv, dual_det)?;
        let det = basis.det();
        Ok(Self {
            basis,
            dual_basis,
            det,
            density: 1.0 / det.abs(),
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(BasisMatrix::from_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &BasisMatrix {
        &self.basis
    }

    pub fn dual_basis(&self) -> &BasisMatrix {
        &self.dual_basis
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// Points per unit volume, `1/|det A|`.
    pub fn density(&self) -> f64 {
        self.density
    }

    /// The dual lattice as a lattice in its own right. Applying this twice
    /// reproduces the original basis up to rounding.
    pub fn dual_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.dual_basis.clone())
    }

    pub fn embed(&self, coords: &[i64]) -> Vec<f64> {
        self.basis.embed(coords)
    }

    /// All lattice points whose embedded vector lies in `region`, in
    /// lexicographic order of their integer coordinates.
    ///
    /// Integer bounds per axis come from `n = A^-1 w` interval arithmetic;
    /// candidates are filtered by the exact box membership test. Fails with
    /// `RegionTooLarge` when the candidate-box size exceeds `cap`.
    pub fn enumerate_in_region(
        &self,
        region: &SupNormBox,
        cap: u64,
    ) -> Result<Vec<LatticePoint>> {
        let k = self.dim();
        if region.dim() != k {
            return Err(Error::DimensionMismatch { expected: k, got: region.dim() });
        }
        let inv = self.basis.inverse();

        // Candidate range per integer axis.
        let mut lo = vec![0i64; k];
        let mut hi = vec![0i64; k];
        let mut candidates: u128 = 1;
        for i in 0..k {
            let mut center = 0.0;
            let mut slack = 0.0;
            for j in 0..k {
                center += inv[(i, j)] * region.center[j];
                slack += inv[(i, j)].abs() * region.half_widths[j];
            }
            let pad = BOUND_PAD * (1.0 + center.abs() + slack);
            let lo_f = (center - slack - pad).ceil();
            let hi_f = (center + slack + pad).floor();
            if lo_f > hi_f {
                return Ok(Vec::new());
            }
            if lo_f.abs() > 9e15 || hi_f.abs() > 9e15 {
                return Err(Error::RegionTooLarge { candidates: u128::MAX, cap });
            }
            lo[i] = lo_f as i64;
            hi[i] = hi_f as i64;
            candidates = candidates.saturating_mul((hi[i] - lo[i] + 1) as u128);
        }
        if candidates > cap as u128 {
            return Err(Error::RegionTooLarge { candidates, cap });
        }

        // Partition on the leading coordinate; each slice enumerates
        // serially and slices are concatenated in order, so the output is
        // lexicographic regardless of thread count.
        let span = (hi[0] - lo[0] + 1) as usize;
        let per_slice = candidates / span as u128;
        let parallel = candidates > 250_000 && span > 1;
        let slices: Vec<Vec<LatticePoint>> = if parallel {
            // Keep slices coarse enough to amortize scheduling.
            let chunk = ((50_000 / per_slice.max(1)) as usize).clamp(1, span);
            let starts: Vec<i64> = (lo[0]..=hi[0]).step_by(chunk).collect();
            starts
                .par_iter()
                .map(|&s| {
                    let e = (s + chunk as i64 - 1).min(hi[0]);
                    self.enumerate_slice(region, &lo, &hi, s, e)
                })
                .collect()
        } else {
            vec![self.enumerate_slice(region, &lo, &hi, lo[0], hi[0])]
        };
        Ok(slices.concat())
    }

    /// Enumerate candidates with leading coordinate in `[first_lo, first_hi]`.
    fn enumerate_slice(
        &self,
        region: &SupNormBox,
        lo: &[i64],
        hi: &[i64],
        first_lo: i64,
        first_hi: i64,
    ) -> Vec<LatticePoint> {
        let k = self.dim();
        let mat = self.basis.matrix();
        let mut out = Vec::new();
        let mut coords = vec![0i64; k];
        // partial[i] = sum of the first i columns' contributions.
        let mut partial = vec![vec![0.0; k]; k];

        // Depth-first odometer over coords[0..k-1]; the last axis is solved
        // by interval intersection and then filtered exactly.
        let mut depth = 0usize;
        let mut cursor = vec![0i64; k];
        cursor[0] = first_lo;
        loop {
            if depth + 1 == k {
                // partial[depth - 1] holds the prefix over axes 0..k-2.
                self.scan_last_axis(region, lo[k - 1], hi[k - 1], &partial[depth - 1], &mut coords, &mut out);
                // Backtrack.
                loop {
                    if depth == 0 {
                        cursor[0] += 1;
                        if cursor[0] > first_hi {
                            return out;
                        }
                        break;
                    }
                    depth -= 1;
                    cursor[depth] += 1;
                    let axis_hi = if depth == 0 { first_hi } else { hi[depth] };
                    if cursor[depth] <= axis_hi {
                        break;
                    }
                }
            }
            // Descend, filling partial sums.
            let n = cursor[depth];
            coords[depth] = n;
            let nf = n as f64;
            if depth == 0 {
                for i in 0..k {
                    partial[0][i] = mat[(i, 0)] * nf;
                }
            } else {
                let (head, rest) = partial.split_at_mut(depth);
                let src = &head[depth - 1];
                let dst = &mut rest[0];
                for i in 0..k {
                    dst[i] = src[i] + mat[(i, depth)] * nf;
                }
            }
            depth += 1;
            if depth < k {
                cursor[depth] = lo[depth];
            }
        }
    }

    /// Solve the last-axis range by interval intersection, then apply the
    /// exact membership test to each surviving candidate.
    fn scan_last_axis(
        &self,
        region: &SupNormBox,
        axis_lo: i64,
        axis_hi: i64,
        prefix: &[f64],
        coords: &mut [i64],
        out: &mut Vec<LatticePoint>,
    ) {
        let k = self.dim();
        let mat = self.basis.matrix();
        let mut lo_f = axis_lo as f64;
        let mut hi_f = axis_hi as f64;
        for j in 0..k {
            let a = mat[(j, k - 1)];
            let lo_w = region.center[j] - region.half_widths[j] - prefix[j];
            let hi_w = region.center[j] + region.half_widths[j] - prefix[j];
            if a.abs() < 1e-300 {
                if lo_w > 0.0 || hi_w < 0.0 {
                    return;
                }
                continue;
            }
            let (mut a0, mut a1) = (lo_w / a, hi_w / a);
            if a0 > a1 {
                std::mem::swap(&mut a0, &mut a1);
            }
            let pad = BOUND_PAD * (1.0 + a0.abs().max(a1.abs()));
            lo_f = lo_f.max(a0 - pad);
            hi_f = hi_f.min(a1 + pad);
            if lo_f > hi_f {
                return;
            }
        }
        let n_lo = lo_f.ceil() as i64;
        let n_hi = hi_f.floor() as i64;
        for n in n_lo..=n_hi {
            coords[k - 1] = n;
            let nf = n as f64;
            let mut inside = true;
            let mut w = vec![0.0; k];
            for j in 0..k {
                let wj = prefix[j] + mat[(j, k - 1)] * nf;
                if (wj - region.center[j]).abs() > region.half_widths[j] {
                    inside = false;
                    break;
                }
                w[j] = wj;
            }
            if inside {
                out.push(LatticePoint { coords: coords.to_vec(), embedded: w });
            }
        }
    }

    /// Count of points in `region` without materializing them.
    pub fn count_in_region(&self, region: &SupNormBox, cap: u64) -> Result<usize> {
        Ok(self.enumerate_in_region(region, cap)?.len())
    }
}
