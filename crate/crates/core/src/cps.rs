//! Cut-and-project schemes: finite-scale validation of the CPS axioms, the
//! star map, and model-set point generation.
//!
//! The axioms (injective physical projection of the lattice and its dual,
//! dense internal projection) hold globally for the presets but are only
//! checkable at finite scale; the validation report records how far each
//! check was pushed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{sup_norm, SupNormBox};
use crate::lattice::Lattice;
use crate::window::Window;

/// Knobs for the finite-scale CPS checks.
#[derive(Debug, Clone, Copy)]
pub struct CpsOptions {
    /// Integer coordinate range of the injectivity scans.
    pub n_check: i64,
    /// A nonzero lattice point whose physical part falls below
    /// `collision_tol * basis_scale` counts as a projection collision.
    pub collision_tol: f64,
}

impl Default for CpsOptions {
    fn default() -> Self {
        Self { n_check: 50, collision_tol: 1e-9 }
    }
}

/// Outcome of the finite-scale CPS checks.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub n_check: i64,
    /// Smallest physical sup-norm among nonzero lattice points scanned.
    pub min_nonzero_physical: f64,
    /// Same scan on the dual lattice.
    pub min_nonzero_physical_dual: f64,
    /// Dyadic cells of side 2^-3 in the folded unit box hit by internal
    /// projections, out of 8^(k-d). A miss is only a warning: the check is a
    /// heuristic stand-in for denseness.
    pub denseness_cells_hit: usize,
    pub denseness_cells_total: usize,
    pub denseness_suspect: bool,
}

/// A lattice together with the physical/internal coordinate split.
#[derive(Debug, Clone)]
pub struct CutProjectScheme {
    lattice: Lattice,
    dual: Lattice,
    d: usize,
    report: ValidationReport,
}

/// One model-set point: integer coordinates, physical part, internal part.
/// Physical and internal concatenate back to the embedded lattice vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSetPoint {
    pub coords: Vec<i64>,
    pub physical: Vec<f64>,
    pub internal: Vec<f64>,
}

impl CutProjectScheme {
    /// `make_cps` with default options.
    pub fn new(lattice: Lattice, d: usize) -> Result<Self> {
        Self::with_options(lattice, d, CpsOptions::default())
    }

    pub fn with_options(lattice: Lattice, d: usize, opts: CpsOptions) -> Result<Self> {
        let k = lattice.dim();
        if d == 0 || d >= k {
            return Err(Error::InvalidParameter(format!(
                "physical dimension must satisfy 1 <= d < k, got d = {}, k = {}",
                d, k
            )));
        }
        let dual = lattice.dual_lattice()?;

        let scale = basis_scale(&lattice);
        let tol = opts.collision_tol * scale;
        let min_primal = min_nonzero_projection(&lattice, d, opts.n_check);
        if min_primal <= tol {
            return Err(Error::ProjectionNotInjective(format!(
                "lattice point with |physical| = {:e} within N_check = {}",
                min_primal, opts.n_check
            )));
        }
        let dual_scale = basis_scale(&dual);
        let min_dual = min_nonzero_projection(&dual, d, opts.n_check);
        if min_dual <= opts.collision_tol * dual_scale {
            return Err(Error::ProjectionNotInjective(format!(
                "dual lattice point with |physical| = {:e} within N_check = {}",
                min_dual, opts.n_check
            )));
        }

        let (hit, total) = denseness_proxy(&lattice, d);
        let report = ValidationReport {
            n_check: opts.n_check,
            min_nonzero_physical: min_primal,
            min_nonzero_physical_dual: min_dual,
            denseness_cells_hit: hit,
            denseness_cells_total: total,
            denseness_suspect: hit < total,
        };
        Ok(Self { lattice, dual, d, report })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The dual lattice, built once at construction.
    pub fn dual(&self) -> &Lattice {
        &self.dual
    }

    pub fn physical_dim(&self) -> usize {
        self.d
    }

    pub fn internal_dim(&self) -> usize {
        self.lattice.dim() - self.d
    }

    pub fn total_dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Split an embedded vector into physical and internal parts.
    pub fn split<'a>(&self, w: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        w.split_at(self.d)
    }

    /// Physical part of the lattice point with integer coordinates `n`.
    pub fn physical_part(&self, n: &[i64]) -> Vec<f64> {
        let w = self.lattice.embed(n);
        w[..self.d].to_vec()
    }

    /// The star map on integer coordinates: internal part of `A n`. Taking
    /// coordinates rather than a physical point sidesteps inverting the
    /// projection.
    pub fn star_map(&self, n: &[i64]) -> Vec<f64> {
        let w = self.lattice.embed(n);
        w[self.d..].to_vec()
    }

    /// Dual point for integer coordinates `m`: `(theta, theta_star)`.
    pub fn dual_point(&self, m: &[i64]) -> (Vec<f64>, Vec<f64>) {
        let w = self.dual.embed(m);
        let (theta, theta_star) = w.split_at(self.d);
        (theta.to_vec(), theta_star.to_vec())
    }

    /// All lattice points with `|physical|_inf <= r` and internal part in
    /// `window`, in lexicographic coordinate order.
    pub fn model_set_points(
        &self,
        window: &Window,
        r: f64,
        cap: u64,
    ) -> Result<Vec<ModelSetPoint>> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter("averaging radius must be positive".into()));
        }
        if window.dim() != self.internal_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.internal_dim(),
                got: window.dim(),
            });
        }
        let phys = SupNormBox::ball(self.d, r)?;
        let region = phys.product(&window.bounding_box());
        let pts = self.lattice.enumerate_in_region(&region, cap)?;
        Ok(pts
            .into_iter()
            .filter_map(|p| {
                let (x, xs) = p.embedded.split_at(self.d);
                if window.contains(xs) {
                    Some(ModelSetPoint {
                        coords: p.coords,
                        physical: x.to_vec(),
                        internal: xs.to_vec(),
                    })
                } else {
                    None
                }
            })
            .collect())
    }

    /// `card { x in L : |x| <= r, x_star in region }`.
    pub fn count_in_internal_region(&self, region: &Window, r: f64, cap: u64) -> Result<usize> {
        Ok(self.model_set_points(region, r, cap)?.len())
    }
}

fn basis_scale(lattice: &Lattice) -> f64 {
    let m = lattice.basis().matrix();
    (0..m.ncols()).map(|j| m.column(j).amax()).fold(0.0_f64, f64::max)
}

/// Minimum physical sup-norm over nonzero integer coordinates in
/// `[-n_check, n_check]^k`, scanned with per-axis partial sums.
fn min_nonzero_projection(lattice: &Lattice, d: usize, n_check: i64) -> f64 {
    let k = lattice.dim();
    let mat = lattice.basis().matrix();
    let cols: Vec<Vec<f64>> = (0..k).map(|j| (0..d).map(|i| mat[(i, j)]).collect()).collect();

    (-n_check..=n_check)
        .into_par_iter()
        .map(|n0| {
            let mut best = f64::INFINITY;
            let mut coords = vec![0i64; k];
            coords[0] = n0;
            let mut partial = vec![0.0; d];
            for (i, p) in partial.iter_mut().enumerate() {
                *p = cols[0][i] * n0 as f64;
            }
            scan_axis(&cols, n_check, 1, &mut coords, &partial, &mut best);
            best
        })
        .reduce(|| f64::INFINITY, f64::min)
}

fn scan_axis(
    cols: &[Vec<f64>],
    n_check: i64,
    axis: usize,
    coords: &mut [i64],
    partial: &[f64],
    best: &mut f64,
) {
    let k = cols.len();
    let d = partial.len();
    if axis == k {
        if coords.iter().all(|&c| c == 0) {
            return;
        }
        let norm = sup_norm(partial);
        if norm < *best {
            *best = norm;
        }
        return;
    }
    let mut next = vec![0.0; d];
    for n in -n_check..=n_check {
        coords[axis] = n;
        for i in 0..d {
            next[i] = partial[i] + cols[axis][i] * n as f64;
        }
        scan_axis(cols, n_check, axis + 1, coords, &next, best);
    }
}

/// Fold internal projections of small-coordinate lattice points into the
/// unit torus and check that every dyadic cell of side 2^-3 is hit.
fn denseness_proxy(lattice: &Lattice, d: usize) -> (usize, usize) {
    let k = lattice.dim();
    let h = k - d;
    // ~1e4 points for k <= 3; k = 4 needs a wider scan because paired
    // coordinate sums and differences enter the internal part with the same
    // parity, thinning the folded coverage.
    let n_range = match k {
        2 => 50,
        3 => 11,
        _ => 6,
    };
    let total = 8usize.pow(h as u32);
    let mut hit = vec![false; total];
    let mat = lattice.basis().matrix();
    let mut coords = vec![-(n_range as i64); k];
    'points: loop {
        let mut cell = 0usize;
        for i in 0..h {
            let mut v = 0.0;
            for (j, &c) in coords.iter().enumerate() {
                v += mat[(d + i, j)] * c as f64;
            }
            let folded = v - v.floor();
            let bin = ((folded * 8.0) as usize).min(7);
            cell = cell * 8 + bin;
        }
        hit[cell] = true;
        for i in (0..k).rev() {
            coords[i] += 1;
            if coords[i] <= n_range {
                continue 'points;
            }
            coords[i] = -n_range;
        }
        break;
    }
    (hit.iter().filter(|&&h| h).count(), total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_CANDIDATE_CAP;
    use crate::window::{AlignedBoxWindow, GeneralWindow, Indicator, Window};
    use std::sync::Arc;

    fn tau() -> f64 {
        (1.0 + 5.0_f64.sqrt()) / 2.0
    }

    fn fibonacci_cps() -> CutProjectScheme {
        let t = tau();
        let l = Lattice::from_rows(&[vec![1.0, t], vec![1.0, 1.0 - t]]).unwrap();
        CutProjectScheme::new(l, 1).unwrap()
    }

    fn fibonacci_window() -> Window {
        Window::Box(AlignedBoxWindow::cube(vec![0.0], tau()).unwrap())
    }

    #[test]
    fn integer_lattice_is_rejected() {
        let l = Lattice::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        match CutProjectScheme::new(l, 1) {
            Err(Error::ProjectionNotInjective(_)) => {}
            other => panic!("expected ProjectionNotInjective, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn fibonacci_scheme_validates() {
        let cps = fibonacci_cps();
        let rep = cps.report();
        assert_eq!(rep.n_check, 50);
        assert!(rep.min_nonzero_physical > 1e-6);
        assert!(rep.min_nonzero_physical_dual > 1e-6);
        assert!(!rep.denseness_suspect, "hit {}/{}", rep.denseness_cells_hit, rep.denseness_cells_total);
    }

    #[test]
    fn irrational_rotation_of_square_lattice_validates() {
        let alpha = (1.0 / tau()).atan();
        let (c, s) = (alpha.cos(), alpha.sin());
        let l = Lattice::from_rows(&[vec![c, -s], vec![s, c]]).unwrap();
        let cps = CutProjectScheme::new(l, 1).unwrap();
        assert!(cps.report().min_nonzero_physical > 1e-6);
    }

    #[test]
    fn star_map_examples() {
        let cps = fibonacci_cps();
        assert_eq!(cps.star_map(&[0, 0]), vec![0.0]);
        // n = (1,0): lattice point (1,1).
        assert!((cps.physical_part(&[1, 0])[0] - 1.0).abs() < 1e-15);
        assert!((cps.star_map(&[1, 0])[0] - 1.0).abs() < 1e-15);
        // n = (0,1): lattice point (tau, 1-tau).
        assert!((cps.physical_part(&[0, 1])[0] - tau()).abs() < 1e-15);
        assert!((cps.star_map(&[0, 1])[0] - (1.0 - tau())).abs() < 1e-15);
    }

    #[test]
    fn star_map_is_additive() {
        let cps = fibonacci_cps();
        let mut state = 7u64;
        let mut rand_small = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 201) as i64 - 100
        };
        for _ in 0..200 {
            let n = [rand_small(), rand_small()];
            let m = [rand_small(), rand_small()];
            let nm = [n[0] + m[0], n[1] + m[1]];
            let lhs = cps.star_map(&nm)[0];
            let rhs = cps.star_map(&n)[0] + cps.star_map(&m)[0];
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn model_set_matches_brute_force_scan() {
        let cps = fibonacci_cps();
        let w = fibonacci_window();
        let pts = cps.model_set_points(&w, 5.0, DEFAULT_CANDIDATE_CAP).unwrap();
        let mut brute = Vec::new();
        for n1 in -20..=20i64 {
            for n2 in -20..=20i64 {
                let x = cps.physical_part(&[n1, n2]);
                let xs = cps.star_map(&[n1, n2]);
                if x[0].abs() <= 5.0 && xs[0].abs() <= tau() / 2.0 {
                    brute.push(vec![n1, n2]);
                }
            }
        }
        let got: Vec<_> = pts.iter().map(|p| p.coords.clone()).collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn model_set_density_approaches_dens_times_volume() {
        let cps = fibonacci_cps();
        let w = fibonacci_window();
        let r = 1000.0;
        let n = cps.count_in_internal_region(&w, r, DEFAULT_CANDIDATE_CAP).unwrap();
        let expected = cps.lattice().density() * tau() * 2.0 * r;
        let rel = (n as f64 - expected).abs() / expected;
        assert!(rel < 0.05, "count {} vs {:.1}", n, expected);
    }

    #[test]
    fn displaced_window_yields_empty_set() {
        let cps = fibonacci_cps();
        let w = Window::Box(AlignedBoxWindow::cube(vec![1e6], 0.5).unwrap());
        let pts = cps.model_set_points(&w, 50.0, DEFAULT_CANDIDATE_CAP).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn empty_indicator_counts_zero() {
        struct Nothing;
        impl Indicator for Nothing {
            fn dim(&self) -> usize {
                1
            }
            fn contains(&self, _: &[f64]) -> bool {
                false
            }
        }
        let cps = fibonacci_cps();
        let region = Window::General(
            GeneralWindow::new(Arc::new(Nothing), SupNormBox::ball(1, 1.0).unwrap(), Some(0.0), true)
                .unwrap(),
        );
        assert_eq!(cps.count_in_internal_region(&region, 100.0, DEFAULT_CANDIDATE_CAP).unwrap(), 0);
    }

    #[test]
    fn thin_internal_strip_count() {
        // A = [0, 0.1], R = 2000: count ~ dens * vol(A) * (2R)^d.
        let cps = fibonacci_cps();
        let a = Window::Box(AlignedBoxWindow::new(vec![0.05], vec![0.1]).unwrap());
        let n = cps.count_in_internal_region(&a, 2000.0, DEFAULT_CANDIDATE_CAP).unwrap();
        let expected = cps.lattice().density() * 0.1 * 4000.0;
        assert!((n as f64 - expected).abs() / expected < 0.10, "count {} vs {:.1}", n, expected);
    }

    #[test]
    fn nested_windows_give_vanishing_relative_counts() {
        let cps = fibonacci_cps();
        let dens = cps.lattice().density();
        let mut prev_ratio = f64::INFINITY;
        for i in 1..=6 {
            let vol = (2.0f64).powi(-i);
            let a = Window::Box(AlignedBoxWindow::new(vec![vol / 2.0], vec![vol]).unwrap());
            let r = 400.0 * (2.0f64).powi(i);
            let count = cps.count_in_internal_region(&a, r, DEFAULT_CANDIDATE_CAP).unwrap() as f64;
            // Lemma-style upper bound with the factor 2^{d+1}.
            assert!(count <= 4.0 * dens * vol * r, "count {} above bound at i = {}", count, i);
            let ratio = count / r;
            assert!(ratio <= prev_ratio + 1e-12);
            prev_ratio = ratio;
        }
        assert!(prev_ratio < 0.05);
    }

    #[test]
    fn model_sets_nest_in_radius_and_window() {
        let cps = fibonacci_cps();
        let w_small = Window::Box(AlignedBoxWindow::cube(vec![0.0], 0.8).unwrap());
        let w_big = Window::Box(AlignedBoxWindow::cube(vec![0.0], 1.3).unwrap());
        let small_r = cps.model_set_points(&w_big, 30.0, DEFAULT_CANDIDATE_CAP).unwrap();
        let big_r = cps.model_set_points(&w_big, 60.0, DEFAULT_CANDIDATE_CAP).unwrap();
        let as_set: std::collections::BTreeSet<_> =
            big_r.iter().map(|p| p.coords.clone()).collect();
        for p in &small_r {
            assert!(as_set.contains(&p.coords));
        }
        let narrow = cps.model_set_points(&w_small, 30.0, DEFAULT_CANDIDATE_CAP).unwrap();
        let wide_set: std::collections::BTreeSet<_> =
            small_r.iter().map(|p| p.coords.clone()).collect();
        for p in &narrow {
            assert!(wide_set.contains(&p.coords));
        }
    }

    #[test]
    fn split_concatenates_back() {
        let cps = fibonacci_cps();
        let w = cps.lattice().embed(&[3, -2]);
        let (x, xs) = cps.split(&w);
        let mut joined = x.to_vec();
        joined.extend_from_slice(xs);
        assert_eq!(joined, w);
    }
}
