//! Built-in cut-and-project schemes. Quadratic irrationalities are built
//! from closed-form expressions so the star map stays consistent at machine
//! precision; window endpoints are irrational where possible so no lattice
//! point lands exactly on a face.

use crate::cps::CutProjectScheme;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::window::{AlignedBoxWindow, ConvexPolygonWindow, Window};

/// The golden ratio.
pub fn tau() -> f64 {
    (1.0 + 5.0_f64.sqrt()) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// k = 2, d = 1, basis [[1, tau], [1, 1 - tau]], window [-tau/2, tau/2].
    Fibonacci,
    /// k = 2, d = 1, basis [[1, 1 + sqrt2], [1, 1 - sqrt2]], window [-1/2, 1/2].
    SilverMean,
    /// k = 4, d = 2, the eighth-root-of-unity embedding of Z^4, regular
    /// octagon window (circumradius 1).
    AmmannBeenker,
}

impl Preset {
    pub fn from_name(name: &str) -> Result<Preset> {
        match name {
            "fibonacci" => Ok(Preset::Fibonacci),
            "silver_mean" => Ok(Preset::SilverMean),
            "ammann_beenker" => Ok(Preset::AmmannBeenker),
            other => Err(Error::InvalidParameter(format!("unknown preset '{}'", other))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fibonacci => "fibonacci",
            Preset::SilverMean => "silver_mean",
            Preset::AmmannBeenker => "ammann_beenker",
        }
    }

    pub fn cps(&self) -> Result<CutProjectScheme> {
        match self {
            Preset::Fibonacci => {
                let t = tau();
                let l = Lattice::from_rows(&[vec![1.0, t], vec![1.0, 1.0 - t]])?;
                CutProjectScheme::new(l, 1)
            }
            Preset::SilverMean => {
                let s = 2.0_f64.sqrt();
                let l = Lattice::from_rows(&[vec![1.0, 1.0 + s], vec![1.0, 1.0 - s]])?;
                CutProjectScheme::new(l, 1)
            }
            Preset::AmmannBeenker => {
                let k = 4;
                let mut rows = vec![vec![0.0; k]; k];
                for (j, col) in (0..k).map(|j| {
                    let a = std::f64::consts::PI * j as f64 / 4.0;
                    let b = 3.0 * a;
                    (j, [a.cos(), a.sin(), b.cos(), b.sin()])
                }) {
                    for i in 0..k {
                        rows[i][j] = col[i];
                    }
                }
                let l = Lattice::from_rows(&rows)?;
                CutProjectScheme::new(l, 2)
            }
        }
    }

    pub fn default_window(&self) -> Result<Window> {
        match self {
            Preset::Fibonacci => {
                Ok(Window::Box(AlignedBoxWindow::cube(vec![0.0], tau())?))
            }
            Preset::SilverMean => {
                Ok(Window::Box(AlignedBoxWindow::cube(vec![0.0], 1.0)?))
            }
            Preset::AmmannBeenker => {
                Ok(Window::Polygon(ConvexPolygonWindow::regular_octagon(1.0)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_CANDIDATE_CAP;

    #[test]
    fn fibonacci_preset_density() {
        let cps = Preset::Fibonacci.cps().unwrap();
        assert!((cps.lattice().density() - 1.0 / 5.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn silver_mean_preset_density() {
        let cps = Preset::SilverMean.cps().unwrap();
        assert!((cps.lattice().density() - 1.0 / (2.0 * 2.0_f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn ammann_beenker_validates_and_has_density_quarter() {
        let cps = Preset::AmmannBeenker.cps().unwrap();
        assert_eq!(cps.physical_dim(), 2);
        assert_eq!(cps.internal_dim(), 2);
        assert!((cps.lattice().det().abs() - 4.0).abs() < 1e-10);
        assert!((cps.lattice().density() - 0.25).abs() < 1e-12);
        assert!(!cps.report().denseness_suspect);
    }

    #[test]
    fn preset_density_convergence_sweep() {
        // Empirical point density approaches dens(L) vol(W); at least 2 of
        // the 3 pairwise errors along the sweep are non-increasing and the
        // final error is <= 2%.
        for preset in [Preset::Fibonacci, Preset::SilverMean] {
            let cps = preset.cps().unwrap();
            let w = preset.default_window().unwrap();
            let target = cps.lattice().density() * w.volume(1e-9).unwrap();
            let radii = [250.0, 500.0, 1000.0, 2000.0];
            let errs: Vec<f64> = radii
                .iter()
                .map(|&r| {
                    let n = cps.count_in_internal_region(&w, r, DEFAULT_CANDIDATE_CAP).unwrap();
                    (n as f64 / (2.0 * r) - target).abs() / target
                })
                .collect();
            let decreasing = errs.windows(2).filter(|p| p[1] <= p[0]).count();
            assert!(decreasing >= 2, "{}: errors {:?}", preset.name(), errs);
            assert!(errs[3] <= 0.02, "{}: final error {}", preset.name(), errs[3]);
        }
    }

    #[test]
    fn ammann_beenker_density_convergence_scaled_down() {
        // k = 4 enumeration slack keeps this sweep at modest radii.
        let cps = Preset::AmmannBeenker.cps().unwrap();
        let w = Preset::AmmannBeenker.default_window().unwrap();
        let target = cps.lattice().density() * w.volume(1e-9).unwrap();
        let mut errs = Vec::new();
        for r in [10.0, 20.0, 40.0] {
            let n = cps.count_in_internal_region(&w, r, DEFAULT_CANDIDATE_CAP).unwrap();
            errs.push((n as f64 / (2.0 * r).powi(2) - target).abs() / target);
        }
        assert!(errs[2] <= 0.10, "errors {:?}", errs);
    }

    #[test]
    fn unknown_preset_name_is_rejected() {
        assert!(Preset::from_name("penrose").is_err());
    }
}
