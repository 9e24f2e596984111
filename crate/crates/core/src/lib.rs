//! Cut-and-project model sets in Euclidean spaces: lattice algebra, window
//! geometry, Fourier-Bohr coefficients, and numerical Poisson-summation
//! checks of their convergence.

pub mod cps;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod numeric;
pub mod presets;
pub mod summation;
pub mod window;

pub use cps::{CpsOptions, CutProjectScheme, ModelSetPoint, ValidationReport};
pub use error::{Error, Result};
pub use geometry::SupNormBox;
pub use lattice::{BasisMatrix, Lattice, LatticePoint, DEFAULT_CANDIDATE_CAP};
pub use presets::Preset;
pub use window::{AlignedBoxWindow, ConvexPolygonWindow, GeneralWindow, MollifierParams, Window};
