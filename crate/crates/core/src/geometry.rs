//! Sup-norm boxes and small vector helpers.

use crate::error::{Error, Result};

/// Axis-aligned box `{ y : |y_i - center_i| <= half_widths_i }`.
///
/// A sup-norm ball `B_R(y0)` is the special case with all half-widths `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupNormBox {
    pub center: Vec<f64>,
    pub half_widths: Vec<f64>,
}

impl SupNormBox {
    pub fn new(center: Vec<f64>, half_widths: Vec<f64>) -> Result<Self> {
        if center.len() != half_widths.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                got: half_widths.len(),
            });
        }
        if half_widths.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
            return Err(Error::InvalidParameter(
                "box half-widths must be positive and finite".into(),
            ));
        }
        Ok(Self { center, half_widths })
    }

    /// Centered sup-norm ball of radius `r` in `dim` dimensions.
    pub fn ball(dim: usize, r: f64) -> Result<Self> {
        Self::new(vec![0.0; dim], vec![r; dim])
    }

    /// Cartesian product of two boxes.
    pub fn product(&self, other: &SupNormBox) -> SupNormBox {
        let mut center = self.center.clone();
        center.extend_from_slice(&other.center);
        let mut half_widths = self.half_widths.clone();
        half_widths.extend_from_slice(&other.half_widths);
        SupNormBox { center, half_widths }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Face membership uses exact `<=` comparison per axis.
    pub fn contains(&self, y: &[f64]) -> bool {
        y.iter()
            .zip(&self.center)
            .zip(&self.half_widths)
            .all(|((&yi, &ci), &ri)| (yi - ci).abs() <= ri)
    }

    pub fn volume(&self) -> f64 {
        self.half_widths.iter().map(|&r| 2.0 * r).product()
    }

    /// Grow every half-width by `pad`.
    pub fn inflate(&self, pad: f64) -> SupNormBox {
        SupNormBox {
            center: self.center.clone(),
            half_widths: self.half_widths.iter().map(|&r| r + pad).collect(),
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_is_closed_on_faces() {
        let b = SupNormBox::new(vec![0.0, 1.0], vec![1.0, 0.5]).unwrap();
        assert!(b.contains(&[1.0, 1.5]));
        assert!(b.contains(&[-1.0, 0.5]));
        assert!(!b.contains(&[1.0 + 1e-12, 1.0]));
    }

    #[test]
    fn rejects_nonpositive_half_widths() {
        assert!(SupNormBox::new(vec![0.0], vec![0.0]).is_err());
        assert!(SupNormBox::new(vec![0.0], vec![-1.0]).is_err());
    }

    #[test]
    fn volume_and_product() {
        let a = SupNormBox::ball(2, 2.0).unwrap();
        let b = SupNormBox::new(vec![1.0], vec![0.25]).unwrap();
        assert_eq!(a.volume(), 16.0);
        let p = a.product(&b);
        assert_eq!(p.dim(), 3);
        assert_eq!(p.volume(), 8.0);
    }
}
