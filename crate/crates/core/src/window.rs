//! Window geometry in internal space: indicators, volumes, Fourier
//! transforms of indicators, boundary neighborhoods, mollified windows, and
//! dyadic-cube decompositions.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{dot, SupNormBox};
use crate::numeric::{e_phase, sinc};
use crate::summation::sum_complex;

/// Cap on dyadic cells touched at one level.
const CELL_CAP: u128 = 1 << 26;

/// Axis-aligned box window given by center and side lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedBoxWindow {
    center: Vec<f64>,
    sides: Vec<f64>,
}

impl AlignedBoxWindow {
    pub fn new(center: Vec<f64>, sides: Vec<f64>) -> Result<Self> {
        if center.len() != sides.len() {
            return Err(Error::DimensionMismatch { expected: center.len(), got: sides.len() });
        }
        if sides.iter().any(|&u| !(u > 0.0) || !u.is_finite()) {
            return Err(Error::InvalidParameter("box sides must be positive and finite".into()));
        }
        Ok(Self { center, sides })
    }

    /// Cube of side `eta` centered at `center`.
    pub fn cube(center: Vec<f64>, eta: f64) -> Result<Self> {
        let dim = center.len();
        Self::new(center, vec![eta; dim])
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn sides(&self) -> &[f64] {
        &self.sides
    }

    pub fn volume(&self) -> f64 {
        self.sides.iter().product()
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        y.iter()
            .zip(&self.center)
            .zip(&self.sides)
            .all(|((&yi, &ci), &ui)| (yi - ci).abs() <= 0.5 * ui)
    }

    pub fn bounding_box(&self) -> SupNormBox {
        SupNormBox {
            center: self.center.clone(),
            half_widths: self.sides.iter().map(|&u| 0.5 * u).collect(),
        }
    }
}

/// FT of the box indicator: `e(-c.y) * prod u_i sinc(pi u_i y_i)`.
pub fn ft_indicator_box(w: &AlignedBoxWindow, y: &[f64]) -> Complex64 {
    debug_assert_eq!(w.dim(), y.len());
    let mut modulus = 1.0;
    for (&u, &yi) in w.sides.iter().zip(y) {
        modulus *= u * sinc(std::f64::consts::PI * u * yi);
    }
    e_phase(-dot(&w.center, y)) * modulus
}

/// Envelope `prod min(u_i, 1/(pi |y_i|))`, an upper bound for
/// `|ft_indicator_box|` that is independent of the box center.
pub fn ft_indicator_bound(w: &AlignedBoxWindow, y: &[f64]) -> f64 {
    debug_assert_eq!(w.dim(), y.len());
    let mut b = 1.0;
    for (&u, &yi) in w.sides.iter().zip(y) {
        let decay = if yi == 0.0 { f64::INFINITY } else { 1.0 / (std::f64::consts::PI * yi.abs()) };
        b *= u.min(decay);
    }
    b
}

/// FT of the mollified window `(1_W * 1_{B_eps}) / (2 eps)^{dim}`:
/// the box FT damped per axis by `sinc(2 pi eps y_i)`.
pub fn mollified_window_ft(w: &AlignedBoxWindow, eps: f64, y: &[f64]) -> Complex64 {
    debug_assert!(eps > 0.0);
    let mut damp = 1.0;
    for &yi in y {
        damp *= sinc(2.0 * std::f64::consts::PI * eps * yi);
    }
    ft_indicator_box(w, y) * damp
}

/// Convex polygon window in a 2-d internal space, stored counterclockwise.
/// Carries exact area, sup-norm erosion/dilation, and scanline sections.
#[derive(Debug, Clone)]
pub struct ConvexPolygonWindow {
    verts: Vec<[f64; 2]>,
    cache: DecompositionCache,
}

impl ConvexPolygonWindow {
    pub fn new(mut verts: Vec<[f64; 2]>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::InvalidParameter("polygon needs at least 3 vertices".into()));
        }
        if verts.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("polygon vertices must be finite".into()));
        }
        let area2 = shoelace2(&verts);
        if area2 == 0.0 {
            return Err(Error::InvalidParameter("polygon is degenerate".into()));
        }
        if area2 < 0.0 {
            verts.reverse();
        }
        // Convexity: every signed cross product of consecutive edges >= 0.
        let n = verts.len();
        let scale = verts.iter().flatten().fold(0.0_f64, |m, &x| m.max(x.abs()));
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
            if cross < -1e-12 * scale * scale {
                return Err(Error::InvalidParameter("polygon is not convex".into()));
            }
        }
        Ok(Self { verts, cache: DecompositionCache::new() })
    }

    /// Regular octagon with circumradius `r`, oriented with axis-parallel
    /// top/bottom and left/right edges. Area is `2 sqrt(2) r^2`.
    pub fn regular_octagon(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter("octagon circumradius must be positive".into()));
        }
        let verts = (0..8)
            .map(|j| {
                let a = std::f64::consts::PI * (1.0 + 2.0 * j as f64) / 8.0;
                [r * a.cos(), r * a.sin()]
            })
            .collect();
        Self::new(verts)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.verts
    }

    pub fn area(&self) -> f64 {
        0.5 * shoelace2(&self.verts)
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        let scale = 1.0 + p[0].abs().max(p[1].abs());
        let n = self.verts.len();
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            if cross < -1e-12 * scale {
                return false;
            }
        }
        true
    }

    pub fn bounding_box(&self) -> SupNormBox {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for v in &self.verts {
            for i in 0..2 {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        SupNormBox {
            center: vec![0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])],
            half_widths: vec![0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1])],
        }
    }

    /// Horizontal section `{x : (x, y) in W}` as an interval, if nonempty.
    pub fn x_section(&self, y: f64) -> Option<(f64, f64)> {
        let n = self.verts.len();
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        // Intersect the half-planes' x-constraints at height y.
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            // Inside: (b-a) x (p-a) >= 0  =>  -(b1-a1) x >= c - (b0-a0) y ...
            let ex = b[0] - a[0];
            let ey = b[1] - a[1];
            // ex*(y - a1) - ey*(x - a0) >= 0  =>  ey*x <= ex*(y - a1) + ey*a0
            let rhs = ex * (y - a[1]) + ey * a[0];
            if ey.abs() < 1e-300 {
                if ex * (y - a[1]) < 0.0 {
                    return None;
                }
            } else if ey > 0.0 {
                hi = hi.min(rhs / ey);
            } else {
                lo = lo.max(rhs / ey);
            }
        }
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Sup-norm erosion: `{y : y + [-eps,eps]^2 subset W}` (may be empty).
    pub fn erode(&self, eps: f64) -> Option<ConvexPolygonWindow> {
        let clipped = self.shift_halfplanes(-eps, self.verts.clone());
        if clipped.len() < 3 || shoelace2(&clipped) <= 0.0 {
            return None;
        }
        Some(ConvexPolygonWindow { verts: clipped, cache: DecompositionCache::new() })
    }

    /// Sup-norm dilation `W + [-eps,eps]^2`, exact for the square's support
    /// function.
    pub fn dilate(&self, eps: f64) -> ConvexPolygonWindow {
        let bb = self.bounding_box();
        let (cx, cy) = (bb.center[0], bb.center[1]);
        let (rx, ry) = (bb.half_widths[0] + eps, bb.half_widths[1] + eps);
        let rect = vec![
            [cx - rx, cy - ry],
            [cx + rx, cy - ry],
            [cx + rx, cy + ry],
            [cx - rx, cy + ry],
        ];
        let verts = self.shift_halfplanes(eps, rect);
        ConvexPolygonWindow { verts, cache: DecompositionCache::new() }
    }

    /// Clip `subject` against every polygon edge half-plane shifted outward
    /// by `delta * (|n_x| + |n_y|)` (the square's support in direction n).
    fn shift_halfplanes(&self, delta: f64, mut subject: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
        let n = self.verts.len();
        for i in 0..n {
            let a = self.verts[i];
            let b = self.verts[(i + 1) % n];
            // Outward normal of a CCW edge.
            let nx = b[1] - a[1];
            let ny = a[0] - b[0];
            let bound = nx * a[0] + ny * a[1] + delta * (nx.abs() + ny.abs());
            subject = clip_halfplane(&subject, [nx, ny], bound);
            if subject.len() < 3 {
                return subject;
            }
        }
        subject
    }
}

/// Keep `{p : n.p <= bound}` of a convex polygon (Sutherland-Hodgman step).
fn clip_halfplane(poly: &[[f64; 2]], n: [f64; 2], bound: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let len = poly.len();
    for i in 0..len {
        let p = poly[i];
        let q = poly[(i + 1) % len];
        let dp = n[0] * p[0] + n[1] * p[1] - bound;
        let dq = n[0] * q[0] + n[1] * q[1] - bound;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            let t = dp / (dp - dq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn shoelace2(verts: &[[f64; 2]]) -> f64 {
    let n = verts.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        s += a[0] * b[1] - a[1] * b[0];
    }
    s
}

/// Membership oracle for a general window.
pub trait Indicator: Send + Sync {
    fn dim(&self) -> usize;
    fn contains(&self, y: &[f64]) -> bool;
}

struct BoxIndicator(AlignedBoxWindow);

impl Indicator for BoxIndicator {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn contains(&self, y: &[f64]) -> bool {
        self.0.contains(y)
    }
}

struct PolygonIndicator(ConvexPolygonWindow);

impl Indicator for PolygonIndicator {
    fn dim(&self) -> usize {
        2
    }
    fn contains(&self, y: &[f64]) -> bool {
        self.0.contains(y)
    }
}

/// Window given only by an indicator, a bounding box, an optional exact
/// volume, and a regularity assumption flag.
#[derive(Clone)]
pub struct GeneralWindow {
    indicator: Arc<dyn Indicator>,
    bounding_box: SupNormBox,
    volume: Option<f64>,
    pub assume_regular: bool,
    cache: DecompositionCache,
}

impl GeneralWindow {
    pub fn new(
        indicator: Arc<dyn Indicator>,
        bounding_box: SupNormBox,
        volume: Option<f64>,
        assume_regular: bool,
    ) -> Result<Self> {
        if indicator.dim() != bounding_box.dim() {
            return Err(Error::DimensionMismatch {
                expected: indicator.dim(),
                got: bounding_box.dim(),
            });
        }
        // Spot-check that the indicator vanishes outside the bounding box.
        let dim = bounding_box.dim();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..32 {
            let mut p = vec![0.0; dim];
            let axis = {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                (state >> 33) as usize % dim
            };
            for (i, pi) in p.iter_mut().enumerate() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                let u = (state >> 11) as f64 / (1u64 << 53) as f64;
                let c = bounding_box.center[i];
                let r = bounding_box.half_widths[i];
                *pi = if i == axis {
                    // Strictly outside along one axis.
                    c + (r * (1.5 + u)) * if state & 1 == 0 { 1.0 } else { -1.0 }
                } else {
                    c + r * (2.0 * u - 1.0)
                };
            }
            if indicator.contains(&p) {
                return Err(Error::InvalidParameter(
                    "indicator is nonzero outside the declared bounding box".into(),
                ));
            }
        }
        Ok(Self { indicator, bounding_box, volume, assume_regular, cache: DecompositionCache::new() })
    }

    pub fn from_box(w: AlignedBoxWindow) -> Self {
        let bb = w.bounding_box();
        let vol = w.volume();
        Self {
            indicator: Arc::new(BoxIndicator(w)),
            bounding_box: bb,
            volume: Some(vol),
            assume_regular: true,
            cache: DecompositionCache::new(),
        }
    }

    pub fn supplied_volume(&self) -> Option<f64> {
        self.volume
    }
}

/// Acceptance window of a model set: an aligned box, a convex polygon, or a
/// general indicator.
#[derive(Clone)]
pub enum Window {
    Box(AlignedBoxWindow),
    Polygon(ConvexPolygonWindow),
    General(GeneralWindow),
}

impl Window {
    pub fn dim(&self) -> usize {
        match self {
            Window::Box(w) => w.dim(),
            Window::Polygon(_) => 2,
            Window::General(w) => w.indicator.dim(),
        }
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        match self {
            Window::Box(w) => w.contains(y),
            Window::Polygon(w) => w.contains(y),
            Window::General(w) => w.indicator.contains(y),
        }
    }

    pub fn bounding_box(&self) -> SupNormBox {
        match self {
            Window::Box(w) => w.bounding_box(),
            Window::Polygon(w) => w.bounding_box(),
            Window::General(w) => w.bounding_box.clone(),
        }
    }

    /// Exact volume when available; otherwise the inner-cube volume of a
    /// decomposition refined until `vol(D) <= tol`.
    pub fn volume(&self, tol: f64) -> Result<f64> {
        match self {
            Window::Box(w) => Ok(w.volume()),
            Window::Polygon(w) => Ok(w.area()),
            Window::General(w) => {
                if let Some(v) = w.volume {
                    return Ok(v);
                }
                let (lo, hi) = self.volume_bracket(tol)?;
                Ok(0.5 * (lo + hi))
            }
        }
    }

    /// `[vol(I^(n)), vol(I^(n)) + vol(D^(n))]` at the first level with
    /// `vol(D) <= tol`.
    pub fn volume_bracket(&self, tol: f64) -> Result<(f64, f64)> {
        let mut level = 1;
        loop {
            let d = self.dyadic_decompose(level)?;
            if d.vol_boundary() <= tol {
                return Ok((d.vol_inner(), d.vol_inner() + d.vol_boundary()));
            }
            level += 1;
        }
    }

    /// Classify the level-`n` dyadic cubes against the window. Cached per
    /// window instance; concurrent first calls may duplicate work but agree.
    pub fn dyadic_decompose(&self, level: u32) -> Result<Arc<DyadicDecomposition>> {
        let cache = match self {
            Window::Box(_) => None,
            Window::Polygon(w) => Some(&w.cache),
            Window::General(w) => Some(&w.cache),
        };
        if let Some(c) = cache {
            if let Some(hit) = c.get(level) {
                return Ok(hit);
            }
        }
        let contains = |y: &[f64]| self.contains(y);
        let computed = Arc::new(decompose_indicator(&contains, &self.bounding_box(), level)?);
        if let Some(c) = cache {
            c.put(level, computed.clone());
        }
        Ok(computed)
    }

    /// FT of the window indicator via inner dyadic cubes, refined until
    /// `vol(D^(n)) <= tol`; the returned error bar is `vol(D^(n))`.
    pub fn ft_indicator_general(&self, y: &[f64], tol: f64) -> Result<(Complex64, f64)> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        let mut level = 1;
        let decomp = loop {
            let d = self.dyadic_decompose(level)?;
            if d.vol_boundary() <= tol {
                break d;
            }
            level += 1;
        };
        Ok((decomp.ft_inner(y), decomp.vol_boundary()))
    }

    /// Volume of `{y : dist_inf(y, boundary W) <= eps}`. Exact for boxes and
    /// convex polygons; a dyadic-counting estimate (error of order
    /// `perimeter * 2^-n` at the refinement level used) otherwise.
    pub fn boundary_neighborhood_volume(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter("eps must be positive".into()));
        }
        match self {
            Window::Box(w) => {
                let grown: f64 = w.sides().iter().map(|&u| u + 2.0 * eps).product();
                let shrunk: f64 = w.sides().iter().map(|&u| (u - 2.0 * eps).max(0.0)).product();
                Ok(grown - shrunk)
            }
            Window::Polygon(w) => {
                let outer = w.dilate(eps).area();
                let inner = w.erode(eps).map(|p| p.area()).unwrap_or(0.0);
                Ok(outer - inner)
            }
            Window::General(w) => self.boundary_volume_by_counting(w, eps),
        }
    }

    fn boundary_volume_by_counting(&self, w: &GeneralWindow, eps: f64) -> Result<f64> {
        let dim = w.bounding_box.dim();
        // Resolve cells at least 4x finer than eps, within the cell cap.
        let mut level = 3u32;
        while (2.0f64).powi(-(level as i32)) > eps / 4.0 && level < 24 {
            level += 1;
        }
        loop {
            match self.boundary_counting_at_level(w, eps, level, dim) {
                Ok(v) => return Ok(v),
                Err(Error::LevelTooFine(_)) if level > 3 => level -= 1,
                Err(e) => return Err(e),
            }
        }
    }

    fn boundary_counting_at_level(
        &self,
        w: &GeneralWindow,
        eps: f64,
        level: u32,
        dim: usize,
    ) -> Result<f64> {
        let decomp = self.dyadic_decompose(level)?;
        let side = decomp.cube_side();
        let radius = (eps / side).ceil() as i64;
        // Mark cells within Chebyshev cell-distance `radius` of a boundary
        // cell, sweeping one axis at a time.
        let bb = w.bounding_box.inflate(eps + side);
        let mut lo = vec![0i64; dim];
        let mut extent = vec![0usize; dim];
        let mut total: u128 = 1;
        for i in 0..dim {
            let a = ((bb.center[i] - bb.half_widths[i]) / side).floor() as i64 - 1;
            let b = ((bb.center[i] + bb.half_widths[i]) / side).ceil() as i64 + 1;
            lo[i] = a;
            extent[i] = (b - a + 1) as usize;
            total = total.saturating_mul(extent[i] as u128);
        }
        if total > CELL_CAP {
            return Err(Error::LevelTooFine(format!("{} cells at level {}", total, level)));
        }
        let total = total as usize;
        let flat = |idx: &[i64]| -> usize {
            let mut f = 0usize;
            for i in 0..dim {
                f = f * extent[i] + (idx[i] - lo[i]) as usize;
            }
            f
        };
        let mut mask = vec![false; total];
        for cube in decomp.boundary_cubes() {
            mask[flat(cube)] = true;
        }
        // Per-axis 1-d dilation by `radius` cells via prefix counts.
        for axis in 0..dim {
            let stride: usize = extent[axis + 1..].iter().product();
            let lines = total / extent[axis];
            let mut line = vec![0u32; extent[axis] + 1];
            let mut next = mask.clone();
            for l in 0..lines {
                // Base offset of this 1-d line.
                let outer = l / stride;
                let inner = l % stride;
                let base = outer * extent[axis] * stride + inner;
                line[0] = 0;
                for j in 0..extent[axis] {
                    line[j + 1] = line[j] + mask[base + j * stride] as u32;
                }
                for j in 0..extent[axis] {
                    let a = j.saturating_sub(radius as usize);
                    let b = (j + radius as usize + 1).min(extent[axis]);
                    if line[b] > line[a] {
                        next[base + j * stride] = true;
                    }
                }
            }
            mask = next;
        }
        let count = mask.iter().filter(|&&m| m).count();
        Ok(count as f64 * side.powi(dim as i32))
    }
}

/// Idempotent per-window memo of computed decomposition levels.
#[derive(Clone)]
struct DecompositionCache(Arc<Mutex<BTreeMap<u32, Arc<DyadicDecomposition>>>>);

impl DecompositionCache {
    fn new() -> Self {
        Self(Arc::new(Mutex::new(BTreeMap::new())))
    }
    fn get(&self, level: u32) -> Option<Arc<DyadicDecomposition>> {
        self.0.lock().unwrap().get(&level).cloned()
    }
    fn put(&self, level: u32, d: Arc<DyadicDecomposition>) {
        self.0.lock().unwrap().entry(level).or_insert(d);
    }
}

impl std::fmt::Debug for DecompositionCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DecompositionCache({} levels)", self.0.lock().unwrap().len())
    }
}

/// Level-`n` dyadic cubes classified against a window: `inner` cubes whose
/// corner-and-center samples all pass the indicator, `boundary` cubes with
/// mixed samples. Cube indices are stored flat with stride `dim`.
#[derive(Debug, Clone)]
pub struct DyadicDecomposition {
    level: u32,
    dim: usize,
    inner: Vec<i64>,
    boundary: Vec<i64>,
}

impl DyadicDecomposition {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cube_side(&self) -> f64 {
        (2.0f64).powi(-(self.level as i32))
    }

    pub fn inner_count(&self) -> usize {
        self.inner.len() / self.dim
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len() / self.dim
    }

    /// `vol(I^(n)) = N(n) / 2^(n dim)`.
    pub fn vol_inner(&self) -> f64 {
        self.inner_count() as f64 * self.cube_side().powi(self.dim as i32)
    }

    /// `vol(D^(n)) = M(n) / 2^(n dim)`.
    pub fn vol_boundary(&self) -> f64 {
        self.boundary_count() as f64 * self.cube_side().powi(self.dim as i32)
    }

    pub fn inner_cubes(&self) -> impl Iterator<Item = &[i64]> {
        self.inner.chunks(self.dim)
    }

    pub fn boundary_cubes(&self) -> impl Iterator<Item = &[i64]> {
        self.boundary.chunks(self.dim)
    }

    /// Center of the cube with integer index `idx`.
    pub fn cube_center(&self, idx: &[i64]) -> Vec<f64> {
        let s = self.cube_side();
        idx.iter().map(|&i| (i as f64 + 0.5) * s).collect()
    }

    /// FT of the union of inner cubes: the per-cube sinc factor is shared,
    /// so only the center phases are summed.
    pub fn ft_inner(&self, y: &[f64]) -> Complex64 {
        let s = self.cube_side();
        let mut factor = 1.0;
        for &yi in y {
            factor *= s * sinc(std::f64::consts::PI * s * yi);
        }
        let terms: Vec<Complex64> = self
            .inner_cubes()
            .map(|c| {
                let center = self.cube_center(c);
                e_phase(-dot(&center, y))
            })
            .collect();
        sum_complex(&terms) * factor
    }
}

/// Classify every level-`n` cube meeting the (one-cell-inflated) bounding
/// box as inner, boundary, or outer by sampling the `2^dim` corners plus the
/// center. Exact for convex windows once cubes are smaller than the
/// geometric features; misclassification can only inflate the boundary
/// family.
fn decompose_indicator<F>(
    contains: &F,
    bounding_box: &SupNormBox,
    level: u32,
) -> Result<DyadicDecomposition>
where
    F: Fn(&[f64]) -> bool,
{
    if level == 0 {
        return Err(Error::InvalidParameter("decomposition level must be >= 1".into()));
    }
    let dim = bounding_box.dim();
    let side = (2.0f64).powi(-(level as i32));
    let mut lo = vec![0i64; dim];
    let mut extent = vec![0usize; dim];
    let mut total: u128 = 1;
    for i in 0..dim {
        let a = ((bounding_box.center[i] - bounding_box.half_widths[i]) / side).floor() as i64 - 1;
        let b = ((bounding_box.center[i] + bounding_box.half_widths[i]) / side).ceil() as i64;
        lo[i] = a;
        extent[i] = (b - a + 1) as usize;
        total = total.saturating_mul(extent[i] as u128);
    }
    if total > CELL_CAP {
        return Err(Error::LevelTooFine(format!("{} cells at level {}", total, level)));
    }

    let corners = 1usize << dim;
    let mut inner = Vec::new();
    let mut boundary = Vec::new();
    let mut idx = lo.clone();
    let mut point = vec![0.0; dim];
    'cells: loop {
        let mut inside = 0usize;
        // Corners.
        for c in 0..corners {
            for i in 0..dim {
                let offset = ((c >> i) & 1) as f64;
                point[i] = (idx[i] as f64 + offset) * side;
            }
            if contains(&point) {
                inside += 1;
            }
        }
        // Center.
        for i in 0..dim {
            point[i] = (idx[i] as f64 + 0.5) * side;
        }
        let samples = corners + 1;
        if contains(&point) {
            inside += 1;
        }
        if inside == samples {
            inner.extend_from_slice(&idx);
        } else if inside > 0 {
            boundary.extend_from_slice(&idx);
        }
        // Lexicographic odometer.
        for i in (0..dim).rev() {
            idx[i] += 1;
            if (idx[i] - lo[i]) < extent[i] as i64 {
                continue 'cells;
            }
            idx[i] = lo[i];
        }
        break;
    }
    Ok(DyadicDecomposition { level, dim, inner, boundary })
}

/// Averaging radius with its strip and window smoothing scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollifierParams {
    pub r: f64,
    pub s_r: f64,
    pub eps_r: f64,
}

impl MollifierParams {
    pub fn new(r: f64, s_r: f64, eps_r: f64) -> Result<Self> {
        if !(r > 0.0) || !(s_r > 0.0) || !(eps_r > 0.0) {
            return Err(Error::InvalidParameter("mollifier scales must be positive".into()));
        }
        if s_r > r {
            return Err(Error::InvalidParameter(format!("S_R = {} exceeds R = {}", s_r, r)));
        }
        Ok(Self { r, s_r, eps_r })
    }
}
