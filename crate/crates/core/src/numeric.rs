//! Shared numeric kernels: sinc, the `e(x) = exp(2 pi i x)` phase, and an
//! adaptive Simpson integrator used as an independent cross-check for the
//! closed-form Fourier transforms.

use num_complex::Complex64;

/// `sin(x)/x` with `sinc(0) = 1`.
///
/// Below |x| = 1e-4 the direct quotient loses digits to cancellation, so a
/// two-term series is used there (truncation error < 1e-17).
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `e(x) = exp(2 pi i x)`.
pub fn e_phase(x: f64) -> Complex64 {
    let arg = 2.0 * std::f64::consts::PI * x;
    Complex64::new(arg.cos(), arg.sin())
}

/// Adaptive Simpson quadrature for complex integrands.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Real-valued variant.
pub fn adaptive_simpson_real<F>(f: &F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    adaptive_simpson(&|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_recurse(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)
        + simpson_recurse(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!((sinc(std::f64::consts::PI)).abs() < 1e-15);
        let x = 1e-5;
        assert!((sinc(x) - x.sin() / x).abs() < 1e-15);
    }

    #[test]
    fn phase_is_unit_circle() {
        let z = e_phase(0.25);
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((e_phase(1.0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn simpson_integrates_oscillatory_exponential() {
        // int_0^1 e(-x t) dx = (1 - e(-t)) / (2 pi i t)
        let t = 3.7;
        let num = adaptive_simpson(&|x| e_phase(-x * t), 0.0, 1.0, 1e-12);
        let denom = Complex64::new(0.0, 2.0 * std::f64::consts::PI * t);
        let exact = (Complex64::new(1.0, 0.0) - e_phase(-t)) / denom;
        assert!((num - exact).norm() < 1e-10);
    }

    #[test]
    fn simpson_real_polynomial() {
        let v = adaptive_simpson_real(&|x| x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0 / 3.0).abs() < 1e-10);
    }
}
