//! Small numerical primitives shared across the crate.

/// Neumaier's compensated summation. Keeps the running error of long sums
/// near one ulp of the largest partial sum instead of growing linearly.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Binomial coefficients C(i, j) for i, j <= n as exact floats.
/// Exact as long as every entry stays below 2^53, which holds for n <= 30
/// and well beyond.
pub(crate) fn pascal_triangle(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![1.0; i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1] + rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

fn simpson(h: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson quadrature on [a, b] with a relative tolerance.
/// The integrand must be finite on the open interval; endpoint values are
/// used as given, so remove singularities before calling.
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(b - a, fa, fm, fb);
    let tol = rel_tol * whole.abs().max(1e-12);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol, 52)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(m - a, fa, flm, fm);
    let right = simpson(b - m, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancellation_naive_sum_loses() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        let naive: f64 = xs.iter().sum();
        let mut comp = NeumaierSum::new();
        for &x in &xs {
            comp.add(x);
        }
        assert_eq!(comp.total(), 2.0);
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn pascal_rows_are_exact() {
        let rows = pascal_triangle(30);
        assert_eq!(rows[5][2], 10.0);
        assert_eq!(rows[30][15], 155_117_520.0);
        assert_eq!(rows[29][14], 77_558_760.0);
    }

    #[test]
    fn simpson_integrates_polynomials_and_exponentials() {
        let cubic = adaptive_simpson(&|x: f64| x * x * x, 0.0, 1.0, 1e-12);
        assert!((cubic - 0.25).abs() < 1e-12);
        let exp = adaptive_simpson(&|x: f64| (-x).exp(), 0.0, 5.0, 1e-12);
        assert!((exp - (1.0 - (-5.0f64).exp())).abs() < 1e-11);
    }
}
