//! Quadrature rules: fixed Gauss-Legendre (composite), adaptive Simpson and
//! adaptive Gauss-Kronrod 7/15.
//!
//! Gauss-Kronrod never evaluates the interval endpoints, so it is the rule of
//! choice for integrands with an integrable singularity at an endpoint.

use crate::error::Result;
use crate::scalar::Real;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Builds the `n`-point rule. Nodes are computed in `f64` by Newton
    /// iteration on the Legendre recurrence, then converted.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self {
            nodes: nodes.into_iter().map(T::c).collect(),
            weights: weights.into_iter().map(T::c).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::half();
        let mid = (a + b) * T::half();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn try_integrate<F: FnMut(T) -> Result<T>>(&self, mut f: F, a: T, b: T) -> Result<T> {
        let mut acc = T::zero();
        for (x, w) in self.mapped(a, b) {
            acc += w * f(x)?;
        }
        Ok(acc)
    }

    /// Composite rule over `panels` equal sub-intervals.
    pub fn try_composite<F: FnMut(T) -> Result<T>>(&self, mut f: F, a: T, b: T, panels: usize) -> Result<T> {
        let h = (b - a) / T::c(panels as f64);
        let mut acc = T::zero();
        for k in 0..panels {
            let lo = a + h * T::c(k as f64);
            let hi = if k + 1 == panels { b } else { lo + h };
            acc += self.try_integrate(&mut f, lo, hi)?;
        }
        Ok(acc)
    }

    pub fn composite<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T, panels: usize) -> T {
        self.try_composite(|x| Ok(f(x)), a, b, panels)
            .expect("infallible integrand")
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T) -> T {
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * T::half();
    let fm = f(m);
    let whole = (b - a) / T::c(6.0) * (fa + T::c(4.0) * fm + fb);
    simpson_step(&mut f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<T: Real, F: FnMut(T) -> T>(
    f: &mut F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> T {
    let m = (a + b) * T::half();
    let lm = (a + m) * T::half();
    let rm = (m + b) * T::half();
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / T::c(6.0) * (fa + T::c(4.0) * flm + fm);
    let right = (b - m) / T::c(6.0) * (fm + T::c(4.0) * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::c(15.0) * tol || delta.abs() <= T::c(50.0) * T::epsilon() * (left + right).abs()
    {
        return left + right + delta / T::c(15.0);
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol * T::half(), depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol * T::half(), depth - 1)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = (b - a) * T::half();
    let mid = (a + b) * T::half();
    let fc = f(mid);
    let mut kronrod = fc * T::c(WGK[7]);
    let mut gauss = fc * T::c(WG[3]);
    for j in 0..7 {
        let dx = half * T::c(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        kronrod += T::c(WGK[j]) * s;
        if j % 2 == 1 {
            gauss += T::c(WG[j / 2]) * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss-Kronrod 7/15 with absolute tolerance `tol`. Open rule: the
/// endpoints `a` and `b` are never evaluated.
pub fn adaptive_gauss_kronrod<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T) -> T {
    gk_step(&mut f, a, b, tol, 100)
}

fn gk_step<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T, tol: T, depth: u32) -> T {
    let (value, err) = gk15(f, a, b);
    if depth == 0 || err <= tol || err <= T::c(50.0) * T::epsilon() * value.abs() || !err.is_finite() {
        return value;
    }
    let m = (a + b) * T::half();
    gk_step(f, a, m, tol * T::half(), depth - 1) + gk_step(f, m, b, tol * T::half(), depth - 1)
}
