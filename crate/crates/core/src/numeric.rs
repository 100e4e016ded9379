//! Small numerical building blocks shared by the analytic modules.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Compensated (Kahan–Babuška/Neumaier) summation of complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = neumaier(self.sum.re, self.comp.re, x.re);
        let (im, cim) = neumaier(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    pub fn add_real(&mut self, x: f64) {
        self.add(Complex64::new(x, 0.0));
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

impl FromIterator<Complex64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut k = KahanSum::new();
        for x in iter {
            k.add(x);
        }
        k
    }
}

#[inline]
fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    (t, comp + c)
}

pub fn kahan_real<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut k = KahanSum::new();
    for x in iter {
        k.add_real(x);
    }
    k.value().re
}

/// `e(k/n) = exp(2πi k/n)`, reducing `k` to `(-n/2, n/2]` first.
pub fn e_frac(k: i128, n: i128) -> Complex64 {
    debug_assert!(n > 0);
    let mut r = k.rem_euclid(n);
    if 2 * r > n {
        r -= n;
    }
    let theta = 2.0 * PI * (r as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// Adaptive Gauss–Kronrod (7–15) quadrature on `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
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
            0.104_790_010_322_250_2,
            0.140_653_259_715_525_9,
            0.169_004_726_639_267_9,
            0.190_350_578_064_785_4,
            0.204_432_940_075_298_9,
            0.209_482_141_084_728,
        ];
        const WG: [f64; 4] = [
            0.129_484_966_168_869_7,
            0.279_705_391_489_276_7,
            0.381_830_050_505_118_9,
            0.417_959_183_673_469_4,
        ];
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let fc = f(c);
        let mut kron = WGK[7] * fc;
        let mut gauss = WG[3] * fc;
        for j in 0..7 {
            let x = h * XGK[j];
            let s = f(c - x) + f(c + x);
            kron += WGK[j] * s;
            if j % 2 == 1 {
                gauss += WG[j / 2] * s;
            }
        }
        (kron * h, ((kron - gauss) * h).abs())
    }
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, tol / 2.0, depth - 1) + recurse(f, m, b, tol / 2.0, depth - 1)
    }
    recurse(f, a, b, tol, 40)
}

/// Tanh–sinh quadrature of a complex integrand on `[a, b]`, halving the
/// step until successive levels agree to `tol`.
pub fn tanh_sinh<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    let h_half = 0.5 * (b - a);
    let tmax = 4.0;
    let mut h = 0.5;
    let eval = |t: f64| {
        let u = 0.5 * PI * t.sinh();
        let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        // distance to the nearer endpoint, computed without cancellation
        let d = (b - a) / ((2.0 * u.abs()).exp() + 1.0);
        let x = if u < 0.0 { a + d } else { b - d };
        f(x) * (w * h_half)
    };
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..12 {
        h /= 2.0;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h;
        if (cur - prev).norm() <= tol * cur.norm().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
