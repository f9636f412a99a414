//! Adaptive Gauss–Kronrod (7/15) quadrature, nested for rectangles.

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
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

// A panel is accepted only when both halves pass their own Kronrod error
// estimate and agree with the undivided panel; GK15 alone can miss a kink.
fn adapt<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lv, le) = gk15(f, a, m);
    let (rv, re) = gk15(f, m, b);
    let refined = lv + rv;
    let settled = le + re <= tol && (refined - whole).abs() <= tol;
    if settled || depth == 0 || (b - a).abs() < 1e-14 {
        return refined;
    }
    adapt(f, a, m, lv, 0.5 * tol, depth - 1) + adapt(f, m, b, rv, 0.5 * tol, depth - 1)
}

/// `∫_a^b f` to absolute tolerance `tol` (best effort at depth 40).
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (whole, _) = gk15(&mut f, a, b);
    adapt(&mut f, a, b, whole, tol, 40)
}

/// `∫∫` over `[x0,x1]×[y0,y1]` by nested adaptive quadrature.
pub fn integrate_rect<F: Fn(f64, f64) -> f64>(
    f: F,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    tol: f64,
) -> f64 {
    let width = (x1 - x0).abs().max(1.0);
    let inner_tol = 0.1 * tol / width;
    // tail kernels built from x ∧ y kink on the diagonal, so split there
    let inner = |x: f64| {
        if x > y0 && x < y1 {
            integrate(|y| f(x, y), y0, x, 0.5 * inner_tol) + integrate(|y| f(x, y), x, y1, 0.5 * inner_tol)
        } else {
            integrate(|y| f(x, y), y0, y1, inner_tol)
        }
    };
    if y0 < x1 && y1 > x0 {
        let (lo, hi) = (x0.max(y0), x1.min(y1));
        integrate(inner, x0, lo, tol / 3.0) + integrate(inner, lo, hi, tol / 3.0) + integrate(inner, hi, x1, tol / 3.0)
    } else {
        integrate(inner, x0, x1, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, 1e-12);
        assert!((v - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn min_kernel_over_unit_square() {
        let v = integrate_rect(|x, y| x.min(y), (0.0, 1.0), (0.0, 1.0), 1e-11);
        assert!((v - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn singular_derivative_at_origin() {
        // sqrt has an unbounded derivative at zero
        let v = integrate(f64::sqrt, 0.0, 1.0, 1e-11);
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }
}
