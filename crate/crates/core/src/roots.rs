//! Scalar root finding.
//!
//! Two bracketed solvers: a bisection carried out on `ln s` (so the tolerance
//! is relative, which is what the adjustment-factor equations need when the
//! root sits many decades below one) and Brent's method for the hot loop of
//! the conditional-inversion sampler.

/// Outcome of a bracketed search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    Root(f64),
    /// `f(lo)` and `f(hi)` do not straddle zero.
    NotBracketed { f_lo: f64, f_hi: f64 },
}

/// Root of a non-decreasing `f` on `[lo, hi]` with `0 < lo < hi`, bisecting in
/// log space until the bracket's relative width drops below `rtol`.
///
/// Returns the geometric midpoint of the final bracket. An endpoint that is an
/// exact zero is returned as is.
pub fn bisect_log<F>(mut f: F, lo: f64, hi: f64, rtol: f64) -> Bracket
where
    F: FnMut(f64) -> f64,
{
    debug_assert!(lo > 0.0 && hi > lo);
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Bracket::Root(lo);
    }
    if f_hi == 0.0 {
        return Bracket::Root(hi);
    }
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Bracket::NotBracketed { f_lo, f_hi };
    }
    let (mut a, mut b) = (lo.ln(), hi.ln());
    // ln(1 + rtol) ~ rtol for the tolerances used here
    let tol = rtol.max(4.0 * f64::EPSILON);
    for _ in 0..2000 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m.exp());
        if fm == 0.0 {
            return Bracket::Root(m.exp());
        }
        if fm < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Bracket::Root((0.5 * (a + b)).exp())
}

/// Brent's method on `[a, b]`. `f(a)` and `f(b)` must have opposite signs.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Bracket
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Bracket::Root(a);
    }
    if fb == 0.0 {
        return Bracket::Root(b);
    }
    if fa.signum() == fb.signum() {
        return Bracket::NotBracketed { f_lo: fa, f_hi: fb };
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Bracket::Root(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Bracket::Root(b)
}
