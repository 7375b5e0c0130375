//! Small numeric kernels shared across the crate: monotone bisection,
//! adaptive Simpson quadrature, and sampled cumulative integrals.

/// Root of a continuous function with `f(lo)` and `f(hi)` of opposite sign,
/// located to an interval of width `tol`.
pub fn bisect<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, tol: f64, f: F) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(
        flo.signum() != fhi.signum(),
        "bisect needs a sign change: f({lo})={flo}, f({hi})={fhi}"
    );
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

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
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` (signed if `a > b`) to
/// absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(a: f64, b: f64, tol: f64, f: F) -> f64 {
    if a == b {
        return 0.0;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let m = 0.5 * (lo + hi);
    let fa = f(lo);
    let fm = f(m);
    let fb = f(hi);
    let whole = simpson(fa, fm, fb, hi - lo);
    sign * adaptive_step(&f, lo, hi, fa, fm, fb, whole, tol, 48)
}

/// Cumulative integral of a sampled integrand on a uniform grid.
///
/// `values[i]` holds the integrand at `x0 + i·dx`; the result holds the
/// trapezoid prefix integral at the same nodes.
pub fn cumulative_trapezoid(values: &[f64], dx: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in values.windows(2) {
        acc += 0.5 * (w[0] + w[1]) * dx;
        out.push(acc);
    }
    out
}

/// Piecewise-linear interpolation of uniformly sampled data.
///
/// Clamps to the end values outside the sampled range.
pub fn lerp_uniform(values: &[f64], x0: f64, dx: f64, x: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 2);
    let s = (x - x0) / dx;
    if s <= 0.0 {
        return values[0];
    }
    if s >= (n - 1) as f64 {
        return values[n - 1];
    }
    let i = s.floor() as usize;
    let frac = s - i as f64;
    values[i] * (1.0 - frac) + values[i + 1] * frac
}
