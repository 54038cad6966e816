//! Bisection on a bracketed sign change.

/// Bisect `f` on `[lo, hi]` given that `f(lo)` and `f(hi)` have opposite
/// signs (either orientation). Returns the interval midpoint once the
/// interval width is at most `tol` or the iteration cap is reached. An
/// endpoint with `f == 0` (or a bracket that is not actually a sign change)
/// returns that endpoint.
pub(crate) fn bisect_sign_change<F>(
    mut lo: f64,
    mut hi: f64,
    f: F,
    tol: f64,
    max_iter: usize,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return hi;
    }
    let lo_positive = flo > 0.0;
    if lo_positive == (fhi > 0.0) {
        // no sign change; the left endpoint is the best answer we can offer
        return lo;
    }
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval collapsed to adjacent floats
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
