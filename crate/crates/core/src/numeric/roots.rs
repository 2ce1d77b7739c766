use crate::scalar::Real;

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> T {
    let mut flo = f(lo);
    let half = T::lit(0.5);
    for _ in 0..200 {
        let mid = (lo + hi) * half;
        if hi - lo <= tol || mid == lo || mid == hi {
            return mid;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * half
}

/// Scans `(lo, hi)` on a uniform grid and refines every sign change of `f`.
///
/// `admissible(a, b)` can veto a bracket; it is used to skip sign changes that
/// come from a pole rather than a root.
pub fn scan_roots<T: Real>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    step: T,
    tol: T,
    admissible: impl Fn(T, T) -> bool,
) -> Vec<T> {
    let steps = ((hi - lo) / step).ceil().to_usize().unwrap_or(0).max(1);
    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = if i == steps { hi } else { lo + step * T::from_usize_lossy(i) };
        let fb = f(b);
        if fa.is_finite() && fb.is_finite() && admissible(a, b) {
            if fa == T::zero() {
                roots.push(a);
            } else if (fa < T::zero()) != (fb < T::zero()) && fb != T::zero() {
                roots.push(bisect(&f, a, b, tol));
            }
        }
        a = b;
        fa = fb;
    }
    roots
}
