/// Root of an increasing-through-the-root function on `[lo, hi]`, where
/// `f(lo) <= 0 <= f(hi)`.
///
/// `f` returns its value, derivative, and the sum of the magnitudes of the
/// terms that make up the value; iteration stops once the value is at that
/// roundoff level.
///
/// Newton iteration seeded at the bracket midpoint. The bracket shrinks with
/// every evaluation; a Newton step that would leave it, or any step after
/// `NEWTON_ITERS`, is replaced by bisection.
pub(crate) fn bracketed_root(f: impl Fn(f64) -> (f64, f64, f64), lo: f64, hi: f64) -> f64 {
    bracketed_root_from(f, lo, hi, 0.5 * (lo + hi))
}

/// As [`bracketed_root`], seeded at `x0` (moved to the midpoint if it is not
/// strictly inside the bracket).
pub(crate) fn bracketed_root_from(f: impl Fn(f64) -> (f64, f64, f64), mut lo: f64, mut hi: f64, x0: f64) -> f64 {
    const NEWTON_ITERS: usize = 50;
    const MAX_ITERS: usize = 200;

    let mut x = if x0 > lo && x0 < hi { x0 } else { 0.5 * (lo + hi) };
    for iter in 0..MAX_ITERS {
        let (fx, dfx, mag) = f(x);
        if fx.abs() <= 4.0 * f64::EPSILON * mag {
            return x;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if iter < NEWTON_ITERS && dfx.is_finite() && dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) || hi - lo <= f64::EPSILON * hi.abs() {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_of_two() {
        let x = bracketed_root(|x| (x * x * x - 2.0, 3.0 * x * x, x * x * x + 2.0), 0.0, 2.0);
        assert!((x - 2f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn seed_outside_bracket_is_ignored() {
        let x = bracketed_root_from(|x| (x * x * x - 2.0, 3.0 * x * x, x * x * x + 2.0), 0.0, 2.0, 5.0);
        assert!((x - 2f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn falls_back_when_derivative_vanishes() {
        // flat at the midpoint: Newton is undefined there
        let x = bracketed_root(|x| {
            let val = (x - 0.5).powi(3) + 0.1 * (x - 0.75);
            (val, 3.0 * (x - 0.5).powi(2) + 0.1, (x - 0.5).abs().powi(3) + 0.1 * (x.abs() + 0.75))
        }, 0.0, 1.0);
        let fx = (x - 0.5).powi(3) + 0.1 * (x - 0.75);
        assert!(fx.abs() < 1e-15);
    }
}
