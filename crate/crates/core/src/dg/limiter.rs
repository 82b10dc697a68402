use super::space::DgField;

fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Hierarchical moment limiter, applied component by component.
///
/// Starting from the highest coefficient, `U^ℓ` is replaced by
/// `minmod(U^ℓ, ΔU^{ℓ−1}_fwd / √(4ℓ²−1), ΔU^{ℓ−1}_bwd / √(4ℓ²−1))`; the sweep
/// moves down one level only while coefficients keep changing. Differences
/// use the unlimited neighbor data and cell averages are never modified.
///
/// Returns the number of coefficients changed.
pub fn moment_limit(u: &mut DgField) -> usize {
    let k = u.degree;
    if k == 0 {
        return 0;
    }
    let orig = u.clone();
    let grid = u.grid;
    let mut changed = 0;
    let scale: Vec<f64> = (0..=k).map(|l| 1.0 / ((4 * l * l) as f64 - 1.0).sqrt()).collect();
    for i in 0..grid.elements {
        let (ip, im) = (grid.next(i), grid.prev(i));
        for c in 0..u.ncomp {
            for l in (1..=k).rev() {
                let own = orig.coeff(i, l - 1, c);
                let fwd = (orig.coeff(ip, l - 1, c) - own) * scale[l];
                let bwd = (own - orig.coeff(im, l - 1, c)) * scale[l];
                let cur = orig.coeff(i, l, c);
                let lim = minmod(cur, fwd, bwd);
                if lim == cur {
                    break;
                }
                *u.coeff_mut(i, l, c) = lim;
                changed += 1;
            }
        }
    }
    changed
}
