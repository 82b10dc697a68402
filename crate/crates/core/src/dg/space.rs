use super::basis::{basis_values, Basis};
use crate::error::{Error, Result};

/// Uniform periodic grid on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub elements: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, elements: usize) -> Result<Self> {
        if elements < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 elements, got {elements}")));
        }
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidConfig(format!("invalid domain [{a}, {b}]")));
        }
        Ok(Grid { a, b, elements })
    }

    pub fn unit(elements: usize) -> Result<Self> {
        Self::new(0.0, 1.0, elements)
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.elements as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.a + (i as f64 + 0.5) * self.dx()
    }

    /// Physical coordinate of reference point `ξ` in element `i`.
    pub fn x(&self, i: usize, xi: f64) -> f64 {
        self.center(i) + 0.5 * self.dx() * xi
    }

    /// Element containing `x`, wrapped periodically, with the local coordinate.
    pub fn locate(&self, x: f64) -> (usize, f64) {
        let s = (x - self.a).rem_euclid(self.length()) / self.dx();
        let i = (s.floor() as usize).min(self.elements - 1);
        (i, 2.0 * (s - i as f64) - 1.0)
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.elements
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.elements - 1) % self.elements
    }
}

/// Piecewise-polynomial field with `ncomp` components in the orthonormal
/// Legendre basis. Coefficients are stored element-major, then basis index,
/// then component.
#[derive(Debug, Clone, PartialEq)]
pub struct DgField {
    pub grid: Grid,
    pub degree: usize,
    pub ncomp: usize,
    pub data: Vec<f64>,
}

impl DgField {
    pub fn zeros(grid: Grid, degree: usize, ncomp: usize) -> Self {
        DgField {
            grid,
            degree,
            ncomp,
            data: vec![0.0; grid.elements * (degree + 1) * ncomp],
        }
    }

    pub fn n_basis(&self) -> usize {
        self.degree + 1
    }

    #[inline]
    fn index(&self, i: usize, l: usize, c: usize) -> usize {
        (i * (self.degree + 1) + l) * self.ncomp + c
    }

    #[inline]
    pub fn coeff(&self, i: usize, l: usize, c: usize) -> f64 {
        self.data[self.index(i, l, c)]
    }

    #[inline]
    pub fn coeff_mut(&mut self, i: usize, l: usize, c: usize) -> &mut f64 {
        let k = self.index(i, l, c);
        &mut self.data[k]
    }

    /// Coefficients of element `i`, basis-major.
    pub fn element(&self, i: usize) -> &[f64] {
        let n = (self.degree + 1) * self.ncomp;
        &self.data[i * n..(i + 1) * n]
    }

    pub fn element_mut(&mut self, i: usize) -> &mut [f64] {
        let n = (self.degree + 1) * self.ncomp;
        &mut self.data[i * n..(i + 1) * n]
    }

    /// Cell average of component `c` (the `ℓ = 0` coefficient).
    pub fn average(&self, i: usize, c: usize) -> f64 {
        self.coeff(i, 0, c)
    }

    /// `∫ u_c dx` over the domain.
    pub fn integral(&self, c: usize) -> f64 {
        let dx = self.grid.dx();
        (0..self.grid.elements).map(|i| self.average(i, c)).sum::<f64>() * dx
    }

    /// Values of all components in element `i` at tabulated basis values.
    pub fn eval_with(&self, i: usize, phi: &[f64], out: &mut [f64]) {
        let el = self.element(i);
        out[..self.ncomp].fill(0.0);
        for (l, &p) in phi.iter().enumerate().take(self.degree + 1) {
            let row = &el[l * self.ncomp..(l + 1) * self.ncomp];
            for c in 0..self.ncomp {
                out[c] += p * row[c];
            }
        }
    }

    /// Values of all components at reference point `ξ` of element `i`.
    pub fn eval(&self, i: usize, xi: f64) -> Vec<f64> {
        let phi = basis_values(self.degree, xi);
        let mut out = vec![0.0; self.ncomp];
        self.eval_with(i, &phi, &mut out);
        out
    }

    /// Values at a physical point (right-continuous at element edges).
    pub fn eval_at(&self, x: f64) -> Vec<f64> {
        let (i, xi) = self.grid.locate(x);
        self.eval(i, xi)
    }

    /// `self += a · other`
    pub fn axpy(&mut self, a: f64, other: &DgField) {
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += a * y;
        }
    }

    /// `a · self + b · other`
    pub fn lincomb(&self, a: f64, other: &DgField, b: f64) -> DgField {
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = a * *x + b * y;
        }
        out
    }

    /// Single component as a scalar field.
    pub fn component(&self, c: usize) -> DgField {
        let mut out = DgField::zeros(self.grid, self.degree, 1);
        for i in 0..self.grid.elements {
            for l in 0..=self.degree {
                *out.coeff_mut(i, l, 0) = self.coeff(i, l, c);
            }
        }
        out
    }
}

/// L² projection of `f` onto the broken degree-`degree` space.
///
/// `f(x, out)` writes the `ncomp` component values at `x`.
pub fn project(grid: Grid, degree: usize, ncomp: usize, mut f: impl FnMut(f64, &mut [f64])) -> DgField {
    let basis = Basis::new(degree);
    project_with(&basis, grid, ncomp, |_, _, x, out| f(x, out))
}

/// L² projection with a callback that also receives the element index and
/// quadrature point index.
pub fn project_with(
    basis: &Basis,
    grid: Grid,
    ncomp: usize,
    mut f: impl FnMut(usize, usize, f64, &mut [f64]),
) -> DgField {
    let mut out = DgField::zeros(grid, basis.degree, ncomp);
    let mut val = vec![0.0; ncomp];
    for i in 0..grid.elements {
        for (q, &xi) in basis.nodes.iter().enumerate() {
            f(i, q, grid.x(i, xi), &mut val);
            let w = 0.5 * basis.weights[q];
            for l in 0..basis.n_basis() {
                let s = w * basis.phi[q][l];
                for c in 0..ncomp {
                    *out.coeff_mut(i, l, c) += s * val[c];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn grid_geometry() {
        let g = Grid::new(-1.0, 3.0, 8).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.center(0), -0.75);
        assert_eq!(g.x(1, 1.0), 0.0);
        let (i, xi) = g.locate(0.1);
        assert_eq!(i, 2);
        assert!((xi + 0.6).abs() < 1e-14);
        assert_eq!(g.locate(3.25).0, 0);
        assert_eq!(g.prev(0), 7);
        assert_eq!(g.next(7), 0);
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 1.0, 4).is_err());
    }

    #[test]
    fn constant_projects_to_averages() {
        let f = project(Grid::unit(5).unwrap(), 2, 2, |_, out| {
            out[0] = 2.5;
            out[1] = -1.0;
        });
        for i in 0..5 {
            assert!((f.average(i, 0) - 2.5).abs() < 1e-15);
            assert!((f.average(i, 1) + 1.0).abs() < 1e-15);
            for l in 1..3 {
                assert!(f.coeff(i, l, 0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn polynomials_of_degree_k_are_reproduced() {
        let g = Grid::unit(4).unwrap();
        let f = project(g, 2, 1, |x, out| out[0] = 3.0 * x * x - x + 0.5);
        for i in 0..4 {
            for xi in [-1.0, -0.3, 0.0, 0.8, 1.0] {
                let x = g.x(i, xi);
                assert!((f.eval(i, xi)[0] - (3.0 * x * x - x + 0.5)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn projection_error_is_third_order() {
        let err = |m: usize| {
            let g = Grid::unit(m).unwrap();
            let f = project(g, 2, 1, |x, out| out[0] = (2.0 * PI * x).sin());
            let b = Basis::with_points(2, 8);
            let mut e = 0.0;
            for i in 0..m {
                for (q, &xi) in b.nodes.iter().enumerate() {
                    let d = f.eval(i, xi)[0] - (2.0 * PI * g.x(i, xi)).sin();
                    e += 0.5 * g.dx() * b.weights[q] * d * d;
                }
            }
            e.sqrt()
        };
        let (e32, e64) = (err(32), err(64));
        let order = (e32 / e64).log2();
        assert!(order > 2.9, "order {order}");
    }

    #[test]
    fn integral_of_projection() {
        let f = project(Grid::unit(16).unwrap(), 2, 1, |x, out| out[0] = 1.0 + (2.0 * PI * x).cos());
        assert!((f.integral(0) - 1.0).abs() < 1e-14);
    }
}
