//! Forward-mode dual numbers with five tangent directions.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::closure::formulas::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dual5 {
    pub v: f64,
    pub d: [f64; 5],
}

impl Dual5 {
    pub fn constant(v: f64) -> Self {
        Dual5 { v, d: [0.0; 5] }
    }

    pub fn variable(v: f64, i: usize) -> Self {
        let mut d = [0.0; 5];
        d[i] = 1.0;
        Dual5 { v, d }
    }

    fn map(self, v: f64, scale: f64) -> Self {
        let mut d = self.d;
        for x in d.iter_mut() {
            *x *= scale;
        }
        Dual5 { v, d }
    }
}

impl Real for Dual5 {
    fn cst(v: f64) -> Self {
        Dual5::constant(v)
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.map(s, 0.5 / s)
    }
    fn value(self) -> f64 {
        self.v
    }
}

impl Add for Dual5 {
    type Output = Dual5;
    fn add(self, o: Dual5) -> Dual5 {
        let mut d = self.d;
        for i in 0..5 {
            d[i] += o.d[i];
        }
        Dual5 { v: self.v + o.v, d }
    }
}

impl Sub for Dual5 {
    type Output = Dual5;
    fn sub(self, o: Dual5) -> Dual5 {
        let mut d = self.d;
        for i in 0..5 {
            d[i] -= o.d[i];
        }
        Dual5 { v: self.v - o.v, d }
    }
}

impl Mul for Dual5 {
    type Output = Dual5;
    fn mul(self, o: Dual5) -> Dual5 {
        let mut d = [0.0; 5];
        for i in 0..5 {
            d[i] = self.d[i] * o.v + self.v * o.d[i];
        }
        Dual5 { v: self.v * o.v, d }
    }
}

impl Div for Dual5 {
    type Output = Dual5;
    fn div(self, o: Dual5) -> Dual5 {
        let v = self.v / o.v;
        let mut d = [0.0; 5];
        for i in 0..5 {
            d[i] = (self.d[i] - v * o.d[i]) / o.v;
        }
        Dual5 { v, d }
    }
}

impl Neg for Dual5 {
    type Output = Dual5;
    fn neg(self) -> Dual5 {
        self.map(-self.v, -1.0)
    }
}

impl Add<f64> for Dual5 {
    type Output = Dual5;
    fn add(self, o: f64) -> Dual5 {
        Dual5 { v: self.v + o, d: self.d }
    }
}

impl Sub<f64> for Dual5 {
    type Output = Dual5;
    fn sub(self, o: f64) -> Dual5 {
        Dual5 { v: self.v - o, d: self.d }
    }
}

impl Mul<f64> for Dual5 {
    type Output = Dual5;
    fn mul(self, o: f64) -> Dual5 {
        self.map(self.v * o, o)
    }
}

impl Div<f64> for Dual5 {
    type Output = Dual5;
    fn div(self, o: f64) -> Dual5 {
        self.map(self.v / o, 1.0 / o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_quotient_rules() {
        let x = Dual5::variable(2.0, 0);
        let y = Dual5::variable(3.0, 1);
        let f = x * x * y / (x + y) - (x * 0.5).sqrt();
        // ∂/∂x, ∂/∂y of x²y/(x+y) − √(x/2)
        let dfdx = (2.0 * 2.0 * 3.0 * 5.0 - 4.0 * 3.0) / 25.0 - 0.25 / 1.0;
        let dfdy = (4.0 * 5.0 - 12.0) / 25.0;
        assert!((f.v - (12.0 / 5.0 - 1.0)).abs() < 1e-15);
        assert!((f.d[0] - dfdx).abs() < 1e-15);
        assert!((f.d[1] - dfdy).abs() < 1e-15);
        assert_eq!(&f.d[2..], &[0.0; 3]);
    }
}
