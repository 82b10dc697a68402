//! Orthonormal Legendre basis on `[−1, 1]` and Gauss–Legendre quadrature.
//!
//! Orthonormality is with respect to `(f, g) = ½∫ f g dξ`, so
//! `φ_ℓ = √(2ℓ+1) P_ℓ`.

/// Legendre polynomials `P_0..=P_n` and their derivatives at `x`.
pub fn legendre(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![0.0; n + 1];
    let mut dp = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = x;
        dp[1] = 1.0;
    }
    for l in 1..n {
        let lf = l as f64;
        p[l + 1] = ((2.0 * lf + 1.0) * x * p[l] - lf * p[l - 1]) / (lf + 1.0);
        dp[l + 1] = dp[l - 1] + (2.0 * lf + 1.0) * p[l];
    }
    (p, dp)
}

/// Orthonormal basis values `φ_0..=φ_k` at `ξ`.
pub fn basis_values(k: usize, xi: f64) -> Vec<f64> {
    let (p, _) = legendre(k, xi);
    p.iter().enumerate().map(|(l, v)| v * (2.0 * l as f64 + 1.0).sqrt()).collect()
}

/// Orthonormal basis values and derivatives at `ξ`.
pub fn basis_values_and_slopes(k: usize, xi: f64) -> (Vec<f64>, Vec<f64>) {
    let (p, dp) = legendre(k, xi);
    let s: Vec<f64> = (0..=k).map(|l| (2.0 * l as f64 + 1.0).sqrt()).collect();
    (
        p.iter().zip(&s).map(|(v, s)| v * s).collect(),
        dp.iter().zip(&s).map(|(v, s)| v * s).collect(),
    )
}

/// `n`-point Gauss–Legendre nodes (ascending) and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev-like initial guess for the i-th largest root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p[n] / dp[n];
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp[n] * dp[n]);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Basis tabulated at the quadrature nodes and element edges.
#[derive(Debug, Clone)]
pub struct Basis {
    pub degree: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `phi[q][ℓ] = φ_ℓ(ξ_q)`
    pub phi: Vec<Vec<f64>>,
    /// `dphi[q][ℓ] = φ'_ℓ(ξ_q)`
    pub dphi: Vec<Vec<f64>>,
    /// `φ_ℓ(−1)`
    pub left: Vec<f64>,
    /// `φ_ℓ(1)`
    pub right: Vec<f64>,
}

impl Basis {
    /// Degree-`k` basis with `k + 4` quadrature points.
    pub fn new(degree: usize) -> Self {
        Self::with_points(degree, degree + 4)
    }

    pub fn with_points(degree: usize, points: usize) -> Self {
        let (nodes, weights) = gauss_legendre(points);
        let (phi, dphi) = nodes.iter().map(|&x| basis_values_and_slopes(degree, x)).unzip();
        Basis {
            degree,
            phi,
            dphi,
            left: basis_values(degree, -1.0),
            right: basis_values(degree, 1.0),
            nodes,
            weights,
        }
    }

    pub fn n_basis(&self) -> usize {
        self.degree + 1
    }

    pub fn n_points(&self) -> usize {
        self.nodes.len()
    }
}
