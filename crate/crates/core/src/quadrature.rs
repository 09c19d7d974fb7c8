//! Quadrature rules on `[0, 1]` for the Duhamel time integral.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum QuadratureKind {
    GaussLegendre,
    CompositeSimpson,
}

/// Nodes and weights on `[0, 1]`; weights sum to one and the rule is exact
/// on polynomials up to its stated degree (`2n−1` for Gauss-Legendre with
/// `n` nodes, `3` per panel for composite Simpson).
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gauss_legendre(order: usize) -> Self {
        assert!(order >= 1);
        let (nodes, weights) = gauss_legendre_unit(order);
        QuadratureRule {
            kind: QuadratureKind::GaussLegendre,
            order,
            nodes,
            weights,
        }
    }

    /// `order` node count, odd and at least 3.
    pub fn composite_simpson(order: usize) -> Self {
        assert!(order >= 3 && order % 2 == 1, "Simpson needs an odd node count >= 3");
        let h = 1.0 / (order - 1) as f64;
        let nodes = (0..order).map(|j| j as f64 * h).collect();
        let weights = (0..order)
            .map(|j| {
                let w = if j == 0 || j == order - 1 {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * h / 3.0
            })
            .collect();
        QuadratureRule {
            kind: QuadratureKind::CompositeSimpson,
            order,
            nodes,
            weights,
        }
    }

    pub fn new(kind: QuadratureKind, order: usize) -> Self {
        match kind {
            QuadratureKind::GaussLegendre => Self::gauss_legendre(order),
            QuadratureKind::CompositeSimpson => Self::composite_simpson(order),
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Same kind with twice the resolution, for refinement checks.
    pub fn refined(&self) -> Self {
        match self.kind {
            QuadratureKind::GaussLegendre => Self::gauss_legendre(2 * self.order),
            QuadratureKind::CompositeSimpson => Self::composite_simpson(2 * self.order - 1),
        }
    }

    /// Integrate a scalar function over `[0, t]`.
    pub fn integrate(&self, t: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(t * x))
            .sum::<f64>()
            * t
    }
}

/// Gauss-Legendre nodes/weights mapped to `[0, 1]`, by Newton iteration on
/// the Legendre recurrence.
fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes.push(0.5 * (x + 1.0));
        weights.push(0.5 * w);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
