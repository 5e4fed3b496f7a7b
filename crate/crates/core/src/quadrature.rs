//! Gauss-Legendre rules on the unit interval (0, 1).
//!
//! Nodes are roots of the Legendre polynomial found by Newton iteration from
//! the Chebyshev initial guess; weights follow from the derivative. Rules are
//! exact for polynomials of degree <= 2 order - 1 and the weights sum to 1.

use crate::error::{Error, Result};

const MIN_ORDER: usize = 2;
const MAX_ORDER: usize = 256;

/// A fixed Gauss-Legendre rule mapped to (0, 1): nodes strictly inside the
/// interval, weights positive and summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    order: usize,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Approximates the integral of `f` over (0, 1). Works for any output
    /// that forms a vector space over f64 (reals, complex values).
    pub fn integrate<T>(&self, f: impl Fn(f64) -> T) -> T
    where
        T: Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&t, &w)| acc + f(t) * w)
    }
}

/// Evaluates the Legendre polynomial P_n and its derivative at x by the
/// three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1), stable away from the
    // endpoints; Gauss nodes never touch them.
    let dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Builds the Gauss-Legendre rule of the given order on (0, 1).
///
/// Orders outside 2..=256 are rejected: order 1 cannot see the integrand's
/// curvature and larger tables serve no caller in this crate.
pub fn make_quadrature(order: usize) -> Result<QuadratureRule> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::Input(format!(
            "quadrature order must lie in {MIN_ORDER}..={MAX_ORDER}, got {order}"
        )));
    }
    let n = order;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 1..=n {
        // Chebyshev guess for the i-th root in descending order.
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                // One polishing step after convergence.
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        nodes.push((1.0 + x) / 2.0);
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    // Newton walked the roots in descending x; flip to ascending nodes.
    nodes.reverse();
    weights.reverse();
    Ok(QuadratureRule {
        nodes,
        weights,
        order,
    })
}
