//! Gauss-Jacobi rules on `[0, 1]` for the weight `t^alpha (1 - t)^beta`,
//! built with the Golub-Welsch eigenvalue method.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::special::log_gamma;
use num_complex::Complex64;

/// Nodes and weights of an `n`-point rule for `int_0^1 t^alpha (1-t)^beta g(t) dt`.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

fn beta_fn(x: f64, y: f64) -> Result<f64> {
    let lg = |v: f64| log_gamma(Complex64::new(v, 0.0)).map(|c| c.re);
    Ok((lg(x)? + lg(y)? - lg(x + y)?).exp())
}

impl GaussJacobi {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Quadrature(format!("need at least 2 nodes, got {n}")));
        }
        if !(alpha > -1.0 && beta > -1.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::Quadrature(format!(
                "Jacobi exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        // On [-1, 1]: weight (1-x)^ja (1+x)^jb with t = (1+x)/2.
        let (ja, jb) = (beta, alpha);
        let s = ja + jb;
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            let k = i as f64;
            let diag = if i == 0 {
                (jb - ja) / (s + 2.0)
            } else {
                (jb * jb - ja * ja) / ((2.0 * k + s) * (2.0 * k + s + 2.0))
            };
            jac[(i, i)] = diag;
            if i + 1 < n {
                let m = k + 1.0;
                let off2 = if i == 0 {
                    4.0 * (1.0 + ja) * (1.0 + jb) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
                } else {
                    4.0 * m * (m + ja) * (m + jb) * (m + s)
                        / ((2.0 * m + s).powi(2) * (2.0 * m + s + 1.0) * (2.0 * m + s - 1.0))
                };
                let off = off2.sqrt();
                jac[(i, i + 1)] = off;
                jac[(i + 1, i)] = off;
            }
        }
        let eig = SymmetricEigen::new(jac);
        let mu0 = beta_fn(alpha + 1.0, beta + 1.0)?;
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = eig.eigenvalues[i];
                let v0 = eig.eigenvectors[(0, i)];
                (0.5 * (1.0 + x), mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self {
            nodes,
            weights,
            alpha,
            beta,
        })
    }

    pub fn legendre(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 0.0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_0^1 t^alpha (1-t)^beta g(t) dt`.
    pub fn integrate<F>(&self, mut g: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| g(t) * w)
            .sum()
    }

    /// `int_lo^hi g(t) dt` using the rule's nodes as a plain Legendre rule.
    /// Only meaningful when `alpha = beta = 0`.
    pub fn integrate_on<F>(&self, lo: f64, hi: f64, mut g: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        let h = hi - lo;
        self.integrate(|s| g(lo + h * s)) * h
    }
}
