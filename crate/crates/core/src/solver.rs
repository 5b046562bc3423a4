//! Mean-zero solutions of `Δ0 φ = b` on the game graph.
//!
//! The game graph is connected, so the kernel of Δ0 is exactly the
//! constants. Conjugate gradient started from zero with `b` projected onto
//! the mean-zero subspace stays in that subspace, where Δ0 is positive
//! definite; its result is the pseudoinverse solution.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{GameError, Result};
use crate::graph::GameGraph;

/// Default relative residual tolerance.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-10;

/// Largest graph for which the dense eigendecomposition fallback is used.
pub const DENSE_FALLBACK_MAX_NODES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    ConjugateGradient,
    DenseEigen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub phi: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub method: SolveMethod,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn remove_mean(v: &mut [f64]) {
    if v.is_empty() {
        return;
    }
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
}

fn residual_norm(graph: &GameGraph, phi: &[f64], b: &[f64]) -> Result<f64> {
    let lap = graph.laplacian_apply(phi)?;
    Ok(lap.iter().zip(b).map(|(l, r)| (l - r) * (l - r)).sum::<f64>().sqrt())
}

/// Returns the mean-zero `φ` with `Δ0 φ = b`.
///
/// The component of `b` along the constants must not exceed half of
/// `tol·max(1, ‖b‖)`; the returned residual satisfies
/// `‖Δ0 φ − b‖ ≤ tol·max(1, ‖b‖)`.
pub fn laplacian_pinv_solve(graph: &GameGraph, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    Ok(laplacian_pinv_solve_detailed(graph, b, tol)?.phi)
}

pub fn laplacian_pinv_solve_detailed(graph: &GameGraph, b: &[f64], tol: f64) -> Result<Solution> {
    let n = graph.num_nodes();
    if b.len() != n {
        return Err(GameError::ShapeMismatch(format!(
            "right-hand side has length {}, graph has {n} nodes",
            b.len()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(GameError::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let b_norm = norm(b);
    let threshold = tol * b_norm.max(1.0);
    let constant_part = b.iter().sum::<f64>().abs() / (n as f64).sqrt();
    if constant_part > 0.5 * threshold {
        return Err(GameError::Precondition(format!(
            "right-hand side is not orthogonal to the constants \
             (constant component {constant_part:e}, norm {b_norm:e})"
        )));
    }
    if b_norm == 0.0 {
        return Ok(Solution {
            phi: vec![0.0; n],
            residual: 0.0,
            iterations: 0,
            method: SolveMethod::ConjugateGradient,
        });
    }

    let mut rhs = b.to_vec();
    remove_mean(&mut rhs);

    match conjugate_gradient(graph, &rhs, 0.5 * threshold, 10 * n)? {
        Ok(mut sol) => {
            sol.residual = residual_norm(graph, &sol.phi, b)?;
            Ok(sol)
        }
        Err(cg_residual) if n <= DENSE_FALLBACK_MAX_NODES => {
            log::debug!("CG stalled at residual {cg_residual:e}; using dense fallback");
            let phi = dense_pinv_solve(graph, &rhs)?;
            let residual = residual_norm(graph, &phi, b)?;
            if residual > threshold {
                return Err(GameError::Numeric {
                    message: "dense pseudoinverse solve did not reach the tolerance".into(),
                    residual,
                });
            }
            Ok(Solution {
                phi,
                residual,
                iterations: 0,
                method: SolveMethod::DenseEigen,
            })
        }
        Err(residual) => Err(GameError::Numeric {
            message: "conjugate gradient did not converge".into(),
            residual,
        }),
    }
}

/// CG on the mean-zero subspace. The inner `Err` carries the final residual
/// when the iteration budget runs out.
fn conjugate_gradient(
    graph: &GameGraph,
    rhs: &[f64],
    threshold: f64,
    max_iter: usize,
) -> Result<std::result::Result<Solution, f64>> {
    let n = rhs.len();
    let mut x = vec![0.0; n];
    let mut r = rhs.to_vec();
    let mut p = r.clone();
    let mut rs = dot(&r, &r);
    let mut iterations = 0;

    while rs.sqrt() > threshold && iterations < max_iter {
        let mut ap = graph.laplacian_apply(&p)?;
        remove_mean(&mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            break;
        }
        let alpha = rs / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rs_new = dot(&r, &r);
        let beta = rs_new / rs;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rs = rs_new;
        iterations += 1;
    }

    remove_mean(&mut x);
    let residual = residual_norm(graph, &x, rhs)?;
    if residual <= threshold {
        Ok(Ok(Solution {
            phi: x,
            residual,
            iterations,
            method: SolveMethod::ConjugateGradient,
        }))
    } else {
        Ok(Err(residual))
    }
}

/// Pseudoinverse solve through a full symmetric eigendecomposition of the
/// assembled Laplacian.
pub fn dense_pinv_solve(graph: &GameGraph, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = graph.num_nodes();
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for e in graph.edges() {
        lap[(e.from, e.to)] -= 1.0;
        lap[(e.to, e.from)] -= 1.0;
        lap[(e.from, e.from)] += 1.0;
        lap[(e.to, e.to)] += 1.0;
    }
    let eig = SymmetricEigen::new(lap);
    let max_ev = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let cutoff = 1e-9 * max_ev.max(1.0);
    let b = nalgebra::DVector::from_column_slice(rhs);
    let coeffs = eig.eigenvectors.transpose() * &b;
    let mut phi = nalgebra::DVector::<f64>::zeros(n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() > cutoff {
            phi += eig.eigenvectors.column(k) * (coeffs[k] / lambda);
        }
    }
    let mut phi: Vec<f64> = phi.iter().copied().collect();
    remove_mean(&mut phi);
    Ok(phi)
}
