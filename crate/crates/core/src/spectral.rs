//! Adjacency-tensor application and spectral radius via power iteration.
//!
//! The adjacency tensor of a k-uniform hypergraph weights each edge's
//! index tuples by `1/(k-1)!`, so summing it against `x` collapses, per
//! coordinate `i`, to the sum over edges containing `i` of the product of
//! the other endpoints' entries — [`apply_adjacency`] computes exactly
//! that.
//!
//! An eigenpair satisfies `(A x)_i = lambda * x_i^(k-1)`. For a connected
//! hypergraph with at least one edge the spectral radius is the unique
//! eigenvalue with a positive eigenvector, and the classical bracketing
//! power iteration finds it: for positive `x` the ratios
//! `(A x)_i / x_i^(k-1)` bracket the spectral radius, the minimum ratio is
//! nondecreasing and the maximum nonincreasing across iterations, and the
//! update `x <- normalize((A x)^(1/(k-1)))` closes the bracket.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// Default bracket-width stopping tolerance.
pub const DEFAULT_POWER_TOL: f64 = 1e-10;

/// Default iteration limit.
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Relative slack when checking bracket monotonicity in floating point.
const BRACKET_SLACK: f64 = 1e-12;

/// A converged spectral-radius approximation with its eigenvector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenPair {
    /// Midpoint of the final eigenvalue bracket.
    pub rho: f64,
    /// Positive eigenvector normalized so the k-th powers sum to 1.
    pub x: Vec<f64>,
    /// `max_i |(A x)_i - rho * x_i^(k-1)|` at the returned `x`.
    pub residual: f64,
    /// Iterations performed until the bracket closed.
    pub iterations: usize,
    /// Final lower eigenvalue bound.
    pub lambda_min: f64,
    /// Final upper eigenvalue bound.
    pub lambda_max: f64,
    /// Iterations on which a bracket bound moved the wrong way beyond
    /// floating-point slack. Zero on every honest run.
    pub bracket_violations: usize,
}

/// Applies the adjacency tensor: `(A x)_i = sum over edges e containing i
/// of the product of `x_j` for the other endpoints `j` of `e`.
pub fn apply_adjacency(g: &UniformHypergraph, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != g.n() {
        return Err(Error::InvalidInput(format!(
            "vector length {} does not match vertex count {}",
            x.len(),
            g.n()
        )));
    }
    let mut out = vec![0.0; g.n()];
    for e in g.edges() {
        for (pos, &i) in e.iter().enumerate() {
            let mut product = 1.0;
            for (other, &j) in e.iter().enumerate() {
                if other != pos {
                    product *= x[j];
                }
            }
            out[i] += product;
        }
    }
    Ok(out)
}

/// Spectral radius with default tolerance and iteration limit.
pub fn spectral_radius_default(g: &UniformHypergraph) -> Result<EigenPair> {
    spectral_radius(g, DEFAULT_POWER_TOL, DEFAULT_MAX_ITER)
}

/// Bracketing power iteration for the spectral radius.
///
/// Requires a connected hypergraph with at least one edge. Starts from the
/// uniform positive vector, stops when `lambda_max - lambda_min <= tol`,
/// and reports the bracket midpoint. Errors with the final bracket when
/// the iteration limit is reached first.
pub fn spectral_radius(g: &UniformHypergraph, tol: f64, max_iter: usize) -> Result<EigenPair> {
    if g.num_edges() == 0 {
        return Err(Error::InvalidInput("spectral radius requires at least one edge".into()));
    }
    if !g.is_connected() {
        return Err(Error::InvalidInput("spectral radius requires a connected hypergraph".into()));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let n = g.n();
    let k = g.k();
    let exponent = 1.0 / (k as f64 - 1.0);
    // Uniform start with unit sum of k-th powers.
    let mut x = vec![(1.0 / n as f64).powf(1.0 / k as f64); n];
    let mut prev_min = f64::NEG_INFINITY;
    let mut prev_max = f64::INFINITY;
    let mut violations = 0usize;
    for iteration in 1..=max_iter {
        let y = apply_adjacency(g, &x)?;
        let mut lambda_min = f64::INFINITY;
        let mut lambda_max = f64::NEG_INFINITY;
        for i in 0..n {
            let ratio = y[i] / x[i].powi(k as i32 - 1);
            lambda_min = lambda_min.min(ratio);
            lambda_max = lambda_max.max(ratio);
        }
        let slack = BRACKET_SLACK * lambda_max.abs().max(1.0);
        if lambda_min < prev_min - slack || lambda_max > prev_max + slack {
            violations += 1;
        }
        prev_min = lambda_min;
        prev_max = lambda_max;
        if lambda_max - lambda_min <= tol {
            let rho = 0.5 * (lambda_min + lambda_max);
            let residual = y
                .iter()
                .zip(&x)
                .map(|(&yi, &xi)| (yi - rho * xi.powi(k as i32 - 1)).abs())
                .fold(0.0f64, f64::max);
            return Ok(EigenPair {
                rho,
                x,
                residual,
                iterations: iteration,
                lambda_min,
                lambda_max,
                bracket_violations: violations,
            });
        }
        // x <- normalize(y^(1/(k-1))) with sum of k-th powers equal to 1.
        let mut z: Vec<f64> = y.iter().map(|&yi| yi.powf(exponent)).collect();
        let norm: f64 = z.iter().map(|&zi| zi.powi(k as i32)).sum::<f64>().powf(1.0 / k as f64);
        for zi in &mut z {
            *zi /= norm;
        }
        x = z;
    }
    Err(Error::Convergence {
        max_iter,
        lambda_min: prev_min,
        lambda_max: prev_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(k: usize, n: usize, edges: &[&[usize]]) -> UniformHypergraph {
        UniformHypergraph::new(k, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    /// Oracle: the tensor definition summed over all permuted index tuples,
    /// each weighted 1/(k-1)!. Must agree exactly with the collapsed form.
    fn apply_adjacency_oracle(g: &UniformHypergraph, x: &[f64]) -> Vec<f64> {
        fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
            if items.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for (i, &item) in items.iter().enumerate() {
                let mut rest = items.to_vec();
                rest.remove(i);
                for mut tail in permutations(&rest) {
                    tail.insert(0, item);
                    out.push(tail);
                }
            }
            out
        }
        let k = g.k();
        let factorial: f64 = (1..k).map(|i| i as f64).product();
        let mut out = vec![0.0; g.n()];
        for e in g.edges() {
            for &i in e {
                let others: Vec<usize> = e.iter().copied().filter(|&j| j != i).collect();
                for perm in permutations(&others) {
                    let product: f64 = perm.iter().map(|&j| x[j]).product();
                    out[i] += product / factorial;
                }
            }
        }
        out
    }

    #[test]
    fn apply_matches_worked_example() {
        // Single edge {0,1,2}, x = (1,2,3): products of the other two.
        let g = graph(3, 3, &[&[0, 1, 2]]);
        let y = apply_adjacency(&g, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(y, vec![6.0, 3.0, 2.0]);
    }

    #[test]
    fn apply_matches_permutation_oracle() {
        let cases = vec![
            graph(3, 3, &[&[0, 1, 2]]),
            graph(3, 5, &[&[0, 1, 2], &[2, 3, 4]]),
            graph(3, 6, &[&[0, 1, 2], &[0, 3, 2], &[1, 4, 5]]),
            graph(4, 7, &[&[0, 1, 2, 3], &[3, 4, 5, 6]]),
            graph(4, 9, &[&[0, 1, 2, 3], &[0, 4, 5, 6], &[0, 2, 7, 8]]),
        ];
        for g in cases {
            let x: Vec<f64> = (0..g.n()).map(|i| 0.3 + 0.17 * i as f64).collect();
            let fast = apply_adjacency(&g, &x).unwrap();
            let slow = apply_adjacency_oracle(&g, &x);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() <= 1e-12, "fast {a} vs oracle {b}");
            }
        }
    }

    #[test]
    fn single_edge_has_unit_radius() {
        let g = graph(3, 3, &[&[0, 1, 2]]);
        let pair = spectral_radius_default(&g).unwrap();
        assert_eq!(pair.rho, 1.0);
        assert_eq!(pair.iterations, 1);
        assert_eq!(pair.bracket_violations, 0);
    }

    #[test]
    fn star_radius_is_kth_root_of_edge_count() {
        // Star with 4 edges, k = 3: radius 4^(1/3).
        let edges: Vec<Vec<usize>> = (0..4).map(|i| vec![0, 2 * i + 1, 2 * i + 2]).collect();
        let g = UniformHypergraph::new(3, 9, edges).unwrap();
        let pair = spectral_radius_default(&g).unwrap();
        assert!((pair.rho - 4f64.powf(1.0 / 3.0)).abs() < 1e-9, "rho = {}", pair.rho);
        assert!(pair.residual <= DEFAULT_POWER_TOL);
        assert_eq!(pair.bracket_violations, 0);
        let norm: f64 = pair.x.iter().map(|&xi| xi.powi(3)).sum();
        assert!((norm - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn two_edge_nonlinear_cycle_radius() {
        // Closed form: two edges sharing two vertices, k = 3, has radius
        // 2^(2/3) (scaled eigenvector (c, c, a, a) with c = 2^(1/3) a).
        let g = graph(3, 4, &[&[0, 1, 2], &[0, 3, 2]]);
        let pair = spectral_radius_default(&g).unwrap();
        assert!((pair.rho - 2f64.powf(2.0 / 3.0)).abs() < 1e-9, "rho = {}", pair.rho);
    }

    #[test]
    fn rejects_bad_inputs() {
        let disconnected = graph(3, 6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(spectral_radius_default(&disconnected).is_err());
        let g = graph(3, 3, &[&[0, 1, 2]]);
        assert!(spectral_radius(&g, 0.0, 10).is_err());
        assert!(apply_adjacency(&g, &[1.0]).is_err());
    }

    #[test]
    fn relabeling_leaves_radius_unchanged() {
        let g = graph(3, 6, &[&[0, 1, 2], &[0, 3, 2], &[1, 4, 5]]);
        let relabeled = graph(3, 6, &[&[5, 4, 3], &[5, 2, 3], &[4, 1, 0]]);
        let a = spectral_radius_default(&g).unwrap();
        let b = spectral_radius_default(&relabeled).unwrap();
        assert!((a.rho - b.rho).abs() <= 10.0 * DEFAULT_POWER_TOL);
    }
}
