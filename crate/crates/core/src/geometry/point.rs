//! Numerical search for correlation matrices in `M_1(G, H)`.
//!
//! The unknowns are the off-diagonal entries on the edges of `H`; all other
//! entries are fixed by the model (unit diagonal, zeros off `H`). The search
//! minimizes `½ Σ (Σ^{-1})_kl²` over `kl ∉ G` with damped Gauss–Newton
//! (Levenberg–Marquardt) steps, using `∂K/∂σ_st = -K E^{st} K`, and rejects
//! every trial step that leaves the positive definite cone.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{max_norm, membership_residual, SymMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct PointOptions {
    /// Required max-norm of the membership residual.
    pub residual_tol: f64,
    /// Iteration budget per restart.
    pub max_iter: usize,
    pub restarts: usize,
}

impl Default for PointOptions {
    fn default() -> Self {
        PointOptions {
            residual_tol: 1e-10,
            max_iter: 5000,
            restarts: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelPoint {
    pub matrix: SymMatrix,
    /// Max-norm of the membership residual at `matrix`.
    pub residual: f64,
    /// 0-based index of the restart that converged.
    pub restart: usize,
    pub iterations: usize,
}

/// Residuals below this are treated as exact; polishing stops here.
const POLISH_FLOOR: f64 = 1e-15;
const POLISH_ITERS: usize = 200;

/// Finds a correlation matrix in `M_1(G, H)`. Restart `r` draws its start
/// from a ChaCha stream seeded with `seed` on stream `r`, with entries
/// uniform in `[-0.3/n, 0.3/n]`. Returns the first restart that converges;
/// on failure the error carries the lowest residual seen.
pub fn find_model_point(g: &Graph, h: &Graph, seed: u64, opts: &PointOptions) -> Result<ModelPoint> {
    if g.n() != h.n() {
        return Err(Error::arg("graphs have different vertex counts"));
    }
    let mut best = f64::INFINITY;
    for restart in 0..opts.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let solver = Solver::new(g, h);
        let bound = 0.3 / g.n() as f64;
        let x0: Vec<f64> = solver.vars.iter().map(|_| rng.gen_range(-bound..=bound)).collect();
        let (x, iterations) = solver.run(x0, opts);
        let matrix = solver.matrix(&x);
        let residual = max_norm(&membership_residual(&matrix, g, h)?);
        if residual <= opts.residual_tol {
            return Ok(ModelPoint {
                matrix,
                residual,
                restart,
                iterations,
            });
        }
        best = best.min(residual);
    }
    Err(Error::NoConvergence { best_residual: best })
}

struct Solver {
    n: usize,
    vars: Vec<(usize, usize)>,
    cons: Vec<(usize, usize)>,
}

impl Solver {
    fn new(g: &Graph, h: &Graph) -> Self {
        Solver {
            n: g.n(),
            vars: h.edges(),
            cons: g.non_edges(),
        }
    }

    fn matrix(&self, x: &[f64]) -> SymMatrix {
        let mut m = SymMatrix::identity(self.n);
        for (&(s, t), &v) in self.vars.iter().zip(x) {
            m.set(s, t, v);
        }
        m
    }

    /// Inverse of the matrix at `x`, or `None` outside the PD cone.
    fn inverse(&self, x: &[f64]) -> Option<DMatrix<f64>> {
        let m = self.matrix(x);
        if !m.is_pd() {
            return None;
        }
        nalgebra::Cholesky::new(m.to_dense()).map(|c| c.inverse())
    }

    fn residual(&self, k: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(self.cons.len(), self.cons.iter().map(|&(a, b)| k[(a, b)]))
    }

    fn jacobian(&self, k: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.cons.len(), self.vars.len(), |r, c| {
            let (a, b) = self.cons[r];
            let (s, t) = self.vars[c];
            -(k[(a, s)] * k[(t, b)] + k[(a, t)] * k[(s, b)])
        })
    }

    /// Returns the final iterate and the number of iterations used.
    fn run(&self, mut x: Vec<f64>, opts: &PointOptions) -> (Vec<f64>, usize) {
        let Some(mut k) = self.inverse(&x) else {
            return (x, 0);
        };
        let mut r = self.residual(&k);
        let mut lambda = 1e-3;
        let mut polish = 0;
        for iter in 0..opts.max_iter {
            let rmax = r.amax();
            if rmax <= POLISH_FLOOR || self.vars.is_empty() {
                return (x, iter);
            }
            if rmax <= opts.residual_tol {
                polish += 1;
                if polish > POLISH_ITERS {
                    return (x, iter);
                }
            }
            let j = self.jacobian(&k);
            let jt = j.transpose();
            let a = &jt * &j;
            let grad = &jt * &r;
            let f0 = r.norm_squared();
            let mut accepted = false;
            while lambda < 1e12 {
                let mut damped = a.clone();
                for d in 0..damped.nrows() {
                    damped[(d, d)] += lambda * (1.0 + a[(d, d)]);
                }
                let Some(step) = damped.cholesky().map(|c| c.solve(&(-&grad))) else {
                    lambda *= 4.0;
                    continue;
                };
                let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                if let Some(kt) = self.inverse(&trial) {
                    let rt = self.residual(&kt);
                    if rt.norm_squared() < f0 {
                        x = trial;
                        k = kt;
                        r = rt;
                        lambda = (lambda / 3.0).max(1e-15);
                        accepted = true;
                        break;
                    }
                }
                lambda *= 4.0;
            }
            if !accepted {
                return (x, iter);
            }
        }
        (x, opts.max_iter)
    }
}
