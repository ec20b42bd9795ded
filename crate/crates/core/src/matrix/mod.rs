//! Dense symmetric matrices: definiteness, minors, CI relations of matrices
//! and their minor/dual/direct-sum counterparts.

mod io;
mod rational;

pub use io::{parse_matrix, parse_rational_matrix};
pub use rational::RationalSymMatrix;

use std::fmt;

use nalgebra::DMatrix;
use rand::Rng;

use crate::ci::{Relation, Statement};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default relative tolerance for the zero test in [`relation_of_matrix`].
pub const DEFAULT_CI_TOL: f64 = 1e-8;

/// Cholesky pivots must exceed this multiple of `max(1, max |σ_ij|)`.
pub const PIVOT_TOL: f64 = 1e-12;

/// Symmetric matrix with a single stored copy of each entry (packed upper
/// triangle, row major).
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

#[inline]
fn packed(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * n - i + 1) / 2 + j - i
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from full rows; the rows must be square, finite and
    /// symmetric up to a relative `1e-12`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::arg("matrix rows must all have length n"));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::arg(format!("entry ({}, {}) is not finite", i + 1, j + 1)));
                }
                let w = rows[j][i];
                if (v - w).abs() > 1e-12 * v.abs().max(w.abs()).max(1.0) {
                    return Err(Error::arg(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    /// Symmetrizes `(A + Aᵀ)/2`.
    pub fn from_dense(a: &DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::arg("matrix is not square"));
        }
        Ok(Self::from_fn(a.nrows(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[packed(self.n, i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let idx = packed(self.n, i, j);
        self.data[idx] = v;
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.n, other.n, "size mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Dense submatrix with the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]))
    }

    /// Principal submatrix on `vertices`, relabeled in increasing order.
    pub fn principal(&self, vertices: VertexSet) -> SymMatrix {
        let v = vertices.to_vec();
        Self::from_fn(v.len(), |a, b| self.get(v[a], v[b]))
    }

    /// Lower Cholesky factor (row-major dense), or the index of the first
    /// pivot that fails the [`PIVOT_TOL`] test.
    pub fn cholesky(&self) -> std::result::Result<Vec<f64>, usize> {
        let n = self.n;
        let thresh = PIVOT_TOL * self.max_abs().max(1.0);
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > thresh) {
                return Err(j);
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(l)
    }

    pub fn is_pd(&self) -> bool {
        self.n == 0 || self.cholesky().is_ok()
    }

    fn require_pd(&self) -> Result<()> {
        match self.cholesky() {
            Ok(_) => Ok(()),
            Err(k) => Err(Error::domain(format!(
                "matrix is not positive definite (Cholesky pivot {} fails)",
                k + 1
            ))),
        }
    }

    pub fn determinant(&self) -> f64 {
        self.to_dense().determinant()
    }

    /// `det Σ_{iK,jK}`, rows `i` then `K` ascending, columns `j` then `K`
    /// ascending.
    pub fn almost_principal_minor(&self, i: usize, j: usize, k: VertexSet) -> Result<f64> {
        if i == j || i >= self.n || j >= self.n || k.contains(i) || k.contains(j) {
            return Err(Error::arg("almost-principal minor needs i != j and K disjoint from {i, j}"));
        }
        if k.iter().any(|v| v >= self.n) {
            return Err(Error::arg("conditioning set out of range"));
        }
        Ok(self.apm_unchecked(i, j, k).0)
    }

    /// Minor value and its scale `∏ ‖column‖` (zero columns count as 1).
    fn apm_unchecked(&self, i: usize, j: usize, k: VertexSet) -> (f64, f64) {
        let mut rows = vec![i];
        let mut cols = vec![j];
        rows.extend(k.iter());
        cols.extend(k.iter());
        let m = self.submatrix(&rows, &cols);
        let scale: f64 = m
            .column_iter()
            .map(|c| {
                let norm = c.norm();
                if norm == 0.0 {
                    1.0
                } else {
                    norm
                }
            })
            .product();
        (m.determinant(), scale)
    }

    pub fn inverse(&self) -> Result<SymMatrix> {
        self.require_pd()?;
        let chol = nalgebra::Cholesky::new(self.to_dense())
            .ok_or_else(|| Error::domain("Cholesky factorization failed"))?;
        SymMatrix::from_dense(&chol.inverse())
    }

    /// `(D, R)` with `D = diag(√σ_ii)` returned as its diagonal and
    /// `Σ = D R D`.
    pub fn to_correlation(&self) -> Result<(Vec<f64>, SymMatrix)> {
        let d: Vec<f64> = (0..self.n).map(|i| self.get(i, i)).collect();
        if let Some(i) = d.iter().position(|&v| !(v > 0.0)) {
            return Err(Error::domain(format!("diagonal entry {} is not positive", i + 1)));
        }
        let d: Vec<f64> = d.iter().map(|v| v.sqrt()).collect();
        let r = SymMatrix::from_fn(self.n, |i, j| {
            if i == j {
                1.0
            } else {
                self.get(i, j) / (d[i] * d[j])
            }
        });
        Ok((d, r))
    }

    /// `D Σ D` for a diagonal `D`.
    pub fn scaled(&self, d: &[f64]) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| d[i] * self.get(i, j) * d[j])
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::arg(format!("vertex {} out of range 1..={}", k + 1, self.n)));
        }
        Ok(())
    }

    /// `Σ_{N∖k}`.
    pub fn marginal_matrix(&self, k: usize) -> Result<SymMatrix> {
        self.check_vertex(k)?;
        self.require_pd()?;
        Ok(self.principal(VertexSet::full(self.n).without(k)))
    }

    /// Schur complement of `σ_kk`.
    pub fn conditional_matrix(&self, k: usize) -> Result<SymMatrix> {
        self.check_vertex(k)?;
        self.require_pd()?;
        let rest = VertexSet::full(self.n).without(k).to_vec();
        let skk = self.get(k, k);
        Ok(SymMatrix::from_fn(rest.len(), |a, b| {
            let (u, v) = (rest[a], rest[b]);
            self.get(u, v) - self.get(u, k) * self.get(k, v) / skk
        }))
    }

    pub fn hadamard(&self, w: &SymMatrix) -> Result<SymMatrix> {
        if self.n != w.n {
            return Err(Error::arg("Hadamard product of matrices of different sizes"));
        }
        Ok(SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&w.data).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn direct_sum(&self, other: &SymMatrix) -> SymMatrix {
        let n = self.n;
        SymMatrix::from_fn(n + other.n, |i, j| match (i < n, j < n) {
            (true, true) => self.get(i, j),
            (false, false) => other.get(i - n, j - n),
            _ => 0.0,
        })
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        SymMatrix::from_fn(self.n, |i, j| self.get(inv[i], inv[j]))
    }

    /// Random positive definite matrix `A Aᵀ/n + 0.1·1` with standard
    /// normal-ish entries in `A` (uniform in `[-1, 1]`).
    pub fn random_pd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymMatrix {
        let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let m = &a * a.transpose() / n.max(1) as f64;
        SymMatrix::from_fn(n, |i, j| m[(i, j)] + if i == j { 0.1 } else { 0.0 })
    }

    /// Row-per-line text form, full precision.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:?}", self.get(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:10.6}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `⟨Σ⟩`: the statements whose almost-principal minor vanishes to relative
/// tolerance `tol`.
pub fn relation_of_matrix(sigma: &SymMatrix, tol: f64) -> Result<Relation> {
    sigma.require_pd()?;
    let n = sigma.n;
    let mut r = Relation::empty(n)?;
    let all: Vec<Statement> = Relation::full(n)?.iter().collect();
    for s in all {
        let (v, scale) = sigma.apm_unchecked(s.i(), s.j(), s.cond());
        if v.abs() <= tol * scale {
            r.insert(s)?;
        }
    }
    Ok(r)
}

/// `(Σ^{-1})_ij` for `ij ∉ G`, then `σ_kl` for `kl ∉ H`, each in pair order.
pub fn membership_residual(sigma: &SymMatrix, g: &Graph, h: &Graph) -> Result<Vec<f64>> {
    if g.n() != sigma.n || h.n() != sigma.n {
        return Err(Error::arg("graph and matrix sizes differ"));
    }
    let k = sigma.inverse()?;
    let mut out: Vec<f64> = g.non_edges().iter().map(|&(i, j)| k.get(i, j)).collect();
    out.extend(h.non_edges().iter().map(|&(i, j)| sigma.get(i, j)));
    Ok(out)
}

/// Max-norm of a residual vector (0 for an empty vector).
pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::test_util::{graph, rel};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn packed_indexing() {
        let a = SymMatrix::from_fn(5, |i, j| (10 * i + j) as f64);
        for i in 0..5 {
            for j in 0..5 {
                let (p, q) = (i.min(j), i.max(j));
                assert_eq!(a.get(i, j), (10 * p + q) as f64);
            }
        }
    }

    #[test]
    fn definiteness() {
        assert!(SymMatrix::identity(4).is_pd());
        assert!(!m(&[&[1.0, 2.0], &[2.0, 1.0]]).is_pd());
        assert!(!m(&[&[1.0, 1.0], &[1.0, 1.0]]).is_pd());
        assert!(m(&[&[1.0, 2.0], &[2.0, 1.0]]).inverse().is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 0.5], vec![0.4, 1.0]]).is_err());
    }

    #[test]
    fn almost_principal_minors() {
        let s = m(&[&[1.0, 0.5, 0.0], &[0.5, 1.0, 0.5], &[0.0, 0.5, 1.0]]);
        assert_eq!(s.almost_principal_minor(0, 1, VertexSet::EMPTY).unwrap(), 0.5);
        let v = s.almost_principal_minor(0, 2, VertexSet::singleton(1)).unwrap();
        assert!((v + 0.25).abs() < 1e-15);
        let id = SymMatrix::identity(4);
        assert_eq!(id.almost_principal_minor(1, 3, VertexSet::from_iter([0, 2])).unwrap(), 0.0);
        assert!(s.almost_principal_minor(0, 0, VertexSet::EMPTY).is_err());
    }

    #[test]
    fn relations_of_small_matrices() {
        assert_eq!(
            relation_of_matrix(&SymMatrix::identity(4), DEFAULT_CI_TOL).unwrap(),
            Relation::full(4).unwrap()
        );
        let s = m(&[&[1.0, 0.5, 0.0], &[0.5, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert_eq!(
            relation_of_matrix(&s, DEFAULT_CI_TOL).unwrap(),
            rel(3, &["(1 3 |)", "(1 3 | 2)", "(2 3 |)", "(2 3 | 1)"])
        );
    }

    #[test]
    fn inverse_and_correlation() {
        let d = SymMatrix::diagonal(&[2.0, 4.0]).inverse().unwrap();
        assert!(d.max_abs_diff(&SymMatrix::diagonal(&[0.5, 0.25])) < 1e-15);
        let (dd, r) = m(&[&[4.0, 2.0], &[2.0, 9.0]]).to_correlation().unwrap();
        assert_eq!(dd, vec![2.0, 3.0]);
        assert!((r.get(0, 1) - 1.0 / 3.0).abs() < 1e-15);
        assert!(SymMatrix::diagonal(&[1.0, 0.0]).to_correlation().is_err());
    }

    #[test]
    fn schur_complements() {
        let r = 0.3;
        let c = m(&[&[1.0, r], &[r, 1.0]]).conditional_matrix(1).unwrap();
        assert!((c.get(0, 0) - (1.0 - r * r)).abs() < 1e-15);
        assert_eq!(SymMatrix::identity(4).conditional_matrix(2).unwrap(), SymMatrix::identity(3));
    }

    #[test]
    fn hadamard_and_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = SymMatrix::random_pd(4, &mut rng);
        assert_eq!(s.hadamard(&SymMatrix::from_fn(4, |_, _| 1.0)).unwrap(), s);
        assert_eq!(SymMatrix::identity(2).direct_sum(&SymMatrix::identity(3)), SymMatrix::identity(5));
    }

    #[test]
    fn residual_layout() {
        let g = graph(3, "1-2");
        let h = graph(3, "1-2 2-3");
        let mut s = SymMatrix::identity(3);
        s.set(0, 2, 0.25);
        let res = membership_residual(&s, &g, &h).unwrap();
        // E_G^c = {13, 23}, E_H^c = {13}
        assert_eq!(res.len(), 3);
        assert_eq!(res[2], 0.25);
        assert_eq!(max_norm(&membership_residual(&SymMatrix::identity(3), &g, &h).unwrap()), 0.0);
    }

    #[test]
    fn random_relations_respect_duality_and_minors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=5 {
            for _ in 0..10 {
                let s = SymMatrix::random_pd(n, &mut rng);
                let r = relation_of_matrix(&s, DEFAULT_CI_TOL).unwrap();
                let inv = relation_of_matrix(&s.inverse().unwrap(), DEFAULT_CI_TOL).unwrap();
                assert_eq!(inv, r.dual());
                if n > 2 {
                    let k = n - 1;
                    let mm = relation_of_matrix(&s.marginal_matrix(k).unwrap(), DEFAULT_CI_TOL).unwrap();
                    assert_eq!(mm, r.marginal(k).unwrap());
                    let cm =
                        relation_of_matrix(&s.conditional_matrix(k).unwrap(), DEFAULT_CI_TOL).unwrap();
                    assert_eq!(cm, r.conditional(k).unwrap());
                }
            }
        }
    }
}
