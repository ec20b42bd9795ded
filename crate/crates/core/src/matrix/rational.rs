//! Exact rational symmetric matrices for verifying worked examples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SymMatrix;
use crate::ci::Relation;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymMatrix {
    n: usize,
    data: Vec<BigRational>,
}

fn packed(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * n - i + 1) / 2 + j - i
}

impl RationalSymMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalSymMatrix {
            n,
            data: vec![BigRational::zero(); n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Full rows; must be square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<BigRational>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::arg("matrix rows must all have length n"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::arg(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j].clone()))
    }

    /// Small integer entries, convenient in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[packed(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        let idx = packed(self.n, i, j);
        self.data[idx] = v;
    }

    pub fn to_f64(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
    }

    /// Exact determinant of the submatrix with the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        let m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        bareiss_det(m)
    }

    pub fn determinant(&self) -> BigRational {
        let all: Vec<usize> = (0..self.n).collect();
        self.minor(&all, &all)
    }

    /// Leading principal minors of orders `1..=n`.
    pub fn leading_minors(&self) -> Vec<BigRational> {
        (1..=self.n)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.minor(&idx, &idx)
            })
            .collect()
    }

    /// 0-based index `k` of the first leading principal minor (of order
    /// `k + 1`) that is not positive.
    pub fn first_nonpositive_leading_minor(&self) -> Option<usize> {
        self.leading_minors().iter().position(|d| !d.is_positive())
    }

    /// Sylvester's criterion, exactly.
    pub fn is_pd(&self) -> bool {
        self.leading_minors().iter().all(|d| d.is_positive())
    }

    pub fn almost_principal_minor(&self, i: usize, j: usize, k: VertexSet) -> Result<BigRational> {
        if i == j || i >= self.n || j >= self.n || k.contains(i) || k.contains(j) {
            return Err(Error::arg("almost-principal minor needs i != j and K disjoint from {i, j}"));
        }
        let mut rows = vec![i];
        let mut cols = vec![j];
        rows.extend(k.iter());
        cols.extend(k.iter());
        Ok(self.minor(&rows, &cols))
    }

    /// `⟨Σ⟩` with an exact zero test.
    pub fn relation(&self) -> Result<Relation> {
        if !self.is_pd() {
            return Err(Error::domain("matrix is not positive definite"));
        }
        let mut r = Relation::empty(self.n)?;
        for s in Relation::full(self.n)?.iter() {
            if self.almost_principal_minor(s.i(), s.j(), s.cond())?.is_zero() {
                r.insert(s)?;
            }
        }
        Ok(r)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<RationalSymMatrix> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::domain("matrix is singular"))?;
            a.swap(c, p);
            let piv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v = &*v / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for col in 0..2 * n {
                        let d = &f * &a[c][col];
                        a[r][col] -= d;
                    }
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| a[i][n + j].clone()))
    }
}

/// Determinant via fraction-free (Bareiss) elimination after clearing
/// denominators row by row.
pub(crate) fn bareiss_det(rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints = row.iter().map(|v| (v * &l).to_integer()).collect();
            scale *= &l;
            ints
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    BigRational::new(sign * &m[n - 1][n - 1], scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::test_util::rel;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn exact_determinants() {
        let m = RationalSymMatrix::from_int_rows(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(m.determinant(), q(4, 1));
        assert_eq!(m.leading_minors(), vec![q(2, 1), q(3, 1), q(4, 1)]);
        assert!(m.is_pd());
        let zero_pivot = RationalSymMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(zero_pivot.determinant(), q(-1, 1));
        assert!(!zero_pivot.is_pd());
    }

    #[test]
    fn fractions_and_inverse() {
        let mut m = RationalSymMatrix::identity(3);
        m.set(0, 1, q(1, 2));
        m.set(1, 2, q(1, 3));
        assert_eq!(m.determinant(), q(1, 1) - q(1, 4) - q(1, 9));
        let inv = m.inverse().unwrap();
        let prod: Vec<BigRational> = (0..3)
            .flat_map(|i| {
                let (m, inv) = (&m, &inv);
                (0..3).map(move |j| (0..3).map(|k| m.get(i, k) * inv.get(k, j)).sum())
            })
            .collect();
        for (idx, v) in prod.iter().enumerate() {
            let expect = if idx % 4 == 0 { q(1, 1) } else { q(0, 1) };
            assert_eq!(*v, expect);
        }
    }

    #[test]
    fn exact_relation() {
        let mut m = RationalSymMatrix::identity(3);
        m.set(0, 1, q(1, 2));
        assert_eq!(
            m.relation().unwrap(),
            rel(3, &["(1 3 |)", "(1 3 | 2)", "(2 3 |)", "(2 3 | 1)"])
        );
    }
}
