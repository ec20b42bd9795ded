//! Sparse multivariate polynomials with exact rational coefficients in the
//! variables `σ_ij`, `i < j`, indexed by pair rank.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::{num_pairs, pair_rank, pairs};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u8>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(n: usize) -> Self {
        SparsePolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_pairs(n)], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    /// The variable `σ_ij` (0-based, `i != j`).
    pub fn var(n: usize, i: usize, j: usize) -> Self {
        let mut e = vec![0; num_pairs(n)];
        e[pair_rank(n, i.min(j), i.max(j))] = 1;
        let mut p = Self::zero(n);
        p.terms.insert(e, BigRational::one());
        p
    }

    /// Product of the variables `σ_e` for the given edges.
    pub fn monomial(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut e = vec![0; num_pairs(n)];
        for &(i, j) in edges {
            e[pair_rank(n, i.min(j), i.max(j))] += 1;
        }
        let mut p = Self::zero(n);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero(self.n);
        if c.is_zero() {
            return p;
        }
        for (e, v) in &self.terms {
            p.terms.insert(e.clone(), v * c);
        }
        p
    }

    /// Evaluates at `σ_ij = values[pair_rank(i, j)]`.
    pub fn eval(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e
                    .iter()
                    .zip(values)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, &v)| v.powi(k as i32))
                    .product();
                c.to_f64().unwrap_or(f64::NAN) * mono
            })
            .sum()
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for SparsePolynomial {
    /// Terms in decreasing exponent order, e.g. `s_12*s_23 - s_13`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = pairs(self.n).map(|(i, j)| variable_name(self.n, i, j)).collect();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{k}", names[v])),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePolynomial({self})")
    }
}

/// `s_ij` with 1-based labels; an underscore separates the labels once
/// either needs two digits.
pub fn variable_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("s_{}{}", i + 1, j + 1)
    } else {
        format!("s_{}_{}", i + 1, j + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = SparsePolynomial::var(3, 0, 1);
        let b = SparsePolynomial::var(3, 1, 2);
        let p = &(&a * &b) - &SparsePolynomial::var(3, 0, 2);
        assert_eq!(p.to_string(), "s_12*s_23 - s_13");
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval(&[2.0, 5.0, 3.0]), 2.0 * 3.0 - 5.0);
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "s_12^2");
        assert_eq!((&SparsePolynomial::one(3) + &SparsePolynomial::one(3)).to_string(), "2");
        assert_eq!((-&a).to_string(), "-s_12");
    }
}
