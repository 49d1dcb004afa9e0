//! Small square matrices with entries in a Leavitt path algebra.

use std::fmt;
use std::sync::Arc;

use super::{AlgebraExt, Element, LeavittAlgebra};
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
pub struct ElementMatrix<R: Ring> {
    algebra: Arc<LeavittAlgebra<R>>,
    entries: Vec<Vec<Element<R>>>,
}

impl<R: Ring> ElementMatrix<R> {
    pub fn zeros(algebra: &Arc<LeavittAlgebra<R>>, n: usize) -> Self {
        ElementMatrix { algebra: algebra.clone(), entries: vec![vec![algebra.zero(); n]; n] }
    }

    pub fn identity(algebra: &Arc<LeavittAlgebra<R>>, n: usize) -> Self {
        let mut m = ElementMatrix::zeros(algebra, n);
        for i in 0..n {
            m.entries[i][i] = algebra.one();
        }
        m
    }

    pub fn from_rows(algebra: &Arc<LeavittAlgebra<R>>, rows: Vec<Vec<Element<R>>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("element matrix must be square".into()));
        }
        for x in rows.iter().flatten() {
            LeavittAlgebra::compatible(algebra, x.algebra())?;
        }
        Ok(ElementMatrix { algebra: algebra.clone(), entries: rows })
    }

    /// `x` placed at `(i, j)` of an `n x n` zero matrix.
    pub fn unit(x: &Element<R>, n: usize, i: usize, j: usize) -> Self {
        let mut m = ElementMatrix::zeros(x.algebra(), n);
        m.entries[i][j] = x.clone();
        m
    }

    pub fn diagonal(algebra: &Arc<LeavittAlgebra<R>>, diag: Vec<Element<R>>) -> Self {
        let n = diag.len();
        let mut m = ElementMatrix::zeros(algebra, n);
        for (i, x) in diag.into_iter().enumerate() {
            m.entries[i][i] = x;
        }
        m
    }

    pub fn algebra(&self) -> &Arc<LeavittAlgebra<R>> {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Element<R> {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Element<R>) {
        self.entries[i][j] = x;
    }

    pub fn rows(&self) -> &[Vec<Element<R>>] {
        &self.entries
    }

    fn check(&self, other: &Self) -> Result<()> {
        LeavittAlgebra::compatible(&self.algebra, &other.algebra)?;
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.size(), other.size())));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(ElementMatrix { algebra: self.algebra.clone(), entries })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ElementMatrix {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.size();
        let mut out = ElementMatrix::zeros(&self.algebra, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.algebra.zero();
                for k in 0..n {
                    if self.entries[i][k].is_empty() || other.entries[k][j].is_empty() {
                        continue;
                    }
                    acc = &acc + &self.entries[i][k].cohn_mul(&other.entries[k][j])?;
                }
                out.entries[i][j] = acc.normalize();
            }
        }
        Ok(out)
    }

    pub fn normalize(self) -> Self {
        ElementMatrix {
            algebra: self.algebra,
            entries: self.entries.into_iter().map(|r| r.into_iter().map(Element::normalize).collect()).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Element<R>) -> Element<R>) -> Self {
        ElementMatrix {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == ElementMatrix::identity(&self.algebra, self.size())
    }
}

impl<R: Ring> fmt::Display for ElementMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
