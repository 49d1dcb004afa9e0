//! Elements of a tensor product `L(F) (x) L(E)` of two Leavitt path algebras
//! over the same coefficient ring, graded by the sum of the two degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{AlgebraExt, Element, LeavittAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone)]
pub struct TensorElement<R: Ring> {
    left: Arc<LeavittAlgebra<R>>,
    right: Arc<LeavittAlgebra<R>>,
    terms: BTreeMap<(Monomial, Monomial), R::Elem>,
}

impl<R: Ring> TensorElement<R> {
    pub fn zero(left: &Arc<LeavittAlgebra<R>>, right: &Arc<LeavittAlgebra<R>>) -> Result<Self> {
        if left.ring() != right.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(TensorElement { left: left.clone(), right: right.clone(), terms: BTreeMap::new() })
    }

    /// `x (x) y`.
    pub fn pure(x: &Element<R>, y: &Element<R>) -> Result<Self> {
        let mut out = TensorElement::zero(x.algebra(), y.algebra())?;
        let ring = x.ring().clone();
        let x = x.clone().normalize();
        let y = y.clone().normalize();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                out.add_term((m1.clone(), m2.clone()), ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn one(left: &Arc<LeavittAlgebra<R>>, right: &Arc<LeavittAlgebra<R>>) -> Result<Self> {
        TensorElement::pure(&left.one(), &right.one())
    }

    /// `x (x) 1`.
    pub fn embed_left(x: &Element<R>, right: &Arc<LeavittAlgebra<R>>) -> Result<Self> {
        TensorElement::pure(x, &right.one())
    }

    /// `1 (x) y`.
    pub fn embed_right(left: &Arc<LeavittAlgebra<R>>, y: &Element<R>) -> Result<Self> {
        TensorElement::pure(&left.one(), y)
    }

    pub fn left_algebra(&self) -> &Arc<LeavittAlgebra<R>> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<LeavittAlgebra<R>> {
        &self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &R::Elem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (Monomial, Monomial), c: R::Elem) {
        let ring = self.left.ring();
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = ring.add(existing, &c);
                if ring.is_zero(&sum) {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        LeavittAlgebra::compatible(&self.left, &other.left)?;
        LeavittAlgebra::compatible(&self.right, &other.right)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let ring = self.left.ring();
        TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let mut out = TensorElement { left: self.left.clone(), right: self.right.clone(), terms: BTreeMap::new() };
        for (key, c) in &self.terms {
            out.add_term(key.clone(), self.left.ring().mul(k, c));
        }
        out
    }

    /// Componentwise product `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ring = self.left.ring();
        let mut out = TensorElement { left: self.left.clone(), right: self.right.clone(), terms: BTreeMap::new() };
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let (Some(ac), Some(bd)) = (a.mul(c, self.left.graph()), b.mul(d, self.right.graph())) else {
                    continue;
                };
                let l = self.left.monomial(ac, ring.one());
                let r = self.right.monomial(bd, ring.one());
                let k = ring.mul(c1, c2);
                for (m1, x) in l.terms() {
                    for (m2, y) in r.terms() {
                        out.add_term((m1.clone(), m2.clone()), ring.mul(&k, &ring.mul(x, y)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn star(&self) -> Self {
        let mut out = TensorElement { left: self.left.clone(), right: self.right.clone(), terms: BTreeMap::new() };
        for ((a, b), c) in &self.terms {
            out.add_term((a.star(), b.star()), c.clone());
        }
        out
    }

    /// `Some(d)` iff nonzero and homogeneous of total degree `d`.
    pub fn degree(&self) -> Option<i64> {
        let mut ds = self
            .terms
            .keys()
            .map(|(a, b)| a.degree(self.left.graph()) + b.degree(self.right.graph()));
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }
}

impl<R: Ring> PartialEq for TensorElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.terms == other.terms
    }
}

impl<R: Ring> fmt::Display for TensorElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ring = self.left.ring();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let body = format!("{} (x) {}", a.display(self.left.graph()), b.display(self.right.graph()));
            let s = ring.format(c);
            let (neg, mag) = if ring.needs_parens(c) {
                (false, format!("({s})"))
            } else {
                match s.strip_prefix('-') {
                    Some(m) => (true, m.to_string()),
                    None => (false, s),
                }
            };
            let body = if mag == "1" { body } else { format!("{mag} {body}") };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::ring::Rationals;

    #[test]
    fn componentwise_products() {
        let g = Graph::rose(2);
        let l = LeavittAlgebra::new(g.clone(), Rationals);
        let r = LeavittAlgebra::new(g.dual(), Rationals);
        let x = TensorElement::pure(&l.parse("e").unwrap(), &r.parse("e_t*").unwrap()).unwrap();
        let y = TensorElement::pure(&l.parse("f*").unwrap(), &r.parse("f_t").unwrap()).unwrap();
        let xy = x.checked_mul(&y).unwrap();
        assert_eq!(xy, TensorElement::pure(&l.parse("e f*").unwrap(), &r.parse("e_t* f_t").unwrap()).unwrap());
        // e_t* f_t = 0 in the right factor
        assert!(xy.is_zero());
        assert_eq!(x.degree(), Some(0));
        let z = TensorElement::pure(&l.parse("e").unwrap(), &r.parse("e_t").unwrap()).unwrap();
        assert_eq!(z.degree(), Some(2));
        let one = TensorElement::one(&l, &r).unwrap();
        assert_eq!(one.checked_mul(&x).unwrap(), x);
        assert_eq!(x.star().star(), x);
    }
}
