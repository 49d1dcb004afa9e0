//! Exact arithmetic in Leavitt path algebras.
//!
//! Elements are finite combinations of monomials `alpha beta*` kept in a
//! normal form: a monomial whose two paths both end in the special edge of
//! the same vertex is rewritten with the Cuntz-Krieger relation
//! `v = sum_{s(e) = v} e e*` until none is left. Those monomials form a basis.

mod matrix;
mod parse;
mod tensor;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::ring::Ring;

pub use matrix::ElementMatrix;
pub use tensor::TensorElement;

const NORMALIZE_FUEL: usize = 1_000_000;

/// A basis candidate `alpha beta*` with `r(alpha) = r(beta)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub alpha: Path,
    pub beta: Path,
}

impl Monomial {
    /// Panics unless the ranges agree.
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Monomial {
        assert_eq!(alpha.range(g), beta.range(g), "monomial paths must share their range");
        Monomial { alpha, beta }
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial { alpha: Path::vertex(v), beta: Path::vertex(v) }
    }

    pub fn degree(&self, g: &Graph) -> i64 {
        self.alpha.weighted_degree(g) - self.beta.weighted_degree(g)
    }

    pub fn star(&self) -> Monomial {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    /// Product in the Cohn algebra; `None` is zero.
    pub fn mul(&self, other: &Monomial, g: &Graph) -> Option<Monomial> {
        if let Some(rest) = self.beta.strip_prefix_of(&other.alpha, g) {
            Some(Monomial { alpha: self.alpha.concat(&rest), beta: other.beta.clone() })
        } else {
            other.alpha.strip_prefix_of(&self.beta, g).map(|rest| Monomial {
                alpha: self.alpha.clone(),
                beta: other.beta.concat(&rest),
            })
        }
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.alpha.range(g)
    }

    pub fn display(&self, g: &Graph) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.alpha.is_empty() && self.beta.is_empty() {
            return g.vertex_name(self.alpha.start).to_string();
        }
        parts.extend(self.alpha.edges.iter().map(|&e| g.edge_name(e).to_string()));
        parts.extend(self.beta.edges.iter().rev().map(|&e| format!("{}*", g.edge_name(e))));
        parts.join(" ")
    }
}

/// For each regular vertex, the edge eliminated by the normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialEdgeChoice {
    edges: Vec<Option<EdgeId>>,
}

impl SpecialEdgeChoice {
    /// The first declared edge out of every regular vertex.
    pub fn first(g: &Graph) -> Self {
        SpecialEdgeChoice { edges: g.vertices().map(|v| g.out_edges(v).first().copied()).collect() }
    }

    pub fn last(g: &Graph) -> Self {
        SpecialEdgeChoice { edges: g.vertices().map(|v| g.out_edges(v).last().copied()).collect() }
    }

    pub fn from_edges(g: &Graph, edges: Vec<Option<EdgeId>>) -> Result<Self> {
        if edges.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch("one entry per vertex expected".into()));
        }
        for v in g.vertices() {
            match edges[v.0] {
                Some(e) if g.source(e) != v => return Err(Error::InvalidGraph(format!(
                    "special edge `{}` does not leave `{}`",
                    g.edge_name(e),
                    g.vertex_name(v)
                ))),
                None if !g.is_sink(v) => {
                    return Err(Error::InvalidGraph(format!("no special edge at `{}`", g.vertex_name(v))))
                }
                Some(_) if g.is_sink(v) => unreachable!(),
                _ => {}
            }
        }
        Ok(SpecialEdgeChoice { edges })
    }

    pub fn at(&self, v: VertexId) -> Option<EdgeId> {
        self.edges[v.0]
    }
}

/// `L(E)` over a coefficient ring, with a fixed normal-form basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LeavittAlgebra<R: Ring> {
    graph: Arc<Graph>,
    ring: R,
    special: SpecialEdgeChoice,
}

impl<R: Ring> LeavittAlgebra<R> {
    pub fn new(graph: impl Into<Arc<Graph>>, ring: R) -> Arc<Self> {
        let graph = graph.into();
        let special = SpecialEdgeChoice::first(&graph);
        Arc::new(LeavittAlgebra { graph, ring, special })
    }

    pub fn with_special_edges(graph: impl Into<Arc<Graph>>, ring: R, special: SpecialEdgeChoice) -> Arc<Self> {
        Arc::new(LeavittAlgebra { graph: graph.into(), ring, special })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn special_edges(&self) -> &SpecialEdgeChoice {
        &self.special
    }

    fn is_reducible(&self, m: &Monomial) -> bool {
        match (m.alpha.edges.last(), m.beta.edges.last()) {
            (Some(&a), Some(&b)) => a == b && self.special.at(self.graph.source(a)) == Some(a),
            _ => false,
        }
    }

    /// Checks that `a` and `b` are the same algebra.
    pub fn compatible(a: &Arc<Self>, b: &Arc<Self>) -> Result<()> {
        if Arc::ptr_eq(a, b) {
            return Ok(());
        }
        if a.graph != b.graph || a.special != b.special {
            return Err(Error::GraphMismatch);
        }
        if a.ring != b.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

/// An element of a Leavitt path algebra (or, before normalization, of the
/// Cohn algebra).
#[derive(Debug, Clone)]
pub struct Element<R: Ring> {
    algebra: Arc<LeavittAlgebra<R>>,
    terms: BTreeMap<Monomial, R::Elem>,
    normalized: bool,
}

/// Generator lookups and constants.
pub trait AlgebraExt<R: Ring> {
    fn zero(&self) -> Element<R>;
    fn one(&self) -> Element<R>;
    fn scalar(&self, c: R::Elem) -> Element<R>;
    fn int(&self, n: i64) -> Element<R>;
    fn vertex(&self, v: VertexId) -> Element<R>;
    fn edge(&self, e: EdgeId) -> Element<R>;
    fn ghost(&self, e: EdgeId) -> Element<R>;
    fn monomial(&self, m: Monomial, c: R::Elem) -> Element<R>;
    fn path(&self, p: &Path) -> Element<R>;
    /// The Cohn idempotent `v - sum_{s(e) = v} e e*`, not normalized.
    fn cohn_idempotent(&self, v: VertexId) -> Result<Element<R>>;
    /// Parses an expression in the generators; the result is normalized.
    fn parse(&self, src: &str) -> Result<Element<R>>;
    fn parse_unreduced(&self, src: &str) -> Result<Element<R>>;
    fn vertex_named(&self, name: &str) -> Result<Element<R>>;
    fn edge_named(&self, name: &str) -> Result<Element<R>>;
}

impl<R: Ring> AlgebraExt<R> for Arc<LeavittAlgebra<R>> {
    fn zero(&self) -> Element<R> {
        Element { algebra: self.clone(), terms: BTreeMap::new(), normalized: true }
    }

    fn one(&self) -> Element<R> {
        self.scalar(self.ring.one())
    }

    fn scalar(&self, c: R::Elem) -> Element<R> {
        let mut x = self.zero();
        if !self.ring.is_zero(&c) {
            for v in self.graph.vertices() {
                x.terms.insert(Monomial::vertex(v), c.clone());
            }
        }
        x
    }

    fn int(&self, n: i64) -> Element<R> {
        self.scalar(self.ring.from_int(n))
    }

    fn vertex(&self, v: VertexId) -> Element<R> {
        self.monomial(Monomial::vertex(v), self.ring.one())
    }

    fn edge(&self, e: EdgeId) -> Element<R> {
        let g = &self.graph;
        self.monomial(Monomial { alpha: Path::edge(g, e), beta: Path::vertex(g.range(e)) }, self.ring.one())
    }

    fn ghost(&self, e: EdgeId) -> Element<R> {
        self.edge(e).star()
    }

    fn monomial(&self, m: Monomial, c: R::Elem) -> Element<R> {
        let mut x = self.zero();
        if !self.ring.is_zero(&c) {
            x.normalized = !self.is_reducible(&m);
            x.terms.insert(m, c);
        }
        x.normalize()
    }

    fn path(&self, p: &Path) -> Element<R> {
        let m = Monomial { alpha: p.clone(), beta: Path::vertex(p.range(&self.graph)) };
        self.monomial(m, self.ring.one())
    }

    fn cohn_idempotent(&self, v: VertexId) -> Result<Element<R>> {
        let g = &self.graph;
        if g.is_sink(v) {
            return Err(Error::SinkVertex(g.vertex_name(v).to_string()));
        }
        let mut x = self.vertex(v);
        for &e in g.out_edges(v) {
            let p = Path::edge(g, e);
            x.add_term(Monomial { alpha: p.clone(), beta: p }, self.ring.from_int(-1));
        }
        x.normalized = false;
        Ok(x)
    }

    fn parse(&self, src: &str) -> Result<Element<R>> {
        parse::parse_expression(self, src, true)
    }

    fn parse_unreduced(&self, src: &str) -> Result<Element<R>> {
        parse::parse_expression(self, src, false)
    }

    fn vertex_named(&self, name: &str) -> Result<Element<R>> {
        let v = self.graph.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
        Ok(self.vertex(v))
    }

    fn edge_named(&self, name: &str) -> Result<Element<R>> {
        let e = self.graph.edge(name).ok_or_else(|| Error::UnknownEdge(name.to_string()))?;
        Ok(self.edge(e))
    }
}

impl<R: Ring> Element<R> {
    pub fn algebra(&self) -> &Arc<LeavittAlgebra<R>> {
        &self.algebra
    }

    pub fn graph(&self) -> &Graph {
        &self.algebra.graph
    }

    pub fn ring(&self) -> &R {
        &self.algebra.ring
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&R::Elem> {
        self.terms.get(m)
    }

    /// True when zero in the algebra (normalizes if needed).
    pub fn is_zero(&self) -> bool {
        if self.normalized {
            self.terms.is_empty()
        } else {
            self.clone().normalize().terms.is_empty()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        let ring = &self.algebra.ring;
        if ring.is_zero(&c) {
            return;
        }
        if self.normalized && self.algebra.is_reducible(&m) {
            self.normalized = false;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = ring.add(existing, &c);
                if ring.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Rewrites into the normal-form basis.
    pub fn normalize(mut self) -> Self {
        if self.normalized {
            return self;
        }
        let algebra = self.algebra.clone();
        let g = &algebra.graph;
        let ring = &algebra.ring;
        let mut work: Vec<(Monomial, R::Elem)> = std::mem::take(&mut self.terms).into_iter().collect();
        let mut out = Element { algebra: algebra.clone(), terms: BTreeMap::new(), normalized: true };
        let mut fuel = NORMALIZE_FUEL;
        while let Some((m, c)) = work.pop() {
            if !algebra.is_reducible(&m) {
                out.add_term(m, c);
                continue;
            }
            fuel = fuel.checked_sub(1).expect("normal form rewrite budget exhausted");
            let mut alpha = m.alpha;
            let mut beta = m.beta;
            let e = alpha.edges.pop().expect("reducible monomial has an edge");
            beta.edges.pop();
            for &f in g.out_edges(g.source(e)) {
                if f != e {
                    let mut a = alpha.clone();
                    let mut b = beta.clone();
                    a.edges.push(f);
                    b.edges.push(f);
                    work.push((Monomial { alpha: a, beta: b }, ring.neg(&c)));
                }
            }
            work.push((Monomial { alpha, beta }, c));
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        LeavittAlgebra::compatible(&self.algebra, &other.algebra)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let ring = &self.algebra.ring;
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
            normalized: self.normalized,
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let ring = &self.algebra.ring;
        let mut out = Element { algebra: self.algebra.clone(), terms: BTreeMap::new(), normalized: self.normalized };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), ring.mul(k, c));
        }
        out
    }

    /// Product in the Cohn algebra: no normalization of the result.
    pub fn cohn_mul(&self, other: &Self) -> Result<Self> {
        LeavittAlgebra::compatible(&self.algebra, &other.algebra)?;
        let g = &self.algebra.graph;
        let ring = &self.algebra.ring;
        let mut out = Element { algebra: self.algebra.clone(), terms: BTreeMap::new(), normalized: true };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.mul(m2, g) {
                    out.add_term(m, ring.mul(c1, c2));
                }
            }
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(self.cohn_mul(other)?.normalize())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.algebra.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn star(&self) -> Self {
        let mut out = Element { algebra: self.algebra.clone(), terms: BTreeMap::new(), normalized: true };
        for (m, c) in &self.terms {
            out.add_term(m.star(), c.clone());
        }
        out
    }

    /// The set of degrees of the monomials present.
    pub fn degrees(&self) -> BTreeSet<i64> {
        let x = self.clone().normalize();
        x.terms.keys().map(|m| m.degree(&x.algebra.graph)).collect()
    }

    /// `Some(d)` iff nonzero and homogeneous of degree `d`.
    pub fn degree(&self) -> Option<i64> {
        let ds = self.degrees();
        if ds.len() == 1 {
            ds.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.degrees().iter().all(|&x| x == d)
    }

    pub fn component(&self, d: i64) -> Self {
        let x = self.clone().normalize();
        let g = x.algebra.graph.clone();
        Element {
            algebra: x.algebra.clone(),
            terms: x.terms.into_iter().filter(|(m, _)| m.degree(&g) == d).collect(),
            normalized: true,
        }
    }

    /// Recasts the coefficients into another algebra over the same graph.
    pub fn map_coefficients<S: Ring>(
        &self,
        target: &Arc<LeavittAlgebra<S>>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> Result<Element<S>> {
        if target.graph != self.algebra.graph {
            return Err(Error::GraphMismatch);
        }
        let mut out = target.zero();
        out.normalized = target.special == self.algebra.special && self.normalized;
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        Ok(out.normalize())
    }

    /// Left-multiplication by the single monomial `m`, the workhorse of the
    /// block-matrix conversions.
    pub fn monomial_mul(&self, m: &Monomial, on_left: bool) -> Self {
        let g = &self.algebra.graph;
        let mut out = Element { algebra: self.algebra.clone(), terms: BTreeMap::new(), normalized: true };
        for (m2, c) in &self.terms {
            let p = if on_left { m.mul(m2, g) } else { m2.mul(m, g) };
            if let Some(p) = p {
                out.add_term(p, c.clone());
            }
        }
        out.normalize()
    }
}

impl<R: Ring> PartialEq for Element<R> {
    fn eq(&self, other: &Self) -> bool {
        if LeavittAlgebra::compatible(&self.algebra, &other.algebra).is_err() {
            return false;
        }
        match (self.normalized, other.normalized) {
            (true, true) => self.terms == other.terms,
            _ => self.clone().normalize().terms == other.clone().normalize().terms,
        }
    }
}

impl<R: Ring> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let g = &self.algebra.graph;
        let ring = &self.algebra.ring;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = m.display(g);
            let (negative, coef) = if ring.needs_parens(c) {
                (false, format!("({})", ring.format(c)))
            } else {
                let s = ring.format(c);
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            };
            let body = if coef == "1" { mono } else { format!("{coef} {mono}") };
            match (i, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Ring> std::ops::$tr<&Element<R>> for &Element<R> {
            type Output = Element<R>;
            /// Panics when the operands live in different algebras.
            fn $method(self, rhs: &Element<R>) -> Element<R> {
                self.$checked(rhs).expect("operands in the same algebra")
            }
        }
        impl<R: Ring> std::ops::$tr<Element<R>> for Element<R> {
            type Output = Element<R>;
            fn $method(self, rhs: Element<R>) -> Element<R> {
                self.$checked(&rhs).expect("operands in the same algebra")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<R: Ring> std::ops::Neg for &Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        Element::neg(self)
    }
}

impl<R: Ring> std::ops::Neg for Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        Element::neg(&self)
    }
}

/// All normal-form monomials `alpha beta*` with `|alpha| = |beta| = n`.
pub fn degree_zero_basis<R: Ring>(algebra: &LeavittAlgebra<R>, n: usize) -> Vec<Monomial> {
    let g = &algebra.graph;
    let mut out = Vec::new();
    for v in g.vertices() {
        let paths = g.paths_into(v, n);
        for a in &paths {
            for b in &paths {
                let m = Monomial { alpha: a.clone(), beta: b.clone() };
                if !algebra.is_reducible(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    fn r2() -> Arc<LeavittAlgebra<Rationals>> {
        LeavittAlgebra::new(Graph::rose(2), Rationals)
    }

    #[test]
    fn ck2_rewrite() {
        let a = r2();
        let x = a.parse("e e*").unwrap();
        assert_eq!(x, a.parse("v - f f*").unwrap());
        assert_eq!(x.to_string(), "v - f f*");
        let q = a.cohn_idempotent(a.graph().vertex("v").unwrap()).unwrap();
        assert!(!q.is_empty());
        assert!(q.clone().normalize().is_empty());
        assert_eq!(q.to_string(), "v - e e* - f f*");
        let basis = a.parse("e f*").unwrap();
        assert_eq!(basis.clone().normalize().to_string(), "e f*");
    }

    #[test]
    fn ck1_products() {
        let a = r2();
        let e = a.edge_named("e").unwrap();
        let f = a.edge_named("f").unwrap();
        assert_eq!(&e.star() * &e, a.one());
        assert!((&f.star() * &e).is_zero());
        let ee = a.parse("e e*").unwrap();
        let ef = a.parse("e f*").unwrap();
        assert_eq!(&ee * &ef, ef);
    }

    #[test]
    fn star_and_degree() {
        let a = r2();
        let ef = a.parse("e f*").unwrap();
        assert_eq!(ef.star().to_string(), "f e*");
        assert_eq!(a.edge_named("e").unwrap().degree(), Some(1));
        assert_eq!(a.parse("e*").unwrap().degree(), Some(-1));
        assert_eq!(a.one().degree(), Some(0));
        assert_eq!(ef.degree(), Some(0));
        assert_eq!(a.zero().degree(), None);
        let mixed = a.parse("e + v").unwrap();
        assert_eq!(mixed.degree(), None);
        assert_eq!(mixed.component(1) + mixed.component(0), mixed);

        let g = Graph::with_weights("w", vec!["v".into()], vec![("e".into(), "v".into(), "v".into(), 3)]).unwrap();
        let w = LeavittAlgebra::new(g, Rationals);
        assert_eq!(w.edge_named("e").unwrap().degree(), Some(3));
    }

    #[test]
    fn fibonacci_cohn_idempotent() {
        let a = LeavittAlgebra::new(Graph::fibonacci(), Rationals);
        let v = a.graph().vertex("v").unwrap();
        let q = a.cohn_idempotent(v).unwrap();
        assert_eq!(q.to_string(), "v - a a* - b b*");
        assert!(q.is_zero());
        let s = Graph::new("s", &["u", "w"], &[("e", "u", "w")]).unwrap();
        let b = LeavittAlgebra::new(s, Rationals);
        assert!(matches!(b.cohn_idempotent(VertexId(1)), Err(Error::SinkVertex(_))));
    }

    #[test]
    fn mismatch_errors() {
        let a = r2();
        let b = LeavittAlgebra::new(Graph::rose(3), Rationals);
        let c = LeavittAlgebra::new(Graph::rose(2), PrimeField::new(3).unwrap());
        assert_eq!(a.one().checked_add(&b.one()), Err(Error::GraphMismatch));
        let _ = c;
        let d = LeavittAlgebra::with_special_edges(Graph::rose(2), Rationals, SpecialEdgeChoice::last(&Graph::rose(2)));
        assert_eq!(a.one().checked_mul(&d.one()), Err(Error::GraphMismatch));
    }

    #[test]
    fn basis_counts() {
        for g in [Graph::rose(2), Graph::fibonacci(), Graph::complete2()] {
            let a = LeavittAlgebra::new(g.clone(), Rationals);
            for n in 0..4 {
                let count = degree_zero_basis(&a, n).len();
                let paths: usize = g.vertices().map(|v| g.paths_into(v, n).len().pow(2)).sum();
                // normal-form monomials of length exactly n: those not ending in
                // the same special edge; together with shorter ones they span
                let shorter: usize = (0..n).map(|k| degree_zero_basis(&a, k).len()).sum();
                assert_eq!(count + shorter, paths, "{} n={n}", g.name());
            }
        }
    }
}
