//! Graded algebra homomorphisms `L(E) -> B` given by generator images.
//!
//! The relation checker works for any target implementing [`Target`]:
//! elements of `L(F)` (possibly with polynomial coefficients) and small
//! matrices over them. Homotopies are maps into `B[t]` checked the same way
//! and compared with their endpoints after evaluating `t` at 0 and 1.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraExt, Element, ElementMatrix, LeavittAlgebra, Monomial, TensorElement};
use crate::bfmod::{verify_hom_certificate, DimensionModule};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::linalg::IntMatrix;
use crate::report::{Report, Verdict};
use crate::ring::{Field, Polynomials, Ring};
use crate::zerocomp::{corner_inverse, is_length_balanced, k0_class, k1_class, unit_inverse, K1Class, K1Model};

/// What the relation checker needs from a target algebra.
pub trait Target: Clone + PartialEq + fmt::Display {
    fn mul_t(&self, other: &Self) -> Self;
    fn add_t(&self, other: &Self) -> Self;
    fn sub_t(&self, other: &Self) -> Self;
    fn zero_like(&self) -> Self;
    fn homogeneous_of(&self, degree: i64) -> bool;
    fn star_t(&self) -> Self;
}

impl<R: Ring> Target for Element<R> {
    fn mul_t(&self, other: &Self) -> Self {
        self * other
    }
    fn add_t(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_t(&self, other: &Self) -> Self {
        self - other
    }
    fn zero_like(&self) -> Self {
        self.algebra().zero()
    }
    fn homogeneous_of(&self, degree: i64) -> bool {
        self.is_homogeneous_of(degree)
    }
    fn star_t(&self) -> Self {
        self.star()
    }
}

impl<R: Ring> Target for ElementMatrix<R> {
    fn mul_t(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrices of one size over one algebra")
    }
    fn add_t(&self, other: &Self) -> Self {
        self.checked_add(other).expect("matrices of one size over one algebra")
    }
    fn sub_t(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("matrices of one size over one algebra")
    }
    fn zero_like(&self) -> Self {
        ElementMatrix::zeros(self.algebra(), self.size())
    }
    fn homogeneous_of(&self, degree: i64) -> bool {
        self.rows().iter().flatten().all(|x| x.is_homogeneous_of(degree))
    }
    fn star_t(&self) -> Self {
        let n = self.size();
        let mut out = ElementMatrix::zeros(self.algebra(), n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).star());
            }
        }
        out
    }
}

/// Evaluation of the indeterminate at a field value.
pub trait Evaluate<F: Field> {
    type Value: Target;
    fn evaluate(&self, at: &F::Elem) -> Self::Value;
}

fn base_algebra<F: Field>(a: &LeavittAlgebra<Polynomials<F>>) -> Arc<LeavittAlgebra<F>> {
    LeavittAlgebra::with_special_edges(a.graph_arc().clone(), a.ring().base().clone(), a.special_edges().clone())
}

/// `L(F)` with coefficients in `F[t]`, sharing graph and basis.
pub fn polynomial_algebra<F: Field>(a: &LeavittAlgebra<F>) -> Arc<LeavittAlgebra<Polynomials<F>>> {
    LeavittAlgebra::with_special_edges(a.graph_arc().clone(), Polynomials::new(a.ring().clone()), a.special_edges().clone())
}

/// Constant polynomials.
pub fn lift_constant<F: Field>(x: &Element<F>, target: &Arc<LeavittAlgebra<Polynomials<F>>>) -> Element<Polynomials<F>> {
    let ring = target.ring().clone();
    x.map_coefficients(target, |c| ring.constant(c.clone())).expect("same graph")
}

impl<F: Field> Evaluate<F> for Element<Polynomials<F>> {
    type Value = Element<F>;
    fn evaluate(&self, at: &F::Elem) -> Element<F> {
        let base = base_algebra(self.algebra());
        let ring = self.ring().clone();
        self.map_coefficients(&base, |c| ring.evaluate(c, at)).expect("same graph")
    }
}

impl<F: Field> Evaluate<F> for ElementMatrix<Polynomials<F>> {
    type Value = ElementMatrix<F>;
    fn evaluate(&self, at: &F::Elem) -> ElementMatrix<F> {
        let base = base_algebra(self.algebra());
        let rows = self.rows().iter().map(|r| r.iter().map(|x| x.evaluate(at)).collect()).collect();
        ElementMatrix::from_rows(&base, rows).expect("square")
    }
}

/// Images of the generators `v`, `e`, `e*` of `L(E)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomImages<T> {
    pub source: Arc<Graph>,
    pub vertices: Vec<T>,
    pub edges: Vec<T>,
    pub ghosts: Vec<T>,
}

impl<T: Target> HomImages<T> {
    pub fn new(source: Arc<Graph>, vertices: Vec<T>, edges: Vec<T>, ghosts: Vec<T>) -> Result<Self> {
        if vertices.len() != source.vertex_count() || edges.len() != source.edge_count() || ghosts.len() != edges.len()
        {
            return Err(Error::DimensionMismatch("one image per generator expected".into()));
        }
        Ok(HomImages { source, vertices, edges, ghosts })
    }

    pub fn map<S: Target>(&self, f: impl Fn(&T) -> S) -> HomImages<S> {
        HomImages {
            source: self.source.clone(),
            vertices: self.vertices.iter().map(&f).collect(),
            edges: self.edges.iter().map(&f).collect(),
            ghosts: self.ghosts.iter().map(&f).collect(),
        }
    }

    /// Checks (V), (E1), (E2), (CK1), (CK2), homogeneity and, when `unit`
    /// is given, that the vertex images sum to it. Star compatibility is
    /// reported for information.
    pub fn check_relations(&self, unit: Option<&T>) -> Report {
        let g = &self.source;
        let mut r = Report::new();
        let zero = self.vertices.first().or(self.edges.first()).map(Target::zero_like);
        let Some(zero) = zero else {
            r.pass("V");
            return r;
        };
        let vname = |v: VertexId| g.vertex_name(v).to_string();
        let ename = |e: EdgeId| g.edge_name(e).to_string();

        let mut fail = None;
        'v: for v in g.vertices() {
            for w in g.vertices() {
                let lhs = self.vertices[v.0].mul_t(&self.vertices[w.0]);
                let rhs = if v == w { self.vertices[v.0].clone() } else { zero.clone() };
                if lhs != rhs {
                    fail = Some(format!("{} {} != {}", vname(v), vname(w), if v == w { vname(v) } else { "0".into() }));
                    break 'v;
                }
            }
        }
        r.push("V", fail.map_or(Verdict::Pass, Verdict::Fail));

        let mut fail = None;
        for e in g.edges() {
            let (s, t) = (g.source(e), g.range(e));
            let x = &self.edges[e.0];
            if self.vertices[s.0].mul_t(x) != *x {
                fail = Some(format!("{} {} != {}", vname(s), ename(e), ename(e)));
            } else if x.mul_t(&self.vertices[t.0]) != *x {
                fail = Some(format!("{} {} != {}", ename(e), vname(t), ename(e)));
            }
            if fail.is_some() {
                break;
            }
        }
        r.push("E1", fail.map_or(Verdict::Pass, Verdict::Fail));

        let mut fail = None;
        for e in g.edges() {
            let (s, t) = (g.source(e), g.range(e));
            let x = &self.ghosts[e.0];
            if self.vertices[t.0].mul_t(x) != *x {
                fail = Some(format!("{} {}* != {}*", vname(t), ename(e), ename(e)));
            } else if x.mul_t(&self.vertices[s.0]) != *x {
                fail = Some(format!("{}* {} != {}*", ename(e), vname(s), ename(e)));
            }
            if fail.is_some() {
                break;
            }
        }
        r.push("E2", fail.map_or(Verdict::Pass, Verdict::Fail));

        let mut fail = None;
        'ck1: for f in g.edges() {
            for e in g.edges() {
                let lhs = self.ghosts[f.0].mul_t(&self.edges[e.0]);
                let rhs = if e == f { self.vertices[g.range(e).0].clone() } else { zero.clone() };
                if lhs != rhs {
                    let want = if e == f { vname(g.range(e)) } else { "0".into() };
                    fail = Some(format!("{}* {} != {want}", ename(f), ename(e)));
                    break 'ck1;
                }
            }
        }
        r.push("CK1", fail.map_or(Verdict::Pass, Verdict::Fail));

        let mut fail = None;
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let sum = g
                .out_edges(v)
                .iter()
                .fold(zero.clone(), |acc, &e| acc.add_t(&self.edges[e.0].mul_t(&self.ghosts[e.0])));
            if sum != self.vertices[v.0] {
                fail = Some(format!("{} != sum of e e* over edges leaving it", vname(v)));
                break;
            }
        }
        r.push("CK2", fail.map_or(Verdict::Pass, Verdict::Fail));

        let mut fail = None;
        for v in g.vertices() {
            if !self.vertices[v.0].homogeneous_of(0) {
                fail = Some(format!("image of {} is not of degree 0", vname(v)));
                break;
            }
        }
        if fail.is_none() {
            for e in g.edges() {
                let w = g.weight(e);
                if !self.edges[e.0].homogeneous_of(w) {
                    fail = Some(format!("image of {} is not of degree {w}", ename(e)));
                } else if !self.ghosts[e.0].homogeneous_of(-w) {
                    fail = Some(format!("image of {}* is not of degree {}", ename(e), -w));
                }
                if fail.is_some() {
                    break;
                }
            }
        }
        r.push("degree", fail.map_or(Verdict::Pass, Verdict::Fail));

        if let Some(unit) = unit {
            let sum = self.vertices.iter().fold(zero.clone(), |acc, x| acc.add_t(x));
            r.check("unital", sum == *unit, || "vertex images do not sum to 1".into());
        }

        let star_ok = (0..self.edges.len()).all(|i| self.ghosts[i] == self.edges[i].star_t())
            && self.vertices.iter().all(|x| x.star_t() == *x);
        r.push("star", Verdict::Info(if star_ok { "star-compatible" } else { "not star-compatible" }.into()));
        r
    }

    pub fn is_star_compatible(&self) -> bool {
        (0..self.edges.len()).all(|i| self.ghosts[i] == self.edges[i].star_t())
            && self.vertices.iter().all(|x| x.star_t() == *x)
    }
}

/// A generator-image description of a map `L(E) -> L(F)`.
#[derive(Debug, Clone)]
pub struct GradedHom<R: Ring> {
    images: HomImages<Element<R>>,
    target: Arc<LeavittAlgebra<R>>,
    verified: bool,
}

impl<R: Ring> GradedHom<R> {
    pub fn new(
        source: impl Into<Arc<Graph>>,
        target: &Arc<LeavittAlgebra<R>>,
        vertices: Vec<Element<R>>,
        edges: Vec<Element<R>>,
        ghosts: Vec<Element<R>>,
    ) -> Result<Self> {
        for x in vertices.iter().chain(&edges).chain(&ghosts) {
            LeavittAlgebra::compatible(target, x.algebra())?;
        }
        let images = HomImages::new(source.into(), vertices, edges, ghosts)?;
        Ok(GradedHom { images, target: target.clone(), verified: false })
    }

    pub fn from_images(images: HomImages<Element<R>>, target: &Arc<LeavittAlgebra<R>>) -> Result<Self> {
        GradedHom::new(images.source.clone(), target, images.vertices, images.edges, images.ghosts)
    }

    pub fn identity(algebra: &Arc<LeavittAlgebra<R>>) -> Self {
        let g = algebra.graph();
        let mut h = GradedHom::new(
            algebra.graph_arc().clone(),
            algebra,
            g.vertices().map(|v| algebra.vertex(v)).collect(),
            g.edges().map(|e| algebra.edge(e)).collect(),
            g.edges().map(|e| algebra.ghost(e)).collect(),
        )
        .expect("identity images");
        h.verified = true;
        h
    }

    /// Reads a hom file: `v -> EXPR`, `e -> EXPR`, `e* -> EXPR` or
    /// `e* -> auto`. A missing `e*` line means `auto`.
    pub fn parse(source: impl Into<Arc<Graph>>, target: &Arc<LeavittAlgebra<R>>, text: &str) -> Result<Self> {
        let images = parse_hom_images(&source.into(), target, text)?;
        GradedHom::from_images(images, target)
    }

    pub fn source(&self) -> &Graph {
        &self.images.source
    }

    pub fn target(&self) -> &Arc<LeavittAlgebra<R>> {
        &self.target
    }

    pub fn images(&self) -> &HomImages<Element<R>> {
        &self.images
    }

    pub fn vertex_image(&self, v: VertexId) -> &Element<R> {
        &self.images.vertices[v.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> &Element<R> {
        &self.images.edges[e.0]
    }

    pub fn ghost_image(&self, e: EdgeId) -> &Element<R> {
        &self.images.ghosts[e.0]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn is_star_compatible(&self) -> bool {
        self.images.is_star_compatible()
    }

    /// Runs every relation check and records the outcome.
    pub fn verify(&mut self) -> Report {
        let report = self.images.check_relations(Some(&self.target.one()));
        self.verified = report.passed();
        report
    }

    /// Image of an element of `L(E)` over the same coefficient ring.
    pub fn apply(&self, x: &Element<R>) -> Result<Element<R>> {
        if x.graph() != self.source() {
            return Err(Error::GraphMismatch);
        }
        let mut acc = self.target.zero();
        for (m, c) in x.terms() {
            acc = &acc + &self.apply_monomial(m).scale(c);
        }
        Ok(acc)
    }

    fn apply_monomial(&self, m: &Monomial) -> Element<R> {
        if m.alpha.is_empty() && m.beta.is_empty() {
            return self.images.vertices[m.alpha.start.0].clone();
        }
        let mut acc = self.images.vertices[m.alpha.start.0].clone();
        for &e in &m.alpha.edges {
            acc = &acc * &self.images.edges[e.0];
        }
        for &e in m.beta.edges.iter().rev() {
            acc = &acc * &self.images.ghosts[e.0];
        }
        acc
    }

    pub fn to_text(&self) -> String {
        format_hom_images(&self.images)
    }
}

pub fn format_hom_images<T: Target>(h: &HomImages<T>) -> String {
    let g = &h.source;
    let mut s = String::new();
    for v in g.vertices() {
        s.push_str(&format!("{} -> {}\n", g.vertex_name(v), h.vertices[v.0]));
    }
    for e in g.edges() {
        s.push_str(&format!("{} -> {}\n", g.edge_name(e), h.edges[e.0]));
    }
    for e in g.edges() {
        s.push_str(&format!("{}* -> {}\n", g.edge_name(e), h.ghosts[e.0]));
    }
    s
}

/// Parses the hom file format into images over `target`.
pub fn parse_hom_images<R: Ring>(
    source: &Arc<Graph>,
    target: &Arc<LeavittAlgebra<R>>,
    text: &str,
) -> Result<HomImages<Element<R>>> {
    let g = source;
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut vertices: Vec<Option<Element<R>>> = vec![None; g.vertex_count()];
    let mut edges: Vec<Option<Element<R>>> = vec![None; g.edge_count()];
    let mut ghosts: Vec<Option<Option<Element<R>>>> = vec![None; g.edge_count()];
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| err(lineno, "expected `<generator> -> <expression>`".into()))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let parse = |src: &str| {
            target.parse(src).map_err(|e| match e {
                Error::Syntax { position, message } => {
                    err(lineno, format!("syntax error at position {position}: {message}"))
                }
                other => err(lineno, other.to_string()),
            })
        };
        if let Some(name) = lhs.strip_suffix('*') {
            let e = g.edge(name.trim()).ok_or_else(|| err(lineno, format!("unknown edge `{name}`")))?;
            if ghosts[e.0].is_some() {
                return Err(err(lineno, format!("duplicate image for `{lhs}`")));
            }
            ghosts[e.0] = Some(if rhs == "auto" { None } else { Some(parse(rhs)?) });
        } else if let Some(v) = g.vertex(lhs) {
            if vertices[v.0].replace(parse(rhs)?).is_some() {
                return Err(err(lineno, format!("duplicate image for `{lhs}`")));
            }
        } else if let Some(e) = g.edge(lhs) {
            if edges[e.0].replace(parse(rhs)?).is_some() {
                return Err(err(lineno, format!("duplicate image for `{lhs}`")));
            }
        } else {
            return Err(err(lineno, format!("`{lhs}` is not a generator of the source graph")));
        }
    }
    let missing = |name: &str| err(text.lines().count().max(1), format!("no image given for `{name}`"));
    let vertices = g
        .vertices()
        .map(|v| vertices[v.0].clone().ok_or_else(|| missing(g.vertex_name(v))))
        .collect::<Result<Vec<_>>>()?;
    let edges = g
        .edges()
        .map(|e| edges[e.0].clone().ok_or_else(|| missing(g.edge_name(e))))
        .collect::<Result<Vec<_>>>()?;
    let ghosts = g
        .edges()
        .map(|e| ghosts[e.0].clone().flatten().unwrap_or_else(|| edges[e.0].star()))
        .collect();
    HomImages::new(source.clone(), vertices, edges, ghosts)
}

/// Relation report for `h`; records the verification on the hom.
pub fn verify_hom<R: Ring>(h: &mut GradedHom<R>) -> Report {
    h.verify()
}

/// The induced map on dimension modules: column `v` is the K_0 class of
/// `h(v)`, all lifted to a common stage.
pub fn induced_k0<F: Field>(h: &GradedHom<F>) -> Result<(IntMatrix, usize)> {
    if !h.is_verified() {
        return Err(Error::UnverifiedHom);
    }
    let target = DimensionModule::new(h.target().graph_arc().clone())?;
    let classes = h.images.vertices.iter().map(k0_class).collect::<Result<Vec<_>>>()?;
    let stage = classes.iter().map(|c| c.stage).max().unwrap_or(0);
    let mut m = IntMatrix::zeros(target.rank(), classes.len());
    for (j, c) in classes.iter().enumerate() {
        let lifted = target.at_stage(c, stage)?;
        for (i, x) in lifted.vector.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok((m, stage))
}

/// Runs the pointed hom check on the induced map of a verified unital hom.
pub fn induced_k0_report<F: Field>(h: &GradedHom<F>) -> Result<Report> {
    let (m, stage) = induced_k0(h)?;
    let e = DimensionModule::new(h.images.source.clone())?;
    let f = DimensionModule::new(h.target().graph_arc().clone())?;
    Ok(verify_hom_certificate(&e, &f, &m, stage, true))
}

/// A unit of a tensor product together with its inverse.
#[derive(Debug, Clone)]
pub struct TensorUnit<R: Ring> {
    pub unit: TensorElement<R>,
    pub inverse: TensorElement<R>,
}

impl<R: Ring> TensorUnit<R> {
    pub fn verify(&self) -> bool {
        let one = TensorElement::one(self.unit.left_algebra(), self.unit.right_algebra()).expect("same ring");
        self.unit.degree() == Some(0)
            && self.unit.checked_mul(&self.inverse).is_ok_and(|x| x == one)
            && self.inverse.checked_mul(&self.unit).is_ok_and(|x| x == one)
    }
}

/// `u_1 = sum_e e (x) e_t* + 1 - sum_v v (x) v` in `L(E) (x) L(E_t)`, with
/// inverse `sum_e e* (x) e_t + 1 - sum_v v (x) v`.
pub fn u_one<R: Ring>(algebra: &Arc<LeavittAlgebra<R>>) -> Result<TensorUnit<R>> {
    let h = GradedHom::identity(algebra);
    u_f(&h)
}

/// `u_f = 1 (x) 1 - sum_v f(v) (x) v + sum_e f(e) (x) e_t*`, inverse
/// `1 (x) 1 - sum_v f(v) (x) v + sum_e f(e*) (x) e_t`.
pub fn u_f<R: Ring>(h: &GradedHom<R>) -> Result<TensorUnit<R>> {
    if !h.is_verified() {
        return Err(Error::UnverifiedHom);
    }
    let g = h.source();
    if !g.is_essential() {
        return Err(Error::NotEssential);
    }
    let left = h.target().clone();
    let right = LeavittAlgebra::new(g.dual(), left.ring().clone());
    let mut base = TensorElement::one(&left, &right)?;
    for v in g.vertices() {
        base = base.checked_sub(&TensorElement::pure(h.vertex_image(v), &right.vertex(v))?)?;
    }
    let (mut unit, mut inverse) = (base.clone(), base);
    for e in g.edges() {
        unit = unit.checked_add(&TensorElement::pure(h.edge_image(e), &right.ghost(e))?)?;
        inverse = inverse.checked_add(&TensorElement::pure(h.ghost_image(e), &right.edge(e))?)?;
    }
    let u = TensorUnit { unit, inverse };
    if !u.verify() {
        return Err(Error::NotAUnit);
    }
    Ok(u)
}

/// Corner units `z_e` in `h(e e*) L(F)_0 h(e e*)` with their corner inverses.
#[derive(Debug, Clone)]
pub struct EdgeUnitFamily<F: Field> {
    pub units: Vec<Element<F>>,
    pub inverses: Vec<Element<F>>,
}

impl<F: Field> EdgeUnitFamily<F> {
    /// `z_e = h(e e*)` for every edge.
    pub fn trivial(h: &GradedHom<F>) -> Self {
        let units: Vec<Element<F>> = h.source().edges().map(|e| corner_projection(h, e)).collect();
        EdgeUnitFamily { inverses: units.clone(), units }
    }

    /// Checks the corner condition and computes the inverses.
    pub fn new(h: &GradedHom<F>, units: Vec<Element<F>>) -> Result<Self> {
        let g = h.source();
        if units.len() != g.edge_count() {
            return Err(Error::DimensionMismatch("one unit per edge expected".into()));
        }
        let mut inverses = Vec::with_capacity(units.len());
        for e in g.edges() {
            let name = || Error::CornerConditionFailed(g.edge_name(e).to_string());
            let p = corner_projection(h, e);
            let z = &units[e.0];
            LeavittAlgebra::compatible(h.target(), z.algebra())?;
            if !is_length_balanced(z) || &(&p * z) * &p != *z {
                return Err(name());
            }
            let inv = corner_inverse(z, &p).map_err(|_| name())?;
            if z * &inv != p || &inv * z != p {
                return Err(name());
            }
            inverses.push(inv);
        }
        Ok(EdgeUnitFamily { units, inverses })
    }

    /// Reads `e -> EXPR` lines; unlisted edges get the trivial unit.
    pub fn parse(h: &GradedHom<F>, text: &str) -> Result<Self> {
        let g = h.source();
        let mut units: Vec<Element<F>> = g.edges().map(|e| corner_projection(h, e)).collect();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected `<edge> -> <expression>`".into(),
            })?;
            let e = g.edge(lhs.trim()).ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("unknown edge `{}`", lhs.trim()),
            })?;
            units[e.0] = h.target().parse(rhs.trim()).map_err(|err| Error::Parse { line: lineno, message: err.to_string() })?;
        }
        EdgeUnitFamily::new(h, units)
    }
}

/// `h(e) h(e*)`.
pub fn corner_projection<R: Ring>(h: &GradedHom<R>, e: EdgeId) -> Element<R> {
    h.edge_image(e) * h.ghost_image(e)
}

/// The deformed hom `e -> z_e h(e)`, `e* -> h(e*) z_e^{-1}`, vertices fixed.
pub fn phi_z<F: Field>(h: &GradedHom<F>, z: &EdgeUnitFamily<F>) -> Result<GradedHom<F>> {
    if !h.is_verified() {
        return Err(Error::UnverifiedHom);
    }
    let g = h.source();
    let edges = g.edges().map(|e| &z.units[e.0] * h.edge_image(e)).collect();
    let ghosts = g.edges().map(|e| h.ghost_image(e) * &z.inverses[e.0]).collect();
    let mut out = GradedHom::new(h.images.source.clone(), h.target(), h.images.vertices.clone(), edges, ghosts)?;
    let report = out.verify();
    assert!(report.passed(), "deformed hom must verify:\n{report}");
    Ok(out)
}

/// For each vertex `w` of the source, the product over edges leaving `w` of
/// the K_1 classes of `1 - h(e e*) + z_e`.
pub fn u_representative<F: Field>(h: &GradedHom<F>, z: &EdgeUnitFamily<F>) -> Result<Vec<K1Class<F>>> {
    let g = h.source();
    let model = K1Model::new(h.target().graph_arc().clone(), h.target().ring().clone())?;
    let one = h.target().one();
    let mut out = Vec::with_capacity(g.vertex_count());
    for w in g.vertices() {
        let mut acc = model.one();
        for &e in g.out_edges(w) {
            let x = &(&one - &corner_projection(h, e)) + &z.units[e.0];
            acc = model.mul(&acc, &k1_class(&x)?);
        }
        out.push(acc);
    }
    Ok(out)
}

/// `a -> u h(a) u^{-1}` for a degree-zero unit `u`.
pub fn ad_conjugate<F: Field>(h: &GradedHom<F>, u: &Element<F>) -> Result<GradedHom<F>> {
    let inv = unit_inverse(u)?;
    let out = ad_pair(h, u, &inv)?;
    if !out.is_verified() {
        return Err(Error::NotAUnit);
    }
    Ok(out)
}

/// `a -> u h(a) v`; the result carries its verification status.
pub fn ad_pair<R: Ring>(h: &GradedHom<R>, u: &Element<R>, v: &Element<R>) -> Result<GradedHom<R>> {
    let conj = |x: &Element<R>| -> Result<Element<R>> { u.checked_mul(x)?.checked_mul(v) };
    let imgs = &h.images;
    let mut out = GradedHom::new(
        imgs.source.clone(),
        h.target(),
        imgs.vertices.iter().map(conj).collect::<Result<_>>()?,
        imgs.edges.iter().map(conj).collect::<Result<_>>()?,
        imgs.ghosts.iter().map(conj).collect::<Result<_>>()?,
    )?;
    out.verify();
    Ok(out)
}

/// A map into `B[t]` given on generators.
#[derive(Debug, Clone)]
pub struct HomotopyCertificate<T> {
    pub images: HomImages<T>,
}

/// Checks the relations over `B[t]` and that evaluation at 0 and 1 gives
/// `start` and `end`.
pub fn verify_homotopy<F, T>(
    c: &HomotopyCertificate<T>,
    start: &HomImages<T::Value>,
    end: &HomImages<T::Value>,
    unit: Option<&T>,
    field: &F,
) -> Report
where
    F: Field,
    T: Target + Evaluate<F>,
{
    let mut r = c.images.check_relations(unit);
    let ev0 = c.images.map(|x| x.evaluate(&field.zero()));
    let ev1 = c.images.map(|x| x.evaluate(&field.one()));
    r.check("ev0", images_match(&ev0, start), || "evaluation at 0 differs from the first endpoint".into());
    r.check("ev1", images_match(&ev1, end), || "evaluation at 1 differs from the second endpoint".into());
    r
}

fn images_match<T: Target>(a: &HomImages<T>, b: &HomImages<T>) -> bool {
    a.source == b.source && a.vertices == b.vertices && a.edges == b.edges && a.ghosts == b.ghosts
}

/// Checks every link of a chain of homotopies and that consecutive ones
/// share endpoints: `ev1(h_j) = ev0(h_{j+1})`.
pub fn chain_homotopy<F, T>(chain: &[HomotopyCertificate<T>], unit: Option<&T>, field: &F) -> Report
where
    F: Field,
    T: Target + Evaluate<F>,
{
    let mut r = Report::new();
    if chain.is_empty() {
        r.fail("chain", "empty chain");
        return r;
    }
    for (j, c) in chain.iter().enumerate() {
        r.extend(&format!("h{}.", j + 1), c.images.check_relations(unit));
    }
    for j in 0..chain.len() - 1 {
        let end = chain[j].images.map(|x| x.evaluate(&field.one()));
        let next = chain[j + 1].images.map(|x| x.evaluate(&field.zero()));
        r.check(format!("link{}", j + 1), images_match(&end, &next), || {
            format!("h{} at 1 differs from h{} at 0", j + 1, j + 2)
        });
    }
    r
}

/// Endpoints of a chain: evaluation of the first link at 0 and the last at 1.
#[allow(clippy::type_complexity)]
pub fn chain_endpoints<F, T>(chain: &[HomotopyCertificate<T>], field: &F) -> Option<(HomImages<T::Value>, HomImages<T::Value>)>
where
    F: Field,
    T: Target + Evaluate<F>,
{
    let first = chain.first()?.images.map(|x| x.evaluate(&field.zero()));
    let last = chain.last()?.images.map(|x| x.evaluate(&field.one()));
    Some((first, last))
}

/// A hom lifted to constant polynomials: the constant homotopy.
pub fn constant_homotopy<F: Field>(h: &GradedHom<F>) -> HomotopyCertificate<Element<Polynomials<F>>> {
    let poly = polynomial_algebra(h.target());
    HomotopyCertificate { images: h.images.map(|x| lift_constant(x, &poly)) }
}

/// `I + x E_{ij}` in 2x2 matrices.
fn shear<R: Ring>(algebra: &Arc<LeavittAlgebra<R>>, i: usize, j: usize, x: &Element<R>) -> ElementMatrix<R> {
    let mut m = ElementMatrix::identity(algebra, 2);
    m.set(i, j, x.clone());
    m
}

fn product<R: Ring>(ms: &[ElementMatrix<R>]) -> ElementMatrix<R> {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.checked_mul(m).expect("2x2"))
}

/// `R(s) = e12(-s) e21(s) e12(-s)`; `R(0) = I`, `R(1) = [[0, -1], [1, 0]]`.
pub fn rotation_path<R: Ring>(algebra: &Arc<LeavittAlgebra<R>>, s: &Element<R>) -> ElementMatrix<R> {
    product(&[shear(algebra, 0, 1, &-s), shear(algebra, 1, 0, s), shear(algebra, 0, 1, &-s)])
}

/// `C(s) = e12(s u) e21(-s u^{-1}) e12(s u) R(s)` and its inverse; `C(0) = I`
/// and `C(1) = diag(u, u^{-1})`.
pub fn conjugation_path<R: Ring>(
    algebra: &Arc<LeavittAlgebra<R>>,
    s: &Element<R>,
    u: &Element<R>,
    u_inv: &Element<R>,
) -> (ElementMatrix<R>, ElementMatrix<R>) {
    let su = s * u;
    let su_inv = s * u_inv;
    let c = product(&[
        shear(algebra, 0, 1, &su),
        shear(algebra, 1, 0, &-&su_inv),
        shear(algebra, 0, 1, &su),
        rotation_path(algebra, s),
    ]);
    let c_inv = product(&[
        shear(algebra, 0, 1, s),
        shear(algebra, 1, 0, &-s),
        shear(algebra, 0, 1, s),
        shear(algebra, 0, 1, &-&su),
        shear(algebra, 1, 0, &su_inv),
        shear(algebra, 0, 1, &-&su),
    ]);
    (c, c_inv)
}

/// `x -> diag(x, 0)`.
pub fn corner_embedding<R: Ring>(x: &Element<R>) -> ElementMatrix<R> {
    ElementMatrix::unit(x, 2, 0, 0)
}

/// A homotopy from `ι_1 ad_u h` (at 0) to `ι_1 h` (at 1) in 2x2 matrices,
/// with the report of its verification.
#[derive(Debug, Clone)]
pub struct RotationCertificate<F: Field> {
    pub homotopy: HomotopyCertificate<ElementMatrix<Polynomials<F>>>,
    pub start: HomImages<ElementMatrix<F>>,
    pub end: HomImages<ElementMatrix<F>>,
    pub report: Report,
}

/// Conjugates `ι_1 h` by `C(1 - t)`. Returns an error unless `u` is a
/// degree-zero unit; the certificate is verified before it is returned.
pub fn rotation_m2_certificate<F: Field>(h: &GradedHom<F>, u: &Element<F>) -> Result<RotationCertificate<F>> {
    if !is_length_balanced(u) || u.is_zero() {
        return Err(Error::NotDegreeZero);
    }
    let u_inv = unit_inverse(u)?;
    let poly = polynomial_algebra(h.target());
    let ring = poly.ring().clone();
    let field = h.target().ring().clone();
    let s = poly.scalar(ring.linear(field.one(), field.neg(&field.one())));
    let (c, c_inv) = conjugation_path(&poly, &s, &lift_constant(u, &poly), &lift_constant(&u_inv, &poly));
    let images = h.images.map(|x| {
        c.checked_mul(&corner_embedding(&lift_constant(x, &poly)))
            .and_then(|m| m.checked_mul(&c_inv))
            .expect("2x2 over one algebra")
    });
    let conj = ad_pair(h, u, &u_inv)?;
    let start = conj.images.map(corner_embedding);
    let end = h.images.map(corner_embedding);
    let homotopy = HomotopyCertificate { images };
    let report = verify_homotopy(&homotopy, &start, &end, None, &field);
    if !report.passed() {
        return Err(Error::NotAUnit);
    }
    Ok(RotationCertificate { homotopy, start, end, report })
}

/// `σ [1 - h(e e*) + u] = [1 - h(f e (f e)*) + h(f) u h(f*)]` for `r(f) = s(e)`
/// and `u` a unit of the corner at `h(e e*)`.
pub fn shift_identity_holds<F: Field>(h: &GradedHom<F>, e: EdgeId, f: EdgeId, u: &Element<F>) -> Result<bool> {
    let g = h.source();
    if g.range(f) != g.source(e) {
        return Err(Error::InvalidGraph("edges do not compose".into()));
    }
    let one = h.target().one();
    let model = K1Model::new(h.target().graph_arc().clone(), h.target().ring().clone())?;
    let lhs = model.sigma_act(&k1_class(&(&(&one - &corner_projection(h, e)) + u))?, 1);
    let fe = h.edge_image(f) * h.edge_image(e);
    let fe_star = h.ghost_image(e) * h.ghost_image(f);
    let moved = &(h.edge_image(f) * u) * h.ghost_image(f);
    let rhs = k1_class(&(&(&one - &(&fe * &fe_star)) + &moved))?;
    Ok(model.equal(&lhs, &rhs))
}
