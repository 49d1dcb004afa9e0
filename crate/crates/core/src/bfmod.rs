//! Bowen-Franks modules.
//!
//! Presentations over `Z[s]` (with `s` printed as `σ`), the ungraded
//! Bowen-Franks group, and for regular graphs the dimension module: the
//! direct limit of `Z^{E^0}` along the transposed adjacency matrix `A^t`.
//! An element is a vector tagged with a stage `k`, and `(x, k)` is identified
//! with `(A^t x, k + 1)`. The shift `σ` moves a vector one stage up.
//!
//! Isomorphisms and homomorphisms between dimension modules are handled as
//! integer-matrix certificates that are checked exactly.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::linalg::{echelon_basis, for_each_bounded_point, smith_normal_form, solve_integer, IntMatrix};
use crate::report::{Report, Verdict};

pub const DEFAULT_STAGE_CAP: usize = 64;

/// A relation matrix `constant + σ * sigma`; rows are generators, columns
/// relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub constant: IntMatrix,
    pub sigma: IntMatrix,
    pub dual: bool,
}

impl BFPresentation {
    pub fn same_relation_matrix(&self, other: &BFPresentation) -> bool {
        self.constant == other.constant && self.sigma == other.sigma
    }

    /// Entry `(i, j)` as text, e.g. `1 - 2σ`.
    pub fn entry(&self, i: usize, j: usize) -> String {
        let c = self.constant.get(i, j);
        let s = self.sigma.get(i, j);
        let sig = |k: &BigInt| if k.abs().is_one() { "σ".to_string() } else { format!("{}σ", k.abs()) };
        match (c.is_zero(), s.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => c.to_string(),
            (true, false) => format!("{}{}", if s.is_negative() { "-" } else { "" }, sig(s)),
            (false, false) => format!("{} {} {}", c, if s.is_negative() { "-" } else { "+" }, sig(s)),
        }
    }
}

impl fmt::Display for BFPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(" "))?;
        writeln!(f, "relations: {}", self.relations.join(" "))?;
        for i in 0..self.constant.rows() {
            let row: Vec<String> = (0..self.constant.cols()).map(|j| self.entry(i, j)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn inclusion(g: &Graph, regular: &[VertexId]) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertex_count(), regular.len());
    for (j, v) in regular.iter().enumerate() {
        m.add_to(v.0, j, 1);
    }
    m
}

/// Generators `E^0`, one relation `v - σ sum_{s(e) = v} r(e)` per regular
/// vertex: the matrix `I - σ A^t`.
pub fn bf_graded(g: &Graph) -> BFPresentation {
    let regular = g.regular_vertices();
    BFPresentation {
        generators: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
        relations: regular.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
        constant: inclusion(g, &regular),
        sigma: g.adjacency_matrix().transpose().scale(&BigInt::from(-1)),
        dual: false,
    }
}

/// Generators the regular vertices, relations `E^0`: the matrix `I^t - σ A`.
pub fn bf_dual(g: &Graph) -> BFPresentation {
    let regular = g.regular_vertices();
    BFPresentation {
        generators: regular.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
        relations: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
        constant: inclusion(g, &regular).transpose(),
        sigma: g.adjacency_matrix().scale(&BigInt::from(-1)),
        dual: true,
    }
}

/// Compares the dual presentation of `g` with the graded presentation of the
/// dual graph.
pub fn bf_dual_matches_dual_graph(g: &Graph) -> Result<bool> {
    if !g.is_essential() {
        return Err(Error::NotEssential);
    }
    Ok(bf_dual(g).same_relation_matrix(&bf_graded(&g.dual())))
}

/// `coker(I - A^t)` as a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UngradedBF {
    /// Torsion coefficients above 1, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
}

impl fmt::Display for UngradedBF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn bf_ungraded(g: &Graph) -> Result<UngradedBF> {
    if !g.is_regular() {
        return Err(Error::NonRegularGraph);
    }
    let n = g.vertex_count();
    let m = IntMatrix::identity(n).sub(&g.adjacency_matrix().transpose());
    let diag = smith_normal_form(&m).diagonal();
    Ok(UngradedBF {
        divisors: diag.iter().filter(|d| **d > BigInt::one()).cloned().collect(),
        free_rank: diag.iter().filter(|d| d.is_zero()).count(),
    })
}

/// A vector of `Z^{E^0}` at a stage of the direct limit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimModElement {
    pub stage: usize,
    pub vector: Vec<BigInt>,
}

impl DimModElement {
    pub fn new(vector: Vec<BigInt>, stage: usize) -> Self {
        DimModElement { stage, vector }
    }

    pub fn from_i64(vector: &[i64], stage: usize) -> Self {
        DimModElement { stage, vector: vector.iter().map(|&x| BigInt::from(x)).collect() }
    }
}

impl fmt::Display for DimModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector.iter().map(ToString::to_string).collect();
        write!(f, "({}) @ {}", parts.join(", "), self.stage)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    Zero,
    NotPositive,
    /// No nonnegative representative within the stage cap, and negativity
    /// could not be certified.
    Undecided(usize),
}

/// The dimension module of a regular graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionModule {
    graph: Arc<Graph>,
    transition: IntMatrix,
    cap: usize,
}

impl DimensionModule {
    pub fn new(g: impl Into<Arc<Graph>>) -> Result<Self> {
        let graph = g.into();
        if !graph.is_regular() {
            return Err(Error::NonRegularGraph);
        }
        let transition = graph.adjacency_matrix().transpose();
        Ok(DimensionModule { graph, transition, cap: DEFAULT_STAGE_CAP })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `A^t`.
    pub fn transition(&self) -> &IntMatrix {
        &self.transition
    }

    pub fn element(&self, vector: Vec<BigInt>, stage: usize) -> Result<DimModElement> {
        let x = DimModElement { stage, vector };
        self.check(&x)?;
        Ok(x)
    }

    pub fn check(&self, x: &DimModElement) -> Result<()> {
        if x.vector.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a graph with {} vertices",
                x.vector.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> DimModElement {
        DimModElement { stage: 0, vector: vec![BigInt::zero(); self.rank()] }
    }

    pub fn vertex(&self, v: VertexId) -> DimModElement {
        let mut x = self.zero();
        x.vector[v.0] = BigInt::one();
        x
    }

    /// `1_E = sum_v [v]`.
    pub fn order_unit(&self) -> DimModElement {
        DimModElement { stage: 0, vector: vec![BigInt::one(); self.rank()] }
    }

    /// The same class one stage higher.
    pub fn push(&self, x: &DimModElement) -> DimModElement {
        DimModElement { stage: x.stage + 1, vector: self.transition.mul_vec(&x.vector) }
    }

    pub fn at_stage(&self, x: &DimModElement, stage: usize) -> Result<DimModElement> {
        if stage < x.stage {
            return Err(Error::StageTooSmall { have: stage, need: x.stage });
        }
        let mut y = x.clone();
        while y.stage < stage {
            y = self.push(&y);
        }
        Ok(y)
    }

    fn common(&self, x: &DimModElement, y: &DimModElement) -> Result<(DimModElement, DimModElement)> {
        self.check(x)?;
        self.check(y)?;
        let s = x.stage.max(y.stage);
        Ok((self.at_stage(x, s)?, self.at_stage(y, s)?))
    }

    pub fn add(&self, x: &DimModElement, y: &DimModElement) -> Result<DimModElement> {
        let (a, b) = self.common(x, y)?;
        Ok(DimModElement { stage: a.stage, vector: a.vector.iter().zip(&b.vector).map(|(p, q)| p + q).collect() })
    }

    pub fn neg(&self, x: &DimModElement) -> DimModElement {
        DimModElement { stage: x.stage, vector: x.vector.iter().map(|p| -p).collect() }
    }

    pub fn sub(&self, x: &DimModElement, y: &DimModElement) -> Result<DimModElement> {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &DimModElement, k: &BigInt) -> DimModElement {
        DimModElement { stage: x.stage, vector: x.vector.iter().map(|p| p * k).collect() }
    }

    /// `Some(j)` with `(A^t)^j v = 0`, searching `j <= limit`.
    fn vanishes_within(&self, v: &[BigInt], limit: usize) -> Option<usize> {
        let mut cur = v.to_vec();
        for j in 0..=limit {
            if cur.iter().all(Zero::is_zero) {
                return Some(j);
            }
            cur = self.transition.mul_vec(&cur);
        }
        None
    }

    /// Whether the class of `v` is zero. The kernels of the powers of `A^t`
    /// stabilize after `n = |E^0|` steps, so this is decisive.
    pub fn is_eventually_zero(&self, v: &[BigInt]) -> bool {
        self.vanishes_within(v, self.rank()).is_some()
    }

    /// Equality of classes. Fails with `StageCapExceeded` only when the cap
    /// is below the number of vertices and no decision was reached.
    pub fn equal(&self, x: &DimModElement, y: &DimModElement) -> Result<bool> {
        let d = self.sub(x, y)?;
        let n = self.rank();
        if self.vanishes_within(&d.vector, n.min(self.cap)).is_some() {
            Ok(true)
        } else if self.cap >= n {
            Ok(false)
        } else {
            Err(Error::StageCapExceeded(self.cap))
        }
    }

    /// A representative at the least stage reachable by integer preimages.
    pub fn canonicalize(&self, x: &DimModElement) -> Result<DimModElement> {
        self.check(x)?;
        if self.is_eventually_zero(&x.vector) {
            return Ok(self.zero());
        }
        let n = self.rank();
        let lhs = self.transition.pow(n + 1);
        let settle = self.transition.pow(n);
        let mut cur = x.clone();
        while cur.stage > 0 {
            match solve_integer(&lhs, &settle.mul_vec(&cur.vector)) {
                Some(sol) => cur = DimModElement { stage: cur.stage - 1, vector: sol.particular },
                None => break,
            }
        }
        Ok(cur)
    }

    /// `σ^k x`: `σ` raises the stage, `σ^{-1}` applies `A^t` in place.
    pub fn sigma_act(&self, x: &DimModElement, k: i64) -> DimModElement {
        if k >= 0 {
            DimModElement { stage: x.stage + k as usize, vector: x.vector.clone() }
        } else {
            let mut v = x.vector.clone();
            for _ in 0..k.unsigned_abs() {
                v = self.transition.mul_vec(&v);
            }
            DimModElement { stage: x.stage, vector: v }
        }
    }

    /// Membership in the positive cone. A nonnegative representative within
    /// the cap proves positivity. For an irreducible graph a nonpositive
    /// nonzero representative proves the converse: pairing with the positive
    /// Perron eigenvector `l` of `A` gives `l . (A^t)^j x = λ^j l . x`, and
    /// every nonzero positive class pairs strictly positively.
    pub fn is_positive(&self, x: &DimModElement) -> Positivity {
        if self.is_eventually_zero(&x.vector) {
            return Positivity::Zero;
        }
        let irreducible = self.graph.is_irreducible();
        let mut v = x.vector.clone();
        for _ in 0..=self.cap {
            if v.iter().all(|c| !c.is_negative()) {
                return Positivity::Positive;
            }
            if irreducible && v.iter().all(|c| !c.is_positive()) {
                return Positivity::NotPositive;
            }
            v = self.transition.mul_vec(&v);
        }
        Positivity::Undecided(self.cap)
    }
}

/// `M` (F x E), `M'` (E x F) and a lag `l`: the map `x @ k -> M x @ k` with
/// inverse `y @ k -> M' y @ (k + l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub m: IntMatrix,
    pub m_prime: IntMatrix,
    pub lag: usize,
}

impl IsoCertificate {
    pub fn to_text(&self) -> String {
        let mut s = format!("lag: {}\nM:\n{}M':\n{}", self.lag, self.m, self.m_prime);
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<IsoCertificate> {
        let err = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
        let mut lag: Option<usize> = None;
        let mut section: Option<usize> = None;
        let mut blocks: [Vec<Vec<BigInt>>; 2] = [Vec::new(), Vec::new()];
        let mut seen = [false; 2];
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("lag:") {
                let v = rest.trim().parse::<usize>().map_err(|_| err(lineno, "lag must be a nonnegative integer"))?;
                lag = Some(v);
                section = None;
            } else if line == "M:" || line == "M':" {
                let i = usize::from(line == "M':");
                if seen[i] {
                    return Err(err(lineno, "duplicate matrix block"));
                }
                seen[i] = true;
                section = Some(i);
            } else {
                let i = section.ok_or_else(|| err(lineno, "matrix row outside a `M:` or `M':` block"))?;
                let row = line
                    .split_whitespace()
                    .map(|t| t.parse::<BigInt>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(lineno, "matrix entries must be integers"))?;
                if blocks[i].first().is_some_and(|r| r.len() != row.len()) {
                    return Err(err(lineno, "ragged matrix row"));
                }
                blocks[i].push(row);
            }
        }
        let lag = lag.ok_or_else(|| err(1, "missing `lag:` line"))?;
        if !seen[0] || !seen[1] {
            return Err(err(1, "both `M:` and `M':` blocks are required"));
        }
        let [m, mp] = blocks;
        Ok(IsoCertificate { m: IntMatrix::from_rows(m), m_prime: IntMatrix::from_rows(mp), lag })
    }
}

fn column_positivity(target: &DimensionModule, m: &IntMatrix) -> Verdict {
    let mut undecided = Vec::new();
    for j in 0..m.cols() {
        match target.is_positive(&DimModElement::new(m.column(j), 0)) {
            Positivity::Positive | Positivity::Zero => {}
            Positivity::NotPositive => return Verdict::Fail(format!("column {} is not positive", j + 1)),
            Positivity::Undecided(cap) => undecided.push(format!("column {} (cap {cap})", j + 1)),
        }
    }
    if undecided.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Undecided(undecided.join(", "))
    }
}

fn shape_ok(m: &IntMatrix, rows: usize, cols: usize) -> bool {
    (m.rows() == rows && m.cols() == cols) || (rows * cols == 0 && m.rows() * m.cols() == 0)
}

/// Checks every defining property of an isomorphism certificate, in order.
pub fn verify_iso_certificate(e: &DimensionModule, f: &DimensionModule, c: &IsoCertificate) -> Report {
    let (ne, nf) = (e.rank(), f.rank());
    let (ae, af) = (e.transition(), f.transition());
    let mut r = Report::new();
    let shapes = shape_ok(&c.m, nf, ne) && shape_ok(&c.m_prime, ne, nf);
    r.check("shape", shapes, || format!("expected M {nf}x{ne} and M' {ne}x{nf}"));
    if !shapes {
        return r;
    }
    r.check("intertwines-forward", af.mul(&c.m) == c.m.mul(ae), || "A_F^t M != M A_E^t".into());
    r.check("intertwines-backward", ae.mul(&c.m_prime) == c.m_prime.mul(af), || {
        "A_E^t M' != M' A_F^t".into()
    });
    r.check("left-inverse", c.m_prime.mul(&c.m) == ae.pow(c.lag), || format!("M' M != (A_E^t)^{}", c.lag));
    r.check("right-inverse", c.m.mul(&c.m_prime) == af.pow(c.lag), || format!("M M' != (A_F^t)^{}", c.lag));
    r.push("positive-forward", column_positivity(f, &c.m));
    r.push("positive-backward", column_positivity(e, &c.m_prime));
    let image = DimModElement::new(c.m.mul_vec(&e.order_unit().vector), 0);
    match f.equal(&image, &f.order_unit()) {
        Ok(true) => r.pass("pointed"),
        Ok(false) => r.fail("pointed", format!("M 1_E = {image} is not the order unit")),
        Err(err) => r.push("pointed", Verdict::Undecided(err.to_string())),
    }
    r
}

/// Checks that `x @ k -> M x @ (k + stage)` is a homomorphism of preordered
/// `Z[σ]`-modules (and, when requested, that it preserves the order unit).
pub fn verify_hom_certificate(
    e: &DimensionModule,
    f: &DimensionModule,
    m: &IntMatrix,
    stage: usize,
    require_pointed: bool,
) -> Report {
    let (ne, nf) = (e.rank(), f.rank());
    let mut r = Report::new();
    let shape = shape_ok(m, nf, ne);
    r.check("shape", shape, || format!("expected a {nf}x{ne} matrix"));
    if !shape {
        return r;
    }
    let defect = f.transition().mul(m).sub(&m.mul(e.transition()));
    let bad = (0..ne).find(|&j| !f.is_eventually_zero(&defect.column(j)));
    r.check("intertwines", bad.is_none(), || {
        format!("A_F^t M - M A_E^t is not eventually zero on column {}", bad.unwrap_or(0) + 1)
    });
    r.push("positive", column_positivity(f, m));
    let image = DimModElement::new(m.mul_vec(&e.order_unit().vector), stage);
    let pointed = f.equal(&image, &f.order_unit());
    let verdict = match (pointed, require_pointed) {
        (Ok(true), true) => Verdict::Pass,
        (Ok(false), true) => Verdict::Fail(format!("M 1_E = {image} is not the order unit")),
        (Err(err), true) => Verdict::Undecided(err.to_string()),
        (Ok(true), false) => Verdict::Info("pointed".into()),
        (Ok(false), false) => Verdict::Info("not pointed".into()),
        (Err(err), false) => Verdict::Info(err.to_string()),
    };
    r.push("pointed", verdict);
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub entry_max: u64,
    pub lag_max: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { entry_max: 8, lag_max: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(IsoCertificate),
    NotFoundWithinBounds,
}

fn to_matrix(v: &[BigInt], rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::from_rows((0..rows).map(|i| v[i * cols..(i + 1) * cols].to_vec()).collect())
}

/// Rows of the linear map `vec(X) -> vec(P X - X Q)` for `X` of size
/// `rows x cols`, `P` square of size `rows`, `Q` square of size `cols`.
fn sylvester_rows(p: &IntMatrix, q: &IntMatrix, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let mut eq = vec![BigInt::zero(); rows * cols];
            for k in 0..rows {
                eq[k * cols + j] += p.get(i, k);
            }
            for k in 0..cols {
                eq[i * cols + k] -= q.get(k, j);
            }
            out.push(eq);
        }
    }
    out
}

/// Rows of `vec(X) -> vec(L X R)`.
fn product_rows(l: &IntMatrix, r: &IntMatrix, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for i in 0..l.rows() {
        for j in 0..r.cols() {
            let mut eq = vec![BigInt::zero(); rows * cols];
            for a in 0..rows {
                for b in 0..cols {
                    eq[a * cols + b] += l.get(i, a) * r.get(b, j);
                }
            }
            out.push(eq);
        }
    }
    out
}

/// Bounded search for a pointed order isomorphism `E -> F`. Candidates `M`
/// run through the integer solutions of `A_F^t M = M A_E^t` with entries in
/// `[-entry_max, entry_max]`; for each positive pointed one and each lag the
/// inverse `M'` is solved for exactly. Only verified certificates are
/// returned; exhaustion says nothing about non-isomorphism.
pub fn search_pointed_iso(e: &DimensionModule, f: &DimensionModule, bounds: SearchBounds) -> SearchOutcome {
    let (ne, nf) = (e.rank(), f.rank());
    let bound = BigInt::from(bounds.entry_max);
    let eqs = sylvester_rows(f.transition(), e.transition(), nf, ne);
    let zero_rhs = vec![BigInt::zero(); eqs.len()];
    let Some(sol) = solve_integer(&IntMatrix::from_rows(eqs), &zero_rhs) else {
        return SearchOutcome::NotFoundWithinBounds;
    };
    let basis = echelon_basis(&sol.kernel);
    let mut found = None;
    for_each_bounded_point(&sol.particular, &basis, &bound, |v| {
        if v.iter().all(Zero::is_zero) {
            return ControlFlow::Continue(());
        }
        let m = to_matrix(v, nf, ne);
        if column_positivity(f, &m) != Verdict::Pass {
            return ControlFlow::Continue(());
        }
        let image = DimModElement::new(m.mul_vec(&e.order_unit().vector), 0);
        if f.equal(&image, &f.order_unit()) != Ok(true) {
            return ControlFlow::Continue(());
        }
        for lag in 0..=bounds.lag_max {
            if let Some(c) = solve_inverse(e, f, &m, lag, &bound) {
                found = Some(c);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    match found {
        Some(c) => SearchOutcome::Found(c),
        None => SearchOutcome::NotFoundWithinBounds,
    }
}

fn solve_inverse(e: &DimensionModule, f: &DimensionModule, m: &IntMatrix, lag: usize, bound: &BigInt) -> Option<IsoCertificate> {
    let (ne, nf) = (e.rank(), f.rank());
    let (ae, af) = (e.transition(), f.transition());
    let mut rows = sylvester_rows(ae, af, ne, nf);
    let mut rhs = vec![BigInt::zero(); rows.len()];
    // M' M = (A_E^t)^lag
    rows.extend(product_rows(&IntMatrix::identity(ne), m, ne, nf));
    let target = ae.pow(lag);
    rhs.extend((0..ne).flat_map(|i| (0..ne).map(move |j| (i, j))).map(|(i, j)| target.get(i, j).clone()));
    // M M' = (A_F^t)^lag
    rows.extend(product_rows(m, &IntMatrix::identity(nf), ne, nf));
    let target = af.pow(lag);
    rhs.extend((0..nf).flat_map(|i| (0..nf).map(move |j| (i, j))).map(|(i, j)| target.get(i, j).clone()));
    let sol = solve_integer(&IntMatrix::from_rows(rows), &rhs)?;
    let basis = echelon_basis(&sol.kernel);
    let mut found = None;
    for_each_bounded_point(&sol.particular, &basis, bound, |v| {
        let cert = IsoCertificate { m: m.clone(), m_prime: to_matrix(v, ne, nf), lag };
        if verify_iso_certificate(e, f, &cert).passed() {
            found = Some(cert);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}
