//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use leavitt::algebra::Monomial;
use leavitt::graph::Path;
use leavitt::{AlgebraExt, Element, Field, Graph, LeavittAlgebra, Ring, VertexId};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// R_2, R_3, Fibonacci, J_2 and the primitive three-vertex graph.
pub fn kernel_graphs() -> Vec<Graph> {
    vec![Graph::rose(2), Graph::rose(3), Graph::fibonacci(), Graph::complete2(), Graph::triangle_with_loop()]
}

/// Graphs without sinks or sources.
pub fn essential_graphs() -> Vec<Graph> {
    let mut gs = kernel_graphs();
    gs.push(Graph::cycle(2));
    gs
}

pub fn random_vertex(g: &Graph, rng: &mut impl Rng) -> VertexId {
    VertexId(rng.gen_range(0..g.vertex_count()))
}

/// A uniformly chosen path of length `len` into `w`, if any.
pub fn random_path_into(g: &Graph, rng: &mut impl Rng, w: VertexId, len: usize) -> Option<Path> {
    g.paths_into(w, len).choose(rng).cloned()
}

/// `α β*` with `r(α) = r(β)` and lengths at most `max_len`.
pub fn random_monomial(g: &Graph, rng: &mut impl Rng, max_len: usize) -> Monomial {
    loop {
        let w = random_vertex(g, rng);
        let (la, lb) = (rng.gen_range(0..=max_len), rng.gen_range(0..=max_len));
        let a = random_path_into(g, rng, w, la);
        let b = random_path_into(g, rng, w, lb);
        if let (Some(alpha), Some(beta)) = (a, b) {
            return Monomial { alpha, beta };
        }
    }
}

/// A monomial of degree `d` (standard weights) with lengths at most `max_len`.
pub fn random_monomial_of_degree(g: &Graph, rng: &mut impl Rng, d: i64, max_len: usize) -> Monomial {
    loop {
        let m = random_monomial(g, rng, max_len);
        if m.alpha.len() as i64 - m.beta.len() as i64 == d {
            return m;
        }
    }
}

/// A small nonzero coefficient `n / d`.
pub fn random_coefficient<R: Ring>(ring: &R, rng: &mut impl Rng) -> R::Elem {
    loop {
        let n = rng.gen_range(-4i64..=4);
        let d = rng.gen_range(1i64..=3);
        if let Some(c) = ring.from_ratio(&BigInt::from(n), &BigInt::from(d)) {
            if !ring.is_zero(&c) {
                return c;
            }
        }
    }
}

pub fn random_element<R: Ring>(
    a: &Arc<LeavittAlgebra<R>>,
    rng: &mut impl Rng,
    terms: usize,
    max_len: usize,
) -> Element<R> {
    let mut x = a.zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = random_monomial(a.graph(), rng, max_len);
        x = &x + &a.monomial(m, random_coefficient(a.ring(), rng));
    }
    x
}

pub fn random_homogeneous<R: Ring>(
    a: &Arc<LeavittAlgebra<R>>,
    rng: &mut impl Rng,
    degree: i64,
    terms: usize,
    max_len: usize,
) -> Element<R> {
    let mut x = a.zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = random_monomial_of_degree(a.graph(), rng, degree, max_len);
        x = &x + &a.monomial(m, random_coefficient(a.ring(), rng));
    }
    x
}

/// A random element of the degree-zero part with lengths at most `max_len`.
pub fn random_degree_zero<R: Ring>(
    a: &Arc<LeavittAlgebra<R>>,
    rng: &mut impl Rng,
    terms: usize,
    max_len: usize,
) -> Element<R> {
    random_homogeneous(a, rng, 0, terms, max_len)
}

/// An elementary degree-zero unit and its inverse: `1 + c α β*` for distinct
/// `α`, `β` of equal length into one vertex (square zero), or
/// `1 + (c - 1) α α*`.
pub fn elementary_unit<F: Field>(a: &Arc<LeavittAlgebra<F>>, rng: &mut impl Rng, max_len: usize) -> (Element<F>, Element<F>) {
    let g = a.graph();
    let field = a.ring();
    loop {
        let w = random_vertex(g, rng);
        let len = rng.gen_range(0..=max_len);
        let paths = g.paths_into(w, len);
        if paths.is_empty() {
            continue;
        }
        let alpha = paths.choose(rng).unwrap().clone();
        let beta = paths.choose(rng).unwrap().clone();
        let c = random_coefficient(field, rng);
        let one = a.one();
        if alpha != beta {
            let n = a.monomial(Monomial { alpha, beta }, field.one());
            return (&one + &n.scale(&c), &one - &n.scale(&c));
        }
        let p = a.monomial(Monomial { alpha: alpha.clone(), beta: alpha }, field.one());
        let ci = field.inv(&c).expect("nonzero");
        let up = field.add(&c, &field.neg(&field.one()));
        let down = field.add(&ci, &field.neg(&field.one()));
        return (&one + &p.scale(&up), &one + &p.scale(&down));
    }
}

/// A product of elementary units with its inverse.
pub fn random_unit<F: Field>(
    a: &Arc<LeavittAlgebra<F>>,
    rng: &mut impl Rng,
    factors: usize,
    max_len: usize,
) -> (Element<F>, Element<F>) {
    let (mut u, mut v) = (a.one(), a.one());
    for _ in 0..factors {
        let (x, xi) = elementary_unit(a, rng, max_len);
        u = &u * &x;
        v = &xi * &v;
    }
    (u, v)
}

/// `u (sum α α*) u^{-1}` over a random nonempty set of paths of one length.
pub fn random_idempotent<F: Field>(a: &Arc<LeavittAlgebra<F>>, rng: &mut impl Rng, len: usize) -> Element<F> {
    let g = a.graph();
    let all: Vec<Path> = g.vertices().flat_map(|w| g.paths_into(w, len)).collect();
    let mut p = a.zero();
    while p.is_zero() {
        for alpha in &all {
            if rng.gen_bool(0.5) {
                p = &p + &a.monomial(Monomial { alpha: alpha.clone(), beta: alpha.clone() }, a.ring().one());
            }
        }
    }
    let (u, ui) = random_unit(a, rng, 2, len);
    &(&u * &p) * &ui
}

pub mod oracles;
pub mod homs;
