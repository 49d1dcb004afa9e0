//! The hom corpus and random candidates built from it.

use std::sync::Arc;

use leavitt::graph::Path;
use leavitt::homs::{ad_conjugate, phi_z, EdgeUnitFamily, GradedHom};
use leavitt::{AlgebraExt, Element, Graph, LeavittAlgebra, Monomial, Rationals, Ring, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{random_coefficient, random_monomial_of_degree, random_unit};

pub type Alg = Arc<LeavittAlgebra<Rationals>>;

pub fn algebra(g: Graph) -> Alg {
    LeavittAlgebra::new(g, Rationals)
}

fn hom(source: Graph, target: &Alg, text: &str) -> GradedHom<Rationals> {
    let mut h = GradedHom::parse(source, target, text).expect("corpus hom parses");
    let report = h.verify();
    assert!(report.passed(), "corpus hom fails:\n{report}");
    h
}

/// Verified unital homs: identities, the loop swap on R_2, R_2 -> J_2 and
/// the collapse J_2 -> R_2.
pub fn hom_corpus() -> Vec<GradedHom<Rationals>> {
    let r2 = algebra(Graph::rose(2));
    let j2 = algebra(Graph::complete2());
    let mut out = vec![
        GradedHom::identity(&r2),
        hom(Graph::rose(2), &r2, "v -> v\ne -> f\nf -> e\n"),
        hom(Graph::rose(2), &j2, "v -> a + b\ne -> x + w\nf -> y + z\n"),
        hom(
            Graph::complete2(),
            &r2,
            "a -> e e*\nb -> f f*\nx -> e e e*\ny -> e f f*\nz -> f e e*\nw -> f f f*\n",
        ),
        GradedHom::identity(&j2),
    ];
    for g in [Graph::fibonacci(), Graph::triangle_with_loop()] {
        out.push(GradedHom::identity(&algebra(g)));
    }
    out
}

fn paths_from_exact(g: &Graph, v: VertexId, len: usize) -> Vec<Path> {
    g.paths_from(v, len).into_iter().filter(|p| p.len() == len).collect()
}

/// A unit of the corner `v L_0 v` with its inverse.
pub fn corner_unit(a: &Alg, rng: &mut impl Rng, v: VertexId) -> (Element<Rationals>, Element<Rationals>) {
    let g = a.graph();
    let vx = a.vertex(v);
    let len = rng.gen_range(1..=2);
    let paths = paths_from_exact(g, v, len);
    let alpha = paths.choose(rng).expect("regular graph").clone();
    let beta = paths.choose(rng).unwrap().clone();
    let c = random_coefficient(&Rationals, rng);
    if alpha.range(g) == beta.range(g) && alpha != beta {
        let n = a.monomial(Monomial { alpha, beta }, c);
        return (&vx + &n, &vx - &n);
    }
    let p = a.monomial(Monomial { alpha: alpha.clone(), beta: alpha }, Rationals.from_int(1));
    let one = Rationals.from_int(1);
    let up = &c - &one;
    let down = &one / &c - &one;
    (&vx + &p.scale(&up), &vx + &p.scale(&down))
}

/// `z_e = h(e x e*)` for corner units `x` at `r(e)`; a valid edge family.
pub fn random_edge_units(h: &GradedHom<Rationals>, rng: &mut impl Rng) -> EdgeUnitFamily<Rationals> {
    let g = h.source().clone();
    let src = algebra(g.clone());
    let units = g
        .edges()
        .map(|e| {
            if rng.gen_bool(0.3) {
                return h.apply(&(&src.edge(e) * &src.ghost(e))).unwrap();
            }
            let (x, _) = corner_unit(&src, rng, g.range(e));
            h.apply(&(&(&src.edge(e) * &x) * &src.ghost(e))).unwrap()
        })
        .collect();
    EdgeUnitFamily::new(h, units).expect("corner units")
}

/// A valid hom: a corpus hom conjugated by a unit or deformed by corner units.
pub fn random_valid_hom(rng: &mut impl Rng) -> GradedHom<Rationals> {
    let corpus = hom_corpus();
    let h = corpus.choose(rng).unwrap().clone();
    if rng.gen_bool(0.5) {
        let (u, _) = random_unit(h.target(), rng, 2, 2);
        ad_conjugate(&h, &u).expect("conjugation by a unit")
    } else {
        let z = random_edge_units(&h, rng);
        phi_z(&h, &z).unwrap()
    }
}

/// A single-image perturbation of a valid hom (not verified).
pub fn mutate(h: &GradedHom<Rationals>, rng: &mut impl Rng) -> GradedHom<Rationals> {
    let imgs = h.images().clone();
    let (mut vs, mut es, mut gs) = (imgs.vertices, imgs.edges, imgs.ghosts);
    let a = h.target().clone();
    let g = a.graph().clone();
    let slot: &mut Element<Rationals> = match rng.gen_range(0..3) {
        0 => vs.choose_mut(rng).unwrap(),
        1 => es.choose_mut(rng).unwrap(),
        _ => gs.choose_mut(rng).unwrap(),
    };
    let degree = slot.degree().unwrap_or(0);
    *slot = match rng.gen_range(0..4) {
        0 => slot.scale(&Rationals.from_int(2)),
        1 => slot.clone() + a.monomial(random_monomial_of_degree(&g, rng, degree, 2), Rationals.from_int(1)),
        2 => a.zero(),
        _ => slot.star(),
    };
    GradedHom::new(imgs.source, &a, vs, es, gs).unwrap()
}
