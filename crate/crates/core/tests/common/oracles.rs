//! Independent models used as oracles.

use std::collections::BTreeMap;
use std::sync::Arc;

use leavitt::algebra::SpecialEdgeChoice;
use leavitt::graph::Path;
use leavitt::homs::HomImages;
use leavitt::{AlgebraExt, Element, Graph, LeavittAlgebra, Ring};

pub type Blocks<E> = Vec<Vec<Vec<E>>>;

/// The dense model of the stage-`n` part: `α β*` with `|α| = |β| = k <= n`
/// is `sum_γ E_{αγ, βγ}` over paths `γ` of length `n - k` from `r(α)`,
/// placed in the block of `r(γ)`. Works on any representative, reduced or
/// not; panics on terms of nonzero degree or longer than `n`.
pub fn dense_blocks<R: Ring>(g: &Graph, x: &Element<R>, n: usize) -> Blocks<R::Elem> {
    let ring = x.ring();
    let index: Vec<BTreeMap<Path, usize>> = g
        .vertices()
        .map(|v| g.paths_into(v, n).into_iter().enumerate().map(|(i, p)| (p, i)).collect())
        .collect();
    let mut blocks: Blocks<R::Elem> =
        index.iter().map(|ix| vec![vec![ring.zero(); ix.len()]; ix.len()]).collect();
    for (m, c) in x.terms() {
        let k = m.alpha.len();
        assert_eq!(k, m.beta.len(), "degree-zero term expected");
        assert!(k <= n, "term longer than the stage");
        let tails: Vec<Path> = g
            .paths_from(m.alpha.range(g), n - k)
            .into_iter()
            .filter(|p| p.len() == n - k)
            .collect();
        for gamma in tails {
            let w = gamma.range(g);
            let (i, j) = (index[w.0][&m.alpha.concat(&gamma)], index[w.0][&m.beta.concat(&gamma)]);
            blocks[w.0][i][j] = ring.add(&blocks[w.0][i][j], c);
        }
    }
    blocks
}

pub fn block_product<R: Ring>(ring: &R, a: &Blocks<R::Elem>, b: &Blocks<R::Elem>) -> Blocks<R::Elem> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let n = x.len();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&x[i][k], &y[k][j]))))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Relation check by substitution into expression text, evaluated in the
/// normal form for the last out-edge at each vertex. Returns the first
/// violated relation.
pub fn brute_force_relations<R: Ring>(images: &HomImages<Element<R>>, target: &Arc<LeavittAlgebra<R>>) -> Result<(), String> {
    let g = &images.source;
    let alt = LeavittAlgebra::with_special_edges(
        target.graph_arc().clone(),
        target.ring().clone(),
        SpecialEdgeChoice::last(target.graph()),
    );
    let v = |i: usize| format!("({})", images.vertices[i]);
    let e = |i: usize| format!("({})", images.edges[i]);
    let s = |i: usize| format!("({})", images.ghosts[i]);
    let zero = |expr: String, what: String| -> Result<(), String> {
        let x = alt.parse(&expr).map_err(|err| format!("{what}: {err}"))?;
        if x.is_zero() {
            Ok(())
        } else {
            Err(what)
        }
    };
    for a in 0..g.vertex_count() {
        for b in 0..g.vertex_count() {
            let rhs = if a == b { v(a) } else { "0".into() };
            zero(format!("{} {} - {rhs}", v(a), v(b)), format!("vertex product {a} {b}"))?;
        }
    }
    for x in g.edges() {
        let (src, rng) = (g.source(x).0, g.range(x).0);
        let i = x.0;
        zero(format!("{} {} - {}", v(src), e(i), e(i)), format!("source of edge {i}"))?;
        zero(format!("{} {} - {}", e(i), v(rng), e(i)), format!("range of edge {i}"))?;
        zero(format!("{} {} - {}", v(rng), s(i), s(i)), format!("range of ghost {i}"))?;
        zero(format!("{} {} - {}", s(i), v(src), s(i)), format!("source of ghost {i}"))?;
        for y in g.edges() {
            let rhs = if x == y { v(rng) } else { "0".into() };
            zero(format!("{} {} - {rhs}", s(i), e(y.0)), format!("ghost {i} times edge {}", y.0))?;
        }
    }
    for w in g.vertices().filter(|&w| !g.is_sink(w)) {
        let sum: Vec<String> = g.out_edges(w).iter().map(|x| format!("{} {}", e(x.0), s(x.0))).collect();
        zero(format!("{} - ({})", v(w.0), sum.join(" + ")), format!("vertex {} as a sum", w.0))?;
    }
    let total: Vec<String> = (0..g.vertex_count()).map(v).collect();
    zero(format!("{} - 1", total.join(" + ")), "unital".into())?;
    let degree_ok = |x: &Element<R>, d: i64| -> bool {
        let y = alt.parse(&x.to_string()).expect("round trip");
        let ok = y.terms().all(|(m, _)| m.degree(alt.graph()) == d);
        ok
    };
    for a in g.vertices() {
        if !degree_ok(&images.vertices[a.0], 0) {
            return Err(format!("degree of vertex {}", a.0));
        }
    }
    for x in g.edges() {
        if !degree_ok(&images.edges[x.0], g.weight(x)) || !degree_ok(&images.ghosts[x.0], -g.weight(x)) {
            return Err(format!("degree of edge {}", x.0));
        }
    }
    Ok(())
}
