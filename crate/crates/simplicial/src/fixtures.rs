//! Fixture corpus and randomized object generators for property testing.

use std::collections::BTreeSet;

use rand::prelude::IndexedRandom;
use rand::Rng;

use crate::builders::*;
use crate::osc::OscComplex;
use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId, VertexPartition};

/// The named fixtures exercised throughout the test suites.
pub fn standard_corpus() -> Vec<(String, FiniteSimplicialSet)> {
    let mut out: Vec<(String, FiniteSimplicialSet)> = Vec::new();
    for n in 0..=3 {
        out.push((format!("delta{n}"), delta(n)));
    }
    for n in 1..=3 {
        out.push((format!("boundary{n}"), boundary(n)));
    }
    for n in 1..=3 {
        for k in 0..=n {
            out.push((format!("horn{n}_{k}"), horn(n, k).expect("valid")));
        }
    }
    out.push(("circle".into(), circle()));
    out.push(("wedge".into(), wedge_of_circles()));
    for n in 1..=3 {
        out.push((format!("parallel{n}"), parallel_pair(n)));
    }
    out.push(("opposing".into(), opposing_pair()));
    out.push(("three_cycle".into(), three_cycle()));
    out.push(("two_points".into(), two_points()));
    out
}

/// The subset of the corpus with the distinct-vertex property.
pub fn nonsingular_corpus() -> Vec<(String, FiniteSimplicialSet)> {
    standard_corpus()
        .into_iter()
        .filter(|(_, x)| x.property_b())
        .collect()
}

/// The subset of the corpus with both complex-like properties.
pub fn unique_simplex_corpus() -> Vec<(String, FiniteSimplicialSet)> {
    standard_corpus()
        .into_iter()
        .filter(|(_, x)| x.property_b() && x.property_c().expect("checked"))
        .collect()
}

/// A random valid presentation with at most `max_generators` generators:
/// vertices, edges with arbitrary endpoints, triangles over compatible edge
/// terms, and occasionally a pinched higher simplex from a vertex quotient.
pub fn random_presentation<R: Rng>(rng: &mut R, max_generators: usize) -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    let n_vertices = rng.random_range(1..=3.min(max_generators));
    for i in 0..n_vertices {
        x.add_vertex(format!("v{i}")).expect("fresh");
    }
    let vertices: Vec<GenId> = x.vertex_ids();
    let mut remaining = max_generators.saturating_sub(n_vertices);
    let n_edges = rng.random_range(0..=remaining.min(4));
    for i in 0..n_edges {
        let src = vertices.choose(rng).expect("nonempty").clone();
        let tgt = vertices.choose(rng).expect("nonempty").clone();
        x.add_generator(
            format!("e{i}"),
            vec![
                DegenerateTerm::nondegenerate(tgt, 0),
                DegenerateTerm::nondegenerate(src, 0),
            ],
        )
        .expect("fresh");
    }
    remaining = remaining.saturating_sub(n_edges);
    let n_triangles = rng.random_range(0..=remaining.min(3));
    for i in 0..n_triangles {
        let corners: Vec<GenId> = (0..3)
            .map(|_| vertices.choose(rng).expect("nonempty").clone())
            .collect();
        let pick_edge = |x: &mut FiniteSimplicialSet, rng: &mut R, a: &GenId, b: &GenId, tag: String| {
            let mut candidates: Vec<DegenerateTerm> = x
                .generators_of_dim(1)
                .filter(|e| {
                    let vs = x.vertices_of(e).expect("valid");
                    &vs[0] == a && &vs[1] == b
                })
                .map(|e| DegenerateTerm::nondegenerate(e.clone(), 1))
                .collect();
            if a == b {
                candidates.push(DegenerateTerm {
                    surjection: crate::delta::MonotoneMap::degeneracy(0, 0).expect("range"),
                    generator: a.clone(),
                });
            }
            match candidates.choose(rng) {
                Some(t) => t.clone(),
                None => {
                    let fresh = x
                        .add_generator(
                            tag,
                            vec![
                                DegenerateTerm::nondegenerate(b.clone(), 0),
                                DegenerateTerm::nondegenerate(a.clone(), 0),
                            ],
                        )
                        .expect("fresh");
                    DegenerateTerm::nondegenerate(fresh, 1)
                }
            }
        };
        let d0 = pick_edge(&mut x, rng, &corners[1], &corners[2], format!("t{i}d0"));
        let d1 = pick_edge(&mut x, rng, &corners[0], &corners[2], format!("t{i}d1"));
        let d2 = pick_edge(&mut x, rng, &corners[0], &corners[1], format!("t{i}d2"));
        x.add_generator(format!("t{i}"), vec![d0, d1, d2]).expect("fresh");
    }
    // occasionally mix in a pinched standard simplex
    if rng.random_bool(0.25) && x.generator_count() + 7 <= max_generators.max(8) {
        let d = delta(2);
        let verts = d.vertex_ids();
        let merged: BTreeSet<GenId> = verts
            .iter()
            .filter(|_| rng.random_bool(0.6))
            .cloned()
            .collect();
        let piece = if merged.len() >= 2 {
            d.quotient_vertices(&VertexPartition::merging(&d, &merged))
                .expect("covers")
                .0
        } else {
            d
        };
        x = FiniteSimplicialSet::disjoint_union(&[x, piece]);
    }
    debug_assert!(x.validate().is_ok());
    x
}

/// A random ordered simplicial complex: a shuffled vertex order with a
/// random downward-closed family of chains.
pub fn random_osc<R: Rng>(rng: &mut R, max_vertices: usize) -> OscComplex {
    let n = rng.random_range(1..=max_vertices.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    // random order: successive vertices comparable with probability 2/3
    let mut order_pairs = Vec::new();
    for i in 1..n {
        if rng.random_bool(0.66) {
            order_pairs.push((names[i - 1].clone(), names[i].clone()));
        }
    }
    let mut simplices: Vec<BTreeSet<String>> = Vec::new();
    let closure: BTreeSet<(String, String)> = {
        let mut s: BTreeSet<(String, String)> = order_pairs.iter().cloned().collect();
        loop {
            let mut fresh = Vec::new();
            for (a, b) in &s {
                for (b2, c) in &s {
                    if b == b2 && !s.contains(&(a.clone(), c.clone())) {
                        fresh.push((a.clone(), c.clone()));
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            s.extend(fresh);
        }
        s
    };
    let comparable = |a: &String, b: &String| {
        a == b || closure.contains(&(a.clone(), b.clone())) || closure.contains(&(b.clone(), a.clone()))
    };
    let attempts = rng.random_range(0..=4);
    for _ in 0..attempts {
        let size = rng.random_range(1..=3.min(n));
        let mut chain: BTreeSet<String> = BTreeSet::new();
        for _ in 0..size {
            let v = names.choose(rng).expect("nonempty");
            if chain.iter().all(|u| comparable(u, v)) {
                chain.insert(v.clone());
            }
        }
        if !chain.is_empty() {
            simplices.push(chain);
        }
    }
    OscComplex::assemble(names, simplices, order_pairs).expect("chains are ordered")
}

/// A random object with both complex-like properties: the realization of a
/// random complex, sometimes replaced by a directed cycle which satisfies
/// the properties without coming from a complex.
pub fn random_unique_simplex_object<R: Rng>(rng: &mut R, max_vertices: usize) -> FiniteSimplicialSet {
    if rng.random_bool(0.15) {
        return three_cycle();
    }
    crate::osc::u_functor(&random_osc(rng, max_vertices))
}

/// A random nonsingular object of bounded size, possibly failing the
/// unique-simplex property: a realization with optional parallel copies and
/// opposing edges.
pub fn random_nonsingular_object<R: Rng>(rng: &mut R, max_generators: usize) -> FiniteSimplicialSet {
    loop {
        let mut x = crate::osc::u_functor(&random_osc(rng, 3));
        if rng.random_bool(0.4) {
            // duplicate one positive-dimensional generator
            let candidates: Vec<(GenId, usize)> = x
                .generators()
                .filter(|(_, d)| *d > 0)
                .map(|(g, d)| (g.clone(), d))
                .collect();
            if let Some((g, _)) = candidates.choose(rng) {
                let faces = x.faces_of(g).expect("known").to_vec();
                x.add_generator(format!("{g}'"), faces).expect("fresh");
            }
        }
        if rng.random_bool(0.4) {
            // add a reverse edge somewhere
            let arcs = x.edge_arcs();
            if let Some((_, s, t)) = arcs.choose(rng) {
                if s != t {
                    x.add_generator(
                        "rev",
                        vec![
                            DegenerateTerm::nondegenerate(s.clone(), 0),
                            DegenerateTerm::nondegenerate(t.clone(), 0),
                        ],
                    )
                    .expect("fresh");
                }
            }
        }
        if x.generator_count() <= max_generators {
            debug_assert!(x.property_b());
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_objects_validate() {
        for (name, x) in standard_corpus() {
            assert!(x.validate().is_ok(), "{name} is invalid");
        }
        assert!(standard_corpus().len() >= 20);
    }

    #[test]
    fn random_generators_produce_valid_objects() {
        let mut rng = rand::rng();
        for _ in 0..50 {
            let x = random_presentation(&mut rng, 10);
            assert!(x.validate().is_ok());
            assert!(x.generator_count() <= 10 + 7);
            let y = random_nonsingular_object(&mut rng, 8);
            assert!(y.property_b());
            let z = random_unique_simplex_object(&mut rng, 4);
            assert!(z.property_b() && z.property_c().unwrap());
            let c = random_osc(&mut rng, 4);
            assert!(c.validate().is_ok());
        }
    }
}
