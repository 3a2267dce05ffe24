//! Cross-module invariants: operator algebra laws, minimal-form
//! uniqueness, functoriality of subdivision, reflector universal
//! properties, and colimit soundness on randomized inputs.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use simplicial::builders::*;
use simplicial::colimit;
use simplicial::delta::MonotoneMap;
use simplicial::fixtures;
use simplicial::hom::{hom_enumerate, hom_sample, Budget};
use simplicial::homology::{euler_characteristic, homology};
use simplicial::osc;
use simplicial::reflectors::{desingularize, localize};
use simplicial::sset::{DegenerateTerm, FiniteSimplicialSet, GenId};
use simplicial::subdivision::{normalize_flag_tuple, sd, sd_map};

fn monotone_map(max_dim: usize) -> impl Strategy<Value = MonotoneMap> {
    (0..=max_dim, 1..=max_dim + 1).prop_flat_map(|(cod, len)| {
        prop::collection::vec(0..=cod, len).prop_map(move |mut values| {
            values.sort_unstable();
            MonotoneMap::new(cod, values).expect("sorted values are monotone")
        })
    })
}

fn composable_pair(max_dim: usize) -> impl Strategy<Value = (MonotoneMap, MonotoneMap)> {
    monotone_map(max_dim).prop_flat_map(move |f| {
        let mid = f.domain_dim();
        (1..=max_dim + 1)
            .prop_flat_map(move |len| prop::collection::vec(0..=mid, len))
            .prop_map(move |mut values| {
                values.sort_unstable();
                (
                    f.clone(),
                    MonotoneMap::new(mid, values).expect("sorted values are monotone"),
                )
            })
    })
}

proptest! {
    #[test]
    fn composition_associative((f, g) in composable_pair(6), seed in 0u64..1000) {
        // extend with a third map built from the seed
        let dom = g.domain_dim();
        let len = (seed as usize % (dom + 2)) + 1;
        let mut values: Vec<usize> = (0..len).map(|i| (seed as usize + i) % (dom + 1)).collect();
        values.sort_unstable();
        let h = MonotoneMap::new(dom, values).expect("monotone");
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_neutral(f in monotone_map(6)) {
        let id_dom = MonotoneMap::identity(f.domain_dim());
        let id_cod = MonotoneMap::identity(f.codomain_dim());
        prop_assert_eq!(f.compose(&id_dom).unwrap(), f.clone());
        prop_assert_eq!(id_cod.compose(&f).unwrap(), f);
    }

    #[test]
    fn ez_recomposes(f in monotone_map(6)) {
        let (surj, inj) = f.ez_factorize();
        prop_assert!(surj.is_surjective());
        prop_assert!(inj.is_injective());
        prop_assert_eq!(inj.compose(&surj).unwrap(), f.clone());
        if f.is_surjective() {
            prop_assert_eq!(&surj, &f);
            prop_assert!(inj.is_identity());
        }
        if f.is_injective() {
            prop_assert!(surj.is_identity());
            prop_assert_eq!(&inj, &f);
        }
    }
}

#[test]
fn face_and_degeneracy_operator_equations() {
    for n in 2..=6usize {
        for j in 0..=n {
            for i in 0..j {
                let lhs = MonotoneMap::face(n, j)
                    .unwrap()
                    .compose(&MonotoneMap::face(n - 1, i).unwrap())
                    .unwrap();
                let rhs = MonotoneMap::face(n, i)
                    .unwrap()
                    .compose(&MonotoneMap::face(n - 1, j - 1).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "face interchange at ({i},{j}) in dim {n}");
            }
        }
    }
    for n in 1..=5usize {
        for i in 0..n {
            for j in i..n {
                // s_i s_j = s_{j+1} s_i as maps [n+2] -> [n]
                let lhs = MonotoneMap::degeneracy(n, i)
                    .unwrap()
                    .compose(&MonotoneMap::degeneracy(n + 1, j + 1).unwrap())
                    .unwrap();
                let rhs = MonotoneMap::degeneracy(n, j)
                    .unwrap()
                    .compose(&MonotoneMap::degeneracy(n + 1, i).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "degeneracy interchange at ({i},{j})");
            }
        }
        // mixed laws: d_i s_j
        for i in 0..=n + 1 {
            for j in 0..=n {
                let composite = MonotoneMap::degeneracy(n, j)
                    .unwrap()
                    .compose(&MonotoneMap::face(n + 1, i).unwrap())
                    .unwrap();
                let expected = if i < j {
                    MonotoneMap::face(n, i)
                        .unwrap()
                        .compose(&MonotoneMap::degeneracy(n - 1, j - 1).unwrap())
                        .unwrap()
                } else if i == j || i == j + 1 {
                    MonotoneMap::identity(n)
                } else {
                    MonotoneMap::face(n, i - 1)
                        .unwrap()
                        .compose(&MonotoneMap::degeneracy(n - 1, j).unwrap())
                        .unwrap()
                };
                assert_eq!(composite, expected, "mixed law at ({i},{j}) in dim {n}");
            }
        }
    }
}

#[test]
fn minimal_form_survives_twisted_rewrites() {
    // push a flag through a random surjection and check the normal forms
    // agree: (s* x; flags) and (x; s(flags)) are the same simplex
    let fixtures = [delta(2), delta(3), boundary(3)];
    let mut rng = rand::rng();
    use rand::prelude::IndexedRandom;
    use rand::Rng;
    for x in &fixtures {
        for _ in 0..200 {
            let gens: Vec<(GenId, usize)> =
                x.generators().map(|(g, d)| (g.clone(), d)).collect();
            let (g, dim) = gens.choose(&mut rng).unwrap().clone();
            // a random weakly increasing flag over [dim]
            let full: u64 = (1 << (dim + 1)) - 1;
            let len = rng.random_range(1..=dim + 2);
            let mut flags: Vec<u64> = (0..len)
                .map(|_| rng.random_range(1..=full))
                .collect();
            // force nesting by cumulative union, end at full
            for i in 1..flags.len() {
                flags[i] |= flags[i - 1];
            }
            flags.push(full);
            let direct = normalize_flag_tuple(x, &g, &flags).unwrap();
            // twist: duplicate a random entry (a degeneracy of the tuple)
            let pos = rng.random_range(0..flags.len());
            let mut twisted = flags.clone();
            twisted.insert(pos, flags[pos]);
            let via = normalize_flag_tuple(x, &g, &twisted).unwrap();
            assert_eq!(via.generator, direct.generator);
            // the twisted route is one degeneracy higher
            assert_eq!(via.dim(), direct.dim() + 1);
        }
    }
}

#[test]
fn subdivision_never_creates_loops() {
    let mut rng = rand::rng();
    for _ in 0..25 {
        let x = fixtures::random_presentation(&mut rng, 8);
        let s = sd(&x).unwrap().space;
        assert!(s.n_loops().is_empty(), "loops in subdivision of {x:?}");
    }
}

#[test]
fn subdivision_is_functorial_on_random_pairs() {
    let mut rng = rand::rng();
    let objects = [delta(1), delta(2), boundary(2), circle(), three_cycle()];
    let mut checked = 0;
    for a in &objects {
        for b in &objects {
            for c in &objects {
                if checked >= 6 {
                    break;
                }
                let mut budget = Budget::new(100_000);
                let f = match hom_sample(a, b, &mut rng, &mut budget) {
                    Ok(Some(f)) => f,
                    _ => continue,
                };
                let g = match hom_sample(b, c, &mut rng, &mut budget) {
                    Ok(Some(g)) => g,
                    _ => continue,
                };
                let composite = g.compose(&f).unwrap();
                let lhs = sd_map(&composite).unwrap();
                let rhs = sd_map(&g).unwrap().compose(&sd_map(&f).unwrap()).unwrap();
                assert_eq!(lhs.assignment(), rhs.assignment());
                checked += 1;
            }
        }
    }
    assert!(checked >= 4, "not enough composable pairs sampled");
}

#[test]
fn euler_characteristic_invariant_under_subdivision() {
    for (name, x) in fixtures::standard_corpus() {
        let s = sd(&x).unwrap().space;
        assert_eq!(
            euler_characteristic(&x),
            euler_characteristic(&s),
            "Euler characteristic changed under subdivision of {name}"
        );
    }
}

#[test]
fn boundary_squares_to_zero_on_random_presentations() {
    let mut rng = rand::rng();
    for _ in 0..20 {
        let x = fixtures::random_presentation(&mut rng, 10);
        let complex = simplicial::homology::chain_complex(&x, x.dim()).unwrap();
        for n in 2..complex.boundaries.len() {
            let product = complex.boundaries[n - 1].mul(&complex.boundaries[n]).unwrap();
            for i in 0..product.rows {
                for j in 0..product.cols {
                    assert_eq!(*product.get(i, j), 0, "dd != 0 on {x:?}");
                }
            }
        }
    }
}

#[test]
fn localization_satisfies_the_universal_property() {
    // composing with the projection is a bijection onto maps from the input
    let targets: Vec<FiniteSimplicialSet> = fixtures::unique_simplex_corpus()
        .into_iter()
        .map(|(_, x)| x)
        .filter(|x| x.generator_count() <= 7)
        .collect();
    for x in [opposing_pair(), parallel_pair(1), parallel_pair(2), three_cycle()] {
        let (lx, p) = localize(&x).unwrap();
        for y in &targets {
            let mut budget = Budget::default();
            let from_lx = hom_enumerate(&lx, y, &mut budget).unwrap();
            let from_x = hom_enumerate(&x, y, &mut budget).unwrap();
            let composed: Vec<BTreeMap<GenId, DegenerateTerm>> = from_lx
                .iter()
                .map(|h| h.compose(&p).unwrap().assignment().clone())
                .collect();
            // injective and onto hom(X, Y)
            let distinct: std::collections::BTreeSet<_> = composed.iter().cloned().collect();
            assert_eq!(distinct.len(), composed.len(), "composition not injective");
            assert_eq!(composed.len(), from_x.len(), "composition not surjective");
            for f in &from_x {
                assert!(distinct.contains(f.assignment()), "map does not factor");
            }
        }
    }
}

#[test]
fn desingularization_satisfies_the_universal_property() {
    let targets: Vec<FiniteSimplicialSet> = fixtures::nonsingular_corpus()
        .into_iter()
        .map(|(_, x)| x)
        .filter(|x| x.generator_count() <= 7)
        .collect();
    let pinched = {
        let d = delta(2);
        let p = simplicial::sset::VertexPartition::new(
            vec![
                [GenId::from("0"), GenId::from("2")].into(),
                [GenId::from("1")].into(),
            ],
            &d,
        )
        .unwrap();
        d.quotient_vertices(&p).unwrap().0
    };
    for x in [circle(), wedge_of_circles(), pinched] {
        let (dx, p) = desingularize(&x).unwrap();
        for y in &targets {
            let mut budget = Budget::default();
            let from_dx = hom_enumerate(&dx, y, &mut budget).unwrap();
            let from_x = hom_enumerate(&x, y, &mut budget).unwrap();
            let composed: std::collections::BTreeSet<_> = from_dx
                .iter()
                .map(|h| h.compose(&p).unwrap().assignment().clone())
                .collect();
            assert_eq!(composed.len(), from_dx.len());
            assert_eq!(composed.len(), from_x.len());
            for f in &from_x {
                assert!(composed.contains(f.assignment()));
            }
        }
    }
}

#[test]
fn reflectors_commute_with_renaming() {
    // shuffling generator names changes rule scan order; outputs agree up
    // to isomorphism
    let mut rng = rand::rng();
    for _ in 0..10 {
        let x = fixtures::random_nonsingular_object(&mut rng, 8);
        let renamed = FiniteSimplicialSet::disjoint_union(&[x.clone()]);
        let (a, _) = localize(&x).unwrap();
        let (b, _) = localize(&renamed).unwrap();
        assert!(a.is_isomorphic_to(&b));
    }
}

#[test]
fn quotient_objects_are_loop_free() {
    let mut rng = rand::rng();
    for _ in 0..20 {
        let x = fixtures::random_unique_simplex_object(&mut rng, 4);
        let (q, _) = osc::quotient_un(&x).unwrap();
        assert!(q.scc_classes().is_discrete());
        assert!(q.n_loops().is_empty());
    }
}

#[test]
fn unit_is_natural_on_sampled_maps() {
    let mut rng = rand::rng();
    let objects = [delta(2), three_cycle(), two_points(), boundary(2)];
    let mut checked = 0;
    for a in &objects {
        for b in &objects {
            let mut budget = Budget::new(100_000);
            let f = match hom_sample(a, b, &mut rng, &mut budget) {
                Ok(Some(f)) => f,
                _ => continue,
            };
            let eta_a = osc::unit(a).unwrap();
            let eta_b = osc::unit(b).unwrap();
            let uff = osc::u_map(&osc::f_map(&f).unwrap());
            let left = uff.compose(&eta_a).unwrap();
            let right = eta_b.compose(&f).unwrap();
            assert_eq!(left.assignment(), right.assignment(), "unit not natural");
            checked += 1;
        }
    }
    assert!(checked >= 8);
}

#[test]
fn congruence_quotients_validate() {
    let mut rng = rand::rng();
    for _ in 0..15 {
        let ambient = fixtures::random_unique_simplex_object(&mut rng, 4);
        let vertex_pool = ambient.vertex_ids();
        if vertex_pool.is_empty() {
            continue;
        }
        use rand::prelude::IteratorRandom;
        let take = 1 + rng.random_range(0..vertex_pool.len());
        let chosen: std::collections::BTreeSet<GenId> = vertex_pool
            .iter()
            .cloned()
            .choose_multiple(&mut rng, take)
            .into_iter()
            .collect();
        let (apex, inclusion) = full_subcomplex(&ambient, &chosen);
        if apex.generator_count() == 0 {
            continue;
        }
        let other = fixtures::random_unique_simplex_object(&mut rng, 4);
        let mut budget = Budget::new(200_000);
        let attach = match hom_sample(&apex, &other, &mut rng, &mut budget) {
            Ok(Some(f)) => f,
            _ => continue,
        };
        let span = colimit::Span::new(attach, inclusion).unwrap();
        let p = colimit::pushout_sset(&span).unwrap();
        assert!(p.object.validate().is_ok(), "congruence produced junk");
        assert!(p.from_left_target.check().is_ok());
        assert!(p.from_right_target.check().is_ok());
    }
}

#[test]
fn cell_chains_compose_homology_equivalences() {
    // successive attachments along doubly subdivided horn inclusions leave
    // homology untouched, stage by stage and in the composite
    let mut rng = rand::rng();
    let base = osc::u_functor(&fixtures::random_osc(&mut rng, 3));
    let cell1 = simplicial::subdivision::sd_iter_map(&horn_inclusion(1, 0).unwrap(), 2).unwrap();
    let mut budget = Budget::new(500_000);
    let attach1 = hom_sample(cell1.source(), &base, &mut rng, &mut budget)
        .unwrap()
        .expect("a point always maps");
    let stage1 = colimit::cell_chain(&base, &[(cell1.clone(), attach1.clone())]).unwrap();
    assert_eq!(stage1.stages.len(), 2);
    assert!(simplicial::homology::is_homology_equivalence(&stage1.composite, 2).unwrap());

    let cell2 = simplicial::subdivision::sd_iter_map(&horn_inclusion(2, 1).unwrap(), 2).unwrap();
    let attach2 = hom_sample(
        cell2.source(),
        stage1.stages.last().unwrap(),
        &mut rng,
        &mut Budget::new(500_000),
    )
    .unwrap()
    .expect("horns map somewhere");
    let chain = colimit::cell_chain(&base, &[(cell1, attach1), (cell2, attach2)]).unwrap();
    assert_eq!(chain.stages.len(), 3);
    assert!(simplicial::homology::is_homology_equivalence(&chain.composite, 2).unwrap());
}

#[test]
fn level_wise_extension_honors_its_cap() {
    let mut budget = Budget::default();
    let err = simplicial::subdivision::ex_level_with_cap(&delta(1), 2, &mut budget, 3);
    assert!(matches!(
        err,
        Err(simplicial::subdivision::SubdivisionError::LevelBudget { .. })
    ));
}

#[test]
fn ternary_products_stay_universal_enough() {
    // iterated binary products: check the vertex and simplex counts of an
    // edge cubed against the chains of the 2x2x2 grid poset
    let edge = osc::OscComplex::assemble(
        ["a".into(), "b".into()],
        [std::collections::BTreeSet::from(["a".into(), "b".into()])],
        [("a".into(), "b".into())],
    )
    .unwrap();
    let (square, _, _) = osc::product_osc(&edge, &edge).unwrap();
    let (cube, _, _) = osc::product_osc(&square, &edge).unwrap();
    assert_eq!(cube.vertices().len(), 8);
    let top = cube.simplices().iter().filter(|s| s.len() == 4).count();
    assert_eq!(top, 6, "six maximal chains in the cube order");
    assert!(cube.validate().is_ok());
}

#[test]
fn betti_numbers_sum_to_the_euler_characteristic() {
    for (name, x) in fixtures::standard_corpus() {
        let profile = homology(&x, x.dim().max(1)).unwrap();
        let chi = euler_characteristic(&x);
        let alt: i64 = profile
            .groups
            .iter()
            .enumerate()
            .map(|(n, g)| {
                let sign = if n % 2 == 0 { 1i64 } else { -1 };
                sign * g.betti as i64
            })
            .sum();
        assert_eq!(chi, alt, "mismatch on {name}");
    }
}
