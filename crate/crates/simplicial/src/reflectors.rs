//! The reflectors into the complex-like subcategories.
//!
//! Both reflectors saturate forced identifications through congruence
//! closure. `desingularize` repairs the distinct-vertex property: a
//! generator with an adjacent repeated vertex must land on the degeneracy
//! of its face in any quotient with distinct vertices (the loop-edge
//! collapse is the one-dimensional case), and a non-adjacent repeat forces
//! the whole vertex range between the two positions together. The closure
//! propagates each identification through the face tables, so consequences
//! such as forced merges of parallel faces fall out on their own. A
//! presentation still failing the property after saturation is rejected
//! with a typed error rather than silently misquotiented.
//!
//! `localize` is the unique-simplex reflector on nonsingular inputs: on top
//! of the shared rules it identifies the endpoints of opposing edge pairs
//! and merges generators sharing a vertex tuple. Its output is certified by
//! the right lifting property against the generating family before being
//! returned.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::builders::{delta, opposing_pair, parallel_pair};
use crate::congruence::Congruence;
use crate::delta::MonotoneMap;
use crate::hom::{hom_enumerate, Budget, HomError};
use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId, MapError, SimplicialMap};

#[derive(Debug, Error)]
pub enum ReflectorError {
    #[error("unsupported singularity: {0}")]
    UnsupportedSingularity(String),
    #[error("localization requires the distinct-vertex property on its input")]
    NotNonsingular,
    #[error("reflector output failed its certification: {0}")]
    PostCheckFailed(String),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Sset(#[from] crate::sset::SsetError),
}

/// The generating family: index 0 collapses two opposing edges to a point,
/// index n >= 1 folds two parallel `n`-simplices onto one.
pub fn family_f(i: usize) -> SimplicialMap {
    if i == 0 {
        let src = opposing_pair();
        let dst = delta(0);
        let v = DegenerateTerm::nondegenerate(GenId::from("0"), 0);
        let collapsed = DegenerateTerm {
            surjection: MonotoneMap::degeneracy(0, 0).expect("range"),
            generator: GenId::from("0"),
        };
        let mut assignment = BTreeMap::new();
        assignment.insert(GenId::from("0"), v.clone());
        assignment.insert(GenId::from("1"), v);
        assignment.insert(GenId::from("a"), collapsed.clone());
        assignment.insert(GenId::from("b"), collapsed);
        return SimplicialMap::new(src, dst, assignment).expect("collapse is simplicial");
    }
    let src = parallel_pair(i);
    let dst = delta(i);
    let top = delta_top_name(i);
    let mut assignment: BTreeMap<GenId, DegenerateTerm> = src
        .generators()
        .filter(|(g, _)| g.as_str() != "a" && g.as_str() != "b")
        .map(|(g, d)| (g.clone(), DegenerateTerm::nondegenerate(g.clone(), d)))
        .collect();
    assignment.insert(GenId::from("a"), DegenerateTerm::nondegenerate(top.clone(), i));
    assignment.insert(GenId::from("b"), DegenerateTerm::nondegenerate(top, i));
    SimplicialMap::new(src, dst, assignment).expect("fold is simplicial")
}

fn delta_top_name(n: usize) -> GenId {
    let parts: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    if n <= 9 {
        GenId::new(parts.concat())
    } else {
        GenId::new(parts.join("-"))
    }
}

/// True when every map from the source of `f` into `x` extends along `f`.
pub fn rlp_check(
    x: &FiniteSimplicialSet,
    f: &SimplicialMap,
    budget: &mut Budget,
) -> Result<bool, HomError> {
    let from_target = hom_enumerate(f.target(), x, budget)?;
    let mut extendable: BTreeSet<BTreeMap<GenId, DegenerateTerm>> = BTreeSet::new();
    for h in &from_target {
        let composite = h.compose(f).expect("composable");
        extendable.insert(composite.assignment().clone());
    }
    let from_source = hom_enumerate(f.source(), x, budget)?;
    Ok(from_source
        .iter()
        .all(|g| extendable.contains(g.assignment())))
}

/// One pass of forced identifications on the current quotient.
///
/// Both reflectors share the vertex-driven rules: a generator with an
/// adjacent repeated vertex collapses onto the degeneracy of its face (the
/// loop-edge rule is the one-dimensional case), and a non-adjacent repeat
/// forces the whole vertex range between the two positions together. The
/// localization additionally identifies the endpoints of opposing edge
/// pairs and merges generators sharing a vertex tuple.
fn scan_seeds(
    cur: &FiniteSimplicialSet,
    localizing: bool,
) -> Vec<(DegenerateTerm, DegenerateTerm)> {
    let mut seeds = Vec::new();
    for (g, d) in cur.generators() {
        if d == 0 {
            continue;
        }
        let tuple = cur.vertices_of(g).expect("valid");
        let mut seeded = false;
        for i in 0..d {
            if tuple[i] == tuple[i + 1] {
                // forced: the image of g is the i-th degeneracy of its face
                let face = &cur.faces_of(g).expect("known")[i];
                let collapsed = DegenerateTerm {
                    surjection: face
                        .surjection
                        .compose(&MonotoneMap::degeneracy(d - 1, i).expect("range"))
                        .expect("dims"),
                    generator: face.generator.clone(),
                };
                seeds.push((DegenerateTerm::nondegenerate(g.clone(), d), collapsed));
                seeded = true;
                break;
            }
        }
        if seeded {
            continue;
        }
        'range: for i in 0..tuple.len() {
            for j in (i + 2)..tuple.len() {
                if tuple[i] != tuple[j] {
                    continue;
                }
                // repeated vertices joined across a degenerate edge force
                // the whole intervening range together
                for k in (i + 1)..=j {
                    if tuple[k] != tuple[i] {
                        seeds.push((
                            DegenerateTerm::nondegenerate(tuple[i].clone(), 0),
                            DegenerateTerm::nondegenerate(tuple[k].clone(), 0),
                        ));
                    }
                }
                break 'range;
            }
        }
    }
    if localizing {
        let arcs = cur.edge_arcs();
        for (_, s, t) in &arcs {
            if s < t && arcs.iter().any(|(_, s2, t2)| s2 == t && t2 == s) {
                seeds.push((
                    DegenerateTerm::nondegenerate(s.clone(), 0),
                    DegenerateTerm::nondegenerate(t.clone(), 0),
                ));
            }
        }
        let mut by_tuple: BTreeMap<Vec<GenId>, Vec<(GenId, usize)>> = BTreeMap::new();
        for (g, d) in cur.generators() {
            by_tuple
                .entry(cur.vertices_of(g).expect("valid"))
                .or_default()
                .push((g.clone(), d));
        }
        for group in by_tuple.values() {
            for pair in group.windows(2) {
                seeds.push((
                    DegenerateTerm::nondegenerate(pair[0].0.clone(), pair[0].1),
                    DegenerateTerm::nondegenerate(pair[1].0.clone(), pair[1].1),
                ));
            }
        }
    }
    seeds
}

/// Iterates congruence closure over the scanned seeds until nothing is
/// forced any more; returns the quotient and projection.
fn saturate(
    space: &FiniteSimplicialSet,
    localizing: bool,
) -> Result<(FiniteSimplicialSet, SimplicialMap), ReflectorError> {
    let mut cur = space.clone();
    let mut proj: BTreeMap<GenId, DegenerateTerm> = space
        .generators()
        .map(|(g, d)| (g.clone(), DegenerateTerm::nondegenerate(g.clone(), d)))
        .collect();
    loop {
        let seeds = scan_seeds(&cur, localizing);
        if seeds.is_empty() {
            break;
        }
        let mut congruence = Congruence::new(&cur);
        for (a, b) in seeds {
            congruence.relate(a, b);
        }
        congruence
            .close()
            .map_err(|e| ReflectorError::UnsupportedSingularity(e.to_string()))?;
        let (next, step) = congruence
            .quotient()
            .map_err(|e| ReflectorError::UnsupportedSingularity(e.to_string()))?;
        for term in proj.values_mut() {
            let image = &step[&term.generator];
            *term = DegenerateTerm {
                surjection: image.surjection.compose(&term.surjection).expect("dims"),
                generator: image.generator.clone(),
            };
        }
        cur = next;
    }
    let map = SimplicialMap::unchecked(space.clone(), cur.clone(), proj);
    Ok((cur, map))
}

/// The distinct-vertex quotient, when the saturation rules reach one.
pub fn desingularize(
    space: &FiniteSimplicialSet,
) -> Result<(FiniteSimplicialSet, SimplicialMap), ReflectorError> {
    let (cur, map) = saturate(space, false)?;
    if !cur.property_b() {
        let offender = cur
            .generators()
            .map(|(g, _)| g)
            .find(|g| {
                let vs = cur.vertices_of(g).expect("valid");
                vs.iter().collect::<BTreeSet<_>>().len() != vs.len()
            })
            .cloned();
        return Err(ReflectorError::UnsupportedSingularity(format!(
            "generator `{}` keeps repeated vertices after saturation",
            offender.expect("some generator violates the property")
        )));
    }
    Ok((cur, map))
}

/// The unique-simplex reflector on nonsingular inputs, certified by the
/// right lifting property against the generating family.
pub fn localize(
    space: &FiniteSimplicialSet,
) -> Result<(FiniteSimplicialSet, SimplicialMap), ReflectorError> {
    if !space.property_b() {
        return Err(ReflectorError::NotNonsingular);
    }
    let (cur, map) = saturate(space, true)?;
    certify_unique_simplex(&cur, space.dim())?;
    Ok((cur, map))
}

fn certify_unique_simplex(result: &FiniteSimplicialSet, input_dim: usize) -> Result<(), ReflectorError> {
    if !result.property_b() {
        return Err(ReflectorError::PostCheckFailed(
            "output lost the distinct-vertex property".into(),
        ));
    }
    if !result.property_c().expect("checked B") {
        return Err(ReflectorError::PostCheckFailed(
            "output fails the unique-simplex property".into(),
        ));
    }
    for i in 0..=input_dim {
        let mut budget = Budget::default();
        if !rlp_check(result, &family_f(i), &mut budget)? {
            return Err(ReflectorError::PostCheckFailed(format!(
                "output fails the lifting property against family index {i}"
            )));
        }
    }
    Ok(())
}

/// Composite reflector landing in the unique-simplex subcategory.
pub fn normalize_to_un(
    space: &FiniteSimplicialSet,
) -> Result<(FiniteSimplicialSet, SimplicialMap), ReflectorError> {
    let (b_object, to_b) = desingularize(space)?;
    let (un_object, to_un) = localize(&b_object)?;
    let composite = to_un.compose(&to_b)?;
    Ok((un_object, composite))
}

/// Induced map between localizations: surviving generators keep their
/// original names, so the assignment transports along the projections.
pub fn localize_map(
    f: &SimplicialMap,
    localized_target: &(FiniteSimplicialSet, SimplicialMap),
    localized_source: &FiniteSimplicialSet,
) -> Result<SimplicialMap, ReflectorError> {
    let (ly, py) = localized_target;
    let mut assignment = BTreeMap::new();
    for (g, _) in localized_source.generators() {
        let image = f.image_of(g)?;
        let transported = py.apply_term(image)?;
        assignment.insert(g.clone(), transported);
    }
    Ok(SimplicialMap::new(localized_source.clone(), ly.clone(), assignment)?)
}
