//! Colimits of finite simplicial sets: coproducts, pushouts along a
//! levelwise injection, and coequalizers, with variants reflected into the
//! nonsingular and unique-simplex subcategories. The quotients run on the
//! shared congruence-closure engine, seeded with one identification per
//! apex generator.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::congruence::{Congruence, CongruenceError};
use crate::reflectors::{desingularize, normalize_to_un, ReflectorError};
use crate::sset::{FiniteSimplicialSet, GenId, MapError, SimplicialMap, SsetError};

#[derive(Debug, Error)]
pub enum ColimitError {
    #[error("pushout requires at least one levelwise-injective leg")]
    NoInjectiveLeg,
    #[error("span legs must share their apex")]
    MismatchedApex,
    #[error("parallel pair must share source and target")]
    NotParallel,
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("cell attachment {index} does not start at the current stage")]
    BadAttachment { index: usize },
    #[error(transparent)]
    Reflector(#[from] ReflectorError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Sset(#[from] SsetError),
}

/// Two maps out of a shared apex.
#[derive(Debug, Clone)]
pub struct Span {
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

impl Span {
    pub fn new(left: SimplicialMap, right: SimplicialMap) -> Result<Self, ColimitError> {
        if left.source() != right.source() {
            return Err(ColimitError::MismatchedApex);
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &FiniteSimplicialSet {
        self.left.source()
    }
}

/// A computed pushout with its structure maps.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub object: FiniteSimplicialSet,
    pub from_left_target: SimplicialMap,
    pub from_right_target: SimplicialMap,
}

/// True for injections where every simplex of the target with all vertices
/// in the image has a generator preimage.
pub fn is_full_simplicial_inclusion(j: &SimplicialMap) -> bool {
    if !j.is_levelwise_injective() {
        return false;
    }
    let image_vertices: BTreeSet<GenId> = j
        .source()
        .vertex_ids()
        .iter()
        .map(|v| j.image_of(v).expect("total").generator.clone())
        .collect();
    let image_gens: BTreeSet<GenId> = j
        .assignment()
        .values()
        .map(|t| t.generator.clone())
        .collect();
    for (g, _) in j.target().generators() {
        let vs = j.target().vertices_of(g).expect("valid");
        if vs.iter().all(|v| image_vertices.contains(v)) && !image_gens.contains(g) {
            return false;
        }
    }
    true
}

/// Pushout in plain simplicial sets. At least one leg must be levelwise
/// injective; both targets embed into a disjoint union which is then
/// quotiented by the congruence generated by the two images of every apex
/// generator.
pub fn pushout_sset(span: &Span) -> Result<Pushout, ColimitError> {
    if !span.left.is_levelwise_injective() && !span.right.is_levelwise_injective() {
        return Err(ColimitError::NoInjectiveLeg);
    }
    let parts = [span.left.target().clone(), span.right.target().clone()];
    let union = FiniteSimplicialSet::disjoint_union(&parts);
    let inj_left = FiniteSimplicialSet::summand_injection(&parts, &union, 0);
    let inj_right = FiniteSimplicialSet::summand_injection(&parts, &union, 1);
    let mut congruence = Congruence::new(&union);
    for (g, _) in span.apex().generators() {
        let via_left = inj_left.apply_term(span.left.image_of(g)?)?;
        let via_right = inj_right.apply_term(span.right.image_of(g)?)?;
        congruence.relate(via_left, via_right);
    }
    congruence.close()?;
    let (object, projection) = congruence.quotient()?;
    debug_assert!(object.validate().is_ok());
    let project = |inj: &SimplicialMap| -> SimplicialMap {
        let assignment = inj
            .source()
            .generators()
            .map(|(g, _)| {
                let embedded = inj.image_of(g).expect("total");
                (g.clone(), projection[&embedded.generator].clone())
            })
            .collect();
        SimplicialMap::unchecked(inj.source().clone(), object.clone(), assignment)
    };
    Ok(Pushout {
        from_left_target: project(&inj_left),
        from_right_target: project(&inj_right),
        object,
    })
}

/// Pushout followed by desingularization.
pub fn pushout_ns(span: &Span) -> Result<Pushout, ColimitError> {
    let plain = pushout_sset(span)?;
    let (object, reflect) = desingularize(&plain.object)?;
    Ok(Pushout {
        from_left_target: reflect.compose(&plain.from_left_target)?,
        from_right_target: reflect.compose(&plain.from_right_target)?,
        object,
    })
}

/// Pushout followed by the composite reflector into the unique-simplex
/// subcategory.
pub fn pushout_un(span: &Span) -> Result<Pushout, ColimitError> {
    let plain = pushout_sset(span)?;
    let (object, reflect) = normalize_to_un(&plain.object)?;
    Ok(Pushout {
        from_left_target: reflect.compose(&plain.from_left_target)?,
        from_right_target: reflect.compose(&plain.from_right_target)?,
        object,
    })
}

/// Disjoint union with its injections.
pub fn coproduct(parts: &[FiniteSimplicialSet]) -> (FiniteSimplicialSet, Vec<SimplicialMap>) {
    let union = FiniteSimplicialSet::disjoint_union(parts);
    let injections = (0..parts.len())
        .map(|k| FiniteSimplicialSet::summand_injection(parts, &union, k))
        .collect();
    (union, injections)
}

/// Coequalizer of a parallel pair in plain simplicial sets.
pub fn coequalizer_sset(
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<(FiniteSimplicialSet, SimplicialMap), ColimitError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(ColimitError::NotParallel);
    }
    let target = f.target().clone();
    let mut congruence = Congruence::new(&target);
    for (a, _) in f.source().generators() {
        congruence.relate(f.image_of(a)?.clone(), g.image_of(a)?.clone());
    }
    congruence.close()?;
    let (object, projection) = congruence.quotient()?;
    debug_assert!(object.validate().is_ok());
    let map = SimplicialMap::unchecked(target, object.clone(), projection);
    Ok((object, map))
}

/// Coequalizer followed by the composite reflector.
pub fn coequalizer_un(
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<(FiniteSimplicialSet, SimplicialMap), ColimitError> {
    let (plain, project) = coequalizer_sset(f, g)?;
    let (object, reflect) = normalize_to_un(&plain)?;
    Ok((object, reflect.compose(&project)?))
}

/// A finite chain of cell attachments: each step pushes the current stage
/// out along a generating map.
#[derive(Debug, Clone)]
pub struct CellChain {
    pub stages: Vec<FiniteSimplicialSet>,
    pub composite: SimplicialMap,
}

/// Iterated pushout in the unique-simplex subcategory. Every attachment is
/// a pair `(cell, attach)` where `attach` maps the cell's source into the
/// current stage.
pub fn cell_chain(
    base: &FiniteSimplicialSet,
    attachments: &[(SimplicialMap, SimplicialMap)],
) -> Result<CellChain, ColimitError> {
    let mut stages = vec![base.clone()];
    let mut composite = SimplicialMap::identity(base);
    for (index, (cell, attach)) in attachments.iter().enumerate() {
        let stage = stages.last().expect("nonempty");
        if attach.target() != stage || attach.source() != cell.source() {
            return Err(ColimitError::BadAttachment { index });
        }
        let span = Span::new(cell.clone(), attach.clone())?;
        let pushout = pushout_un(&span)?;
        composite = pushout.from_right_target.compose(&composite)?;
        stages.push(pushout.object);
    }
    Ok(CellChain { stages, composite })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::hom::{hom_enumerate, Budget};
    use crate::sset::DegenerateTerm;
    use std::collections::BTreeMap;

    fn vertex_inclusion(which: usize) -> SimplicialMap {
        // delta(0) -> delta(1) hitting the given endpoint
        let src = delta(0);
        let dst = delta(1);
        let mut assignment = BTreeMap::new();
        assignment.insert(
            GenId::from("0"),
            DegenerateTerm::nondegenerate(GenId::new(which.to_string()), 0),
        );
        SimplicialMap::new(src, dst, assignment).unwrap()
    }

    fn boundary_to_point() -> SimplicialMap {
        let src = boundary(1);
        let dst = delta(0);
        let assignment = src
            .generators()
            .map(|(g, _)| (g.clone(), DegenerateTerm::nondegenerate(GenId::from("0"), 0)))
            .collect();
        SimplicialMap::new(src, dst, assignment).unwrap()
    }

    #[test]
    fn full_inclusion_examples() {
        assert!(!is_full_simplicial_inclusion(&horn_inclusion(2, 1).unwrap()));
        assert!(is_full_simplicial_inclusion(&SimplicialMap::identity(&delta(2))));
        let sub = full_subcomplex(&delta(2), &[GenId::from("0"), GenId::from("1")].into());
        assert!(is_full_simplicial_inclusion(&sub.1));
    }

    #[test]
    fn subdivided_horn_inclusion_is_full() {
        let j = crate::subdivision::sd_map(&horn_inclusion(2, 1).unwrap()).unwrap();
        assert!(is_full_simplicial_inclusion(&j));
    }

    #[test]
    fn pushout_collapsing_edge_boundary_is_circle() {
        let incl = boundary_inclusion(1);
        let span = Span::new(boundary_to_point(), incl).unwrap();
        let p = pushout_sset(&span).unwrap();
        assert!(p.object.is_isomorphic_to(&circle()));
    }

    #[test]
    fn pushout_gluing_two_intervals_along_boundary() {
        let incl = boundary_inclusion(1);
        let span = Span::new(incl.clone(), incl).unwrap();
        let p = pushout_sset(&span).unwrap();
        assert!(p.object.is_isomorphic_to(&parallel_pair(1)));
    }

    #[test]
    fn pushout_along_identity_apex() {
        let id = SimplicialMap::identity(&delta(2));
        let incl = SimplicialMap::identity(&delta(2));
        let span = Span::new(id, incl).unwrap();
        let p = pushout_sset(&span).unwrap();
        assert!(p.object.is_isomorphic_to(&delta(2)));
    }

    #[test]
    fn pushout_rejects_two_collapsing_legs() {
        let f = boundary_to_point();
        let span = Span::new(f.clone(), f).unwrap();
        assert!(matches!(pushout_sset(&span), Err(ColimitError::NoInjectiveLeg)));
    }

    #[test]
    fn pushout_un_collapses_circle() {
        let incl = boundary_inclusion(1);
        let span = Span::new(boundary_to_point(), incl).unwrap();
        let p = pushout_un(&span).unwrap();
        assert_eq!(p.object.generator_count(), 1);
    }

    #[test]
    fn coequalizer_of_equal_maps_is_identity() {
        let f = vertex_inclusion(0);
        let (obj, map) = coequalizer_sset(&f, &f).unwrap();
        assert_eq!(obj, delta(1));
        assert!(map.is_identity_assignment());
    }

    #[test]
    fn coequalizer_of_endpoints() {
        let (obj, _) = coequalizer_sset(&vertex_inclusion(0), &vertex_inclusion(1)).unwrap();
        assert!(obj.is_isomorphic_to(&circle()));
        let (un, _) = coequalizer_un(&vertex_inclusion(0), &vertex_inclusion(1)).unwrap();
        assert_eq!(un.generator_count(), 1);
    }

    #[test]
    fn pushout_universal_property_on_small_spans() {
        // every cocone through the span factors uniquely through the pushout
        let incl = boundary_inclusion(1);
        let span = Span::new(boundary_to_point(), incl).unwrap();
        let p = pushout_sset(&span).unwrap();
        let test_objects = [circle(), delta(1), wedge_of_circles()];
        for y in test_objects {
            let mut budget = Budget::default();
            let from_left = hom_enumerate(span.left.target(), &y, &mut budget).unwrap();
            let from_right = hom_enumerate(span.right.target(), &y, &mut budget).unwrap();
            let from_pushout = hom_enumerate(&p.object, &y, &mut budget).unwrap();
            let mut cocones = 0;
            for l in &from_left {
                for r in &from_right {
                    let agree = span
                        .apex()
                        .generators()
                        .all(|(g, _)| {
                            let via_l = l
                                .apply_term(span.left.image_of(g).unwrap())
                                .unwrap();
                            let via_r = r
                                .apply_term(span.right.image_of(g).unwrap())
                                .unwrap();
                            via_l == via_r
                        });
                    if !agree {
                        continue;
                    }
                    cocones += 1;
                    let factorizations = from_pushout
                        .iter()
                        .filter(|q| {
                            let ql = q.compose(&p.from_left_target).unwrap();
                            let qr = q.compose(&p.from_right_target).unwrap();
                            ql.assignment() == l.assignment() && qr.assignment() == r.assignment()
                        })
                        .count();
                    assert_eq!(factorizations, 1, "cocone must factor uniquely");
                }
            }
            assert_eq!(cocones, from_pushout.len());
        }
    }

    #[test]
    fn cell_chain_empty_is_identity() {
        let base = delta(1);
        let chain = cell_chain(&base, &[]).unwrap();
        assert!(chain.composite.is_identity_assignment());
        assert_eq!(chain.stages.len(), 1);
    }
}
