//! Canonical small simplicial sets: standard simplices, boundaries, horns,
//! and the handful of non-complex fixtures the reflectors act on.
//!
//! Subset generators are named by their sorted vertex indices, so the
//! fixtures produce stable golden files.

use std::collections::BTreeSet;

use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId};

fn subset_name(subset: &[usize], n: usize) -> GenId {
    let rendered: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
    if n <= 9 {
        GenId::new(rendered.concat())
    } else {
        GenId::new(rendered.join("-"))
    }
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << (n + 1)))
        .map(|mask| (0..=n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
    subsets
}

fn add_subset_generator(x: &mut FiniteSimplicialSet, subset: &[usize], n: usize) {
    let name = subset_name(subset, n);
    if subset.len() == 1 {
        x.add_vertex(name).expect("fresh");
        return;
    }
    let faces = (0..subset.len())
        .map(|i| {
            let mut face: Vec<usize> = subset.to_vec();
            face.remove(i);
            DegenerateTerm::nondegenerate(subset_name(&face, n), face.len() - 1)
        })
        .collect();
    x.add_generator(name, faces).expect("faces exist");
}

/// The standard `n`-simplex: one generator per nonempty subset of `[n]`.
pub fn delta(n: usize) -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    for subset in subsets_by_size(n) {
        add_subset_generator(&mut x, &subset, n);
    }
    x
}

/// Standard simplex with the corners of the affine simplex in R^3 attached;
/// only available up to dimension 3.
pub fn delta_with_coords(n: usize) -> Result<FiniteSimplicialSet, crate::sset::SsetError> {
    if n > 3 {
        return Err(crate::sset::SsetError::InvalidIndex(format!(
            "coordinates are only provided up to dimension 3, got {n}"
        )));
    }
    let mut x = delta(n);
    for i in 0..=n {
        let mut c = vec![0.0; 3];
        if i > 0 {
            c[i - 1] = 1.0;
        }
        x.set_coords(&subset_name(&[i], n), c).expect("vertex");
    }
    Ok(x)
}

/// The boundary of the `n`-simplex; empty for `n = 0`.
pub fn boundary(n: usize) -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    for subset in subsets_by_size(n) {
        if subset.len() == n + 1 {
            continue;
        }
        add_subset_generator(&mut x, &subset, n);
    }
    x
}

/// The horn missing the face opposite vertex `k`.
pub fn horn(n: usize, k: usize) -> Result<FiniteSimplicialSet, crate::sset::SsetError> {
    if n == 0 || k > n {
        return Err(crate::sset::SsetError::InvalidIndex(format!(
            "horn({n},{k}) requires n >= 1 and k <= n"
        )));
    }
    let mut x = FiniteSimplicialSet::new();
    for subset in subsets_by_size(n) {
        if subset.len() == n + 1 {
            continue;
        }
        if subset.len() == n && !subset.contains(&k) {
            continue;
        }
        add_subset_generator(&mut x, &subset, n);
    }
    Ok(x)
}

/// One vertex, one edge with both faces at that vertex.
pub fn circle() -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    x.add_vertex("v").expect("fresh");
    let v = DegenerateTerm::nondegenerate(GenId::from("v"), 0);
    x.add_generator("e", vec![v.clone(), v]).expect("faces");
    x
}

/// Two vertices connected by edges in both directions.
pub fn opposing_pair() -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    x.add_vertex("0").expect("fresh");
    x.add_vertex("1").expect("fresh");
    let v0 = DegenerateTerm::nondegenerate(GenId::from("0"), 0);
    let v1 = DegenerateTerm::nondegenerate(GenId::from("1"), 0);
    x.add_generator("a", vec![v1.clone(), v0.clone()]).expect("faces"); // 0 -> 1
    x.add_generator("b", vec![v0, v1]).expect("faces"); // 1 -> 0
    x
}

/// Two `n`-generators sharing their entire boundary.
pub fn parallel_pair(n: usize) -> FiniteSimplicialSet {
    let mut x = boundary(n);
    if n == 0 {
        x.add_vertex("a").expect("fresh");
        x.add_vertex("b").expect("fresh");
        return x;
    }
    let faces: Vec<DegenerateTerm> = (0..=n)
        .map(|i| {
            let face: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            DegenerateTerm::nondegenerate(subset_name(&face, n), n - 1)
        })
        .collect();
    x.add_generator("a", faces.clone()).expect("faces");
    x.add_generator("b", faces).expect("faces");
    x
}

/// Three vertices with a directed edge cycle and no 2-generators.
pub fn three_cycle() -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    for v in ["a", "b", "c"] {
        x.add_vertex(v).expect("fresh");
    }
    let v = |s: &str| DegenerateTerm::nondegenerate(GenId::from(s), 0);
    x.add_generator("ab", vec![v("b"), v("a")]).expect("faces");
    x.add_generator("bc", vec![v("c"), v("b")]).expect("faces");
    x.add_generator("ca", vec![v("a"), v("c")]).expect("faces");
    x
}

/// Two isolated vertices.
pub fn two_points() -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    x.add_vertex("a").expect("fresh");
    x.add_vertex("b").expect("fresh");
    x
}

/// One vertex with two loop edges.
pub fn wedge_of_circles() -> FiniteSimplicialSet {
    let mut x = FiniteSimplicialSet::new();
    x.add_vertex("v").expect("fresh");
    let v = DegenerateTerm::nondegenerate(GenId::from("v"), 0);
    x.add_generator("e1", vec![v.clone(), v.clone()]).expect("faces");
    x.add_generator("e2", vec![v.clone(), v]).expect("faces");
    x
}

/// Inclusion of the horn into the standard simplex, as a map of
/// presentations (generators share names).
pub fn horn_inclusion(n: usize, k: usize) -> Result<crate::sset::SimplicialMap, crate::sset::SsetError> {
    let h = horn(n, k)?;
    let d = delta(n);
    let assignment = h
        .generators()
        .map(|(g, dim)| (g.clone(), DegenerateTerm::nondegenerate(g.clone(), dim)))
        .collect();
    Ok(crate::sset::SimplicialMap::new(h, d, assignment).expect("inclusion is simplicial"))
}

/// Inclusion of the boundary into the standard simplex.
pub fn boundary_inclusion(n: usize) -> crate::sset::SimplicialMap {
    let b = boundary(n);
    let d = delta(n);
    let assignment = b
        .generators()
        .map(|(g, dim)| (g.clone(), DegenerateTerm::nondegenerate(g.clone(), dim)))
        .collect();
    crate::sset::SimplicialMap::new(b, d, assignment).expect("inclusion is simplicial")
}

/// The sub-object spanned by all generators whose vertices lie in the given
/// set, with its inclusion. For objects with the distinct-vertex property
/// this inclusion is always full.
pub fn full_subcomplex(
    x: &FiniteSimplicialSet,
    vertices: &BTreeSet<GenId>,
) -> (FiniteSimplicialSet, crate::sset::SimplicialMap) {
    let mut sub = FiniteSimplicialSet::new();
    let mut gens: Vec<(GenId, usize)> = x
        .generators()
        .filter(|(g, _)| {
            x.vertices_of(g)
                .expect("valid")
                .iter()
                .all(|v| vertices.contains(v))
        })
        .map(|(g, d)| (g.clone(), d))
        .collect();
    gens.sort_by_key(|(g, d)| (*d, g.clone()));
    for (g, d) in &gens {
        if *d == 0 {
            sub.add_vertex(g.clone()).expect("fresh");
        } else {
            sub.add_generator(g.clone(), x.faces_of(g).expect("known").to_vec())
                .expect("faces inside");
        }
    }
    let assignment = gens
        .iter()
        .map(|(g, d)| (g.clone(), DegenerateTerm::nondegenerate(g.clone(), *d)))
        .collect();
    let incl = crate::sset::SimplicialMap::unchecked(sub.clone(), x.clone(), assignment);
    (sub, incl)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_profiles() {
        let b2 = boundary(2);
        assert_eq!(b2.generators_of_dim(0).count(), 3);
        assert_eq!(b2.generators_of_dim(1).count(), 3);
        assert_eq!(b2.generators_of_dim(2).count(), 0);

        let h = horn(2, 1).unwrap();
        assert_eq!(h.generators_of_dim(0).count(), 3);
        assert_eq!(h.generators_of_dim(1).count(), 2);
        assert!(!h.contains(&GenId::from("02")));

        let pp = parallel_pair(1);
        assert_eq!(pp.generators_of_dim(0).count(), 2);
        assert_eq!(pp.generators_of_dim(1).count(), 2);
        let va = pp.vertices_of(&GenId::from("a")).unwrap();
        let vb = pp.vertices_of(&GenId::from("b")).unwrap();
        assert_eq!(va, vb);

        assert!(horn(0, 0).is_err());
        assert!(horn(2, 3).is_err());
    }

    #[test]
    fn all_fixtures_validate() {
        for x in [
            delta(0),
            delta(3),
            boundary(1),
            boundary(3),
            horn(3, 2).unwrap(),
            circle(),
            opposing_pair(),
            parallel_pair(2),
            three_cycle(),
            two_points(),
            wedge_of_circles(),
        ] {
            assert!(x.validate().is_ok());
        }
    }

    #[test]
    fn full_subcomplex_of_delta() {
        let d = delta(2);
        let verts: BTreeSet<GenId> = [GenId::from("0"), GenId::from("1")].into();
        let (sub, incl) = full_subcomplex(&d, &verts);
        assert_eq!(sub.generator_count(), 3); // 0, 1, 01
        assert!(incl.is_levelwise_injective());
    }
}
