//! Barycentric subdivision of finite simplicial sets.
//!
//! A simplex of the subdivision is a flag of nonempty vertex subsets of a
//! base simplex. Every such tuple has a unique minimal form whose base is
//! nondegenerate and whose flag ends at the full vertex set; the
//! nondegenerate simplices of the subdivision are exactly the minimal forms
//! with strictly increasing flags. [`normalize_flag_tuple`] rewrites an
//! arbitrary tuple into its minimal form, which drives both the face table
//! of [`sd`] and the functorial action [`sd_map`].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::delta::MonotoneMap;
use crate::hom::{hom_enumerate, Budget, HomError};
use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId, SimplicialMap, SsetError};

#[derive(Debug, Error)]
pub enum SubdivisionError {
    #[error("input presentation is invalid:\n{0}")]
    InvalidInput(String),
    #[error("level-wise hom budget: subdivided simplex has {got} generators, cap is {cap}")]
    LevelBudget { got: usize, cap: usize },
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// A nondegenerate simplex of the subdivision: a strictly increasing flag
/// of nonempty subsets of the base's vertex positions, ending at the full
/// set. Subsets are stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagGenerator {
    pub base: GenId,
    pub flag: Vec<u64>,
}

impl FlagGenerator {
    pub fn dim(&self) -> usize {
        self.flag.len() - 1
    }
}

fn render_subset(mask: u64) -> String {
    let mut parts = Vec::new();
    for i in 0..64 {
        if mask & (1 << i) != 0 {
            parts.push(i.to_string());
        }
    }
    parts.join(",")
}

pub fn flag_gen_name(base: &GenId, flag: &[u64]) -> GenId {
    let rendered: Vec<String> = flag.iter().map(|&m| render_subset(m)).collect();
    GenId::new(format!("{base};{}", rendered.join("|")))
}

fn full_mask(dim: usize) -> u64 {
    if dim + 1 == 64 {
        u64::MAX
    } else {
        (1u64 << (dim + 1)) - 1
    }
}

/// Image of a subset under a monotone map.
fn push_subset(mask: u64, m: &MonotoneMap) -> u64 {
    let mut out = 0u64;
    for (i, &v) in m.values().iter().enumerate() {
        if mask & (1 << i) != 0 {
            out |= 1 << v;
        }
    }
    out
}

/// Preimage of a subset under an injection given by its value list.
fn pull_subset(mask: u64, values: &[usize]) -> u64 {
    let mut out = 0u64;
    for (j, &v) in values.iter().enumerate() {
        if mask & (1 << v) != 0 {
            out |= 1 << j;
        }
    }
    out
}

/// Rewrites the tuple `(base; flags)` into its unique minimal form,
/// returning the corresponding term over the flag-generator naming scheme.
/// `flags` must be nonempty, weakly increasing subsets of the base's vertex
/// positions.
pub fn normalize_flag_tuple(
    space: &FiniteSimplicialSet,
    base: &GenId,
    flags: &[u64],
) -> Result<DegenerateTerm, SubdivisionError> {
    assert!(!flags.is_empty(), "a flag tuple needs at least one subset");
    let mut base = base.clone();
    let mut flags: Vec<u64> = flags.to_vec();
    let mut total = MonotoneMap::identity(flags.len() - 1);
    loop {
        debug_assert!(flags.iter().all(|&m| m != 0));
        debug_assert!(flags.windows(2).all(|w| w[0] & !w[1] == 0), "flags must be nested");
        // collapse adjacent equal subsets into a degeneracy
        if flags.windows(2).any(|w| w[0] == w[1]) {
            let mut dedup = Vec::with_capacity(flags.len());
            let mut values = Vec::with_capacity(flags.len());
            for &m in &flags {
                if dedup.last() != Some(&m) {
                    dedup.push(m);
                }
                values.push(dedup.len() - 1);
            }
            let sigma = MonotoneMap::new(dedup.len() - 1, values).expect("monotone");
            total = sigma.compose(&total).expect("dims");
            flags = dedup;
        }
        let base_dim = space.dim_of(&base)?;
        let last = *flags.last().expect("nonempty");
        if last == full_mask(base_dim) {
            let name = flag_gen_name(&base, &flags);
            return Ok(DegenerateTerm {
                surjection: total,
                generator: name,
            });
        }
        // restrict the base along the injection picking out the last subset
        let values: Vec<usize> = (0..=base_dim).filter(|i| last & (1 << i) != 0).collect();
        let incl = MonotoneMap::new(base_dim, values.clone()).expect("monotone");
        let term = DegenerateTerm::nondegenerate(base.clone(), base_dim);
        let restricted = space.apply(&term, &incl)?;
        flags = flags
            .iter()
            .map(|&m| push_subset(pull_subset(m, &values), &restricted.surjection))
            .collect();
        base = restricted.generator;
    }
}

/// The subdivision together with the flag behind each fresh generator.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub space: FiniteSimplicialSet,
    pub provenance: BTreeMap<GenId, FlagGenerator>,
}

/// All strictly increasing flags of nonempty subsets of `[dim]` ending at
/// the full set, grouped by length.
fn flags_over(dim: usize) -> Vec<Vec<u64>> {
    fn extend(head: u64, chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(chain.iter().rev().copied().collect());
        // every nonempty proper subset of the current head extends the chain
        let mut sub = (head - 1) & head;
        while sub != 0 {
            chain.push(sub);
            extend(sub, chain, out);
            chain.pop();
            sub = (sub - 1) & head;
        }
    }
    let mut out = Vec::new();
    let mut chain = vec![full_mask(dim)];
    extend(full_mask(dim), &mut chain, &mut out);
    out
}

/// Subdivision of a finite simplicial set.
pub fn sd(space: &FiniteSimplicialSet) -> Result<Subdivision, SubdivisionError> {
    let report = space.validate();
    if !report.is_ok() {
        return Err(SubdivisionError::InvalidInput(report.to_string()));
    }
    let mut provenance = BTreeMap::new();
    let mut by_dim: BTreeMap<usize, Vec<FlagGenerator>> = BTreeMap::new();
    for (base, dim) in space.generators() {
        for flag in flags_over(dim) {
            let fg = FlagGenerator {
                base: base.clone(),
                flag,
            };
            by_dim.entry(fg.dim()).or_default().push(fg);
        }
    }
    let mut out = FiniteSimplicialSet::new();
    for (dim, gens) in &by_dim {
        for fg in gens {
            let name = flag_gen_name(&fg.base, &fg.flag);
            if *dim == 0 {
                out.add_vertex(name.clone())?;
            } else {
                let q = fg.dim();
                let mut faces = Vec::with_capacity(q + 1);
                for i in 0..q {
                    let mut dropped = fg.flag.clone();
                    dropped.remove(i);
                    faces.push(DegenerateTerm::nondegenerate(
                        flag_gen_name(&fg.base, &dropped),
                        q - 1,
                    ));
                }
                faces.push(normalize_flag_tuple(space, &fg.base, &fg.flag[..q])?);
                out.add_generator(name.clone(), faces)?;
            }
            provenance.insert(name, fg.clone());
        }
    }
    if space.has_coords() {
        for (name, fg) in &provenance {
            if fg.dim() != 0 {
                continue;
            }
            let vertices = space.vertices_of(&fg.base)?;
            let dims: usize = vertices
                .iter()
                .filter_map(|v| space.coords(v).map(|c| c.len()))
                .max()
                .unwrap_or(0);
            if dims == 0 || vertices.iter().any(|v| space.coords(v).is_none()) {
                continue;
            }
            let mut center = vec![0.0; dims];
            for v in &vertices {
                for (k, &c) in space.coords(v).expect("present").iter().enumerate() {
                    center[k] += c;
                }
            }
            for c in &mut center {
                *c /= vertices.len() as f64;
            }
            out.set_coords(name, center)?;
        }
    }
    Ok(Subdivision {
        space: out,
        provenance,
    })
}

/// Functorial action of subdivision on a map of presentations.
pub fn sd_map(f: &SimplicialMap) -> Result<SimplicialMap, SubdivisionError> {
    let sd_source = sd(f.source())?;
    let sd_target = sd(f.target())?;
    let mut assignment = BTreeMap::new();
    for (name, fg) in &sd_source.provenance {
        let image = f.image_of(&fg.base).expect("total assignment");
        let pushed: Vec<u64> = fg
            .flag
            .iter()
            .map(|&m| push_subset(m, &image.surjection))
            .collect();
        let term = normalize_flag_tuple(f.target(), &image.generator, &pushed)?;
        assignment.insert(name.clone(), term);
    }
    Ok(SimplicialMap::unchecked(
        sd_source.space,
        sd_target.space,
        assignment,
    ))
}

/// `k`-fold subdivision; the identity for `k = 0`.
pub fn sd_iter(space: &FiniteSimplicialSet, k: usize) -> Result<FiniteSimplicialSet, SubdivisionError> {
    let mut cur = space.clone();
    for _ in 0..k {
        cur = sd(&cur)?.space;
    }
    Ok(cur)
}

/// `k`-fold subdivision of a map.
pub fn sd_iter_map(f: &SimplicialMap, k: usize) -> Result<SimplicialMap, SubdivisionError> {
    let mut cur = f.clone();
    for _ in 0..k {
        cur = sd_map(&cur)?;
    }
    Ok(cur)
}

pub const EX_LEVEL_GENERATOR_CAP: usize = 10_000;

/// The maps from the subdivided standard `n`-simplex into `space`: the
/// level-`n` simplices of the extension construction, enumerated without
/// assembling any simplicial structure between levels.
pub fn ex_level(
    space: &FiniteSimplicialSet,
    n: usize,
    budget: &mut Budget,
) -> Result<Vec<SimplicialMap>, SubdivisionError> {
    ex_level_with_cap(space, n, budget, EX_LEVEL_GENERATOR_CAP)
}

pub fn ex_level_with_cap(
    space: &FiniteSimplicialSet,
    n: usize,
    budget: &mut Budget,
    cap: usize,
) -> Result<Vec<SimplicialMap>, SubdivisionError> {
    let probe = sd(&crate::builders::delta(n))?;
    if probe.space.generator_count() > cap {
        return Err(SubdivisionError::LevelBudget {
            got: probe.space.generator_count(),
            cap,
        });
    }
    Ok(hom_enumerate(&probe.space, space, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    fn profile(x: &FiniteSimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|d| x.generators_of_dim(d).count()).collect()
    }

    #[test]
    fn subdivided_interval() {
        let s = sd(&delta(1)).unwrap();
        assert!(s.space.validate().is_ok());
        assert_eq!(profile(&s.space), vec![3, 2]);
    }

    #[test]
    fn subdivided_triangle() {
        let s = sd(&delta(2)).unwrap().space;
        assert!(s.validate().is_ok());
        assert_eq!(profile(&s), vec![7, 12, 6]);
        assert!(s.property_b());
        assert!(s.property_c().unwrap());
    }

    #[test]
    fn subdivided_circle() {
        let s = sd(&circle()).unwrap().space;
        assert!(s.validate().is_ok());
        assert_eq!(profile(&s), vec![2, 2]);
        // both edges run from the vertex class to the edge barycenter
        let b = GenId::new("e;0,1");
        for e in s.generators_of_dim(1) {
            let vs = s.vertices_of(e).unwrap();
            assert_ne!(vs[0], vs[1]);
            assert_eq!(vs[1], b);
        }
        assert!(s.n_loops().is_empty());
    }

    #[test]
    fn count_law_matches_chain_enumeration() {
        // independent oracle: count chains of nonempty subsets of [n]
        fn chains(n: usize) -> Vec<usize> {
            let full: u64 = (1 << (n + 1)) - 1;
            let mut counts = Vec::new();
            let mut frontier: Vec<Vec<u64>> = (1..=full).map(|m| vec![m]).collect();
            while !frontier.is_empty() {
                counts.push(frontier.len());
                let mut next = Vec::new();
                for chain in &frontier {
                    let last = *chain.last().unwrap();
                    for m in (last + 1)..=full {
                        if last & !m == 0 && m != last {
                            let mut c = chain.clone();
                            c.push(m);
                            next.push(c);
                        }
                    }
                }
                frontier = next;
            }
            counts
        }
        for n in 0..=3 {
            let s = sd(&delta(n)).unwrap().space;
            assert_eq!(profile(&s), chains(n), "n = {n}");
        }
        let s3 = sd(&delta(3)).unwrap().space;
        assert_eq!(profile(&s3), vec![15, 50, 60, 24]);
    }

    #[test]
    fn minimal_form_is_rewrite_order_independent() {
        // normalize a tuple directly and through a degeneracy-twisted route
        let x = delta(2);
        let base = GenId::from("012");
        let flags = [0b001u64, 0b011, 0b111];
        let direct = normalize_flag_tuple(&x, &base, &flags).unwrap();
        assert!(direct.is_nondegenerate());
        // duplicate entries; both collapse to the same minimal form
        let twisted = [0b001u64, 0b001, 0b011, 0b111, 0b111];
        let via = normalize_flag_tuple(&x, &base, &twisted).unwrap();
        assert_eq!(via.generator, direct.generator);
        // restrict through a face: (e_01; {0},{0,1}) inside the triangle
        let not_full = normalize_flag_tuple(&x, &base, &[0b001, 0b011]).unwrap();
        let on_edge = normalize_flag_tuple(&x, &GenId::from("01"), &[0b01, 0b11]).unwrap();
        assert_eq!(not_full, on_edge);
    }

    #[test]
    fn sd_of_identity_is_identity() {
        let f = SimplicialMap::identity(&delta(2));
        let sf = sd_map(&f).unwrap();
        assert!(sf.is_identity_assignment());
    }

    #[test]
    fn sd_map_collapse_interval_onto_circle() {
        let d1 = delta(1);
        let c = circle();
        let mut assignment = BTreeMap::new();
        let v = DegenerateTerm::nondegenerate(GenId::from("v"), 0);
        assignment.insert(GenId::from("0"), v.clone());
        assignment.insert(GenId::from("1"), v);
        assignment.insert(
            GenId::from("01"),
            DegenerateTerm::nondegenerate(GenId::from("e"), 1),
        );
        let f = SimplicialMap::new(d1, c.clone(), assignment).unwrap();
        let sf = sd_map(&f).unwrap();
        assert!(sf.check().is_ok());
        // both subdivided halves land on the two circle-subdivision edges
        let img0 = sf.image_of(&GenId::new("01;0|0,1")).unwrap();
        let img1 = sf.image_of(&GenId::new("01;1|0,1")).unwrap();
        assert!(img0.is_nondegenerate() && img1.is_nondegenerate());
        assert_ne!(img0, img1);
        // the vertex inclusion case
        let v0 = sf.image_of(&GenId::new("0;0")).unwrap();
        assert_eq!(v0.generator, GenId::new("v;0"));
    }

    #[test]
    fn sd_iter_zero_is_identity() {
        let x = circle();
        assert_eq!(sd_iter(&x, 0).unwrap(), x);
    }

    #[test]
    fn double_subdivision_gains_unique_simplices() {
        let s = sd_iter(&circle(), 2).unwrap();
        assert!(s.property_b());
        assert!(s.property_c().unwrap());
    }

    #[test]
    fn ex_level_counts() {
        let mut budget = Budget::default();
        for n in 0..=3 {
            assert_eq!(ex_level(&delta(0), n, &mut budget).unwrap().len(), 1);
        }
        for x in [delta(2), three_cycle()] {
            assert_eq!(
                ex_level(&x, 0, &mut budget).unwrap().len(),
                x.vertex_ids().len()
            );
        }
        // exhaustive oracle over 3-vertex maps into the ordered edge:
        // f(v0) <= f(center) >= f(v1) pointwise in {0, 1}
        let mut oracle = 0;
        for a in 0..2u8 {
            for b in 0..2u8 {
                for c in 0..2u8 {
                    if a <= b && c <= b {
                        oracle += 1;
                    }
                }
            }
        }
        assert_eq!(oracle, 5);
        assert_eq!(ex_level(&delta(1), 1, &mut budget).unwrap().len(), oracle);
    }

    #[test]
    fn barycenter_coordinates_propagate() {
        let d = delta_with_coords(2).unwrap();
        let s = sd(&d).unwrap().space;
        let center = s.coords(&GenId::new("012;0,1,2")).unwrap();
        let expect = [1.0 / 3.0, 1.0 / 3.0, 0.0];
        for (c, e) in center.iter().zip(expect) {
            assert!((c - e).abs() < 1e-12);
        }
    }
}
