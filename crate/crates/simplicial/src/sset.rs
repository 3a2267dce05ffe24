//! Finite simplicial sets presented by their nondegenerate simplices.
//!
//! A presentation stores one generator per nondegenerate simplex together
//! with a face table whose entries are degenerate terms: a monotone
//! surjection applied to a lower generator. Degenerate simplices are never
//! stored; the Eilenberg-Zilber factorization makes every simplicial
//! operator normalizable against the face table, which is what
//! [`FiniteSimplicialSet::apply`] does.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::delta::MonotoneMap;

/// Opaque generator identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(String);

impl GenId {
    pub fn new(name: impl Into<String>) -> Self {
        GenId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for GenId {
    fn from(s: &str) -> Self {
        GenId(s.to_owned())
    }
}

impl From<String> for GenId {
    fn from(s: String) -> Self {
        GenId(s)
    }
}

/// A simplex in Eilenberg-Zilber normal form: a monotone surjection applied
/// to a nondegenerate generator. The term is nondegenerate exactly when the
/// surjection is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegenerateTerm {
    pub surjection: MonotoneMap,
    pub generator: GenId,
}

impl DegenerateTerm {
    pub fn nondegenerate(generator: GenId, dim: usize) -> Self {
        DegenerateTerm {
            surjection: MonotoneMap::identity(dim),
            generator,
        }
    }

    pub fn dim(&self) -> usize {
        self.surjection.domain_dim()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.surjection.is_identity()
    }
}

impl fmt::Display for DegenerateTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nondegenerate() {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}·{}", self.surjection, self.generator)
        }
    }
}

#[derive(Debug, Error)]
pub enum SsetError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(GenId),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(GenId),
    #[error("generator `{gen}` of dimension {dim} needs {expected} faces, got {got}")]
    FaceCount {
        gen: GenId,
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("face {index} of `{gen}` has dimension {got}, expected {expected}")]
    FaceDimension {
        gen: GenId,
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("operator codomain {op_dim} does not match term dimension {term_dim}")]
    OperatorMismatch { op_dim: usize, term_dim: usize },
    #[error("term surjection is not surjective: {0}")]
    NotSurjection(MonotoneMap),
    #[error("coordinates may only be attached to vertices, `{0}` has positive dimension")]
    CoordinateOnNonVertex(GenId),
    #[error("partition does not cover the vertices exactly")]
    BadPartition,
    #[error("index out of range: {0}")]
    InvalidIndex(String),
}

/// One failed structural check, reported by [`FiniteSimplicialSet::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    MissingGenerator {
        gen: GenId,
        face_of: GenId,
        index: usize,
    },
    FaceDimension {
        gen: GenId,
        index: usize,
        expected: usize,
        got: usize,
    },
    IdentityFailure {
        gen: GenId,
        lower: usize,
        upper: usize,
        lhs: DegenerateTerm,
        rhs: DegenerateTerm,
    },
    BadSurjection {
        gen: GenId,
        index: usize,
    },
    CoordinateOnNonVertex {
        gen: GenId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingGenerator { gen, face_of, index } => {
                write!(f, "face {index} of `{face_of}` references unknown generator `{gen}`")
            }
            Violation::FaceDimension {
                gen,
                index,
                expected,
                got,
            } => write!(
                f,
                "face {index} of `{gen}` has dimension {got}, expected {expected}"
            ),
            Violation::IdentityFailure {
                gen,
                lower,
                upper,
                lhs,
                rhs,
            } => write!(
                f,
                "simplicial identity fails on `{gen}`: d_{lower} d_{upper} = {lhs} but d_{} d_{lower} = {rhs}",
                upper - 1
            ),
            Violation::BadSurjection { gen, index } => {
                write!(f, "face {index} of `{gen}` stores a non-surjective operator")
            }
            Violation::CoordinateOnNonVertex { gen } => {
                write!(f, "coordinates attached to non-vertex `{gen}`")
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            writeln!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// A finite simplicial set presented by nondegenerate generators and a face
/// table of degenerate terms. Vertices may optionally carry coordinates for
/// geometric export.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FiniteSimplicialSet {
    dims: BTreeMap<GenId, usize>,
    faces: BTreeMap<GenId, Vec<DegenerateTerm>>,
    coords: BTreeMap<GenId, Vec<f64>>,
}

impl FiniteSimplicialSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<GenId>) -> Result<GenId, SsetError> {
        let id = name.into();
        if self.dims.contains_key(&id) {
            return Err(SsetError::DuplicateGenerator(id));
        }
        self.dims.insert(id.clone(), 0);
        self.faces.insert(id.clone(), Vec::new());
        Ok(id)
    }

    /// Adds a generator of dimension `faces.len() - 1` with the given face
    /// terms, listed in face-index order.
    pub fn add_generator(
        &mut self,
        name: impl Into<GenId>,
        faces: Vec<DegenerateTerm>,
    ) -> Result<GenId, SsetError> {
        let id = name.into();
        if self.dims.contains_key(&id) {
            return Err(SsetError::DuplicateGenerator(id));
        }
        if faces.is_empty() {
            self.dims.insert(id.clone(), 0);
            self.faces.insert(id.clone(), faces);
            return Ok(id);
        }
        let dim = faces.len() - 1;
        for (i, t) in faces.iter().enumerate() {
            if !t.surjection.is_surjective() {
                return Err(SsetError::NotSurjection(t.surjection.clone()));
            }
            let target_dim = self
                .dims
                .get(&t.generator)
                .copied()
                .ok_or_else(|| SsetError::UnknownGenerator(t.generator.clone()))?;
            if t.surjection.codomain_dim() != target_dim || t.dim() != dim - 1 {
                return Err(SsetError::FaceDimension {
                    gen: id,
                    index: i,
                    expected: dim - 1,
                    got: t.dim(),
                });
            }
        }
        self.dims.insert(id.clone(), dim);
        self.faces.insert(id.clone(), faces);
        Ok(id)
    }

    pub fn set_coords(&mut self, gen: &GenId, coords: Vec<f64>) -> Result<(), SsetError> {
        match self.dims.get(gen) {
            None => Err(SsetError::UnknownGenerator(gen.clone())),
            Some(0) => {
                self.coords.insert(gen.clone(), coords);
                Ok(())
            }
            Some(_) => Err(SsetError::CoordinateOnNonVertex(gen.clone())),
        }
    }

    pub fn coords(&self, gen: &GenId) -> Option<&[f64]> {
        self.coords.get(gen).map(|c| c.as_slice())
    }

    pub fn has_coords(&self) -> bool {
        !self.coords.is_empty()
    }

    pub fn contains(&self, gen: &GenId) -> bool {
        self.dims.contains_key(gen)
    }

    pub fn dim_of(&self, gen: &GenId) -> Result<usize, SsetError> {
        self.dims
            .get(gen)
            .copied()
            .ok_or_else(|| SsetError::UnknownGenerator(gen.clone()))
    }

    /// Maximum generator dimension; empty objects have dimension 0.
    pub fn dim(&self) -> usize {
        self.dims.values().copied().max().unwrap_or(0)
    }

    pub fn generator_count(&self) -> usize {
        self.dims.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = (&GenId, usize)> {
        self.dims.iter().map(|(g, &d)| (g, d))
    }

    pub fn generators_of_dim(&self, dim: usize) -> impl Iterator<Item = &GenId> {
        self.dims
            .iter()
            .filter(move |(_, &d)| d == dim)
            .map(|(g, _)| g)
    }

    pub fn vertex_ids(&self) -> Vec<GenId> {
        self.generators_of_dim(0).cloned().collect()
    }

    pub fn face(&self, gen: &GenId, index: usize) -> Result<&DegenerateTerm, SsetError> {
        let faces = self
            .faces
            .get(gen)
            .ok_or_else(|| SsetError::UnknownGenerator(gen.clone()))?;
        faces.get(index).ok_or(SsetError::OperatorMismatch {
            op_dim: index,
            term_dim: faces.len(),
        })
    }

    pub fn faces_of(&self, gen: &GenId) -> Result<&[DegenerateTerm], SsetError> {
        self.faces
            .get(gen)
            .map(|v| v.as_slice())
            .ok_or_else(|| SsetError::UnknownGenerator(gen.clone()))
    }

    /// Normalizes the action of an arbitrary simplicial operator on a term:
    /// the surjective part composes into the term, the injective part is
    /// split into elementary faces and resolved through the face table,
    /// re-factorizing at every step.
    pub fn apply(&self, term: &DegenerateTerm, op: &MonotoneMap) -> Result<DegenerateTerm, SsetError> {
        if op.codomain_dim() != term.dim() {
            return Err(SsetError::OperatorMismatch {
                op_dim: op.codomain_dim(),
                term_dim: term.dim(),
            });
        }
        let composite = term.surjection.compose(op).expect("dims checked");
        self.normalize(&term.generator, &composite)
    }

    /// Normal form of `op` acting on a generator.
    fn normalize(&self, gen: &GenId, op: &MonotoneMap) -> Result<DegenerateTerm, SsetError> {
        let (surj, inj) = op.ez_factorize();
        if inj.is_identity() {
            return Ok(DegenerateTerm {
                surjection: surj,
                generator: gen.clone(),
            });
        }
        // peel off the largest omitted value and resolve it as a face
        let j = *inj.missing_values().expect("injective").first().expect("non-identity");
        let face_term = self.face(gen, j)?.clone();
        // inj = delta_j ∘ inj2, where inj2 drops the gap at j
        let inj2_values: Vec<usize> = inj
            .values()
            .iter()
            .map(|&v| if v > j { v - 1 } else { v })
            .collect();
        let inj2 = MonotoneMap::new(inj.codomain_dim() - 1, inj2_values).expect("still injective");
        let rest = face_term
            .surjection
            .compose(&inj2)
            .expect("dims match")
            .compose(&surj)
            .expect("dims match");
        self.normalize(&face_term.generator, &rest)
    }

    /// The ordered vertex list of a generator, via the vertex inclusions.
    pub fn vertices_of(&self, gen: &GenId) -> Result<Vec<GenId>, SsetError> {
        let dim = self.dim_of(gen)?;
        let term = DegenerateTerm::nondegenerate(gen.clone(), dim);
        let mut out = Vec::with_capacity(dim + 1);
        for i in 0..=dim {
            let incl = MonotoneMap::new(dim, vec![i]).expect("vertex inclusion");
            let v = self.apply(&term, &incl)?;
            debug_assert!(v.is_nondegenerate() && v.dim() == 0);
            out.push(v.generator);
        }
        Ok(out)
    }

    /// Checks every structural invariant, reporting all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (gen, &dim) in &self.dims {
            let faces = match self.faces.get(gen) {
                Some(f) => f,
                None => continue,
            };
            if dim == 0 {
                continue;
            }
            for (i, t) in faces.iter().enumerate() {
                if !t.surjection.is_surjective() {
                    report.violations.push(Violation::BadSurjection {
                        gen: gen.clone(),
                        index: i,
                    });
                }
                match self.dims.get(&t.generator) {
                    None => report.violations.push(Violation::MissingGenerator {
                        gen: t.generator.clone(),
                        face_of: gen.clone(),
                        index: i,
                    }),
                    Some(&td) => {
                        if t.surjection.codomain_dim() != td || t.dim() + 1 != dim {
                            report.violations.push(Violation::FaceDimension {
                                gen: gen.clone(),
                                index: i,
                                expected: dim - 1,
                                got: t.dim(),
                            });
                        }
                    }
                }
            }
        }
        if !report.is_ok() {
            return report; // identities are not checkable on a broken table
        }
        for (gen, &dim) in &self.dims {
            if dim < 2 {
                continue;
            }
            for j in 1..=dim {
                for i in 0..j {
                    let dj = self.faces[gen][j].clone();
                    let di = self.faces[gen][i].clone();
                    let lhs = self.apply(&dj, &MonotoneMap::face(dim - 1, i).expect("range"));
                    let rhs = self.apply(&di, &MonotoneMap::face(dim - 1, j - 1).expect("range"));
                    match (lhs, rhs) {
                        (Ok(l), Ok(r)) => {
                            if l != r {
                                report.violations.push(Violation::IdentityFailure {
                                    gen: gen.clone(),
                                    lower: i,
                                    upper: j,
                                    lhs: l,
                                    rhs: r,
                                });
                            }
                        }
                        _ => report.violations.push(Violation::IdentityFailure {
                            gen: gen.clone(),
                            lower: i,
                            upper: j,
                            lhs: DegenerateTerm::nondegenerate(gen.clone(), 0),
                            rhs: DegenerateTerm::nondegenerate(gen.clone(), 0),
                        }),
                    }
                }
            }
        }
        for gen in self.coords.keys() {
            if self.dims.get(gen).copied().unwrap_or(1) != 0 {
                report
                    .violations
                    .push(Violation::CoordinateOnNonVertex { gen: gen.clone() });
            }
        }
        report
    }

    /// True when every generator has pairwise-distinct vertices.
    pub fn property_b(&self) -> bool {
        self.dims.keys().all(|g| {
            let vs = self.vertices_of(g).expect("valid presentation");
            let set: BTreeSet<&GenId> = vs.iter().collect();
            set.len() == vs.len()
        })
    }

    /// True when no two distinct generators share the same vertex set.
    /// Only defined for objects with the distinct-vertex property.
    pub fn property_c(&self) -> Result<bool, PropertyCError> {
        if !self.property_b() {
            return Err(PropertyCError::NotPropertyB);
        }
        let mut seen: HashMap<BTreeSet<GenId>, &GenId> = HashMap::new();
        for g in self.dims.keys() {
            let set: BTreeSet<GenId> = self.vertices_of(g).expect("valid").into_iter().collect();
            if seen.insert(set, g).is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Directed 1-skeleton: one arc per nondegenerate 1-generator, from its
    /// d1 face to its d0 face.
    pub fn edge_arcs(&self) -> Vec<(GenId, GenId, GenId)> {
        let mut arcs = Vec::new();
        for e in self.generators_of_dim(1) {
            let tgt = self.faces[e][0].generator.clone();
            let src = self.faces[e][1].generator.clone();
            arcs.push((e.clone(), src, tgt));
        }
        arcs
    }

    /// Directed loops in the 1-skeleton: one representative cycle per
    /// nontrivial strongly connected component, plus every self-arc. Empty
    /// exactly when the directed graph on vertices is acyclic.
    pub fn n_loops(&self) -> Vec<Vec<GenId>> {
        let arcs = self.edge_arcs();
        let mut loops = Vec::new();
        for (e, s, t) in &arcs {
            if s == t {
                loops.push(vec![e.clone()]);
            }
        }
        let partition = self.scc_classes();
        for block in partition.blocks() {
            if block.len() < 2 {
                continue;
            }
            if let Some(cycle) = cycle_within(&arcs, block) {
                loops.push(cycle);
            }
        }
        loops
    }

    /// Partition of the vertices into strongly connected components of the
    /// directed 1-skeleton.
    pub fn scc_classes(&self) -> VertexPartition {
        let vertices = self.vertex_ids();
        let index: HashMap<&GenId, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut graph = vec![Vec::new(); vertices.len()];
        for (_, s, t) in self.edge_arcs() {
            graph[index[&s]].push(index[&t]);
        }
        let comps = tarjan_scc(&graph);
        let blocks = comps
            .into_iter()
            .map(|c| c.into_iter().map(|i| vertices[i].clone()).collect())
            .collect();
        VertexPartition::new(blocks, self).expect("scc covers vertices")
    }

    /// Pushout of `X <- discrete(X_0) -> discrete(X_0 / P)`: vertex labels
    /// are rewritten to their block representatives, all other generators
    /// are untouched. The result may lose the distinct-vertex property.
    pub fn quotient_vertices(
        &self,
        partition: &VertexPartition,
    ) -> Result<(FiniteSimplicialSet, SimplicialMap), SsetError> {
        partition.check_covers(self)?;
        let rep = partition.representative_map();
        let mut out = FiniteSimplicialSet::new();
        for (g, &d) in &self.dims {
            if d == 0 {
                let r = &rep[g];
                if !out.contains(r) {
                    out.add_vertex(r.clone())?;
                }
            }
        }
        let mut dims: Vec<(&GenId, usize)> = self.dims.iter().map(|(g, &d)| (g, d)).collect();
        dims.sort_by_key(|&(g, d)| (d, g.clone()));
        for (g, d) in dims {
            if d == 0 {
                continue;
            }
            let faces = self.faces[g]
                .iter()
                .map(|t| {
                    let target = rep.get(&t.generator).cloned().unwrap_or_else(|| t.generator.clone());
                    DegenerateTerm {
                        surjection: t.surjection.clone(),
                        generator: target,
                    }
                })
                .collect();
            out.add_generator(g.clone(), faces)?;
        }
        let mut assignment = BTreeMap::new();
        for (g, &d) in &self.dims {
            let target = if d == 0 { rep[g].clone() } else { g.clone() };
            assignment.insert(g.clone(), DegenerateTerm::nondegenerate(target, d));
        }
        let map = SimplicialMap::unchecked(self.clone(), out.clone(), assignment);
        Ok((out, map))
    }

    /// Presentation of the fundamental category: vertices as objects, arcs
    /// as generating arrows, one triangle relation per 2-generator.
    pub fn fundamental_category(&self) -> CategoryPresentation {
        let objects = self.vertex_ids();
        let arrows = self
            .edge_arcs()
            .into_iter()
            .map(|(id, src, tgt)| ArrowGen { id, src, tgt })
            .collect();
        let mut relations = Vec::new();
        for t in self.generators_of_dim(2) {
            let edge = |term: &DegenerateTerm| {
                if term.is_nondegenerate() {
                    PathEdge::Arrow(term.generator.clone())
                } else {
                    PathEdge::Identity(term.generator.clone())
                }
            };
            relations.push(TriangleRelation {
                composite: edge(&self.faces[t][1]),
                second: edge(&self.faces[t][0]),
                first: edge(&self.faces[t][2]),
                witness: t.clone(),
            });
        }
        CategoryPresentation {
            objects,
            arrows,
            relations,
        }
    }

    /// Weakly connected components of the 1-skeleton (path components).
    pub fn path_components(&self) -> VertexPartition {
        let vertices = self.vertex_ids();
        let index: HashMap<&GenId, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut uf: Vec<usize> = (0..vertices.len()).collect();
        fn find(uf: &mut Vec<usize>, i: usize) -> usize {
            if uf[i] != i {
                let r = find(uf, uf[i]);
                uf[i] = r;
            }
            uf[i]
        }
        for (_, s, t) in self.edge_arcs() {
            let (a, b) = (find(&mut uf, index[&s]), find(&mut uf, index[&t]));
            if a != b {
                uf[a] = b;
            }
        }
        let mut blocks: BTreeMap<usize, BTreeSet<GenId>> = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            blocks.entry(find(&mut uf, i)).or_default().insert(v.clone());
        }
        VertexPartition::new(blocks.into_values().collect(), self).expect("covers")
    }

    pub fn is_path_connected(&self) -> bool {
        self.path_components().blocks().len() == 1
    }

    /// Disjoint union; generator names are prefixed with the summand index.
    pub fn disjoint_union(parts: &[FiniteSimplicialSet]) -> FiniteSimplicialSet {
        let mut out = FiniteSimplicialSet::new();
        for (k, part) in parts.iter().enumerate() {
            let rename = |g: &GenId| GenId::new(format!("{k}:{g}"));
            let mut dims: Vec<(&GenId, usize)> = part.dims.iter().map(|(g, &d)| (g, d)).collect();
            dims.sort_by_key(|&(g, d)| (d, g.clone()));
            for (g, d) in dims {
                if d == 0 {
                    out.add_vertex(rename(g)).expect("fresh");
                } else {
                    let faces = part.faces[g]
                        .iter()
                        .map(|t| DegenerateTerm {
                            surjection: t.surjection.clone(),
                            generator: rename(&t.generator),
                        })
                        .collect();
                    out.add_generator(rename(g), faces).expect("fresh");
                }
            }
            for (g, c) in &part.coords {
                out.set_coords(&rename(g), c.clone()).expect("vertex");
            }
        }
        out
    }

    /// Injection of summand `k` into a disjoint union built by
    /// [`FiniteSimplicialSet::disjoint_union`].
    pub fn summand_injection(
        parts: &[FiniteSimplicialSet],
        union: &FiniteSimplicialSet,
        k: usize,
    ) -> SimplicialMap {
        let part = &parts[k];
        let assignment = part
            .dims
            .iter()
            .map(|(g, &d)| {
                (
                    g.clone(),
                    DegenerateTerm::nondegenerate(GenId::new(format!("{k}:{g}")), d),
                )
            })
            .collect();
        SimplicialMap::unchecked(part.clone(), union.clone(), assignment)
    }

    /// Isomorphism test by backtracking over dimension-compatible generator
    /// bijections with face-compatibility pruning.
    pub fn is_isomorphic_to(&self, other: &FiniteSimplicialSet) -> bool {
        iso_search(self, other)
    }

}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PropertyCError {
    #[error("the unique-simplex property is only defined for objects with the distinct-vertex property")]
    NotPropertyB,
}

/// A partition of the 0-generators of a simplicial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<BTreeSet<GenId>>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<BTreeSet<GenId>>, space: &FiniteSimplicialSet) -> Result<Self, SsetError> {
        let mut seen = BTreeSet::new();
        for block in &blocks {
            for v in block {
                if !seen.insert(v.clone()) {
                    return Err(SsetError::BadPartition);
                }
            }
        }
        let vertices: BTreeSet<GenId> = space.vertex_ids().into_iter().collect();
        if seen != vertices {
            return Err(SsetError::BadPartition);
        }
        let mut blocks = blocks;
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        Ok(VertexPartition { blocks })
    }

    /// The discrete partition (all singletons).
    pub fn discrete(space: &FiniteSimplicialSet) -> Self {
        let blocks = space
            .vertex_ids()
            .into_iter()
            .map(|v| BTreeSet::from([v]))
            .collect();
        VertexPartition { blocks }
    }

    /// Partition merging the given vertices, all other blocks singleton.
    pub fn merging(space: &FiniteSimplicialSet, merged: &BTreeSet<GenId>) -> Self {
        let mut blocks = vec![merged.clone()];
        for v in space.vertex_ids() {
            if !merged.contains(&v) {
                blocks.push(BTreeSet::from([v]));
            }
        }
        blocks.sort();
        VertexPartition { blocks }
    }

    pub fn blocks(&self) -> &[BTreeSet<GenId>] {
        &self.blocks
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn block_of(&self, v: &GenId) -> Option<&BTreeSet<GenId>> {
        self.blocks.iter().find(|b| b.contains(v))
    }

    /// Each vertex mapped to the least element of its block.
    pub fn representative_map(&self) -> BTreeMap<GenId, GenId> {
        let mut map = BTreeMap::new();
        for block in &self.blocks {
            let rep = block.iter().next().expect("nonempty").clone();
            for v in block {
                map.insert(v.clone(), rep.clone());
            }
        }
        map
    }

    fn check_covers(&self, space: &FiniteSimplicialSet) -> Result<(), SsetError> {
        let covered: BTreeSet<GenId> = self.blocks.iter().flatten().cloned().collect();
        let vertices: BTreeSet<GenId> = space.vertex_ids().into_iter().collect();
        if covered == vertices {
            Ok(())
        } else {
            Err(SsetError::BadPartition)
        }
    }
}

/// A map of presentations: every generator of the source is assigned a term
/// of the same dimension in the target, commuting with faces.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialMap {
    source: FiniteSimplicialSet,
    target: FiniteSimplicialSet,
    assignment: BTreeMap<GenId, DegenerateTerm>,
}

#[derive(Debug, Error)]
pub enum MapError {
    #[error("no assignment for generator `{0}`")]
    Missing(GenId),
    #[error("assignment of `{gen}` has dimension {got}, expected {expected}")]
    Dimension {
        gen: GenId,
        expected: usize,
        got: usize,
    },
    #[error("assignment of `{gen}` does not commute with face {index}")]
    FaceMismatch { gen: GenId, index: usize },
    #[error("assignment references unknown target generator `{0}`")]
    UnknownTarget(GenId),
    #[error("vertex map cannot be realized on `{gen}`: {reason}")]
    Unrealizable { gen: GenId, reason: String },
    #[error("maps are not composable")]
    NotComposable,
    #[error(transparent)]
    Sset(#[from] SsetError),
}

impl SimplicialMap {
    pub fn new(
        source: FiniteSimplicialSet,
        target: FiniteSimplicialSet,
        assignment: BTreeMap<GenId, DegenerateTerm>,
    ) -> Result<Self, MapError> {
        let map = SimplicialMap {
            source,
            target,
            assignment,
        };
        map.check()?;
        Ok(map)
    }

    /// For maps that are simplicial by construction; still checked when
    /// debug assertions are on.
    pub(crate) fn unchecked(
        source: FiniteSimplicialSet,
        target: FiniteSimplicialSet,
        assignment: BTreeMap<GenId, DegenerateTerm>,
    ) -> Self {
        let map = SimplicialMap {
            source,
            target,
            assignment,
        };
        debug_assert!(map.check().is_ok(), "internally constructed map is not simplicial");
        map
    }

    /// Validates dimension compatibility and face commutation.
    pub fn check(&self) -> Result<(), MapError> {
        for (g, &d) in self.source.dims.iter() {
            let t = self
                .assignment
                .get(g)
                .ok_or_else(|| MapError::Missing(g.clone()))?;
            if !self.target.contains(&t.generator) {
                return Err(MapError::UnknownTarget(t.generator.clone()));
            }
            if t.dim() != d
                || t.surjection.codomain_dim() != self.target.dim_of(&t.generator)?
            {
                return Err(MapError::Dimension {
                    gen: g.clone(),
                    expected: d,
                    got: t.dim(),
                });
            }
            for i in 0..=d {
                if d == 0 {
                    break;
                }
                let op = MonotoneMap::face(d, i).expect("range");
                let lhs = self.target.apply(t, &op)?;
                let src_face = &self.source.faces[g][i];
                let assigned = self
                    .assignment
                    .get(&src_face.generator)
                    .ok_or_else(|| MapError::Missing(src_face.generator.clone()))?;
                let rhs = DegenerateTerm {
                    surjection: assigned
                        .surjection
                        .compose(&src_face.surjection)
                        .expect("dims"),
                    generator: assigned.generator.clone(),
                };
                if lhs != rhs {
                    return Err(MapError::FaceMismatch {
                        gen: g.clone(),
                        index: i,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(space: &FiniteSimplicialSet) -> Self {
        let assignment = space
            .dims
            .iter()
            .map(|(g, &d)| (g.clone(), DegenerateTerm::nondegenerate(g.clone(), d)))
            .collect();
        SimplicialMap {
            source: space.clone(),
            target: space.clone(),
            assignment,
        }
    }

    /// Lifts a vertex assignment to a full map when every generator's image
    /// tuple is realized by exactly one term of the target.
    pub fn from_vertex_map(
        source: &FiniteSimplicialSet,
        target: &FiniteSimplicialSet,
        vertex_map: &BTreeMap<GenId, GenId>,
    ) -> Result<Self, MapError> {
        let index = TupleIndex::build(target);
        let mut assignment = BTreeMap::new();
        for (g, &d) in source.dims.iter() {
            let tuple: Vec<GenId> = source
                .vertices_of(g)?
                .into_iter()
                .map(|v| {
                    vertex_map
                        .get(&v)
                        .cloned()
                        .ok_or(MapError::Missing(v.clone()))
                })
                .collect::<Result<_, _>>()?;
            let candidates = index.realizations(target, &tuple);
            match candidates.len() {
                1 => {
                    assignment.insert(g.clone(), candidates.into_iter().next().expect("one"));
                }
                0 => {
                    return Err(MapError::Unrealizable {
                        gen: g.clone(),
                        reason: format!("no simplex with vertex tuple {tuple:?}"),
                    })
                }
                n => {
                    let _ = d;
                    return Err(MapError::Unrealizable {
                        gen: g.clone(),
                        reason: format!("{n} simplices share the vertex tuple {tuple:?}"),
                    });
                }
            }
        }
        let map = SimplicialMap {
            source: source.clone(),
            target: target.clone(),
            assignment,
        };
        map.check()?;
        Ok(map)
    }

    pub fn source(&self) -> &FiniteSimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSimplicialSet {
        &self.target
    }

    pub fn assignment(&self) -> &BTreeMap<GenId, DegenerateTerm> {
        &self.assignment
    }

    pub fn image_of(&self, gen: &GenId) -> Result<&DegenerateTerm, MapError> {
        self.assignment.get(gen).ok_or_else(|| MapError::Missing(gen.clone()))
    }

    /// Image of an arbitrary term of the source.
    pub fn apply_term(&self, term: &DegenerateTerm) -> Result<DegenerateTerm, MapError> {
        let assigned = self.image_of(&term.generator)?;
        Ok(DegenerateTerm {
            surjection: assigned.surjection.compose(&term.surjection).expect("dims"),
            generator: assigned.generator.clone(),
        })
    }

    /// `self ∘ earlier`, evaluating `earlier` first.
    pub fn compose(&self, earlier: &SimplicialMap) -> Result<SimplicialMap, MapError> {
        if earlier.target != self.source {
            return Err(MapError::NotComposable);
        }
        let assignment = earlier
            .assignment
            .iter()
            .map(|(g, t)| Ok((g.clone(), self.apply_term(t)?)))
            .collect::<Result<_, MapError>>()?;
        Ok(SimplicialMap {
            source: earlier.source.clone(),
            target: self.target.clone(),
            assignment,
        })
    }

    pub fn is_identity_assignment(&self) -> bool {
        self.assignment
            .iter()
            .all(|(g, t)| t.is_nondegenerate() && &t.generator == g)
    }

    /// Levelwise injectivity: every generator lands on a distinct
    /// nondegenerate generator.
    pub fn is_levelwise_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.assignment
            .values()
            .all(|t| t.is_nondegenerate() && seen.insert(t.generator.clone()))
    }

    pub fn vertex_map(&self) -> BTreeMap<GenId, GenId> {
        self.assignment
            .iter()
            .filter(|(g, _)| self.source.dims[*g] == 0)
            .map(|(g, t)| (g.clone(), t.generator.clone()))
            .collect()
    }
}

/// Generating arrow of a fundamental category presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowGen {
    pub id: GenId,
    pub src: GenId,
    pub tgt: GenId,
}

/// Either a generating arrow or an identity, as occurring in a triangle
/// relation with degenerate faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathEdge {
    Arrow(GenId),
    Identity(GenId),
}

/// `composite = second ∘ first`, witnessed by a 2-generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRelation {
    pub composite: PathEdge,
    pub second: PathEdge,
    pub first: PathEdge,
    pub witness: GenId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryPresentation {
    pub objects: Vec<GenId>,
    pub arrows: Vec<ArrowGen>,
    pub relations: Vec<TriangleRelation>,
}

/// Index from vertex tuples to the generators realizing them, used by hom
/// enumeration and vertex-map lifting.
pub(crate) struct TupleIndex {
    by_tuple: HashMap<Vec<GenId>, Vec<GenId>>,
}

impl TupleIndex {
    pub(crate) fn build(space: &FiniteSimplicialSet) -> Self {
        let mut by_tuple: HashMap<Vec<GenId>, Vec<GenId>> = HashMap::new();
        for (g, _) in space.generators() {
            let tuple = space.vertices_of(g).expect("valid");
            by_tuple.entry(tuple).or_default().push(g.clone());
        }
        TupleIndex { by_tuple }
    }

    /// All terms of `space` whose vertex tuple equals `tuple`.
    pub(crate) fn realizations(
        &self,
        space: &FiniteSimplicialSet,
        tuple: &[GenId],
    ) -> Vec<DegenerateTerm> {
        let n = tuple.len() - 1;
        let mut out = Vec::new();
        for surj in surjections_from(n) {
            // the tuple must be constant on each fiber of the surjection
            let mut base = vec![None; surj.codomain_dim() + 1];
            let mut ok = true;
            for (i, &v) in surj.values().iter().enumerate() {
                match &base[v] {
                    None => base[v] = Some(tuple[i].clone()),
                    Some(b) if *b == tuple[i] => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let base: Vec<GenId> = base.into_iter().map(|b| b.expect("surjective")).collect();
            if let Some(gens) = self.by_tuple.get(&base) {
                for g in gens {
                    if space.dims[g] == surj.codomain_dim() {
                        out.push(DegenerateTerm {
                            surjection: surj.clone(),
                            generator: g.clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

/// All monotone surjections out of `[n]`, identity included.
pub(crate) fn surjections_from(n: usize) -> Vec<MonotoneMap> {
    // choose the set of positions where the value repeats
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut values = Vec::with_capacity(n + 1);
        let mut v = 0usize;
        values.push(0);
        for i in 0..n {
            if mask & (1 << i) == 0 {
                v += 1;
            }
            values.push(v);
        }
        out.push(MonotoneMap::new(v, values).expect("monotone"));
    }
    out
}

fn tarjan_scc(graph: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State {
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }
    fn connect(v: usize, graph: &[Vec<usize>], st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &graph[v] {
            if st.idx[w].is_none() {
                connect(w, graph, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].expect("visited"));
            }
        }
        if st.low[v] == st.idx[v].expect("set") {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.comps.push(comp);
        }
    }
    let n = graph.len();
    let mut st = State {
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, graph, &mut st);
        }
    }
    st.comps
}

/// One directed cycle through the arcs of a nontrivial component.
fn cycle_within(arcs: &[(GenId, GenId, GenId)], block: &BTreeSet<GenId>) -> Option<Vec<GenId>> {
    let start = block.iter().next()?;
    // BFS back to the start through arcs staying inside the block
    let mut pred: HashMap<&GenId, (&GenId, &GenId)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for (e, s, t) in arcs {
            if s == v && block.contains(t) && t != start && !pred.contains_key(t) {
                pred.insert(t, (s, e));
                queue.push_back(t);
            }
            if s == v && t == start {
                // close the cycle
                let mut path = vec![e.clone()];
                let mut cur = v;
                while cur != start {
                    let (p, pe) = pred[cur];
                    path.push(pe.clone());
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
        }
    }
    None
}

fn iso_search(a: &FiniteSimplicialSet, b: &FiniteSimplicialSet) -> bool {
    if a == b {
        return true;
    }
    let mut a_gens: Vec<&GenId> = a.dims.keys().collect();
    let b_gens: Vec<&GenId> = b.dims.keys().collect();
    if a_gens.len() != b_gens.len() {
        return false;
    }
    let mut a_counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut b_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, d) in a.generators() {
        *a_counts.entry(d).or_default() += 1;
    }
    for (_, d) in b.generators() {
        *b_counts.entry(d).or_default() += 1;
    }
    if a_counts != b_counts {
        return false;
    }
    if a.property_b()
        && b.property_b()
        && a.property_c().unwrap_or(false)
        && b.property_c().unwrap_or(false)
    {
        return complex_like_iso(a, b);
    }
    // assign generators in dependency order so faces prune immediately
    a_gens.sort_by_key(|g| (a.dims[*g], (*g).clone()));
    let mut assignment: BTreeMap<GenId, GenId> = BTreeMap::new();
    let mut used: BTreeSet<GenId> = BTreeSet::new();
    fn compatible(
        a: &FiniteSimplicialSet,
        b: &FiniteSimplicialSet,
        assignment: &BTreeMap<GenId, GenId>,
        g: &GenId,
        h: &GenId,
    ) -> bool {
        let d = a.dims[g];
        if b.dims[h] != d {
            return false;
        }
        for i in 0..=d {
            if d == 0 {
                break;
            }
            let fa = &a.faces[g][i];
            let fb = &b.faces[h][i];
            if fa.surjection != fb.surjection {
                return false;
            }
            match assignment.get(&fa.generator) {
                Some(mapped) if mapped == &fb.generator => {}
                _ => return false,
            }
        }
        true
    }
    fn extend(
        a: &FiniteSimplicialSet,
        b: &FiniteSimplicialSet,
        order: &[&GenId],
        pos: usize,
        assignment: &mut BTreeMap<GenId, GenId>,
        used: &mut BTreeSet<GenId>,
        b_gens: &[&GenId],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let g = order[pos];
        for h in b_gens {
            if used.contains(*h) {
                continue;
            }
            if !compatible(a, b, assignment, g, h) {
                continue;
            }
            assignment.insert(g.clone(), (*h).clone());
            used.insert((*h).clone());
            if extend(a, b, order, pos + 1, assignment, used, b_gens) {
                return true;
            }
            assignment.remove(g);
            used.remove(*h);
        }
        false
    }
    extend(a, b, &a_gens, 0, &mut assignment, &mut used, &b_gens)
}

/// Isomorphism of objects where simplices are determined by their vertex
/// tuples: color-refine the vertices, then backtrack over color-compatible
/// vertex bijections, verifying tuple realization incrementally.
fn complex_like_iso(a: &FiniteSimplicialSet, b: &FiniteSimplicialSet) -> bool {
    let a_colors = refine_colors(a);
    let b_colors = refine_colors(b);
    let mut a_hist: BTreeMap<u64, usize> = BTreeMap::new();
    let mut b_hist: BTreeMap<u64, usize> = BTreeMap::new();
    for c in a_colors.values() {
        *a_hist.entry(*c).or_default() += 1;
    }
    for c in b_colors.values() {
        *b_hist.entry(*c).or_default() += 1;
    }
    if a_hist != b_hist {
        return false;
    }
    // assign rare colors first
    let mut a_vertices: Vec<GenId> = a.vertex_ids();
    a_vertices.sort_by_key(|v| (a_hist[&a_colors[v]], a_colors[v], v.clone()));
    let b_vertices = b.vertex_ids();
    let a_tuples: Vec<(GenId, Vec<GenId>)> = a
        .generators()
        .filter(|(_, d)| *d > 0)
        .map(|(g, _)| (g.clone(), a.vertices_of(g).expect("valid")))
        .collect();
    let b_index = TupleIndex::build(b);

    struct State<'s> {
        b: &'s FiniteSimplicialSet,
        order: Vec<GenId>,
        a_colors: BTreeMap<GenId, u64>,
        b_colors: BTreeMap<GenId, u64>,
        b_vertices: Vec<GenId>,
        a_tuples: Vec<(GenId, Vec<GenId>)>,
        b_index: TupleIndex,
    }

    fn assign(st: &State<'_>, pos: usize, map: &mut BTreeMap<GenId, GenId>, used: &mut BTreeSet<GenId>) -> bool {
        if pos == st.order.len() {
            return true;
        }
        let v = &st.order[pos];
        for w in &st.b_vertices {
            if used.contains(w) || st.b_colors[w] != st.a_colors[v] {
                continue;
            }
            map.insert(v.clone(), w.clone());
            used.insert(w.clone());
            // every tuple that just completed must be realized in b
            let ok = st.a_tuples.iter().all(|(_, tuple)| {
                if !tuple.contains(v) || !tuple.iter().all(|u| map.contains_key(u)) {
                    return true;
                }
                let image: Vec<GenId> = tuple.iter().map(|u| map[u].clone()).collect();
                !st.b_index.realizations(st.b, &image).is_empty()
            });
            if ok && assign(st, pos + 1, map, used) {
                return true;
            }
            map.remove(v);
            used.remove(w);
        }
        false
    }

    let st = State {
        b,
        order: a_vertices,
        a_colors,
        b_colors,
        b_vertices,
        a_tuples,
        b_index,
    };
    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    // per-dimension counts match and tuples inject, so a complete vertex
    // bijection realizing every tuple is an isomorphism
    assign(&st, 0, &mut map, &mut used)
}

/// Weisfeiler-Lehman style color refinement on the directed 1-skeleton,
/// seeded with the profile of simplex memberships per dimension.
fn refine_colors(space: &FiniteSimplicialSet) -> BTreeMap<GenId, u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};

    let vertices = space.vertex_ids();
    let mut membership: BTreeMap<&GenId, BTreeMap<(usize, usize), usize>> =
        vertices.iter().map(|v| (v, BTreeMap::new())).collect();
    for (g, d) in space.generators() {
        if d == 0 {
            continue;
        }
        for (pos, v) in space.vertices_of(g).expect("valid").iter().enumerate() {
            *membership.get_mut(v).expect("vertex").entry((d, pos)).or_default() += 1;
        }
    }
    let mut colors: BTreeMap<GenId, u64> = vertices
        .iter()
        .map(|v| {
            let mut h = DefaultHasher::new();
            membership[v].hash(&mut h);
            (v.clone(), h.finish())
        })
        .collect();
    let arcs = space.edge_arcs();
    for _ in 0..vertices.len().min(16) {
        let mut next: BTreeMap<GenId, u64> = BTreeMap::new();
        for v in &vertices {
            let mut neighborhood: Vec<(bool, u64)> = Vec::new();
            for (_, s, t) in &arcs {
                if s == v {
                    neighborhood.push((true, colors[t]));
                }
                if t == v {
                    neighborhood.push((false, colors[s]));
                }
            }
            neighborhood.sort_unstable();
            let mut h = DefaultHasher::new();
            colors[v].hash(&mut h);
            neighborhood.hash(&mut h);
            next.insert(v.clone(), h.finish());
        }
        let stable = {
            let mut old_classes: BTreeMap<u64, BTreeSet<&GenId>> = BTreeMap::new();
            let mut new_classes: BTreeMap<u64, BTreeSet<&GenId>> = BTreeMap::new();
            for v in &vertices {
                old_classes.entry(colors[v]).or_default().insert(v);
                new_classes.entry(next[v]).or_default().insert(v);
            }
            old_classes.len() == new_classes.len()
        };
        colors = next;
        if stable {
            break;
        }
    }
    colors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    #[test]
    fn validate_standard_fixtures() {
        assert!(delta(2).validate().is_ok());
        assert!(circle().validate().is_ok());
        assert!(boundary(3).validate().is_ok());
        assert!(horn(2, 1).unwrap().validate().is_ok());
    }

    #[test]
    fn validate_detects_miswired_faces() {
        // corrupt a valid 2-simplex by swapping two face entries
        let mut x = FiniteSimplicialSet::new();
        for v in ["p", "q", "r"] {
            x.add_vertex(v).unwrap();
        }
        let e = |s: &str, t: &str| {
            vec![
                DegenerateTerm::nondegenerate(GenId::from(t), 0),
                DegenerateTerm::nondegenerate(GenId::from(s), 0),
            ]
        };
        x.add_generator("pq", e("p", "q")).unwrap();
        x.add_generator("qr", e("q", "r")).unwrap();
        x.add_generator("pr", e("p", "r")).unwrap();
        x.add_generator(
            "t",
            vec![
                DegenerateTerm::nondegenerate(GenId::from("pq"), 1), // should be qr
                DegenerateTerm::nondegenerate(GenId::from("pr"), 1),
                DegenerateTerm::nondegenerate(GenId::from("qr"), 1), // should be pq
            ],
        )
        .unwrap();
        let report = x.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::IdentityFailure { gen, .. } if gen.as_str() == "t")));
    }

    #[test]
    fn apply_identity_and_faces() {
        let x = delta(2);
        let top = DegenerateTerm::nondegenerate(GenId::from("012"), 2);
        assert_eq!(x.apply(&top, &MonotoneMap::identity(2)).unwrap(), top);
        let d1 = x.apply(&top, &MonotoneMap::face(2, 1).unwrap()).unwrap();
        assert_eq!(d1, DegenerateTerm::nondegenerate(GenId::from("02"), 1));
    }

    #[test]
    fn apply_picks_circle_vertex() {
        let x = circle();
        let e = DegenerateTerm::nondegenerate(GenId::from("e"), 1);
        let pick1 = MonotoneMap::new(1, vec![1]).unwrap();
        let got = x.apply(&e, &pick1).unwrap();
        assert_eq!(got, DegenerateTerm::nondegenerate(GenId::from("v"), 0));
    }

    #[test]
    fn vertices_examples() {
        assert_eq!(
            delta(2).vertices_of(&GenId::from("012")).unwrap(),
            vec![GenId::from("0"), GenId::from("1"), GenId::from("2")]
        );
        assert_eq!(
            circle().vertices_of(&GenId::from("e")).unwrap(),
            vec![GenId::from("v"), GenId::from("v")]
        );
        assert_eq!(
            delta(1).vertices_of(&GenId::from("0")).unwrap(),
            vec![GenId::from("0")]
        );
    }

    #[test]
    fn property_b_and_c() {
        assert!(!circle().property_b());
        for n in 0..=3 {
            assert!(delta(n).property_b());
            assert!(delta(n).property_c().unwrap());
        }
        assert!(opposing_pair().property_b());
        assert!(!opposing_pair().property_c().unwrap());
        assert!(matches!(
            circle().property_c(),
            Err(PropertyCError::NotPropertyB)
        ));
    }

    #[test]
    fn property_b_matches_bruteforce_vertex_scan() {
        for x in [delta(2), circle(), opposing_pair(), three_cycle(), parallel_pair(2)] {
            let brute = x.generators().all(|(g, _)| {
                let vs = x.vertices_of(g).unwrap();
                let mut distinct = true;
                for i in 0..vs.len() {
                    for j in (i + 1)..vs.len() {
                        if vs[i] == vs[j] {
                            distinct = false;
                        }
                    }
                }
                distinct
            });
            assert_eq!(x.property_b(), brute);
        }
    }

    #[test]
    fn loops_detected() {
        assert!(delta(3).n_loops().is_empty());
        let loops = three_cycle().n_loops();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].len(), 3);
        let self_loops = circle().n_loops();
        assert_eq!(self_loops, vec![vec![GenId::from("e")]]);
    }

    #[test]
    fn scc_examples() {
        let p = three_cycle().scc_classes();
        assert_eq!(p.blocks().len(), 1);
        assert_eq!(p.blocks()[0].len(), 3);
        assert!(delta(2).scc_classes().is_discrete());
        let p = opposing_pair().scc_classes();
        assert_eq!(p.blocks().len(), 1);
    }

    #[test]
    fn quotient_collapsing_interval_boundary_gives_circle() {
        let x = delta(1);
        let all: BTreeSet<GenId> = x.vertex_ids().into_iter().collect();
        let p = VertexPartition::merging(&x, &all);
        let (q, map) = x.quotient_vertices(&p).unwrap();
        assert!(q.validate().is_ok());
        assert!(q.is_isomorphic_to(&circle()));
        assert_eq!(map.source(), &x);
    }

    #[test]
    fn quotient_by_discrete_partition_is_identity() {
        let x = delta(2);
        let (q, map) = x.quotient_vertices(&VertexPartition::discrete(&x)).unwrap();
        assert_eq!(q, x);
        assert!(map.is_identity_assignment());
    }

    #[test]
    fn quotient_three_cycle_fully() {
        let x = three_cycle();
        let all: BTreeSet<GenId> = x.vertex_ids().into_iter().collect();
        let (q, _) = x.quotient_vertices(&VertexPartition::merging(&x, &all)).unwrap();
        assert_eq!(q.vertex_ids().len(), 1);
        assert_eq!(q.generators_of_dim(1).count(), 3);
        for e in q.generators_of_dim(1) {
            let vs = q.vertices_of(e).unwrap();
            assert_eq!(vs[0], vs[1]);
        }
    }

    #[test]
    fn fundamental_category_shapes() {
        let c = delta(1).fundamental_category();
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.arrows.len(), 1);
        assert!(c.relations.is_empty());

        let c = delta(2).fundamental_category();
        assert_eq!((c.objects.len(), c.arrows.len(), c.relations.len()), (3, 3, 1));
        let r = &c.relations[0];
        assert_eq!(r.composite, PathEdge::Arrow(GenId::from("02")));
        assert_eq!(r.second, PathEdge::Arrow(GenId::from("12")));
        assert_eq!(r.first, PathEdge::Arrow(GenId::from("01")));

        let c = three_cycle().fundamental_category();
        assert_eq!((c.objects.len(), c.arrows.len(), c.relations.len()), (3, 3, 0));
    }

    #[test]
    fn disjoint_union_counts() {
        let u = FiniteSimplicialSet::disjoint_union(&[delta(1), circle()]);
        assert!(u.validate().is_ok());
        assert_eq!(u.vertex_ids().len(), 3);
        assert_eq!(u.generators_of_dim(1).count(), 2);
    }

    #[test]
    fn iso_distinguishes() {
        assert!(delta(1).is_isomorphic_to(&delta(1)));
        assert!(!delta(1).is_isomorphic_to(&delta(2)));
        assert!(!opposing_pair().is_isomorphic_to(&parallel_pair(1)));
        // same shape under renaming
        let mut y = FiniteSimplicialSet::new();
        y.add_vertex("a").unwrap();
        y.add_generator(
            "loop",
            vec![
                DegenerateTerm::nondegenerate(GenId::from("a"), 0),
                DegenerateTerm::nondegenerate(GenId::from("a"), 0),
            ],
        )
        .unwrap();
        assert!(y.is_isomorphic_to(&circle()));
    }
}
