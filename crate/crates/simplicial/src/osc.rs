//! Ordered simplicial complexes and their adjunction with unique-simplex
//! simplicial sets.
//!
//! An ordered simplicial complex is a downward-closed family of finite
//! vertex sets together with a partial order that is total on every
//! simplex. `u_functor` realizes one as a simplicial set with a
//! nondegenerate simplex per set, vertices in order; `f_functor` goes the
//! other way by contracting directed loops of the 1-skeleton and reading
//! off the transitive order closure.
//!
//! Morphisms carry a simplex-preservation requirement on top of
//! order-preservation; without it `u_functor` would not act on maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::hom::{Budget, HomError};
use crate::sset::{
    DegenerateTerm, FiniteSimplicialSet, GenId, MapError, SimplicialMap, SsetError,
};

#[derive(Debug, Error)]
pub enum OscError {
    #[error("invalid ordered simplicial complex:\n{0}")]
    Invalid(OscReport),
    #[error("functor into complexes requires the distinct-vertex and unique-simplex properties")]
    NotUniqueSimplex,
    #[error("vertex `{0}` is not in the complex")]
    UnknownVertex(String),
    #[error("maps are not composable")]
    NotComposable,
    #[error("map is not order-preserving on ({0}, {1})")]
    NotOrderPreserving(String, String),
    #[error("image of simplex {0:?} is not a simplex")]
    NotSimplexPreserving(BTreeSet<String>),
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OscViolation {
    MissingSingleton(String),
    UnknownVertex { simplex: BTreeSet<String>, vertex: String },
    NotDownwardClosed { simplex: BTreeSet<String>, missing: BTreeSet<String> },
    OrderMentionsUnknown(String),
    NotTransitive(String, String, String),
    NotAntisymmetric(String, String),
    SimplexNotTotal { simplex: BTreeSet<String>, left: String, right: String },
}

impl fmt::Display for OscViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OscViolation::MissingSingleton(v) => write!(f, "singleton {{{v}}} is not a simplex"),
            OscViolation::UnknownVertex { simplex, vertex } => {
                write!(f, "simplex {simplex:?} mentions unknown vertex `{vertex}`")
            }
            OscViolation::NotDownwardClosed { simplex, missing } => {
                write!(f, "simplex {simplex:?} lacks face {missing:?}")
            }
            OscViolation::OrderMentionsUnknown(v) => {
                write!(f, "order mentions unknown vertex `{v}`")
            }
            OscViolation::NotTransitive(a, b, c) => {
                write!(f, "order is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
            }
            OscViolation::NotAntisymmetric(a, b) => {
                write!(f, "order is not antisymmetric on {a}, {b}")
            }
            OscViolation::SimplexNotTotal { simplex, left, right } => {
                write!(f, "simplex {simplex:?} has incomparable vertices {left}, {right}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OscReport {
    pub violations: Vec<OscViolation>,
}

impl OscReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for OscReport {
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

/// Vertices, a downward-closed simplex family, and a partial order total on
/// every simplex. The order is stored as its strict part, transitively
/// closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscComplex {
    vertices: BTreeSet<String>,
    simplices: BTreeSet<BTreeSet<String>>,
    strict: BTreeSet<(String, String)>,
}

impl OscComplex {
    /// Builds a complex from generating data: simplices are closed downward
    /// (singletons added for every vertex), the order closed transitively.
    /// The result is validated.
    pub fn assemble(
        vertices: impl IntoIterator<Item = String>,
        simplices: impl IntoIterator<Item = BTreeSet<String>>,
        order_pairs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, OscError> {
        let mut all_vertices: BTreeSet<String> = vertices.into_iter().collect();
        let listed: Vec<BTreeSet<String>> = simplices.into_iter().collect();
        for s in &listed {
            for v in s {
                all_vertices.insert(v.clone());
            }
        }
        let mut closed: BTreeSet<BTreeSet<String>> =
            all_vertices.iter().map(|v| BTreeSet::from([v.clone()])).collect();
        let mut stack: Vec<BTreeSet<String>> = listed;
        while let Some(s) = stack.pop() {
            if s.is_empty() || !closed.insert(s.clone()) {
                continue;
            }
            for v in &s {
                let mut face = s.clone();
                face.remove(v);
                if !face.is_empty() {
                    stack.push(face);
                }
            }
        }
        let mut strict: BTreeSet<(String, String)> = order_pairs
            .into_iter()
            .filter(|(a, b)| a != b)
            .collect();
        transitive_close(&mut strict);
        let complex = OscComplex {
            vertices: all_vertices,
            simplices: closed,
            strict,
        };
        let report = complex.validate();
        if report.is_ok() {
            Ok(complex)
        } else {
            Err(OscError::Invalid(report))
        }
    }

    /// Raw constructor performing no closure; pair with [`OscComplex::validate`].
    pub fn from_parts(
        vertices: BTreeSet<String>,
        simplices: BTreeSet<BTreeSet<String>>,
        strict: BTreeSet<(String, String)>,
    ) -> Self {
        OscComplex {
            vertices,
            simplices,
            strict,
        }
    }

    pub fn validate(&self) -> OscReport {
        let mut report = OscReport::default();
        for v in &self.vertices {
            if !self.simplices.contains(&BTreeSet::from([v.clone()])) {
                report.violations.push(OscViolation::MissingSingleton(v.clone()));
            }
        }
        for s in &self.simplices {
            for v in s {
                if !self.vertices.contains(v) {
                    report.violations.push(OscViolation::UnknownVertex {
                        simplex: s.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if s.len() > 1 {
                for v in s {
                    let mut face = s.clone();
                    face.remove(v);
                    if !self.simplices.contains(&face) {
                        report.violations.push(OscViolation::NotDownwardClosed {
                            simplex: s.clone(),
                            missing: face,
                        });
                    }
                }
            }
        }
        for (a, b) in &self.strict {
            if !self.vertices.contains(a) {
                report.violations.push(OscViolation::OrderMentionsUnknown(a.clone()));
            }
            if !self.vertices.contains(b) {
                report.violations.push(OscViolation::OrderMentionsUnknown(b.clone()));
            }
            if a == b || self.strict.contains(&(b.clone(), a.clone())) {
                report
                    .violations
                    .push(OscViolation::NotAntisymmetric(a.clone(), b.clone()));
            }
        }
        for (a, b) in &self.strict {
            for (b2, c) in &self.strict {
                if b == b2 && c != a && !self.strict.contains(&(a.clone(), c.clone())) {
                    report
                        .violations
                        .push(OscViolation::NotTransitive(a.clone(), b.clone(), c.clone()));
                }
            }
        }
        for s in &self.simplices {
            let sorted: Vec<&String> = s.iter().collect();
            for i in 0..sorted.len() {
                for j in (i + 1)..sorted.len() {
                    let (a, b) = (sorted[i], sorted[j]);
                    if !self.leq(a, b) && !self.leq(b, a) {
                        report.violations.push(OscViolation::SimplexNotTotal {
                            simplex: s.clone(),
                            left: a.clone(),
                            right: b.clone(),
                        });
                    }
                }
            }
        }
        report
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn simplices(&self) -> &BTreeSet<BTreeSet<String>> {
        &self.simplices
    }

    pub fn maximal_simplices(&self) -> Vec<&BTreeSet<String>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && s.is_subset(t))
            })
            .collect()
    }

    pub fn strict_pairs(&self) -> &BTreeSet<(String, String)> {
        &self.strict
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        a == b || self.strict.contains(&(a.to_owned(), b.to_owned()))
    }

    /// Vertices of a simplex listed in the order of the complex.
    pub fn sorted_simplex(&self, s: &BTreeSet<String>) -> Vec<String> {
        let mut out: Vec<String> = s.iter().cloned().collect();
        out.sort_by(|a, b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.leq(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        out
    }

    /// A single point.
    pub fn point(name: &str) -> Self {
        OscComplex::assemble([name.to_owned()], [], []).expect("valid")
    }
}

fn transitive_close(strict: &mut BTreeSet<(String, String)>) {
    loop {
        let mut fresh = Vec::new();
        for (a, b) in strict.iter() {
            for (b2, c) in strict.iter() {
                if b == b2 && a != c && !strict.contains(&(a.clone(), c.clone())) {
                    fresh.push((a.clone(), c.clone()));
                }
            }
        }
        if fresh.is_empty() {
            return;
        }
        strict.extend(fresh);
    }
}

/// An order- and simplex-preserving vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscMap {
    source: OscComplex,
    target: OscComplex,
    vertex_map: BTreeMap<String, String>,
}

impl OscMap {
    pub fn new(
        source: OscComplex,
        target: OscComplex,
        vertex_map: BTreeMap<String, String>,
    ) -> Result<Self, OscError> {
        for v in &source.vertices {
            let image = vertex_map
                .get(v)
                .ok_or_else(|| OscError::UnknownVertex(v.clone()))?;
            if !target.vertices.contains(image) {
                return Err(OscError::UnknownVertex(image.clone()));
            }
        }
        for (a, b) in &source.strict {
            if !target.leq(&vertex_map[a], &vertex_map[b]) {
                return Err(OscError::NotOrderPreserving(a.clone(), b.clone()));
            }
        }
        for s in &source.simplices {
            let image: BTreeSet<String> = s.iter().map(|v| vertex_map[v].clone()).collect();
            if !target.simplices.contains(&image) {
                return Err(OscError::NotSimplexPreserving(s.clone()));
            }
        }
        Ok(OscMap {
            source,
            target,
            vertex_map,
        })
    }

    pub fn identity(complex: &OscComplex) -> Self {
        let vertex_map = complex.vertices.iter().map(|v| (v.clone(), v.clone())).collect();
        OscMap {
            source: complex.clone(),
            target: complex.clone(),
            vertex_map,
        }
    }

    pub fn source(&self) -> &OscComplex {
        &self.source
    }

    pub fn target(&self) -> &OscComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<String, String> {
        &self.vertex_map
    }

    pub fn apply(&self, v: &str) -> &String {
        &self.vertex_map[v]
    }

    /// `self ∘ earlier`.
    pub fn compose(&self, earlier: &OscMap) -> Result<OscMap, OscError> {
        if earlier.target != self.source {
            return Err(OscError::NotComposable);
        }
        let vertex_map = earlier
            .vertex_map
            .iter()
            .map(|(v, w)| (v.clone(), self.vertex_map[w].clone()))
            .collect();
        OscMap::new(earlier.source.clone(), self.target.clone(), vertex_map)
    }

    pub fn is_identity_map(&self) -> bool {
        self.source == self.target && self.vertex_map.iter().all(|(a, b)| a == b)
    }
}

fn simplex_gen_name(complex: &OscComplex, s: &BTreeSet<String>) -> GenId {
    GenId::new(complex.sorted_simplex(s).join(","))
}

/// Realization as a simplicial set: one nondegenerate simplex per set, with
/// vertices in order and faces by vertex deletion. The output always has
/// the distinct-vertex and unique-simplex properties.
pub fn u_functor(complex: &OscComplex) -> FiniteSimplicialSet {
    let mut out = FiniteSimplicialSet::new();
    let mut by_size: Vec<&BTreeSet<String>> = complex.simplices.iter().collect();
    by_size.sort_by_key(|s| (s.len(), simplex_gen_name(complex, s)));
    for s in by_size {
        let name = simplex_gen_name(complex, s);
        if s.len() == 1 {
            out.add_vertex(name).expect("fresh");
            continue;
        }
        let ordered = complex.sorted_simplex(s);
        let faces = (0..ordered.len())
            .map(|i| {
                let mut face = ordered.clone();
                face.remove(i);
                DegenerateTerm::nondegenerate(GenId::new(face.join(",")), face.len() - 1)
            })
            .collect();
        out.add_generator(name, faces).expect("faces exist");
    }
    out
}

/// Action of [`u_functor`] on maps.
pub fn u_map(g: &OscMap) -> SimplicialMap {
    let src = u_functor(g.source());
    let dst = u_functor(g.target());
    let mut assignment = BTreeMap::new();
    for s in g.source().simplices.iter() {
        let name = simplex_gen_name(g.source(), s);
        let ordered = g.source().sorted_simplex(s);
        let image_tuple: Vec<String> = ordered.iter().map(|v| g.apply(v).clone()).collect();
        // collapse repeats into a degeneracy; order is preserved so any
        // repeats are adjacent
        let mut dedup: Vec<String> = Vec::new();
        let mut values = Vec::new();
        for v in &image_tuple {
            if dedup.last() != Some(v) {
                dedup.push(v.clone());
            }
            values.push(dedup.len() - 1);
        }
        let surjection = crate::delta::MonotoneMap::new(dedup.len() - 1, values).expect("monotone");
        let image_set: BTreeSet<String> = dedup.iter().cloned().collect();
        assignment.insert(
            name,
            DegenerateTerm {
                surjection,
                generator: simplex_gen_name(g.target(), &image_set),
            },
        );
    }
    SimplicialMap::unchecked(src, dst, assignment)
}

fn class_name(block: &BTreeSet<GenId>) -> String {
    if block.len() == 1 {
        block.iter().next().expect("nonempty").to_string()
    } else {
        let parts: Vec<String> = block.iter().map(|g| g.to_string()).collect();
        parts.join("+")
    }
}

fn class_map(space: &FiniteSimplicialSet) -> BTreeMap<GenId, String> {
    let partition = space.scc_classes();
    let mut out = BTreeMap::new();
    for block in partition.blocks() {
        let name = class_name(block);
        for v in block {
            out.insert(v.clone(), name.clone());
        }
    }
    out
}

/// Left adjoint to [`u_functor`]: vertices are the strongly connected
/// classes of the 1-skeleton, simplices the class images of generators with
/// pairwise-distinct classes, ordered by the transitive closure of the
/// per-simplex orders.
pub fn f_functor(space: &FiniteSimplicialSet) -> Result<OscComplex, OscError> {
    if !space.property_b() || !space.property_c().map_err(|_| OscError::NotUniqueSimplex)? {
        return Err(OscError::NotUniqueSimplex);
    }
    let classes = class_map(space);
    let mut simplices: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    let mut order_pairs: BTreeSet<(String, String)> = BTreeSet::new();
    for (g, _) in space.generators() {
        let tuple: Vec<String> = space
            .vertices_of(g)
            .expect("valid")
            .iter()
            .map(|v| classes[v].clone())
            .collect();
        let distinct: BTreeSet<String> = tuple.iter().cloned().collect();
        if distinct.len() != tuple.len() {
            continue;
        }
        for w in tuple.windows(2) {
            order_pairs.insert((w[0].clone(), w[1].clone()));
        }
        simplices.insert(distinct);
    }
    let vertices: BTreeSet<String> = classes.values().cloned().collect();
    let complex = OscComplex::assemble(vertices, simplices, order_pairs)?;
    Ok(complex)
}

/// Action of [`f_functor`] on maps.
pub fn f_map(f: &SimplicialMap) -> Result<OscMap, OscError> {
    let src = f_functor(f.source())?;
    let dst = f_functor(f.target())?;
    let src_classes = class_map(f.source());
    let dst_classes = class_map(f.target());
    let mut vertex_map = BTreeMap::new();
    for v in f.source().vertex_ids() {
        let image = f.image_of(&v)?.generator.clone();
        vertex_map.insert(src_classes[&v].clone(), dst_classes[&image].clone());
    }
    OscMap::new(src, dst, vertex_map)
}

/// The loop-contraction quotient, constructed directly: one vertex per
/// strongly connected class, one simplex per witnessed tuple of pairwise
/// distinct classes.
pub fn quotient_un(
    space: &FiniteSimplicialSet,
) -> Result<(FiniteSimplicialSet, SimplicialMap), OscError> {
    if !space.property_b() || !space.property_c().map_err(|_| OscError::NotUniqueSimplex)? {
        return Err(OscError::NotUniqueSimplex);
    }
    let classes = class_map(space);
    // witnessed tuples of distinct classes, by dimension
    let mut witnessed: BTreeMap<usize, BTreeSet<Vec<String>>> = BTreeMap::new();
    let mut assignment: BTreeMap<GenId, DegenerateTerm> = BTreeMap::new();
    for (g, d) in space.generators() {
        let tuple: Vec<String> = space
            .vertices_of(g)
            .expect("valid")
            .iter()
            .map(|v| classes[v].clone())
            .collect();
        let mut dedup: Vec<String> = Vec::new();
        let mut values = Vec::new();
        for v in &tuple {
            if dedup.last() != Some(v) {
                dedup.push(v.clone());
            }
            values.push(dedup.len() - 1);
        }
        let distinct: BTreeSet<String> = dedup.iter().cloned().collect();
        assert_eq!(
            distinct.len(),
            dedup.len(),
            "non-adjacent repeated classes would contradict mutual reachability"
        );
        let surjection = crate::delta::MonotoneMap::new(dedup.len() - 1, values).expect("monotone");
        let target_name = GenId::new(dedup.join(","));
        witnessed.entry(dedup.len() - 1).or_default().insert(dedup);
        assignment.insert(
            g.clone(),
            DegenerateTerm {
                surjection,
                generator: target_name,
            },
        );
        let _ = d;
    }
    let mut out = FiniteSimplicialSet::new();
    for (dim, tuples) in &witnessed {
        for tuple in tuples {
            let name = GenId::new(tuple.join(","));
            if *dim == 0 {
                out.add_vertex(name)?;
            } else {
                let faces = (0..tuple.len())
                    .map(|i| {
                        let mut face = tuple.clone();
                        face.remove(i);
                        DegenerateTerm::nondegenerate(GenId::new(face.join(",")), face.len() - 1)
                    })
                    .collect();
                out.add_generator(name, faces)?;
            }
        }
    }
    debug_assert!(out.validate().is_ok());
    let map = SimplicialMap::unchecked(space.clone(), out.clone(), assignment);
    Ok((out, map))
}

/// Unit of the adjunction: the projection onto the realization of the
/// associated complex.
pub fn unit(space: &FiniteSimplicialSet) -> Result<SimplicialMap, OscError> {
    let complex = f_functor(space)?;
    let ufx = u_functor(&complex);
    let classes = class_map(space);
    let mut assignment = BTreeMap::new();
    for (g, _) in space.generators() {
        let tuple: Vec<String> = space
            .vertices_of(g)
            .expect("valid")
            .iter()
            .map(|v| classes[v].clone())
            .collect();
        let mut dedup: Vec<String> = Vec::new();
        let mut values = Vec::new();
        for v in &tuple {
            if dedup.last() != Some(v) {
                dedup.push(v.clone());
            }
            values.push(dedup.len() - 1);
        }
        let surjection = crate::delta::MonotoneMap::new(dedup.len() - 1, values).expect("monotone");
        assignment.insert(
            g.clone(),
            DegenerateTerm {
                surjection,
                generator: GenId::new(dedup.join(",")),
            },
        );
    }
    Ok(SimplicialMap::new(space.clone(), ufx, assignment)?)
}

/// Counit of the adjunction: the identity-on-vertices inclusion, which only
/// forgets order relations not witnessed by any simplex.
pub fn counit(complex: &OscComplex) -> Result<OscMap, OscError> {
    let fuy = f_functor(&u_functor(complex))?;
    let vertex_map = complex.vertices.iter().map(|v| (v.clone(), v.clone())).collect();
    OscMap::new(fuy, complex.clone(), vertex_map)
}

/// Product: componentwise-comparable pairs, simplices the componentwise
/// chains whose projections are simplices. Returns the two projections with
/// the object.
pub fn product_osc(a: &OscComplex, b: &OscComplex) -> Result<(OscComplex, OscMap, OscMap), OscError> {
    let pair_name = |x: &str, y: &str| format!("{x}\u{d7}{y}");
    let mut vertices = BTreeSet::new();
    for x in &a.vertices {
        for y in &b.vertices {
            vertices.insert(pair_name(x, y));
        }
    }
    assert_eq!(vertices.len(), a.vertices.len() * b.vertices.len());
    let pairs: Vec<(String, String)> = a
        .vertices
        .iter()
        .flat_map(|x| b.vertices.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let leq_pair = |p: &(String, String), q: &(String, String)| {
        a.leq(&p.0, &q.0) && b.leq(&p.1, &q.1)
    };
    let mut order = BTreeSet::new();
    for p in &pairs {
        for q in &pairs {
            if p != q && leq_pair(p, q) {
                order.insert((pair_name(&p.0, &p.1), pair_name(&q.0, &q.1)));
            }
        }
    }
    // chains in the product order whose projections are simplices
    let mut simplices: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    let mut stack: Vec<Vec<(String, String)>> = pairs.iter().map(|p| vec![p.clone()]).collect();
    while let Some(chain) = stack.pop() {
        let proj_a: BTreeSet<String> = chain.iter().map(|p| p.0.clone()).collect();
        let proj_b: BTreeSet<String> = chain.iter().map(|p| p.1.clone()).collect();
        if !a.simplices.contains(&proj_a) || !b.simplices.contains(&proj_b) {
            continue;
        }
        simplices.insert(chain.iter().map(|p| pair_name(&p.0, &p.1)).collect());
        let last = chain.last().expect("nonempty");
        for p in &pairs {
            if p != last && leq_pair(last, p) {
                let mut next = chain.clone();
                next.push(p.clone());
                stack.push(next);
            }
        }
    }
    let object = OscComplex::assemble(vertices, simplices, order)?;
    let to_left = OscMap::new(
        object.clone(),
        a.clone(),
        pairs
            .iter()
            .map(|(x, y)| (pair_name(x, y), x.clone()))
            .collect(),
    )?;
    let to_right = OscMap::new(
        object.clone(),
        b.clone(),
        pairs
            .iter()
            .map(|(x, y)| (pair_name(x, y), y.clone()))
            .collect(),
    )?;
    Ok((object, to_left, to_right))
}

/// Equalizer: the subcomplex where the two maps agree, inheriting the
/// source order.
pub fn equalizer_osc(f: &OscMap, g: &OscMap) -> Result<(OscComplex, OscMap), OscError> {
    if f.source != g.source || f.target != g.target {
        return Err(OscError::NotComposable);
    }
    let agree: BTreeSet<String> = f
        .source
        .vertices
        .iter()
        .filter(|v| f.apply(v) == g.apply(v))
        .cloned()
        .collect();
    let simplices: BTreeSet<BTreeSet<String>> = f
        .source
        .simplices
        .iter()
        .filter(|s| s.iter().all(|v| agree.contains(v)))
        .cloned()
        .collect();
    let strict: BTreeSet<(String, String)> = f
        .source
        .strict
        .iter()
        .filter(|(x, y)| agree.contains(x) && agree.contains(y))
        .cloned()
        .collect();
    let complex = OscComplex {
        vertices: agree,
        simplices,
        strict,
    };
    debug_assert!(complex.validate().is_ok());
    let inclusion = OscMap::new(
        complex.clone(),
        f.source.clone(),
        complex.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
    )?;
    Ok((complex, inclusion))
}

/// Coproduct: disjoint union, names prefixed by summand index.
pub fn coproduct_osc(parts: &[OscComplex]) -> (OscComplex, Vec<OscMap>) {
    let rename = |k: usize, v: &str| format!("{k}:{v}");
    let mut vertices = BTreeSet::new();
    let mut simplices = BTreeSet::new();
    let mut strict = BTreeSet::new();
    for (k, part) in parts.iter().enumerate() {
        for v in &part.vertices {
            vertices.insert(rename(k, v));
        }
        for s in &part.simplices {
            simplices.insert(s.iter().map(|v| rename(k, v)).collect());
        }
        for (a, b) in &part.strict {
            strict.insert((rename(k, a), rename(k, b)));
        }
    }
    let union = OscComplex {
        vertices,
        simplices,
        strict,
    };
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, part)| {
            OscMap::new(
                part.clone(),
                union.clone(),
                part.vertices.iter().map(|v| (v.clone(), rename(k, v))).collect(),
            )
            .expect("injection is a map")
        })
        .collect();
    (union, injections)
}

/// Coequalizer: the realization coequalizer provides vertices and
/// simplices; the order is the least one making the projection a map,
/// saturated by merging any classes a pushed-forward cycle would identify.
pub fn coequalizer_osc(f: &OscMap, g: &OscMap) -> Result<(OscComplex, OscMap), OscError> {
    if f.source != g.source || f.target != g.target {
        return Err(OscError::NotComposable);
    }
    let uf = u_map(f);
    let ug = u_map(g);
    let (colim, h) =
        crate::colimit::coequalizer_un(&uf, &ug).map_err(|e| OscError::Sset(SsetError::InvalidIndex(e.to_string())))?;
    let fcolim = f_functor(&colim)?;
    let colim_classes = class_map(&colim);
    // vertex projection: target vertex -> its class in the colimit
    let mut projection: BTreeMap<String, String> = BTreeMap::new();
    for v in &f.target.vertices {
        let gen = GenId::new(v.clone());
        let image = h.image_of(&gen).map_err(OscError::Map)?;
        projection.insert(v.clone(), colim_classes[&image.generator].clone());
    }
    // least order making the projection order-preserving, saturated until
    // antisymmetric
    let mut complex = fcolim;
    loop {
        let mut strict: BTreeSet<(String, String)> = BTreeSet::new();
        for (a, b) in &f.target.strict {
            let (pa, pb) = (projection[a].clone(), projection[b].clone());
            if pa != pb {
                strict.insert((pa, pb));
            }
        }
        transitive_close(&mut strict);
        let cycle: Option<(String, String)> = strict
            .iter()
            .find(|(a, b)| strict.contains(&(b.clone(), a.clone())))
            .cloned();
        match cycle {
            None => {
                let merged = OscComplex::assemble(
                    complex.vertices.iter().cloned(),
                    complex.simplices.iter().cloned(),
                    strict,
                )?;
                let map = OscMap::new(f.target.clone(), merged.clone(), projection)?;
                return Ok((merged, map));
            }
            Some((a, b)) => {
                // the universal property forces these classes together
                let merged_name = if a < b { a.clone() } else { b.clone() };
                let rename = |v: &String| {
                    if v == &a || v == &b {
                        merged_name.clone()
                    } else {
                        v.clone()
                    }
                };
                let vertices: BTreeSet<String> = complex.vertices.iter().map(rename).collect();
                let simplices: BTreeSet<BTreeSet<String>> = complex
                    .simplices
                    .iter()
                    .map(|s| s.iter().map(rename).collect())
                    .collect();
                let order: BTreeSet<(String, String)> = complex
                    .strict
                    .iter()
                    .map(|(x, y)| (rename(x), rename(y)))
                    .filter(|(x, y)| x != y)
                    .collect();
                for v in projection.values_mut() {
                    *v = rename(v);
                }
                complex = OscComplex::assemble(vertices, simplices, order)?;
            }
        }
    }
}

/// Pushout as the coequalizer of the two legs into the coproduct.
pub fn pushout_osc(
    left: &OscMap,
    right: &OscMap,
) -> Result<(OscComplex, OscMap, OscMap), OscError> {
    if left.source != right.source {
        return Err(OscError::NotComposable);
    }
    let (_union, injections) = coproduct_osc(&[left.target.clone(), right.target.clone()]);
    let into_left = injections[0].compose(left)?;
    let into_right = injections[1].compose(right)?;
    let (object, project) = coequalizer_osc(&into_left, &into_right)?;
    let from_left = project.compose(&injections[0])?;
    let from_right = project.compose(&injections[1])?;
    Ok((object, from_left, from_right))
}

/// All order- and simplex-preserving vertex maps.
pub fn hom_enumerate_osc(
    a: &OscComplex,
    b: &OscComplex,
    budget: &mut Budget,
) -> Result<Vec<OscMap>, OscError> {
    let source_vertices: Vec<String> = a.vertices.iter().cloned().collect();
    let target_vertices: Vec<String> = b.vertices.iter().cloned().collect();
    let mut out = Vec::new();
    let mut partial: BTreeMap<String, String> = BTreeMap::new();
    search_osc(
        a,
        b,
        &source_vertices,
        &target_vertices,
        0,
        &mut partial,
        budget,
        &mut out,
    )?;
    Ok(out
        .into_iter()
        .map(|vm| OscMap::new(a.clone(), b.clone(), vm).expect("search checks constraints"))
        .collect())
}

/// One order- and simplex-preserving map found with randomized candidate
/// order, if any exists.
pub fn hom_sample_osc<R: rand::Rng>(
    a: &OscComplex,
    b: &OscComplex,
    rng: &mut R,
    budget: &mut Budget,
) -> Result<Option<OscMap>, OscError> {
    use rand::seq::SliceRandom;
    let source_vertices: Vec<String> = a.vertices.iter().cloned().collect();
    let mut targets: Vec<String> = b.vertices.iter().cloned().collect();
    targets.shuffle(rng);
    fn first_found(
        a: &OscComplex,
        b: &OscComplex,
        order: &[String],
        targets: &[String],
        pos: usize,
        partial: &mut BTreeMap<String, String>,
        budget: &mut Budget,
    ) -> Result<bool, OscError> {
        if pos == order.len() {
            return Ok(true);
        }
        let v = &order[pos];
        'candidates: for w in targets {
            budget.charge()?;
            for (u, fu) in partial.iter() {
                if a.leq(u, v) && !b.leq(fu, w) {
                    continue 'candidates;
                }
                if a.leq(v, u) && !b.leq(w, fu) {
                    continue 'candidates;
                }
            }
            partial.insert(v.clone(), w.clone());
            let ok = a
                .simplices
                .iter()
                .filter(|s| s.contains(v) && s.iter().all(|x| partial.contains_key(x)))
                .all(|s| {
                    let image: BTreeSet<String> = s.iter().map(|x| partial[x].clone()).collect();
                    b.simplices.contains(&image)
                });
            if ok && first_found(a, b, order, targets, pos + 1, partial, budget)? {
                return Ok(true);
            }
            partial.remove(v);
        }
        Ok(false)
    }
    let mut partial = BTreeMap::new();
    if first_found(a, b, &source_vertices, &targets, 0, &mut partial, budget)? {
        Ok(Some(OscMap::new(a.clone(), b.clone(), partial)?))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn search_osc(
    a: &OscComplex,
    b: &OscComplex,
    order: &[String],
    targets: &[String],
    pos: usize,
    partial: &mut BTreeMap<String, String>,
    budget: &mut Budget,
    out: &mut Vec<BTreeMap<String, String>>,
) -> Result<(), OscError> {
    if pos == order.len() {
        out.push(partial.clone());
        return Ok(());
    }
    let v = &order[pos];
    'candidates: for w in targets {
        budget.charge()?;
        for (u, fu) in partial.iter() {
            if a.leq(u, v) && !b.leq(fu, w) {
                continue 'candidates;
            }
            if a.leq(v, u) && !b.leq(w, fu) {
                continue 'candidates;
            }
        }
        partial.insert(v.clone(), w.clone());
        // check simplices that just became fully assigned
        let ok = a
            .simplices
            .iter()
            .filter(|s| s.contains(v) && s.iter().all(|x| partial.contains_key(x)))
            .all(|s| {
                let image: BTreeSet<String> = s.iter().map(|x| partial[x].clone()).collect();
                b.simplices.contains(&image)
            });
        if ok {
            search_osc(a, b, order, targets, pos + 1, partial, budget, out)?;
        }
        partial.remove(v);
    }
    Ok(())
}
