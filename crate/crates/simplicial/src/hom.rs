//! Enumeration of simplicial maps by backtracking over generator
//! assignments.
//!
//! Generators are assigned in an order where every face precedes its
//! cofaces, so each candidate can be rejected by face compatibility the
//! moment it is proposed. Candidate terms are produced from an index of the
//! target's vertex tuples rather than by scanning all terms.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId, SimplicialMap, TupleIndex};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Counts partial assignments explored by a search; exceeding the limit
/// aborts the enumeration.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn charge(&mut self) -> Result<(), HomError> {
        self.used += 1;
        if self.used > self.limit {
            Err(HomError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Error)]
pub enum HomError {
    #[error("enumeration budget of {limit} partial assignments exceeded")]
    BudgetExceeded { limit: u64 },
    #[error(transparent)]
    Sset(#[from] crate::sset::SsetError),
}

struct Search<'a> {
    source: &'a FiniteSimplicialSet,
    target: &'a FiniteSimplicialSet,
    order: Vec<GenId>,
    index: TupleIndex,
    source_vertex_tuples: BTreeMap<GenId, Vec<GenId>>,
}

impl<'a> Search<'a> {
    fn new(source: &'a FiniteSimplicialSet, target: &'a FiniteSimplicialSet) -> Self {
        Search {
            source,
            target,
            order: assignment_order(source),
            index: TupleIndex::build(target),
            source_vertex_tuples: source
                .generators()
                .map(|(g, _)| (g.clone(), source.vertices_of(g).expect("valid")))
                .collect(),
        }
    }

    fn candidates(
        &self,
        gen: &GenId,
        partial: &BTreeMap<GenId, DegenerateTerm>,
    ) -> Vec<DegenerateTerm> {
        let image_tuple: Vec<GenId> = self.source_vertex_tuples[gen]
            .iter()
            .map(|v| partial[v].generator.clone())
            .collect();
        let mut out = self.index.realizations(self.target, &image_tuple);
        out.retain(|t| self.faces_commute(gen, t, partial));
        out
    }

    fn faces_commute(
        &self,
        gen: &GenId,
        term: &DegenerateTerm,
        partial: &BTreeMap<GenId, DegenerateTerm>,
    ) -> bool {
        let d = term.dim();
        if d == 0 {
            return true;
        }
        for i in 0..=d {
            let op = crate::delta::MonotoneMap::face(d, i).expect("range");
            let lhs = self.target.apply(term, &op).expect("valid");
            let src_face = &self.source.faces_of(gen).expect("known")[i];
            let assigned = &partial[&src_face.generator];
            let rhs = DegenerateTerm {
                surjection: assigned
                    .surjection
                    .compose(&src_face.surjection)
                    .expect("dims"),
                generator: assigned.generator.clone(),
            };
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Order in which generators are assigned: always pick, among the
/// generators whose faces are all placed, one of maximal dimension. This
/// keeps higher cells adjacent to their boundaries in the search tree.
fn assignment_order(source: &FiniteSimplicialSet) -> Vec<GenId> {
    let mut placed: BTreeMap<GenId, bool> = source.generators().map(|(g, _)| (g.clone(), false)).collect();
    let mut order = Vec::with_capacity(placed.len());
    while order.len() < placed.len() {
        let mut best: Option<(usize, GenId)> = None;
        for (g, d) in source.generators() {
            if placed[g] {
                continue;
            }
            let ready = d == 0
                || source
                    .faces_of(g)
                    .expect("known")
                    .iter()
                    .all(|t| placed[&t.generator]);
            if !ready {
                continue;
            }
            match &best {
                Some((bd, bg)) if (*bd, bg) >= (d, g) => {}
                _ => best = Some((d, g.clone())),
            }
        }
        let (_, g) = best.expect("some generator is always ready");
        placed.insert(g.clone(), true);
        order.push(g);
    }
    order
}

fn search_all<F: FnMut(&mut Vec<DegenerateTerm>)>(
    s: &Search<'_>,
    pos: usize,
    partial: &mut BTreeMap<GenId, DegenerateTerm>,
    budget: &mut Budget,
    out: &mut Vec<BTreeMap<GenId, DegenerateTerm>>,
    stop_after_first: bool,
    shuffle: &mut F,
) -> Result<bool, HomError> {
    if pos == s.order.len() {
        out.push(partial.clone());
        return Ok(stop_after_first);
    }
    let gen = s.order[pos].clone();
    let mut candidates = if s.source.dim_of(&gen).expect("known") == 0 {
        s.target
            .vertex_ids()
            .into_iter()
            .map(|v| DegenerateTerm::nondegenerate(v, 0))
            .collect()
    } else {
        s.candidates(&gen, partial)
    };
    shuffle(&mut candidates);
    for cand in candidates {
        budget.charge()?;
        partial.insert(gen.clone(), cand);
        let done = search_all(s, pos + 1, partial, budget, out, stop_after_first, shuffle)?;
        partial.remove(&gen);
        if done {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All simplicial maps from `source` to `target`.
pub fn hom_enumerate(
    source: &FiniteSimplicialSet,
    target: &FiniteSimplicialSet,
    budget: &mut Budget,
) -> Result<Vec<SimplicialMap>, HomError> {
    let s = Search::new(source, target);
    let mut out = Vec::new();
    let mut partial = BTreeMap::new();
    search_all(&s, 0, &mut partial, budget, &mut out, false, &mut |_| {})?;
    Ok(out
        .into_iter()
        .map(|assignment| SimplicialMap::unchecked(source.clone(), target.clone(), assignment))
        .collect())
}

pub fn hom_count(
    source: &FiniteSimplicialSet,
    target: &FiniteSimplicialSet,
    budget: &mut Budget,
) -> Result<usize, HomError> {
    Ok(hom_enumerate(source, target, budget)?.len())
}

/// One simplicial map found with randomized candidate order, if any exists.
pub fn hom_sample<R: rand::Rng>(
    source: &FiniteSimplicialSet,
    target: &FiniteSimplicialSet,
    rng: &mut R,
    budget: &mut Budget,
) -> Result<Option<SimplicialMap>, HomError> {
    use rand::seq::SliceRandom;
    let s = Search::new(source, target);
    let mut out = Vec::new();
    let mut partial = BTreeMap::new();
    let mut shuffle = |c: &mut Vec<DegenerateTerm>| c.shuffle(rng);
    search_all(&s, 0, &mut partial, budget, &mut out, true, &mut shuffle)?;
    Ok(out
        .into_iter()
        .next()
        .map(|assignment| SimplicialMap::unchecked(source.clone(), target.clone(), assignment)))
}
