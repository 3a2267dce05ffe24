//! Dimension-stratified congruence closure over degenerate terms: a
//! union-find on generators plus a collapse table for generators forced
//! onto degenerate terms. Every identification enqueues its face
//! identifications, keeping the closure stable under all simplicial
//! operators. Shared by the colimit engine and the reflectors.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::delta::MonotoneMap;
use crate::sset::{DegenerateTerm, FiniteSimplicialSet, GenId, SsetError};

#[derive(Debug, Error)]
pub enum CongruenceError {
    #[error("congruence closure did not stabilize: {0}")]
    Unresolved(String),
    #[error(transparent)]
    Sset(#[from] SsetError),
}

/// Dimension-stratified congruence closure on a presentation.
pub(crate) struct Congruence<'a> {
    space: &'a FiniteSimplicialSet,
    parent: BTreeMap<GenId, GenId>,
    collapsed: BTreeMap<GenId, DegenerateTerm>,
    queue: VecDeque<(DegenerateTerm, DegenerateTerm)>,
}

impl<'a> Congruence<'a> {
    pub(crate) fn new(space: &'a FiniteSimplicialSet) -> Self {
        Congruence {
            space,
            parent: space.generators().map(|(g, _)| (g.clone(), g.clone())).collect(),
            collapsed: BTreeMap::new(),
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, g: &GenId) -> GenId {
        let p = self.parent[g].clone();
        if &p == g {
            return p;
        }
        let root = self.find(&p);
        self.parent.insert(g.clone(), root.clone());
        root
    }

    /// Current normal form of a term: canonical representative generator,
    /// with collapses expanded recursively.
    fn resolve(&mut self, term: &DegenerateTerm) -> DegenerateTerm {
        let mut cur = DegenerateTerm {
            surjection: term.surjection.clone(),
            generator: self.find(&term.generator),
        };
        while let Some(repl) = self.collapsed.get(&cur.generator).cloned() {
            cur = DegenerateTerm {
                surjection: repl.surjection.compose(&cur.surjection).expect("dims"),
                generator: self.find(&repl.generator),
            };
        }
        cur
    }

    pub(crate) fn relate(&mut self, a: DegenerateTerm, b: DegenerateTerm) {
        self.queue.push_back((a, b));
    }

    fn enqueue_face_pairs(&mut self, a: &DegenerateTerm, b: &DegenerateTerm) {
        let dim = a.dim();
        if dim == 0 {
            return;
        }
        for i in 0..=dim {
            let op = MonotoneMap::face(dim, i).expect("range");
            let fa = self.space.apply(a, &op).expect("valid presentation");
            let fb = self.space.apply(b, &op).expect("valid presentation");
            self.relate(fa, fb);
        }
    }

    pub(crate) fn close(&mut self) -> Result<(), CongruenceError> {
        let mut parked: Vec<(DegenerateTerm, DegenerateTerm)> = Vec::new();
        loop {
            let mut progressed = false;
            while let Some((a, b)) = self.queue.pop_front() {
                let ra = self.resolve(&a);
                let rb = self.resolve(&b);
                if ra == rb {
                    continue;
                }
                debug_assert_eq!(ra.dim(), rb.dim());
                match (ra.is_nondegenerate(), rb.is_nondegenerate()) {
                    (true, true) => {
                        // keep the smaller name as representative
                        let (keep, drop) = if ra.generator <= rb.generator {
                            (ra.generator.clone(), rb.generator.clone())
                        } else {
                            (rb.generator.clone(), ra.generator.clone())
                        };
                        self.parent.insert(drop.clone(), keep.clone());
                        progressed = true;
                        let ka = DegenerateTerm::nondegenerate(keep, ra.dim());
                        let kb = DegenerateTerm::nondegenerate(drop, ra.dim());
                        self.enqueue_face_pairs(&ka, &kb);
                    }
                    (true, false) => {
                        self.collapsed.insert(ra.generator.clone(), rb.clone());
                        progressed = true;
                        self.enqueue_face_pairs(&ra, &rb);
                    }
                    (false, true) => {
                        self.collapsed.insert(rb.generator.clone(), ra.clone());
                        progressed = true;
                        self.enqueue_face_pairs(&rb, &ra);
                    }
                    (false, false) => {
                        if ra.surjection == rb.surjection {
                            let da = DegenerateTerm::nondegenerate(
                                ra.generator.clone(),
                                self.space_dim(&ra.generator),
                            );
                            let db = DegenerateTerm::nondegenerate(
                                rb.generator.clone(),
                                self.space_dim(&rb.generator),
                            );
                            self.relate(da, db);
                        } else {
                            // differently degenerate: force the faces equal
                            // and revisit once something changed
                            self.enqueue_face_pairs(&ra, &rb);
                            parked.push((ra, rb));
                        }
                    }
                }
            }
            let mut still_parked = Vec::new();
            for (a, b) in parked.drain(..) {
                if self.resolve(&a) != self.resolve(&b) {
                    still_parked.push((a, b));
                }
            }
            parked = still_parked;
            if parked.is_empty() {
                return Ok(());
            }
            if !progressed {
                let (a, b) = &parked[0];
                return Err(CongruenceError::Unresolved(format!(
                    "cannot identify {a} with {b}"
                )));
            }
            for (a, b) in &parked {
                self.queue.push_back((a.clone(), b.clone()));
            }
        }
    }

    fn space_dim(&self, g: &GenId) -> usize {
        self.space.dim_of(g).expect("known")
    }

    /// Builds the quotient presentation and the projection assignments.
    pub(crate) fn quotient(
        mut self,
    ) -> Result<(FiniteSimplicialSet, BTreeMap<GenId, DegenerateTerm>), CongruenceError> {
        let gens: Vec<(GenId, usize)> = self
            .space
            .generators()
            .map(|(g, d)| (g.clone(), d))
            .collect();
        let mut projection = BTreeMap::new();
        let mut survivors: Vec<(usize, GenId)> = Vec::new();
        for (g, d) in &gens {
            let resolved = self.resolve(&DegenerateTerm::nondegenerate(g.clone(), *d));
            if resolved.is_nondegenerate() && &resolved.generator == g {
                survivors.push((*d, g.clone()));
            }
            projection.insert(g.clone(), resolved);
        }
        survivors.sort();
        let mut out = FiniteSimplicialSet::new();
        for (d, g) in &survivors {
            if *d == 0 {
                out.add_vertex(g.clone())?;
            } else {
                let faces = self
                    .space
                    .faces_of(g)
                    .expect("known")
                    .to_vec()
                    .iter()
                    .map(|t| self.resolve(t))
                    .collect();
                out.add_generator(g.clone(), faces)?;
            }
        }
        Ok((out, projection))
    }
}

