//! Arithmetic of the simplex category: weakly increasing maps between
//! finite ordinals, their composition, the elementary faces and
//! degeneracies, and the epi-mono (Eilenberg-Zilber) factorization.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("dimension mismatch: expected codomain {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("values are not weakly increasing: {0:?}")]
    NotMonotone(Vec<usize>),
    #[error("value {value} exceeds codomain dimension {codomain}")]
    OutOfRange { value: usize, codomain: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("a monotone map needs a nonempty value list")]
    EmptyValues,
}

/// An order-preserving map `[m] -> [n]` between finite ordinals, stored as
/// the dense list of its `m + 1` values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    codomain_dim: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(codomain_dim: usize, values: Vec<usize>) -> Result<Self, DeltaError> {
        if values.is_empty() {
            return Err(DeltaError::EmptyValues);
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(DeltaError::NotMonotone(values.clone()));
            }
        }
        if let Some(&v) = values.iter().max() {
            if v > codomain_dim {
                return Err(DeltaError::OutOfRange {
                    value: v,
                    codomain: codomain_dim,
                });
            }
        }
        Ok(MonotoneMap {
            codomain_dim,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            codomain_dim: n,
            values: (0..=n).collect(),
        }
    }

    /// The injection `[n-1] -> [n]` omitting `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, DeltaError> {
        if n == 0 || i > n {
            return Err(DeltaError::IndexOutOfRange { index: i, dim: n });
        }
        let values = (0..=n).filter(|&v| v != i).collect();
        Ok(MonotoneMap {
            codomain_dim: n,
            values,
        })
    }

    /// The surjection `[n+1] -> [n]` repeating `i`.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, DeltaError> {
        if i > n {
            return Err(DeltaError::IndexOutOfRange { index: i, dim: n });
        }
        let mut values = Vec::with_capacity(n + 2);
        for v in 0..=n {
            values.push(v);
            if v == i {
                values.push(v);
            }
        }
        Ok(MonotoneMap {
            codomain_dim: n,
            values,
        })
    }

    pub fn domain_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ g`, evaluating `g` first.
    pub fn compose(&self, g: &MonotoneMap) -> Result<Self, DeltaError> {
        if g.codomain_dim != self.domain_dim() {
            return Err(DeltaError::DimensionMismatch {
                expected: self.domain_dim(),
                got: g.codomain_dim,
            });
        }
        let values = g.values.iter().map(|&i| self.values[i]).collect();
        Ok(MonotoneMap {
            codomain_dim: self.codomain_dim,
            values,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.codomain_dim == self.domain_dim() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut next = 0;
        for &v in &self.values {
            if v == next {
                next += 1;
            }
        }
        next == self.codomain_dim + 1
    }

    /// The unique factorization into a monotone surjection followed by a
    /// monotone injection; returns `(surjection, injection)`.
    pub fn ez_factorize(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let surj_values = self
            .values
            .iter()
            .map(|v| image.binary_search(v).expect("value in image"))
            .collect();
        let surjection = MonotoneMap {
            codomain_dim: image.len() - 1,
            values: surj_values,
        };
        let injection = MonotoneMap {
            codomain_dim: self.codomain_dim,
            values: image,
        };
        (surjection, injection)
    }

    /// For a surjection, the indices of its elementary degeneracy word in
    /// order of application (descending). The repeat positions of the value
    /// list are exactly the sigma indices of the canonical word.
    pub fn elementary_degeneracies(&self) -> Option<Vec<usize>> {
        if !self.is_surjective() {
            return None;
        }
        let mut word: Vec<usize> = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(i, _)| i)
            .collect();
        word.reverse();
        Some(word)
    }

    /// For an injection, the omitted codomain values in descending order.
    pub fn missing_values(&self) -> Option<Vec<usize>> {
        if !self.is_injective() {
            return None;
        }
        let mut missing: Vec<usize> = (0..=self.codomain_dim)
            .filter(|v| self.values.binary_search(v).is_err())
            .collect();
        missing.reverse();
        Some(missing)
    }
}

impl std::fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):[{}]->[{}]", self.domain_dim(), self.codomain_dim)
    }
}
