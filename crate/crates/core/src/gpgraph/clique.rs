use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use super::{GpGraph, GraphError};
use crate::ffield::Elem;

/// Outcome of a maximality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Maximality {
    Maximal,
    /// The least vertex (canonical order) adjacent to the whole clique.
    Extendable {
        witness: Elem,
    },
}

impl Maximality {
    pub fn is_maximal(self) -> bool {
        matches!(self, Maximality::Maximal)
    }

    pub fn witness(self) -> Option<Elem> {
        match self {
            Maximality::Maximal => None,
            Maximality::Extendable { witness } => Some(witness),
        }
    }
}

/// A validated clique, vertices strictly increasing.
///
/// Equality, ordering and hashing look only at the vertex set; the cached
/// verdict is ignored. Serialises as the sorted list of vertex indices.
#[derive(Debug, Clone)]
pub struct Clique {
    vertices: Vec<Elem>,
    maximal: Option<Maximality>,
}

impl Clique {
    pub fn new(g: &GpGraph, mut vertices: Vec<Elem>) -> Result<Clique, GraphError> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(v) = vertices.iter().find(|v| v.index() >= g.order()) {
            return Err(GraphError::NoSuchVertex(v.index()));
        }
        if let Some((u, v)) = g.first_non_edge(&vertices) {
            return Err(GraphError::NotAClique(u, v));
        }
        Ok(Clique {
            vertices,
            maximal: None,
        })
    }

    /// For vertex lists already known to be sorted cliques.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<Elem>, maximal: Option<Maximality>) -> Clique {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Clique { vertices, maximal }
    }

    pub fn vertices(&self) -> &[Elem] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Elem> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Elem) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Cached verdict, if one has been computed.
    pub fn maximal(&self) -> Option<Maximality> {
        self.maximal
    }

    /// Computes (or returns the cached) maximality verdict.
    pub fn maximality(&mut self, g: &GpGraph) -> Maximality {
        *self.maximal.get_or_insert_with(|| is_maximal_clique(g, &self.vertices))
    }

    pub fn with_verdict(mut self, g: &GpGraph) -> Clique {
        self.maximality(g);
        self
    }
}

impl PartialEq for Clique {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Clique {}

impl Hash for Clique {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl PartialOrd for Clique {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clique {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl Serialize for Clique {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices.iter().map(|v| v.index()))
    }
}

/// Maximality of a vertex set assumed to be a clique.
///
/// Candidates are the neighbours of one clique vertex, so the scan costs
/// `O(degree · |C|)` adjacency tests.
pub fn is_maximal_clique(g: &GpGraph, clique: &[Elem]) -> Maximality {
    let Some(&anchor) = clique.first() else {
        return Maximality::Extendable { witness: Elem::ZERO };
    };
    let f = g.field();
    let witness = g
        .connection_set()
        .into_iter()
        .map(|s| f.add(anchor, s))
        .filter(|&v| clique[1..].iter().all(|&c| g.adjacent(v, c)))
        .min();
    match witness {
        None => Maximality::Maximal,
        Some(witness) => Maximality::Extendable { witness },
    }
}

/// Validating form of [`is_maximal_clique`].
pub fn check_maximal(g: &GpGraph, vertices: &[Elem]) -> Result<Maximality, GraphError> {
    if let Some((u, v)) = g.first_non_edge(vertices) {
        return Err(GraphError::NotAClique(u, v));
    }
    Ok(is_maximal_clique(g, vertices))
}
