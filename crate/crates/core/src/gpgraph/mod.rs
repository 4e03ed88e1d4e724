//! The Cayley graph `GP(q², m)` on the additive group of `F_{q²}` with
//! connection set the nonzero `m`-th powers, for `m | q + 1`.
//!
//! Vertices are field elements in their canonical encoding, so vertex `0` is
//! the zero element and vertex `k + 1` is `β^k`. Adjacency is a single
//! subtraction plus a divisibility test on the discrete log.

mod automorphism;
mod clique;
mod enumerate;
mod srg;

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::ffield::{Elem, Field, FieldError};

pub use automorphism::{verify_automorphism, Automorphism};
pub use clique::{check_maximal, is_maximal_clique, Clique, Maximality};
pub use enumerate::{
    enumerate_maximal_cliques, enumerate_rooted, full_enumeration_allowed, maximal_cliques_within,
    visit_maximal_cliques_within, CliqueEnumeration, EnumLimits,
};
pub use srg::{verify_srg, SrgDiscrepancy, SrgParams, SrgReport, EXHAUSTIVE_SRG_MAX_Q, SRG_SAMPLE_PAIRS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("m = {m} must satisfy m > 1 and m | q + 1 = {}", q + 1)]
    BadM { q: u32, m: u32 },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAClique(Elem, Elem),
    #[error("vertex index {0} is outside the graph")]
    NoSuchVertex(u32),
    #[error("{0} is not a nonzero m-th power")]
    NotConnectionScalar(Elem),
    #[error("Frobenius exponent {e} must be below the extension degree {degree}")]
    BadFrobeniusExponent { e: u32, degree: u32 },
    #[error("full enumeration of GP({order}, {m}) refused without force")]
    EnumerationRefused { order: u32, m: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub struct GpGraph {
    field: Arc<Field>,
    m: u32,
    neighbourhoods: OnceLock<Vec<FixedBitSet>>,
}

impl std::fmt::Debug for GpGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GP({}, {})", self.order(), self.m)
    }
}

impl GpGraph {
    pub fn new(field: Arc<Field>, m: u32) -> Result<GpGraph, GraphError> {
        let q = field.q();
        if m <= 1 || (q + 1) % m != 0 {
            return Err(GraphError::BadM { q, m });
        }
        Ok(GpGraph {
            field,
            m,
            neighbourhoods: OnceLock::new(),
        })
    }

    /// Builds the field for `q` and the graph on top of it.
    pub fn for_q(q: u64, m: u32) -> Result<GpGraph, GraphError> {
        let field = Field::for_q(q)?;
        GpGraph::new(Arc::new(field), m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `w = (q + 1) / m`, the number of `m`-ary lines through each point.
    pub fn w(&self) -> u32 {
        (self.q() + 1) / self.m
    }

    /// Number of vertices, `q²`.
    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn degree(&self) -> u32 {
        self.field.group_order() / self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = Elem> {
        self.field.elements()
    }

    pub fn vertex(&self, index: u32) -> Result<Elem, GraphError> {
        if index < self.order() {
            Ok(Elem::from_index(index))
        } else {
            Err(GraphError::NoSuchVertex(index))
        }
    }

    /// Whether `x` is a nonzero `m`-th power.
    #[inline]
    pub fn is_connection(&self, x: Elem) -> bool {
        x.log().is_some_and(|k| k % self.m == 0)
    }

    #[inline]
    pub fn adjacent(&self, u: Elem, v: Elem) -> bool {
        u != v && self.is_connection(self.field.sub(u, v))
    }

    /// The connection set `{β^{mk}}` in increasing log order.
    pub fn connection_set(&self) -> Vec<Elem> {
        (0..self.degree())
            .map(|k| self.field.from_log(k as u64 * self.m as u64))
            .collect()
    }

    /// Neighbours of `u`, sorted.
    pub fn neighbours(&self, u: Elem) -> Vec<Elem> {
        let mut out: Vec<Elem> = self
            .connection_set()
            .into_iter()
            .map(|s| self.field.add(u, s))
            .collect();
        out.sort_unstable();
        out
    }

    /// Neighbourhood bitset of `u`; all rows are built on first use.
    pub fn neighbourhood(&self, u: Elem) -> &FixedBitSet {
        &self.neighbourhood_rows()[u.index() as usize]
    }

    fn neighbourhood_rows(&self) -> &[FixedBitSet] {
        self.neighbourhoods.get_or_init(|| {
            let n = self.order() as usize;
            let s = self.connection_set();
            self.vertices()
                .map(|u| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for &c in &s {
                        row.insert(self.field.add(u, c).index() as usize);
                    }
                    row
                })
                .collect()
        })
    }

    /// Whether every pair in `vertices` is adjacent; returns the first bad pair otherwise.
    pub fn first_non_edge(&self, vertices: &[Elem]) -> Option<(Elem, Elem)> {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if !self.adjacent(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_clique(&self, vertices: &[Elem]) -> bool {
        self.first_non_edge(vertices).is_none()
    }

    pub fn is_independent(&self, vertices: &[Elem]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }

    /// Vertices adjacent to every element of `set` (and not in it), sorted.
    pub fn common_neighbours(&self, set: &[Elem]) -> Vec<Elem> {
        let Some(&first) = set.first() else {
            return self.vertices().collect();
        };
        let mut out: Vec<Elem> = self
            .connection_set()
            .into_iter()
            .map(|s| self.field.add(first, s))
            .filter(|&v| set[1..].iter().all(|&c| self.adjacent(v, c)))
            .collect();
        out.sort_unstable();
        out
    }
}
