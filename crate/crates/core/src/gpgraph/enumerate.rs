//! Maximal-clique enumeration: Bron–Kerbosch with Tomita pivoting over
//! bitsets indexed by a local vertex list.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use super::{Clique, GpGraph, GraphError, Maximality};
use crate::ffield::Elem;

/// Largest order enumerated at density above 1/4 without force.
const DENSE_ENUMERATION_MAX_ORDER: u32 = 2048;

#[derive(Debug, Clone, Default)]
pub struct EnumLimits {
    pub max_count: Option<usize>,
    pub min_size: usize,
    pub time_budget: Option<Duration>,
}

#[derive(Debug, Clone, Default)]
pub struct CliqueEnumeration {
    pub cliques: Vec<Clique>,
    pub truncated: bool,
}

impl CliqueEnumeration {
    pub fn sizes(&self) -> std::collections::BTreeSet<usize> {
        self.cliques.iter().map(Clique::len).collect()
    }
}

/// Whether full enumeration of `g` runs without a force flag.
pub fn full_enumeration_allowed(g: &GpGraph) -> bool {
    g.order() <= DENSE_ENUMERATION_MAX_ORDER || g.m() >= 4
}

/// Every maximal clique of `g`, in the order Bron–Kerbosch emits them.
pub fn enumerate_maximal_cliques(
    g: &GpGraph,
    limits: &EnumLimits,
    force: bool,
) -> Result<CliqueEnumeration, GraphError> {
    if !force && !full_enumeration_allowed(g) {
        return Err(GraphError::EnumerationRefused {
            order: g.order(),
            m: g.m(),
        });
    }
    let all: Vec<Elem> = g.vertices().collect();
    let (cliques, truncated) = maximal_cliques_within(g, &all, &[], limits);
    Ok(CliqueEnumeration {
        cliques: cliques
            .into_iter()
            .map(|c| Clique::from_sorted_unchecked(c, Some(Maximality::Maximal)))
            .collect(),
        truncated,
    })
}

/// Maximal cliques of `g` containing the edge `{0, 1}`.
///
/// Since `x ↦ (x − u)/(v − u)` is an automorphism carrying any edge `uv` to
/// `{0, 1}`, these represent every maximal clique up to automorphism, and in
/// particular realise the full size spectrum.
pub fn enumerate_rooted(g: &GpGraph, limits: &EnumLimits) -> CliqueEnumeration {
    let root = [Elem::ZERO, Elem::ONE];
    let common = g.common_neighbours(&root);
    let (cliques, truncated) = maximal_cliques_within(g, &common, &root, limits);
    CliqueEnumeration {
        cliques: cliques
            .into_iter()
            .map(|c| Clique::from_sorted_unchecked(c, Some(Maximality::Maximal)))
            .collect(),
        truncated,
    }
}

/// Maximal cliques of the subgraph induced on `within`, each joined with
/// `base` (which must be adjacent to all of `within`). Output cliques are
/// sorted; the flag reports truncation by `limits`.
pub fn maximal_cliques_within(
    g: &GpGraph,
    within: &[Elem],
    base: &[Elem],
    limits: &EnumLimits,
) -> (Vec<Vec<Elem>>, bool) {
    let mut out = Vec::new();
    let truncated = visit_maximal_cliques_within(g, within, base, limits, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    (out, truncated)
}

/// Streaming form of [`maximal_cliques_within`]. The visitor may stop early by
/// breaking, which does not count as truncation. Returns the truncation flag.
pub fn visit_maximal_cliques_within<F>(
    g: &GpGraph,
    within: &[Elem],
    base: &[Elem],
    limits: &EnumLimits,
    visit: F,
) -> bool
where
    F: FnMut(&[Elem]) -> ControlFlow<()>,
{
    let n = within.len();
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(n);
            for j in 0..n {
                if i != j && g.adjacent(within[i], within[j]) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let mut search = Search {
        within,
        base,
        adj,
        limits,
        visit,
        emitted: 0,
        steps: 0,
        start: Instant::now(),
        state: State::Running,
        scratch: Vec::new(),
    };
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    search.expand(&mut r, p, x);
    search.state == State::Truncated
}

#[derive(Debug, PartialEq, Eq)]
enum State {
    Running,
    Stopped,
    Truncated,
}

struct Search<'a, F> {
    within: &'a [Elem],
    base: &'a [Elem],
    adj: Vec<FixedBitSet>,
    limits: &'a EnumLimits,
    visit: F,
    emitted: usize,
    steps: u64,
    start: Instant,
    state: State,
    scratch: Vec<Elem>,
}

impl<F> Search<'_, F>
where
    F: FnMut(&[Elem]) -> ControlFlow<()>,
{
    fn expand(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet) {
        if self.state != State::Running {
            return;
        }
        self.steps += 1;
        if self.steps % 1024 == 0 {
            if let Some(budget) = self.limits.time_budget {
                if self.start.elapsed() > budget {
                    self.state = State::Truncated;
                    return;
                }
            }
        }
        if self.base.len() + r.len() + p.count_ones(..) < self.limits.min_size {
            return;
        }
        if p.is_clear() {
            if x.is_clear() {
                self.emit(r);
            }
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| p.intersection_count(&self.adj[u]))
            .expect("P is nonempty");
        let mut candidates = p.clone();
        candidates.difference_with(&self.adj[pivot]);
        for v in candidates.ones() {
            let mut np = p.clone();
            np.intersect_with(&self.adj[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.adj[v]);
            r.push(v);
            self.expand(r, np, nx);
            r.pop();
            if self.state != State::Running {
                return;
            }
            p.set(v, false);
            x.insert(v);
        }
    }

    fn emit(&mut self, r: &[usize]) {
        if self.base.len() + r.len() < self.limits.min_size {
            return;
        }
        if let Some(max) = self.limits.max_count {
            if self.emitted >= max {
                self.state = State::Truncated;
                return;
            }
        }
        self.scratch.clear();
        self.scratch.extend_from_slice(self.base);
        self.scratch.extend(r.iter().map(|&i| self.within[i]));
        self.scratch.sort_unstable();
        self.emitted += 1;
        if (self.visit)(&self.scratch).is_break() {
            self.state = State::Stopped;
        }
    }
}
