//! `N(u) = {x ∈ F_q : u − x is an m-th power}` for `u ∉ F_q`, the shape of
//! shared neighbourhoods, and the nearly-maximal clique bound.

use std::collections::HashSet;

use serde::Serialize;

use super::{check_hypotheses, fq_order, fq_subgroup, CliqueZooError};
use crate::arith::{divisors, gcd};
use crate::ffield::Elem;
use crate::gpgraph::{maximal_cliques_within, EnumLimits, GpGraph};

/// `N(u)` in vertex order. Meaningful for `u ∉ F_q`, where `|N(u)| = w − 1`.
pub fn fq_neighbourhood(g: &GpGraph, u: Elem) -> Vec<Elem> {
    let f = g.field();
    let mut out: Vec<Elem> = f.fq_elements().filter(|&x| g.adjacent(u, x)).collect();
    out.sort_unstable();
    out
}

fn require_outside_fq(g: &GpGraph, u: Elem) -> Result<(), CliqueZooError> {
    if g.field().is_in_fq(u) {
        Err(CliqueZooError::VertexInSubfield(u))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NeighbourhoodClass {
    Generic,
    /// `N(u) + a = N(u)`, so `N(u)` is a union of cosets of `aF_p`.
    FpCosetUnion {
        a: Elem,
    },
    /// `(N(u) − a) \ {0}` is closed under multiplication by `t`, which
    /// generates the subgroup of `F_q*` of order `d`.
    HCosetUnion {
        a: Elem,
        t: Elem,
        d: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighbourhoodProfile {
    pub u: Elem,
    pub n_of_u: Vec<Elem>,
    pub classification: NeighbourhoodClass,
    /// `|N(u)| = w − 1`.
    pub size_ok: bool,
}

/// Least `a ∈ F_q*` (up to `F_p*`-scaling) with `set + a = set`.
fn additive_period(g: &GpGraph, set: &[Elem]) -> Option<Elem> {
    let f = g.field();
    let members: HashSet<Elem> = set.iter().copied().collect();
    let mut seen_lines: HashSet<Elem> = HashSet::new();
    for a in f.fq_elements().filter(|a| !a.is_zero()) {
        // One representative per F_p-line: a and ka are interchangeable.
        if !seen_lines.insert(canonical_fp_multiple(g, a)) {
            continue;
        }
        if set.iter().all(|&x| members.contains(&f.add(x, a))) {
            return Some(a);
        }
    }
    None
}

fn canonical_fp_multiple(g: &GpGraph, a: Elem) -> Elem {
    let f = g.field();
    (1..f.p() as i64).map(|k| f.mul(f.from_int(k), a)).min().expect("p ≥ 3")
}

/// Largest proper nontrivial subgroup order `d` such that `(set − a) \ {0}`
/// is closed under its generator, for the least shift `a ∈ set` admitting one.
fn multiplicative_period(g: &GpGraph, set: &[Elem]) -> Option<(Elem, Elem, u32)> {
    let f = g.field();
    let q1 = f.q() as u64 - 1;
    let orders: Vec<u32> = divisors(q1)
        .into_iter()
        .filter(|&d| d > 1 && d < q1)
        .map(|d| d as u32)
        .rev()
        .collect();
    for &a in set {
        let shifted: Vec<Elem> = set.iter().map(|&x| f.sub(x, a)).filter(|x| !x.is_zero()).collect();
        let members: HashSet<Elem> = shifted.iter().copied().collect();
        for &d in &orders {
            if shifted.len() % d as usize != 0 {
                continue;
            }
            let t = f.from_log((f.q() as u64 + 1) * (q1 / d as u64));
            if shifted.iter().all(|&x| members.contains(&f.mul(x, t))) {
                return Some((a, t, d));
            }
        }
    }
    None
}

pub fn neighbourhood_profile(g: &GpGraph, u: Elem) -> Result<NeighbourhoodProfile, CliqueZooError> {
    require_outside_fq(g, u)?;
    let n_of_u = fq_neighbourhood(g, u);
    let classification = if let Some(a) = additive_period(g, &n_of_u) {
        NeighbourhoodClass::FpCosetUnion { a }
    } else if let Some((a, t, d)) = multiplicative_period(g, &n_of_u) {
        NeighbourhoodClass::HCosetUnion { a, t, d }
    } else {
        NeighbourhoodClass::Generic
    };
    Ok(NeighbourhoodProfile {
        u,
        size_ok: n_of_u.len() + 1 == g.w() as usize,
        n_of_u,
        classification,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SharedNeighbourhood {
    /// `u − v ∈ F_q`; `coset_union` records whether `N(u)` is a union of
    /// `(u − v)F_p`-cosets.
    Horizontal { step: Elem, coset_union: bool },
    /// The line through `u, v` meets `F_q` at `a`, `u − a = t(v − a)` with
    /// `t ∈ F_q*` of order `d`; `coset_union` records whether
    /// `(N(u) − a) \ {0}` is closed under multiplication by `t`.
    CollinearThroughFq {
        a: Elem,
        t: Elem,
        d: u32,
        coset_union: bool,
    },
}

impl SharedNeighbourhood {
    pub fn label(&self) -> &'static str {
        match self {
            SharedNeighbourhood::Horizontal { .. } => "HORIZONTAL",
            SharedNeighbourhood::CollinearThroughFq { .. } => "COLLINEAR_THROUGH_FQ",
        }
    }

    pub fn coset_union(&self) -> bool {
        match *self {
            SharedNeighbourhood::Horizontal { coset_union, .. } => coset_union,
            SharedNeighbourhood::CollinearThroughFq { coset_union, .. } => coset_union,
        }
    }
}

/// Splits an adjacent pair `u, v ∉ F_q` with `N(u) = N(v)` into the
/// horizontal and the collinear-through-`F_q` case.
pub fn classify_shared_neighbourhood(g: &GpGraph, u: Elem, v: Elem) -> Result<SharedNeighbourhood, CliqueZooError> {
    let f = g.field();
    let fail = |why: &str| Err(CliqueZooError::HypothesesNotMet(why.to_string()));
    if f.is_in_fq(u) || f.is_in_fq(v) {
        return fail("both vertices must lie outside F_q");
    }
    if u == v {
        return fail("vertices must be distinct");
    }
    if !g.adjacent(u, v) {
        return fail("u - v is not an m-th power");
    }
    let n_u = fq_neighbourhood(g, u);
    if n_u != fq_neighbourhood(g, v) {
        return fail("N(u) and N(v) differ");
    }
    let members: HashSet<Elem> = n_u.iter().copied().collect();
    let step = f.sub(u, v);
    if f.is_in_fq(step) {
        let coset_union = n_u.iter().all(|&x| members.contains(&f.add(x, step)));
        return Ok(SharedNeighbourhood::Horizontal { step, coset_union });
    }
    let (x1, y1) = f.fq_coords(u);
    let (x2, y2) = f.fq_coords(v);
    // u + c(v − u) has zero α-coordinate at c = −y1/(y2 − y1).
    let c = f.neg(f.div(y1, f.sub(y2, y1))?);
    let a = f.add(x1, f.mul(c, f.sub(x2, x1)));
    let t = f.div(f.sub(u, a), f.sub(v, a))?;
    let coset_union = n_u
        .iter()
        .map(|&x| f.sub(x, a))
        .filter(|x| !x.is_zero())
        .all(|x| members.contains(&f.add(f.mul(x, t), a)));
    Ok(SharedNeighbourhood::CollinearThroughFq {
        a,
        t,
        d: fq_order(g, t),
        coset_union,
    })
}

/// `w − 1 + gcd(q − 1, w − 2)`, `w = (q+1)/m`: no maximal clique containing
/// `N(u) ∪ {u}` is larger, under the usual hypotheses.
pub fn nearly_maximal_bound(q: u32, m: u32) -> u32 {
    let w = (q + 1) / m;
    w - 1 + gcd(q as u64 - 1, w as u64 - 2) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearlyMaximalReport {
    pub u: Elem,
    pub bound: u32,
    /// Sizes of all maximal cliques containing `N(u) ∪ {u}`, sorted.
    pub extension_sizes: Vec<usize>,
    /// Each such clique lies in `F_q ∪ (a + (u − a)H)` for some `a ∈ F_q`,
    /// `H` the subgroup of `F_q*` of order `gcd(q − 1, w − 2)`.
    pub contained: bool,
    /// First extension breaking the size bound or the containment.
    pub witness: Option<Vec<Elem>>,
    pub pass: bool,
}

/// Every maximal clique containing `N(u) ∪ {u}`, enumerated inside the
/// common neighbourhood, checked against the bound and the line structure.
pub fn check_nearly_maximal(g: &GpGraph, u: Elem) -> Result<NearlyMaximalReport, CliqueZooError> {
    check_hypotheses(g)?;
    require_outside_fq(g, u)?;
    let f = g.field();
    let (q, w) = (g.q(), g.w());
    let bound = nearly_maximal_bound(q, g.m());
    let h_order = gcd(q as u64 - 1, w as u64 - 2) as u32;
    let h: HashSet<Elem> = fq_subgroup(g, h_order).into_iter().collect();

    let mut base = fq_neighbourhood(g, u);
    base.push(u);
    base.sort_unstable();
    let within = g.common_neighbours(&base);
    let (extensions, truncated) = maximal_cliques_within(g, &within, &base, &EnumLimits::default());
    debug_assert!(!truncated);

    let fits = |clique: &[Elem]| -> bool {
        let off: Vec<Elem> = clique.iter().copied().filter(|&x| !f.is_in_fq(x)).collect();
        f.fq_elements().any(|a| {
            let anchor = f.sub(u, a);
            off.iter()
                .all(|&x| h.contains(&f.div(f.sub(x, a), anchor).expect("u ∉ F_q")))
        })
    };
    let mut extension_sizes = Vec::with_capacity(extensions.len());
    let mut witness = None;
    let mut contained = true;
    for clique in &extensions {
        extension_sizes.push(clique.len());
        let inside = fits(clique);
        contained &= inside;
        if witness.is_none() && (!inside || clique.len() > bound as usize) {
            witness = Some(clique.clone());
        }
    }
    extension_sizes.sort_unstable();
    Ok(NearlyMaximalReport {
        u,
        bound,
        extension_sizes,
        contained,
        pass: witness.is_none(),
        witness,
    })
}
