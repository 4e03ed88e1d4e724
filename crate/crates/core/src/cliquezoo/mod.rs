//! Explicit clique constructions in `GP(q², m)`, the two correspondences
//! between them, the `F_q`-neighbourhood `N(u)` and the stability results
//! built on it, conjecture harnesses, maximal-clique census and `K₄` counts.

mod census;
mod conjecture;
mod constructions;
mod correspondence;
mod counterexample;
mod neighbourhood;

use thiserror::Error;

use crate::arith;
use crate::ffield::{Elem, FieldError};
use crate::gpgraph::{GpGraph, GraphError};

pub use census::{
    census_allowed, k4_count, k4_formula, maximal_size_census, maximal_size_census_with_limits, stability_check,
    BoundCheck, Census, CensusMode, K4Mode, StabilityReport,
};
pub use conjecture::{check_conjecture, conjecture_evidence, Conjecture, ConjectureReport};
pub use constructions::{
    alpha_fq_one_construction, alpha_q0_construction, fq_alpha_construction, q0_construction, subfield_construction,
    ConstructionKind, ConstructionResult,
};
pub use correspondence::{
    phi, phi_coordinate_identity, psi, psi_coordinate_identity, verify_phi_correspondence, verify_psi_correspondence,
    CorrespondenceReport,
};
pub use counterexample::{counterexample_family, CounterexampleReport};
pub use neighbourhood::{
    check_nearly_maximal, classify_shared_neighbourhood, fq_neighbourhood, nearly_maximal_bound, neighbourhood_profile,
    NearlyMaximalReport, NeighbourhoodClass, NeighbourhoodProfile, SharedNeighbourhood,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueZooError {
    #[error("construction precondition fails: {0}")]
    PreconditionFailed(String),
    #[error("hypotheses fail: {0}")]
    HypothesisFailed(String),
    #[error("{0} lies in the subfield F_q")]
    VertexInSubfield(Elem),
    #[error("pair does not meet the hypotheses: {0}")]
    HypothesesNotMet(String),
    #[error("the K4 formula needs m = (q+1)/3 with q = 2 mod 3 (q = {q}, m = {m})")]
    FormulaInapplicable { q: u32, m: u32 },
    #[error("enumeration on GP({order}, {m}) refused without force")]
    EnumerationRefused { order: u32, m: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Whether `m | (q+1)/2`.
pub fn divides_half(g: &GpGraph) -> bool {
    ((g.q() + 1) / 2) % g.m() == 0
}

/// Hypotheses shared by the conjectures and the nearly-maximal theorem:
/// `2 ≤ m ≤ (q+1)/3` and `p ∤ m − 1`.
pub fn check_hypotheses(g: &GpGraph) -> Result<(), CliqueZooError> {
    let (q, m, p) = (g.q(), g.m(), g.field().p());
    if m < 2 {
        return Err(CliqueZooError::HypothesisFailed(format!("m = {m} is below 2")));
    }
    if 3 * m > q + 1 {
        return Err(CliqueZooError::HypothesisFailed(format!(
            "m = {m} exceeds (q+1)/3 for q = {q}"
        )));
    }
    if (m - 1) % p == 0 {
        return Err(CliqueZooError::HypothesisFailed(format!(
            "p = {p} divides m - 1 = {}",
            m - 1
        )));
    }
    Ok(())
}

/// The subgroup of `F_q*` of order `d` (which must divide `q − 1`), sorted.
pub fn fq_subgroup(g: &GpGraph, d: u32) -> Vec<Elem> {
    let f = g.field();
    let q = f.q() as u64;
    debug_assert_eq!((q - 1) % d as u64, 0);
    let step = (q + 1) * ((q - 1) / d as u64);
    let mut out: Vec<Elem> = (0..d as u64).map(|j| f.from_log(j * step)).collect();
    out.sort_unstable();
    out
}

/// Multiplicative order of a nonzero element of `F_q`.
pub fn fq_order(g: &GpGraph, t: Elem) -> u32 {
    let f = g.field();
    let k = t.log().expect("nonzero") as u64 / (f.q() as u64 + 1);
    let q1 = f.q() as u64 - 1;
    (q1 / arith::gcd(k, q1)) as u32
}
