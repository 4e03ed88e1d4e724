//! Harnesses for the two maximality conjectures. A pass is evidence for one
//! instance, never a proof.

use serde::Serialize;

use super::{
    alpha_fq_one_construction, alpha_q0_construction, check_hypotheses, divides_half, fq_alpha_construction,
    q0_construction, CliqueZooError, ConstructionResult,
};
use crate::gpgraph::GpGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Conjecture {
    /// The `(F_q, α)` and `(αF_q, 1)` cliques are maximal.
    PencilCliques,
    /// The `Q_0` and `αQ_0` cliques are maximal.
    OvalCliques,
}

impl Conjecture {
    pub fn from_number(which: u8) -> Option<Conjecture> {
        match which {
            1 => Some(Conjecture::PencilCliques),
            2 => Some(Conjecture::OvalCliques),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Conjecture::PencilCliques => 1,
            Conjecture::OvalCliques => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub q: u32,
    pub m: u32,
    pub conjecture: u8,
    pub hypotheses_met: bool,
    pub constructions: Vec<ConstructionResult>,
    /// All constructions are maximal and of the predicted size.
    pub pass: bool,
}

impl ConjectureReport {
    /// The first non-maximal construction and its extending vertex.
    pub fn witness(&self) -> Option<(&ConstructionResult, crate::ffield::Elem)> {
        self.constructions
            .iter()
            .find_map(|c| c.maximality.witness().map(|w| (c, w)))
    }
}

/// Checks the conjecture on `g`, refusing when its hypotheses fail.
pub fn check_conjecture(g: &GpGraph, which: Conjecture) -> Result<ConjectureReport, CliqueZooError> {
    check_hypotheses(g)?;
    conjecture_evidence(g, which)
}

/// The same check with no hypothesis gate; `hypotheses_met` records whether
/// the conjecture actually claims anything about `g`.
pub fn conjecture_evidence(g: &GpGraph, which: Conjecture) -> Result<ConjectureReport, CliqueZooError> {
    let half = divides_half(g);
    let mut constructions = Vec::new();
    match which {
        Conjecture::PencilCliques => {
            constructions.push(fq_alpha_construction(g)?);
            if half {
                constructions.push(alpha_fq_one_construction(g)?);
            }
        }
        Conjecture::OvalCliques => {
            if half {
                constructions.push(q0_construction(g)?);
            }
            constructions.push(alpha_q0_construction(g)?);
        }
    }
    let pass = constructions.iter().all(|c| c.is_maximal() && c.size_matches());
    Ok(ConjectureReport {
        q: g.q(),
        m: g.m(),
        conjecture: which.number(),
        hypotheses_met: check_hypotheses(g).is_ok(),
        constructions,
        pass,
    })
}
