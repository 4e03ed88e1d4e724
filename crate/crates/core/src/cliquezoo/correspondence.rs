//! The Möbius involutions `φ(γ) = (γ+1)/(γ−1)` and `ψ(γ) = αφ(γ/α)`, and the
//! clique correspondences they induce.

use serde::Serialize;

use super::constructions::require_divides_half;
use super::{alpha_fq_one_construction, divides_half, fq_alpha_construction, CliqueZooError};
use crate::ffield::{Elem, Field};
use crate::gpgraph::GpGraph;
use crate::oval::Oval;

/// `(γ+1)/(γ−1)`, with `1 ↦ 1`.
pub fn phi(f: &Field, x: Elem) -> Elem {
    let one = f.one();
    if x == one {
        return one;
    }
    f.div(f.add(x, one), f.sub(x, one)).expect("x differs from 1")
}

/// `(αγ + d)/(γ − α)`, with `α ↦ α`.
pub fn psi(f: &Field, x: Elem) -> Elem {
    let alpha = f.alpha();
    if x == alpha {
        return alpha;
    }
    let num = f.add(f.mul(alpha, x), f.d());
    f.div(num, f.sub(x, alpha)).expect("x differs from α")
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub map: &'static str,
    /// The domain actually mapped, e.g. `{0} ∪ Q_0`.
    pub domain: &'static str,
    pub holds: bool,
    pub mapped: Vec<Elem>,
    pub target: Vec<Elem>,
    /// For `ψ`: whether the same equality holds when `Q_0` is used in place
    /// of `αQ_0`. Surfaced because the two readings disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal_q0_holds: Option<bool>,
}

fn image(set: &[Elem], map: impl Fn(Elem) -> Elem) -> Vec<Elem> {
    let mut out: Vec<Elem> = set.iter().map(|&x| map(x)).collect();
    out.sort_unstable();
    out
}

/// `φ({0} ∪ Q_0)` against the `(αF_q, 1)` clique. Needs `m | (q+1)/2`.
pub fn verify_phi_correspondence(g: &GpGraph) -> Result<CorrespondenceReport, CliqueZooError> {
    require_divides_half(g, "the phi correspondence")?;
    let f = g.field();
    let mut domain = Oval::new(g).part(0);
    domain.push(Elem::ZERO);
    let mapped = image(&domain, |x| phi(f, x));
    let target = alpha_fq_one_construction(g)?.clique.into_vertices();
    Ok(CorrespondenceReport {
        map: "phi",
        domain: "{0} ∪ Q_0",
        holds: mapped == target,
        mapped,
        target,
        literal_q0_holds: None,
    })
}

/// `ψ(αQ_0)` (with `0` adjoined when `m | (q+1)/2`) against the `(F_q, α)`
/// clique.
pub fn verify_psi_correspondence(g: &GpGraph) -> Result<CorrespondenceReport, CliqueZooError> {
    let f = g.field();
    let oval = Oval::new(g);
    let with_zero = divides_half(g);
    let mut domain = oval.alpha_part(g, 0);
    let mut literal = oval.part(0);
    if with_zero {
        domain.push(Elem::ZERO);
        literal.push(Elem::ZERO);
    }
    let mapped = image(&domain, |x| psi(f, x));
    let target = fq_alpha_construction(g)?.clique.into_vertices();
    let literal_q0_holds = image(&literal, |x| psi(f, x)) == target;
    Ok(CorrespondenceReport {
        map: "psi",
        domain: if with_zero { "{0} ∪ αQ_0" } else { "αQ_0" },
        holds: mapped == target,
        mapped,
        target,
        literal_q0_holds: Some(literal_q0_holds),
    })
}

/// `φ(γ) = (y/(x−1))α` for every `γ = x + yα ∈ Q \ {1}`.
pub fn phi_coordinate_identity(g: &GpGraph) -> bool {
    let f = g.field();
    let one = f.one();
    Oval::new(g).elements().iter().filter(|&&x| x != one).all(|&gamma| {
        let (x, y) = f.fq_coords(gamma);
        let expect = f.mul(f.div(y, f.sub(x, one)).expect("x ≠ 1 on Q \\ {1}"), f.alpha());
        phi(f, gamma) == expect
    })
}

/// `ψ(αγ) = yd/(x−1)` for every `γ = x + yα ∈ Q \ {1}`.
pub fn psi_coordinate_identity(g: &GpGraph) -> bool {
    let f = g.field();
    let one = f.one();
    Oval::new(g).elements().iter().filter(|&&x| x != one).all(|&gamma| {
        let (x, y) = f.fq_coords(gamma);
        let expect = f.div(f.mul(y, f.d()), f.sub(x, one)).expect("x ≠ 1 on Q \\ {1}");
        psi(f, f.mul(f.alpha(), gamma)) == expect
    })
}
