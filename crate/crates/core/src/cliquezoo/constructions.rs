//! The four explicit clique families, plus subfield cliques.

use serde::Serialize;

use super::{divides_half, CliqueZooError};
use crate::ffield::Elem;
use crate::gpgraph::{Clique, GpGraph, Maximality};
use crate::oval::Oval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    /// `α` with the `m`-ary pencil through `α` cut by `F_q`.
    FqAlpha,
    /// `±1` with the `m`-ary pencil through `1` cut by `αF_q`.
    AlphaFqOne,
    /// `{0} ∪ Q_0`.
    Q0,
    /// `αQ_0`, with `0` added when `m | (q+1)/2`.
    AlphaQ0,
    /// The subfield of order `p^d`.
    Subfield(u32),
}

impl ConstructionKind {
    pub fn label(self) -> String {
        match self {
            ConstructionKind::FqAlpha => "fq_alpha".into(),
            ConstructionKind::AlphaFqOne => "alphafq_one".into(),
            ConstructionKind::Q0 => "q0".into(),
            ConstructionKind::AlphaQ0 => "alpha_q0".into(),
            ConstructionKind::Subfield(d) => format!("subfield_{d}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    pub kind: ConstructionKind,
    pub clique: Clique,
    pub predicted_size: usize,
    pub maximality: Maximality,
}

impl ConstructionResult {
    fn build(
        g: &GpGraph,
        kind: ConstructionKind,
        vertices: Vec<Elem>,
        predicted_size: usize,
    ) -> Result<Self, CliqueZooError> {
        let mut clique = Clique::new(g, vertices)?;
        let maximality = clique.maximality(g);
        Ok(ConstructionResult {
            kind,
            clique,
            predicted_size,
            maximality,
        })
    }

    pub fn size_matches(&self) -> bool {
        self.clique.len() == self.predicted_size
    }

    pub fn is_maximal(&self) -> bool {
        self.maximality.is_maximal()
    }
}

/// `(q+1)/m`, or `(q+1+m)/m` when `m | (q+1)/2`.
fn predicted(g: &GpGraph) -> usize {
    g.w() as usize + usize::from(divides_half(g))
}

/// `{α} ∪ {c ∈ F_q : α − c is an m-th power}`, plus `−α` when `m | (q+1)/2`.
///
/// The `F_q` points are where the non-horizontal `m`-ary lines through `α`
/// meet `F_q`: the line of slope `i + α` meets it at `−i`.
pub fn fq_alpha_construction(g: &GpGraph) -> Result<ConstructionResult, CliqueZooError> {
    let f = g.field();
    let alpha = f.alpha();
    let mut vertices = vec![alpha];
    for i in f.fq_elements() {
        if g.is_connection(f.add(i, alpha)) {
            vertices.push(f.neg(i));
        }
    }
    if divides_half(g) {
        vertices.push(f.neg(alpha));
    }
    ConstructionResult::build(g, ConstructionKind::FqAlpha, vertices, predicted(g))
}

/// `{±1}` with the points where the `m`-ary lines through `1`, other than the
/// one parallel to `αF_q`, meet `αF_q`. Needs `m | (q+1)/2`.
pub fn alpha_fq_one_construction(g: &GpGraph) -> Result<ConstructionResult, CliqueZooError> {
    require_divides_half(g, "the (alpha F_q, 1) construction")?;
    let f = g.field();
    let (one, alpha) = (f.one(), f.alpha());
    // Slope 1 is always m-ary (F_q* consists of m-th powers) and meets αF_q at 0.
    let mut vertices = vec![one, f.neg(one), Elem::ZERO];
    for i in f.fq_elements().filter(|i| !i.is_zero()) {
        if g.is_connection(f.add(i, alpha)) {
            // 1 + c(i + α) ∈ αF_q forces c = −1/i.
            let c = f.neg(f.inv(i)?);
            vertices.push(f.mul(c, alpha));
        }
    }
    ConstructionResult::build(g, ConstructionKind::AlphaFqOne, vertices, predicted(g))
}

/// `{0} ∪ Q_0`. Needs `m | (q+1)/2`.
pub fn q0_construction(g: &GpGraph) -> Result<ConstructionResult, CliqueZooError> {
    require_divides_half(g, "the Q_0 construction")?;
    let mut vertices = Oval::new(g).part(0);
    vertices.push(Elem::ZERO);
    ConstructionResult::build(g, ConstructionKind::Q0, vertices, predicted(g))
}

/// `αQ_0`, together with `0` when `m | (q+1)/2`.
pub fn alpha_q0_construction(g: &GpGraph) -> Result<ConstructionResult, CliqueZooError> {
    let mut vertices = Oval::new(g).alpha_part(g, 0);
    if divides_half(g) {
        vertices.push(Elem::ZERO);
    }
    ConstructionResult::build(g, ConstructionKind::AlphaQ0, vertices, predicted(g))
}

/// The subfield `F_{p^d}`, when it is a clique (every nonzero element an
/// `m`-th power).
pub fn subfield_construction(g: &GpGraph, d: u32) -> Result<ConstructionResult, CliqueZooError> {
    let f = g.field();
    let vertices = f.subfield(d)?;
    if let Some(x) = vertices.iter().copied().find(|&x| !x.is_zero() && !g.is_connection(x)) {
        return Err(CliqueZooError::PreconditionFailed(format!(
            "subfield of order {}^{d} contains the non-m-th power {x:?}",
            f.p()
        )));
    }
    let size = vertices.len();
    ConstructionResult::build(g, ConstructionKind::Subfield(d), vertices, size)
}

pub(super) fn require_divides_half(g: &GpGraph, what: &str) -> Result<(), CliqueZooError> {
    if divides_half(g) {
        Ok(())
    } else {
        Err(CliqueZooError::PreconditionFailed(format!(
            "{what} needs m | (q+1)/2 (q = {}, m = {})",
            g.q(),
            g.m()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliquezoo::fq_neighbourhood;

    /// `N(α) ∪ {α}`; equal as a set to the `F_q`-part of [`fq_alpha_construction`].
    fn alpha_with_neighbourhood(g: &GpGraph) -> Vec<Elem> {
        let alpha = g.field().alpha();
        let mut out = fq_neighbourhood(g, alpha);
        out.push(alpha);
        out.sort_unstable();
        out
    }

    fn graph(q: u64, m: u32) -> GpGraph {
        GpGraph::for_q(q, m).unwrap()
    }

    #[test]
    fn fq_alpha_examples() {
        let r = fq_alpha_construction(&graph(5, 2)).unwrap();
        assert_eq!(r.clique.len(), 3);
        assert!(r.size_matches() && r.is_maximal());

        let r = fq_alpha_construction(&graph(11, 3)).unwrap();
        assert_eq!(r.clique.len(), 5);
        assert!(r.size_matches());

        // 7 divides 14 = (27+1)/2, so the clique carries −α and has size 5.
        let r = fq_alpha_construction(&graph(27, 7)).unwrap();
        assert_eq!(r.clique.len(), 5);
        assert!(r.maximality.witness().is_some());
    }

    #[test]
    fn fq_alpha_equals_alpha_with_neighbourhood() {
        for (q, m) in [(5, 3), (7, 2), (11, 4), (13, 7)] {
            let g = graph(q, m);
            let r = fq_alpha_construction(&g).unwrap();
            let mut expect = alpha_with_neighbourhood(&g);
            if divides_half(&g) {
                expect.push(g.field().neg(g.field().alpha()));
                expect.sort_unstable();
            }
            assert_eq!(r.clique.vertices(), &expect[..]);
        }
    }

    #[test]
    fn alpha_fq_one_examples() {
        assert_eq!(alpha_fq_one_construction(&graph(11, 3)).unwrap().clique.len(), 5);
        assert_eq!(alpha_fq_one_construction(&graph(7, 4)).unwrap().clique.len(), 3);
        assert!(matches!(
            alpha_fq_one_construction(&graph(11, 4)),
            Err(CliqueZooError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn q0_examples() {
        assert_eq!(q0_construction(&graph(11, 3)).unwrap().clique.len(), 5);
        let r = alpha_q0_construction(&graph(11, 4)).unwrap();
        assert_eq!(r.clique.len(), 3);
        assert!(!r.clique.contains(Elem::ZERO));
        let r = alpha_q0_construction(&graph(11, 3)).unwrap();
        assert_eq!(r.clique.len(), 5);
        assert!(r.clique.contains(Elem::ZERO));
        assert!(q0_construction(&graph(11, 4)).is_err());
    }

    #[test]
    fn sizes_match_for_small_pairs() {
        for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27] {
            for m in crate::arith::divisors(q + 1).into_iter().skip(1) {
                let g = graph(q, m as u32);
                assert!(fq_alpha_construction(&g).unwrap().size_matches(), "q={q} m={m}");
                assert!(alpha_q0_construction(&g).unwrap().size_matches(), "q={q} m={m}");
                if divides_half(&g) {
                    assert!(alpha_fq_one_construction(&g).unwrap().size_matches(), "q={q} m={m}");
                    assert!(q0_construction(&g).unwrap().size_matches(), "q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn subfield_cliques() {
        let g = graph(27, 7);
        let r = subfield_construction(&g, 2).unwrap();
        assert_eq!(r.clique.len(), 9);
        assert!(r.is_maximal());
        assert!(subfield_construction(&graph(9, 5), 1).is_ok());
        assert!(matches!(
            subfield_construction(&graph(3, 2), 2),
            Err(CliqueZooError::PreconditionFailed(_))
        ));
    }
}
