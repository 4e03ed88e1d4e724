//! The family `q = r³`, `m = r² − r + 1`, where `p | m − 1` and the subfield
//! `F_{r²}` is a maximal clique of size `(w − 1)²`.

use serde::Serialize;

use super::{fq_alpha_construction, fq_neighbourhood, maximal_size_census, CensusMode, CliqueZooError};
use crate::arith::prime_power;
use crate::gpgraph::{is_maximal_clique, GpGraph};

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub r: u32,
    pub q: u32,
    pub m: u32,
    /// `F_{r²}` is a clique.
    pub subfield_clique: bool,
    pub subfield_maximal: bool,
    /// `|F_{r²}| = (w − 1)²`.
    pub subfield_size_is_square: bool,
    /// `N(u) = F_r` for every `u ∈ F_{r²} \ F_r`.
    pub neighbourhood_is_prime_subfield: bool,
    /// `{u} ∪ N(u)` is not maximal for those `u`.
    pub small_clique_extends: bool,
    /// Size of the `(F_q, α)` clique, and whether it is maximal.
    pub pencil_clique_size: usize,
    pub pencil_clique_maximal: bool,
    /// Maximal clique sizes, when a census was run.
    pub sizes: Option<Vec<usize>>,
    pub pass: bool,
}

/// Checks the family member for `r`; with `census`, also enumerates every
/// maximal clique (refused above the census gate unless `force`).
pub fn counterexample_family(r: u32, census: bool, force: bool) -> Result<CounterexampleReport, CliqueZooError> {
    let (_, k) = prime_power(r as u64)
        .filter(|&(p, _)| p % 2 == 1)
        .ok_or_else(|| CliqueZooError::PreconditionFailed(format!("r = {r} is not an odd prime power")))?;
    let q = (r as u64).pow(3);
    let m = r * r - r + 1;
    let g = GpGraph::for_q(q, m)?;
    let f = g.field();

    let small = f.subfield(k)?;
    let sub = f.subfield(2 * k)?;
    let subfield_clique = sub.iter().all(|&x| x.is_zero() || g.is_connection(x));
    let subfield_maximal = subfield_clique && is_maximal_clique(&g, &sub).is_maximal();
    let w = g.w() as usize;

    let mut neighbourhood_is_prime_subfield = true;
    let mut small_clique_extends = true;
    for &u in sub.iter().filter(|x| !small.contains(x)) {
        let mut clique = fq_neighbourhood(&g, u);
        neighbourhood_is_prime_subfield &= clique == small;
        clique.push(u);
        clique.sort_unstable();
        small_clique_extends &= !is_maximal_clique(&g, &clique).is_maximal();
    }

    let pencil = fq_alpha_construction(&g)?;
    let sizes = if census {
        Some(maximal_size_census(&g, CensusMode::Full, force)?.sizes())
    } else {
        None
    };
    let subfield_size_is_square = sub.len() == (w - 1) * (w - 1);
    let pass = subfield_clique
        && subfield_maximal
        && subfield_size_is_square
        && neighbourhood_is_prime_subfield
        && small_clique_extends;
    Ok(CounterexampleReport {
        r,
        q: g.q(),
        m,
        subfield_clique,
        subfield_maximal,
        subfield_size_is_square,
        neighbourhood_is_prime_subfield,
        small_clique_extends,
        pencil_clique_size: pencil.clique.len(),
        pencil_clique_maximal: pencil.is_maximal(),
        sizes,
        pass,
    })
}
