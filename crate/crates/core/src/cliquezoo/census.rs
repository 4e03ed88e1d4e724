//! Maximal-clique size census, the stability bounds it must respect, and
//! `K₄` counts.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::CliqueZooError;
use crate::arith::binomial;
use crate::ffield::Elem;
use crate::gpgraph::{enumerate_maximal_cliques, enumerate_rooted, CliqueEnumeration, EnumLimits, GpGraph};

/// Largest order the census handles at any density without force.
const CENSUS_DENSE_MAX_ORDER: u32 = 1024;
/// Largest order the census handles for `m ≥ 5` without force.
const CENSUS_SPARSE_MAX_ORDER: u32 = 4096;
/// Largest order for brute-force `K₄` counting.
const K4_BRUTE_MAX_ORDER: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Every maximal clique of the graph.
    Full,
    /// Maximal cliques through the edge `{0, 1}`; same size spectrum.
    Rooted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub q: u32,
    pub m: u32,
    pub mode: CensusMode,
    /// Size → number of maximal cliques of that size found.
    pub counts: BTreeMap<usize, usize>,
    pub truncated: bool,
    #[serde(skip)]
    pub enumeration: CliqueEnumeration,
}

impl Census {
    pub fn sizes(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }
}

/// Whether the census runs without force: `q² ≤ 1024`, or `q² ≤ 4096` with `m ≥ 5`.
pub fn census_allowed(g: &GpGraph) -> bool {
    g.order() <= CENSUS_DENSE_MAX_ORDER || (g.order() <= CENSUS_SPARSE_MAX_ORDER && g.m() >= 5)
}

pub fn maximal_size_census(g: &GpGraph, mode: CensusMode, force: bool) -> Result<Census, CliqueZooError> {
    maximal_size_census_with_limits(g, mode, force, &EnumLimits::default())
}

/// [`maximal_size_census`] under enumeration limits; hitting one sets
/// `truncated`.
pub fn maximal_size_census_with_limits(
    g: &GpGraph,
    mode: CensusMode,
    force: bool,
    limits: &EnumLimits,
) -> Result<Census, CliqueZooError> {
    if !force && !census_allowed(g) {
        return Err(CliqueZooError::EnumerationRefused {
            order: g.order(),
            m: g.m(),
        });
    }
    let enumeration = match mode {
        CensusMode::Full => enumerate_maximal_cliques(g, limits, true)?,
        CensusMode::Rooted => enumerate_rooted(g, limits),
    };
    let mut counts = BTreeMap::new();
    for c in &enumeration.cliques {
        *counts.entry(c.len()).or_insert(0) += 1;
    }
    Ok(Census {
        q: g.q(),
        m: g.m(),
        mode,
        counts,
        truncated: enumeration.truncated,
        enumeration,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub applies: bool,
    pub pass: bool,
    pub witness: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StabilityReport {
    pub q: u32,
    pub m: u32,
    pub sizes: Vec<usize>,
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
}

/// Whether the affine map sending the first two vertices to `0, 1` carries
/// the whole clique into `F_q`, i.e. the clique lies on one line.
fn is_collinear(g: &GpGraph, clique: &[Elem]) -> bool {
    let f = g.field();
    let [a, b, ..] = clique else { return true };
    let scale = f.sub(*b, *a);
    clique
        .iter()
        .all(|&x| f.is_in_fq(f.div(f.sub(x, *a), scale).expect("distinct vertices")))
}

/// Checks a census against every size constraint known to hold:
/// the maximum clique size is `q` and maximum cliques are lines; the
/// `(w−1)²` and `1 + w(w−3)` bounds on non-maximum maximal cliques; large
/// cliques lie on lines when `(w−1)² < q`; and the exact spectra for
/// `m = (q+1)/3` and `m = (q+1)/4`.
pub fn stability_check(g: &GpGraph, census: &Census) -> StabilityReport {
    let (q, m, p) = (g.q(), g.m(), g.field().p());
    let w = g.w() as usize;
    let qs = q as usize;
    let cliques: Vec<&[Elem]> = census.enumeration.cliques.iter().map(|c| c.vertices()).collect();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, applies: bool, bad: Option<&[Elem]>| {
        checks.push(BoundCheck {
            name,
            applies,
            pass: !applies || bad.is_none(),
            witness: if applies { bad.map(<[Elem]>::to_vec) } else { None },
        });
    };

    let max = census.counts.keys().next_back().copied().unwrap_or(0);
    let too_big = cliques.iter().copied().find(|c| c.len() > qs);
    push("maximum_is_q", true, too_big.or_else(|| (max != qs).then_some(&[][..])));
    push(
        "maximum_cliques_are_lines",
        true,
        cliques.iter().copied().find(|c| c.len() == qs && !is_collinear(g, c)),
    );

    let basic = m >= 2 && 3 * m <= q + 1;
    let refined = basic && (m - 1) % p != 0 && 4 * m <= q + 1;
    let square = (w - 1) * (w - 1);
    let refined_bound = 1 + w * w.saturating_sub(3);
    push(
        "non_maximum_at_most_(w-1)^2",
        basic,
        cliques.iter().copied().find(|c| c.len() < qs && c.len() > square),
    );
    push(
        "non_maximum_at_most_1+w(w-3)",
        refined,
        cliques
            .iter()
            .copied()
            .find(|c| c.len() < qs && c.len() > refined_bound),
    );
    // (w−1)² < q exactly when m > (q+1)/(√q+1).
    let threshold = if refined { refined_bound.min(square) } else { square };
    push(
        "large_cliques_on_lines",
        square < qs,
        cliques
            .iter()
            .copied()
            .find(|c| c.len() > threshold && !is_collinear(g, c)),
    );

    let sizes = census.sizes();
    let odd_size =
        |allowed: &[usize]| -> Option<&[Elem]> { cliques.iter().copied().find(|c| !allowed.contains(&c.len())) };
    let third = 3 * m == q + 1 && q % 3 == 2;
    let missing = third && !census.truncated && sizes != [3, qs];
    push(
        "spectrum_third",
        third,
        odd_size(&[3, qs]).or_else(|| missing.then_some(&[][..])),
    );
    let quarter = 4 * m == q + 1 && p > 3 && q % 4 == 3;
    push("spectrum_quarter", quarter, odd_size(&[4, 5, qs]));

    let pass = checks.iter().all(|c| c.pass);
    StabilityReport {
        q,
        m,
        sizes,
        checks,
        pass,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum K4Mode {
    Formula,
    BruteForce,
}

/// `3q · C(q, 4)`: for `m = (q+1)/3`, `q ≡ 2 (mod 3)`, every `K₄` lies on one
/// of the `3q` lines that form maximum cliques.
pub fn k4_formula(q: u32, m: u32) -> Result<u64, CliqueZooError> {
    if 3 * m != q + 1 || q % 3 != 2 {
        return Err(CliqueZooError::FormulaInapplicable { q, m });
    }
    Ok(3 * q as u64 * binomial(q as u64, 4))
}

pub fn k4_count(g: &GpGraph, mode: K4Mode) -> Result<u64, CliqueZooError> {
    match mode {
        K4Mode::Formula => k4_formula(g.q(), g.m()),
        K4Mode::BruteForce => {
            if g.order() > K4_BRUTE_MAX_ORDER {
                return Err(CliqueZooError::EnumerationRefused {
                    order: g.order(),
                    m: g.m(),
                });
            }
            Ok(count_k4(g))
        }
    }
}

/// Counts `a < b < c < d` pairwise adjacent, by index.
fn count_k4(g: &GpGraph) -> u64 {
    let n = g.order() as usize;
    let nbhd = |i: usize| g.neighbourhood(Elem::from_index(i as u32));
    let mut total = 0u64;
    let mut common = FixedBitSet::with_capacity(n);
    for a in 0..n {
        for b in nbhd(a).ones().filter(|&b| b > a) {
            common.clone_from(nbhd(a));
            common.intersect_with(nbhd(b));
            for c in common.ones().filter(|&c| c > b) {
                total += nbhd(c).ones().filter(|&d| d > c && common.contains(d)).count() as u64;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(q: u64, m: u32, mode: CensusMode) -> (GpGraph, Census) {
        let g = GpGraph::for_q(q, m).unwrap();
        let c = maximal_size_census(&g, mode, false).unwrap();
        (g, c)
    }

    #[test]
    fn paley_25() {
        let (g, c) = census(5, 2, CensusMode::Full);
        assert_eq!(c.sizes(), vec![3, 5]);
        // Three parallel classes of five lines each.
        assert_eq!(c.counts[&5], 15);
        assert!(stability_check(&g, &c).pass);
        let (_, rooted) = census(5, 2, CensusMode::Rooted);
        assert_eq!(rooted.sizes(), vec![3, 5]);
    }

    #[test]
    fn quarter_spectrum() {
        let (g, c) = census(11, 3, CensusMode::Rooted);
        assert!(c.sizes().iter().all(|s| [4, 5, 11].contains(s)));
        let r = stability_check(&g, &c);
        assert!(r.pass, "{r:?}");
        assert!(r.checks.iter().any(|b| b.name == "spectrum_quarter" && b.applies));
    }

    #[test]
    fn stability_small_graphs() {
        for q in [3u64, 5, 7, 9, 11, 13] {
            for m in crate::arith::divisors(q + 1).into_iter().skip(1) {
                let g = GpGraph::for_q(q, m as u32).unwrap();
                if !census_allowed(&g) {
                    continue;
                }
                let c = maximal_size_census(&g, CensusMode::Rooted, false).unwrap();
                let r = stability_check(&g, &c);
                assert!(r.pass, "q={q} m={m} {r:?}");
            }
        }
    }

    #[test]
    fn gate() {
        let g = GpGraph::for_q(37, 2).unwrap();
        assert!(!census_allowed(&g));
        assert!(maximal_size_census(&g, CensusMode::Rooted, false).is_err());
        assert!(census_allowed(&GpGraph::for_q(61, 31).unwrap()));
    }

    #[test]
    fn k4() {
        let g = GpGraph::for_q(5, 2).unwrap();
        assert_eq!(k4_count(&g, K4Mode::Formula).unwrap(), 75);
        assert_eq!(k4_count(&g, K4Mode::BruteForce).unwrap(), 75);
        // m = (11+1)/3 = 4 with 11 = 2 (mod 3): the formula applies.
        let g = GpGraph::for_q(11, 4).unwrap();
        let brute = k4_count(&g, K4Mode::BruteForce).unwrap();
        assert_eq!(brute, naive_k4(&g));
        assert_eq!(k4_count(&g, K4Mode::Formula).unwrap(), brute);
        let g = GpGraph::for_q(11, 3).unwrap();
        assert!(matches!(
            k4_count(&g, K4Mode::Formula),
            Err(CliqueZooError::FormulaInapplicable { .. })
        ));
    }

    /// Quadruple scan straight from the adjacency predicate.
    fn naive_k4(g: &GpGraph) -> u64 {
        let v: Vec<Elem> = g.vertices().collect();
        let n = v.len();
        let mut total = 0;
        for a in 0..n {
            for b in a + 1..n {
                if !g.adjacent(v[a], v[b]) {
                    continue;
                }
                for c in b + 1..n {
                    if !g.adjacent(v[a], v[c]) || !g.adjacent(v[b], v[c]) {
                        continue;
                    }
                    for d in c + 1..n {
                        if g.adjacent(v[a], v[d]) && g.adjacent(v[b], v[d]) && g.adjacent(v[c], v[d]) {
                            total += 1;
                        }
                    }
                }
            }
        }
        total
    }
}
