//! Strongly-regular parameter checks by counting common neighbours.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GpGraph;
use crate::ffield::Elem;

/// Graphs with `q` up to this value are checked on every pair.
pub const EXHAUSTIVE_SRG_MAX_Q: u32 = 27;
/// Pairs sampled above the exhaustive threshold (half adjacent, half not).
pub const SRG_SAMPLE_PAIRS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// Parameters of the block graph of an `OA(w, n)`.
    pub fn block_graph(n: u64, w: u64) -> SrgParams {
        SrgParams {
            v: n * n,
            k: w * (n - 1),
            // For w = 1 the product is zero either way.
            lambda: (w - 1) * w.saturating_sub(2) + n - 2,
            mu: w * (w - 1),
        }
    }

    /// Predicted parameters of `GP(q², m)`.
    pub fn of_graph(g: &GpGraph) -> SrgParams {
        Self::block_graph(g.q() as u64, g.w() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SrgDiscrepancy {
    Degree { vertex: Elem, found: u64 },
    Lambda { u: Elem, v: Elem, found: u64 },
    Mu { u: Elem, v: Elem, found: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct SrgReport {
    pub expected: SrgParams,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub discrepancy: Option<SrgDiscrepancy>,
}

impl SrgReport {
    pub fn pass(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Checks `g` against the block-graph parameters for `(q, (q+1)/m)`.
///
/// For `q ≤ 27` every vertex degree and every pair is counted through the
/// neighbourhood bitsets; above that, `10⁴` seeded pairs are counted directly
/// over the connection set. The seed makes the sample reproducible.
pub fn verify_srg(g: &GpGraph) -> SrgReport {
    let expected = SrgParams::of_graph(g);
    if g.q() <= EXHAUSTIVE_SRG_MAX_Q {
        exhaustive(g, expected)
    } else {
        sampled(
            g,
            expected,
            SRG_SAMPLE_PAIRS,
            0x5eed_0000 + g.q() as u64 * 1000 + g.m() as u64,
        )
    }
}

fn exhaustive(g: &GpGraph, expected: SrgParams) -> SrgReport {
    let mut report = SrgReport {
        expected,
        exhaustive: true,
        pairs_checked: 0,
        discrepancy: None,
    };
    let vertices: Vec<Elem> = g.vertices().collect();
    for &u in &vertices {
        let found = g.neighbourhood(u).count_ones(..) as u64;
        if found != expected.k {
            report.discrepancy = Some(SrgDiscrepancy::Degree { vertex: u, found });
            return report;
        }
    }
    for (i, &u) in vertices.iter().enumerate() {
        let nu = g.neighbourhood(u);
        for &v in &vertices[i + 1..] {
            let found = nu.intersection_count(g.neighbourhood(v)) as u64;
            report.pairs_checked += 1;
            if let Some(d) = pair_discrepancy(expected, nu.contains(v.index() as usize), u, v, found) {
                report.discrepancy = Some(d);
                return report;
            }
        }
    }
    report
}

fn pair_discrepancy(expected: SrgParams, adjacent: bool, u: Elem, v: Elem, found: u64) -> Option<SrgDiscrepancy> {
    match adjacent {
        true if found != expected.lambda => Some(SrgDiscrepancy::Lambda { u, v, found }),
        false if found != expected.mu => Some(SrgDiscrepancy::Mu { u, v, found }),
        _ => None,
    }
}

fn sampled(g: &GpGraph, expected: SrgParams, pairs: usize, seed: u64) -> SrgReport {
    let f = g.field();
    let s = g.connection_set();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SrgReport {
        expected,
        exhaustive: false,
        pairs_checked: 0,
        discrepancy: None,
    };
    let count_common = |u: Elem, v: Elem| s.iter().filter(|&&c| g.adjacent(f.add(u, c), v)).count() as u64;

    for _ in 0..16 {
        let u = Elem::from_index(rng.gen_range(0..g.order()));
        let found = g.vertices().filter(|&v| g.adjacent(u, v)).count() as u64;
        if found != expected.k {
            report.discrepancy = Some(SrgDiscrepancy::Degree { vertex: u, found });
            return report;
        }
    }
    let n = f.group_order() as u64;
    for i in 0..pairs {
        let u = Elem::from_index(rng.gen_range(0..g.order()));
        let diff = if i % 2 == 0 {
            s[rng.gen_range(0..s.len())]
        } else {
            // A nonzero non-m-th power: log not divisible by m.
            let k = loop {
                let k = rng.gen_range(0..n);
                if k % g.m() as u64 != 0 {
                    break k;
                }
            };
            f.from_log(k)
        };
        let v = f.add(u, diff);
        let adjacent = g.adjacent(u, v);
        debug_assert_eq!(adjacent, i % 2 == 0);
        report.pairs_checked += 1;
        if let Some(d) = pair_discrepancy(expected, adjacent, u, v, count_common(u, v)) {
            report.discrepancy = Some(d);
            return report;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        for (q, m, params) in [(5, 2, (25, 12, 5, 6)), (11, 3, (121, 40, 15, 12)), (3, 2, (9, 4, 1, 2))] {
            let g = GpGraph::for_q(q, m).unwrap();
            let r = verify_srg(&g);
            assert_eq!((r.expected.v, r.expected.k, r.expected.lambda, r.expected.mu), params);
            assert!(r.pass(), "{r:?}");
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn gp_9_2_by_hand_count() {
        // Independent count straight from the adjacency predicate.
        let g = GpGraph::for_q(3, 2).unwrap();
        let vs: Vec<Elem> = g.vertices().collect();
        for &u in &vs {
            for &v in &vs {
                if u == v {
                    continue;
                }
                let common = vs.iter().filter(|&&x| g.adjacent(u, x) && g.adjacent(v, x)).count();
                assert_eq!(common, if g.adjacent(u, v) { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn sampled_mode_agrees() {
        let g = GpGraph::for_q(11, 4).unwrap();
        let r = sampled(&g, SrgParams::of_graph(&g), 500, 7);
        assert!(r.pass());
        assert_eq!(r.pairs_checked, 500);
    }

    #[test]
    fn wrong_parameters_are_reported() {
        let g = GpGraph::for_q(5, 2).unwrap();
        let mut wrong = SrgParams::of_graph(&g);
        wrong.mu += 1;
        let r = exhaustive(&g, wrong);
        assert!(matches!(r.discrepancy, Some(SrgDiscrepancy::Mu { .. })));
    }
}
