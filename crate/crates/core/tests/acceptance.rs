//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion recomputes what it can directly from field arithmetic and
//! graph adjacency rather than trusting the report types alone.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use gpaley::campaign::list_pairs;
use gpaley::charsum::{line_sum_bound, sample_line_sums};
use gpaley::cliquezoo::{
    check_conjecture, divides_half, fq_neighbourhood, k4_count, maximal_size_census, phi, psi,
    verify_phi_correspondence, verify_psi_correspondence, CensusMode, CliqueZooError, Conjecture, K4Mode,
};
use gpaley::ffield::{Elem, Field};
use gpaley::geometry::{block_graph_equals_gp, build_oa};
use gpaley::gpgraph::{verify_srg, GpGraph, SrgParams, EXHAUSTIVE_SRG_MAX_Q};
use gpaley::oval::{find_bipartite_pair, verify_structure, Oval};
use gpaley::spectra::{build_eigenfunction, verify_eigenfunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn graphs(q_max: u64) -> impl Iterator<Item = GpGraph> {
    list_pairs(3, q_max)
        .into_iter()
        .map(|(q, m)| GpGraph::for_q(q, m).expect("pair within the field cap"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census_729() -> Outcome {
    let g = GpGraph::for_q(27, 7).map_err(|e| e.to_string())?;
    let census = maximal_size_census(&g, CensusMode::Full, false).map_err(|e| e.to_string())?;
    let sizes: BTreeSet<usize> = census.enumeration.cliques.iter().map(|c| c.len()).collect();
    ensure(!census.truncated, || "enumeration truncated".into())?;
    // Independent maximality recheck on every clique: no outside vertex is
    // adjacent to all members.
    for c in &census.enumeration.cliques {
        let v = c.vertices();
        ensure(g.is_clique(v), || format!("{v:?} is not a clique"))?;
        let extendable = g
            .vertices()
            .any(|x| !c.contains(x) && v.iter().all(|&y| g.adjacent(x, y)));
        ensure(!extendable, || format!("{v:?} is not maximal"))?;
    }
    ensure(sizes == BTreeSet::from([9, 27]), || format!("sizes {sizes:?}"))?;
    Ok(format!(
        "{} maximal cliques, sizes {sizes:?}, none of size 5",
        census.enumeration.cliques.len()
    ))
}

fn k4_paley_25() -> Outcome {
    let g = GpGraph::for_q(5, 2).map_err(|e| e.to_string())?;
    let brute = k4_count(&g, K4Mode::BruteForce).map_err(|e| e.to_string())?;
    let formula = k4_count(&g, K4Mode::Formula).map_err(|e| e.to_string())?;
    ensure(brute == 75 && formula == 75, || {
        format!("brute {brute}, formula {formula}")
    })?;
    Ok("brute force = formula = 75".into())
}

fn weight_distribution_tightness() -> Outcome {
    let mut checked = 0;
    for g in graphs(101) {
        let o = Oval::new(&g);
        let Some((i1, i2)) = find_bipartite_pair(&o, &g) else {
            ensure(g.m() == 2, || {
                format!("q={} m={}: no complete bipartite pair", g.q(), g.m())
            })?;
            continue;
        };
        let f = build_eigenfunction(&o, &g, i1, i2).map_err(|e| e.to_string())?;
        let w = g.w() as i64;
        ensure(f.eigenvalue() == -w, || {
            format!("q={} m={}: eigenvalue {}", g.q(), g.m(), f.eigenvalue())
        })?;
        ensure(f.support_size() == 2 * w as usize, || {
            format!("q={} m={}: support {}", g.q(), g.m(), f.support_size())
        })?;
        ensure(verify_eigenfunction(&g, &f), || {
            format!("q={} m={}: eigen-equation fails", g.q(), g.m())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} graphs, support 2(q+1)/m at eigenvalue -(q+1)/m"))
}

fn srg_parameters() -> Outcome {
    let (mut exhaustive, mut sampled) = (0, 0);
    for g in graphs(101) {
        let r = verify_srg(&g);
        let w = g.w() as u64;
        let q = g.q() as u64;
        let expect = SrgParams {
            v: q * q,
            k: w * (q - 1),
            lambda: ((w as i64 - 1) * (w as i64 - 2)) as u64 + q - 2,
            mu: w * (w - 1),
        };
        ensure(r.expected == expect, || {
            format!("q={q} m={}: expected {:?}", g.m(), r.expected)
        })?;
        ensure(r.pass(), || format!("q={q} m={}: {:?}", g.m(), r.discrepancy))?;
        ensure(r.exhaustive == (g.q() <= EXHAUSTIVE_SRG_MAX_Q), || {
            format!("q={q}: wrong mode")
        })?;
        if r.exhaustive {
            exhaustive += 1;
        } else {
            ensure(r.pairs_checked >= 10_000, || {
                format!("q={q}: only {} pairs", r.pairs_checked)
            })?;
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} graphs exhaustive, {sampled} sampled"))
}

fn orthogonal_arrays() -> Outcome {
    let mut n = 0;
    for g in graphs(49) {
        let oa = build_oa(&g);
        ensure(oa.w() == g.w() as usize, || {
            format!("q={} m={}: {} rows", g.q(), g.m(), oa.w())
        })?;
        ensure(oa.is_orthogonal(), || {
            format!("q={} m={}: not orthogonal", g.q(), g.m())
        })?;
        ensure(block_graph_equals_gp(&oa, &g), || {
            format!("q={} m={}: block graph differs", g.q(), g.m())
        })?;
        n += 1;
    }
    Ok(format!("{n} arrays orthogonal with block graph = GP"))
}

fn oval_structure() -> Outcome {
    let mut n = 0;
    for g in graphs(101) {
        let o = Oval::new(&g);
        for scaled in [false, true] {
            let r = verify_structure(&o, &g, scaled);
            ensure(r.pass, || format!("q={} m={} scaled={scaled}: {r:?}", g.q(), g.m()))?;
        }
        n += 1;
    }
    Ok(format!("{n} graphs, Q and alpha*Q match the case analysis"))
}

fn conjectures() -> Outcome {
    let (mut met, mut skipped) = (0, 0);
    for g in graphs(101) {
        for which in [Conjecture::PencilCliques, Conjecture::OvalCliques] {
            match check_conjecture(&g, which) {
                Ok(r) => {
                    ensure(r.pass, || {
                        format!("q={} m={} conjecture {}: {:?}", g.q(), g.m(), r.conjecture, r.witness())
                    })?;
                    met += 1;
                }
                Err(CliqueZooError::HypothesisFailed(_)) => skipped += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("{met} instances pass, {skipped} outside the hypotheses"))
}

fn correspondences() -> Outcome {
    let (mut phis, mut psis) = (0, 0);
    for g in graphs(101) {
        let r = verify_psi_correspondence(&g).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("psi at q={} m={}", g.q(), g.m()))?;
        psis += 1;
        if divides_half(&g) {
            let r = verify_phi_correspondence(&g).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("phi at q={} m={}", g.q(), g.m()))?;
            phis += 1;
        }
    }
    Ok(format!("phi on {phis} graphs, psi on {psis} graphs"))
}

fn census_propositions() -> Outcome {
    let g = GpGraph::for_q(5, 2).map_err(|e| e.to_string())?;
    let small = maximal_size_census(&g, CensusMode::Full, false).map_err(|e| e.to_string())?;
    ensure(small.sizes() == [3, 5], || {
        format!("GP(25,2) sizes {:?}", small.sizes())
    })?;
    let g = GpGraph::for_q(11, 3).map_err(|e| e.to_string())?;
    let big = maximal_size_census(&g, CensusMode::Full, false).map_err(|e| e.to_string())?;
    let sizes = big.sizes();
    ensure(!big.truncated && sizes.iter().all(|s| [4, 5, 11].contains(s)), || {
        format!("GP(121,3) sizes {sizes:?}")
    })?;
    Ok(format!("GP(25,2) {:?}, GP(121,3) {sizes:?}", small.sizes()))
}

/// Samples drawn per graph above the exhaustive threshold.
const IDENTITY_SAMPLES: usize = 1000;
const EXHAUSTIVE_IDENTITY_MAX_Q: u32 = 27;

fn identity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de7);
    let mut checks = 0u64;
    for g in graphs(101) {
        let f = g.field();
        let (q, m) = (g.q(), g.m());
        let one = f.one();
        let omega = |t: u64| f.from_log((q as u64 - 1) * t);
        // (γ − 1)^{q−1} = −1/γ on the norm-one group minus 1.
        for t in 1..=q as u64 {
            let x = omega(t);
            let lhs = f.pow(f.sub(x, one), q as i64 - 1).unwrap();
            ensure(lhs == f.neg(f.inv(x).unwrap()), || {
                format!("q={q}: (x-1)^(q-1) at t={t}")
            })?;
            checks += 1;
        }
        // Adjacency on Q and αQ depends only on t₁ + t₂ mod m.
        for t1 in 0..=q as u64 {
            for t2 in t1 + 1..=q as u64 {
                let (a, b) = (omega(t1), omega(t2));
                let sum = (t1 + t2) as i64;
                let plain = ((q as i64 + 1) / 2 - sum).rem_euclid(m as i64) == 0;
                ensure(g.adjacent(a, b) == plain, || format!("q={q} m={m}: Q pair ({t1},{t2})"))?;
                let scaled = sum % m as i64 == 0;
                let (sa, sb) = (f.mul(f.alpha(), a), f.mul(f.alpha(), b));
                ensure(g.adjacent(sa, sb) == scaled, || {
                    format!("q={q} m={m}: alpha Q pair ({t1},{t2})")
                })?;
                checks += 2;
            }
        }
        let points: Vec<Elem> = if q <= EXHAUSTIVE_IDENTITY_MAX_Q {
            f.elements().collect()
        } else {
            (0..IDENTITY_SAMPLES)
                .map(|_| Elem::from_index(rng.gen_range(0..f.order())))
                .collect()
        };
        for &x in &points {
            ensure(phi(f, phi(f, x)) == x, || {
                format!("q={q}: phi not an involution at {x:?}")
            })?;
            ensure(psi(f, psi(f, x)) == x, || {
                format!("q={q}: psi not an involution at {x:?}")
            })?;
            checks += 2;
            if f.is_in_fq(x) {
                continue;
            }
            let n = fq_neighbourhood(&g, x);
            ensure(n.len() + 1 == g.w() as usize, || {
                format!("q={q} m={m}: |N({x:?})| = {}", n.len())
            })?;
            ensure(n == fq_neighbourhood(&g, f.frobenius(x)), || {
                format!("q={q} m={m}: N(u) != N(u^q)")
            })?;
            checks += 2;
        }
        ensure(phi(f, one) == one && psi(f, f.alpha()) == f.alpha(), || {
            format!("q={q}: fixed points")
        })?;
    }
    Ok(format!("{checks} identity checks"))
}

fn line_sum_bound_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4a72);
    let mut worst: f64 = 0.0;
    for q in [5u64, 9, 11, 13, 25, 27] {
        let f = Field::for_q(q).map_err(|e| e.to_string())?;
        let s = sample_line_sums(&f, 100, &mut rng);
        ensure(s.samples == 100 && s.pass(), || {
            format!("q={q}: {:?}", s.violations.first())
        })?;
        ensure(line_sum_bound(&f) > 0.0, || format!("q={q}: degenerate bound"))?;
        worst = worst.max(s.max_ratio);
    }
    Ok(format!("600 sums, largest |sum|/bound = {worst:.4}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("census of GP(729,7)", census_729),
        ("K4 count in GP(25,2)", k4_paley_25),
        ("weight-distribution bound is tight", weight_distribution_tightness),
        ("strongly regular parameters", srg_parameters),
        ("orthogonal array and block graph", orthogonal_arrays),
        ("structure of Q and alpha*Q", oval_structure),
        ("maximality conjectures", conjectures),
        ("phi and psi correspondences", correspondences),
        ("census spectra for (q+1)/3 and (q+1)/4", census_propositions),
        ("identity suite", identity_suite),
        ("character sums on lines", line_sum_bound_check),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg} ({secs:.2}s)");
            }
        }
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
