//! Strongly regular eigendata, weight-distribution bounds, and exact
//! eigenfunction checks. Everything here is integer arithmetic.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith;
use crate::ffield::Elem;
use crate::gpgraph::{GpGraph, SrgParams};
use crate::oval::Oval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("parameters {0:?} do not give an integral spectrum")]
    NonIntegralSpectrum(SrgParams),
    #[error("parameters {0:?} describe an imprimitive graph")]
    Imprimitive(SrgParams),
    #[error("parts ({i1}, {i2}) of the oval do not induce a complete bipartite graph")]
    NotABipartitePair { i1: u32, i2: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgEigendata {
    pub params: SrgParams,
    /// `√((λ−μ)² + 4(k−μ))`.
    pub delta: i64,
    pub theta1: i64,
    pub theta2: i64,
    pub mult_theta1: i64,
    pub mult_theta2: i64,
    /// Rows `(multiplicity, eigenvalue, complement eigenvalue)` for `k`, `θ₁`, `θ₂`.
    pub modified_matrix: [[i64; 3]; 3],
}

pub fn srg_eigendata(params: SrgParams) -> Result<SrgEigendata, SpectraError> {
    let SrgParams { v, k, lambda, mu } = params;
    if mu == 0 || mu == k {
        return Err(SpectraError::Imprimitive(params));
    }
    let (v, k, lambda, mu) = (v as i64, k as i64, lambda as i64, mu as i64);
    let disc = (lambda - mu).pow(2) + 4 * (k - mu);
    let delta = arith::integer_sqrt(disc as u64) as i64;
    let non_integral = SpectraError::NonIntegralSpectrum(params);
    if delta * delta != disc || (lambda - mu + delta) % 2 != 0 {
        return Err(non_integral);
    }
    let theta1 = (lambda - mu + delta) / 2;
    let theta2 = (lambda - mu - delta) / 2;
    let gap = theta1 - theta2;
    let num1 = -((v - 1) * theta2 + k);
    let num2 = (v - 1) * theta1 + k;
    if num1 % gap != 0 || num2 % gap != 0 {
        return Err(non_integral);
    }
    let (mult_theta1, mult_theta2) = (num1 / gap, num2 / gap);
    Ok(SrgEigendata {
        params,
        delta,
        theta1,
        theta2,
        mult_theta1,
        mult_theta2,
        modified_matrix: [
            [1, k, v - 1 - k],
            [mult_theta1, theta1, -1 - theta1],
            [mult_theta2, theta2, -1 - theta2],
        ],
    })
}

/// The modified matrix of eigenvalues of the block graph of an `OA(w, n)`,
/// written directly in terms of `n` and `w`.
pub fn block_graph_modified_matrix(n: i64, w: i64) -> [[i64; 3]; 3] {
    [
        [1, w * (n - 1), (n - 1) * (n + 1 - w)],
        [w * (n - 1), n - w, w - n - 1],
        [(n - 1) * (n + 1 - w), -w, w - 1],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenSign {
    Positive,
    Negative,
}

/// Least support size of a `θ`-eigenfunction: `2(θ₁+1)` or `−2θ₂`.
pub fn wdb(e: &SrgEigendata, which: EigenSign) -> i64 {
    match which {
        EigenSign::Positive => 2 * (e.theta1 + 1),
        EigenSign::Negative => -2 * e.theta2,
    }
}

/// An integer-valued function on the vertices, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenFunction {
    values: BTreeMap<Elem, i64>,
    eigenvalue: i64,
}

impl EigenFunction {
    /// Drops zero entries.
    pub fn new(values: impl IntoIterator<Item = (Elem, i64)>, eigenvalue: i64) -> EigenFunction {
        EigenFunction {
            values: values.into_iter().filter(|&(_, x)| x != 0).collect(),
            eigenvalue,
        }
    }

    pub fn eigenvalue(&self) -> i64 {
        self.eigenvalue
    }

    pub fn value(&self, v: Elem) -> i64 {
        self.values.get(&v).copied().unwrap_or(0)
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.values.keys().copied()
    }

    pub fn values(&self) -> &BTreeMap<Elem, i64> {
        &self.values
    }

    pub fn set(&mut self, v: Elem, x: i64) {
        if x == 0 {
            self.values.remove(&v);
        } else {
            self.values.insert(v, x);
        }
    }
}

impl Serialize for EigenFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Export {
            eigenvalue: i64,
            values: Vec<(u32, i64)>,
        }
        Export {
            eigenvalue: self.eigenvalue,
            values: self.values.iter().map(|(v, &x)| (v.index(), x)).collect(),
        }
        .serialize(serializer)
    }
}

/// `+1` on `Q_{i₁}`, `−1` on `Q_{i₂}`, eigenvalue `−(q+1)/m`.
pub fn build_eigenfunction(o: &Oval, g: &GpGraph, i1: u32, i2: u32) -> Result<EigenFunction, SpectraError> {
    let bad = SpectraError::NotABipartitePair { i1, i2 };
    if i1 == i2 || i1 >= o.m() || i2 >= o.m() {
        return Err(bad);
    }
    let (a, b) = (o.part(i1), o.part(i2));
    let complete =
        g.is_independent(&a) && g.is_independent(&b) && a.iter().all(|&x| b.iter().all(|&y| g.adjacent(x, y)));
    if !complete {
        return Err(bad);
    }
    let values = a.into_iter().map(|x| (x, 1)).chain(b.into_iter().map(|y| (y, -1)));
    Ok(EigenFunction::new(values, -(g.w() as i64)))
}

/// Exact check of `θ·f(γ) = Σ_{δ ~ γ} f(δ)` at every vertex, for a nonzero `f`.
///
/// Neighbour sums are accumulated from the support outwards, so the cost is
/// `O(|support| · degree + q²)`.
pub fn verify_eigenfunction(g: &GpGraph, f: &EigenFunction) -> bool {
    if f.support_size() == 0 {
        return false;
    }
    let field = g.field();
    let s = g.connection_set();
    let mut sums = vec![0i64; g.order() as usize];
    for (&v, &x) in f.values() {
        for &c in &s {
            sums[field.add(v, c).index() as usize] += x;
        }
    }
    g.vertices()
        .all(|v| f.eigenvalue * f.value(v) == sums[v.index() as usize])
}

/// Outcome of the small-support search for the positive eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct SupportExploration {
    pub q: u32,
    pub m: u32,
    pub eigenvalue: i64,
    pub wdb: i64,
    /// Smallest support of an exactly verified eigenfunction found, if any.
    pub best_support: Option<usize>,
    pub meets_bound: bool,
    pub trials: usize,
    pub witness: Option<EigenFunction>,
}

const EXPLORE_PRIME: u64 = (1 << 61) - 1;

/// Searches for small-support eigenfunctions of the positive eigenvalue.
///
/// Each trial row-reduces `A − θI` modulo a large prime under a random column
/// order and reads off the fundamental kernel vectors, each of which has
/// minimal support among kernel vectors. The smallest candidate is lifted to
/// integers by rational reconstruction and kept only if the exact check
/// passes. The result is an upper bound on the least support, nothing more.
pub fn explore_positive_support(g: &GpGraph, trials: usize, seed: u64) -> Result<SupportExploration, SpectraError> {
    let eig = srg_eigendata(SrgParams::of_graph(g))?;
    let theta = eig.theta1;
    let n = g.order() as usize;
    let p = EXPLORE_PRIME;
    let to_mod = |x: i64| x.rem_euclid(p as i64) as u64;
    let base: Vec<Vec<u64>> = g
        .vertices()
        .map(|u| {
            g.vertices()
                .map(|v| {
                    if u == v {
                        to_mod(-theta)
                    } else if g.adjacent(u, v) {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<EigenFunction> = None;
    for _ in 0..trials {
        order.shuffle(&mut rng);
        for candidate in fundamental_kernel_vectors(&base, &order, p) {
            if best
                .as_ref()
                .is_some_and(|b| b.support_size() <= candidate.iter().filter(|&&x| x != 0).count())
            {
                continue;
            }
            let Some(ints) = lift_to_integers(&candidate, p) else {
                continue;
            };
            let f = EigenFunction::new(
                ints.into_iter()
                    .enumerate()
                    .map(|(i, x)| (Elem::from_index(i as u32), x)),
                theta,
            );
            if verify_eigenfunction(g, &f) {
                best = Some(f);
            }
        }
    }
    let bound = wdb(&eig, EigenSign::Positive);
    let best_support = best.as_ref().map(EigenFunction::support_size);
    Ok(SupportExploration {
        q: g.q(),
        m: g.m(),
        eigenvalue: theta,
        wdb: bound,
        best_support,
        meets_bound: best_support == Some(bound as usize),
        trials,
        witness: best,
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut e) = (1u64, a, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// Kernel vectors from the reduced row echelon form of `matrix` with columns
/// taken in `order`, one per free column.
fn fundamental_kernel_vectors(matrix: &[Vec<u64>], order: &[usize], p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = matrix.iter().map(|r| order.iter().map(|&c| r[c]).collect()).collect();
    let ncols = order.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(factor, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.into_iter()
        .map(|fc| {
            let mut v = vec![0u64; ncols];
            v[order[fc]] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let x = rows[i][fc];
                if x != 0 {
                    v[order[pc]] = (p - x) % p;
                }
            }
            v
        })
        .collect()
}

/// Rational reconstruction of each entry, then clearing denominators.
fn lift_to_integers(v: &[u64], p: u64) -> Option<Vec<i64>> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let mut fracs = Vec::with_capacity(v.len());
    for &x in v {
        if x == 0 {
            fracs.push((0i128, 1i128));
            continue;
        }
        let (mut r0, mut r1) = (p as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 >= bound {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        if t1 == 0 || t1.abs() >= bound {
            return None;
        }
        let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        fracs.push((num, den));
    }
    let lcm = fracs.iter().try_fold(1i128, |acc, &(_, d)| {
        let g = arith::gcd(acc as u64, d as u64) as i128;
        acc.checked_mul(d / g)
    })?;
    fracs
        .into_iter()
        .map(|(num, den)| i64::try_from(num.checked_mul(lcm / den)?).ok())
        .collect()
}
