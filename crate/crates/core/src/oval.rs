//! The norm-one subgroup `Q = ⟨ω⟩`, `ω = β^{q−1}`, of order `q + 1`, and its
//! coset partition `Q_i = {ω^t : t ≡ i (mod m)}`.
//!
//! Elements are addressed by their exponent `t ∈ 0..=q`. Adjacency inside `Q`
//! depends only on `t₁ + t₂ (mod m)`, which makes the induced subgraphs on
//! `Q` and `αQ` completely predictable; this module computes the predictions
//! and checks them edge by edge.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::ffield::Elem;
use crate::geometry::Line;
use crate::gpgraph::GpGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OvalError {
    #[error("exponents must satisfy 0 <= t1 < t2 <= q, got ({t1}, {t2})")]
    BadExponents { t1: u32, t2: u32 },
}

#[derive(Debug, Clone)]
pub struct Oval {
    q: u32,
    m: u32,
    omega: Elem,
    alpha: Elem,
    /// `elements[t] = ω^t`.
    elements: Vec<Elem>,
}

impl Oval {
    pub fn new(g: &GpGraph) -> Oval {
        let f = g.field();
        let q = f.q();
        let omega = f.omega();
        let elements = (0..=q).map(|t| f.from_log((q as u64 - 1) * t as u64)).collect();
        Oval {
            q,
            m: g.m(),
            omega,
            alpha: f.alpha(),
            elements,
        }
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `ω^t` for `t ∈ 0..=q`.
    pub fn element(&self, t: u32) -> Elem {
        self.elements[t as usize]
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    /// Size of each part, `(q + 1)/m`.
    pub fn part_size(&self) -> u32 {
        (self.q + 1) / self.m
    }

    /// `Q_i`, in exponent order.
    pub fn part(&self, i: u32) -> Vec<Elem> {
        (i..=self.q).step_by(self.m as usize).map(|t| self.element(t)).collect()
    }

    /// `αQ_i`, in exponent order.
    pub fn alpha_part(&self, g: &GpGraph, i: u32) -> Vec<Elem> {
        let f = g.field();
        self.part(i).into_iter().map(|x| f.mul(self.alpha, x)).collect()
    }

    /// Exponent `t` with `x = ω^t`, if `x ∈ Q`.
    pub fn exponent_of(&self, x: Elem) -> Option<u32> {
        let k = x.log()?;
        (k % (self.q - 1) == 0).then(|| k / (self.q - 1))
    }
}

/// The map `γ ↦ γ^{q−1}` lands in `Q`, and `γ` is an `m`-th power exactly
/// when its image lies in `Q_0`. Checked on every nonzero element.
pub fn verify_hom(o: &Oval, g: &GpGraph) -> bool {
    let f = g.field();
    f.nonzero_elements().all(|x| {
        let image = f.pow(x, o.q as i64 - 1).expect("x is nonzero");
        match o.exponent_of(image) {
            None => false,
            Some(t) => g.is_connection(x) == (t % o.m == 0),
        }
    })
}

/// `(γ − 1)^{q−1} = −1/γ` for every `γ ∈ Q \ {1}`.
pub fn verify_gamma_minus_one(o: &Oval, g: &GpGraph) -> bool {
    let f = g.field();
    o.elements[1..].iter().all(|&x| {
        let lhs = f.pow(f.sub(x, Elem::ONE), o.q as i64 - 1).expect("x ≠ 1");
        let rhs = f.neg(f.inv(x).expect("x ≠ 0"));
        lhs == rhs
    })
}

/// Predicted adjacency of `ω^{t₁}, ω^{t₂}` (or of `αω^{t₁}, αω^{t₂}`).
pub fn adjacency_rule(o: &Oval, t1: u32, t2: u32, scaled_by_alpha: bool) -> Result<bool, OvalError> {
    if t1 >= t2 || t2 > o.q {
        return Err(OvalError::BadExponents { t1, t2 });
    }
    let m = o.m as i64;
    let sum = (t1 + t2) as i64;
    Ok(if scaled_by_alpha {
        sum % m == 0
    } else {
        ((o.q as i64 + 1) / 2 - sum).rem_euclid(m) == 0
    })
}

/// Whether [`adjacency_rule`] matches the graph on every pair of the oval.
pub fn adjacency_rule_matches_graph(o: &Oval, g: &GpGraph, scaled_by_alpha: bool) -> bool {
    let f = g.field();
    let point = |t: u32| {
        let x = o.element(t);
        if scaled_by_alpha {
            f.mul(o.alpha, x)
        } else {
            x
        }
    };
    (0..=o.q).all(|t1| {
        (t1 + 1..=o.q).all(|t2| {
            adjacency_rule(o, t1, t2, scaled_by_alpha).expect("t1 < t2 <= q") == g.adjacent(point(t1), point(t2))
        })
    })
}

/// Parts `Q_i` adjacent to `0`, read off the graph. A part that is only
/// partly adjacent to `0` yields `None`.
pub fn neighbours_of_zero(o: &Oval, g: &GpGraph) -> Option<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    for i in 0..o.m {
        let part = o.part(i);
        let hits = part.iter().filter(|&&x| g.adjacent(Elem::ZERO, x)).count();
        if hits == part.len() {
            out.insert(i);
        } else if hits != 0 {
            return None;
        }
    }
    Some(out)
}

/// `{0}` for odd `m`, `{0, m/2}` for even `m`.
pub fn predicted_neighbours_of_zero(m: u32) -> BTreeSet<u32> {
    if m % 2 == 1 {
        BTreeSet::from([0])
    } else {
        BTreeSet::from([0, m / 2])
    }
}

/// Which branch of the structure theorems applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructureCase {
    /// `m | (q+1)/2`, `m` odd.
    DividesHalfOdd,
    /// `m | (q+1)/2`, `m` even.
    DividesHalfEven,
    /// `m ∤ (q+1)/2`, `m/2` odd.
    NotDividesHalfOdd,
    /// `m ∤ (q+1)/2`, `m/2` even.
    NotDividesHalfEven,
    /// The scaled oval `αQ`, `m` odd.
    AlphaOdd,
    /// The scaled oval `αQ`, `m` even.
    AlphaEven,
}

impl StructureCase {
    pub fn classify(q: u32, m: u32, scaled_by_alpha: bool) -> StructureCase {
        match (scaled_by_alpha, ((q + 1) / 2) % m == 0, m % 2 == 0) {
            (true, _, false) => StructureCase::AlphaOdd,
            (true, _, true) => StructureCase::AlphaEven,
            (false, true, false) => StructureCase::DividesHalfOdd,
            (false, true, true) => StructureCase::DividesHalfEven,
            (false, false, _) if (m / 2) % 2 == 1 => StructureCase::NotDividesHalfOdd,
            (false, false, _) => StructureCase::NotDividesHalfEven,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StructureCase::DividesHalfOdd => "1.1",
            StructureCase::DividesHalfEven => "1.2",
            StructureCase::NotDividesHalfOdd => "2.1",
            StructureCase::NotDividesHalfEven => "2.2",
            StructureCase::AlphaOdd => "alpha-odd",
            StructureCase::AlphaEven => "alpha-even",
        }
    }

    /// Parts predicted to be cliques.
    pub fn clique_parts(self, m: u32) -> Vec<u32> {
        match self {
            StructureCase::DividesHalfOdd | StructureCase::AlphaOdd => vec![0],
            StructureCase::DividesHalfEven | StructureCase::AlphaEven => vec![0, m / 2],
            StructureCase::NotDividesHalfOdd => vec![],
            StructureCase::NotDividesHalfEven => vec![m / 4, 3 * m / 4],
        }
    }

    /// Pairs of independent parts predicted to induce complete bipartite
    /// graphs, listed as in the theorems.
    pub fn bipartite_pairs(self, m: u32) -> Vec<(u32, u32)> {
        match self {
            StructureCase::DividesHalfOdd | StructureCase::AlphaOdd => (1..=(m - 1) / 2).map(|i| (i, m - i)).collect(),
            StructureCase::DividesHalfEven | StructureCase::AlphaEven => (1..m / 2).map(|i| (i, m - i)).collect(),
            StructureCase::NotDividesHalfOdd => {
                let mut pairs: Vec<(u32, u32)> = (0..=(m - 2) / 4).map(|i| (i, m / 2 - i)).collect();
                pairs.extend((1..=(m - 2) / 4).map(|j| (m / 2 + j, m - j)));
                pairs
            }
            StructureCase::NotDividesHalfEven => {
                let mut pairs: Vec<(u32, u32)> = (0..=(m - 4) / 4).map(|i| (i, m / 2 - i)).collect();
                pairs.extend((1..=(m - 4) / 4).map(|j| (m / 2 + j, m - j)));
                pairs
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub q: u32,
    pub m: u32,
    pub case_label: String,
    pub parts_clique: Vec<u32>,
    pub parts_independent: Vec<u32>,
    pub bipartite_pairs: Vec<(u32, u32)>,
    pub pass: bool,
}

/// Reads the induced structure on `Q` (or `αQ`) off the graph and compares it
/// with the case prediction. Parts of size one are both cliques and
/// independent sets, and are listed according to the prediction.
pub fn verify_structure(o: &Oval, g: &GpGraph, scaled_by_alpha: bool) -> StructureReport {
    let m = o.m;
    let case = StructureCase::classify(o.q, m, scaled_by_alpha);
    let predicted_cliques = case.clique_parts(m);
    let parts: Vec<Vec<Elem>> = (0..m)
        .map(|i| if scaled_by_alpha { o.alpha_part(g, i) } else { o.part(i) })
        .collect();

    let mut parts_clique = Vec::new();
    let mut parts_independent = Vec::new();
    let mut consistent = true;
    for (i, part) in (0..m).zip(&parts) {
        let clique = g.is_clique(part);
        let independent = g.is_independent(part);
        match (clique, independent) {
            (true, true) if predicted_cliques.contains(&i) => parts_clique.push(i),
            (true, true) => parts_independent.push(i),
            (true, false) => parts_clique.push(i),
            (false, true) => parts_independent.push(i),
            (false, false) => consistent = false,
        }
    }

    let mut bipartite_pairs = Vec::new();
    for i1 in 0..m {
        for i2 in i1 + 1..m {
            let (a, b) = (&parts[i1 as usize], &parts[i2 as usize]);
            let edges = a
                .iter()
                .map(|&x| b.iter().filter(|&&y| g.adjacent(x, y)).count())
                .sum::<usize>();
            if edges == a.len() * b.len() {
                bipartite_pairs.push((i1, i2));
            } else if edges != 0 {
                consistent = false;
            }
        }
    }

    let mut predicted_pairs = case.bipartite_pairs(m);
    predicted_pairs.sort_unstable();
    let predicted_independent: Vec<u32> = (0..m).filter(|i| !predicted_cliques.contains(i)).collect();
    let pass = consistent
        && parts_clique == predicted_cliques
        && parts_independent == predicted_independent
        && bipartite_pairs == predicted_pairs;
    StructureReport {
        q: o.q,
        m,
        case_label: case.label().to_string(),
        parts_clique,
        parts_independent,
        bipartite_pairs,
        pass,
    }
}

/// The least pair `(i₁, i₂)` of independent parts of `Q` with every cross
/// edge present, found by scanning the graph.
pub fn find_bipartite_pair(o: &Oval, g: &GpGraph) -> Option<(u32, u32)> {
    let parts: Vec<Vec<Elem>> = (0..o.m).map(|i| o.part(i)).collect();
    let independent: Vec<bool> = parts.iter().map(|p| g.is_independent(p)).collect();
    (0..o.m).find_map(|i1| {
        (i1 + 1..o.m).find_map(|i2| {
            let (a, b) = (&parts[i1 as usize], &parts[i2 as usize]);
            let complete = independent[i1 as usize]
                && independent[i2 as usize]
                && a.iter().all(|&x| b.iter().all(|&y| g.adjacent(x, y)));
            complete.then_some((i1, i2))
        })
    })
}

/// Number of oval points on `line`.
pub fn points_on_line(o: &Oval, line: &Line) -> usize {
    o.elements.iter().filter(|&&x| line.contains(x)).count()
}
