//! Multiplicative characters through discrete logarithms, character sums
//! over affine lines `θ + F_p`, and the bound `(2n − 1)√p` on them.
//!
//! The only floating-point code in the crate. Character values are computed
//! from an exact phase `j·k mod (q² − 1)`, so each term carries a single
//! rounding.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ffield::{Elem, Field};
use crate::gpgraph::GpGraph;

/// Slack allowed on magnitudes compared against the bound.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharSumError {
    #[error("theta has degree {degree} over F_p, short of the full degree {full}")]
    ThetaInSubfield { degree: u32, full: u32 },
    #[error("the character is trivial")]
    TrivialCharacter,
    #[error("u has degree {degree} over F_p, short of the full degree {full}")]
    DegreeTooLow { degree: u32, full: u32 },
    #[error("character order {order} does not divide {group_order}")]
    BadOrder { order: u64, group_order: u64 },
}

/// `χ(β^j) = e^{2πi·jk/(q²−1)}`, `χ(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplicativeCharacter {
    group_order: u64,
    k: u64,
}

impl MultiplicativeCharacter {
    pub fn new(f: &Field, k: u64) -> MultiplicativeCharacter {
        let group_order = f.group_order() as u64;
        MultiplicativeCharacter {
            group_order,
            k: k % group_order,
        }
    }

    /// The character of order `m` sending `β` to `e^{2πi/m}`.
    pub fn of_order(f: &Field, m: u64) -> Result<MultiplicativeCharacter, CharSumError> {
        let group_order = f.group_order() as u64;
        if m == 0 || group_order % m != 0 {
            return Err(CharSumError::BadOrder { order: m, group_order });
        }
        Ok(MultiplicativeCharacter::new(f, group_order / m))
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.group_order / crate::arith::gcd(self.k, self.group_order)
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    /// Exact phase of `χ(x)` in units of `2π/(q²−1)`; `None` at zero.
    pub fn phase(&self, x: Elem) -> Option<u64> {
        x.log().map(|j| j as u64 * self.k % self.group_order)
    }

    pub fn eval(&self, x: Elem) -> Complex64 {
        match self.phase(x) {
            None => Complex64::new(0.0, 0.0),
            Some(ph) => Complex64::from_polar(1.0, TAU * ph as f64 / self.group_order as f64),
        }
    }

    pub fn mul(&self, other: &MultiplicativeCharacter) -> MultiplicativeCharacter {
        MultiplicativeCharacter {
            group_order: self.group_order,
            k: (self.k + other.k) % self.group_order,
        }
    }

    pub fn pow(&self, e: u64) -> MultiplicativeCharacter {
        MultiplicativeCharacter {
            group_order: self.group_order,
            k: ((self.k as u128 * e as u128) % self.group_order as u128) as u64,
        }
    }
}

/// `(2n − 1)√p` for `F_{p^{2n}}`.
pub fn line_sum_bound(f: &Field) -> f64 {
    (f.degree() as f64 - 1.0) * (f.p() as f64).sqrt()
}

/// `Σ_{a ∈ F_p} χ(θ + a)` for `θ` of full degree over `F_p`.
pub fn line_char_sum(f: &Field, chi: &MultiplicativeCharacter, theta: Elem) -> Result<Complex64, CharSumError> {
    if chi.is_trivial() {
        return Err(CharSumError::TrivialCharacter);
    }
    let degree = f.degree_over_prime(theta);
    if degree < f.degree() {
        return Err(CharSumError::ThetaInSubfield {
            degree,
            full: f.degree(),
        });
    }
    Ok((0..f.p() as i64).map(|a| chi.eval(f.add(theta, f.from_int(a)))).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineSumCheck {
    pub theta: Elem,
    pub character_exponent: u64,
    pub magnitude: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn check_line_sum(f: &Field, chi: &MultiplicativeCharacter, theta: Elem) -> Result<LineSumCheck, CharSumError> {
    let magnitude = line_char_sum(f, chi, theta)?.norm();
    let bound = line_sum_bound(f);
    Ok(LineSumCheck {
        theta,
        character_exponent: chi.exponent(),
        magnitude,
        bound,
        holds: magnitude <= bound + TOLERANCE,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LineSumSample {
    pub q: u32,
    pub samples: usize,
    /// Largest `|Σ| / bound` seen.
    pub max_ratio: f64,
    pub violations: Vec<LineSumCheck>,
}

impl LineSumSample {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws `count` pairs of a full-degree `θ` and a non-trivial character and
/// checks the bound on each.
pub fn sample_line_sums<R: Rng>(f: &Field, count: usize, rng: &mut R) -> LineSumSample {
    let n = f.group_order() as u64;
    sample_with(f, count, rng, |rng| {
        MultiplicativeCharacter::new(f, rng.gen_range(1..n))
    })
}

/// As [`sample_line_sums`], with characters drawn from the non-trivial
/// powers of the character of order `m`.
pub fn sample_line_sums_of_order<R: Rng>(f: &Field, m: u64, count: usize, rng: &mut R) -> LineSumSample {
    let base = MultiplicativeCharacter::of_order(f, m).expect("m divides q² − 1");
    sample_with(f, count, rng, |rng| base.pow(rng.gen_range(1..m)))
}

fn sample_with<R: Rng>(
    f: &Field,
    count: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> MultiplicativeCharacter,
) -> LineSumSample {
    let full: Vec<Elem> = f.elements().filter(|&x| f.degree_over_prime(x) == f.degree()).collect();
    let bound = line_sum_bound(f);
    let mut max_ratio: f64 = 0.0;
    let mut violations = Vec::new();
    for _ in 0..count {
        let theta = full[rng.gen_range(0..full.len())];
        let chi = draw(rng);
        let check = check_line_sum(f, &chi, theta).expect("θ has full degree and χ is non-trivial");
        max_ratio = max_ratio.max(check.magnitude / bound);
        if !check.holds {
            violations.push(check);
        }
    }
    LineSumSample {
        q: f.q(),
        samples: count,
        max_ratio,
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConsecutivePowers {
    pub u: Elem,
    /// Least `a ∈ F_p` (as an integer) with `u + a` not an `m`-th power.
    pub non_power_shift: Option<u32>,
    /// `p > (2n − 1)²`, so a non-power must exist.
    pub guaranteed: bool,
}

impl ConsecutivePowers {
    pub fn found(&self) -> bool {
        self.non_power_shift.is_some()
    }

    /// Fails only when a non-power was guaranteed and none was found.
    pub fn pass(&self) -> bool {
        !self.guaranteed || self.found()
    }
}

/// Looks for a non-`m`-th power on `u + F_p`, for `u` of full degree.
pub fn consecutive_power_check(g: &GpGraph, u: Elem) -> Result<ConsecutivePowers, CharSumError> {
    let f = g.field();
    let degree = f.degree_over_prime(u);
    if degree < f.degree() {
        return Err(CharSumError::DegreeTooLow {
            degree,
            full: f.degree(),
        });
    }
    let non_power_shift = (0..f.p()).find(|&a| !g.is_connection(f.add(u, f.from_int(a as i64))));
    let spread = f.degree() as u64 - 1;
    Ok(ConsecutivePowers {
        u,
        non_power_shift,
        guaranteed: f.p() as u64 > spread * spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn character_laws() {
        let f = Field::for_q(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [2u64, 5, 10, 16] {
            let chi = MultiplicativeCharacter::of_order(&f, m).unwrap();
            assert_eq!(chi.order(), m);
            assert!(chi.pow(m).is_trivial());
            for _ in 0..1000 {
                let x = f.from_log(rng.gen_range(0..80));
                let y = f.from_log(rng.gen_range(0..80));
                let lhs = chi.eval(f.mul(x, y));
                assert!((lhs - chi.eval(x) * chi.eval(y)).norm() < TOLERANCE);
            }
        }
        assert_eq!(
            MultiplicativeCharacter::new(&f, 0).eval(Elem::ZERO),
            Complex64::new(0.0, 0.0)
        );
        assert!(MultiplicativeCharacter::of_order(&f, 7).is_err());
    }

    #[test]
    fn quadratic_sum_at_25() {
        let f = Field::for_q(5).unwrap();
        let chi = MultiplicativeCharacter::of_order(&f, 2).unwrap();
        let theta = f.alpha();
        let check = check_line_sum(&f, &chi, theta).unwrap();
        assert!(check.holds);
        assert!((check.bound - 5f64.sqrt()).abs() < 1e-12);
        // Real-valued: an integer sum of ±1 terms.
        let s = line_char_sum(&f, &chi, theta).unwrap();
        assert!(s.im.abs() < TOLERANCE && (s.re - s.re.round()).abs() < TOLERANCE);

        assert_eq!(
            line_char_sum(&f, &MultiplicativeCharacter::new(&f, 0), theta),
            Err(CharSumError::TrivialCharacter)
        );
        assert!(matches!(
            line_char_sum(&f, &chi, f.from_int(3)),
            Err(CharSumError::ThetaInSubfield { degree: 1, .. })
        ));
    }

    #[test]
    fn sampled_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [5u64, 9, 27] {
            let f = Field::for_q(q).unwrap();
            assert!(sample_line_sums(&f, 100, &mut rng).pass());
        }
    }

    #[test]
    fn consecutive_powers() {
        let g = GpGraph::for_q(11, 3).unwrap();
        let f = g.field();
        for u in f.elements().filter(|&x| f.degree_over_prime(x) == 2) {
            let r = consecutive_power_check(&g, u).unwrap();
            assert!(r.guaranteed && r.found());
        }
        let g = GpGraph::for_q(13, 7).unwrap();
        let f = g.field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let u = loop {
                let x = f.from_log(rng.gen_range(0..f.group_order() as u64));
                if f.degree_over_prime(x) == 2 {
                    break x;
                }
            };
            assert!(consecutive_power_check(&g, u).unwrap().found());
        }
        let g = GpGraph::for_q(25, 2).unwrap();
        let f = g.field();
        let u = f.elements().find(|&x| f.degree_over_prime(x) == 4).unwrap();
        assert!(!consecutive_power_check(&g, u).unwrap().guaranteed);
        assert!(matches!(
            consecutive_power_check(&g, f.one()),
            Err(CharSumError::DegreeTooLow { .. })
        ));
    }
}
