//! Exact arithmetic in `F_{q²}` for `q = pⁿ`, `p` odd.
//!
//! Nonzero elements are stored as discrete logarithms to a fixed primitive
//! element `β`. Multiplication, powers, norms and the Frobenius map are then
//! exponent arithmetic, and addition goes through a Zech-logarithm table
//! (`1 + β^k = β^{zech(k)}`), so every field operation is a table lookup.
//!
//! Construction is deterministic: the modulus is the least monic irreducible
//! polynomial of degree `2n` and `β` the least primitive element, where
//! polynomials are compared by the integer `Σ cᵢ pⁱ` of their coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Largest field order built unless overridden through [`FIELD_CAP_ENV`].
pub const DEFAULT_FIELD_CAP: u64 = 1 << 22;
/// Environment variable overriding [`DEFAULT_FIELD_CAP`].
pub const FIELD_CAP_ENV: &str = "GPALEY_FIELD_CAP";

/// The effective table cap: `GPALEY_FIELD_CAP` if set and parseable, else the default.
pub fn field_cap() -> u64 {
    std::env::var(FIELD_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_FIELD_CAP)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("extension degree {0} is not a positive even integer")]
    DegreeOdd(u32),
    #[error("field of order {p}^{degree} exceeds the table cap of {cap} elements")]
    FieldTooLarge { p: u64, degree: u32, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined at zero")]
    ZeroInput,
    #[error("{m} does not divide the multiplicative group order {group_order}")]
    BadModulus { m: u64, group_order: u64 },
    #[error("{d} does not divide the extension degree {degree}")]
    BadDivisor { d: u32, degree: u32 },
}

/// A field element in canonical vertex encoding: `0` is zero and `k + 1` is `β^k`.
///
/// The derived ordering is the canonical vertex order (zero first, then by log).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Element with the given vertex index. No range check against a field.
    pub const fn from_index(index: u32) -> Elem {
        Elem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log to base `β`, `None` for zero.
    pub const fn log(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0 - 1)
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(k) => write!(f, "β^{k}"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(i64),
}

/// Reproducibility record for a field: enough to rebuild identical tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldManifest {
    pub p: u64,
    pub degree: u32,
    /// Monic modulus, coefficients low-to-high.
    pub modulus: Vec<u32>,
    /// Polynomial representation of `β`, coefficients low-to-high.
    pub beta: Vec<u32>,
}

impl fmt::Display for FieldManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "p={} 2n={} modulus=[{}] beta=[{}]",
            self.p,
            self.degree,
            join(&self.modulus),
            join(&self.beta)
        )
    }
}

pub struct Field {
    p: u32,
    degree: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    beta: Vec<u32>,
    /// `exp[k]` is the coefficient code of `β^k`.
    exp: Vec<u32>,
    /// `log[code]` is the exponent of the element with that coefficient code.
    log: Vec<u32>,
    /// `zech[k]` is the vertex encoding of `1 + β^k`.
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("beta", &self.beta)
            .finish_non_exhaustive()
    }
}

impl Field {
    /// Builds `F_{p^degree}` under the cap from [`field_cap`].
    pub fn new(p: u64, degree: u32) -> Result<Field, FieldError> {
        Self::with_cap(p, degree, field_cap())
    }

    /// Builds `F_{q²}` for an odd prime power `q`.
    pub fn for_q(q: u64) -> Result<Field, FieldError> {
        match arith::prime_power(q) {
            Some((p, n)) if p != 2 => Self::new(p, 2 * n),
            Some((p, _)) => Err(FieldError::NotPrime(p)),
            None => Err(FieldError::NotPrime(q)),
        }
    }

    pub fn with_cap(p: u64, degree: u32, cap: u64) -> Result<Field, FieldError> {
        if p == 2 || !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if degree == 0 || degree % 2 == 1 {
            return Err(FieldError::DegreeOdd(degree));
        }
        let too_large = FieldError::FieldTooLarge { p, degree, cap };
        let order = p.checked_pow(degree).ok_or(too_large.clone())?;
        if order > cap || order > u32::MAX as u64 / 2 {
            return Err(too_large);
        }
        let q = arith::integer_sqrt(order);
        let d = degree as usize;

        let modulus = poly::least_irreducible(p, d);
        let beta = poly::least_primitive(p, &modulus, order - 1);

        let n = (order - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u64; d];
        cur[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let code = poly::encode(&cur, p);
            *slot = code;
            log[code as usize] = k as u32;
            cur = poly::mul_mod(&cur, &beta, &modulus, p);
        }
        debug_assert!(log[1..].iter().all(|&l| l != u32::MAX), "exp table not bijective");
        log[0] = 0;

        let pp = p as u32;
        let zech = exp
            .iter()
            .map(|&code| {
                let c0 = code % pp;
                let shifted = code - c0 + (c0 + 1) % pp;
                if shifted == 0 {
                    0
                } else {
                    log[shifted as usize] + 1
                }
            })
            .collect();

        Ok(Field {
            p: p as u32,
            degree,
            q: q as u32,
            order: order as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            beta: beta.iter().map(|&c| c as u32).collect(),
            exp,
            log,
            zech,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The extension degree `2n` over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `n`, so that `q = pⁿ`.
    pub fn n(&self) -> u32 {
        self.degree / 2
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of field elements, `q²`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Multiplicative group order `q² − 1`.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn manifest(&self) -> FieldManifest {
        FieldManifest {
            p: self.p as u64,
            degree: self.degree,
            modulus: self.modulus.clone(),
            beta: self.beta.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn beta(&self) -> Elem {
        self.from_log(1)
    }

    /// `d = β^{q+1}`, a generator of `F_q*` and hence a non-square there.
    pub fn d(&self) -> Elem {
        self.from_log(self.q as u64 + 1)
    }

    /// `α = β^{(q+1)/2}`, so `α² = d` and `α^q = −α`.
    pub fn alpha(&self) -> Elem {
        self.from_log((self.q as u64 + 1) / 2)
    }

    /// `ω = β^{q−1}`, the generator of the norm-one subgroup.
    pub fn omega(&self) -> Elem {
        self.from_log(self.q as u64 - 1)
    }

    pub fn from_log(&self, k: u64) -> Elem {
        Elem((k % self.group_order() as u64) as u32 + 1)
    }

    /// All elements in canonical vertex order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.order).map(Elem)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        let code = k.rem_euclid(self.p as i64) as u32;
        self.from_code(code)
    }

    /// Element with the given polynomial coefficients (low-to-high, reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        assert!(coeffs.len() <= self.degree as usize, "too many coefficients");
        let code = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + (c % self.p) as u64);
        self.from_code(code as u32)
    }

    /// Polynomial coefficients (low-to-high, length `2n`).
    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let mut code = self.code(x);
        (0..self.degree)
            .map(|_| {
                let c = code % self.p;
                code /= self.p;
                c
            })
            .collect()
    }

    fn code(&self, x: Elem) -> u32 {
        match x.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    fn from_code(&self, code: u32) -> Elem {
        if code == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[code as usize] + 1)
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (la, lb) = match (a.log(), b.log()) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(la), Some(lb)) => (la, lb),
        };
        let n = self.group_order();
        let diff = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[diff as usize];
        if z == 0 {
            Elem::ZERO
        } else {
            let s = la as u64 + (z - 1) as u64;
            Elem((s % n as u64) as u32 + 1)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match a.log() {
            None => Elem::ZERO,
            Some(k) => {
                let n = self.group_order();
                Elem((k + n / 2) % n + 1)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match (a.log(), b.log()) {
            (Some(la), Some(lb)) => {
                let s = la as u64 + lb as u64;
                Elem((s % self.group_order() as u64) as u32 + 1)
            }
            _ => Elem::ZERO,
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        let k = a.log().ok_or(FieldError::DivisionByZero)?;
        let n = self.group_order();
        Ok(Elem((n - k) % n + 1))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; negative exponents invert, `0^0 = 1`.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem, FieldError> {
        match a.log() {
            None if k > 0 => Ok(Elem::ZERO),
            None if k == 0 => Ok(Elem::ONE),
            None => Err(FieldError::DivisionByZero),
            Some(la) => {
                let n = self.group_order() as i128;
                let e = (la as i128 * k as i128).rem_euclid(n);
                Ok(Elem(e as u32 + 1))
            }
        }
    }

    pub fn arith(&self, op: ArithOp, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow(k) => self.pow(a, k),
        }
    }

    /// The relative norm `N(x) = x^{q+1}` onto `F_q*`.
    pub fn norm(&self, x: Elem) -> Result<Elem, FieldError> {
        let k = x.log().ok_or(FieldError::ZeroInput)?;
        Ok(self.from_log(k as u64 * (self.q as u64 + 1)))
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.frobenius_pow(x, self.n())
    }

    /// `x ↦ x^{p^e}`.
    pub fn frobenius_pow(&self, x: Elem, e: u32) -> Elem {
        match x.log() {
            None => Elem::ZERO,
            Some(k) => {
                let n = self.group_order() as u64;
                let mut pe = 1u64;
                for _ in 0..e {
                    pe = pe * self.p as u64 % n;
                }
                self.from_log(k as u64 * pe)
            }
        }
    }

    /// Whether `x` lies in `(F_{q²}*)^m`.
    pub fn is_mth_power(&self, x: Elem, m: u32) -> Result<bool, FieldError> {
        if m == 0 || self.group_order() % m != 0 {
            return Err(FieldError::BadModulus {
                m: m as u64,
                group_order: self.group_order() as u64,
            });
        }
        let k = x.log().ok_or(FieldError::ZeroInput)?;
        Ok(k % m == 0)
    }

    /// The subfield `F_{p^d}` as a sorted list.
    pub fn subfield(&self, d: u32) -> Result<Vec<Elem>, FieldError> {
        let step = self.subfield_step(d)?;
        let mut out = vec![Elem::ZERO];
        out.extend((0..self.group_order()).step_by(step as usize).map(|k| Elem(k + 1)));
        Ok(out)
    }

    pub fn in_subfield(&self, x: Elem, d: u32) -> Result<bool, FieldError> {
        let step = self.subfield_step(d)?;
        Ok(x.log().map_or(true, |k| k % step == 0))
    }

    fn subfield_step(&self, d: u32) -> Result<u32, FieldError> {
        if d == 0 || self.degree % d != 0 {
            return Err(FieldError::BadDivisor { d, degree: self.degree });
        }
        let size = (self.p as u64).pow(d);
        Ok((self.group_order() as u64 / (size - 1)) as u32)
    }

    /// Degree of `x` over the prime field: the least `d` with `x ∈ F_{p^d}`.
    pub fn degree_over_prime(&self, x: Elem) -> u32 {
        arith::divisors(self.degree as u64)
            .into_iter()
            .map(|d| d as u32)
            .find(|&d| self.in_subfield(x, d).unwrap_or(false))
            .unwrap_or(self.degree)
    }

    pub fn is_in_fq(&self, x: Elem) -> bool {
        x.log().map_or(true, |k| k % (self.q + 1) == 0)
    }

    /// Position of `x` in the canonical listing of `F_q` (0, then by log), if `x ∈ F_q`.
    pub fn fq_index(&self, x: Elem) -> Option<u32> {
        match x.log() {
            None => Some(0),
            Some(k) if k % (self.q + 1) == 0 => Some(k / (self.q + 1) + 1),
            Some(_) => None,
        }
    }

    /// Inverse of [`Field::fq_index`].
    pub fn fq_element(&self, index: u32) -> Elem {
        assert!(index < self.q, "F_q index out of range");
        if index == 0 {
            Elem::ZERO
        } else {
            self.from_log((index as u64 - 1) * (self.q as u64 + 1))
        }
    }

    /// `F_q` in canonical order.
    pub fn fq_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(|i| self.fq_element(i))
    }

    /// Coordinates `(x, y) ∈ F_q²` with `γ = x + yα`.
    pub fn fq_coords(&self, g: Elem) -> (Elem, Elem) {
        let conj = self.frobenius(g);
        let half = self.inv(self.from_int(2)).expect("p is odd");
        let x = self.mul(self.add(g, conj), half);
        let two_alpha = self.mul(self.from_int(2), self.alpha());
        let y = self.div(self.sub(g, conj), two_alpha).expect("α is nonzero");
        (x, y)
    }

    /// `x + yα`.
    pub fn from_fq_coords(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.mul(y, self.alpha()))
    }
}

/// Dense polynomial helpers over `F_p`, used only while building tables.
mod poly {
    /// Coefficients low-to-high, no trailing zeros (zero polynomial is empty).
    type Poly = Vec<u64>;

    fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    pub fn encode(a: &[u64], p: u64) -> u32 {
        a.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }

    fn decode(mut code: u64, p: u64, len: usize) -> Poly {
        let mut out: Poly = (0..len)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `f` (`f` nonzero).
    fn rem(a: &[u64], f: &[u64], p: u64) -> Poly {
        let mut r: Poly = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let factor = r[top] * lead_inv % p;
            let shift = top - df;
            for (i, &fc) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - factor * fc % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// `a · b mod f`, result padded to `deg f` coefficients.
    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
        let df = f.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &ac) in a.iter().enumerate() {
            if ac == 0 {
                continue;
            }
            for (j, &bc) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ac * bc) % p;
            }
        }
        let mut r = rem(&prod, f, p);
        r.resize(df, 0);
        r
    }

    fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Poly {
        let df = f.len() - 1;
        let mut result = vec![0u64; df];
        result[0] = 1;
        let mut b = rem(base, f, p);
        b.resize(df, 0);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        result
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
        let mut a: Poly = a.to_vec();
        let mut b: Poly = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let len = a.len().max(b.len());
        let mut out: Poly = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Rabin's test for a monic `f` of degree `d`.
    fn is_irreducible(f: &[u64], p: u64, d: usize) -> bool {
        let x: Poly = vec![0, 1];
        // frob[k] = x^{p^k} mod f
        let mut frob = vec![rem(&x, f, p)];
        for k in 1..=d {
            let next = pow_mod(&frob[k - 1], p, f, p);
            frob.push(next);
        }
        if !sub(&frob[d], &x, p).is_empty() {
            return false;
        }
        crate::arith::prime_factors(d as u64).into_iter().all(|r| {
            let h = sub(&frob[d / r as usize], &x, p);
            let g = gcd(f, &h, p);
            g.len() == 1
        })
    }

    /// Least monic irreducible polynomial of degree `d`, ordered by coefficient code.
    pub fn least_irreducible(p: u64, d: usize) -> Poly {
        let total = p.pow(d as u32);
        (0..total)
            .map(|code| {
                let mut f = decode(code, p, d);
                f.resize(d, 0);
                f.push(1);
                f
            })
            .find(|f| f[0] != 0 && is_irreducible(f, p, d))
            .expect("an irreducible polynomial of every degree exists")
    }

    /// Least element of order `group_order` in `F_p[x]/(f)`, padded to `deg f`.
    pub fn least_primitive(p: u64, f: &[u64], group_order: u64) -> Poly {
        let d = f.len() - 1;
        let factors = crate::arith::prime_factors(group_order);
        (1..p.pow(d as u32))
            .map(|code| {
                let mut g = decode(code, p, d);
                g.resize(d, 0);
                g
            })
            .find(|g| {
                factors.iter().all(|&r| {
                    let h = pow_mod(g, group_order / r, f, p);
                    !(h[0] == 1 && h[1..].iter().all(|&c| c == 0))
                })
            })
            .expect("the multiplicative group is cyclic")
    }
}
