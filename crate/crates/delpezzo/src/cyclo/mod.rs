//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNum`] is a rational-coefficient vector in the power basis
//! `1, zeta, ..., zeta^{phi(N)-1}` of `Q(zeta_N)`, reduced modulo the
//! cyclotomic polynomial `Phi_N`.  Mixed-conductor arithmetic promotes
//! both operands to the least common multiple of their conductors, so
//! values from different fields combine transparently.
//!
//! The module also provides:
//!
//! * exact square roots of rationals (Gauss sums) and of values of the
//!   shape rational times root of unity,
//! * recognition of roots of unity and multiplicative orders,
//! * scalar `m`-th roots of the shape `rational * sqrt(squarefree) *
//!   root of unity`, used to rescale projective matrices to finite
//!   multiplicative order,
//! * exact linear algebra over any field type ([`matrix`]),
//! * quadratic extension towers for coordinates that genuinely leave
//!   the cyclotomic base field ([`ext`]),
//! * a parser for scalar literals such as `zeta(8)^3`, `1/2*sqrt3`, `-i`
//!   ([`parse`]).

pub mod ext;
pub mod matrix;
pub mod parse;
mod poly;

pub use ext::ExtElem;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

pub(crate) use poly::{euler_phi, squarefree_part};

/// Largest conductor accepted when constructing roots of unity or
/// radicals.  Work above this bound is refused rather than attempted.
pub const CONDUCTOR_LIMIT: u32 = 10_000;

/// Hard cap on conductors produced by arithmetic promotion.  Exceeding
/// it indicates runaway mixing of unrelated fields and is a bug in the
/// caller, so arithmetic panics instead of limping on.
const CONDUCTOR_PANIC: u64 = 500_000;

/// Errors from cyclotomic construction and scalar normalization.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor {0} exceeds the supported limit {CONDUCTOR_LIMIT}")]
    ConductorTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar is not of the shape rational * sqrt(squarefree) * root of unity: {0}")]
    NotDecomposable(String),
    #[error("no scalar {m}-th root of {value} of the supported shape exists")]
    ObstructedRoot { m: u32, value: String },
    #[error("invalid scalar literal: {0}")]
    BadLiteral(String),
}

/// Per-conductor tables: the minimal polynomial and every power of
/// `zeta` reduced to the power basis.
struct Cyclotomy {
    phi: usize,
    /// `monomial[j]` is `zeta^j` in the power basis, for `0 <= j < n`.
    monomial: Vec<Vec<BigRational>>,
}

static CYCLOTOMY_CACHE: Lazy<RwLock<HashMap<u32, Arc<Cyclotomy>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn cyclotomy(n: u32) -> Arc<Cyclotomy> {
    if let Some(c) = CYCLOTOMY_CACHE.read().unwrap().get(&n) {
        return Arc::clone(c);
    }
    let phi = euler_phi(n) as usize;
    let min_poly = poly::cyclotomic(n);
    // Build zeta^j iteratively: multiply by zeta and reduce the degree-phi
    // overflow using the monic relation zeta^phi = -(Phi_n - x^phi).
    let mut monomial = Vec::with_capacity(n as usize);
    let mut cur = vec![BigRational::zero(); phi];
    cur[0] = BigRational::one();
    monomial.push(cur.clone());
    for _ in 1..n {
        let overflow = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigRational::zero();
        if !overflow.is_zero() {
            for i in 0..phi {
                let t = &min_poly[i] * &overflow;
                cur[i] -= t;
            }
        }
        monomial.push(cur.clone());
    }
    let arc = Arc::new(Cyclotomy { phi, monomial });
    CYCLOTOMY_CACHE.write().unwrap().insert(n, Arc::clone(&arc));
    arc
}

/// Sorted list of the positive divisors of `n`.
pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// An exact element of a cyclotomic field, tagged with its conductor.
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    c: Vec<BigRational>,
}

impl CycNum {
    /// Zero, in the rational field.
    pub fn zero() -> Self {
        CycNum {
            n: 1,
            c: vec![BigRational::zero()],
        }
    }

    /// One, in the rational field.
    pub fn one() -> Self {
        CycNum {
            n: 1,
            c: vec![BigRational::one()],
        }
    }

    pub fn from_int(v: i64) -> Self {
        CycNum {
            n: 1,
            c: vec![BigRational::from_integer(BigInt::from(v))],
        }
    }

    pub fn from_rat(q: BigRational) -> Self {
        CycNum { n: 1, c: vec![q] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        CycNum {
            n: 1,
            c: vec![BigRational::new(BigInt::from(num), BigInt::from(den))],
        }
    }

    /// The primitive `n`-th root of unity `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(n: u32) -> Result<Self, CycError> {
        Self::zeta_pow(n, 1)
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self, CycError> {
        if n == 0 || n as u64 > CONDUCTOR_LIMIT as u64 {
            return Err(CycError::ConductorTooLarge(n as u64));
        }
        let cy = cyclotomy(n);
        let j = k.rem_euclid(n as i64) as usize;
        Ok(CycNum {
            n,
            c: cy.monomial[j].clone(),
        })
    }

    /// The imaginary unit `i = zeta_4`.
    pub fn i() -> Self {
        Self::zeta(4).expect("conductor 4 is always valid")
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// Returns the value as a rational if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.denom().is_one() {
            q.numer().to_i64()
        } else {
            None
        }
    }

    /// Re-expresses the value in `Q(zeta_m)`; `m` must be a multiple of
    /// the current conductor.
    pub fn promote(&self, m: u32) -> CycNum {
        assert!(
            m % self.n == 0,
            "promotion target {m} is not a multiple of conductor {}",
            self.n
        );
        if m == self.n {
            return self.clone();
        }
        let cy = cyclotomy(m);
        let step = (m / self.n) as usize;
        let mut c = vec![BigRational::zero(); cy.phi];
        for (i, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let row = &cy.monomial[(i * step) % m as usize];
            for (j, base) in row.iter().enumerate() {
                if !base.is_zero() {
                    c[j] += coeff * base;
                }
            }
        }
        CycNum { n: m, c }
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let l = (a.n as u64).lcm(&(b.n as u64));
        assert!(
            l <= CONDUCTOR_PANIC,
            "conductor blow-up: lcm({}, {}) = {l}",
            a.n,
            b.n
        );
        let l = l as u32;
        (a.promote(l), b.promote(l))
    }

    fn add_impl(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = Self::common(self, other);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x += y;
        }
        a
    }

    fn sub_impl(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = Self::common(self, other);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x -= y;
        }
        a
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        let (a, b) = Self::common(self, other);
        let n = a.n as usize;
        let cy = cyclotomy(a.n);
        let phi = cy.phi;
        // Convolve, then fold exponents >= phi through the monomial table.
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, ca) in a.c.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.c.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                conv[i + j] += ca * cb;
            }
        }
        let mut c = vec![BigRational::zero(); phi];
        for (e, coeff) in conv.into_iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if e < phi {
                c[e] += coeff;
            } else {
                let row = &cy.monomial[e % n];
                for (j, base) in row.iter().enumerate() {
                    if !base.is_zero() {
                        c[j] += &coeff * base;
                    }
                }
            }
        }
        CycNum { n: a.n, c }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum {
                n: self.n,
                c: {
                    let mut c = vec![BigRational::zero(); self.c.len()];
                    c[0] = BigRational::one() / q;
                    c
                },
            });
        }
        let phi_n = poly::cyclotomic(self.n);
        let mut a = self.c.clone();
        poly::trim(&mut a);
        let inv = poly::inv_mod(&a, &phi_n).ok_or(CycError::DivisionByZero)?;
        let mut c = inv;
        c.resize(self.c.len(), BigRational::zero());
        Ok(CycNum { n: self.n, c })
    }

    /// `self^k` for any integer `k`; negative exponents invert first and
    /// panic on zero.
    pub fn pow(&self, k: i64) -> CycNum {
        if k == 0 {
            return CycNum::one();
        }
        let base = if k < 0 {
            self.inv().expect("pow of zero with negative exponent")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_impl(&sq);
            }
        }
        acc
    }

    /// Applies the Galois automorphism `zeta -> zeta^j`; requires
    /// `gcd(j, n) = 1`.
    pub fn galois(&self, j: u32) -> CycNum {
        let n = self.n;
        let j = j % n;
        assert!(
            (j as u64).gcd(&(n as u64)) == 1,
            "galois exponent {j} not coprime to conductor {n}"
        );
        if j == 1 || n == 1 {
            return self.clone();
        }
        let cy = cyclotomy(n);
        let mut c = vec![BigRational::zero(); cy.phi];
        for (i, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let row = &cy.monomial[(i * j as usize) % n as usize];
            for (k, base) in row.iter().enumerate() {
                if !base.is_zero() {
                    c[k] += coeff * base;
                }
            }
        }
        CycNum { n, c }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CycNum {
        if self.n <= 2 {
            self.clone()
        } else {
            self.galois(self.n - 1)
        }
    }

    /// True if fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The multiplicative order, if this is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let m = if self.n % 2 == 1 { 2 * self.n } else { self.n };
        if !self.pow(m as i64).is_one() {
            return None;
        }
        divisors(m).into_iter().find(|&d| self.pow(d as i64).is_one())
    }

    /// Writes the value as a primitive root of unity `zeta_m^e` with
    /// `gcd(e, m) = 1`, if it is one.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        let m = self.multiplicative_order()?;
        if m == 1 {
            return Some((1, 0));
        }
        let z = CycNum::zeta(m).ok()?;
        let mut p = CycNum::one();
        for e in 0..m {
            if e > 0 {
                p = p.mul_impl(&z);
            }
            if p == *self {
                return Some((m, e));
            }
        }
        None
    }

    /// Finds the smallest conductor representation of this value by
    /// testing Galois descent to each divisor of the conductor.
    pub fn reduced(&self) -> CycNum {
        if self.as_rational().is_some() {
            return CycNum {
                n: 1,
                c: vec![self.c[0].clone()],
            };
        }
        let n = self.n;
        for d in divisors(n) {
            if d == n {
                break;
            }
            if d < 3 {
                continue;
            }
            // Fixed by every Galois element that is trivial on Q(zeta_d)?
            let fixed = (1..n)
                .filter(|j| j % d == 1 && (*j as u64).gcd(&(n as u64)) == 1)
                .all(|j| self.galois(j) == *self);
            if !fixed {
                continue;
            }
            if let Some(y) = self.descend_to(d) {
                return y;
            }
        }
        self.clone()
    }

    /// Solves for a representation at conductor `d` (a divisor of the
    /// current conductor), if the value lies in `Q(zeta_d)`.
    fn descend_to(&self, d: u32) -> Option<CycNum> {
        let phi_d = euler_phi(d) as usize;
        // Columns: embeddings of zeta_d^i; solve the linear system.
        let cols: Vec<CycNum> = (0..phi_d)
            .map(|i| {
                CycNum::zeta_pow(d, i as i64)
                    .expect("divisor conductor is valid")
                    .promote(self.n)
            })
            .collect();
        let rows = self.c.len();
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    cols.iter().map(|col| col.c[r].clone()).collect();
                row.push(self.c[r].clone());
                row
            })
            .collect();
        // Gaussian elimination on a (rows x phi_d+1) rational system.
        let mut pivot_row = 0usize;
        let mut pivots = Vec::new();
        for col in 0..phi_d {
            let Some(pr) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, pr);
            let inv = BigRational::one() / aug[pivot_row][col].clone();
            for x in aug[pivot_row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..=phi_d {
                        let t = &aug[pivot_row][c] * &f;
                        aug[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
        // Consistency: rows below the pivots must have zero RHS.
        for r in pivot_row..rows {
            if !aug[r][phi_d].is_zero() {
                return None;
            }
        }
        let mut c = vec![BigRational::zero(); phi_d];
        for (k, &col) in pivots.iter().enumerate() {
            c[col] = aug[k][phi_d].clone();
        }
        Some(CycNum { n: d, c })
    }

    /// Raw power-basis coefficients.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let (a, b) = Self::common(self, other);
        a.c == b.c
    }
}

impl Eq for CycNum {}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$impl_fn(&rhs)
            }
        }
        impl std::ops::$trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$impl_fn(rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);
impl_binop!(Mul, mul, mul_impl);

impl std::ops::Div for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self.mul_impl(&rhs.inv().expect("division by zero"))
    }
}

impl std::ops::Div for CycNum {
    type Output = CycNum;
    fn div(self, rhs: CycNum) -> CycNum {
        (&self).div(&rhs)
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl std::ops::Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit_coeff {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "z{}", self.n)?;
                } else {
                    write!(f, "z{}^{}", self.n, i)?;
                }
            }
        }
        Ok(())
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.reduced().to_string())
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
fn legendre(a: u64, p: u64) -> i32 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else if result == p - 1 {
        -1
    } else {
        0
    }
}

/// Exact square root of an odd prime via the quadratic Gauss sum.
fn gauss_sqrt_prime(p: u64) -> Result<CycNum, CycError> {
    if p == 2 {
        let z = CycNum::zeta(8)?;
        return Ok(&z + &z.pow(-1));
    }
    if p as u64 > CONDUCTOR_LIMIT as u64 {
        return Err(CycError::ConductorTooLarge(p));
    }
    let mut g = CycNum::zero();
    for a in 1..p {
        let term = CycNum::zeta_pow(p as u32, a as i64)?;
        match legendre(a, p) {
            1 => g = &g + &term,
            -1 => g = &g - &term,
            _ => unreachable!("a < p is coprime to prime p"),
        }
    }
    if p % 4 == 1 {
        Ok(g)
    } else {
        // g = i * sqrt(p) when p = 3 mod 4.
        Ok(&g * &CycNum::i().pow(-1))
    }
}

/// Largest conductor of a quadratic field whose square roots are
/// expanded into exact Gauss sums by [`sqrt_cyc`].  Beyond this bound
/// the root is kept as a formal radicand: the exact expansion would be
/// correct but forces every later operation into a huge cyclotomic
/// field.
const SQRT_EXACT_CONDUCTOR_LIMIT: u64 = 40;

/// Conductor of `Q(sqrt(d))` for `d = (-1 if negative) * m` with `m`
/// squarefree and positive.
fn quadratic_conductor(m: u64, negative: bool) -> u64 {
    let mut n: u64 = if negative { 4 } else { 1 };
    let mut rest = m;
    if rest % 2 == 0 {
        n = n.lcm(&8);
        rest /= 2;
    }
    let mut p = 3u64;
    while p * p <= rest {
        if rest % p == 0 {
            n = n.lcm(&(if p % 4 == 1 { p } else { 4 * p }));
            rest /= p;
        }
        p += 2;
    }
    if rest > 1 {
        n = n.lcm(&(if rest % 4 == 1 { rest } else { 4 * rest }));
    }
    n
}

/// Exact square root of a rational, but only when the quadratic field
/// it generates has conductor at most the expansion bound.
fn sqrt_rational_bounded(q: &BigRational) -> Option<CycNum> {
    if q.is_zero() {
        return Some(CycNum::zero());
    }
    let aq = q.abs();
    let num = aq.numer().to_u64()?;
    let den = aq.denom().to_u64()?;
    let (m, _) = squarefree_part(num.checked_mul(den)?);
    if quadratic_conductor(m, q.is_negative()) > SQRT_EXACT_CONDUCTOR_LIMIT {
        return None;
    }
    sqrt_rational(q).ok()
}

/// Exact square root of a rational number as a cyclotomic value.
/// Always exists; errors only when the required conductor is too large.
pub fn sqrt_rational(q: &BigRational) -> Result<CycNum, CycError> {
    if q.is_zero() {
        return Ok(CycNum::zero());
    }
    let negative = q.is_negative();
    let aq = q.abs();
    let num = aq.numer().to_u64().ok_or_else(|| {
        CycError::NotDecomposable(format!("rational {q} too large for radical extraction"))
    })?;
    let den = aq.denom().to_u64().ok_or_else(|| {
        CycError::NotDecomposable(format!("rational {q} too large for radical extraction"))
    })?;
    // sqrt(num/den) = sqrt(num*den)/den.
    let nd = num.checked_mul(den).ok_or_else(|| {
        CycError::NotDecomposable(format!("rational {q} too large for radical extraction"))
    })?;
    let (m, s) = squarefree_part(nd);
    let mut root = CycNum::from_rat(BigRational::new(BigInt::from(s), BigInt::from(den)));
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            root = &root * &gauss_sqrt_prime(p)?;
            rest /= p;
        }
        p += 1;
    }
    if rest > 1 {
        root = &root * &gauss_sqrt_prime(rest)?;
    }
    if negative {
        root = &root * &CycNum::i();
    }
    Ok(root)
}

/// `sqrt(k)` for an integer `k`.
pub fn sqrt_int(k: i64) -> Result<CycNum, CycError> {
    sqrt_rational(&BigRational::from_integer(BigInt::from(k)))
}

/// Outcome of an exact square-root attempt.
pub enum SqrtOutcome {
    /// The root lies in a cyclotomic field and is returned exactly.
    Exact(CycNum),
    /// No cyclotomic root of the supported shape; the input equals
    /// `scale^2 * radicand`, so the root is `scale * sqrt(radicand)`
    /// with the canonicalized radicand adjoined.
    Radical { scale: CycNum, radicand: CycNum },
}

/// Tries to take an exact cyclotomic square root of `x`.  Succeeds for
/// rationals and for values of the shape rational times root of unity,
/// as long as the root lives in a cyclotomic field of small conductor;
/// everything else is reported as a radicand to adjoin, with square
/// rational content split off into the scale.  Roots that would need a
/// large conductor are deliberately kept formal: they are exact either
/// way, and the formal representation keeps later arithmetic in small
/// fields.
pub fn sqrt_cyc(x: &CycNum) -> SqrtOutcome {
    if x.is_zero() {
        return SqrtOutcome::Exact(CycNum::zero());
    }
    if let Some(q) = x.as_rational() {
        if let Some(r) = sqrt_rational_bounded(&q) {
            return SqrtOutcome::Exact(r);
        }
    } else if let Some((q, m0, u)) = split_unit_scalar(x) {
        if m0 == 1 {
            // x = q * u with u a root of unity.
            let (k, e) = u;
            if let (Some(root_q), Ok(root_u)) =
                (sqrt_rational_bounded(&q), CycNum::zeta_pow(2 * k, e as i64))
            {
                return SqrtOutcome::Exact(&root_q * &root_u);
            }
        }
    }
    let (radicand, scale) = canonical_radicand(x);
    SqrtOutcome::Radical { scale, radicand }
}

/// Divides detectable square rational content out of a radicand so that
/// equal adjunctions compare equal.  Returns `(radicand, scale)` with
/// the input equal to `scale^2 * radicand`.
fn canonical_radicand(x: &CycNum) -> (CycNum, CycNum) {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in x.coeffs() {
        if c.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return (x.clone(), CycNum::one());
    }
    let content = BigRational::new(num_gcd, den_lcm);
    // content = s^2 * m with m squarefree: divide s^2 out.
    let (Some(n), Some(d)) = (content.numer().to_u64(), content.denom().to_u64()) else {
        return (x.clone(), CycNum::one());
    };
    let (_, sn) = squarefree_part(n);
    let (_, sd) = squarefree_part(d);
    let scale = BigRational::new(BigInt::from(sn), BigInt::from(sd));
    let square = &scale * &scale;
    (
        x * &CycNum::from_rat(BigRational::one() / square),
        CycNum::from_rat(scale),
    )
}

/// Decomposes `x = q * sqrt(m0) * u` with `q` rational positive, `m0`
/// squarefree, and `u` a root of unity given as `(order, exponent)`.
/// Returns `None` if `x` is not of this shape.
fn split_unit_scalar(x: &CycNum) -> Option<(BigRational, u64, (u32, u32))> {
    if x.is_zero() {
        return None;
    }
    let w = x * &x.conj();
    let w = w.as_rational()?;
    debug_assert!(w.is_positive());
    let a = w.numer().to_u64()?;
    let b = w.denom().to_u64()?;
    let (m0, s) = squarefree_part(a.checked_mul(b)?);
    if quadratic_conductor(m0, false) > SQRT_EXACT_CONDUCTOR_LIMIT {
        return None;
    }
    // sqrt(w) = (s/b) * sqrt(m0).
    let q = BigRational::new(BigInt::from(s), BigInt::from(b));
    let root_w = &CycNum::from_rat(q.clone()) * &sqrt_rational(&BigRational::from_integer(BigInt::from(m0))).ok()?;
    let u = x / &root_w;
    let (k, e) = u.as_root_of_unity()?;
    Some((q, m0, (k, e)))
}

fn rational_nth_root(q: &BigRational, m: u32) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let rn = q.numer().nth_root(m);
    let rd = q.denom().nth_root(m);
    let candidate = BigRational::new(rn, rd);
    let mut p = BigRational::one();
    for _ in 0..m {
        p *= &candidate;
    }
    if p == *q {
        Some(candidate)
    } else {
        None
    }
}

fn squarefree_divisors(n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    let mut out = vec![1u64];
    for p in primes {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] * p);
        }
    }
    out.sort_unstable();
    out
}

/// Finds a scalar `lambda` with `lambda^m = c`, searching over values of
/// the shape `rational * sqrt(squarefree) * root of unity`.  This is the
/// normalization step that turns a matrix of finite projective order
/// into one of finite multiplicative order.
pub fn nth_root_unit_scalar(c: &CycNum, m: u32) -> Result<CycNum, CycError> {
    assert!(m >= 1);
    if c.is_zero() {
        return Ok(CycNum::zero());
    }
    if m == 1 || c.is_one() {
        if c.is_one() {
            return Ok(CycNum::one());
        }
        return Ok(c.clone());
    }
    let (q, m0, (k, e)) = split_unit_scalar(c)
        .ok_or_else(|| CycError::NotDecomposable(format!("{c}")))?;
    // c = q * sqrt(m0) * zeta_k^e.
    let zeta_root = CycNum::zeta_pow(k * m, e as i64)?;
    if m % 2 == 1 {
        // lambda = a * sqrt(m0) * zeta, with a^m * m0^{(m-1)/2} = q.
        let t = BigRational::from_integer(BigInt::from(m0).pow((m - 1) / 2));
        let a = rational_nth_root(&(q / t), m).ok_or(CycError::ObstructedRoot {
            m,
            value: format!("{c}"),
        })?;
        let root_m0 = sqrt_rational(&BigRational::from_integer(BigInt::from(m0)))?;
        return Ok(&(&CycNum::from_rat(a) * &root_m0) * &zeta_root);
    }
    // m even: lambda = a * sqrt(d) * zeta gives |lambda^m| rational, so
    // a genuine sqrt(m0) factor in c is an obstruction.
    if m0 != 1 {
        return Err(CycError::ObstructedRoot {
            m,
            value: format!("{c}"),
        });
    }
    let qn = q.numer().to_u64().ok_or_else(|| CycError::NotDecomposable(format!("{c}")))?;
    let qd = q.denom().to_u64().ok_or_else(|| CycError::NotDecomposable(format!("{c}")))?;
    for d in squarefree_divisors(qn.saturating_mul(qd)) {
        if quadratic_conductor(d, false) > SQRT_EXACT_CONDUCTOR_LIMIT {
            continue;
        }
        let dp = BigRational::from_integer(BigInt::from(d).pow(m / 2));
        let target = &q / dp;
        if let Some(a) = rational_nth_root(&target, m) {
            let root_d = sqrt_rational(&BigRational::from_integer(BigInt::from(d)))?;
            return Ok(&(&CycNum::from_rat(a) * &root_d) * &zeta_root);
        }
    }
    Err(CycError::ObstructedRoot {
        m,
        value: format!("{c}"),
    })
}
