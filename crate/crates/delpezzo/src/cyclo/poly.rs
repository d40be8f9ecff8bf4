//! Dense univariate polynomials over the rationals.
//!
//! This is internal plumbing for the cyclotomic layer: computing the
//! cyclotomic minimal polynomials `Phi_n` and running extended gcd to
//! invert elements modulo `Phi_n`.  Polynomials are coefficient vectors
//! with no trailing zeros; the zero polynomial is the empty vector.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

pub(crate) type QPoly = Vec<BigRational>;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}

pub(crate) fn trim(p: &mut QPoly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &QPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &QPoly, c: &BigRational) -> QPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Euclidean division: returns `(quotient, remainder)` with
/// `a = q*b + r` and `deg r < deg b`.  Panics if `b` is zero.
pub(crate) fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.clone();
    let mut q: QPoly = Vec::new();
    while r.len() > db || (r.len() == b.len() && !r.is_empty() && db == 0) {
        if r.len() < b.len() {
            break;
        }
        let dr = r.len() - 1;
        let shift = dr - db;
        let coeff = &r[dr] / &lead;
        if q.len() < shift + 1 {
            q.resize(shift + 1, BigRational::zero());
        }
        q[shift] = coeff.clone();
        for (i, cb) in b.iter().enumerate() {
            let t = cb * &coeff;
            r[i + shift] -= t;
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    trim(&mut q);
    (q, r)
}

/// Inverse of `a` modulo `m` via extended Euclid, when `gcd(a, m)` is a
/// nonzero constant.  Returns the representative of degree `< deg m`.
pub(crate) fn inv_mod(a: &QPoly, m: &QPoly) -> Option<QPoly> {
    if a.is_empty() {
        return None;
    }
    let mut r0 = m.clone();
    let mut r1 = {
        let (_, r) = divrem(a, m);
        r
    };
    if r1.is_empty() {
        return None;
    }
    let mut t0: QPoly = Vec::new();
    let mut t1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r2) = divrem(&r0, &r1);
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let inv_gcd = BigRational::one() / r0[0].clone();
    let mut out = scale(&t0, &inv_gcd);
    let (_, out_red) = divrem(&out, m);
    out = out_red;
    Some(out)
}

/// `x^n - 1` as a polynomial.
fn xn_minus_one(n: u32) -> QPoly {
    let mut p = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    p
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Arc<QPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The `n`-th cyclotomic polynomial `Phi_n`, computed by dividing
/// `x^n - 1` by `Phi_d` for every proper divisor `d` of `n`.
pub(crate) fn cyclotomic(n: u32) -> Arc<QPoly> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let result = if n == 1 {
        vec![-BigRational::one(), BigRational::one()]
    } else {
        let mut num = xn_minus_one(n);
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic(d);
                let (q, r) = divrem(&num, &phi_d);
                assert!(r.is_empty(), "cyclotomic division must be exact");
                num = q;
            }
        }
        num
    };
    let arc = Arc::new(result);
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&arc));
    arc
}

/// Euler totient by trial division; conductors in this crate are small.
pub(crate) fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Squarefree part and cofactor: `n = s^2 * m` with `m` squarefree.
/// Returns `(m, s)` for `n >= 1`.
pub(crate) fn squarefree_part(n: u64) -> (u64, u64) {
    let mut m = 1u64;
    let mut s = 1u64;
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e % 2 == 1 {
                m *= p;
            }
            s *= p.pow(e / 2);
        }
        p += 1;
    }
    if n > 1 {
        m *= n;
    }
    (m, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> QPoly {
        let mut p: QPoly = coeffs.iter().map(|&c| rat(c)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn divrem_exact_and_remainder() {
        let a = poly(&[-1, 0, 0, 0, 0, 0, 1]); // x^6 - 1
        let b = poly(&[-1, 1]); // x - 1
        let (q, r) = divrem(&a, &b);
        assert!(r.is_empty());
        assert_eq!(q, poly(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn cyclotomic_small_degrees() {
        assert_eq!(*cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(*cyclotomic(2), poly(&[1, 1]));
        assert_eq!(*cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(*cyclotomic(4), poly(&[1, 0, 1]));
        assert_eq!(*cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(*cyclotomic(8), poly(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_105_has_coefficient_minus_two() {
        // Smallest index where a coefficient other than 0, 1, -1 appears.
        let p = cyclotomic(105);
        assert_eq!(p.len() - 1, 48);
        assert_eq!(p[7], rat(-2));
        assert_eq!(p[41], rat(-2));
    }

    #[test]
    fn inv_mod_cyclotomic() {
        // (1 + x)^{-1} mod Phi_4 = (1 - x)/2 since (1+x)(1-x) = 1 - x^2 = 2 mod x^2+1.
        let m = cyclotomic(4);
        let a = poly(&[1, 1]);
        let inv = inv_mod(&a, &m).unwrap();
        let (_, check) = divrem(&mul(&a, &inv), &m);
        assert_eq!(check, poly(&[1]));
    }

    #[test]
    fn phi_values() {
        let expected = [
            (1u32, 1u32),
            (2, 1),
            (3, 2),
            (4, 2),
            (8, 4),
            (12, 4),
            (105, 48),
            (2520, 576),
        ];
        for (n, phi) in expected {
            assert_eq!(euler_phi(n), phi);
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(1), (1, 1));
        assert_eq!(squarefree_part(4), (1, 2));
        assert_eq!(squarefree_part(18), (2, 3));
        assert_eq!(squarefree_part(360), (10, 6));
    }
}
