//! Quadratic extension towers over a cyclotomic base field.
//!
//! Fixed-point coordinates occasionally need a square root that does not
//! exist in any cyclotomic field (the radicand itself is irrational).
//! An [`ExtElem`] is an element of `Q(zeta_N)(sqrt(u), sqrt(v))` with at
//! most two adjoined radicands, stored as coefficients over the basis
//! `1, sqrt(u), sqrt(v), sqrt(u)sqrt(v)` indexed by bitmask.  Radicands
//! are always plain cyclotomic values, never nested radicals, and are
//! kept in a canonical order so equal towers compare equal.

use super::matrix::Field;
use super::CycNum;
use std::fmt;

/// Element of a quadratic extension tower over the cyclotomic numbers.
#[derive(Clone, Debug)]
pub struct ExtElem {
    /// Adjoined radicands, canonically ordered, each a non-square.
    rads: Vec<CycNum>,
    /// `2^rads.len()` coefficients; bit `k` of the index selects the
    /// factor `sqrt(rads[k])`.
    c: Vec<CycNum>,
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        let a = self.trimmed();
        let b = other.trimmed();
        if a.rads == b.rads {
            return a.c == b.c;
        }
        // Distinct radical content after trimming: unify if possible.
        let mut union = a.rads.clone();
        for r in &b.rads {
            if !union.contains(r) {
                union.push(r.clone());
            }
        }
        if union.len() > 2 {
            return false;
        }
        union.sort_by_key(rad_key);
        a.lift(&union).c == b.lift(&union).c
    }
}

impl Eq for ExtElem {}

fn rad_key(r: &CycNum) -> String {
    r.reduced().to_string()
}

impl ExtElem {
    pub fn from_cyc(x: CycNum) -> Self {
        ExtElem {
            rads: Vec::new(),
            c: vec![x],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_cyc(CycNum::from_int(v))
    }

    /// The formal square root of `rad` (which must not be an exact
    /// square the caller could have taken instead).
    pub fn sqrt_radicand(rad: CycNum) -> Self {
        ExtElem {
            rads: vec![rad],
            c: vec![CycNum::zero(), CycNum::one()],
        }
    }

    pub fn radicands(&self) -> &[CycNum] {
        &self.rads
    }

    /// Returns the underlying cyclotomic value when no radical
    /// components are present.
    pub fn as_cyc(&self) -> Option<CycNum> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Drops radicands whose components are identically zero, so that
    /// values landing back in a smaller field compare equal to it.
    fn trimmed(&self) -> ExtElem {
        let mut keep = Vec::new();
        for (bit, _) in self.rads.iter().enumerate() {
            let used = self
                .c
                .iter()
                .enumerate()
                .any(|(mask, x)| mask & (1 << bit) != 0 && !x.is_zero());
            if used {
                keep.push(bit);
            }
        }
        if keep.len() == self.rads.len() {
            return self.clone();
        }
        let rads: Vec<CycNum> = keep.iter().map(|&b| self.rads[b].clone()).collect();
        let mut c = vec![CycNum::zero(); 1 << rads.len()];
        for (mask, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut new_mask = 0usize;
            for (new_bit, &old_bit) in keep.iter().enumerate() {
                if mask & (1 << old_bit) != 0 {
                    new_mask |= 1 << new_bit;
                }
            }
            c[new_mask] = &c[new_mask] + x;
        }
        ExtElem { rads, c }
    }

    /// Lifts into a tower with radicand set `target` (a superset of the
    /// current radicands, canonically ordered).
    fn lift(&self, target: &[CycNum]) -> ExtElem {
        if self.rads == target {
            return self.clone();
        }
        let mut posn = Vec::with_capacity(self.rads.len());
        for r in &self.rads {
            let p = target
                .iter()
                .position(|t| t == r)
                .expect("lift target must contain all current radicands");
            posn.push(p);
        }
        let mut c = vec![CycNum::zero(); 1 << target.len()];
        for (mask, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut new_mask = 0usize;
            for (bit, &p) in posn.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    new_mask |= 1 << p;
                }
            }
            c[new_mask] = &c[new_mask] + coeff;
        }
        ExtElem {
            rads: target.to_vec(),
            c,
        }
    }

    fn unify(a: &ExtElem, b: &ExtElem) -> (ExtElem, ExtElem) {
        if a.rads == b.rads {
            return (a.clone(), b.clone());
        }
        let mut rads = a.rads.clone();
        for r in &b.rads {
            if !rads.contains(r) {
                rads.push(r.clone());
            }
        }
        assert!(
            rads.len() <= 2,
            "extension tower limited to two radicands, got {}",
            rads.len()
        );
        rads.sort_by_key(rad_key);
        (a.lift(&rads), b.lift(&rads))
    }

    fn add_impl(&self, o: &Self) -> Self {
        let (mut a, b) = Self::unify(self, o);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x = &*x + y;
        }
        a
    }

    fn sub_impl(&self, o: &Self) -> Self {
        let (mut a, b) = Self::unify(self, o);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x = &*x - y;
        }
        a
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let (a, b) = Self::unify(self, o);
        let k = a.rads.len();
        let mut c = vec![CycNum::zero(); 1 << k];
        for (s, ca) in a.c.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (t, cb) in b.c.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mut term = ca * cb;
                let both = s & t;
                for (bit, rad) in a.rads.iter().enumerate() {
                    if both & (1 << bit) != 0 {
                        term = &term * rad;
                    }
                }
                let idx = s ^ t;
                c[idx] = &c[idx] + &term;
            }
        }
        ExtElem { rads: a.rads, c }
    }

    /// Conjugation that negates the top radical `sqrt(rads[k-1])`.
    fn conj_top(&self) -> Self {
        let k = self.rads.len();
        assert!(k > 0);
        let top = 1 << (k - 1);
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(mask, x)| if mask & top != 0 { -x } else { x.clone() })
            .collect();
        ExtElem {
            rads: self.rads.clone(),
            c,
        }
    }

    /// Drops to the subtower without the top radical; panics if the top
    /// components are not all zero.
    fn descend(&self) -> Self {
        let k = self.rads.len();
        assert!(k > 0);
        let top = 1 << (k - 1);
        for (mask, x) in self.c.iter().enumerate() {
            if mask & top != 0 {
                assert!(x.is_zero(), "descend called with nonzero top component");
            }
        }
        ExtElem {
            rads: self.rads[..k - 1].to_vec(),
            c: self.c[..top].to_vec(),
        }
    }

    fn inv_impl(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.rads.is_empty() {
            return self.c[0].inv().ok().map(ExtElem::from_cyc);
        }
        // x = a + b*sqrt(t): 1/x = conj(x) / (x * conj(x)), where the
        // norm lies in the subtower.
        let conj = self.conj_top();
        let norm = self.mul_impl(&conj).descend();
        assert!(
            !norm.is_zero(),
            "radicand is a square in the subtower; extension is degenerate"
        );
        let inv_norm = norm.inv_impl()?.lift(&self.rads);
        Some(conj.mul_impl(&inv_norm))
    }
}

impl Field for ExtElem {
    fn zero() -> Self {
        ExtElem::from_cyc(CycNum::zero())
    }
    fn one() -> Self {
        ExtElem::from_cyc(CycNum::one())
    }
    fn add(&self, o: &Self) -> Self {
        self.add_impl(o).trimmed()
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_impl(o).trimmed()
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_impl(o).trimmed()
    }
    fn inv(&self) -> Option<Self> {
        self.inv_impl().map(|x| x.trimmed())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "({})", coeff.reduced())?;
            } else {
                write!(f, "({})", coeff.reduced())?;
                for (bit, rad) in self.rads.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        write!(f, "*sqrt({})", rad.reduced())?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl serde::Serialize for ExtElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
