//! Univariate polynomials and binary forms over cyclotomic numbers.
//!
//! Restricting a surface equation to an invariant line produces a
//! binary form whose distinct roots are the fixed points on that line.
//! Everything here is exact: gcd chains decide root multiplicity,
//! square-free parts count distinct roots, and explicit root extraction
//! is attempted only for shapes that stay inside a cyclotomic field or
//! a single quadratic extension of one.

use crate::cyclo::matrix::Field;
use crate::cyclo::{nth_root_unit_scalar, sqrt_cyc, CycNum, ExtElem, SqrtOutcome};
use thiserror::Error;

/// Errors from exact root extraction.
#[derive(Debug, Clone, Error)]
pub enum RootError {
    #[error("roots of a degree-{degree} factor escape the supported fields")]
    FieldEscape { degree: usize },
}

/// Dense univariate polynomial, low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly {
    c: Vec<CycNum>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly {
            c: vec![CycNum::one()],
        }
    }

    pub fn constant(v: CycNum) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn from_coeffs(mut c: Vec<CycNum>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    /// The monomial `coeff * t^deg`.
    pub fn monomial(deg: usize, coeff: CycNum) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut c = vec![CycNum::zero(); deg + 1];
        c[deg] = coeff;
        UPoly { c }
    }

    pub fn var() -> Self {
        Self::monomial(1, CycNum::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CycNum {
        self.c.get(k).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.c
    }

    pub fn leading(&self) -> Option<&CycNum> {
        self.c.last()
    }

    pub fn eval(&self, t: &CycNum) -> CycNum {
        let mut acc = CycNum::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn eval_ext(&self, t: &ExtElem) -> ExtElem {
        let mut acc = ExtElem::from_int(0);
        for c in self.c.iter().rev() {
            acc = acc.mul(t).add(&ExtElem::from_cyc(c.clone()));
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect();
        Self::from_coeffs(c)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        UPoly {
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![CycNum::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.clone();
        let mut quo = vec![
            CycNum::zero();
            self.c.len().saturating_sub(d.c.len()).wrapping_add(1)
        ];
        if self.c.len() < d.c.len() {
            return (Self::zero(), rem);
        }
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = &(rem.leading().unwrap().clone()) * &lead_inv;
            let shift = rd - dd;
            quo[shift] = f.clone();
            rem = rem.sub(&d.mul(&Self::monomial(shift, f)));
        }
        (Self::from_coeffs(quo), rem)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, x)| x * &CycNum::from_int(k as i64))
            .collect();
        Self::from_coeffs(c)
    }

    /// The radical: product of distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.degree() == Some(0) {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Number of distinct roots in an algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        assert!(!self.is_zero(), "zero polynomial has every root");
        self.squarefree_part().degree().unwrap_or(0)
    }

    /// Resultant of two polynomials via the Euclidean remainder chain.
    pub fn resultant(&self, o: &Self) -> CycNum {
        fn go(f: &UPoly, g: &UPoly) -> CycNum {
            let Some(df) = f.degree() else {
                return CycNum::zero();
            };
            let Some(dg) = g.degree() else {
                return if df == 0 { CycNum::one() } else { CycNum::zero() };
            };
            if dg == 0 {
                return g.leading().unwrap().pow(df as i64);
            }
            if df == 0 {
                return f.leading().unwrap().pow(dg as i64);
            }
            let r = f.rem(g);
            let Some(dr) = r.degree() else {
                // g divides f: a shared root forces a zero resultant.
                return CycNum::zero();
            };
            let sign = if (df * dg) % 2 == 1 {
                CycNum::from_int(-1)
            } else {
                CycNum::one()
            };
            let lead_pow = g.leading().unwrap().pow((df - dr) as i64);
            &(&sign * &lead_pow) * &go(g, &r)
        }
        go(self, o)
    }

    /// Discriminant up to the standard normalization
    /// `(-1)^(d(d-1)/2) res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> CycNum {
        let d = self.degree().expect("discriminant of nonzero polynomial");
        if d == 0 {
            return CycNum::one();
        }
        let res = self.resultant(&self.derivative());
        let sign = if (d * (d - 1) / 2) % 2 == 1 {
            CycNum::from_int(-1)
        } else {
            CycNum::one()
        };
        &(&sign * &res) * &self.leading().unwrap().inv().expect("nonzero leading")
    }

    /// Square-free decomposition `f = lc * prod p_i^i` with the `p_i`
    /// monic, square-free, pairwise coprime; returns `(i, p_i)` pairs.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UPoly)> {
        assert!(!self.is_zero());
        let mut out = Vec::new();
        let mut f = self.monic();
        let mut mult = 0usize;
        while f.degree().unwrap_or(0) > 0 {
            let g = f.gcd(&f.derivative());
            let sf = f.div_exact(&g).monic();
            mult += 1;
            // sf = product of factors with multiplicity >= mult; peel
            // off those that stop dividing at this level.
            let next = g.clamp_nonconst();
            let stop = match next.as_ref() {
                Some(n) => sf.div_exact(&sf.gcd(n)).monic(),
                None => sf.clone(),
            };
            if stop.degree().unwrap_or(0) > 0 {
                out.push((mult, stop));
            }
            match next {
                Some(n) => f = n,
                None => break,
            }
        }
        out
    }

    fn clamp_nonconst(&self) -> Option<UPoly> {
        if self.degree().unwrap_or(0) > 0 {
            Some(self.clone())
        } else {
            None
        }
    }
}

/// A point of the projective line with coordinates in a quadratic
/// extension tower, stored as `[s : t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjRoot {
    pub s: ExtElem,
    pub t: ExtElem,
    pub multiplicity: usize,
}

impl ProjRoot {
    fn affine(t: ExtElem, multiplicity: usize) -> Self {
        ProjRoot {
            s: ExtElem::from_int(1),
            t,
            multiplicity,
        }
    }

    fn infinity(multiplicity: usize) -> Self {
        ProjRoot {
            s: ExtElem::from_int(0),
            t: ExtElem::from_int(1),
            multiplicity,
        }
    }

    /// Projective equality (proportional coordinate pairs).
    pub fn same_point(&self, o: &Self) -> bool {
        self.s.mul(&o.t) == self.t.mul(&o.s)
    }
}

/// Binary form of formal degree `deg`: the affine polynomial is
/// `f(1, t)` and `deg - deg_affine` counts the root at `[0 : 1]`.
#[derive(Clone, PartialEq, Debug)]
pub struct BinForm {
    p: UPoly,
    deg: usize,
}

impl BinForm {
    pub fn new(p: UPoly, deg: usize) -> Self {
        assert!(p.degree().map_or(true, |d| d <= deg));
        BinForm { p, deg }
    }

    pub fn affine(&self) -> &UPoly {
        &self.p
    }

    pub fn formal_degree(&self) -> usize {
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Multiplicity of the root at `[0 : 1]`.
    pub fn infinity_multiplicity(&self) -> usize {
        self.deg - self.p.degree().expect("nonzero form")
    }

    pub fn distinct_root_count(&self) -> usize {
        let inf = if self.infinity_multiplicity() > 0 { 1 } else { 0 };
        self.p.distinct_root_count() + inf
    }

    /// All roots simple.
    pub fn is_squarefree(&self) -> bool {
        self.infinity_multiplicity() <= 1 && (self.p.degree() == Some(0) || self.p.is_squarefree())
    }

    /// Common divisor form of two nonzero forms.
    pub fn gcd(&self, o: &Self) -> BinForm {
        assert!(!self.is_zero() && !o.is_zero());
        let inf = self.infinity_multiplicity().min(o.infinity_multiplicity());
        let g = self.p.gcd(&o.p);
        let d = g.degree().unwrap_or(0) + inf;
        BinForm::new(g, d)
    }

    /// Exact roots with multiplicity.  Handles linear and quadratic
    /// factors in general, and higher-degree binomial factors whose
    /// roots stay of the shape root of unity times a radical.
    pub fn roots(&self) -> Result<Vec<ProjRoot>, RootError> {
        assert!(!self.is_zero(), "roots of the zero form");
        let mut out = Vec::new();
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            out.push(ProjRoot::infinity(inf));
        }
        if self.p.degree() == Some(0) {
            return Ok(out);
        }
        for (mult, factor) in self.p.squarefree_decomposition() {
            for t in squarefree_roots(&factor)? {
                out.push(ProjRoot::affine(t, mult));
            }
        }
        Ok(out)
    }
}

/// Roots of a monic square-free polynomial of positive degree.
fn squarefree_roots(f: &UPoly) -> Result<Vec<ExtElem>, RootError> {
    let d = f.degree().expect("nonzero");
    assert!(d >= 1);
    let mut out = Vec::new();
    let mut f = f.clone();
    // Root at zero splits off exactly once from a square-free input.
    if f.coeff(0).is_zero() {
        out.push(ExtElem::from_int(0));
        f = f.div_exact(&UPoly::var());
    }
    let d = match f.degree() {
        None | Some(0) => return Ok(out),
        Some(d) => d,
    };
    match d {
        1 => {
            let root = -&(&f.coeff(0) * &f.coeff(1).inv().expect("nonzero leading"));
            out.push(ExtElem::from_cyc(root));
        }
        2 => {
            let a = f.coeff(2);
            let b = f.coeff(1);
            let c = f.coeff(0);
            let disc = &(&b * &b) - &(&CycNum::from_int(4) * &(&a * &c));
            let half = (&CycNum::from_int(2) * &a).inv().expect("nonzero leading");
            let sq = match sqrt_cyc(&disc) {
                SqrtOutcome::Exact(r) => ExtElem::from_cyc(r),
                SqrtOutcome::Radical { scale, radicand } => {
                    ExtElem::sqrt_radicand(radicand).mul(&ExtElem::from_cyc(scale))
                }
            };
            let base = ExtElem::from_cyc(&(-&b) * &half);
            let off = sq.mul(&ExtElem::from_cyc(half));
            out.push(base.add(&off));
            out.push(base.sub(&off));
        }
        _ => {
            // Binomial a t^d + c: roots are d-th roots of -c/a, all in
            // one cyclotomic field when the base root is.
            let binomial = (1..d).all(|k| f.coeff(k).is_zero());
            if !binomial {
                return Err(RootError::FieldEscape { degree: d });
            }
            let a = f.coeff(d);
            let c = f.coeff(0);
            let target = &(-&c) * &a.inv().expect("nonzero leading");
            let base = nth_root_unit_scalar(&target, d as u32)
                .map_err(|_| RootError::FieldEscape { degree: d })?;
            let zeta = CycNum::zeta(d as u32).map_err(|_| RootError::FieldEscape { degree: d })?;
            let mut r = base;
            for _ in 0..d {
                out.push(ExtElem::from_cyc(r.clone()));
                r = &r * &zeta;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycNum;

    fn int_poly(c: &[i64]) -> UPoly {
        UPoly::from_coeffs(c.iter().map(|&v| CycNum::from_int(v)).collect())
    }

    #[test]
    fn divrem_round_trip() {
        let f = int_poly(&[2, 0, -3, 1, 4]);
        let d = int_poly(&[1, 2, 1]);
        let (q, r) = f.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().unwrap() < d.degree().unwrap());
    }

    #[test]
    fn gcd_detects_common_factor() {
        // (t-1)(t-2) and (t-1)(t+3) share exactly (t-1).
        let a = int_poly(&[-1, 1]).mul(&int_poly(&[-2, 1]));
        let b = int_poly(&[-1, 1]).mul(&int_poly(&[3, 1]));
        let g = a.gcd(&b);
        assert_eq!(g, int_poly(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (t-1)^2 (t+2) has radical (t-1)(t+2).
        let f = int_poly(&[-1, 1]).pow(2).mul(&int_poly(&[2, 1]));
        assert_eq!(f.distinct_root_count(), 2);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), int_poly(&[-1, 1]).mul(&int_poly(&[2, 1])).monic());
    }

    #[test]
    fn resultant_matches_root_differences() {
        // res(t^2-1, t^2-4) = prod (alpha - beta) over root pairs:
        // (1-2)(1+2)(-1-2)(-1+2) = (-1)(3)(-3)(1) = 9.
        let f = int_poly(&[-1, 0, 1]);
        let g = int_poly(&[-4, 0, 1]);
        assert_eq!(f.resultant(&g), CycNum::from_int(9));
        // Shared root makes it vanish.
        let h = int_poly(&[-1, 1]).mul(&int_poly(&[5, 1]));
        assert!(f.resultant(&h).is_zero());
    }

    #[test]
    fn discriminant_of_quadratic() {
        // disc(a t^2 + b t + c) = b^2 - 4ac, here 1 + 8 = 9.
        let f = int_poly(&[-2, 1, 1]);
        assert_eq!(f.discriminant(), CycNum::from_int(9));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let f = int_poly(&[-1, 1])
            .pow(3)
            .mul(&int_poly(&[2, 1]))
            .mul(&int_poly(&[0, 1]).pow(2));
        let dec = f.squarefree_decomposition();
        let mut found = vec![];
        for (m, p) in &dec {
            found.push((*m, p.degree().unwrap()));
        }
        found.sort_unstable();
        assert_eq!(found, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn quadratic_roots_in_field_and_extension() {
        // t^2 - 2 needs sqrt(2), which is cyclotomic (conductor 8).
        let f = BinForm::new(int_poly(&[-2, 0, 1]), 2);
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let t = r.t.as_cyc().expect("sqrt(2) is cyclotomic");
            assert_eq!(&t * &t, CycNum::from_int(2));
        }
        // t^2 - (1 + sqrt of nothing nice): radicand 3 + zeta_5 forces
        // a genuine extension element whose square returns the radicand.
        let rad = &CycNum::from_int(3) + &CycNum::zeta(5).unwrap();
        let g = BinForm::new(
            UPoly::from_coeffs(vec![-&rad, CycNum::zero(), CycNum::one()]),
            2,
        );
        let roots = g.roots().unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.t.as_cyc().is_none());
            assert_eq!(r.t.mul(&r.t).as_cyc(), Some(rad.reduced()));
        }
    }

    #[test]
    fn binomial_cubic_roots() {
        // t^3 - 8: roots 2, 2 zeta_3, 2 zeta_3^2.
        let f = BinForm::new(int_poly(&[-8, 0, 0, 1]), 3);
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            let t = r.t.as_cyc().unwrap();
            assert_eq!(t.pow(3), CycNum::from_int(8));
        }
    }

    #[test]
    fn dense_cubic_escapes() {
        // t^3 + t + 1 is irreducible with non-constructible roots here.
        let f = BinForm::new(int_poly(&[1, 1, 0, 1]), 3);
        assert!(matches!(f.roots(), Err(RootError::FieldEscape { degree: 3 })));
        // Counting still works without extraction.
        assert_eq!(f.distinct_root_count(), 3);
    }

    #[test]
    fn infinity_root_tracked_by_formal_degree() {
        // s^2 t (degree 3 form): affine poly t, roots t=0 and [0:1]^2.
        let f = BinForm::new(int_poly(&[0, 1]), 3);
        assert_eq!(f.infinity_multiplicity(), 2);
        assert_eq!(f.distinct_root_count(), 2);
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|r| r.s.is_zero() && r.multiplicity == 2));
    }
}
