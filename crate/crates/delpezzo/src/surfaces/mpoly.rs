//! Sparse multivariate polynomials over cyclotomic numbers.
//!
//! Surface equations, map components, and their pullbacks under
//! automorphisms all live here.  Terms are keyed by exponent vectors;
//! substitution composes a polynomial with arbitrary polynomial images
//! of its variables, which covers linear changes of coordinates as well
//! as the weighted and monomial actions.

use super::upoly::{BinForm, UPoly};
use crate::cyclo::matrix::{CycMat, Field};
use crate::cyclo::{CycNum, ExtElem};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, CycNum>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, v: CycNum) -> Self {
        let mut p = Self::zero(nvars);
        if !v.is_zero() {
            p.terms.insert(vec![0; nvars], v);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CycNum::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, CycNum::one());
        p
    }

    /// Single term `coeff * prod x_i^{exps[i]}`.
    pub fn term(nvars: usize, exps: &[u16], coeff: CycNum) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps.to_vec(), coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &CycNum)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, e: Vec<u16>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[CycNum]) -> CycNum {
        assert_eq!(x.len(), self.nvars);
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &x[i].pow(k as i64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluation at coordinates in a quadratic extension tower.
    pub fn eval_ext(&self, x: &[ExtElem]) -> ExtElem {
        assert_eq!(x.len(), self.nvars);
        let mut acc = ExtElem::from_int(0);
        for (e, c) in &self.terms {
            let mut t = ExtElem::from_cyc(c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&x[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`.  All images must share
    /// a variable count, which becomes the result's.
    pub fn subst(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map_or(0, |p| p.nvars);
        assert!(images.iter().all(|p| p.nvars == out_vars));
        let mut acc = MPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&images[i].pow(k as usize));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Pullback under the linear map `x -> m x`: returns `f(m x)`.
    pub fn linear_subst(&self, m: &CycMat) -> MPoly {
        assert_eq!(m.rows, self.nvars);
        let images: Vec<MPoly> = (0..m.rows)
            .map(|i| {
                let mut row = MPoly::zero(m.cols);
                for j in 0..m.cols {
                    row = row.add(&MPoly::var(m.cols, j).scale(m.at(i, j)));
                }
                row
            })
            .collect();
        self.subst(&images)
    }

    pub fn partial(&self, i: usize) -> MPoly {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert_add(e2, c * &CycNum::from_int(e[i] as i64));
        }
        out
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
    }

    pub fn degree_in(&self, i: usize) -> Option<usize> {
        self.terms.keys().map(|e| e[i] as usize).max()
    }

    /// Degree with variable `i` weighted by `w[i]`.
    pub fn weighted_degree(&self, w: &[usize]) -> Option<usize> {
        assert_eq!(w.len(), self.nvars);
        self.terms
            .keys()
            .map(|e| e.iter().zip(w).map(|(&k, &wi)| k as usize * wi).sum())
            .max()
    }

    pub fn is_homogeneous(&self) -> Option<usize> {
        self.is_weighted_homogeneous(&vec![1; self.nvars])
    }

    pub fn is_weighted_homogeneous(&self, w: &[usize]) -> Option<usize> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: usize = e.iter().zip(w).map(|(&k, &wi)| k as usize * wi).sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                Some(_) => return None,
            }
        }
        deg
    }

    /// Bidegree when homogeneous separately in the first `split`
    /// variables and the rest.
    pub fn bidegree(&self, split: usize) -> Option<(usize, usize)> {
        let mut deg = None;
        for e in self.terms.keys() {
            let a: usize = e[..split].iter().map(|&k| k as usize).sum();
            let b: usize = e[split..].iter().map(|&k| k as usize).sum();
            match deg {
                None => deg = Some((a, b)),
                Some(x) if x == (a, b) => {}
                Some(_) => return None,
            }
        }
        deg
    }

    /// The scalar `lambda` with `self = lambda * o`, if one exists.
    pub fn proportional_scalar(&self, o: &Self) -> Option<CycNum> {
        assert_eq!(self.nvars, o.nvars);
        if o.is_zero() {
            return if self.is_zero() {
                Some(CycNum::one())
            } else {
                None
            };
        }
        if self.is_zero() {
            return None;
        }
        if self.terms.len() != o.terms.len() {
            return None;
        }
        let (e0, c0) = o.terms.iter().next().unwrap();
        let mine = self.terms.get(e0)?;
        let lambda = mine * &c0.inv().ok()?;
        for (e, c) in &o.terms {
            match self.terms.get(e) {
                Some(x) if *x == &lambda * c => {}
                _ => return None,
            }
        }
        Some(lambda)
    }

    /// Restriction to the parametrized line `p0 s + p1 t` as a binary
    /// form in `(s, t)`; requires a homogeneous polynomial.
    pub fn restrict_line(&self, p0: &[CycNum], p1: &[CycNum]) -> BinForm {
        let d = self
            .is_homogeneous()
            .expect("line restriction needs a homogeneous form");
        assert_eq!(p0.len(), self.nvars);
        assert_eq!(p1.len(), self.nvars);
        // Substitute x_i = p0_i s + p1_i t and collect by t-degree with
        // s = 1; the formal degree recovers the s-power.
        let images: Vec<MPoly> = (0..self.nvars)
            .map(|i| {
                MPoly::constant(1, p0[i].clone()).add(&MPoly::var(1, 0).scale(&p1[i]))
            })
            .collect();
        let line = self.subst(&images);
        let mut coeffs = vec![CycNum::zero(); d + 1];
        for (e, c) in &line.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        BinForm::new(UPoly::from_coeffs(coeffs), d)
    }

    /// Restriction to the subspace spanned by `basis`, as a polynomial
    /// in the span coordinates.
    pub fn restrict_subspace(&self, basis: &[Vec<CycNum>]) -> MPoly {
        let k = basis.len();
        assert!(basis.iter().all(|v| v.len() == self.nvars));
        let images: Vec<MPoly> = (0..self.nvars)
            .map(|i| {
                let mut p = MPoly::zero(k);
                for (j, b) in basis.iter().enumerate() {
                    p = p.add(&MPoly::var(k, j).scale(&b[i]));
                }
                p
            })
            .collect();
        self.subst(&images)
    }

    /// Collects the polynomial as univariate in variable `i` with
    /// polynomial coefficients in the remaining variables.
    pub fn as_univariate_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i).unwrap_or(0);
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].insert_add(e2, c.clone());
        }
        out
    }

    /// Specializes all variables except `keep` to scalar values;
    /// `values[keep]` is ignored.
    pub fn specialize_to_univariate(&self, keep: usize, values: &[CycNum]) -> UPoly {
        assert_eq!(values.len(), self.nvars);
        let d = self.degree_in(keep).unwrap_or(0);
        let mut coeffs = vec![CycNum::zero(); d + 1];
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if i != keep && k > 0 {
                    t = &t * &values[i].pow(k as i64);
                }
            }
            let k = e[keep] as usize;
            coeffs[k] = &coeffs[k] + &t;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::matrix::Mat;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    #[test]
    fn arithmetic_and_evaluation() {
        // f = x0^2 + 2 x1 x2 evaluated at (1, 2, 3) gives 13.
        let f = x(0).pow(2).add(&x(1).mul(&x(2)).scale(&CycNum::from_int(2)));
        let v = [
            CycNum::from_int(1),
            CycNum::from_int(2),
            CycNum::from_int(3),
        ];
        assert_eq!(f.eval(&v), CycNum::from_int(13));
        assert_eq!(f.total_degree(), Some(2));
        assert_eq!(f.is_homogeneous(), Some(2));
    }

    #[test]
    fn substitution_composes() {
        // f(x0, x1) = x0 x1 under (x0, x1) -> (x0 + x1, x0 - x1)
        // becomes x0^2 - x1^2.
        let f = MPoly::var(2, 0).mul(&MPoly::var(2, 1));
        let m = Mat::new(
            2,
            2,
            vec![
                CycNum::from_int(1),
                CycNum::from_int(1),
                CycNum::from_int(1),
                CycNum::from_int(-1),
            ],
        );
        let g = f.linear_subst(&m);
        let expect = MPoly::var(2, 0).pow(2).sub(&MPoly::var(2, 1).pow(2));
        assert_eq!(g, expect);
    }

    #[test]
    fn proportionality_detects_scalar() {
        let f = x(0).pow(3).add(&x(1).pow(3));
        let g = f.scale(&CycNum::zeta(3).unwrap());
        let lam = g.proportional_scalar(&f).unwrap();
        assert_eq!(lam, CycNum::zeta(3).unwrap());
        let h = f.add(&x(2).pow(3));
        assert!(h.proportional_scalar(&f).is_none());
    }

    #[test]
    fn line_restriction_gives_binary_form() {
        // x0^2 + x1^2 + x2^2 on the line (s, t, 0) is s^2 + t^2.
        let f = x(0).pow(2).add(&x(1).pow(2)).add(&x(2).pow(2));
        let p0 = [CycNum::one(), CycNum::zero(), CycNum::zero()];
        let p1 = [CycNum::zero(), CycNum::one(), CycNum::zero()];
        let form = f.restrict_line(&p0, &p1);
        assert_eq!(form.formal_degree(), 2);
        assert_eq!(form.distinct_root_count(), 2);
        // On the line (s, i s + t...) through an isotropic direction the
        // form degenerates: (s, is, t): s^2 - s^2 + t^2 = t^2.
        let iota = CycNum::i();
        let p1b = [CycNum::one(), iota, CycNum::zero()];
        let p2 = [CycNum::zero(), CycNum::zero(), CycNum::one()];
        let form2 = f.restrict_line(&p1b, &p2);
        assert_eq!(form2.distinct_root_count(), 1);
        assert_eq!(form2.infinity_multiplicity(), 0);
    }

    #[test]
    fn partial_derivatives() {
        let f = x(0).pow(2).mul(&x(1));
        assert_eq!(f.partial(0), x(0).mul(&x(1)).scale(&CycNum::from_int(2)));
        assert_eq!(f.partial(1), x(0).pow(2));
        assert!(f.partial(2).is_zero());
    }

    #[test]
    fn weighted_homogeneity() {
        // x3^2 + x2^3 + x0^4 x2 + x0^6 with weights (1,1,2,3).
        let v = |i| MPoly::var(4, i);
        let f = v(3)
            .pow(2)
            .add(&v(2).pow(3))
            .add(&v(0).pow(4).mul(&v(2)))
            .add(&v(0).pow(6));
        assert_eq!(f.is_weighted_homogeneous(&[1, 1, 2, 3]), Some(6));
        assert_eq!(f.is_homogeneous(), None);
    }

    #[test]
    fn univariate_specialization() {
        // f = x0^2 x1 + x2: in x0 with x1 = 2, x2 = 5: 2 t^2 + 5.
        let f = x(0).pow(2).mul(&x(1)).add(&x(2));
        let u = f.specialize_to_univariate(
            0,
            &[
                CycNum::zero(),
                CycNum::from_int(2),
                CycNum::from_int(5),
            ],
        );
        assert_eq!(u.coeff(2), CycNum::from_int(2));
        assert_eq!(u.coeff(0), CycNum::from_int(5));
    }
}
