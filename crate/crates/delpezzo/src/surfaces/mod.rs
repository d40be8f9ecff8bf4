//! Surface models: explicit equations for the del Pezzo families and the
//! exact tests that tie them to the automorphism carriers.
//!
//! Each family lives in its natural ambient space:
//!
//! * degree 8: the product of two projective lines (no equation, maps act
//!   factorwise);
//! * degree 6: the toric hexagon model (no equation, monomial maps must
//!   permute the six boundary rays);
//! * degree 4: intersections of two diagonal quadrics in `P^4`;
//! * degree 3: cubic surfaces in `P^3`;
//! * degree 2: double covers `x0^2 = Q4(x1,x2,x3)` in `P(2,1,1,1)`;
//! * degree 1: sextics `x3^2 + x2^3 + F4*x2 + F6` in `P(1,1,2,3)`.
//!
//! [`Surface::preserved_by`] decides exactly whether an automorphism fixes
//! the surface.  [`Surface::certify_smooth`] establishes smoothness, either
//! exactly (diagonal quadric pencils) or through the one-sided positive
//! characteristic certificates in [`modp`].

pub mod generators;
pub mod modp;
pub mod mpoly;
pub mod upoly;

use crate::autgrp::SurfaceAut;
use crate::cyclo::matrix::Mat;
use crate::cyclo::{CycError, CycNum};
use modp::certify_smooth_hypersurface;
use mpoly::MPoly;
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("{family} surfaces expect {expected} automorphisms, got {got}")]
    CarrierMismatch {
        family: Family,
        expected: &'static str,
        got: &'static str,
    },
    #[error("{0} surfaces have no ambient polynomial model to pull back")]
    NoPolynomialModel(Family),
    #[error("parameters give a singular or degenerate surface")]
    DegenerateParameters,
    #[error("{label} takes {expected} parameters, got {got}")]
    ParameterCount {
        label: &'static str,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Cyclo(#[from] CycError),
}

/// Deformation family of a rational surface, keyed by anticanonical degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    Quadric,
    Dp6,
    Dp4,
    Dp3,
    Dp2,
    Dp1,
}

impl Family {
    /// Self-intersection of the anticanonical class.
    pub fn degree(self) -> u32 {
        match self {
            Family::Quadric => 8,
            Family::Dp6 => 6,
            Family::Dp4 => 4,
            Family::Dp3 => 3,
            Family::Dp2 => 2,
            Family::Dp1 => 1,
        }
    }

    /// Rank of the full Picard lattice.
    pub fn picard_rank(self) -> usize {
        match self {
            Family::Quadric => 2,
            Family::Dp6 => 4,
            Family::Dp4 => 6,
            Family::Dp3 => 7,
            Family::Dp2 => 8,
            Family::Dp1 => 9,
        }
    }

    /// Topological Euler characteristic of the (smooth) surface.
    pub fn euler_characteristic(self) -> i64 {
        self.picard_rank() as i64 + 2
    }

    fn expected_carrier(self) -> &'static str {
        match self {
            Family::Quadric => "factor-pair",
            Family::Dp6 => "monomial",
            Family::Dp4 => "5x5 projective linear",
            Family::Dp3 => "4x4 projective linear",
            Family::Dp2 => "weighted (2,1,1,1)",
            Family::Dp1 => "weighted (1,1,2,3)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Quadric => "quadric",
            Family::Dp6 => "dp6",
            Family::Dp4 => "dp4",
            Family::Dp3 => "dp3",
            Family::Dp2 => "dp2",
            Family::Dp1 => "dp1",
        };
        write!(f, "{s}")
    }
}

fn carrier_of(g: &SurfaceAut) -> &'static str {
    match g {
        SurfaceAut::Quadric(_) => "factor-pair",
        SurfaceAut::Monomial(_) => "monomial",
        SurfaceAut::Linear(_) => "projective linear",
        SurfaceAut::WeightedDp2(_) => "weighted (2,1,1,1)",
        SurfaceAut::WeightedDp1(_) => "weighted (1,1,2,3)",
    }
}

/// A concrete surface: a family member with pinned equations.
#[derive(Clone, Debug)]
pub struct Surface {
    family: Family,
    kind: SurfaceKind,
    params: Vec<CycNum>,
    weights: Vec<usize>,
    equations: Vec<MPoly>,
}

impl Surface {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn params(&self) -> &[CycNum] {
        &self.params
    }

    /// Ambient coordinate weights; all ones for straight projective space.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn equations(&self) -> &[MPoly] {
        &self.equations
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.kind.label().to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            format!("{}({})", self.kind.label(), ps.join(", "))
        }
    }

    /// Pullback of an ambient polynomial along the automorphism:
    /// substitutes the coordinates of the image point.
    pub fn pullback(&self, g: &SurfaceAut, f: &MPoly) -> Result<MPoly, SurfaceError> {
        match g {
            SurfaceAut::Linear(l) => {
                if f.nvars() != l.dim() {
                    return Err(self.mismatch(g));
                }
                Ok(f.linear_subst(l.matrix()))
            }
            SurfaceAut::WeightedDp2(w) => {
                if f.nvars() != 4 {
                    return Err(self.mismatch(g));
                }
                let m = w.matrix();
                let mut imgs = vec![MPoly::var(4, 0).scale(w.scalar())];
                for i in 0..3 {
                    let mut row = MPoly::zero(4);
                    for j in 0..3 {
                        row = row.add(&MPoly::var(4, j + 1).scale(m.at(i, j)));
                    }
                    imgs.push(row);
                }
                Ok(f.subst(&imgs))
            }
            SurfaceAut::WeightedDp1(w) => {
                if f.nvars() != 4 {
                    return Err(self.mismatch(g));
                }
                let m = w.matrix();
                let mut imgs = Vec::with_capacity(4);
                for i in 0..2 {
                    let mut row = MPoly::zero(4);
                    for j in 0..2 {
                        row = row.add(&MPoly::var(4, j).scale(m.at(i, j)));
                    }
                    imgs.push(row);
                }
                imgs.push(MPoly::var(4, 2).scale(w.scalar2()));
                imgs.push(MPoly::var(4, 3).scale(w.scalar3()));
                Ok(f.subst(&imgs))
            }
            SurfaceAut::Quadric(q) => {
                if f.nvars() != 4 {
                    return Err(self.mismatch(g));
                }
                let pair = |m: &Mat<CycNum>, v0: usize, v1: usize| {
                    (0..2)
                        .map(|i| {
                            MPoly::var(4, v0)
                                .scale(m.at(i, 0))
                                .add(&MPoly::var(4, v1).scale(m.at(i, 1)))
                        })
                        .collect::<Vec<_>>()
                };
                let (xs, ys) = if q.swaps_factors() {
                    (pair(q.factor_a(), 2, 3), pair(q.factor_b(), 0, 1))
                } else {
                    (pair(q.factor_a(), 0, 1), pair(q.factor_b(), 2, 3))
                };
                let imgs = [xs, ys].concat();
                Ok(f.subst(&imgs))
            }
            SurfaceAut::Monomial(_) => Err(SurfaceError::NoPolynomialModel(self.family)),
        }
    }

    fn mismatch(&self, g: &SurfaceAut) -> SurfaceError {
        SurfaceError::CarrierMismatch {
            family: self.family,
            expected: self.family.expected_carrier(),
            got: carrier_of(g),
        }
    }

    /// Exact test: does the automorphism map the surface onto itself?
    pub fn preserved_by(&self, g: &SurfaceAut) -> Result<bool, SurfaceError> {
        match (self.family, g) {
            (Family::Quadric, SurfaceAut::Quadric(_)) => Ok(true),
            (Family::Dp6, SurfaceAut::Monomial(m)) => {
                Ok(preserves_hexagon_fan(&m.exponent_matrix()))
            }
            (Family::Dp4, SurfaceAut::Linear(l)) if l.dim() == 5 => {
                let p0 = self.pullback(g, &self.equations[0])?;
                let p1 = self.pullback(g, &self.equations[1])?;
                Ok(in_span(&p0, &self.equations[0], &self.equations[1])
                    && in_span(&p1, &self.equations[0], &self.equations[1]))
            }
            (Family::Dp3, SurfaceAut::Linear(l)) if l.dim() == 4 => {
                let p = self.pullback(g, &self.equations[0])?;
                Ok(p.proportional_scalar(&self.equations[0]).is_some())
            }
            (Family::Dp2, SurfaceAut::WeightedDp2(_))
            | (Family::Dp1, SurfaceAut::WeightedDp1(_)) => {
                let p = self.pullback(g, &self.equations[0])?;
                Ok(p.proportional_scalar(&self.equations[0]).is_some())
            }
            _ => Err(self.mismatch(g)),
        }
    }

    /// One-sided smoothness certificate.  `true` means provably smooth
    /// over the algebraic closure; `false` means no certificate found.
    pub fn certify_smooth(&self) -> bool {
        match self.family {
            Family::Quadric | Family::Dp6 => true,
            Family::Dp4 => {
                let a = diag_quadric_coeffs(&self.equations[0]);
                let b = diag_quadric_coeffs(&self.equations[1]);
                match (a, b) {
                    (Some(a), Some(b)) => pencil_minors_nonzero(&a, &b),
                    _ => false,
                }
            }
            Family::Dp3 => certify_smooth_hypersurface(&self.equations[0], &[1, 1, 1, 1]),
            Family::Dp2 => certify_smooth_hypersurface(&self.equations[0], &[2, 1, 1, 1]),
            Family::Dp1 => certify_smooth_hypersurface(&self.equations[0], &[1, 1, 2, 3]),
        }
    }
}

/// Boundary rays of the hexagon fan, in cyclic order.
pub fn hexagon_rays() -> [[i64; 2]; 6] {
    [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]
}

/// A monomial map extends to the hexagon model exactly when its exponent
/// matrix permutes the six boundary rays.
pub fn preserves_hexagon_fan(m: &[[i64; 2]; 2]) -> bool {
    let rays = hexagon_rays();
    rays.iter().all(|r| {
        let image = [
            m[0][0] * r[0] + m[0][1] * r[1],
            m[1][0] * r[0] + m[1][1] * r[1],
        ];
        rays.contains(&image)
    })
}

/// Image position of each hexagon ray under the exponent matrix, if the
/// fan is preserved.
pub fn hexagon_ray_permutation(m: &[[i64; 2]; 2]) -> Option<[usize; 6]> {
    let rays = hexagon_rays();
    let mut perm = [0usize; 6];
    for (i, r) in rays.iter().enumerate() {
        let image = [
            m[0][0] * r[0] + m[0][1] * r[1],
            m[1][0] * r[0] + m[1][1] * r[1],
        ];
        perm[i] = rays.iter().position(|s| *s == image)?;
    }
    Some(perm)
}

fn coeff_of(p: &MPoly, e: &[u16]) -> CycNum {
    for (k, c) in p.terms() {
        if k == e {
            return c.clone();
        }
    }
    CycNum::zero()
}

/// Membership of `f` in the linear span of `q1` and `q2`, over the union
/// of their monomial supports.
fn in_span(f: &MPoly, q1: &MPoly, q2: &MPoly) -> bool {
    let mut keys: BTreeSet<Vec<u16>> = BTreeSet::new();
    for p in [f, q1, q2] {
        for (e, _) in p.terms() {
            keys.insert(e.to_vec());
        }
    }
    let keys: Vec<Vec<u16>> = keys.into_iter().collect();
    let basis = Mat::from_fn(keys.len(), 2, |r, c| {
        coeff_of(if c == 0 { q1 } else { q2 }, &keys[r])
    });
    let augmented = Mat::from_fn(keys.len(), 3, |r, c| match c {
        0 => coeff_of(q1, &keys[r]),
        1 => coeff_of(q2, &keys[r]),
        _ => coeff_of(f, &keys[r]),
    });
    basis.rank() == augmented.rank()
}

/// Coefficients of a diagonal quadric, or `None` if off-diagonal terms
/// are present.
fn diag_quadric_coeffs(p: &MPoly) -> Option<Vec<CycNum>> {
    let n = p.nvars();
    let mut out = vec![CycNum::zero(); n];
    for (e, c) in p.terms() {
        let mut slot = None;
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                2 if slot.is_none() => slot = Some(i),
                _ => return None,
            }
        }
        out[slot?] = c.clone();
    }
    Some(out)
}

/// A pencil of diagonal quadrics cuts out a smooth surface exactly when
/// all 2x2 minors of its coefficient matrix are nonzero.
fn pencil_minors_nonzero(a: &[CycNum], b: &[CycNum]) -> bool {
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let minor = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
            if minor.is_zero() {
                return false;
            }
        }
    }
    true
}

fn zeta(n: u32) -> CycNum {
    CycNum::zeta(n).expect("fixed small conductor")
}

fn zeta_pow(n: u32, k: i64) -> CycNum {
    CycNum::zeta_pow(n, k).expect("fixed small conductor")
}

fn var4(i: usize) -> MPoly {
    MPoly::var(4, i)
}

fn diag_quadric(coeffs: &[CycNum; 5]) -> MPoly {
    let mut q = MPoly::zero(5);
    for (j, c) in coeffs.iter().enumerate() {
        q = q.add(&MPoly::var(5, j).pow(2).scale(c));
    }
    q
}

/// Binary form in the first two of four weighted coordinates;
/// `coeffs[k]` multiplies `x0^(d-k) x1^k`.
fn binary_in_first_two(coeffs: &[CycNum]) -> MPoly {
    let d = coeffs.len() - 1;
    let mut out = MPoly::zero(4);
    for (k, c) in coeffs.iter().enumerate() {
        let e = [(d - k) as u16, k as u16, 0, 0];
        out = out.add(&MPoly::term(4, &e, c.clone()));
    }
    out
}

fn elementary_symmetric_sums(n: usize) -> (MPoly, MPoly, MPoly) {
    let mut s1 = MPoly::zero(n);
    let mut s2 = MPoly::zero(n);
    let mut s3 = MPoly::zero(n);
    for i in 0..n {
        s1 = s1.add(&MPoly::var(n, i));
        for j in (i + 1)..n {
            s2 = s2.add(&MPoly::var(n, i).mul(&MPoly::var(n, j)));
            for k in (j + 1)..n {
                s3 = s3.add(&MPoly::var(n, i).mul(&MPoly::var(n, j)).mul(&MPoly::var(n, k)));
            }
        }
    }
    (s1, s2, s3)
}

/// Named member of the classification: a family together with the shape
/// of its defining equations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SurfaceKind {
    Quadric,
    Dp6,
    Dp4I,
    Dp4II,
    Dp4III,
    Dp4IV,
    Dp4V,
    Dp3I,
    Dp3II,
    Dp3III,
    Dp3IV,
    Dp3V,
    Dp3VI,
    Dp3VIII,
    Dp2I,
    Dp2II,
    Dp2III,
    Dp2IV,
    Dp2V,
    Dp2VII,
    Dp2VIII,
    Dp1I,
    Dp1II,
    Dp1IV,
    Dp1VII,
    Dp1XV,
    Dp1C5,
    Dp1C6,
}

pub const ALL_SURFACE_KINDS: [SurfaceKind; 28] = [
    SurfaceKind::Quadric,
    SurfaceKind::Dp6,
    SurfaceKind::Dp4I,
    SurfaceKind::Dp4II,
    SurfaceKind::Dp4III,
    SurfaceKind::Dp4IV,
    SurfaceKind::Dp4V,
    SurfaceKind::Dp3I,
    SurfaceKind::Dp3II,
    SurfaceKind::Dp3III,
    SurfaceKind::Dp3IV,
    SurfaceKind::Dp3V,
    SurfaceKind::Dp3VI,
    SurfaceKind::Dp3VIII,
    SurfaceKind::Dp2I,
    SurfaceKind::Dp2II,
    SurfaceKind::Dp2III,
    SurfaceKind::Dp2IV,
    SurfaceKind::Dp2V,
    SurfaceKind::Dp2VII,
    SurfaceKind::Dp2VIII,
    SurfaceKind::Dp1I,
    SurfaceKind::Dp1II,
    SurfaceKind::Dp1IV,
    SurfaceKind::Dp1VII,
    SurfaceKind::Dp1XV,
    SurfaceKind::Dp1C5,
    SurfaceKind::Dp1C6,
];

impl SurfaceKind {
    pub fn label(self) -> &'static str {
        match self {
            SurfaceKind::Quadric => "quadric",
            SurfaceKind::Dp6 => "dp6",
            SurfaceKind::Dp4I => "dp4-I",
            SurfaceKind::Dp4II => "dp4-II",
            SurfaceKind::Dp4III => "dp4-III",
            SurfaceKind::Dp4IV => "dp4-IV",
            SurfaceKind::Dp4V => "dp4-V",
            SurfaceKind::Dp3I => "dp3-I",
            SurfaceKind::Dp3II => "dp3-II",
            SurfaceKind::Dp3III => "dp3-III",
            SurfaceKind::Dp3IV => "dp3-IV",
            SurfaceKind::Dp3V => "dp3-V",
            SurfaceKind::Dp3VI => "dp3-VI",
            SurfaceKind::Dp3VIII => "dp3-VIII",
            SurfaceKind::Dp2I => "dp2-I",
            SurfaceKind::Dp2II => "dp2-II",
            SurfaceKind::Dp2III => "dp2-III",
            SurfaceKind::Dp2IV => "dp2-IV",
            SurfaceKind::Dp2V => "dp2-V",
            SurfaceKind::Dp2VII => "dp2-VII",
            SurfaceKind::Dp2VIII => "dp2-VIII",
            SurfaceKind::Dp1I => "dp1-I",
            SurfaceKind::Dp1II => "dp1-II",
            SurfaceKind::Dp1IV => "dp1-IV",
            SurfaceKind::Dp1VII => "dp1-VII",
            SurfaceKind::Dp1XV => "dp1-XV",
            SurfaceKind::Dp1C5 => "dp1-c5",
            SurfaceKind::Dp1C6 => "dp1-c6",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        ALL_SURFACE_KINDS.into_iter().find(|k| k.label() == s)
    }

    pub fn family(self) -> Family {
        match self {
            SurfaceKind::Quadric => Family::Quadric,
            SurfaceKind::Dp6 => Family::Dp6,
            SurfaceKind::Dp4I
            | SurfaceKind::Dp4II
            | SurfaceKind::Dp4III
            | SurfaceKind::Dp4IV
            | SurfaceKind::Dp4V => Family::Dp4,
            SurfaceKind::Dp3I
            | SurfaceKind::Dp3II
            | SurfaceKind::Dp3III
            | SurfaceKind::Dp3IV
            | SurfaceKind::Dp3V
            | SurfaceKind::Dp3VI
            | SurfaceKind::Dp3VIII => Family::Dp3,
            SurfaceKind::Dp2I
            | SurfaceKind::Dp2II
            | SurfaceKind::Dp2III
            | SurfaceKind::Dp2IV
            | SurfaceKind::Dp2V
            | SurfaceKind::Dp2VII
            | SurfaceKind::Dp2VIII => Family::Dp2,
            SurfaceKind::Dp1I
            | SurfaceKind::Dp1II
            | SurfaceKind::Dp1IV
            | SurfaceKind::Dp1VII
            | SurfaceKind::Dp1XV
            | SurfaceKind::Dp1C5
            | SurfaceKind::Dp1C6 => Family::Dp1,
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            SurfaceKind::Dp4I => 4,
            SurfaceKind::Dp4II => 1,
            SurfaceKind::Dp3IV | SurfaceKind::Dp3V | SurfaceKind::Dp3VI => 1,
            SurfaceKind::Dp3VIII => 2,
            SurfaceKind::Dp2IV | SurfaceKind::Dp2V | SurfaceKind::Dp2VIII => 1,
            SurfaceKind::Dp2VII => 2,
            SurfaceKind::Dp1XV => 3,
            SurfaceKind::Dp1C5 | SurfaceKind::Dp1C6 => 2,
            _ => 0,
        }
    }

    /// Builds the surface with the given parameters.  Degenerate choices
    /// are rejected when an exact criterion is available; otherwise the
    /// caller should run [`Surface::certify_smooth`].
    pub fn instantiate(self, params: &[CycNum]) -> Result<Surface, SurfaceError> {
        if params.len() != self.param_count() {
            return Err(SurfaceError::ParameterCount {
                label: self.label(),
                expected: self.param_count(),
                got: params.len(),
            });
        }
        let one = CycNum::one;
        let zero = CycNum::zero;
        let surface = |kind: SurfaceKind, weights: Vec<usize>, equations: Vec<MPoly>| Surface {
            family: kind.family(),
            kind,
            params: params.to_vec(),
            weights,
            equations,
        };
        let dp4 = |kind, q1: [CycNum; 5], q2: [CycNum; 5]| -> Result<Surface, SurfaceError> {
            if !pencil_minors_nonzero(&q1, &q2) {
                return Err(SurfaceError::DegenerateParameters);
            }
            Ok(surface(
                kind,
                vec![1; 5],
                vec![diag_quadric(&q1), diag_quadric(&q2)],
            ))
        };
        let dp3 = |kind, cubic: MPoly| surface(kind, vec![1; 4], vec![cubic]);
        // Double cover model: x0^2 - Q4(x1,x2,x3).
        let dp2 = |kind, quartic: MPoly| {
            let eq = var4(0).pow(2).sub(&quartic);
            surface(kind, vec![2, 1, 1, 1], vec![eq])
        };
        // Weierstrass model: x3^2 + x2^3 + F4(x0,x1) x2 + F6(x0,x1).
        let dp1 = |kind, f4: MPoly, f6: MPoly| {
            let eq = var4(3)
                .pow(2)
                .add(&var4(2).pow(3))
                .add(&f4.mul(&var4(2)))
                .add(&f6);
            surface(kind, vec![1, 1, 2, 3], vec![eq])
        };

        match self {
            SurfaceKind::Quadric => Ok(surface(self, vec![1; 4], vec![])),
            SurfaceKind::Dp6 => Ok(surface(self, vec![], vec![])),
            SurfaceKind::Dp4I => dp4(
                self,
                [one(), one(), one(), one(), one()],
                [
                    zero(),
                    params[0].clone(),
                    params[1].clone(),
                    params[2].clone(),
                    params[3].clone(),
                ],
            ),
            SurfaceKind::Dp4II | SurfaceKind::Dp4III => {
                let a = if self == SurfaceKind::Dp4II {
                    params[0].clone()
                } else {
                    CycNum::i()
                };
                dp4(
                    self,
                    [one(), one(), one(), one(), one()],
                    [one(), a.clone(), -&one(), -&a, zero()],
                )
            }
            SurfaceKind::Dp4IV => dp4(
                self,
                [one(), zeta(3), zeta_pow(3, 2), one(), zero()],
                [one(), zeta_pow(3, 2), zeta(3), zero(), one()],
            ),
            SurfaceKind::Dp4V => {
                let q1 = std::array::from_fn(|j| zeta_pow(5, j as i64));
                let q2 = std::array::from_fn(|j| zeta_pow(5, 4 - j as i64));
                dp4(self, q1, q2)
            }
            SurfaceKind::Dp3I => {
                let f = (0..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(3)));
                Ok(dp3(self, f))
            }
            SurfaceKind::Dp3II => {
                let (s1, _, s3) = elementary_symmetric_sums(4);
                let sq = (0..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(2)));
                let cubes = (0..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(3)));
                let f = sq
                    .mul(&s1)
                    .add(&s3.scale(&CycNum::from_int(2)))
                    .sub(&cubes);
                Ok(dp3(self, f))
            }
            SurfaceKind::Dp3III | SurfaceKind::Dp3IV => {
                let a = if self == SurfaceKind::Dp3III {
                    // (-1 + sqrt 3) / 2
                    &(&crate::cyclo::sqrt_int(3)? - &one()) * &CycNum::from_ratio(1, 2)
                } else {
                    params[0].clone()
                };
                let cubes = (0..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(3)));
                let f = cubes.add(
                    &var4(1)
                        .mul(&var4(2))
                        .mul(&var4(3))
                        .scale(&(&CycNum::from_int(6) * &a)),
                );
                Ok(dp3(self, f))
            }
            SurfaceKind::Dp3V => {
                let sq = (1..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(2)));
                let f = var4(0)
                    .pow(3)
                    .add(&var4(0).mul(&sq))
                    .add(&var4(1).mul(&var4(2)).mul(&var4(3)).scale(&params[0]));
                Ok(dp3(self, f))
            }
            SurfaceKind::Dp3VI => {
                let cubes = (0..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(3)));
                let f = cubes.add(
                    &var4(2)
                        .mul(&var4(3))
                        .mul(&var4(0).add(&var4(1)))
                        .scale(&params[0]),
                );
                Ok(dp3(self, f))
            }
            SurfaceKind::Dp3VIII => {
                let cubes = (0..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(3)));
                let f = cubes.add(
                    &var4(2)
                        .mul(&var4(3))
                        .mul(&var4(0).add(&var4(1).scale(&params[1])))
                        .scale(&params[0]),
                );
                Ok(dp3(self, f))
            }
            SurfaceKind::Dp2I => {
                let q = var4(1)
                    .pow(3)
                    .mul(&var4(2))
                    .add(&var4(1).mul(&var4(3).pow(3)))
                    .add(&var4(2).pow(3).mul(&var4(3)));
                Ok(dp2(self, q))
            }
            SurfaceKind::Dp2II => {
                let q = (1..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(4)));
                Ok(dp2(self, q))
            }
            SurfaceKind::Dp2III => {
                let c = &(&zeta(3) * &CycNum::from_int(4)) + &CycNum::from_int(2);
                let q = (1..4)
                    .fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(4)))
                    .add(&var4(1).pow(2).mul(&var4(2).pow(2)).scale(&c));
                Ok(dp2(self, q))
            }
            SurfaceKind::Dp2IV => {
                let quartics = (1..4).fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(4)));
                let mixed = var4(1)
                    .pow(2)
                    .mul(&var4(2).pow(2))
                    .add(&var4(1).pow(2).mul(&var4(3).pow(2)))
                    .add(&var4(2).pow(2).mul(&var4(3).pow(2)));
                Ok(dp2(self, quartics.sub(&mixed.scale(&params[0]))))
            }
            SurfaceKind::Dp2V => {
                let q = (1..4)
                    .fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(4)))
                    .add(&var4(1).pow(2).mul(&var4(2).pow(2)).scale(&params[0]));
                Ok(dp2(self, q))
            }
            SurfaceKind::Dp2VII => {
                let q = (1..4)
                    .fold(MPoly::zero(4), |acc, i| acc.add(&var4(i).pow(4)))
                    .add(&var4(2).pow(2).mul(&var4(3).pow(2)).scale(&params[0]))
                    .add(
                        &var4(1)
                            .pow(2)
                            .mul(&var4(2))
                            .mul(&var4(3))
                            .scale(&params[1]),
                    );
                Ok(dp2(self, q))
            }
            SurfaceKind::Dp2VIII => {
                let q = var4(3)
                    .pow(3)
                    .mul(&var4(1))
                    .add(&var4(1).pow(4))
                    .add(&var4(2).pow(4))
                    .add(&var4(1).pow(2).mul(&var4(2).pow(2)).scale(&params[0]));
                Ok(dp2(self, q))
            }
            SurfaceKind::Dp1I => {
                let f6 = binary_in_first_two(&[
                    zero(),
                    one(),
                    zero(),
                    zero(),
                    zero(),
                    -&one(),
                    zero(),
                ]);
                Ok(dp1(self, MPoly::zero(4), f6))
            }
            SurfaceKind::Dp1II => {
                let f6 =
                    binary_in_first_two(&[one(), zero(), zero(), zero(), zero(), zero(), one()]);
                Ok(dp1(self, MPoly::zero(4), f6))
            }
            SurfaceKind::Dp1IV => {
                let f6 =
                    binary_in_first_two(&[one(), zero(), zero(), zero(), zero(), one(), zero()]);
                Ok(dp1(self, MPoly::zero(4), f6))
            }
            SurfaceKind::Dp1VII => {
                let f4 = binary_in_first_two(&[one(), zero(), zero(), zero(), zero()]);
                let f6 =
                    binary_in_first_two(&[zero(), zero(), zero(), zero(), zero(), zero(), one()]);
                Ok(dp1(self, f4, f6))
            }
            SurfaceKind::Dp1XV => {
                let f4 =
                    binary_in_first_two(&[params[0].clone(), zero(), zero(), zero(), one()]);
                let f6 = binary_in_first_two(&[
                    params[1].clone(),
                    zero(),
                    zero(),
                    zero(),
                    params[2].clone(),
                    zero(),
                    zero(),
                ]);
                Ok(dp1(self, f4, f6))
            }
            SurfaceKind::Dp1C5 => {
                let f4 = binary_in_first_two(&[params[0].clone(), zero(), zero(), zero(), zero()]);
                let f6 = binary_in_first_two(&[
                    params[1].clone(),
                    zero(),
                    zero(),
                    zero(),
                    zero(),
                    one(),
                    zero(),
                ]);
                Ok(dp1(self, f4, f6))
            }
            SurfaceKind::Dp1C6 => {
                let f4 = binary_in_first_two(&[params[0].clone(), zero(), zero(), zero(), zero()]);
                let f6 = binary_in_first_two(&[
                    one(),
                    zero(),
                    zero(),
                    zero(),
                    zero(),
                    zero(),
                    params[1].clone(),
                ]);
                Ok(dp1(self, f4, f6))
            }
        }
    }

    /// Draws small random rational parameters until the surface both
    /// instantiates and certifies smooth.  Deterministic for a fixed
    /// generator state.
    pub fn specialize<R: Rng>(self, rng: &mut R) -> Result<Surface, SurfaceError> {
        for _ in 0..64 {
            let params: Vec<CycNum> = (0..self.param_count())
                .map(|_| random_rational(rng))
                .collect();
            let Ok(s) = self.instantiate(&params) else {
                continue;
            };
            if s.certify_smooth() {
                return Ok(s);
            }
            if self.param_count() == 0 {
                // No further draws can change the outcome.
                return Err(SurfaceError::DegenerateParameters);
            }
        }
        Err(SurfaceError::DegenerateParameters)
    }
}

/// Small random nonzero rational, kept away from 0 and +-1 so that the
/// standard genericity constraints hold with high probability.
pub fn random_rational<R: Rng>(rng: &mut R) -> CycNum {
    let num = rng.gen_range(2..=23_i64);
    let den = rng.gen_range(1..=3_i64);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    CycNum::from_ratio(sign * num, den)
}

#[cfg(test)]
mod tests {
    use super::generators as g;
    use super::*;
    use crate::autgrp::closure::FiniteGroup;
    use crate::autgrp::GroupElement as _;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(vals: &[i64]) -> Vec<CycNum> {
        vals.iter().map(|&v| CycNum::from_int(v)).collect()
    }

    #[test]
    fn dp4_pencil_rejects_degenerate_parameters() {
        assert!(SurfaceKind::Dp4I.instantiate(&ints(&[1, 2, 3, 4])).is_ok());
        assert!(SurfaceKind::Dp4I.instantiate(&ints(&[1, 1, 2, 3])).is_err());
        assert!(SurfaceKind::Dp4I.instantiate(&ints(&[0, 1, 2, 3])).is_err());
        assert!(SurfaceKind::Dp4II.instantiate(&ints(&[2])).is_ok());
        assert!(SurfaceKind::Dp4II.instantiate(&ints(&[1])).is_err());
        assert!(SurfaceKind::Dp4II.instantiate(&ints(&[-1])).is_err());
    }

    #[test]
    fn dp4_sign_changes_and_double_transposition_preserve() {
        let s = SurfaceKind::Dp4II.instantiate(&ints(&[2])).unwrap();
        for i in 1..=4 {
            assert!(s.preserved_by(&g::dp4_iota(i)).unwrap());
        }
        assert!(s.preserved_by(&g::dp4_perm(&[2, 3, 0, 1, 4])).unwrap());
        // A stray transposition moves the pencil.
        assert!(!s.preserved_by(&g::dp4_perm(&[1, 0, 2, 3, 4])).unwrap());
    }

    #[test]
    fn dp4_cyclic_types_have_their_symmetries() {
        let s3 = SurfaceKind::Dp4III.instantiate(&[]).unwrap();
        assert!(s3.preserved_by(&g::dp4_perm(&[1, 2, 3, 0, 4])).unwrap());
        let s4 = SurfaceKind::Dp4IV.instantiate(&[]).unwrap();
        assert!(s4.preserved_by(&g::dp4_sigma_tau()).unwrap());
        assert!(s4.preserved_by(&g::dp4_perm(&[0, 2, 1, 4, 3])).unwrap());
        // The diagonal factor alone is not an automorphism; only the
        // composite with the 3-cycle is.
        assert!(!s4.preserved_by(&g::dp4_tau()).unwrap());
        assert_eq!(g::dp4_sigma_tau().order(), 3);
        let s5 = SurfaceKind::Dp4V.instantiate(&[]).unwrap();
        assert!(s5.preserved_by(&g::dp4_perm(&[1, 2, 3, 4, 0])).unwrap());
        assert!(s5.preserved_by(&g::dp4_perm(&[0, 4, 3, 2, 1])).unwrap());
        assert!(s5.certify_smooth());
    }

    #[test]
    fn dp3_pentahedral_cubic_admits_order_five_symmetry() {
        let s = SurfaceKind::Dp3II.instantiate(&[]).unwrap();
        let a1 = g::dp3_alpha1();
        assert_eq!(a1.order(), 5);
        assert!(s.preserved_by(&a1).unwrap());
        assert!(s.preserved_by(&g::dp3_sigma(&[1, 0, 2, 3])).unwrap());
        assert!(s.certify_smooth());
    }

    #[test]
    fn dp3_fourier_symmetry_of_the_triple_product_cubic() {
        let s = SurfaceKind::Dp3III.instantiate(&[]).unwrap();
        let a2 = g::dp3_alpha2();
        assert!(s.preserved_by(&a2).unwrap());
        assert_eq!(a2.order(), 12);
        // The same matrix does not fix a generic member of the family.
        let generic = SurfaceKind::Dp3IV.instantiate(&ints(&[3])).unwrap();
        assert!(!generic.preserved_by(&a2).unwrap());
        assert!(generic.preserved_by(&g::dp3_tau(1)).unwrap());
        assert!(generic.preserved_by(&g::dp3_sigma(&[0, 1, 3, 2])).unwrap());
    }

    #[test]
    fn dp3_remaining_types_keep_their_listed_generators() {
        let v = SurfaceKind::Dp3V.instantiate(&ints(&[5])).unwrap();
        assert!(v.preserved_by(&g::dp3_tau(2)).unwrap());
        assert!(v.preserved_by(&g::dp3_sigma(&[0, 2, 3, 1])).unwrap());
        let vi = SurfaceKind::Dp3VI.instantiate(&ints(&[4])).unwrap();
        assert!(vi.preserved_by(&g::dp3_tau(1)).unwrap());
        assert!(vi.preserved_by(&g::dp3_sigma(&[1, 0, 2, 3])).unwrap());
        let viii = SurfaceKind::Dp3VIII.instantiate(&ints(&[3, 5])).unwrap();
        assert!(viii.preserved_by(&g::dp3_tau(1)).unwrap());
        assert!(viii.preserved_by(&g::dp3_sigma(&[0, 1, 3, 2])).unwrap());
        assert!(!viii.preserved_by(&g::dp3_sigma(&[1, 0, 2, 3])).unwrap());
    }

    #[test]
    fn dp2_quartic_cover_symmetries() {
        let klein = SurfaceKind::Dp2I.instantiate(&[]).unwrap();
        assert!(klein.preserved_by(&g::dp2_sigma(1)).unwrap());
        assert!(klein.preserved_by(&g::dp2_sigma(2)).unwrap());
        assert!(klein.preserved_by(&g::dp2_iota()).unwrap());

        let fermat = SurfaceKind::Dp2II.instantiate(&[]).unwrap();
        assert!(fermat.preserved_by(&g::dp2_sigma(3)).unwrap());
        assert!(fermat.preserved_by(&g::dp2_sigma(4)).unwrap());

        let five = SurfaceKind::Dp2V.instantiate(&ints(&[3])).unwrap();
        assert!(five.preserved_by(&g::dp2_sigma(7)).unwrap());
        assert!(five.preserved_by(&g::dp2_sigma(10)).unwrap());
        assert!(five.preserved_by(&g::dp2_sigma(11)).unwrap());
        assert!(!five.preserved_by(&g::dp2_sigma(3)).unwrap());

        let seven = SurfaceKind::Dp2VII.instantiate(&ints(&[3, 5])).unwrap();
        assert!(seven.preserved_by(&g::dp2_sigma(8)).unwrap());
        assert!(seven.preserved_by(&g::dp2_sigma(9)).unwrap());

        let eight = SurfaceKind::Dp2VIII.instantiate(&ints(&[3])).unwrap();
        assert!(eight.preserved_by(&g::dp2_sigma(12)).unwrap());
        assert_eq!(g::dp2_sigma(12).order(), 6);
    }

    #[test]
    fn dp2_klein_group_has_octad_rotation_product() {
        // The two exhibited symmetries of the double cover of the Klein
        // quartic generate a simple group of order 168.
        let s1 = g::dp2_sigma(1);
        let s2 = g::dp2_sigma(2);
        let grp = FiniteGroup::generate(&[s1, s2]).unwrap();
        assert_eq!(grp.order(), 168);
    }

    #[test]
    fn dp2_quaternion_subgroup_on_type_five() {
        let grp = FiniteGroup::generate(&[g::dp2_sigma(7), g::dp2_sigma(11)]).unwrap();
        assert_eq!(grp.order(), 8);
        let involutions = grp
            .elements()
            .iter()
            .filter(|e| e.order() == 2)
            .count();
        let order_four = grp
            .elements()
            .iter()
            .filter(|e| e.order() == 4)
            .count();
        assert_eq!(involutions, 1);
        assert_eq!(order_four, 6);
    }

    #[test]
    fn dp1_named_symmetries_preserve_their_types() {
        let one = SurfaceKind::Dp1I.instantiate(&[]).unwrap();
        for k in [1, 2, 3, 4] {
            assert!(one.preserved_by(&g::dp1_sigma(k)).unwrap(), "sigma{k}");
        }
        assert_eq!(g::dp1_sigma(2).order(), 6);
        let two = SurfaceKind::Dp1II.instantiate(&[]).unwrap();
        for k in [1, 5, 6] {
            assert!(two.preserved_by(&g::dp1_sigma(k)).unwrap(), "sigma{k}");
        }
        let four = SurfaceKind::Dp1IV.instantiate(&[]).unwrap();
        assert!(four.preserved_by(&g::dp1_sigma(7)).unwrap());
        // Weighted rescaling by -1 kills the naive period of the
        // coordinate scalars: the fifth power already acts trivially.
        assert_eq!(g::dp1_sigma(7).order(), 5);
        assert_eq!(g::dp1_gamma().then(&g::dp1_sigma(7)).order(), 10);
        let seven = SurfaceKind::Dp1VII.instantiate(&[]).unwrap();
        assert!(seven.preserved_by(&g::dp1_sigma(8)).unwrap());
        assert_eq!(g::dp1_sigma(8).order(), 12);
        assert!(!seven.preserved_by(&g::dp1_sigma(1)).unwrap());
        let xv = SurfaceKind::Dp1XV.instantiate(&ints(&[2, 3, 5])).unwrap();
        assert!(xv.preserved_by(&g::dp1_sigma(9)).unwrap());
        assert_eq!(g::dp1_sigma(9).order(), 4);
        // The Bertini involution acts on every member; the order-three
        // fibre twist needs the quartic coefficient form to vanish.
        for s in [&one, &two, &four, &seven, &xv] {
            assert!(s.preserved_by(&g::dp1_gamma()).unwrap());
        }
        for s in [&one, &two, &four] {
            assert!(s.preserved_by(&g::dp1_delta()).unwrap());
        }
        for s in [&seven, &xv] {
            assert!(!s.preserved_by(&g::dp1_delta()).unwrap());
        }
    }

    #[test]
    fn dp1_isolated_families_keep_their_cyclic_symmetry() {
        let c5 = SurfaceKind::Dp1C5.instantiate(&ints(&[2, 3])).unwrap();
        let r5 = g::dp1_scaling(&CycNum::one(), &zeta(5));
        assert!(c5.preserved_by(&r5).unwrap());
        assert_eq!(r5.order(), 5);
        let c6 = SurfaceKind::Dp1C6.instantiate(&ints(&[2, 3])).unwrap();
        let r6 = g::dp1_scaling(&CycNum::one(), &zeta(6));
        assert!(c6.preserved_by(&r6).unwrap());
        assert!(!c5.preserved_by(&r6).unwrap());
    }

    #[test]
    fn hexagon_fan_distinguishes_the_toric_symmetries() {
        let s = SurfaceKind::Dp6.instantiate(&[]).unwrap();
        assert!(s.preserved_by(&g::dp6_rotation()).unwrap());
        assert!(s.preserved_by(&g::dp6_reflection()).unwrap());
        assert!(s.preserved_by(&g::dp6_inversion()).unwrap());
        // An order-four lattice rotation is a valid torus map but does
        // not extend to the hexagon.
        let quarter = g::dp6_monomial([[0, -1], [1, 0]], CycNum::one(), CycNum::one());
        assert!(!s.preserved_by(&quarter).unwrap());
        let perm = hexagon_ray_permutation(&[[-1, 1], [-1, 0]]).unwrap();
        // A three-fold rotation: every ray advances four cyclic steps.
        assert_eq!(perm, [4, 5, 0, 1, 2, 3]);
    }

    #[test]
    fn hexagon_group_tower_orders() {
        let expected = [48, 24, 24, 36, 18, 18, 12, 6, 6];
        for (k, want) in (1..=9).zip(expected) {
            let gens = g::dp6_group(k);
            let grp = FiniteGroup::generate(&gens).unwrap();
            assert_eq!(grp.order(), want, "group {k}");
        }
    }

    #[test]
    fn seeded_specialization_is_deterministic_and_smooth() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let a = SurfaceKind::Dp4I.specialize(&mut rng1).unwrap();
        let b = SurfaceKind::Dp4I.specialize(&mut rng2).unwrap();
        assert_eq!(a.params(), b.params());
        assert!(a.certify_smooth());

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cubic = SurfaceKind::Dp3IV.specialize(&mut rng).unwrap();
        assert!(cubic.certify_smooth());
        let quartic = SurfaceKind::Dp2V.specialize(&mut rng).unwrap();
        assert!(quartic.certify_smooth());
        let sextic = SurfaceKind::Dp1XV.specialize(&mut rng).unwrap();
        assert!(sextic.certify_smooth());
    }

    #[test]
    fn fixed_members_certify_smooth() {
        for kind in [
            SurfaceKind::Dp3I,
            SurfaceKind::Dp3II,
            SurfaceKind::Dp3III,
            SurfaceKind::Dp2I,
            SurfaceKind::Dp2II,
            SurfaceKind::Dp1I,
            SurfaceKind::Dp1II,
            SurfaceKind::Dp1IV,
            SurfaceKind::Dp1VII,
        ] {
            let s = kind.instantiate(&[]).unwrap();
            assert!(s.certify_smooth(), "{}", kind.label());
        }
    }

    #[test]
    fn labels_round_trip() {
        for kind in ALL_SURFACE_KINDS {
            assert_eq!(SurfaceKind::from_label(kind.label()), Some(kind));
        }
        assert_eq!(SurfaceKind::from_label("dp9"), None);
    }

    #[test]
    fn carrier_mismatch_is_reported() {
        let s = SurfaceKind::Dp3I.instantiate(&[]).unwrap();
        let err = s.preserved_by(&g::dp2_iota()).unwrap_err();
        assert!(matches!(err, SurfaceError::CarrierMismatch { .. }));
    }
}
