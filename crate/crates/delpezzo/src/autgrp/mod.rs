//! Automorphism carriers and finite group machinery.
//!
//! Concrete automorphisms of the surfaces live in one of five carrier
//! types, each normalized to a canonical projective representative so
//! that equal maps have equal data:
//!
//! * [`QuadricAut`]: pairs of Moebius transformations on `P1 x P1`,
//!   optionally composed with the factor swap.
//! * [`MonomialAut`]: torus-normalizer maps on the hexagonal toric
//!   surface, a `GL_2(Z)` exponent matrix plus two torus scalars.
//! * [`LinearAut`]: projective linear maps on `P^n` (anticanonical
//!   cubic surfaces in `P^3`, intersections of quadrics in `P^4`).
//! * [`WeightedDp2Aut`]: maps of `P(2,1,1,1)` preserving the shape
//!   `x0^2 = f4(x1,x2,x3)`, a scalar on `x0` and a `3x3` block.
//! * [`WeightedDp1Aut`]: maps of `P(1,1,2,3)` preserving the shape
//!   `x3^2 + x2^3 + f4 x2 + f6 = 0`.
//!
//! Constructors reject non-invertible data and maps of infinite order.
//! The submodules provide generator closure ([`closure`]), abstract
//! group analysis ([`abstract_group`]), permutation and matrix model
//! groups ([`perm`]), and a catalog of small-group identifications
//! ([`gapid`]).

pub mod abstract_group;
pub mod closure;
pub mod gapid;
pub mod perm;

use crate::cyclo::matrix::{CycMat, Mat};
use crate::cyclo::{nth_root_unit_scalar, CycError, CycNum};
use num_rational::BigRational;
use thiserror::Error;

/// Errors from carrier construction and closure.
#[derive(Debug, Clone, Error)]
pub enum AutError {
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("map has projective order exceeding {cap}")]
    InfiniteOrder { cap: u32 },
    #[error("torus scalar {0} is not a root of unity; map has infinite order")]
    NonUnitScalar(String),
    #[error("exponent matrix must lie in GL_2(Z) with finite order")]
    BadExponentMatrix,
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("cannot generate a group from an empty generator list")]
    EmptyGenerators,
    #[error("generators have mismatched carrier shapes")]
    ShapeMismatch,
    #[error(transparent)]
    Scalar(#[from] CycError),
}

/// Cap on projective orders accepted at construction time.
pub const ORDER_CAP: u32 = 360;

/// A canonical, totally ordered key identifying a group element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ElemKey(Vec<KeyPart>);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum KeyPart {
    Int(i64),
    Rat(BigRational),
}

impl ElemKey {
    pub(crate) fn new() -> Self {
        ElemKey(Vec::new())
    }
    pub(crate) fn push_int(&mut self, v: i64) {
        self.0.push(KeyPart::Int(v));
    }
    fn push_cyc(&mut self, v: &CycNum) {
        // Reduce to the minimal conductor so mathematically equal
        // values always produce identical keys.
        let r = v.reduced();
        self.0.push(KeyPart::Int(r.conductor() as i64));
        for c in r.coeffs() {
            self.0.push(KeyPart::Rat(c.clone()));
        }
    }
    fn push_mat(&mut self, m: &CycMat) {
        self.push_int(m.rows as i64);
        for v in m.data() {
            self.push_cyc(v);
        }
    }
}

/// Elements of a group that can be generated and analyzed by closure.
///
/// `then` is application order: `a.then(b)` applies `a` first and `b`
/// second, so words read left to right.
pub trait GroupElement: Clone + PartialEq {
    fn then(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn key(&self) -> ElemKey;
    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
}

/// Scales a matrix so its first nonzero entry (row-major) is one.
fn canonical_scale(m: &CycMat) -> CycMat {
    let lead = m.data().iter().find(|x| !x.is_zero());
    match lead {
        Some(l) => {
            let inv = l.inv().expect("nonzero leading entry");
            m.scale(&inv)
        }
        None => m.clone(),
    }
}

/// The scalar `lead` such that `m = lead * canonical_scale(m)`.
fn leading_scalar(m: &CycMat) -> CycNum {
    m.data()
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .unwrap_or_else(CycNum::zero)
}

/// Rescales a canonical matrix of finite projective order `m` to finite
/// multiplicative order: returns `(m_scaled, k)` with `m_scaled^k = I`.
pub fn finite_matrix_rep(m: &CycMat) -> Result<(CycMat, u32), AutError> {
    let canon = canonical_scale(m);
    let proj_order = projective_matrix_order(&canon)?;
    let raw_power = canon.pow(proj_order as u64);
    // raw_power = c * I for some scalar c.
    let c = raw_power.at(0, 0).clone();
    let lambda = nth_root_unit_scalar(&c, proj_order)?;
    let scaled = canon.scale(&lambda.inv().map_err(AutError::Scalar)?);
    debug_assert!(scaled.pow(proj_order as u64) == CycMat::identity(m.rows));
    let mult_order = crate::cyclo::divisors(proj_order)
        .into_iter()
        .find(|&d| scaled.pow(d as u64) == CycMat::identity(m.rows))
        .expect("order divides projective order");
    Ok((scaled, mult_order))
}

/// Projective order of a canonically scaled matrix.
fn projective_matrix_order(canon: &CycMat) -> Result<u32, AutError> {
    let id = CycMat::identity(canon.rows);
    let mut p = canon.clone();
    for k in 1..=ORDER_CAP {
        if p == id {
            return Ok(k);
        }
        p = canonical_scale(&p.matmul(canon));
    }
    Err(AutError::InfiniteOrder { cap: ORDER_CAP })
}

/// Automorphism of the smooth quadric `P1 x P1`: Moebius maps `a` and
/// `b` on the factors, optionally preceded by the factor swap.
///
/// Without swap the action is `(x, y) -> (a x, b y)`; with swap it is
/// `(x, y) -> (a y, b x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadricAut {
    a: CycMat,
    b: CycMat,
    swap: bool,
}

impl QuadricAut {
    pub fn new(a: CycMat, b: CycMat, swap: bool) -> Result<Self, AutError> {
        assert_eq!((a.rows, a.cols), (2, 2));
        assert_eq!((b.rows, b.cols), (2, 2));
        if a.det().is_zero() || b.det().is_zero() {
            return Err(AutError::NotInvertible);
        }
        let g = QuadricAut {
            a: canonical_scale(&a),
            b: canonical_scale(&b),
            swap,
        };
        g.order()?;
        Ok(g)
    }

    /// Diagonal torus map `(x, y) -> (s x, t y)` in affine charts.
    pub fn diag(s: &CycNum, t: &CycNum) -> Result<Self, AutError> {
        let a = CycMat::new(2, 2, vec![s.clone(), CycNum::zero(), CycNum::zero(), CycNum::one()]);
        let b = CycMat::new(2, 2, vec![t.clone(), CycNum::zero(), CycNum::zero(), CycNum::one()]);
        Self::new(a, b, false)
    }

    /// The swap `(x, y) -> (y, x)`.
    pub fn swap_map() -> Self {
        QuadricAut {
            a: CycMat::identity(2),
            b: CycMat::identity(2),
            swap: true,
        }
    }

    /// The inversion `(x, y) -> (1/x, 1/y)` in affine charts.
    pub fn inversion() -> Self {
        let f = CycMat::new(
            2,
            2,
            vec![CycNum::zero(), CycNum::one(), CycNum::one(), CycNum::zero()],
        );
        QuadricAut {
            a: f.clone(),
            b: f,
            swap: false,
        }
    }

    /// General constructor from affine Moebius data on each factor.
    pub fn from_moebius(a: [[i64; 2]; 2], b: [[i64; 2]; 2], swap: bool) -> Result<Self, AutError> {
        let m = |m: [[i64; 2]; 2]| {
            CycMat::new(
                2,
                2,
                vec![
                    CycNum::from_int(m[0][0]),
                    CycNum::from_int(m[0][1]),
                    CycNum::from_int(m[1][0]),
                    CycNum::from_int(m[1][1]),
                ],
            )
        };
        Self::new(m(a), m(b), swap)
    }

    pub fn factor_a(&self) -> &CycMat {
        &self.a
    }
    pub fn factor_b(&self) -> &CycMat {
        &self.b
    }
    pub fn swaps_factors(&self) -> bool {
        self.swap
    }

    /// Order of the map; errors past [`ORDER_CAP`].
    pub fn order(&self) -> Result<u32, AutError> {
        let id = self.identity_like();
        let mut p = self.clone();
        for k in 1..=ORDER_CAP {
            if p == id {
                return Ok(k);
            }
            p = p.then(self);
        }
        Err(AutError::InfiniteOrder { cap: ORDER_CAP })
    }
}

impl GroupElement for QuadricAut {
    fn then(&self, other: &Self) -> Self {
        // other o self: apply self first.
        let (a1, b1, s1) = (&self.a, &self.b, self.swap);
        let (a2, b2, s2) = (&other.a, &other.b, other.swap);
        let a = if s2 { a2.matmul(b1) } else { a2.matmul(a1) };
        let b = if s2 { b2.matmul(a1) } else { b2.matmul(b1) };
        QuadricAut {
            a: canonical_scale(&a),
            b: canonical_scale(&b),
            swap: s1 ^ s2,
        }
    }

    fn inverse(&self) -> Self {
        let ai = self.a.inverse().expect("carrier is invertible");
        let bi = self.b.inverse().expect("carrier is invertible");
        if self.swap {
            QuadricAut {
                a: canonical_scale(&bi),
                b: canonical_scale(&ai),
                swap: true,
            }
        } else {
            QuadricAut {
                a: canonical_scale(&ai),
                b: canonical_scale(&bi),
                swap: false,
            }
        }
    }

    fn identity_like(&self) -> Self {
        QuadricAut {
            a: CycMat::identity(2),
            b: CycMat::identity(2),
            swap: false,
        }
    }

    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_int(self.swap as i64);
        k.push_mat(&self.a);
        k.push_mat(&self.b);
        k
    }
}

/// Torus-normalizer automorphism of the degree-six toric surface, in
/// torus coordinates: `(x, y) -> (s * x^{m00} y^{m01}, t * x^{m10} y^{m11})`
/// with `m` in `GL_2(Z)` of finite order and `s`, `t` roots of unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialAut {
    m: [[i64; 2]; 2],
    s: CycNum,
    t: CycNum,
}

impl MonomialAut {
    pub fn new(m: [[i64; 2]; 2], s: CycNum, t: CycNum) -> Result<Self, AutError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det != 1 && det != -1 {
            return Err(AutError::BadExponentMatrix);
        }
        if s.is_zero() || t.is_zero() {
            return Err(AutError::NotInvertible);
        }
        let g = MonomialAut { m, s, t };
        // Finite order needs m^k = 1 for some k <= 6 and unit scalars.
        let mut p = [[1i64, 0], [0, 1]];
        let mut k = 0;
        loop {
            p = mat2_mul(&p, &m);
            k += 1;
            if p == [[1, 0], [0, 1]] {
                break;
            }
            if k > 6 {
                return Err(AutError::BadExponentMatrix);
            }
        }
        let mut pw = g.clone();
        for _ in 1..k {
            pw = pw.then(&g);
        }
        // pw has trivial exponent matrix; scalars must be roots of unity.
        for sc in [&pw.s, &pw.t] {
            if sc.multiplicative_order().is_none() {
                return Err(AutError::NonUnitScalar(sc.to_string()));
            }
        }
        Ok(g)
    }

    /// Pure torus translation `(x, y) -> (s x, t y)`.
    pub fn torus(s: CycNum, t: CycNum) -> Result<Self, AutError> {
        Self::new([[1, 0], [0, 1]], s, t)
    }

    pub fn exponent_matrix(&self) -> [[i64; 2]; 2] {
        self.m
    }
    pub fn scalars(&self) -> (&CycNum, &CycNum) {
        (&self.s, &self.t)
    }

    pub fn order(&self) -> u32 {
        let id = self.identity_like();
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = p.then(self);
            k += 1;
            assert!(k <= 10_000, "monomial order runaway");
        }
        k
    }
}

fn mat2_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mat2_inv(m: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    assert!(det == 1 || det == -1);
    [
        [m[1][1] * det, -m[0][1] * det],
        [-m[1][0] * det, m[0][0] * det],
    ]
}

impl GroupElement for MonomialAut {
    fn then(&self, other: &Self) -> Self {
        // other o self with self applied first: exponent matrices
        // compose as n * m; scalars pick up monomials of self's scalars.
        let n = &other.m;
        let m = mat2_mul(n, &self.m);
        let s = &other.s * &(&self.s.pow(n[0][0]) * &self.t.pow(n[0][1]));
        let t = &other.t * &(&self.s.pow(n[1][0]) * &self.t.pow(n[1][1]));
        MonomialAut { m, s, t }
    }

    fn inverse(&self) -> Self {
        let mi = mat2_inv(&self.m);
        let s = (&self.s.pow(mi[0][0]) * &self.t.pow(mi[0][1]))
            .inv()
            .expect("scalars are nonzero");
        let t = (&self.s.pow(mi[1][0]) * &self.t.pow(mi[1][1]))
            .inv()
            .expect("scalars are nonzero");
        MonomialAut { m: mi, s, t }
    }

    fn identity_like(&self) -> Self {
        MonomialAut {
            m: [[1, 0], [0, 1]],
            s: CycNum::one(),
            t: CycNum::one(),
        }
    }

    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        for row in &self.m {
            for &v in row {
                k.push_int(v);
            }
        }
        k.push_cyc(&self.s);
        k.push_cyc(&self.t);
        k
    }
}

/// Projective linear automorphism of `P^{n-1}`, stored canonically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearAut {
    m: CycMat,
}

impl LinearAut {
    pub fn new(m: CycMat) -> Result<Self, AutError> {
        assert_eq!(m.rows, m.cols);
        if m.det().is_zero() {
            return Err(AutError::NotInvertible);
        }
        let canon = canonical_scale(&m);
        projective_matrix_order(&canon)?;
        Ok(LinearAut { m: canon })
    }

    pub fn matrix(&self) -> &CycMat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows
    }

    pub fn order(&self) -> u32 {
        projective_matrix_order(&self.m).expect("validated at construction")
    }

    /// A rescaling of finite multiplicative order, for eigenanalysis.
    pub fn finite_rep(&self) -> Result<(CycMat, u32), AutError> {
        finite_matrix_rep(&self.m)
    }
}

impl GroupElement for LinearAut {
    fn then(&self, other: &Self) -> Self {
        LinearAut {
            m: canonical_scale(&other.m.matmul(&self.m)),
        }
    }
    fn inverse(&self) -> Self {
        LinearAut {
            m: canonical_scale(&self.m.inverse().expect("carrier is invertible")),
        }
    }
    fn identity_like(&self) -> Self {
        LinearAut {
            m: CycMat::identity(self.m.rows),
        }
    }
    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_mat(&self.m);
        k
    }
}

/// Automorphism of `P(2,1,1,1)` preserving `x0^2 = f4(x1,x2,x3)`:
/// `x0 -> s0 x0` together with a linear map on `(x1,x2,x3)`.  The pair
/// `(s0, B)` is defined up to `(lambda^2 s0, lambda B)`; the stored
/// representative scales `B` to leading entry one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedDp2Aut {
    s0: CycNum,
    m: CycMat,
}

impl WeightedDp2Aut {
    pub fn new(s0: CycNum, m: CycMat) -> Result<Self, AutError> {
        assert_eq!((m.rows, m.cols), (3, 3));
        if s0.is_zero() || m.det().is_zero() {
            return Err(AutError::NotInvertible);
        }
        let g = Self::canonical(s0, m);
        let id = g.identity_like();
        let mut p = g.clone();
        for _ in 1..=ORDER_CAP {
            if p == id {
                return Ok(g);
            }
            p = p.then(&g);
        }
        Err(AutError::InfiniteOrder { cap: ORDER_CAP })
    }

    fn canonical(s0: CycNum, m: CycMat) -> Self {
        let lead = leading_scalar(&m);
        let li = lead.inv().expect("invertible matrix has nonzero lead");
        WeightedDp2Aut {
            s0: &s0 * &(&li * &li),
            m: m.scale(&li),
        }
    }

    pub fn scalar(&self) -> &CycNum {
        &self.s0
    }
    pub fn matrix(&self) -> &CycMat {
        &self.m
    }

    pub fn order(&self) -> u32 {
        let id = self.identity_like();
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = p.then(self);
            k += 1;
            assert!(k as u32 <= ORDER_CAP, "order validated at construction");
        }
        k
    }
}

impl GroupElement for WeightedDp2Aut {
    fn then(&self, other: &Self) -> Self {
        Self::canonical(&other.s0 * &self.s0, other.m.matmul(&self.m))
    }
    fn inverse(&self) -> Self {
        Self::canonical(
            self.s0.inv().expect("nonzero scalar"),
            self.m.inverse().expect("carrier is invertible"),
        )
    }
    fn identity_like(&self) -> Self {
        WeightedDp2Aut {
            s0: CycNum::one(),
            m: CycMat::identity(3),
        }
    }
    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_cyc(&self.s0);
        k.push_mat(&self.m);
        k
    }
}

/// Automorphism of `P(1,1,2,3)` preserving the shape
/// `x3^2 + x2^3 + f4(x0,x1) x2 + f6(x0,x1) = 0`: a linear map `B` on
/// `(x0,x1)` with scalars `s2` on `x2` and `s3` on `x3`, up to
/// `(lambda B, lambda^2 s2, lambda^3 s3)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedDp1Aut {
    m: CycMat,
    s2: CycNum,
    s3: CycNum,
}

impl WeightedDp1Aut {
    pub fn new(m: CycMat, s2: CycNum, s3: CycNum) -> Result<Self, AutError> {
        assert_eq!((m.rows, m.cols), (2, 2));
        if s2.is_zero() || s3.is_zero() || m.det().is_zero() {
            return Err(AutError::NotInvertible);
        }
        let g = Self::canonical(m, s2, s3);
        let id = g.identity_like();
        let mut p = g.clone();
        for _ in 1..=ORDER_CAP {
            if p == id {
                return Ok(g);
            }
            p = p.then(&g);
        }
        Err(AutError::InfiniteOrder { cap: ORDER_CAP })
    }

    fn canonical(m: CycMat, s2: CycNum, s3: CycNum) -> Self {
        let lead = leading_scalar(&m);
        let li = lead.inv().expect("invertible matrix has nonzero lead");
        WeightedDp1Aut {
            m: m.scale(&li),
            s2: &s2 * &(&li * &li),
            s3: &s3 * &(&(&li * &li) * &li),
        }
    }

    pub fn matrix(&self) -> &CycMat {
        &self.m
    }
    pub fn scalar2(&self) -> &CycNum {
        &self.s2
    }
    pub fn scalar3(&self) -> &CycNum {
        &self.s3
    }

    pub fn order(&self) -> u32 {
        let id = self.identity_like();
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = p.then(self);
            k += 1;
            assert!(k as u32 <= ORDER_CAP, "order validated at construction");
        }
        k
    }
}

impl GroupElement for WeightedDp1Aut {
    fn then(&self, other: &Self) -> Self {
        Self::canonical(
            other.m.matmul(&self.m),
            &other.s2 * &self.s2,
            &other.s3 * &self.s3,
        )
    }
    fn inverse(&self) -> Self {
        Self::canonical(
            self.m.inverse().expect("carrier is invertible"),
            self.s2.inv().expect("nonzero scalar"),
            self.s3.inv().expect("nonzero scalar"),
        )
    }
    fn identity_like(&self) -> Self {
        WeightedDp1Aut {
            m: CycMat::identity(2),
            s2: CycNum::one(),
            s3: CycNum::one(),
        }
    }
    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_mat(&self.m);
        k.push_cyc(&self.s2);
        k.push_cyc(&self.s3);
        k
    }
}

/// Uniform carrier for pipelines that mix surface families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceAut {
    Quadric(QuadricAut),
    Monomial(MonomialAut),
    Linear(LinearAut),
    WeightedDp2(WeightedDp2Aut),
    WeightedDp1(WeightedDp1Aut),
}

impl SurfaceAut {
    pub fn order(&self) -> u32 {
        match self {
            SurfaceAut::Quadric(g) => g.order().expect("validated at construction"),
            SurfaceAut::Monomial(g) => g.order(),
            SurfaceAut::Linear(g) => g.order(),
            SurfaceAut::WeightedDp2(g) => g.order(),
            SurfaceAut::WeightedDp1(g) => g.order(),
        }
    }

    fn discriminant(&self) -> u8 {
        match self {
            SurfaceAut::Quadric(_) => 0,
            SurfaceAut::Monomial(_) => 1,
            SurfaceAut::Linear(g) => 10 + g.dim() as u8,
            SurfaceAut::WeightedDp2(_) => 2,
            SurfaceAut::WeightedDp1(_) => 3,
        }
    }
}

impl GroupElement for SurfaceAut {
    fn then(&self, other: &Self) -> Self {
        match (self, other) {
            (SurfaceAut::Quadric(a), SurfaceAut::Quadric(b)) => SurfaceAut::Quadric(a.then(b)),
            (SurfaceAut::Monomial(a), SurfaceAut::Monomial(b)) => SurfaceAut::Monomial(a.then(b)),
            (SurfaceAut::Linear(a), SurfaceAut::Linear(b)) => SurfaceAut::Linear(a.then(b)),
            (SurfaceAut::WeightedDp2(a), SurfaceAut::WeightedDp2(b)) => {
                SurfaceAut::WeightedDp2(a.then(b))
            }
            (SurfaceAut::WeightedDp1(a), SurfaceAut::WeightedDp1(b)) => {
                SurfaceAut::WeightedDp1(a.then(b))
            }
            _ => panic!("composing automorphisms of different carriers"),
        }
    }

    fn inverse(&self) -> Self {
        match self {
            SurfaceAut::Quadric(g) => SurfaceAut::Quadric(g.inverse()),
            SurfaceAut::Monomial(g) => SurfaceAut::Monomial(g.inverse()),
            SurfaceAut::Linear(g) => SurfaceAut::Linear(g.inverse()),
            SurfaceAut::WeightedDp2(g) => SurfaceAut::WeightedDp2(g.inverse()),
            SurfaceAut::WeightedDp1(g) => SurfaceAut::WeightedDp1(g.inverse()),
        }
    }

    fn identity_like(&self) -> Self {
        match self {
            SurfaceAut::Quadric(g) => SurfaceAut::Quadric(g.identity_like()),
            SurfaceAut::Monomial(g) => SurfaceAut::Monomial(g.identity_like()),
            SurfaceAut::Linear(g) => SurfaceAut::Linear(g.identity_like()),
            SurfaceAut::WeightedDp2(g) => SurfaceAut::WeightedDp2(g.identity_like()),
            SurfaceAut::WeightedDp1(g) => SurfaceAut::WeightedDp1(g.identity_like()),
        }
    }

    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_int(self.discriminant() as i64);
        let inner = match self {
            SurfaceAut::Quadric(g) => g.key(),
            SurfaceAut::Monomial(g) => g.key(),
            SurfaceAut::Linear(g) => g.key(),
            SurfaceAut::WeightedDp2(g) => g.key(),
            SurfaceAut::WeightedDp1(g) => g.key(),
        };
        k.0.extend(inner.0);
        k
    }
}

/// Builds a cyclotomic matrix from integer entries, row-major.
pub fn int_mat(n: usize, entries: &[i64]) -> CycMat {
    assert_eq!(entries.len(), n * n);
    Mat::new(n, n, entries.iter().map(|&v| CycNum::from_int(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_swap_composition() {
        // swap . swap = id; diag(s,t) . swap = swap . diag(t,s).
        let sw = QuadricAut::swap_map();
        assert!(sw.then(&sw).is_identity());
        let z = CycNum::zeta(5).unwrap();
        let d = QuadricAut::diag(&z, &z.pow(2)).unwrap();
        let lhs = d.then(&sw);
        let d2 = QuadricAut::diag(&z.pow(2), &z).unwrap();
        let rhs = sw.then(&d2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadric_inverse_round_trip() {
        let g = QuadricAut::from_moebius([[0, 1], [1, 0]], [[1, -1], [1, 0]], true).unwrap();
        assert!(g.then(&g.inverse()).is_identity());
        assert!(g.inverse().then(&g).is_identity());
        // g^2 = (AB, BA) with both factors of projective order two.
        assert_eq!(g.order().unwrap(), 4);
    }

    #[test]
    fn projective_scaling_is_invisible() {
        let two = CycNum::from_int(2);
        let a = CycMat::identity(2).scale(&two);
        let g = QuadricAut::new(a, CycMat::identity(2), false).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn monomial_composition_and_order() {
        // Hexagon rotation of order 6: m = [[-1,1],[-1,0]] has order 3
        // as a matrix; with trivial scalars the map has order 3.
        let r = MonomialAut::new([[-1, 1], [-1, 0]], CycNum::one(), CycNum::one()).unwrap();
        assert_eq!(r.order(), 3);
        let z = CycNum::zeta(6).unwrap();
        let t = MonomialAut::torus(z.clone(), CycNum::one()).unwrap();
        assert_eq!(t.order(), 6);
        assert!(t.then(&t.inverse()).is_identity());
        assert!(r.then(&r.inverse()).is_identity());
    }

    #[test]
    fn monomial_rejects_infinite_order() {
        let bad = MonomialAut::torus(CycNum::from_int(2), CycNum::one());
        assert!(matches!(bad, Err(AutError::NonUnitScalar(_))));
        let bad = MonomialAut::new([[1, 1], [0, 1]], CycNum::one(), CycNum::one());
        assert!(matches!(bad, Err(AutError::BadExponentMatrix)));
    }

    #[test]
    fn linear_finite_rep() {
        // diag(1,1,2) scaled: projective order 2 matrix [[0,1],[1/2,0]]-style.
        let m = CycMat::new(
            2,
            2,
            vec![
                CycNum::zero(),
                CycNum::one(),
                CycNum::from_ratio(1, 2),
                CycNum::zero(),
            ],
        );
        let g = LinearAut::new(m).unwrap();
        assert_eq!(g.order(), 2);
        let (rep, ord) = g.finite_rep().unwrap();
        assert_eq!(ord, 2);
        assert_eq!(rep.pow(2), CycMat::identity(2));
    }

    #[test]
    fn weighted_carrier_scaling_laws() {
        // (s0, B) and (lambda^2 s0, lambda B) are the same map.
        let z = CycNum::zeta(4).unwrap();
        let g1 = WeightedDp2Aut::new(CycNum::one(), int_mat(3, &[0, 1, 0, 1, 0, 0, 0, 0, 1])).unwrap();
        let lam = z.clone();
        let g2 = WeightedDp2Aut::new(
            &CycNum::one() * &(&lam * &lam),
            int_mat(3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]).scale(&lam),
        )
        .unwrap();
        assert_eq!(g1, g2);

        let h1 = WeightedDp1Aut::new(int_mat(2, &[0, 1, 1, 0]), CycNum::one(), z.clone()).unwrap();
        let lam2 = CycNum::from_int(3);
        let h2 = WeightedDp1Aut::new(
            int_mat(2, &[0, 1, 1, 0]).scale(&lam2),
            &CycNum::one() * &(&lam2 * &lam2),
            &z * &lam2.pow(3),
        )
        .unwrap();
        assert_eq!(h1, h2);
        assert!(h1.then(&h1.inverse()).is_identity());
    }
}
