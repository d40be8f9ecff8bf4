//! Picard lattice models with exact intersection theory.
//!
//! Provides the standard hyperbolic lattice `Z^{1,9-d}` for each del
//! Pezzo degree (plus the rank-two lattice of the smooth quadric),
//! exhaustive enumeration of (-1)-classes, the reflection-generated
//! Weyl group of the degree-4 lattice together with its unique normal
//! elementary-abelian subgroup of order 16, structural Picard actions
//! for the quadric and the degree-6 surface, and invariant-rank
//! computation by averaging traces over a finite group.
//!
//! Conventions: a lattice vector is a coefficient row `v` over the
//! basis `(L, E_1, ..., E_n)` (or the two rulings `(f_1, f_2)` for the
//! quadric); an action is an integer matrix `M` acting on column
//! vectors, so `M[i][j]` is the `i`-th coordinate of the image of the
//! `j`-th basis vector.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::autgrp::closure::FiniteGroup;
use crate::autgrp::gapid::{check_gap_id, GapCheck};
use crate::autgrp::{AutError, ElemKey, GroupElement, SurfaceAut};
use crate::surfaces::{hexagon_ray_permutation, Family};

#[derive(Debug, Error)]
pub enum PicError {
    #[error("degree {0} is outside the del Pezzo range 1..=8")]
    Degree(u32),
    #[error("the Weyl group closure is only built for the degree 4 lattice, not degree {0}")]
    WeylDegree(u32),
    #[error("expected {expected} matrix entries for rank {rank}, got {got}")]
    EntryCount {
        rank: usize,
        expected: usize,
        got: usize,
    },
    #[error("vector length {got} does not match lattice rank {rank}")]
    VectorLength { rank: usize, got: usize },
    #[error("reflection root must have self-intersection -2, got {0}")]
    RootNorm(i64),
    #[error("matrix does not preserve the intersection form")]
    GramViolation,
    #[error("matrix does not fix the canonical class")]
    CanonicalMoved,
    #[error("no structural Picard action for family {0}")]
    UnsupportedFamily(Family),
    #[error("family {family} takes a {expected} carrier, got {got}")]
    Carrier {
        family: Family,
        expected: &'static str,
        got: &'static str,
    },
    #[error("exponent matrix does not preserve the hexagon fan")]
    FanBroken,
    #[error("stabilizer of the disjoint quadruple has order {0}, expected 48")]
    StabilizerOrder(usize),
    #[error("stabilizer of the disjoint quadruple is not isomorphic to S4 x C2")]
    StabilizerShape,
    #[error("found {0} normal elementary-abelian subgroups of order 16, expected exactly one")]
    NormalSubgroupCount(usize),
    #[error("no nontrivial element of the normal subgroup commutes with the stabilizer")]
    NoCommutingInvolution,
    #[error("trace sum {sum} is not divisible by the group order {order}")]
    NonIntegralAverage { sum: i64, order: usize },
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// Integer square root of a nonnegative value.
fn isqrt(x: i64) -> i64 {
    debug_assert!(x >= 0);
    let mut r = (x as f64).sqrt() as i64;
    while r > 0 && r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// A unimodular lattice with a fixed basis, its intersection form, the
/// canonical class, and the full list of (-1)-classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PicLattice {
    degree: u32,
    quadric: bool,
    rank: usize,
    gram: Vec<i64>,
    k: Vec<i64>,
    classes: Vec<Vec<i64>>,
}

impl PicLattice {
    /// Anticanonical self-intersection.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Whether this is the rank-two lattice of the smooth quadric.
    pub fn is_quadric(&self) -> bool {
        self.quadric
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Intersection form, row-major.
    pub fn gram(&self) -> &[i64] {
        &self.gram
    }

    /// Coefficients of the canonical class over the basis.
    pub fn canonical_class(&self) -> &[i64] {
        &self.k
    }

    /// All classes with self-intersection -1 meeting the canonical
    /// class in -1, sorted lexicographically.
    pub fn minus_one_classes(&self) -> &[Vec<i64>] {
        &self.classes
    }

    /// Intersection pairing of two coefficient vectors.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        assert_eq!(a.len(), self.rank, "vector length matches rank");
        assert_eq!(b.len(), self.rank, "vector length matches rank");
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.gram[i * self.rank + j] * b[j];
            }
        }
        s
    }
}

/// Standard Picard lattice of a del Pezzo surface of degree `d`: basis
/// `(L, E_1, ..., E_{9-d})`, form `diag(1, -1, ..., -1)`, canonical
/// class `-3L + E_1 + ... + E_{9-d}`.
pub fn pic_lattice(d: u32) -> Result<PicLattice, PicError> {
    if !(1..=8).contains(&d) {
        return Err(PicError::Degree(d));
    }
    let n = (9 - d) as usize;
    let rank = n + 1;
    let mut gram = vec![0i64; rank * rank];
    gram[0] = 1;
    for i in 1..rank {
        gram[i * rank + i] = -1;
    }
    let mut k = vec![1i64; rank];
    k[0] = -3;
    let classes = enumerate_minus_one_classes(n);
    let lat = PicLattice {
        degree: d,
        quadric: false,
        rank,
        gram,
        k,
        classes,
    };
    debug_assert_eq!(lat.pairing(&lat.k, &lat.k), d as i64);
    for c in &lat.classes {
        debug_assert_eq!(lat.pairing(c, c), -1);
        debug_assert_eq!(lat.pairing(c, &lat.k), -1);
    }
    Ok(lat)
}

/// Rank-two Picard lattice of the smooth quadric: basis the two
/// rulings, form `[[0,1],[1,0]]`, canonical class `-2f_1 - 2f_2`.
/// It has no (-1)-classes.
pub fn quadric_lattice() -> PicLattice {
    PicLattice {
        degree: 8,
        quadric: true,
        rank: 2,
        gram: vec![0, 1, 1, 0],
        k: vec![-2, -2],
        classes: Vec::new(),
    }
}

/// Exhaustive search for classes `a L + sum c_i E_i` with
/// `a^2 - sum c_i^2 = -1` and `3a + sum c_i = 1` (the two conditions
/// `D^2 = -1`, `D.K = -1` written out).  The coefficient range is
/// bounded by Cauchy-Schwarz: `(1 - 3a)^2 <= n (a^2 + 1)`.
fn enumerate_minus_one_classes(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in -3i64..=9 {
        let budget = a * a + 1;
        let target = 1 - 3 * a;
        if target * target > (n as i64) * budget {
            continue;
        }
        let mut c = vec![0i64; n];
        descend(&mut c, 0, budget, target, a, &mut out);
    }
    out.sort();
    out
}

fn descend(c: &mut [i64], i: usize, sq_rem: i64, lin_rem: i64, a: i64, out: &mut Vec<Vec<i64>>) {
    let m = (c.len() - i) as i64;
    if m == 0 {
        if sq_rem == 0 && lin_rem == 0 {
            let mut v = Vec::with_capacity(c.len() + 1);
            v.push(a);
            v.extend_from_slice(c);
            out.push(v);
        }
        return;
    }
    if sq_rem < 0 || lin_rem * lin_rem > m * sq_rem {
        return;
    }
    let bound = isqrt(sq_rem);
    for v in -bound..=bound {
        c[i] = v;
        descend(c, i + 1, sq_rem - v * v, lin_rem - v, a, out);
    }
    c[i] = 0;
}

fn mat_mul(rank: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik == 0 {
                continue;
            }
            for j in 0..rank {
                out[i * rank + j] += aik * b[k * rank + j];
            }
        }
    }
    out
}

fn mat_transpose(rank: usize, a: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            out[j * rank + i] = a[i * rank + j];
        }
    }
    out
}

fn mat_identity(rank: usize) -> Vec<i64> {
    let mut out = vec![0i64; rank * rank];
    for i in 0..rank {
        out[i * rank + i] = 1;
    }
    out
}

/// An isometry of a [`PicLattice`] fixing the canonical class, stored
/// as an integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PicAction {
    rank: usize,
    entries: Vec<i64>,
    gram: Vec<i64>,
    k: Vec<i64>,
}

impl PicAction {
    /// Wraps a row-major matrix, verifying that it preserves the
    /// intersection form and fixes the canonical class.
    pub fn new(lat: &PicLattice, entries: Vec<i64>) -> Result<Self, PicError> {
        let rank = lat.rank;
        if entries.len() != rank * rank {
            return Err(PicError::EntryCount {
                rank,
                expected: rank * rank,
                got: entries.len(),
            });
        }
        let a = PicAction {
            rank,
            entries,
            gram: lat.gram.clone(),
            k: lat.k.clone(),
        };
        let mtgm = mat_mul(
            rank,
            &mat_transpose(rank, &a.entries),
            &mat_mul(rank, &a.gram, &a.entries),
        );
        if mtgm != a.gram {
            return Err(PicError::GramViolation);
        }
        if a.apply(&a.k) != a.k {
            return Err(PicError::CanonicalMoved);
        }
        Ok(a)
    }

    pub fn identity(lat: &PicLattice) -> Self {
        PicAction {
            rank: lat.rank,
            entries: mat_identity(lat.rank),
            gram: lat.gram.clone(),
            k: lat.k.clone(),
        }
    }

    /// Reflection `x -> x + (x.r) r` in a class with `r^2 = -2`.
    pub fn reflection(lat: &PicLattice, root: &[i64]) -> Result<Self, PicError> {
        if root.len() != lat.rank {
            return Err(PicError::VectorLength {
                rank: lat.rank,
                got: root.len(),
            });
        }
        let norm = lat.pairing(root, root);
        if norm != -2 {
            return Err(PicError::RootNorm(norm));
        }
        let rank = lat.rank;
        // (Gr)_j = <e_j, r>, so the matrix is I + r (Gr)^T.
        let mut gr = vec![0i64; rank];
        for j in 0..rank {
            for l in 0..rank {
                gr[j] += lat.gram[j * rank + l] * root[l];
            }
        }
        let mut entries = mat_identity(rank);
        for i in 0..rank {
            for j in 0..rank {
                entries[i * rank + j] += root[i] * gr[j];
            }
        }
        PicAction::new(lat, entries)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> &[i64] {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn trace(&self) -> i64 {
        (0..self.rank).map(|i| self.at(i, i)).sum()
    }

    /// Image of a coefficient vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rank, "vector length matches rank");
        let mut out = vec![0i64; self.rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                out[i] += self.entries[i * self.rank + j] * v[j];
            }
        }
        out
    }
}

impl GroupElement for PicAction {
    fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        PicAction {
            rank: self.rank,
            entries: mat_mul(self.rank, &other.entries, &self.entries),
            gram: self.gram.clone(),
            k: self.k.clone(),
        }
    }

    fn inverse(&self) -> Self {
        // M^T G M = G and G^2 = I for both supported forms, so the
        // inverse is G M^T G.
        let gmtg = mat_mul(
            self.rank,
            &self.gram,
            &mat_mul(self.rank, &mat_transpose(self.rank, &self.entries), &self.gram),
        );
        debug_assert_eq!(
            mat_mul(self.rank, &gmtg, &self.entries),
            mat_identity(self.rank)
        );
        PicAction {
            rank: self.rank,
            entries: gmtg,
            gram: self.gram.clone(),
            k: self.k.clone(),
        }
    }

    fn identity_like(&self) -> Self {
        PicAction {
            rank: self.rank,
            entries: mat_identity(self.rank),
            gram: self.gram.clone(),
            k: self.k.clone(),
        }
    }

    fn key(&self) -> ElemKey {
        let mut k = ElemKey::new();
        k.push_int(self.rank as i64);
        for &v in &self.entries {
            k.push_int(v);
        }
        k
    }
}

/// Simple roots of the degree-4 lattice: `E_i - E_{i+1}` for
/// `i = 1..4` and `L - E_1 - E_2 - E_3`.
fn degree4_simple_roots() -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 1..5 {
        let mut r = vec![0i64; 6];
        r[i] = 1;
        r[i + 1] = -1;
        roots.push(r);
    }
    roots.push(vec![1, -1, -1, -1, 0, 0]);
    roots
}

/// Weyl group of the degree-4 lattice, generated by reflections in the
/// five simple (-2)-roots.  Only degree 4 is supported; its closure has
/// order 1920 and acts transitively on the sixteen (-1)-classes.
pub fn weyl_group(d: u32) -> Result<FiniteGroup<PicAction>, PicError> {
    if d != 4 {
        return Err(PicError::WeylDegree(d));
    }
    let lat = pic_lattice(4)?;
    let gens: Result<Vec<PicAction>, PicError> = degree4_simple_roots()
        .iter()
        .map(|r| PicAction::reflection(&lat, r))
        .collect();
    Ok(FiniteGroup::generate(&gens?)?)
}

/// Finds every normal elementary-abelian subgroup of order 16 and
/// returns its element indices if there is exactly one.
///
/// Such a subgroup is `{1}` together with a union of involution
/// conjugacy classes totalling 15 elements that is closed under
/// composition, so the search enumerates class unions directly.
pub fn unique_normal_c24(w: &FiniteGroup<PicAction>) -> Result<Vec<usize>, PicError> {
    let n = w.order();
    let involutions: Vec<usize> = (1..n).filter(|&i| w.compose_indices(i, i) == 0).collect();
    let gens: Vec<usize> = w.generator_indices().to_vec();
    let gen_invs: Vec<usize> = gens
        .iter()
        .map(|&g| {
            w.index_of(&w.element(g).inverse())
                .expect("inverse of a generator stays in the closure")
        })
        .collect();

    // Conjugacy classes of involutions by orbit search under
    // conjugation with the generators.
    let mut seen = vec![false; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &h in &involutions {
        if seen[h] {
            continue;
        }
        let mut orbit = vec![h];
        seen[h] = true;
        let mut queue = vec![h];
        while let Some(x) = queue.pop() {
            for (&g, &gi) in gens.iter().zip(gen_invs.iter()) {
                let y = w.compose_indices(w.compose_indices(gi, x), g);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push(y);
                }
            }
        }
        classes.push(orbit);
    }

    let mut found: Vec<Vec<usize>> = Vec::new();
    assert!(classes.len() <= 20, "involution class count stays small");
    for mask in 1u32..(1 << classes.len()) {
        let size: usize = classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| c.len())
            .sum();
        if size != 15 {
            continue;
        }
        let mut set: BTreeSet<usize> = [0usize].into_iter().collect();
        for (i, c) in classes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                set.extend(c.iter().copied());
            }
        }
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&w.compose_indices(a, b))));
        if closed {
            found.push(set.into_iter().collect());
        }
    }
    if found.len() != 1 {
        return Err(PicError::NormalSubgroupCount(found.len()));
    }
    Ok(found.pop().expect("nonempty by the length check"))
}

/// Product of the two commuting reflections `s_{E_i - E_j}` and
/// `s_{L - E_k - E_l - E_m}` where `{k,l,m}` is the complement of
/// `{i,j}` in `{1..5}`; these products generate the normal order-16
/// subgroup of the degree-4 Weyl group.
pub fn paired_reflection(lat: &PicLattice, i: usize, j: usize) -> Result<PicAction, PicError> {
    assert!((1..=5).contains(&i) && (1..=5).contains(&j) && i != j);
    let mut swap = vec![0i64; 6];
    swap[i] = 1;
    swap[j] = -1;
    let mut line = vec![0i64; 6];
    line[0] = 1;
    for t in 1..=5 {
        if t != i && t != j {
            line[t] = -1;
        }
    }
    let a = PicAction::reflection(lat, &swap)?;
    let b = PicAction::reflection(lat, &line)?;
    Ok(a.then(&b))
}

/// Output of [`yasinsky_witness`]: the degree-4 Weyl group, a choice of
/// four pairwise-disjoint (-1)-classes, the stabilizer of their sum,
/// the normal order-16 subgroup, and a nontrivial element of that
/// subgroup commuting with the whole stabilizer.
#[derive(Clone, Debug)]
pub struct YasinskyWitness {
    pub weyl: FiniteGroup<PicAction>,
    /// The four chosen pairwise-orthogonal (-1)-classes.
    pub disjoint_classes: Vec<Vec<i64>>,
    /// Element indices of the stabilizer of the sum of the four
    /// classes; order 48, isomorphic to S4 x C2.
    pub stabilizer: Vec<usize>,
    /// Element indices of the unique normal subgroup isomorphic to
    /// C2^4.
    pub normal_subgroup: Vec<usize>,
    /// Index of an involution in the normal subgroup commuting with
    /// every stabilizer element.
    pub involution: usize,
    /// Size of the intersection of the stabilizer with the normal
    /// subgroup (recorded for reference, not constrained).
    pub overlap: usize,
}

/// Builds the degree-4 Weyl group, stabilizer, and commuting involution
/// witness.
///
/// The four disjoint classes are fixed as `L - E_1 - E_2, E_3, E_4,
/// E_5`: the exceptional classes of a contraction onto the quadric.
/// The quadruple admits no fifth pairwise-disjoint (-1)-class, which
/// pins its Weyl orbit; quadruples that do extend (such as
/// `E_1, ..., E_4`, which contract onto the Hirzebruch surface) have a
/// smaller stabilizer of order 24.
pub fn yasinsky_witness() -> Result<YasinskyWitness, PicError> {
    let lat = pic_lattice(4)?;
    let w = weyl_group(4)?;
    let mut disjoint = vec![vec![1i64, -1, -1, 0, 0, 0]];
    for i in 3..=5 {
        let mut e = vec![0i64; 6];
        e[i] = 1;
        disjoint.push(e);
    }
    for a in &disjoint {
        debug_assert_eq!(lat.pairing(a, a), -1);
        for b in &disjoint {
            if a != b {
                debug_assert_eq!(lat.pairing(a, b), 0);
            }
        }
    }
    let sum: Vec<i64> = (0..6).map(|t| disjoint.iter().map(|e| e[t]).sum()).collect();
    let stabilizer: Vec<usize> = (0..w.order())
        .filter(|&i| w.element(i).apply(&sum) == sum)
        .collect();
    if stabilizer.len() != 48 {
        return Err(PicError::StabilizerOrder(stabilizer.len()));
    }
    let gamma_elems: Vec<PicAction> = stabilizer.iter().map(|&i| w.element(i).clone()).collect();
    let gamma = FiniteGroup::generate(&gamma_elems)?;
    if gamma.order() != 48 {
        return Err(PicError::StabilizerOrder(gamma.order()));
    }
    if check_gap_id(&gamma.abstract_group(), 48, 48) != GapCheck::Confirmed {
        return Err(PicError::StabilizerShape);
    }
    let normal = unique_normal_c24(&w)?;
    let involution = normal
        .iter()
        .copied()
        .filter(|&h| h != 0)
        .find(|&h| {
            stabilizer
                .iter()
                .all(|&g| w.compose_indices(h, g) == w.compose_indices(g, h))
        })
        .ok_or(PicError::NoCommutingInvolution)?;
    let normal_set: BTreeSet<usize> = normal.iter().copied().collect();
    let overlap = stabilizer.iter().filter(|i| normal_set.contains(i)).count();
    Ok(YasinskyWitness {
        weyl: w,
        disjoint_classes: disjoint,
        stabilizer,
        normal_subgroup: normal,
        involution,
        overlap,
    })
}

/// The six (-1)-classes of the degree-6 surface over the basis
/// `(L, E_1, E_2, E_3)`, listed in the cyclic adjacency order matching
/// the hexagon rays: consecutive classes meet, opposite classes are
/// disjoint.  Entry `i` sits on ray `i` of the hexagon fan.
const HEXAGON_CLASSES: [[i64; 4]; 6] = [
    [0, 1, 0, 0],
    [1, -1, -1, 0],
    [0, 0, 1, 0],
    [1, 0, -1, -1],
    [0, 0, 0, 1],
    [1, -1, 0, -1],
];

fn carrier_name(a: &SurfaceAut) -> &'static str {
    match a {
        SurfaceAut::Quadric(_) => "quadric",
        SurfaceAut::Monomial(_) => "monomial",
        SurfaceAut::Linear(_) => "linear",
        SurfaceAut::WeightedDp2(_) => "weighted-dp2",
        SurfaceAut::WeightedDp1(_) => "weighted-dp1",
    }
}

/// Structural Picard action of an automorphism, for the quadric and the
/// degree-6 surface only.
///
/// Quadric: the identity, or the ruling swap when the factors are
/// exchanged.  Degree 6: the matrix induced by the permutation of the
/// hexagon of (-1)-curves; the torus part acts trivially.
pub fn pic_action(a: &SurfaceAut, family: Family) -> Result<PicAction, PicError> {
    match (family, a) {
        (Family::Quadric, SurfaceAut::Quadric(q)) => {
            let lat = quadric_lattice();
            let entries = if q.swaps_factors() {
                vec![0, 1, 1, 0]
            } else {
                vec![1, 0, 0, 1]
            };
            PicAction::new(&lat, entries)
        }
        (Family::Dp6, SurfaceAut::Monomial(m)) => {
            let perm = hexagon_ray_permutation(&m.exponent_matrix()).ok_or(PicError::FanBroken)?;
            let lat = pic_lattice(6)?;
            let image = |ray: usize| HEXAGON_CLASSES[perm[ray]];
            // L = (class on ray 0) + (class on ray 1) + (class on ray 2).
            let mut l_img = [0i64; 4];
            for ray in 0..3 {
                for (t, v) in image(ray).iter().enumerate() {
                    l_img[t] += v;
                }
            }
            let columns = [l_img, image(0), image(2), image(4)];
            let mut entries = vec![0i64; 16];
            for (j, col) in columns.iter().enumerate() {
                for i in 0..4 {
                    entries[i * 4 + j] = col[i];
                }
            }
            PicAction::new(&lat, entries)
        }
        (Family::Quadric, other) => Err(PicError::Carrier {
            family,
            expected: "quadric",
            got: carrier_name(other),
        }),
        (Family::Dp6, other) => Err(PicError::Carrier {
            family,
            expected: "monomial",
            got: carrier_name(other),
        }),
        _ => Err(PicError::UnsupportedFamily(family)),
    }
}

/// Averages a list of traces, requiring the sum to be divisible by the
/// list length; the quotient is the rank of the invariant sublattice.
pub fn average_traces(traces: &[i64]) -> Result<i64, PicError> {
    let order = traces.len();
    assert!(order > 0, "a group has at least the identity");
    let sum: i64 = traces.iter().sum();
    if sum.rem_euclid(order as i64) != 0 {
        return Err(PicError::NonIntegralAverage { sum, order });
    }
    Ok(sum / order as i64)
}

/// Invariant Picard rank of a group acting on the quadric or the
/// degree-6 surface, computed from the structural lattice actions.
pub fn structural_invariant_rank(
    g: &FiniteGroup<SurfaceAut>,
    family: Family,
) -> Result<i64, PicError> {
    let traces: Result<Vec<i64>, PicError> = g
        .elements()
        .iter()
        .map(|a| pic_action(a, family).map(|m| m.trace()))
        .collect();
    average_traces(&traces?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgrp::QuadricAut;
    use crate::cyclo::CycNum;
    use crate::surfaces::generators::{
        dp6_group, dp6_inversion, dp6_monomial, dp6_reflection, dp6_rotation, dp6_torus,
    };
    use proptest::prelude::*;

    fn one() -> CycNum {
        CycNum::one()
    }

    #[test]
    fn minus_one_class_counts_match_the_classical_values() {
        let expected = [
            (1u32, 240usize),
            (2, 56),
            (3, 27),
            (4, 16),
            (5, 10),
            (6, 6),
            (7, 3),
            (8, 1),
        ];
        for (d, count) in expected {
            let lat = pic_lattice(d).unwrap();
            assert_eq!(lat.minus_one_classes().len(), count, "degree {d}");
            assert_eq!(lat.pairing(lat.canonical_class(), lat.canonical_class()), d as i64);
            for c in lat.minus_one_classes() {
                assert_eq!(lat.pairing(c, c), -1);
                assert_eq!(lat.pairing(c, lat.canonical_class()), -1);
            }
        }
    }

    #[test]
    fn degree_outside_range_is_rejected() {
        assert!(matches!(pic_lattice(0), Err(PicError::Degree(0))));
        assert!(matches!(pic_lattice(9), Err(PicError::Degree(9))));
    }

    #[test]
    fn quadric_lattice_has_rank_two_and_no_minus_one_classes() {
        let lat = quadric_lattice();
        assert_eq!(lat.rank(), 2);
        assert!(lat.is_quadric());
        assert_eq!(lat.pairing(lat.canonical_class(), lat.canonical_class()), 8);
        assert!(lat.minus_one_classes().is_empty());
    }

    #[test]
    fn reflection_requires_a_root_of_square_minus_two() {
        let lat = pic_lattice(4).unwrap();
        let e1 = vec![0, 1, 0, 0, 0, 0];
        assert!(matches!(
            PicAction::reflection(&lat, &e1),
            Err(PicError::RootNorm(-1))
        ));
    }

    #[test]
    fn reflections_are_involutive_isometries() {
        let lat = pic_lattice(4).unwrap();
        for r in degree4_simple_roots() {
            let s = PicAction::reflection(&lat, &r).unwrap();
            assert!(s.then(&s).is_identity());
            // A reflection negates its own root.
            let neg: Vec<i64> = r.iter().map(|v| -v).collect();
            assert_eq!(s.apply(&r), neg);
        }
    }

    #[test]
    fn gram_preserving_matrix_moving_the_canonical_class_is_rejected() {
        let lat = quadric_lattice();
        let err = PicAction::new(&lat, vec![-1, 0, 0, -1]);
        assert!(matches!(err, Err(PicError::CanonicalMoved)));
        let err = PicAction::new(&lat, vec![1, 1, 0, 1]);
        assert!(matches!(err, Err(PicError::GramViolation)));
    }

    #[test]
    fn weyl_group_of_the_degree_4_lattice_has_order_1920() {
        let w = weyl_group(4).unwrap();
        assert_eq!(w.order(), 1920);
        assert!(matches!(weyl_group(6), Err(PicError::WeylDegree(6))));
    }

    #[test]
    fn weyl_group_acts_transitively_on_the_sixteen_classes() {
        let lat = pic_lattice(4).unwrap();
        let w = weyl_group(4).unwrap();
        let gens: Vec<&PicAction> = w.generator_indices().iter().map(|&i| w.element(i)).collect();
        let start = vec![0i64, 1, 0, 0, 0, 0];
        let mut orbit: BTreeSet<Vec<i64>> = [start.clone()].into_iter().collect();
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = g.apply(&v);
                if orbit.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        let classes: BTreeSet<Vec<i64>> =
            lat.minus_one_classes().iter().cloned().collect();
        assert_eq!(orbit, classes);
    }

    #[test]
    fn the_normal_order_16_subgroup_is_unique_and_elementary_abelian() {
        let w = weyl_group(4).unwrap();
        let h = unique_normal_c24(&w).unwrap();
        assert_eq!(h.len(), 16);
        assert!(h.contains(&0));
        let set: BTreeSet<usize> = h.iter().copied().collect();
        for &a in &h {
            assert_eq!(w.compose_indices(a, a), 0, "exponent two");
            for &b in &h {
                let ab = w.compose_indices(a, b);
                assert!(set.contains(&ab), "closed under composition");
                assert_eq!(ab, w.compose_indices(b, a), "abelian");
            }
        }
        // Normality under the generators.
        for &g in w.generator_indices() {
            let gi = w.index_of(&w.element(g).inverse()).unwrap();
            for &a in &h {
                let conj = w.compose_indices(w.compose_indices(gi, a), g);
                assert!(set.contains(&conj));
            }
        }
    }

    #[test]
    fn paired_reflections_generate_the_normal_subgroup() {
        let lat = pic_lattice(4).unwrap();
        let w = weyl_group(4).unwrap();
        let h = unique_normal_c24(&w).unwrap();
        let set: BTreeSet<usize> = h.iter().copied().collect();
        let gens: Vec<PicAction> = (2..=5)
            .map(|j| paired_reflection(&lat, 1, j).unwrap())
            .collect();
        let sub = FiniteGroup::generate(&gens).unwrap();
        assert_eq!(sub.order(), 16);
        for e in sub.elements() {
            let idx = w.index_of(e).unwrap();
            assert!(set.contains(&idx));
        }
    }

    #[test]
    fn witness_quadruple_is_disjoint_and_maximal() {
        let lat = pic_lattice(4).unwrap();
        let wit = yasinsky_witness().unwrap();
        assert_eq!(wit.disjoint_classes.len(), 4);
        for a in &wit.disjoint_classes {
            assert!(lat.minus_one_classes().contains(a));
            for b in &wit.disjoint_classes {
                let expected = if a == b { -1 } else { 0 };
                assert_eq!(lat.pairing(a, b), expected);
            }
        }
        // No fifth class is disjoint from all four: the quadruple
        // contracts onto the quadric, not the Hirzebruch surface.
        let extension = lat.minus_one_classes().iter().find(|c| {
            !wit.disjoint_classes.contains(c)
                && wit.disjoint_classes.iter().all(|a| lat.pairing(c, a) == 0)
        });
        assert!(extension.is_none());
    }

    #[test]
    fn stabilizer_witness_has_the_expected_shape() {
        let wit = yasinsky_witness().unwrap();
        assert_eq!(wit.stabilizer.len(), 48);
        assert_eq!(wit.normal_subgroup.len(), 16);
        assert_ne!(wit.involution, 0);
        assert_eq!(wit.weyl.compose_indices(wit.involution, wit.involution), 0);
        for &g in &wit.stabilizer {
            assert_eq!(
                wit.weyl.compose_indices(wit.involution, g),
                wit.weyl.compose_indices(g, wit.involution)
            );
        }
        // The overlap with the normal subgroup is recorded but only
        // sanity-bounded here: it always contains the identity.
        assert!(wit.overlap >= 1);
        assert!(wit.normal_subgroup.contains(&wit.involution));
    }

    #[test]
    fn quadric_actions_have_trace_two_or_zero() {
        let idq = SurfaceAut::Quadric(QuadricAut::diag(&one(), &one()).unwrap());
        let swap = SurfaceAut::Quadric(QuadricAut::swap_map());
        let a = pic_action(&idq, Family::Quadric).unwrap();
        assert_eq!(a.trace(), 2);
        let b = pic_action(&swap, Family::Quadric).unwrap();
        assert_eq!(b.trace(), 0);
        assert!(b.then(&b).is_identity());
        let g = FiniteGroup::generate(&[swap]).unwrap();
        assert_eq!(structural_invariant_rank(&g, Family::Quadric).unwrap(), 1);
    }

    #[test]
    fn torus_elements_act_trivially_on_the_lattice() {
        let i = CycNum::zeta(4).unwrap();
        let t = dp6_torus(i, CycNum::from_int(-1));
        let a = pic_action(&t, Family::Dp6).unwrap();
        assert!(a.is_identity());
        assert_eq!(a.trace(), 4);
    }

    #[test]
    fn cremona_involution_rotates_the_hexagon_by_three_steps() {
        let a = pic_action(&dp6_inversion(), Family::Dp6).unwrap();
        assert_eq!(a.trace(), 2);
        assert!(a.then(&a).is_identity());
        // L -> 2L - E1 - E2 - E3, E_i -> L - E_j - E_k.
        assert_eq!(a.apply(&[1, 0, 0, 0]), vec![2, -1, -1, -1]);
        assert_eq!(a.apply(&[0, 1, 0, 0]), vec![1, 0, -1, -1]);
        assert_eq!(a.apply(&[0, 0, 1, 0]), vec![1, -1, 0, -1]);
        assert_eq!(a.apply(&[0, 0, 0, 1]), vec![1, -1, -1, 0]);
    }

    #[test]
    fn hexagon_rotation_and_reflection_traces() {
        let rot = pic_action(&dp6_rotation(), Family::Dp6).unwrap();
        assert_eq!(rot.trace(), 1);
        let refl = pic_action(&dp6_reflection(), Family::Dp6).unwrap();
        assert_eq!(refl.trace(), 2);
        // The reflection swaps E1 and E2 and fixes E3.
        assert_eq!(refl.apply(&[0, 1, 0, 0]), vec![0, 0, 1, 0]);
        assert_eq!(refl.apply(&[0, 0, 0, 1]), vec![0, 0, 0, 1]);
    }

    #[test]
    fn fan_breaking_monomial_maps_are_rejected() {
        let m = dp6_monomial([[0, -1], [1, 0]], one(), one());
        assert!(matches!(
            pic_action(&m, Family::Dp6),
            Err(PicError::FanBroken)
        ));
    }

    #[test]
    fn unsupported_families_and_carriers_are_rejected() {
        let swap = SurfaceAut::Quadric(QuadricAut::swap_map());
        assert!(matches!(
            pic_action(&swap, Family::Dp4),
            Err(PicError::UnsupportedFamily(Family::Dp4))
        ));
        assert!(matches!(
            pic_action(&swap, Family::Dp6),
            Err(PicError::Carrier { .. })
        ));
        assert!(matches!(
            pic_action(&dp6_inversion(), Family::Quadric),
            Err(PicError::Carrier { .. })
        ));
    }

    #[test]
    fn trivial_group_keeps_the_full_degree_6_rank() {
        let g = FiniteGroup::generate(&[dp6_torus(one(), one())]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(structural_invariant_rank(&g, Family::Dp6).unwrap(), 4);
    }

    #[test]
    fn the_nine_hexagon_groups_all_have_invariant_rank_one() {
        for k in 1..=9 {
            let g = FiniteGroup::generate(&dp6_group(k)).unwrap();
            assert_eq!(
                structural_invariant_rank(&g, Family::Dp6).unwrap(),
                1,
                "group {k}"
            );
        }
    }

    #[test]
    fn invariant_rank_is_monotone_under_subgroups() {
        for k in [1usize, 4, 7] {
            let gens = dp6_group(k);
            let full = FiniteGroup::generate(&gens).unwrap();
            let full_rank = structural_invariant_rank(&full, Family::Dp6).unwrap();
            for mask in 1u32..(1 << gens.len()) {
                let sub_gens: Vec<SurfaceAut> = gens
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, g)| g.clone())
                    .collect();
                let sub = FiniteGroup::generate(&sub_gens).unwrap();
                let sub_rank = structural_invariant_rank(&sub, Family::Dp6).unwrap();
                assert!(
                    full_rank <= sub_rank,
                    "group {k} mask {mask}: {full_rank} > {sub_rank}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn random_words_give_isometries_with_conjugation_invariant_traces(
            word in proptest::collection::vec(0usize..4, 1..6),
            conj in proptest::collection::vec(0usize..4, 1..6),
        ) {
            let gens = dp6_group(1);
            let fold = |idxs: &[usize]| {
                let mut acc = gens[idxs[0]].clone();
                for &i in &idxs[1..] {
                    acc = acc.then(&gens[i]);
                }
                acc
            };
            let g = fold(&word);
            let h = fold(&conj);
            let a = pic_action(&g, Family::Dp6).unwrap();
            prop_assert_eq!(a.apply(&[-3, 1, 1, 1]), vec![-3, 1, 1, 1]);
            let conjugated = h.inverse().then(&g).then(&h);
            let b = pic_action(&conjugated, Family::Dp6).unwrap();
            prop_assert_eq!(a.trace(), b.trace());
            prop_assert!((-2..=4).contains(&a.trace()));
        }
    }
}
