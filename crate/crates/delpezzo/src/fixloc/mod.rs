//! Fixed loci of finite automorphisms acting on del Pezzo models.
//!
//! Every supported family carries its own coordinate model (projective,
//! weighted, toric, or a product of two lines), so the fixed locus of an
//! automorphism is computed by family-specific machinery and then
//! reported through the common [`FixedLocus`] type: a list of labelled
//! curve components, a list of isolated points with explicit
//! coordinates, and counts of isolated points whose coordinates escape
//! the supported tower of quadratic extensions.
//!
//! The Euler characteristic of the fixed locus feeds the holomorphic
//! Lefschetz relation `e(Fix g) = 2 + tr(g* | Pic S)` on a rational
//! surface, which [`lefschetz_trace`] exposes and [`invariant_rank`]
//! averages over a group to obtain the rank of the invariant part of
//! the Picard lattice. Orbits of bounded length are enumerated in
//! [`orbits_up_to_length`] by intersecting the fixed loci of low-index
//! subgroups and expanding the resulting points under the full group.

mod eigen;
mod mobius;
mod point;
mod toric;

pub use point::{apply_point, SurfacePoint};

use thiserror::Error;

use crate::autgrp::closure::FiniteGroup;
use crate::autgrp::{AutError, SurfaceAut};
use crate::cyclo::CycError;
use crate::surfaces::upoly::RootError;
use crate::surfaces::{Family, Surface};

/// Errors raised while computing fixed loci.
#[derive(Debug, Error)]
pub enum FixError {
    /// The locus involves coordinates or component shapes outside the
    /// range of the exact classifier.
    #[error("unsupported fixed-locus computation: {0}")]
    Unsupported(String),
    /// An automorphism does not act on the coordinate model of the
    /// requested family.
    #[error("automorphism carrier does not act on the {family:?} model")]
    CarrierMismatch { family: Family },
    /// The surface parameters are too special for the requested locus,
    /// for example a branch curve degenerates.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// Lefschetz averaging produced a non-integer, which signals
    /// inconsistent trace data.
    #[error("trace sum {sum} is not divisible by the group order {order}")]
    NonIntegralAverage { sum: i64, order: usize },
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// Isomorphism type of a one-dimensional fixed component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveTag {
    /// A line, conic, ruling fiber, graph of an isomorphism of lines,
    /// or the closure of a one-parameter subgroup coset.
    SmoothRational,
    /// A smooth plane cubic.
    PlaneCubic,
    /// A smooth intersection of two quadrics in projective 3-space.
    QuarticSpaceCurve,
    /// A double cover of a line branched at four points.
    EllipticDoubleCover,
    /// A smooth plane quartic.
    BranchQuartic,
    /// A trigonal curve `y^3 + f4(u, v) y + f6(u, v) = 0` with `y` of
    /// weight two.
    TrigonalBranch,
    /// A hyperelliptic curve `y^2 = f6(u, v)` with `y` of weight three.
    HyperellipticBranch,
}

impl CurveTag {
    /// Genus of a smooth curve of this type.
    pub fn genus(self) -> i64 {
        match self {
            CurveTag::SmoothRational => 0,
            CurveTag::PlaneCubic
            | CurveTag::QuarticSpaceCurve
            | CurveTag::EllipticDoubleCover => 1,
            CurveTag::HyperellipticBranch => 2,
            CurveTag::BranchQuartic => 3,
            CurveTag::TrigonalBranch => 4,
        }
    }

    /// Topological Euler characteristic `2 - 2 g`.
    pub fn euler(self) -> i64 {
        2 - 2 * self.genus()
    }
}

/// A one-dimensional component of a fixed locus.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComponent {
    pub tag: CurveTag,
    /// Human-readable location of the component in the model.
    pub description: String,
}

/// Isolated fixed points that were counted but whose coordinates lie
/// outside the supported field tower.
#[derive(Debug, Clone, PartialEq)]
pub struct Unresolved {
    pub count: usize,
    pub context: String,
}

/// The set of points fixed by a collection of automorphisms.
#[derive(Debug, Clone)]
pub struct FixedLocus {
    family: Family,
    full: bool,
    curves: Vec<CurveComponent>,
    points: Vec<SurfacePoint>,
    unresolved: Vec<Unresolved>,
}

impl FixedLocus {
    pub fn family(&self) -> Family {
        self.family
    }

    /// True when every point of the surface is fixed.
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn is_empty(&self) -> bool {
        !self.full
            && self.curves.is_empty()
            && self.points.is_empty()
            && self.unresolved.is_empty()
    }

    pub fn curves(&self) -> &[CurveComponent] {
        &self.curves
    }

    pub fn points(&self) -> &[SurfacePoint] {
        &self.points
    }

    pub fn unresolved(&self) -> &[Unresolved] {
        &self.unresolved
    }

    /// Topological Euler characteristic of the locus. Curves of the
    /// fixed locus of a finite-order automorphism on a smooth surface
    /// are smooth and disjoint from the isolated points, so the
    /// characteristic is the sum over components.
    pub fn euler(&self) -> i64 {
        if self.full {
            return self.family.euler_characteristic();
        }
        let curves: i64 = self.curves.iter().map(|c| c.tag.euler()).sum();
        let isolated = self.points.len() as i64;
        let unresolved: i64 = self.unresolved.iter().map(|u| u.count as i64).sum();
        curves + isolated + unresolved
    }

    /// Trace of the induced action on the Picard lattice, via the
    /// Lefschetz fixed point formula `e(Fix g) = 2 + tr(g* | Pic S)`.
    pub fn lefschetz_trace(&self) -> i64 {
        self.euler() - 2
    }
}

/// Mutable accumulator used by the family-specific classifiers.
#[derive(Debug, Clone, Default)]
pub(crate) struct LocusParts {
    full: bool,
    curves: Vec<CurveComponent>,
    points: Vec<SurfacePoint>,
    unresolved: Vec<Unresolved>,
}

impl LocusParts {
    pub(crate) fn empty() -> Self {
        LocusParts::default()
    }

    pub(crate) fn full() -> Self {
        LocusParts {
            full: true,
            ..LocusParts::default()
        }
    }

    pub(crate) fn push_curve(&mut self, tag: CurveTag, description: String) {
        self.curves.push(CurveComponent { tag, description });
    }

    pub(crate) fn push_point(&mut self, p: SurfacePoint) {
        point::push_unique(&mut self.points, p);
    }

    pub(crate) fn push_unresolved(&mut self, count: usize, context: String) {
        if count > 0 {
            self.unresolved.push(Unresolved { count, context });
        }
    }

    fn into_locus(self, family: Family) -> FixedLocus {
        FixedLocus {
            family,
            full: self.full,
            curves: self.curves,
            points: self.points,
            unresolved: self.unresolved,
        }
    }
}

fn locus_of_elements(surface: &Surface, elems: &[SurfaceAut]) -> Result<LocusParts, FixError> {
    let family = surface.family();
    if elems.is_empty() {
        return Ok(LocusParts::full());
    }
    let mismatch = || FixError::CarrierMismatch { family };
    match family {
        Family::Quadric => {
            let mut acc: Option<mobius::QuadricLocus> = None;
            for g in elems {
                let SurfaceAut::Quadric(q) = g else {
                    return Err(mismatch());
                };
                let locus = mobius::quadric_components(q)?;
                acc = Some(match acc {
                    None => locus,
                    Some(prev) => mobius::intersect_quadric(prev, &locus)?,
                });
            }
            mobius::quadric_parts(acc.expect("nonempty element list"))
        }
        Family::Dp6 => {
            let mut acc: Option<toric::ToricLocus> = None;
            for g in elems {
                let SurfaceAut::Monomial(mo) = g else {
                    return Err(mismatch());
                };
                let locus = toric::toric_components(mo)?;
                acc = Some(match acc {
                    None => locus,
                    Some(prev) => toric::intersect_toric(prev, &locus)?,
                });
            }
            toric::toric_parts(acc.expect("nonempty element list"))
        }
        Family::Dp4 | Family::Dp3 => {
            let mut reps = Vec::with_capacity(elems.len());
            for g in elems {
                let SurfaceAut::Linear(l) = g else {
                    return Err(mismatch());
                };
                reps.push(l.finite_rep()?);
            }
            eigen::linear_parts(surface, &reps)
        }
        Family::Dp2 => {
            let mut reps = Vec::with_capacity(elems.len());
            for g in elems {
                let SurfaceAut::WeightedDp2(w) = g else {
                    return Err(mismatch());
                };
                reps.push(eigen::dp2_rep(w)?);
            }
            eigen::dp2_parts(surface, &reps)
        }
        Family::Dp1 => {
            let mut reps = Vec::with_capacity(elems.len());
            for g in elems {
                let SurfaceAut::WeightedDp1(w) = g else {
                    return Err(mismatch());
                };
                reps.push(eigen::dp1_rep(w)?);
            }
            eigen::dp1_parts(surface, &reps)
        }
    }
}

/// Locus of points fixed by every automorphism in `elems`.
///
/// The elements must act on the model of `surface` (see
/// [`Surface::preserved_by`]); an empty list fixes the whole surface.
pub fn fixed_locus(surface: &Surface, elems: &[SurfaceAut]) -> Result<FixedLocus, FixError> {
    Ok(locus_of_elements(surface, elems)?.into_locus(surface.family()))
}

/// Trace of the action of `g` on the Picard lattice, recovered from the
/// Euler characteristic of its fixed locus.
pub fn lefschetz_trace(surface: &Surface, g: &SurfaceAut) -> Result<i64, FixError> {
    Ok(fixed_locus(surface, std::slice::from_ref(g))?.lefschetz_trace())
}

/// Locus of points fixed by the whole group, computed from its
/// generators.
pub fn fixed_locus_of_group(
    surface: &Surface,
    group: &FiniteGroup<SurfaceAut>,
) -> Result<FixedLocus, FixError> {
    let gens: Vec<SurfaceAut> = group
        .generator_indices()
        .iter()
        .map(|&i| group.element(i).clone())
        .collect();
    fixed_locus(surface, &gens)
}

/// Rank of the group-invariant part of the Picard lattice, obtained by
/// averaging the Lefschetz traces of all elements.
pub fn invariant_rank(
    surface: &Surface,
    group: &FiniteGroup<SurfaceAut>,
) -> Result<i64, FixError> {
    let mut sum = 0i64;
    for g in group.elements() {
        sum += lefschetz_trace(surface, g)?;
    }
    let order = group.order();
    if sum.rem_euclid(order as i64) != 0 {
        return Err(FixError::NonIntegralAverage { sum, order });
    }
    Ok(sum / order as i64)
}

/// An orbit of isolated points, with the order of the common point
/// stabilizer.
#[derive(Debug, Clone)]
pub struct PointOrbit {
    pub points: Vec<SurfacePoint>,
    pub stabilizer_order: usize,
}

/// A curve fixed pointwise by a subgroup of index `orbit_bound`, so its
/// orbit consists of at most `orbit_bound` curves.
#[derive(Debug, Clone)]
pub struct CurveOrbit {
    pub tag: CurveTag,
    pub description: String,
    pub orbit_bound: usize,
}

/// Short orbits of a group action on a surface.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// Point orbits of length at most the requested bound.
    pub orbits: Vec<PointOrbit>,
    /// Curves fixed pointwise by a subgroup of small index.
    pub curves: Vec<CurveOrbit>,
    /// Counts of fixed points of subgroups that could not be expanded
    /// into orbits because their coordinates escape the field tower.
    pub unresolved: Vec<Unresolved>,
    /// True when some enumerated subgroup acts trivially on the model.
    pub full_surface_stabilizer: bool,
}

/// Enumerates all orbits of isolated points of length at most
/// `max_len`, together with the curves fixed by subgroups of index at
/// most `max_len`.
///
/// A point with an orbit of length `k` has a stabilizer of index `k`,
/// so scanning the fixed loci of all subgroups of index at most
/// `max_len` and expanding each fixed point under the full group finds
/// every short orbit exactly once.
pub fn orbits_up_to_length(
    surface: &Surface,
    group: &FiniteGroup<SurfaceAut>,
    max_len: usize,
) -> Result<OrbitReport, FixError> {
    let subgroups = group
        .abstract_group()
        .subgroups_of_index_at_most(max_len, 50_000)?;
    let mut report = OrbitReport {
        orbits: Vec::new(),
        curves: Vec::new(),
        unresolved: Vec::new(),
        full_surface_stabilizer: false,
    };
    let mut seen: Vec<SurfacePoint> = Vec::new();
    for sub in &subgroups {
        let elems: Vec<SurfaceAut> = sub.iter().map(|&i| group.element(i).clone()).collect();
        let index = group.order() / elems.len();
        let locus = locus_of_elements(surface, &elems)?.into_locus(surface.family());
        if locus.is_full() {
            report.full_surface_stabilizer = true;
            continue;
        }
        for c in locus.curves() {
            push_curve_orbit(&mut report.curves, c, index);
        }
        for p in locus.points() {
            if seen.iter().any(|q| q == p) {
                continue;
            }
            let orbit = expand_orbit(surface, group, p)?;
            debug_assert_eq!(group.order() % orbit.len(), 0);
            let stabilizer_order = group.order() / orbit.len();
            for q in &orbit {
                point::push_unique(&mut seen, q.clone());
            }
            if orbit.len() <= max_len {
                report.orbits.push(PointOrbit {
                    points: orbit,
                    stabilizer_order,
                });
            }
        }
        for u in locus.unresolved() {
            if !report.unresolved.contains(u) {
                report.unresolved.push(u.clone());
            }
        }
    }
    Ok(report)
}

/// Full orbit of a point under the group.
pub fn expand_orbit(
    surface: &Surface,
    group: &FiniteGroup<SurfaceAut>,
    start: &SurfacePoint,
) -> Result<Vec<SurfacePoint>, FixError> {
    let mut orbit = vec![start.clone()];
    for g in group.elements() {
        let image = apply_point(surface, g, start)?;
        point::push_unique(&mut orbit, image);
    }
    Ok(orbit)
}

fn push_curve_orbit(curves: &mut Vec<CurveOrbit>, c: &CurveComponent, index: usize) {
    if let Some(existing) = curves
        .iter_mut()
        .find(|e| e.tag == c.tag && e.description == c.description)
    {
        if index < existing.orbit_bound {
            existing.orbit_bound = index;
        }
    } else {
        curves.push(CurveOrbit {
            tag: c.tag,
            description: c.description.clone(),
            orbit_bound: index,
        });
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::autgrp::{
        GroupElement, LinearAut, MonomialAut, QuadricAut, WeightedDp1Aut, WeightedDp2Aut,
    };
    use crate::cyclo::matrix::CycMat;
    use crate::cyclo::{CycNum, ExtElem};
    use crate::picweyl;
    use crate::surfaces::generators::{
        dp1_delta, dp1_gamma, dp1_sigma, dp2_iota, dp2_sigma, dp3_sigma, dp3_tau, dp4_iota,
        dp4_perm, dp6_group, dp6_inversion, dp6_reflection, dp6_rotation,
    };
    use crate::surfaces::{Family, Surface, SurfaceKind};

    use super::*;

    /// Counts interior lattice points of the Newton triangle
    /// `{(a, b) : a, b >= 1, w1 a + w2 b < d}`, which equals the genus
    /// of a smooth curve of weighted degree `d` in variables of
    /// weights `(1, w1, w2)`.
    fn newton_interior(w1: i64, w2: i64, d: i64) -> i64 {
        let mut n = 0;
        for a in 1..d {
            for b in 1..d {
                if w1 * a + w2 * b < d {
                    n += 1;
                }
            }
        }
        n
    }

    /// Genus of a smooth complete intersection of degrees `(d1, d2)`
    /// in projective 3-space, by adjunction.
    fn space_ci_genus(d1: i64, d2: i64) -> i64 {
        d1 * d2 * (d1 + d2 - 4) / 2 + 1
    }

    #[test]
    fn curve_genus_table_matches_newton_and_adjunction_counts() {
        assert_eq!(CurveTag::SmoothRational.genus(), newton_interior(1, 1, 2));
        assert_eq!(CurveTag::PlaneCubic.genus(), newton_interior(1, 1, 3));
        assert_eq!(CurveTag::BranchQuartic.genus(), newton_interior(1, 1, 4));
        assert_eq!(
            CurveTag::EllipticDoubleCover.genus(),
            newton_interior(1, 2, 4)
        );
        assert_eq!(CurveTag::TrigonalBranch.genus(), newton_interior(1, 2, 6));
        assert_eq!(
            CurveTag::HyperellipticBranch.genus(),
            newton_interior(1, 3, 6)
        );
        assert_eq!(CurveTag::QuarticSpaceCurve.genus(), space_ci_genus(2, 2));
        for tag in [
            CurveTag::SmoothRational,
            CurveTag::PlaneCubic,
            CurveTag::QuarticSpaceCurve,
            CurveTag::EllipticDoubleCover,
            CurveTag::BranchQuartic,
            CurveTag::TrigonalBranch,
            CurveTag::HyperellipticBranch,
        ] {
            assert_eq!(tag.euler(), 2 - 2 * tag.genus());
        }
    }

    #[test]
    fn locus_euler_is_additive_over_parts() {
        let mut parts = LocusParts::empty();
        parts.push_curve(CurveTag::BranchQuartic, "branch".into());
        parts.push_point(SurfacePoint::Torus(CycNum::one(), CycNum::one()));
        parts.push_unresolved(4, "quartic roots".into());
        let locus = parts.into_locus(Family::Dp2);
        assert_eq!(locus.euler(), -4 + 1 + 4);
        assert_eq!(locus.lefschetz_trace(), locus.euler() - 2);
        assert!(!locus.is_full());
        assert!(!locus.is_empty());

        let full = LocusParts::full().into_locus(Family::Dp3);
        assert_eq!(full.euler(), 9);
        assert_eq!(full.lefschetz_trace(), 7);
    }

    fn identity_for(family: Family) -> SurfaceAut {
        let one = CycNum::one;
        match family {
            Family::Quadric => {
                SurfaceAut::Quadric(QuadricAut::diag(&one(), &one()).unwrap())
            }
            Family::Dp6 => SurfaceAut::Monomial(MonomialAut::torus(one(), one()).unwrap()),
            Family::Dp4 => SurfaceAut::Linear(LinearAut::new(CycMat::identity(5)).unwrap()),
            Family::Dp3 => SurfaceAut::Linear(LinearAut::new(CycMat::identity(4)).unwrap()),
            Family::Dp2 => SurfaceAut::WeightedDp2(
                WeightedDp2Aut::new(one(), CycMat::identity(3)).unwrap(),
            ),
            Family::Dp1 => SurfaceAut::WeightedDp1(
                WeightedDp1Aut::new(CycMat::identity(2), one(), one()).unwrap(),
            ),
        }
    }

    #[test]
    fn identity_fixes_every_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [
            SurfaceKind::Quadric,
            SurfaceKind::Dp6,
            SurfaceKind::Dp4I,
            SurfaceKind::Dp3I,
            SurfaceKind::Dp2I,
            SurfaceKind::Dp1I,
        ] {
            let surface = kind.specialize(&mut rng).unwrap();
            let id = identity_for(surface.family());
            let locus = fixed_locus(&surface, &[id]).unwrap();
            assert!(locus.is_full(), "{kind:?}");
            assert_eq!(locus.euler(), surface.family().euler_characteristic());
        }
    }

    fn quadric_surface() -> Surface {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        SurfaceKind::Quadric.specialize(&mut rng).unwrap()
    }

    fn trace_pair(surface: &Surface, g: &SurfaceAut) -> (i64, i64) {
        let lefschetz = lefschetz_trace(surface, g).unwrap();
        let pic = picweyl::pic_action(g, surface.family()).unwrap().trace();
        (lefschetz, pic)
    }

    #[test]
    fn quadric_element_loci() {
        let surface = quadric_surface();

        // Scaling one line: the two fibers over the fixed points stay.
        let scale = SurfaceAut::Quadric(
            QuadricAut::diag(&CycNum::i(), &CycNum::one()).unwrap(),
        );
        let locus = fixed_locus(&surface, &[scale.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 2);
        assert!(locus.points().is_empty());
        assert_eq!(locus.euler(), 4);
        let (lef, pic) = trace_pair(&surface, &scale);
        assert_eq!(lef, 2);
        assert_eq!(lef, pic);

        // An order-four rotation of the first line fixes two fibers.
        let rot = SurfaceAut::Quadric(
            QuadricAut::from_moebius([[0, 1], [-1, 0]], [[1, 0], [0, 1]], false).unwrap(),
        );
        let locus = fixed_locus(&surface, &[rot]).unwrap();
        assert_eq!(locus.curves().len(), 2);
        assert_eq!(locus.euler(), 4);

        // Swapping the factors fixes the diagonal.
        let swap = SurfaceAut::Quadric(QuadricAut::swap_map());
        let locus = fixed_locus(&surface, &[swap.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::SmoothRational);
        assert!(locus.points().is_empty());
        assert_eq!(locus.euler(), 2);
        let (lef, pic) = trace_pair(&surface, &swap);
        assert_eq!(lef, 0);
        assert_eq!(lef, pic);

        // Inverting both coordinates fixes the four points (±1, ±1).
        let inv = SurfaceAut::Quadric(QuadricAut::inversion());
        let locus = fixed_locus(&surface, &[inv.clone()]).unwrap();
        assert!(locus.curves().is_empty());
        assert_eq!(locus.points().len(), 4);
        assert_eq!(locus.euler(), 4);
        let (lef, pic) = trace_pair(&surface, &inv);
        assert_eq!(lef, 2);
        assert_eq!(lef, pic);
    }

    #[test]
    fn quadric_group_fixed_points_and_orbits() {
        let surface = quadric_surface();
        let inv = SurfaceAut::Quadric(QuadricAut::inversion());
        let swap = SurfaceAut::Quadric(QuadricAut::swap_map());
        let group = FiniteGroup::generate(&[inv, swap]).unwrap();
        assert_eq!(group.order(), 4);

        // Common fixed points: (1, 1) and (-1, -1) on the diagonal.
        let fixed = fixed_locus_of_group(&surface, &group).unwrap();
        assert!(fixed.curves().is_empty());
        assert_eq!(fixed.points().len(), 2);
        for p in fixed.points() {
            for g in group.elements() {
                assert_eq!(&apply_point(&surface, g, p).unwrap(), p);
            }
        }

        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
        assert_eq!(
            picweyl::structural_invariant_rank(&group, Family::Quadric).unwrap(),
            1
        );

        let report = orbits_up_to_length(&surface, &group, 2).unwrap();
        assert!(!report.full_surface_stabilizer);
        assert!(report.unresolved.is_empty());
        // Two fixed points and one swapped pair (1, -1) <-> (-1, 1).
        let mut lengths: Vec<usize> = report.orbits.iter().map(|o| o.points.len()).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![1, 1, 2]);
        for orbit in &report.orbits {
            assert_eq!(orbit.stabilizer_order * orbit.points.len(), group.order());
        }
        // The diagonal from the swap and the graph of inversion.
        assert_eq!(report.curves.len(), 2);
        for c in &report.curves {
            assert_eq!(c.tag, CurveTag::SmoothRational);
            assert_eq!(c.orbit_bound, 2);
        }
    }

    fn dp6_surface() -> Surface {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        SurfaceKind::Dp6.specialize(&mut rng).unwrap()
    }

    #[test]
    fn hexagon_element_loci_match_picard_traces() {
        let surface = dp6_surface();
        let one = CycNum::one;
        let minus = || -&CycNum::one();

        // Translation by (-1, 1): two boundary curves are pointwise
        // fixed and two opposite corners stay isolated.
        let tr = SurfaceAut::Monomial(MonomialAut::torus(minus(), one()).unwrap());
        let locus = fixed_locus(&surface, &[tr.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 2);
        let corners: Vec<usize> = locus
            .points()
            .iter()
            .map(|p| match p {
                SurfacePoint::Corner { ray } => *ray,
                other => panic!("unexpected point {other:?}"),
            })
            .collect();
        assert_eq!(corners.len(), 2);
        assert_eq!(locus.euler(), 6);
        let (lef, pic) = trace_pair(&surface, &tr);
        assert_eq!(lef, 4);
        assert_eq!(lef, pic);

        // The hexagon rotation has det(m - 1) = 3 interior fixed points.
        let rot = dp6_rotation();
        let locus = fixed_locus(&surface, &[rot.clone()]).unwrap();
        assert!(locus.curves().is_empty());
        assert_eq!(locus.points().len(), 3);
        for p in locus.points() {
            assert_eq!(&apply_point(&surface, &rot, p).unwrap(), p);
        }
        let (lef, pic) = trace_pair(&surface, &rot);
        assert_eq!(lef, 1);
        assert_eq!(lef, pic);

        // Rotation composed with inversion has a single fixed point.
        let rot_inv = rot.then(&dp6_inversion());
        let locus = fixed_locus(&surface, &[rot_inv.clone()]).unwrap();
        assert_eq!(locus.points().len(), 1);
        assert_eq!(locus.euler(), 1);
        let (lef, pic) = trace_pair(&surface, &rot_inv);
        assert_eq!(lef, -1);
        assert_eq!(lef, pic);

        // Inversion fixes the four 2-torsion points of the torus.
        let inv = dp6_inversion();
        let locus = fixed_locus(&surface, &[inv.clone()]).unwrap();
        assert!(locus.curves().is_empty());
        assert_eq!(locus.points().len(), 4);
        assert_eq!(locus.euler(), 4);
        let (lef, pic) = trace_pair(&surface, &inv);
        assert_eq!(lef, 2);
        assert_eq!(lef, pic);

        // The reflection fixes the diagonal coset curve pointwise plus
        // one reversal point on each of the two stable boundary rays.
        let refl = dp6_reflection();
        let locus = fixed_locus(&surface, &[refl.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::SmoothRational);
        assert_eq!(locus.points().len(), 2);
        assert_eq!(locus.euler(), 4);
        let (lef, pic) = trace_pair(&surface, &refl);
        assert_eq!(lef, 2);
        assert_eq!(lef, pic);

        // A scaled swap with incompatible scalars has no fixed curve,
        // only four reversal points on the stable boundary rays.
        let twisted = SurfaceAut::Monomial(
            MonomialAut::new([[0, 1], [1, 0]], CycNum::zeta(3).unwrap(), one()).unwrap(),
        );
        let locus = fixed_locus(&surface, &[twisted.clone()]).unwrap();
        assert!(locus.curves().is_empty());
        assert_eq!(locus.points().len(), 4);
        let (lef, pic) = trace_pair(&surface, &twisted);
        assert_eq!(lef, 2);
        assert_eq!(lef, pic);
    }

    #[test]
    fn hexagon_groups_traces_and_ranks() {
        let surface = dp6_surface();
        let orders = [48, 24, 24, 36, 18, 18, 12, 6, 6];
        for (k, expected) in (1..=9).zip(orders) {
            let group = FiniteGroup::generate(&dp6_group(k)).unwrap();
            assert_eq!(group.order(), expected, "group {k}");
            for g in group.elements() {
                let (lef, pic) = trace_pair(&surface, g);
                assert_eq!(lef, pic, "group {k}");
            }
            assert_eq!(invariant_rank(&surface, &group).unwrap(), 1, "group {k}");
            assert_eq!(
                picweyl::structural_invariant_rank(&group, Family::Dp6).unwrap(),
                1,
                "group {k}"
            );
        }
    }

    #[test]
    fn hexagon_group_fixed_points_and_short_orbits() {
        let surface = dp6_surface();

        // The group with a fixed point: only the torus identity stays.
        let g7 = FiniteGroup::generate(&dp6_group(7)).unwrap();
        let fixed = fixed_locus_of_group(&surface, &g7).unwrap();
        assert!(fixed.curves().is_empty());
        assert_eq!(
            fixed.points(),
            &[SurfacePoint::Torus(CycNum::one(), CycNum::one())]
        );

        // Adding the order-three translation frees the action.
        let g4 = FiniteGroup::generate(&dp6_group(4)).unwrap();
        let fixed = fixed_locus_of_group(&surface, &g4).unwrap();
        assert!(fixed.is_empty());

        // The full split group has exactly one orbit of length at most
        // four: the 2-torsion points of the torus.
        let g1 = FiniteGroup::generate(&dp6_group(1)).unwrap();
        let report = orbits_up_to_length(&surface, &g1, 4).unwrap();
        assert!(!report.full_surface_stabilizer);
        assert!(report.curves.is_empty());
        assert!(report.unresolved.is_empty());
        assert_eq!(report.orbits.len(), 1);
        let orbit = &report.orbits[0];
        assert_eq!(orbit.points.len(), 4);
        assert_eq!(orbit.stabilizer_order, 12);
        let minus = -&CycNum::one();
        for (x, y) in [
            (CycNum::one(), CycNum::one()),
            (CycNum::one(), minus.clone()),
            (minus.clone(), CycNum::one()),
            (minus.clone(), minus.clone()),
        ] {
            assert!(orbit.points.contains(&SurfacePoint::Torus(x, y)));
        }
    }

    fn dp4_surface(kind: SurfaceKind) -> Surface {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        kind.specialize(&mut rng).unwrap()
    }

    #[test]
    fn dp4_sign_involution_fixes_quartic_curve() {
        let surface = dp4_surface(SurfaceKind::Dp4I);
        let iota = dp4_iota(1);
        assert!(surface.preserved_by(&iota).unwrap());
        let locus = fixed_locus(&surface, &[iota.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::QuarticSpaceCurve);
        assert!(locus.points().is_empty());
        assert!(locus.unresolved().is_empty());
        assert_eq!(locus.euler(), 0);
        assert_eq!(lefschetz_trace(&surface, &iota).unwrap(), -2);
    }

    #[test]
    fn dp4_two_sign_involutions_fix_four_points() {
        let surface = dp4_surface(SurfaceKind::Dp4I);
        let group = FiniteGroup::generate(&[dp4_iota(1), dp4_iota(2)]).unwrap();
        assert_eq!(group.order(), 4);
        let fixed = fixed_locus_of_group(&surface, &group).unwrap();
        assert!(fixed.curves().is_empty());
        assert!(fixed.unresolved().is_empty());
        assert_eq!(fixed.points().len(), 4);
        for p in fixed.points() {
            assert!(p.on_surface(&surface));
            for g in group.elements() {
                assert_eq!(&apply_point(&surface, g, p).unwrap(), p);
            }
        }

        // The same subgroup from a different generating set yields the
        // same point set.
        let composite = dp4_iota(1).then(&dp4_iota(2));
        let again = fixed_locus(&surface, &[composite, dp4_iota(2)]).unwrap();
        assert_eq!(again.points().len(), 4);
        for p in again.points() {
            assert!(fixed.points().contains(p));
        }

        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
    }

    #[test]
    fn dp4_order_eight_symmetry_fixes_two_points() {
        let surface = dp4_surface(SurfaceKind::Dp4III);
        let g = dp4_perm(&[1, 2, 3, 0, 4]).then(&dp4_iota(3));
        assert!(surface.preserved_by(&g).unwrap());
        let group = FiniteGroup::generate(&[g.clone()]).unwrap();
        assert_eq!(group.order(), 8);

        let locus = fixed_locus(&surface, &[g.clone()]).unwrap();
        assert!(locus.curves().is_empty());
        assert!(locus.unresolved().is_empty());
        assert_eq!(locus.points().len(), 2);
        for p in locus.points() {
            assert!(p.on_surface(&surface));
            assert_eq!(&apply_point(&surface, &g, p).unwrap(), p);
        }

        let fixed = fixed_locus_of_group(&surface, &group).unwrap();
        assert_eq!(fixed.points().len(), 2);

        let report = orbits_up_to_length(&surface, &group, 1).unwrap();
        assert_eq!(report.orbits.len(), 2);
        for orbit in &report.orbits {
            assert_eq!(orbit.points.len(), 1);
            assert_eq!(orbit.stabilizer_order, 8);
        }
    }

    #[test]
    fn dp4_full_sign_group_has_no_fixed_points() {
        let surface = dp4_surface(SurfaceKind::Dp4I);
        let gens: Vec<SurfaceAut> = (1..5).map(dp4_iota).collect();
        let group = FiniteGroup::generate(&gens).unwrap();
        assert_eq!(group.order(), 16);
        let fixed = fixed_locus_of_group(&surface, &group).unwrap();
        assert!(fixed.is_empty());
        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
    }

    #[test]
    fn cubic_diagonal_symmetries() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);

        // On the Fermat cubic, scaling the last coordinate by a cube
        // root of unity fixes the plane cubic section x3 = 0.
        let fermat = SurfaceKind::Dp3I.specialize(&mut rng).unwrap();
        let tau = dp3_tau(6);
        assert!(fermat.preserved_by(&tau).unwrap());
        let locus = fixed_locus(&fermat, &[tau.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::PlaneCubic);
        assert!(locus.points().is_empty());
        assert_eq!(locus.euler(), 0);
        let group = FiniteGroup::generate(&[tau]).unwrap();
        assert_eq!(group.order(), 3);
        assert_eq!(invariant_rank(&fermat, &group).unwrap(), 1);

        // The double sign flip on the middle coordinates of the other
        // diagonal cubic fixes a line of the surface pointwise plus
        // three isolated points on the complementary line.
        let surface = SurfaceKind::Dp3V.specialize(&mut rng).unwrap();
        let tau = dp3_tau(2);
        assert!(surface.preserved_by(&tau).unwrap());
        let locus = fixed_locus(&surface, &[tau.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::SmoothRational);
        assert_eq!(locus.points().len(), 3);
        assert_eq!(locus.euler(), 5);
        assert_eq!(lefschetz_trace(&surface, &tau).unwrap(), 3);
        let group = FiniteGroup::generate(&[tau]).unwrap();
        assert_eq!(invariant_rank(&surface, &group).unwrap(), 5);
    }

    #[test]
    fn cubic_coordinate_cycle_on_fermat() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let fermat = SurfaceKind::Dp3I.specialize(&mut rng).unwrap();
        let sigma = dp3_sigma(&[1, 2, 3, 0]);
        assert!(fermat.preserved_by(&sigma).unwrap());
        let group = FiniteGroup::generate(&[sigma.clone()]).unwrap();
        assert_eq!(group.order(), 4);

        // The cycle itself fixes three isolated points.
        let locus = fixed_locus(&fermat, &[sigma.clone()]).unwrap();
        assert!(locus.curves().is_empty());
        assert_eq!(locus.points().len(), 3);
        assert_eq!(locus.euler(), 3);

        // Its square fixes a line of the surface and three points.
        let square = sigma.then(&sigma);
        let locus = fixed_locus(&fermat, &[square]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::SmoothRational);
        assert_eq!(locus.points().len(), 3);
        assert_eq!(locus.euler(), 5);

        assert_eq!(invariant_rank(&fermat, &group).unwrap(), 3);

        // Short orbits: the three fixed points stay put, and the two
        // extra fixed points of the square form one orbit of length 2.
        let report = orbits_up_to_length(&fermat, &group, 2).unwrap();
        let mut lengths: Vec<usize> = report.orbits.iter().map(|o| o.points.len()).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![1, 1, 1, 2]);
        assert_eq!(report.curves.len(), 1);
        assert_eq!(report.curves[0].orbit_bound, 2);
    }

    #[test]
    fn geiser_involution_fixes_branch_quartic() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let surface = SurfaceKind::Dp2II.specialize(&mut rng).unwrap();
        let iota = dp2_iota();
        assert!(surface.preserved_by(&iota).unwrap());
        let locus = fixed_locus(&surface, &[iota.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::BranchQuartic);
        assert!(locus.points().is_empty());
        assert_eq!(locus.euler(), -4);
        assert_eq!(lefschetz_trace(&surface, &iota).unwrap(), -6);
        let group = FiniteGroup::generate(&[iota]).unwrap();
        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
    }

    #[test]
    fn double_cover_reflection_splits_into_curve_and_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let surface = SurfaceKind::Dp2II.specialize(&mut rng).unwrap();
        let sigma = dp2_sigma(10);
        assert!(surface.preserved_by(&sigma).unwrap());
        let locus = fixed_locus(&surface, &[sigma.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::EllipticDoubleCover);
        assert_eq!(locus.points().len(), 2);
        for p in locus.points() {
            assert!(p.on_surface(&surface));
            assert_eq!(&apply_point(&surface, &sigma, p).unwrap(), p);
        }
        assert_eq!(locus.euler(), 2);
        assert_eq!(lefschetz_trace(&surface, &sigma).unwrap(), 0);
        let group = FiniteGroup::generate(&[sigma]).unwrap();
        assert_eq!(invariant_rank(&surface, &group).unwrap(), 4);
    }

    #[test]
    fn bertini_involution_fixes_trigonal_curve_and_base_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let surface = SurfaceKind::Dp1I.specialize(&mut rng).unwrap();
        let gamma = dp1_gamma();
        assert!(surface.preserved_by(&gamma).unwrap());
        let locus = fixed_locus(&surface, &[gamma.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::TrigonalBranch);
        assert_eq!(locus.points().len(), 1);
        assert!(locus.points()[0].on_surface(&surface));
        assert_eq!(locus.euler(), -5);
        assert_eq!(lefschetz_trace(&surface, &gamma).unwrap(), -7);
        let group = FiniteGroup::generate(&[gamma]).unwrap();
        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
    }

    #[test]
    fn cube_twist_fixes_hyperelliptic_curve_and_base_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let surface = SurfaceKind::Dp1II.specialize(&mut rng).unwrap();
        let delta = dp1_delta();
        assert!(surface.preserved_by(&delta).unwrap());
        let locus = fixed_locus(&surface, &[delta.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::HyperellipticBranch);
        assert_eq!(locus.points().len(), 1);
        assert_eq!(locus.euler(), -1);
        assert_eq!(lefschetz_trace(&surface, &delta).unwrap(), -3);
        let group = FiniteGroup::generate(&[delta]).unwrap();
        assert_eq!(group.order(), 3);
        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
    }

    #[test]
    fn order_five_symmetry_fixes_fiber_and_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let surface = SurfaceKind::Dp1C5.specialize(&mut rng).unwrap();
        let sigma = dp1_sigma(7);
        assert!(surface.preserved_by(&sigma).unwrap());
        let group = FiniteGroup::generate(&[sigma.clone()]).unwrap();
        assert_eq!(group.order(), 5);

        let locus = fixed_locus(&surface, &[sigma.clone()]).unwrap();
        assert_eq!(locus.curves().len(), 1);
        assert_eq!(locus.curves()[0].tag, CurveTag::PlaneCubic);
        assert_eq!(locus.points().len(), 1);
        assert_eq!(locus.euler(), 1);
        assert_eq!(lefschetz_trace(&surface, &sigma).unwrap(), -1);

        for p in locus.points() {
            assert!(p.on_surface(&surface));
            assert_eq!(&apply_point(&surface, &sigma, p).unwrap(), p);
        }
        // The base point of the anticanonical pencil lies on the fixed
        // fiber, and is itself fixed.
        let base = SurfacePoint::coords(
            vec![
                ExtElem::from_int(0),
                ExtElem::from_int(0),
                ExtElem::from_int(-1),
                ExtElem::from_int(-1),
            ],
            surface.weights(),
        )
        .unwrap();
        assert!(base.on_surface(&surface));
        assert_eq!(apply_point(&surface, &sigma, &base).unwrap(), base);

        assert_eq!(invariant_rank(&surface, &group).unwrap(), 1);
    }
}

