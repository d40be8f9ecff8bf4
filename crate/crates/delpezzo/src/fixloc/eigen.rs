//! Fixed loci of linear and weighted carriers via exact joint
//! eigenspace decomposition over cyclotomic fields.
//!
//! A point fixed by every element of a group of projective-linear maps
//! spans a joint eigenvector, so the fixed locus decomposes along the
//! common refinement of the eigenspaces.  Each piece is then cut
//! against the surface equations: membership for single vectors, root
//! finding on lines, and certified plane or space sections in higher
//! dimension.  The weighted models additionally compare the cover
//! scalars against powers of the fiberwise eigenvalue.

use crate::autgrp::{finite_matrix_rep, WeightedDp1Aut, WeightedDp2Aut};
use crate::cyclo::matrix::{eigen_decomposition, CycMat, Field, Mat};
use crate::cyclo::{sqrt_cyc, CycNum, ExtElem, SqrtOutcome};
use crate::surfaces::modp::{certify_cone_empty, certify_smooth_hypersurface};
use crate::surfaces::mpoly::MPoly;
use crate::surfaces::upoly::{BinForm, ProjRoot, RootError, UPoly};
use crate::surfaces::{Family, Surface};

use super::point::SurfacePoint;
use super::{CurveTag, FixError, LocusParts};

/// One refined piece of the joint decomposition: the eigenvalue of each
/// carrier on the piece, together with a basis of the common subspace.
type JointSpace = (Vec<CycNum>, Vec<Vec<CycNum>>);

/// Common refinement of the eigenspace decompositions of finite-order
/// matrices.  Pieces with trivial intersection are dropped; the
/// eigenvalue tuples of the surviving pieces are pairwise distinct.
pub(crate) fn joint_eigenspaces(reps: &[(CycMat, u32)], n: usize) -> Vec<JointSpace> {
    let full: Vec<Vec<CycNum>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CycNum::one() } else { CycNum::zero() })
                .collect()
        })
        .collect();
    let mut spaces: Vec<JointSpace> = vec![(Vec::new(), full)];
    for (m, ord) in reps {
        let eig = eigen_decomposition(m, *ord);
        let mut next = Vec::new();
        for (tuple, basis) in &spaces {
            for (lam, ebasis) in &eig {
                let inter = intersect_spaces(basis, ebasis, n);
                if !inter.is_empty() {
                    let mut t = tuple.clone();
                    t.push(lam.clone());
                    next.push((t, inter));
                }
            }
        }
        spaces = next;
    }
    spaces
}

/// Basis of the intersection of two subspaces given by bases, via the
/// kernel of the stacked matrix `[A | -B]`.
fn intersect_spaces(a: &[Vec<CycNum>], b: &[Vec<CycNum>], n: usize) -> Vec<Vec<CycNum>> {
    if a.len() == n {
        return b.to_vec();
    }
    if b.len() == n {
        return a.to_vec();
    }
    let ka = a.len();
    let stacked = Mat::from_fn(n, ka + b.len(), |r, c| {
        if c < ka {
            a[c][r].clone()
        } else {
            -&b[c - ka][r]
        }
    });
    stacked
        .kernel_basis()
        .iter()
        .map(|k| {
            (0..n)
                .map(|r| {
                    let mut acc = CycNum::zero();
                    for (i, ai) in a.iter().enumerate() {
                        acc = &acc + &(&k[i] * &ai[r]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn ext_coords(v: &[CycNum]) -> Vec<ExtElem> {
    v.iter().map(|c| ExtElem::from_cyc(c.clone())).collect()
}

fn point_from_cyc(v: &[CycNum], weights: &[usize]) -> Result<SurfacePoint, FixError> {
    SurfacePoint::coords(ext_coords(v), weights)
}

fn sqrt_ext(c: &CycNum) -> ExtElem {
    match sqrt_cyc(c) {
        SqrtOutcome::Exact(r) => ExtElem::from_cyc(r),
        SqrtOutcome::Radical { scale, radicand } => {
            ExtElem::from_cyc(scale).mul(&ExtElem::sqrt_radicand(radicand))
        }
    }
}

/// Fixed locus of a tuple of commuting-or-not finite-order matrices on
/// a degree-three or degree-four model.
pub(crate) fn linear_parts(
    surface: &Surface,
    reps: &[(CycMat, u32)],
) -> Result<LocusParts, FixError> {
    let n = surface.nvars();
    let mut parts = LocusParts::empty();
    for (_, basis) in joint_eigenspaces(reps, n) {
        if basis.len() == n {
            // Every carrier is scalar, hence projectively trivial.
            return Ok(LocusParts::full());
        }
        classify_projective_subspace(surface, &basis, &mut parts)?;
    }
    Ok(parts)
}

fn classify_projective_subspace(
    surface: &Surface,
    basis: &[Vec<CycNum>],
    parts: &mut LocusParts,
) -> Result<(), FixError> {
    match (basis.len(), surface.family()) {
        (1, _) => {
            if surface
                .equations()
                .iter()
                .all(|e| e.eval(&basis[0]).is_zero())
            {
                parts.push_point(point_from_cyc(&basis[0], surface.weights())?);
            }
            Ok(())
        }
        (2, _) => line_section(surface, basis, parts),
        (3, Family::Dp3) => plane_cubic_section(surface, basis, parts),
        (3, Family::Dp4) => plane_quadric_pencil(surface, basis, parts),
        (4, Family::Dp4) => hyperplane_curve_section(surface, basis, parts),
        (d, f) => Err(FixError::Unsupported(format!(
            "eigenspace of dimension {d} on a degree-{} model",
            f.degree()
        ))),
    }
}

fn line_point(
    b0: &[CycNum],
    b1: &[CycNum],
    r: &ProjRoot,
    weights: &[usize],
) -> Result<SurfacePoint, FixError> {
    let v: Vec<ExtElem> = (0..b0.len())
        .map(|i| {
            r.s.mul(&ExtElem::from_cyc(b0[i].clone()))
                .add(&r.t.mul(&ExtElem::from_cyc(b1[i].clone())))
        })
        .collect();
    SurfacePoint::coords(v, weights)
}

/// Fixed points on a pointwise-fixed ambient line: either the line
/// lies on the surface or the surface cuts a common root set.
fn line_section(
    surface: &Surface,
    basis: &[Vec<CycNum>],
    parts: &mut LocusParts,
) -> Result<(), FixError> {
    let restricted: Vec<BinForm> = surface
        .equations()
        .iter()
        .map(|e| e.restrict_line(&basis[0], &basis[1]))
        .collect();
    if restricted.iter().all(BinForm::is_zero) {
        parts.push_curve(
            CurveTag::SmoothRational,
            "pointwise-fixed line on the surface".into(),
        );
        return Ok(());
    }
    let mut common: Option<BinForm> = None;
    for f in restricted {
        if f.is_zero() {
            continue;
        }
        common = Some(match common {
            None => f,
            Some(g) => g.gcd(&f),
        });
    }
    let g = common.expect("some restriction is nonzero");
    if g.distinct_root_count() == 0 {
        return Ok(());
    }
    match g.roots() {
        Ok(roots) => {
            for r in roots {
                parts.push_point(line_point(&basis[0], &basis[1], &r, surface.weights())?);
            }
        }
        Err(RootError::FieldEscape { .. }) => parts.push_unresolved(
            g.distinct_root_count(),
            "isolated fixed points on a pointwise-fixed line".into(),
        ),
    }
    Ok(())
}

fn plane_cubic_section(
    surface: &Surface,
    basis: &[Vec<CycNum>],
    parts: &mut LocusParts,
) -> Result<(), FixError> {
    let c = surface.equations()[0].restrict_subspace(basis);
    if c.is_zero() {
        return Err(FixError::Degenerate(
            "plane contained in a cubic surface".into(),
        ));
    }
    if certify_smooth_hypersurface(&c, &[1, 1, 1]) {
        parts.push_curve(
            CurveTag::PlaneCubic,
            "pointwise-fixed smooth plane cubic section".into(),
        );
        Ok(())
    } else {
        Err(FixError::Unsupported(
            "plane cubic section not certified smooth".into(),
        ))
    }
}

/// Symmetric coefficient matrix of a ternary quadratic form.
fn conic_matrix(q: &MPoly) -> Result<CycMat, FixError> {
    let mut entries = vec![CycNum::zero(); 9];
    let half = CycNum::from_ratio(1, 2);
    for (exps, c) in q.terms() {
        let mut idx = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                idx.push(i);
            }
        }
        if idx.len() != 2 {
            return Err(FixError::Degenerate(
                "plane section restriction is not quadratic".into(),
            ));
        }
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            entries[i * 3 + i] = c.clone();
        } else {
            let h = c * &half;
            entries[i * 3 + j] = h.clone();
            entries[j * 3 + i] = h;
        }
    }
    Ok(CycMat::new(3, 3, entries))
}

fn fixed_conic(q: &MPoly, parts: &mut LocusParts) -> Result<(), FixError> {
    if conic_matrix(q)?.det().is_zero() {
        Err(FixError::Unsupported(
            "pointwise-fixed plane conic is singular".into(),
        ))
    } else {
        parts.push_curve(
            CurveTag::SmoothRational,
            "pointwise-fixed smooth conic plane section".into(),
        );
        Ok(())
    }
}

fn ambient_from_subspace(basis: &[Vec<CycNum>], combo: &[ExtElem]) -> Vec<ExtElem> {
    let n = basis[0].len();
    (0..n)
        .map(|r| {
            let mut acc = ExtElem::from_int(0);
            for (i, b) in basis.iter().enumerate() {
                if !combo[i].is_zero() && !b[r].is_zero() {
                    acc = acc.add(&combo[i].mul(&ExtElem::from_cyc(b[r].clone())));
                }
            }
            acc
        })
        .collect()
}

/// Intersection of two distinct diagonal conics on a fixed plane: the
/// simultaneous square-root locus of the kernel of the coefficient
/// matrix.
fn conic_pair_points(
    surface: &Surface,
    basis: &[Vec<CycNum>],
    q1: &MPoly,
    q2: &MPoly,
    parts: &mut LocusParts,
) -> Result<(), FixError> {
    for q in [q1, q2] {
        for (exps, _) in q.terms() {
            if exps.iter().filter(|&&e| e > 0).count() > 1 {
                return Err(FixError::Unsupported(
                    "plane section pair is not simultaneously diagonal".into(),
                ));
            }
        }
    }
    let diag = |q: &MPoly, i: usize| -> CycNum {
        for (exps, c) in q.terms() {
            if exps[i] == 2 {
                return c.clone();
            }
        }
        CycNum::zero()
    };
    let mut rows = Vec::with_capacity(6);
    for i in 0..3 {
        rows.push(diag(q1, i));
    }
    for i in 0..3 {
        rows.push(diag(q2, i));
    }
    let ker = CycMat::new(2, 3, rows).kernel_basis();
    if ker.len() != 1 {
        return Err(FixError::Degenerate(
            "diagonal conic pencil with degenerate coefficients".into(),
        ));
    }
    let alpha = &ker[0];
    let p = (0..3)
        .find(|&i| !alpha[i].is_zero())
        .expect("kernel basis vector is nonzero");
    let scale = alpha[p].inv()?;
    let mut combos: Vec<Vec<ExtElem>> = vec![Vec::new()];
    for i in 0..3 {
        let vals: Vec<ExtElem> = if i == p {
            vec![ExtElem::from_int(1)]
        } else if alpha[i].is_zero() {
            vec![ExtElem::from_int(0)]
        } else {
            let r = sqrt_ext(&(&alpha[i] * &scale));
            vec![r.clone(), r.neg()]
        };
        let mut next = Vec::with_capacity(combos.len() * vals.len());
        for c in &combos {
            for v in &vals {
                let mut cc = c.clone();
                cc.push(v.clone());
                next.push(cc);
            }
        }
        combos = next;
    }
    for combo in combos {
        let amb = ambient_from_subspace(basis, &combo);
        debug_assert!(surface
            .equations()
            .iter()
            .all(|e| e.eval_ext(&amb).is_zero()));
        parts.push_point(SurfacePoint::coords(amb, surface.weights())?);
    }
    Ok(())
}

fn plane_quadric_pencil(
    surface: &Surface,
    basis: &[Vec<CycNum>],
    parts: &mut LocusParts,
) -> Result<(), FixError> {
    let q1 = surface.equations()[0].restrict_subspace(basis);
    let q2 = surface.equations()[1].restrict_subspace(basis);
    match (q1.is_zero(), q2.is_zero()) {
        (true, true) => Err(FixError::Degenerate(
            "plane contained in both quadrics of the pencil".into(),
        )),
        (true, false) => fixed_conic(&q2, parts),
        (false, true) => fixed_conic(&q1, parts),
        (false, false) => {
            if q1.proportional_scalar(&q2).is_some() {
                fixed_conic(&q1, parts)
            } else {
                conic_pair_points(surface, basis, &q1, &q2, parts)
            }
        }
    }
}

/// A pointwise-fixed hyperplane cuts the quadric pencil in a quartic
/// space curve; smoothness is certified on the singular-locus system.
fn hyperplane_curve_section(
    surface: &Surface,
    basis: &[Vec<CycNum>],
    parts: &mut LocusParts,
) -> Result<(), FixError> {
    let q1 = surface.equations()[0].restrict_subspace(basis);
    let q2 = surface.equations()[1].restrict_subspace(basis);
    if q1.is_zero() || q2.is_zero() || q1.proportional_scalar(&q2).is_some() {
        return Err(FixError::Degenerate(
            "hyperplane restriction of the pencil collapses".into(),
        ));
    }
    let mut sys: Vec<MPoly> = vec![q1.clone(), q2.clone()];
    let g1: Vec<MPoly> = (0..4).map(|i| q1.partial(i)).collect();
    let g2: Vec<MPoly> = (0..4).map(|i| q2.partial(i)).collect();
    for i in 0..4 {
        for j in (i + 1)..4 {
            sys.push(g1[i].mul(&g2[j]).sub(&g1[j].mul(&g2[i])));
        }
    }
    let refs: Vec<&MPoly> = sys.iter().collect();
    if certify_cone_empty(&refs) {
        parts.push_curve(
            CurveTag::QuarticSpaceCurve,
            "pointwise-fixed quartic space curve section".into(),
        );
        Ok(())
    } else {
        Err(FixError::Unsupported(
            "hyperplane section curve not certified smooth".into(),
        ))
    }
}

/// Scalar ratio between a matrix and its canonical finite-order
/// rescaling.
fn rescale_ratio(m0: &CycMat, m: &CycMat) -> CycNum {
    for r in 0..m.rows {
        for c in 0..m.cols {
            if !m.at(r, c).is_zero() {
                return m0.at(r, c) * &m.at(r, c).inv().expect("nonzero entry");
            }
        }
    }
    unreachable!("invertible matrix has a nonzero entry")
}

/// Double-cover carrier normalized so that the matrix part has finite
/// order, with the cover scalar adjusted by the matching weight.
pub(crate) struct Dp2Rep {
    m0: CycMat,
    ord: u32,
    s0: CycNum,
}

pub(crate) fn dp2_rep(w: &WeightedDp2Aut) -> Result<Dp2Rep, FixError> {
    let (m0, ord) = finite_matrix_rep(w.matrix())?;
    let alpha = rescale_ratio(&m0, w.matrix());
    let s0 = &(&alpha * &alpha) * w.scalar();
    Ok(Dp2Rep { m0, ord, s0 })
}

/// The quartic form under the double cover: the model reads
/// `x0^2 = Q4(x1, x2, x3)`.
fn branch_quartic(surface: &Surface) -> Result<MPoly, FixError> {
    let eq = &surface.equations()[0];
    let q4 = MPoly::var(4, 0).pow(2).sub(eq);
    for (e, _) in q4.terms() {
        if e[0] != 0 {
            return Err(FixError::Degenerate(
                "double cover model not in standard form".into(),
            ));
        }
    }
    Ok(q4)
}

fn embed_after_zero(v: &[CycNum]) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero()];
    out.extend(v.iter().cloned());
    out
}

fn drop_first_var(q: &MPoly) -> MPoly {
    let mut out = MPoly::zero(3);
    for (e, c) in q.terms() {
        debug_assert_eq!(e[0], 0);
        out = out.add(&MPoly::term(3, &[e[1], e[2], e[3]], c.clone()));
    }
    out
}

pub(crate) fn dp2_parts(surface: &Surface, reps: &[Dp2Rep]) -> Result<LocusParts, FixError> {
    let q4 = branch_quartic(surface)?;
    let pairs: Vec<(CycMat, u32)> = reps.iter().map(|r| (r.m0.clone(), r.ord)).collect();
    let mut parts = LocusParts::empty();
    for (tuple, basis) in joint_eigenspaces(&pairs, 3) {
        // A point over the plane is kept exactly when the cover scalar
        // matches the square of the fiber eigenvalue for every carrier.
        let allow = reps.iter().zip(&tuple).all(|(r, lam)| r.s0 == lam * lam);
        match basis.len() {
            3 => {
                if allow {
                    return Ok(LocusParts::full());
                }
                if certify_smooth_hypersurface(&drop_first_var(&q4), &[1, 1, 1]) {
                    parts.push_curve(
                        CurveTag::BranchQuartic,
                        "branch quartic of the double cover".into(),
                    );
                } else {
                    return Err(FixError::Unsupported(
                        "branch quartic not certified smooth".into(),
                    ));
                }
            }
            2 => {
                let p0 = embed_after_zero(&basis[0]);
                let p1 = embed_after_zero(&basis[1]);
                let f = q4.restrict_line(&p0, &p1);
                if f.is_zero() {
                    return Err(FixError::Degenerate(
                        "branch quartic contains a fixed line".into(),
                    ));
                }
                if allow {
                    if f.is_squarefree() {
                        parts.push_curve(
                            CurveTag::EllipticDoubleCover,
                            "double cover of a fixed line branched at four points".into(),
                        );
                    } else {
                        return Err(FixError::Unsupported(
                            "double cover branch divisor is not reduced".into(),
                        ));
                    }
                } else {
                    match f.roots() {
                        Ok(roots) => {
                            for r in roots {
                                parts.push_point(line_point(
                                    &p0,
                                    &p1,
                                    &r,
                                    surface.weights(),
                                )?);
                            }
                        }
                        Err(RootError::FieldEscape { .. }) => parts.push_unresolved(
                            f.distinct_root_count(),
                            "branch points over a fixed line of the double cover".into(),
                        ),
                    }
                }
            }
            1 => {
                let amb = embed_after_zero(&basis[0]);
                let q = q4.eval(&amb);
                if q.is_zero() {
                    parts.push_point(point_from_cyc(&amb, surface.weights())?);
                } else if allow {
                    let r = sqrt_ext(&q);
                    for x0 in [r.clone(), r.neg()] {
                        let mut v = vec![x0];
                        v.extend(ext_coords(&basis[0]));
                        parts.push_point(SurfacePoint::coords(v, surface.weights())?);
                    }
                }
            }
            _ => unreachable!("three-variable decomposition"),
        }
    }
    Ok(parts)
}

/// Sextic-model carrier normalized so that the base matrix has finite
/// order, with the two cover scalars adjusted by their weights.
pub(crate) struct Dp1Rep {
    m0: CycMat,
    ord: u32,
    s2: CycNum,
    s3: CycNum,
}

pub(crate) fn dp1_rep(w: &WeightedDp1Aut) -> Result<Dp1Rep, FixError> {
    let (m0, ord) = finite_matrix_rep(w.matrix())?;
    let alpha = rescale_ratio(&m0, w.matrix());
    let a2 = &alpha * &alpha;
    Ok(Dp1Rep {
        m0,
        ord,
        s2: &a2 * w.scalar2(),
        s3: &(&a2 * &alpha) * w.scalar3(),
    })
}

/// Extracts the binary forms of the model
/// `x3^2 + x2^3 + F4(x0, x1) x2 + F6(x0, x1) = 0`.
fn sextic_coefficients(surface: &Surface) -> Result<(MPoly, MPoly), FixError> {
    let eq = &surface.equations()[0];
    let mut f4 = MPoly::zero(4);
    let mut f6 = MPoly::zero(4);
    for (e, c) in eq.terms() {
        if (e[2], e[3]) == (0, 2) || (e[2], e[3]) == (3, 0) {
            if e[0] == 0 && e[1] == 0 && c.is_one() {
                continue;
            }
            return Err(FixError::Degenerate(
                "sextic model not in standard form".into(),
            ));
        }
        match (e[2], e[3]) {
            (1, 0) => f4 = f4.add(&MPoly::term(4, &[e[0], e[1], 0, 0], c.clone())),
            (0, 0) => f6 = f6.add(&MPoly::term(4, &[e[0], e[1], 0, 0], c.clone())),
            _ => {
                return Err(FixError::Degenerate(
                    "sextic model not in standard form".into(),
                ))
            }
        }
    }
    Ok((f4, f6))
}

fn drop_var(eq: &MPoly, keep: [usize; 3]) -> MPoly {
    let dropped = (0..4).find(|i| !keep.contains(i)).expect("one dropped");
    let mut out = MPoly::zero(3);
    for (e, c) in eq.terms() {
        if e[dropped] != 0 {
            continue;
        }
        out = out.add(&MPoly::term(
            3,
            &[e[keep[0]], e[keep[1]], e[keep[2]]],
            c.clone(),
        ));
    }
    out
}

fn pad2(v: &[CycNum]) -> Vec<CycNum> {
    vec![v[0].clone(), v[1].clone(), CycNum::zero(), CycNum::zero()]
}

pub(crate) fn dp1_parts(surface: &Surface, reps: &[Dp1Rep]) -> Result<LocusParts, FixError> {
    let (f4, f6) = sextic_coefficients(surface)?;
    let eq = &surface.equations()[0];
    let pairs: Vec<(CycMat, u32)> = reps.iter().map(|r| (r.m0.clone(), r.ord)).collect();
    let mut parts = LocusParts::empty();
    // The anticanonical base point is fixed exactly when the scalar
    // pair lies on the cuspidal locus s3^2 = s2^3; the condition is
    // invariant under the weighted rescaling.
    let base_fixed = reps
        .iter()
        .all(|r| &r.s3 * &r.s3 == &(&r.s2 * &r.s2) * &r.s2);
    let mut base_on_curve = false;
    for (tuple, basis) in joint_eigenspaces(&pairs, 2) {
        let x2_allowed = reps.iter().zip(&tuple).all(|(r, lam)| r.s2 == lam * lam);
        let x3_allowed = reps
            .iter()
            .zip(&tuple)
            .all(|(r, lam)| r.s3 == &(lam * lam) * lam);
        match basis.len() {
            2 => {
                if x2_allowed && x3_allowed {
                    return Ok(LocusParts::full());
                }
                if x2_allowed {
                    if certify_smooth_hypersurface(&drop_var(eq, [0, 1, 2]), &[1, 1, 2]) {
                        parts.push_curve(
                            CurveTag::TrigonalBranch,
                            "trigonal curve x3 = 0 of the triple-cover scalar".into(),
                        );
                    } else {
                        return Err(FixError::Unsupported(
                            "trigonal branch curve not certified smooth".into(),
                        ));
                    }
                } else if x3_allowed {
                    let sextic = f6.restrict_line(
                        &pad2(&[CycNum::one(), CycNum::zero()]),
                        &pad2(&[CycNum::zero(), CycNum::one()]),
                    );
                    if !sextic.is_squarefree() {
                        return Err(FixError::Unsupported(
                            "hyperelliptic branch divisor is not reduced".into(),
                        ));
                    }
                    parts.push_curve(
                        CurveTag::HyperellipticBranch,
                        "genus-two curve x2 = 0 of the double-cover scalar".into(),
                    );
                } else {
                    if f6.is_zero() {
                        return Err(FixError::Degenerate(
                            "sextic form vanishes identically".into(),
                        ));
                    }
                    let sextic = f6.restrict_line(
                        &pad2(&[CycNum::one(), CycNum::zero()]),
                        &pad2(&[CycNum::zero(), CycNum::one()]),
                    );
                    match sextic.roots() {
                        Ok(roots) => {
                            for r in roots {
                                let v = vec![
                                    r.s.clone(),
                                    r.t.clone(),
                                    ExtElem::from_int(0),
                                    ExtElem::from_int(0),
                                ];
                                parts.push_point(SurfacePoint::coords(
                                    v,
                                    surface.weights(),
                                )?);
                            }
                        }
                        Err(RootError::FieldEscape { .. }) => parts.push_unresolved(
                            sextic.distinct_root_count(),
                            "zeros of the sextic form on the fixed section".into(),
                        ),
                    }
                }
            }
            1 => {
                let v = &basis[0];
                let f4v = f4.eval(&pad2(v));
                let f6v = f6.eval(&pad2(v));
                if x2_allowed && x3_allowed {
                    let cubic = UPoly::from_coeffs(vec![
                        f6v,
                        f4v,
                        CycNum::zero(),
                        CycNum::one(),
                    ]);
                    if !cubic.is_squarefree() {
                        return Err(FixError::Unsupported(
                            "pointwise-fixed anticanonical fiber is singular".into(),
                        ));
                    }
                    parts.push_curve(
                        CurveTag::PlaneCubic,
                        format!("anticanonical fiber over ({} : {})", v[0], v[1]),
                    );
                    base_on_curve = true;
                } else if x2_allowed {
                    let cubic = BinForm::new(
                        UPoly::from_coeffs(vec![f6v, f4v, CycNum::zero(), CycNum::one()]),
                        3,
                    );
                    match cubic.roots() {
                        Ok(roots) => {
                            for r in roots {
                                let x2 = r.t.mul(&r.s.inv().expect("affine cubic root"));
                                let w = vec![
                                    ExtElem::from_cyc(v[0].clone()),
                                    ExtElem::from_cyc(v[1].clone()),
                                    x2,
                                    ExtElem::from_int(0),
                                ];
                                parts.push_point(SurfacePoint::coords(
                                    w,
                                    surface.weights(),
                                )?);
                            }
                        }
                        Err(RootError::FieldEscape { .. }) => parts.push_unresolved(
                            cubic.distinct_root_count(),
                            "triple-cover sections over a fixed base point".into(),
                        ),
                    }
                } else if x3_allowed {
                    if f6v.is_zero() {
                        parts.push_point(point_from_cyc(&pad2(v), surface.weights())?);
                    } else {
                        let r = sqrt_ext(&-&f6v);
                        for x3 in [r.clone(), r.neg()] {
                            let w = vec![
                                ExtElem::from_cyc(v[0].clone()),
                                ExtElem::from_cyc(v[1].clone()),
                                ExtElem::from_int(0),
                                x3,
                            ];
                            parts.push_point(SurfacePoint::coords(w, surface.weights())?);
                        }
                    }
                } else if f6v.is_zero() {
                    parts.push_point(point_from_cyc(&pad2(v), surface.weights())?);
                }
            }
            _ => unreachable!("two-variable decomposition"),
        }
    }
    if base_fixed && !base_on_curve {
        let base = vec![
            ExtElem::from_int(0),
            ExtElem::from_int(0),
            ExtElem::from_int(-1),
            ExtElem::from_int(-1),
        ];
        parts.push_point(SurfacePoint::coords(base, surface.weights())?);
    }
    Ok(parts)
}
