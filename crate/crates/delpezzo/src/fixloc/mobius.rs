//! Fixed loci on the smooth quadric `P1 x P1` via Moebius eigenvector
//! analysis, together with exact intersection of the resulting
//! component sets.

use crate::autgrp::QuadricAut;
use crate::cyclo::matrix::{CycMat, Field};
use crate::cyclo::{sqrt_cyc, CycNum, ExtElem, SqrtOutcome};
use crate::surfaces::upoly::{BinForm, UPoly};

use super::point::{mat_apply_ext, normalize_pair, SurfacePoint};
use super::{CurveTag, FixError, LocusParts};

/// Fixed points of a Moebius transformation on `P1`.
enum MobiusFix {
    /// The map is scalar and fixes the whole line.
    All,
    /// One or two fixed points in normalized coordinates.
    Pts(Vec<[ExtElem; 2]>),
}

fn is_scalar(m: &CycMat) -> bool {
    m.at(0, 1).is_zero() && m.at(1, 0).is_zero() && m.at(0, 0) == m.at(1, 1)
}

/// Eigen-directions of a two-by-two matrix, found through the
/// characteristic polynomial; the discriminant square root may land in
/// a quadratic extension.
fn mobius_fixed_points(m: &CycMat) -> Result<MobiusFix, FixError> {
    assert_eq!((m.rows, m.cols), (2, 2));
    if is_scalar(m) {
        return Ok(MobiusFix::All);
    }
    let a = m.at(0, 0);
    let b = m.at(0, 1);
    let d = m.at(1, 1);
    let tr = a + d;
    let det = m.det();
    let disc = &(&tr * &tr) - &(&det * &CycNum::from_int(4));
    let half = CycNum::from_ratio(1, 2);
    let mut eigenvalues: Vec<ExtElem> = Vec::new();
    match sqrt_cyc(&disc) {
        SqrtOutcome::Exact(r) => {
            if r.is_zero() {
                eigenvalues.push(ExtElem::from_cyc(&tr * &half));
            } else {
                eigenvalues.push(ExtElem::from_cyc(&(&tr + &r) * &half));
                eigenvalues.push(ExtElem::from_cyc(&(&tr - &r) * &half));
            }
        }
        SqrtOutcome::Radical { scale, radicand } => {
            let root = ExtElem::from_cyc(&scale * &half).mul(&ExtElem::sqrt_radicand(radicand));
            let base = ExtElem::from_cyc(&tr * &half);
            eigenvalues.push(base.add(&root));
            eigenvalues.push(base.sub(&root));
        }
    }
    let mut pts = Vec::new();
    for mu in &eigenvalues {
        let v = if !b.is_zero() {
            [
                ExtElem::from_cyc(b.clone()),
                mu.sub(&ExtElem::from_cyc(a.clone())),
            ]
        } else if !m.at(1, 0).is_zero() {
            [
                mu.sub(&ExtElem::from_cyc(d.clone())),
                ExtElem::from_cyc(m.at(1, 0).clone()),
            ]
        } else if mu == &ExtElem::from_cyc(a.clone()) {
            [ExtElem::from_int(1), ExtElem::from_int(0)]
        } else {
            [ExtElem::from_int(0), ExtElem::from_int(1)]
        };
        let v = normalize_pair(v)?;
        if !pts.contains(&v) {
            pts.push(v);
        }
    }
    Ok(MobiusFix::Pts(pts))
}

/// One component of a fixed locus on the quadric.
#[derive(Clone, Debug)]
pub(crate) enum QComp {
    /// The fiber `{x} x P1` over a fixed first coordinate.
    FiberX([ExtElem; 2]),
    /// The fiber `P1 x {y}` over a fixed second coordinate.
    FiberY([ExtElem; 2]),
    /// The graph `{(m t, t)}` of a Moebius map, a diagonal curve.
    Graph(CycMat),
    /// An isolated point.
    Point([ExtElem; 2], [ExtElem; 2]),
}

pub(crate) enum QuadricLocus {
    Full,
    Set(Vec<QComp>),
}

fn mats_proportional(m: &CycMat, n: &CycMat) -> bool {
    let mut pivot = None;
    for r in 0..2 {
        for c in 0..2 {
            if !n.at(r, c).is_zero() {
                pivot = Some((r, c));
            }
        }
    }
    let Some((pr, pc)) = pivot else {
        return false;
    };
    (0..2).all(|r| {
        (0..2).all(|c| &(m.at(r, c) * n.at(pr, pc)) == &(m.at(pr, pc) * n.at(r, c)))
    })
}

fn comp_eq(a: &QComp, b: &QComp) -> bool {
    match (a, b) {
        (QComp::FiberX(x), QComp::FiberX(y)) => x == y,
        (QComp::FiberY(x), QComp::FiberY(y)) => x == y,
        (QComp::Graph(m), QComp::Graph(n)) => mats_proportional(m, n),
        (QComp::Point(x1, y1), QComp::Point(x2, y2)) => x1 == x2 && y1 == y2,
        _ => false,
    }
}

fn cross_vanishes(a: &[ExtElem; 2], b: &[ExtElem]) -> bool {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0])).is_zero()
}

fn point_on(x: &[ExtElem; 2], y: &[ExtElem; 2], comp: &QComp) -> bool {
    match comp {
        QComp::FiberX(x0) => x == x0,
        QComp::FiberY(y0) => y == y0,
        QComp::Graph(m) => cross_vanishes(x, &mat_apply_ext(m, y)),
        QComp::Point(px, py) => x == px && y == py,
    }
}

/// Fixed locus of a single quadric automorphism as a component set.
pub(crate) fn quadric_components(q: &QuadricAut) -> Result<QuadricLocus, FixError> {
    if !q.swaps_factors() {
        let fa = mobius_fixed_points(q.factor_a())?;
        let fb = mobius_fixed_points(q.factor_b())?;
        Ok(match (fa, fb) {
            (MobiusFix::All, MobiusFix::All) => QuadricLocus::Full,
            (MobiusFix::All, MobiusFix::Pts(ys)) => {
                QuadricLocus::Set(ys.into_iter().map(QComp::FiberY).collect())
            }
            (MobiusFix::Pts(xs), MobiusFix::All) => {
                QuadricLocus::Set(xs.into_iter().map(QComp::FiberX).collect())
            }
            (MobiusFix::Pts(xs), MobiusFix::Pts(ys)) => {
                let mut comps = Vec::new();
                for x in &xs {
                    for y in &ys {
                        comps.push(QComp::Point(x.clone(), y.clone()));
                    }
                }
                QuadricLocus::Set(comps)
            }
        })
    } else {
        // A swap `(x, y) -> (a y, b x)` fixes (x, y) exactly when
        // y = b x and x is fixed by the composite a b.
        let ab = q.factor_a().matmul(q.factor_b());
        if is_scalar(&ab) {
            return Ok(QuadricLocus::Set(vec![QComp::Graph(q.factor_a().clone())]));
        }
        let MobiusFix::Pts(xs) = mobius_fixed_points(&ab)? else {
            unreachable!("scalar composites are handled above");
        };
        let mut comps = Vec::new();
        for x in xs {
            let y = normalize_pair(pair(mat_apply_ext(q.factor_b(), &x)))?;
            comps.push(QComp::Point(x, y));
        }
        Ok(QuadricLocus::Set(comps))
    }
}

fn pair(v: Vec<ExtElem>) -> [ExtElem; 2] {
    [v[0].clone(), v[1].clone()]
}

/// Intersection points of two distinct graph components, obtained from
/// the binary quadratic form `(m t) x (n t)`.
fn graph_graph(m: &CycMat, n: &CycMat) -> Result<Vec<QComp>, FixError> {
    let e = |r: usize, c: usize, mat: &CycMat| mat.at(r, c).clone();
    let c_ss = &(&e(0, 0, m) * &e(1, 0, n)) - &(&e(1, 0, m) * &e(0, 0, n));
    let c_st = &(&(&e(0, 0, m) * &e(1, 1, n)) + &(&e(0, 1, m) * &e(1, 0, n)))
        - &(&(&e(1, 0, m) * &e(0, 1, n)) + &(&e(1, 1, m) * &e(0, 0, n)));
    let c_tt = &(&e(0, 1, m) * &e(1, 1, n)) - &(&e(1, 1, m) * &e(0, 1, n));
    let form = BinForm::new(UPoly::from_coeffs(vec![c_ss, c_st, c_tt]), 2);
    if form.is_zero() {
        return Ok(vec![QComp::Graph(m.clone())]);
    }
    let mut out = Vec::new();
    for root in form.roots()? {
        let y = normalize_pair([root.s.clone(), root.t.clone()])?;
        let x = normalize_pair(pair(mat_apply_ext(m, &y)))?;
        out.push(QComp::Point(x, y));
    }
    Ok(out)
}

fn comp_intersect(a: &QComp, b: &QComp) -> Result<Vec<QComp>, FixError> {
    use QComp::*;
    if let Point(x, y) = a {
        return Ok(if point_on(x, y, b) {
            vec![a.clone()]
        } else {
            vec![]
        });
    }
    if let Point(x, y) = b {
        return Ok(if point_on(x, y, a) {
            vec![b.clone()]
        } else {
            vec![]
        });
    }
    Ok(match (a, b) {
        (FiberX(x1), FiberX(x2)) => {
            if x1 == x2 {
                vec![a.clone()]
            } else {
                vec![]
            }
        }
        (FiberY(y1), FiberY(y2)) => {
            if y1 == y2 {
                vec![a.clone()]
            } else {
                vec![]
            }
        }
        (FiberX(x), FiberY(y)) | (FiberY(y), FiberX(x)) => {
            vec![Point(x.clone(), y.clone())]
        }
        (FiberX(x), Graph(m)) | (Graph(m), FiberX(x)) => {
            let minv = m.inverse().expect("invertible Moebius matrix");
            let y = normalize_pair(pair(mat_apply_ext(&minv, x)))?;
            vec![Point(x.clone(), y)]
        }
        (FiberY(y), Graph(m)) | (Graph(m), FiberY(y)) => {
            let x = normalize_pair(pair(mat_apply_ext(m, y)))?;
            vec![Point(x, y.clone())]
        }
        (Graph(m), Graph(n)) => {
            if mats_proportional(m, n) {
                vec![a.clone()]
            } else {
                graph_graph(m, n)?
            }
        }
        _ => unreachable!("point cases are handled above"),
    })
}

/// Keeps curves unique and drops points lying on a kept curve.
fn dedup(comps: Vec<QComp>) -> Vec<QComp> {
    let mut curves: Vec<QComp> = Vec::new();
    for c in &comps {
        if !matches!(c, QComp::Point(..)) && !curves.iter().any(|k| comp_eq(k, c)) {
            curves.push(c.clone());
        }
    }
    let mut out = curves.clone();
    for c in comps {
        if let QComp::Point(x, y) = &c {
            if !curves.iter().any(|k| point_on(x, y, k))
                && !out.iter().any(|k| comp_eq(k, &c))
            {
                out.push(c);
            }
        }
    }
    out
}

pub(crate) fn intersect_quadric(
    a: QuadricLocus,
    b: &QuadricLocus,
) -> Result<QuadricLocus, FixError> {
    Ok(match (a, b) {
        (QuadricLocus::Full, QuadricLocus::Full) => QuadricLocus::Full,
        (QuadricLocus::Full, QuadricLocus::Set(s)) => QuadricLocus::Set(s.clone()),
        (s @ QuadricLocus::Set(_), QuadricLocus::Full) => s,
        (QuadricLocus::Set(u), QuadricLocus::Set(v)) => {
            let mut out = Vec::new();
            for c1 in &u {
                for c2 in v {
                    out.extend(comp_intersect(c1, c2)?);
                }
            }
            QuadricLocus::Set(dedup(out))
        }
    })
}

pub(crate) fn quadric_parts(locus: QuadricLocus) -> Result<LocusParts, FixError> {
    match locus {
        QuadricLocus::Full => Ok(LocusParts::full()),
        QuadricLocus::Set(comps) => {
            let mut parts = LocusParts::empty();
            for c in dedup(comps) {
                match c {
                    QComp::FiberX(x) => parts.push_curve(
                        CurveTag::SmoothRational,
                        format!("fiber ({} : {}) x P1", x[0], x[1]),
                    ),
                    QComp::FiberY(y) => parts.push_curve(
                        CurveTag::SmoothRational,
                        format!("fiber P1 x ({} : {})", y[0], y[1]),
                    ),
                    QComp::Graph(m) => parts.push_curve(
                        CurveTag::SmoothRational,
                        format!(
                            "graph of the Moebius map [{}, {}; {}, {}]",
                            m.at(0, 0),
                            m.at(0, 1),
                            m.at(1, 0),
                            m.at(1, 1)
                        ),
                    ),
                    QComp::Point(x, y) => parts.push_point(SurfacePoint::Split { x, y }),
                }
            }
            Ok(parts)
        }
    }
}
