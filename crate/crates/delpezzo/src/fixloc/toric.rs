//! Fixed loci of monomial maps on the hexagon model.
//!
//! Torus-side fixed points come from a Smith-reduced exponent system,
//! reflection-type maps additionally fix coset curves of
//! one-dimensional subtori, and the boundary strata are handled
//! through the ray permutation together with the divisor coordinate
//! `u = chi^{rot90(ray)}`.

use crate::autgrp::MonomialAut;
use crate::cyclo::{nth_root_unit_scalar, CycNum};
use crate::surfaces::{hexagon_ray_permutation, hexagon_rays};

use super::point::{char_value, rot90, SurfacePoint};
use super::{CurveTag, FixError, LocusParts};

type M2 = [[i64; 2]; 2];

const ID2: M2 = [[1, 0], [0, 1]];

fn mul2(a: M2, b: M2) -> M2 {
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

/// Smith reduction of an integer two-by-two matrix: returns unimodular
/// `(u, d, v)` with `u a v = d` diagonal.
pub(crate) fn snf2(a: M2) -> (M2, M2, M2) {
    let mut d = a;
    let mut u = ID2;
    let mut v = ID2;
    loop {
        while d[1][0] != 0 {
            if d[0][0] == 0 {
                d.swap(0, 1);
                u.swap(0, 1);
                continue;
            }
            let q = d[1][0].div_euclid(d[0][0]);
            for j in 0..2 {
                d[1][j] -= q * d[0][j];
                u[1][j] -= q * u[0][j];
            }
            if d[1][0] != 0 {
                d.swap(0, 1);
                u.swap(0, 1);
            }
        }
        if d[0][1] == 0 {
            break;
        }
        while d[0][1] != 0 {
            if d[0][0] == 0 {
                for i in 0..2 {
                    d[i].swap(0, 1);
                    v[i].swap(0, 1);
                }
                continue;
            }
            let q = d[0][1].div_euclid(d[0][0]);
            for i in 0..2 {
                d[i][1] -= q * d[i][0];
                v[i][1] -= q * v[i][0];
            }
            if d[0][1] != 0 {
                for i in 0..2 {
                    d[i].swap(0, 1);
                    v[i].swap(0, 1);
                }
            }
        }
        if d[1][0] == 0 {
            break;
        }
    }
    debug_assert_eq!(mul2(mul2(u, a), v), d);
    (u, d, v)
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// One component of a fixed locus on the hexagon model.
#[derive(Clone, Debug)]
pub(crate) enum TComp {
    /// The boundary divisor over the given ray, pointwise fixed.
    BoundaryCurve(usize),
    /// The closure of a coset `{chi^a = xi}` of a one-dimensional
    /// subtorus; `a` is primitive with the sign normalized.
    CosetCurve { a: [i64; 2], xi: CycNum },
    /// An isolated point of the open torus.
    TorusPt(CycNum, CycNum),
    /// An isolated point on the boundary divisor over `ray`.
    BoundaryPt { ray: usize, u: CycNum },
    /// A torus-fixed corner point between rays `ray` and `ray + 1`.
    Corner(usize),
}

pub(crate) enum ToricLocus {
    Full,
    Set(Vec<TComp>),
}

/// All solutions of `x^{a00} y^{a01} = q0`, `x^{a10} y^{a11} = q1` in
/// the torus, for a nondegenerate exponent matrix.  The count always
/// equals `|det a|`.
fn torus_solutions(a: M2, q0: &CycNum, q1: &CycNum) -> Result<Vec<TComp>, FixError> {
    let (u, d, v) = snf2(a);
    let r0 = &q0.pow(u[0][0]) * &q1.pow(u[0][1]);
    let r1 = &q0.pow(u[1][0]) * &q1.pow(u[1][1]);
    let w0s = unit_roots(&r0, d[0][0])?;
    let w1s = unit_roots(&r1, d[1][1])?;
    let mut out = Vec::new();
    for w0 in &w0s {
        for w1 in &w1s {
            let x = &w0.pow(v[0][0]) * &w1.pow(v[0][1]);
            let y = &w0.pow(v[1][0]) * &w1.pow(v[1][1]);
            out.push(TComp::TorusPt(x, y));
        }
    }
    Ok(out)
}

/// All solutions of `w^d = rhs` for nonzero integer `d`, as exact
/// cyclotomic numbers.
fn unit_roots(rhs: &CycNum, d: i64) -> Result<Vec<CycNum>, FixError> {
    assert_ne!(d, 0);
    let k = d.unsigned_abs() as u32;
    let target = if d < 0 { rhs.inv()? } else { rhs.clone() };
    let base = nth_root_unit_scalar(&target, k)?;
    let mut out = Vec::with_capacity(k as usize);
    for j in 0..k {
        out.push(&base * &CycNum::zeta_pow(k, i64::from(j))?);
    }
    Ok(out)
}

/// Endpoints of the closure of the coset curve `{chi^a = xi}`: the two
/// limits along the kernel direction `rot90(a)`, each landing either on
/// a boundary divisor (when the direction is a ray) or at a corner.
fn coset_endpoints(a: [i64; 2], xi: &CycNum) -> Result<Vec<TComp>, FixError> {
    let rays = hexagon_rays();
    let k = rot90(a);
    let mut out = Vec::new();
    for dir in [k, [-k[0], -k[1]]] {
        if let Some(r) = rays.iter().position(|&rr| rr == dir) {
            let w = rot90(rays[r]);
            let u = if a == w {
                xi.clone()
            } else if a == [-w[0], -w[1]] {
                xi.inv()?
            } else {
                return Err(FixError::Unsupported(
                    "coset direction parallel to a ray with mismatched character".into(),
                ));
            };
            out.push(TComp::BoundaryPt { ray: r, u });
        } else {
            let mut corner = None;
            for i in 0..6 {
                let r1 = rays[i];
                let r2 = rays[(i + 1) % 6];
                let det = r1[0] * r2[1] - r1[1] * r2[0];
                let alpha = dir[0] * r2[1] - dir[1] * r2[0];
                let beta = r1[0] * dir[1] - r1[1] * dir[0];
                if det != 0 && alpha * det > 0 && beta * det > 0 {
                    corner = Some(i);
                    break;
                }
            }
            let i = corner.ok_or_else(|| {
                FixError::Unsupported("coset direction not interior to any cone".into())
            })?;
            out.push(TComp::Corner(i));
        }
    }
    Ok(out)
}

fn points_match(a: &TComp, b: &TComp) -> bool {
    match (a, b) {
        (TComp::TorusPt(x1, y1), TComp::TorusPt(x2, y2)) => x1 == x2 && y1 == y2,
        (TComp::BoundaryPt { ray: r1, u: u1 }, TComp::BoundaryPt { ray: r2, u: u2 }) => {
            r1 == r2 && u1 == u2
        }
        (TComp::Corner(i), TComp::Corner(j)) => i == j,
        _ => false,
    }
}

fn curves_match(a: &TComp, b: &TComp) -> Result<bool, FixError> {
    Ok(match (a, b) {
        (TComp::BoundaryCurve(i), TComp::BoundaryCurve(j)) => i == j,
        (TComp::CosetCurve { a: a1, xi: x1 }, TComp::CosetCurve { a: a2, xi: x2 }) => {
            a1 == a2 && x1 == x2
        }
        _ => false,
    })
}

fn point_on_curve(p: &TComp, c: &TComp) -> Result<bool, FixError> {
    Ok(match (p, c) {
        (TComp::TorusPt(x, y), TComp::CosetCurve { a, xi }) => {
            &(&x.pow(a[0]) * &y.pow(a[1])) == xi
        }
        (TComp::TorusPt(..), TComp::BoundaryCurve(_)) => false,
        (TComp::BoundaryPt { ray, .. }, TComp::BoundaryCurve(r)) => ray == r,
        (TComp::Corner(i), TComp::BoundaryCurve(r)) => *r == *i || *r == (*i + 1) % 6,
        (pt, TComp::CosetCurve { a, xi }) => {
            coset_endpoints(*a, xi)?.iter().any(|e| points_match(pt, e))
        }
        _ => false,
    })
}

/// Fixed locus of a single fan-preserving monomial map.
pub(crate) fn toric_components(mo: &MonomialAut) -> Result<ToricLocus, FixError> {
    let m = mo.exponent_matrix();
    let (s, t) = mo.scalars();
    let perm = hexagon_ray_permutation(&m).ok_or_else(|| {
        FixError::Unsupported("exponent matrix does not preserve the hexagon fan".into())
    })?;
    let rays = hexagon_rays();
    if m == ID2 {
        if s.is_one() && t.is_one() {
            return Ok(ToricLocus::Full);
        }
        // A torus translation: boundary divisors with trivial character
        // value are pointwise fixed, every corner is fixed, and the
        // corners not absorbed into a fixed divisor stay isolated.
        let mut comps = Vec::new();
        let mut fixed_ray = [false; 6];
        for (i, r) in rays.iter().enumerate() {
            if char_value(s, t, rot90(*r)).is_one() {
                fixed_ray[i] = true;
                comps.push(TComp::BoundaryCurve(i));
            }
        }
        for i in 0..6 {
            let j = (i + 1) % 6;
            if fixed_ray[i] && fixed_ray[j] {
                return Err(FixError::Unsupported(
                    "adjacent boundary divisors fixed by a nontrivial translation".into(),
                ));
            }
            if !fixed_ray[i] && !fixed_ray[j] {
                comps.push(TComp::Corner(i));
            }
        }
        return Ok(ToricLocus::Set(comps));
    }
    let am = [[m[0][0] - 1, m[0][1]], [m[1][0], m[1][1] - 1]];
    let det = am[0][0] * am[1][1] - am[0][1] * am[1][0];
    let q0 = s.inv()?;
    let q1 = t.inv()?;
    if det != 0 {
        // No ray can be fixed here: a fixed ray would force the
        // eigenvalue one on the exponent matrix.
        let comps = torus_solutions(am, &q0, &q1)?;
        debug_assert_eq!(comps.len(), det.unsigned_abs() as usize);
        return Ok(ToricLocus::Set(comps));
    }
    // Reflection type: the rows of m - 1 are integer multiples of a
    // primitive direction a, and the fixed-point conditions collapse to
    // one character equation along a.
    let (dir, mults) = parallel_rows(am)?;
    let (g, alpha, beta) = egcd(mults[0], mults[1]);
    let mut comps: Vec<TComp> = Vec::new();
    if g != 0 {
        let lhs = q0.pow(mults[1] / g);
        let rhs = q1.pow(mults[0] / g);
        if lhs == rhs {
            let val = &q0.pow(alpha) * &q1.pow(beta);
            for xi in unit_roots(&val, g)? {
                comps.push(TComp::CosetCurve { a: dir, xi });
            }
        }
    }
    // Orientation-reversing fixed rays carry two square-root points of
    // the divisor coordinate each.
    let mut pts: Vec<TComp> = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        if perm[i] != i {
            continue;
        }
        let w = rot90(*r);
        let mtw = [
            m[0][0] * w[0] + m[1][0] * w[1],
            m[0][1] * w[0] + m[1][1] * w[1],
        ];
        if mtw == w {
            return Err(FixError::Unsupported(
                "unipotent exponent matrix fixing a ray".into(),
            ));
        }
        debug_assert_eq!(mtw, [-w[0], -w[1]]);
        let c = char_value(s, t, w);
        let base = nth_root_unit_scalar(&c, 2)?;
        pts.push(TComp::BoundaryPt {
            ray: i,
            u: base.clone(),
        });
        pts.push(TComp::BoundaryPt {
            ray: i,
            u: -&base,
        });
    }
    for i in 0..6 {
        let j = (i + 1) % 6;
        if perm[i] == j && perm[j] == i {
            pts.push(TComp::Corner(i));
        }
    }
    // Points swallowed by a fixed curve are not isolated.
    let mut kept = Vec::new();
    for p in pts {
        let mut absorbed = false;
        for c in &comps {
            if point_on_curve(&p, c)? {
                absorbed = true;
                break;
            }
        }
        if !absorbed {
            kept.push(p);
        }
    }
    comps.extend(kept);
    Ok(ToricLocus::Set(comps))
}

/// Splits the rows of a rank-one integer matrix as multiples of a
/// primitive direction with a canonical sign.
fn parallel_rows(am: M2) -> Result<([i64; 2], [i64; 2]), FixError> {
    let rows = [am[0], am[1]];
    let nz = rows
        .iter()
        .find(|r| **r != [0, 0])
        .ok_or_else(|| FixError::Unsupported("identity exponent matrix".into()))?;
    let g = egcd(nz[0], nz[1]).0;
    let mut a = [nz[0] / g, nz[1] / g];
    if a[0] < 0 || (a[0] == 0 && a[1] < 0) {
        a = [-a[0], -a[1]];
    }
    let mut mults = [0i64; 2];
    for (i, r) in rows.iter().enumerate() {
        let c = if a[0] != 0 { r[0] / a[0] } else { r[1] / a[1] };
        if [c * a[0], c * a[1]] != *r {
            return Err(FixError::Unsupported(
                "singular exponent system with independent rows".into(),
            ));
        }
        mults[i] = c;
    }
    Ok((a, mults))
}

fn comp_is_point(c: &TComp) -> bool {
    matches!(
        c,
        TComp::TorusPt(..) | TComp::BoundaryPt { .. } | TComp::Corner(_)
    )
}

fn comp_intersect(a: &TComp, b: &TComp) -> Result<Vec<TComp>, FixError> {
    if comp_is_point(a) {
        let hit = if comp_is_point(b) {
            points_match(a, b)
        } else {
            point_on_curve(a, b)?
        };
        return Ok(if hit { vec![a.clone()] } else { vec![] });
    }
    if comp_is_point(b) {
        return Ok(if point_on_curve(b, a)? {
            vec![b.clone()]
        } else {
            vec![]
        });
    }
    if curves_match(a, b)? {
        return Ok(vec![a.clone()]);
    }
    Ok(match (a, b) {
        (TComp::BoundaryCurve(i), TComp::BoundaryCurve(j)) => {
            if (*i + 1) % 6 == *j {
                vec![TComp::Corner(*i)]
            } else if (*j + 1) % 6 == *i {
                vec![TComp::Corner(*j)]
            } else {
                vec![]
            }
        }
        (TComp::BoundaryCurve(r), TComp::CosetCurve { a, xi })
        | (TComp::CosetCurve { a, xi }, TComp::BoundaryCurve(r)) => {
            let mut out = Vec::new();
            for e in coset_endpoints(*a, xi)? {
                if point_on_curve(&e, &TComp::BoundaryCurve(*r))? {
                    out.push(e);
                }
            }
            out
        }
        (TComp::CosetCurve { a: a1, xi: x1 }, TComp::CosetCurve { a: a2, xi: x2 }) => {
            let mut out = Vec::new();
            if a1 == a2 {
                // Parallel distinct cosets only share corner limits.
                for e in coset_endpoints(*a1, x1)? {
                    if matches!(e, TComp::Corner(_)) {
                        out.push(e);
                    }
                }
            } else {
                let sys = [[a1[0], a1[1]], [a2[0], a2[1]]];
                out.extend(torus_solutions(sys, x1, x2)?);
                for e1 in coset_endpoints(*a1, x1)? {
                    for e2 in coset_endpoints(*a2, x2)? {
                        if points_match(&e1, &e2) {
                            out.push(e1.clone());
                        }
                    }
                }
            }
            out
        }
        _ => unreachable!("point cases are handled above"),
    })
}

fn dedup(comps: Vec<TComp>) -> Result<Vec<TComp>, FixError> {
    let mut curves: Vec<TComp> = Vec::new();
    for c in &comps {
        if !comp_is_point(c) {
            let mut seen = false;
            for k in &curves {
                if curves_match(k, c)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                curves.push(c.clone());
            }
        }
    }
    let mut out = curves.clone();
    for c in comps {
        if comp_is_point(&c) {
            let mut absorbed = false;
            for k in &curves {
                if point_on_curve(&c, k)? {
                    absorbed = true;
                    break;
                }
            }
            if !absorbed && !out.iter().any(|k| points_match(k, &c)) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub(crate) fn intersect_toric(a: ToricLocus, b: &ToricLocus) -> Result<ToricLocus, FixError> {
    Ok(match (a, b) {
        (ToricLocus::Full, ToricLocus::Full) => ToricLocus::Full,
        (ToricLocus::Full, ToricLocus::Set(s)) => ToricLocus::Set(s.clone()),
        (s @ ToricLocus::Set(_), ToricLocus::Full) => s,
        (ToricLocus::Set(u), ToricLocus::Set(v)) => {
            let mut out = Vec::new();
            for c1 in &u {
                for c2 in v {
                    out.extend(comp_intersect(c1, c2)?);
                }
            }
            ToricLocus::Set(dedup(out)?)
        }
    })
}

pub(crate) fn toric_parts(locus: ToricLocus) -> Result<LocusParts, FixError> {
    match locus {
        ToricLocus::Full => Ok(LocusParts::full()),
        ToricLocus::Set(comps) => {
            let mut parts = LocusParts::empty();
            for c in dedup(comps)? {
                match c {
                    TComp::BoundaryCurve(i) => parts.push_curve(
                        CurveTag::SmoothRational,
                        format!("boundary divisor over ray {i}"),
                    ),
                    TComp::CosetCurve { a, xi } => parts.push_curve(
                        CurveTag::SmoothRational,
                        format!("subtorus coset x^{} y^{} = {}", a[0], a[1], xi),
                    ),
                    TComp::TorusPt(x, y) => parts.push_point(SurfacePoint::Torus(x, y)),
                    TComp::BoundaryPt { ray, u } => {
                        parts.push_point(SurfacePoint::Boundary { ray, u })
                    }
                    TComp::Corner(i) => parts.push_point(SurfacePoint::Corner { ray: i }),
                }
            }
            Ok(parts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn smith_reduction_diagonalizes_random_matrices() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..200 {
            let a: M2 = [
                [rng.gen_range(-9..=9), rng.gen_range(-9..=9)],
                [rng.gen_range(-9..=9), rng.gen_range(-9..=9)],
            ];
            let (u, d, v) = snf2(a);
            assert_eq!(mul2(mul2(u, a), v), d);
            assert_eq!(d[0][1], 0);
            assert_eq!(d[1][0], 0);
            let du = u[0][0] * u[1][1] - u[0][1] * u[1][0];
            let dv = v[0][0] * v[1][1] - v[0][1] * v[1][0];
            assert_eq!(du.abs(), 1);
            assert_eq!(dv.abs(), 1);
        }
    }

    #[test]
    fn extended_gcd_solves_bezout() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, x, y) = egcd(a, b);
                assert!(g > 0);
                assert_eq!(a % g, 0);
                assert_eq!(b % g, 0);
                assert_eq!(a * x + b * y, g);
            }
        }
    }
}
