//! Closed points of the six surface models and the induced action of
//! carrier automorphisms on them.

use crate::autgrp::{MonomialAut, SurfaceAut};
use crate::cyclo::matrix::{CycMat, Field};
use crate::cyclo::{CycNum, ExtElem};
use crate::surfaces::{hexagon_ray_permutation, hexagon_rays, Family, Surface};

use super::FixError;

/// A closed point of a surface model in normalized coordinates.
///
/// Coordinates live in at most a double quadratic extension of a
/// cyclotomic field and equality is semantic.  Points are normalized on
/// construction so that structural equality is point equality: the
/// first nonvanishing weight-one coordinate is scaled to one (higher
/// weights pick up the matching power of the scale), a quadric point
/// normalizes each factor separately, and the hexagon model stores
/// exact cyclotomic scalars per torus-orbit stratum.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfacePoint {
    /// Homogeneous coordinates on a linear or weighted model.
    Coords(Vec<ExtElem>),
    /// A point of the quadric, one normalized coordinate pair per factor.
    Split {
        x: [ExtElem; 2],
        y: [ExtElem; 2],
    },
    /// A point of the open torus of the hexagon model.
    Torus(CycNum, CycNum),
    /// An interior point of the boundary divisor over ray `ray` of the
    /// hexagon fan, recorded by the value of the character orthogonal
    /// to the ray.
    Boundary { ray: usize, u: CycNum },
    /// The torus-fixed point of the cone spanned by rays `ray` and
    /// `ray + 1` of the hexagon fan.
    Corner { ray: usize },
}

impl SurfacePoint {
    /// Builds a normalized point from homogeneous coordinates against
    /// the given coordinate weights.
    pub fn coords(v: Vec<ExtElem>, weights: &[usize]) -> Result<Self, FixError> {
        Ok(SurfacePoint::Coords(normalize_weighted(v, weights)?))
    }

    /// Builds a normalized point of the quadric from a coordinate pair
    /// on each factor.
    pub fn split(x: [ExtElem; 2], y: [ExtElem; 2]) -> Result<Self, FixError> {
        Ok(SurfacePoint::Split {
            x: normalize_pair(x)?,
            y: normalize_pair(y)?,
        })
    }

    /// Checks membership on the surface model: equations for the
    /// equational families, stratum bookkeeping for the toric ones.
    pub fn on_surface(&self, surface: &Surface) -> bool {
        match self {
            SurfacePoint::Coords(c) => {
                c.len() == surface.nvars()
                    && surface
                        .equations()
                        .iter()
                        .all(|eq| eq.eval_ext(c).is_zero())
            }
            SurfacePoint::Split { .. } => surface.family() == Family::Quadric,
            SurfacePoint::Torus(x, y) => {
                surface.family() == Family::Dp6 && !x.is_zero() && !y.is_zero()
            }
            SurfacePoint::Boundary { ray, u } => {
                surface.family() == Family::Dp6 && *ray < 6 && !u.is_zero()
            }
            SurfacePoint::Corner { ray } => surface.family() == Family::Dp6 && *ray < 6,
        }
    }
}

/// Scales homogeneous coordinates into the canonical representative.
///
/// For plain projective space every weight is one and the first
/// nonzero coordinate becomes one.  For the weighted models the scale
/// is chosen from a weight-one coordinate when possible; the remaining
/// locus consists of single torus-fixed strata that have a unique
/// canonical form.
pub(crate) fn normalize_weighted(
    mut v: Vec<ExtElem>,
    weights: &[usize],
) -> Result<Vec<ExtElem>, FixError> {
    assert_eq!(v.len(), weights.len());
    if v.iter().all(Field::is_zero) {
        return Err(FixError::Degenerate(
            "all homogeneous coordinates vanish".into(),
        ));
    }
    if let Some(p) = (0..v.len()).find(|&i| weights[i] == 1 && !v[i].is_zero()) {
        let t = v[p].inv().expect("nonzero pivot");
        for (i, w) in weights.iter().enumerate() {
            v[i] = v[i].mul(&ext_pow(&t, *w));
        }
        return Ok(v);
    }
    match weights {
        [2, 1, 1, 1] => {
            // Only the weight-two vertex survives.
            Ok(vec![
                ExtElem::from_int(1),
                ExtElem::from_int(0),
                ExtElem::from_int(0),
                ExtElem::from_int(0),
            ])
        }
        [1, 1, 2, 3] => {
            if v[2].is_zero() {
                return Ok(vec![
                    ExtElem::from_int(0),
                    ExtElem::from_int(0),
                    ExtElem::from_int(0),
                    ExtElem::from_int(1),
                ]);
            }
            if v[3].is_zero() {
                return Ok(vec![
                    ExtElem::from_int(0),
                    ExtElem::from_int(0),
                    ExtElem::from_int(1),
                    ExtElem::from_int(0),
                ]);
            }
            // Scaling by t = x2/x3 avoids introducing radicals: both
            // weighted coordinates become x2^3 / x3^2.
            let c = v[2]
                .mul(&v[2])
                .mul(&v[2])
                .mul(&ext_pow(&v[3].inv().expect("nonzero"), 2));
            Ok(vec![
                ExtElem::from_int(0),
                ExtElem::from_int(0),
                c.clone(),
                c,
            ])
        }
        _ => Err(FixError::Unsupported(format!(
            "normalization for weights {weights:?}"
        ))),
    }
}

/// Normalizes a projective coordinate pair to `(1 : t)` or `(0 : 1)`.
pub(crate) fn normalize_pair(p: [ExtElem; 2]) -> Result<[ExtElem; 2], FixError> {
    if !p[0].is_zero() {
        let t = p[0].inv().expect("nonzero");
        Ok([ExtElem::from_int(1), p[1].mul(&t)])
    } else if !p[1].is_zero() {
        Ok([ExtElem::from_int(0), ExtElem::from_int(1)])
    } else {
        Err(FixError::Degenerate("zero coordinate pair".into()))
    }
}

pub(crate) fn ext_pow(e: &ExtElem, k: usize) -> ExtElem {
    let mut acc = ExtElem::from_int(1);
    for _ in 0..k {
        acc = acc.mul(e);
    }
    acc
}

/// Applies a matrix with cyclotomic entries to extension-field
/// coordinates.
pub(crate) fn mat_apply_ext(m: &CycMat, v: &[ExtElem]) -> Vec<ExtElem> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|r| {
            let mut acc = ExtElem::from_int(0);
            for c in 0..m.cols {
                if !m.at(r, c).is_zero() && !v[c].is_zero() {
                    acc = acc.add(&ExtElem::from_cyc(m.at(r, c).clone()).mul(&v[c]));
                }
            }
            acc
        })
        .collect()
}

fn pair_apply(m: &CycMat, v: &[ExtElem; 2]) -> [ExtElem; 2] {
    let out = mat_apply_ext(m, v);
    [out[0].clone(), out[1].clone()]
}

/// Rotates a lattice vector by ninety degrees; for a ray of the
/// hexagon fan this produces the character that is constant along the
/// one-parameter subgroup limiting into the ray's divisor, hence a
/// coordinate on that divisor.
pub(crate) fn rot90(r: [i64; 2]) -> [i64; 2] {
    [-r[1], r[0]]
}

/// Evaluates the scalar part of a monomial map on a character.
pub(crate) fn char_value(s: &CycNum, t: &CycNum, w: [i64; 2]) -> CycNum {
    &s.pow(w[0]) * &t.pow(w[1])
}

/// Images of the boundary strata of the hexagon model under a
/// fan-preserving monomial map.
fn boundary_image(mo: &MonomialAut, ray: usize, u: &CycNum) -> Result<SurfacePoint, FixError> {
    let m = mo.exponent_matrix();
    let perm = hexagon_ray_permutation(&m).ok_or_else(|| {
        FixError::Unsupported("exponent matrix does not preserve the hexagon fan".into())
    })?;
    let rays = hexagon_rays();
    let image_ray = perm[ray];
    let w = rot90(rays[ray]);
    let w2 = rot90(rays[image_ray]);
    // The divisor coordinate transforms by u -> c * u^eps where eps
    // records whether the map preserves or reverses the ray's
    // transverse orientation: m^T w2 = eps * w.
    let mtw = [
        m[0][0] * w2[0] + m[1][0] * w2[1],
        m[0][1] * w2[0] + m[1][1] * w2[1],
    ];
    let eps = if mtw == w {
        1
    } else if mtw == [-w[0], -w[1]] {
        -1
    } else {
        return Err(FixError::Unsupported(
            "monomial map acts nonlinearly on a boundary chart".into(),
        ));
    };
    let (s, t) = mo.scalars();
    let c = char_value(s, t, w2);
    Ok(SurfacePoint::Boundary {
        ray: image_ray,
        u: &c * &u.pow(eps),
    })
}

fn corner_image(mo: &MonomialAut, ray: usize) -> Result<SurfacePoint, FixError> {
    let m = mo.exponent_matrix();
    let perm = hexagon_ray_permutation(&m).ok_or_else(|| {
        FixError::Unsupported("exponent matrix does not preserve the hexagon fan".into())
    })?;
    let a = perm[ray];
    let b = perm[(ray + 1) % 6];
    let image = if (a + 1) % 6 == b {
        a
    } else if (b + 1) % 6 == a {
        b
    } else {
        return Err(FixError::Unsupported(
            "fan image of a corner cone is not a corner cone".into(),
        ));
    };
    Ok(SurfacePoint::Corner { ray: image })
}

/// Applies a carrier automorphism to a point of the matching surface
/// model.
pub fn apply_point(
    surface: &Surface,
    g: &SurfaceAut,
    p: &SurfacePoint,
) -> Result<SurfacePoint, FixError> {
    let mismatch = || FixError::CarrierMismatch {
        family: surface.family(),
    };
    match (g, p) {
        (SurfaceAut::Linear(l), SurfacePoint::Coords(c)) => {
            if l.dim() != c.len() {
                return Err(mismatch());
            }
            SurfacePoint::coords(mat_apply_ext(l.matrix(), c), surface.weights())
        }
        (SurfaceAut::WeightedDp2(w), SurfacePoint::Coords(c)) if c.len() == 4 => {
            let head = c[0].mul(&ExtElem::from_cyc(w.scalar().clone()));
            let tail = mat_apply_ext(w.matrix(), &c[1..4]);
            let mut out = vec![head];
            out.extend(tail);
            SurfacePoint::coords(out, surface.weights())
        }
        (SurfaceAut::WeightedDp1(w), SurfacePoint::Coords(c)) if c.len() == 4 => {
            let head = mat_apply_ext(w.matrix(), &c[0..2]);
            let out = vec![
                head[0].clone(),
                head[1].clone(),
                c[2].mul(&ExtElem::from_cyc(w.scalar2().clone())),
                c[3].mul(&ExtElem::from_cyc(w.scalar3().clone())),
            ];
            SurfacePoint::coords(out, surface.weights())
        }
        (SurfaceAut::Quadric(q), SurfacePoint::Split { x, y }) => {
            let (src_x, src_y) = if q.swaps_factors() { (y, x) } else { (x, y) };
            SurfacePoint::split(
                pair_apply(q.factor_a(), src_x),
                pair_apply(q.factor_b(), src_y),
            )
        }
        (SurfaceAut::Monomial(mo), SurfacePoint::Torus(x, y)) => {
            let m = mo.exponent_matrix();
            let (s, t) = mo.scalars();
            let nx = s * &(&x.pow(m[0][0]) * &y.pow(m[0][1]));
            let ny = t * &(&x.pow(m[1][0]) * &y.pow(m[1][1]));
            Ok(SurfacePoint::Torus(nx, ny))
        }
        (SurfaceAut::Monomial(mo), SurfacePoint::Boundary { ray, u }) => {
            boundary_image(mo, *ray, u)
        }
        (SurfaceAut::Monomial(mo), SurfacePoint::Corner { ray }) => corner_image(mo, *ray),
        _ => Err(mismatch()),
    }
}

/// Appends a point unless an equal one is already present.
pub(crate) fn push_unique(points: &mut Vec<SurfacePoint>, p: SurfacePoint) {
    if !points.iter().any(|q| q == &p) {
        points.push(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::generators::{dp6_inversion, dp6_reflection, dp6_rotation};
    use crate::surfaces::SurfaceKind;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn cyc(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    fn ext(n: i64) -> ExtElem {
        ExtElem::from_int(n)
    }

    #[test]
    fn projective_normalization_scales_first_nonzero() {
        let v = vec![ext(0), ext(2), ext(4), ext(6)];
        let n = normalize_weighted(v, &[1, 1, 1, 1]).unwrap();
        assert_eq!(n, vec![ext(0), ext(1), ext(2), ext(3)]);
    }

    #[test]
    fn double_cover_vertex_normalizes_to_unit() {
        let v = vec![ext(5), ext(0), ext(0), ext(0)];
        let n = normalize_weighted(v, &[2, 1, 1, 1]).unwrap();
        assert_eq!(n, vec![ext(1), ext(0), ext(0), ext(0)]);
    }

    #[test]
    fn sextic_base_point_normalizes_without_radicals() {
        let v = vec![ext(0), ext(0), ext(-1), ext(-1)];
        let n = normalize_weighted(v, &[1, 1, 2, 3]).unwrap();
        assert_eq!(n, vec![ext(0), ext(0), ext(-1), ext(-1)]);
        // A weighted rescaling of the same point lands on the same form.
        let two = ext(2);
        let w = vec![
            ext(0),
            ext(0),
            two.mul(&two).mul(&ext(-1)),
            two.mul(&two).mul(&two).mul(&ext(-1)),
        ];
        let nw = normalize_weighted(w, &[1, 1, 2, 3]).unwrap();
        assert_eq!(n, nw);
    }

    #[test]
    fn weighted_rescaling_is_normalized_away() {
        // (t x0, t x1, t^2 x2, t^3 x3) with t = 3 against (1, 2, 4, 5).
        let a = normalize_weighted(
            vec![ext(1), ext(2), ext(4), ext(5)],
            &[1, 1, 2, 3],
        )
        .unwrap();
        let b = normalize_weighted(
            vec![ext(3), ext(6), ext(36), ext(135)],
            &[1, 1, 2, 3],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn monomial_action_on_strata_matches_torus_limits() {
        let g = dp6_rotation();
        let mut rng = StdRng::seed_from_u64(7);
        let surface = SurfaceKind::Dp6.specialize(&mut rng).unwrap();
        // The exponent matrix sends ray 0 to ray 4, so corners rotate
        // four steps along the hexagon.
        let c0 = SurfacePoint::Corner { ray: 0 };
        let c = apply_point(&surface, &g, &c0).unwrap();
        assert_eq!(c, SurfacePoint::Corner { ray: 4 });
        // Torus points move by the exponent matrix: (x, y) -> (y/x, 1/x).
        let p = SurfacePoint::Torus(cyc(2), cyc(3));
        let q = apply_point(&surface, &g, &p).unwrap();
        assert_eq!(
            q,
            SurfacePoint::Torus(CycNum::from_ratio(3, 2), CycNum::from_ratio(1, 2))
        );
    }

    #[test]
    fn reflection_fixes_its_mirror_boundary_points() {
        let refl = dp6_reflection();
        let mut rng = StdRng::seed_from_u64(11);
        let surface = SurfaceKind::Dp6.specialize(&mut rng).unwrap();
        // The swap (x, y) -> (y, x) fixes ray 1 = (1, 1); on its divisor
        // the map reverses orientation, so u -> 1/u there.
        let p = SurfacePoint::Boundary { ray: 1, u: cyc(5) };
        let q = apply_point(&surface, &refl, &p).unwrap();
        assert_eq!(
            q,
            SurfacePoint::Boundary {
                ray: 1,
                u: CycNum::from_ratio(1, 5)
            }
        );
        let fixed = SurfacePoint::Boundary { ray: 1, u: cyc(1) };
        assert_eq!(apply_point(&surface, &refl, &fixed).unwrap(), fixed);
    }

    #[test]
    fn inversion_swaps_opposite_strata() {
        let inv = dp6_inversion();
        let mut rng = StdRng::seed_from_u64(13);
        let surface = SurfaceKind::Dp6.specialize(&mut rng).unwrap();
        let p = SurfacePoint::Boundary { ray: 0, u: cyc(2) };
        let q = apply_point(&surface, &inv, &p).unwrap();
        assert!(matches!(q, SurfacePoint::Boundary { ray: 3, .. }));
        let c = apply_point(&surface, &inv, &SurfacePoint::Corner { ray: 1 }).unwrap();
        assert_eq!(c, SurfacePoint::Corner { ray: 4 });
    }
}
