//! Named automorphisms used throughout the classification tables.
//!
//! Each builder returns a [`SurfaceAut`] in the carrier matching its
//! family, with scalars pinned exactly as cyclotomic numbers.  Builders
//! panic only on violated internal invariants (every matrix here is
//! invertible and of finite projective order by construction).

use super::{zeta, zeta_pow};
use crate::autgrp::{
    GroupElement, LinearAut, MonomialAut, SurfaceAut, WeightedDp1Aut, WeightedDp2Aut,
};
use crate::cyclo::matrix::CycMat;
use crate::cyclo::{sqrt_int, CycNum};

fn linear(n: usize, entries: Vec<CycNum>) -> SurfaceAut {
    SurfaceAut::Linear(LinearAut::new(CycMat::new(n, n, entries)).expect("finite-order carrier"))
}

fn diag_entries(d: &[CycNum]) -> Vec<CycNum> {
    let n = d.len();
    let mut out = vec![CycNum::zero(); n * n];
    for (i, v) in d.iter().enumerate() {
        out[i * n + i] = v.clone();
    }
    out
}

fn perm_entries(images: &[usize]) -> Vec<CycNum> {
    let n = images.len();
    let mut out = vec![CycNum::zero(); n * n];
    for (i, &j) in images.iter().enumerate() {
        assert!(j < n);
        out[i * n + j] = CycNum::one();
    }
    out
}

/// Sign change of the `i`-th coordinate on the quartic pencil model.
pub fn dp4_iota(i: usize) -> SurfaceAut {
    assert!(i < 5);
    let mut d = vec![CycNum::one(); 5];
    d[i] = -&CycNum::one();
    linear(5, diag_entries(&d))
}

/// Coordinate substitution `x_i -> x_{images[i]}` on `P^4`.
pub fn dp4_perm(images: &[usize; 5]) -> SurfaceAut {
    linear(5, perm_entries(images))
}

/// Diagonal scaling `diag(1, 1, 1, zeta_3, zeta_3^2)`; on the tetragonal
/// pencil it only becomes an automorphism composed with a 3-cycle.
pub fn dp4_tau() -> SurfaceAut {
    linear(
        5,
        diag_entries(&[
            CycNum::one(),
            CycNum::one(),
            CycNum::one(),
            zeta(3),
            zeta_pow(3, 2),
        ]),
    )
}

/// The order-three symmetry `x -> (x1, x2, x0, zeta_3 x3, zeta_3^2 x4)`.
pub fn dp4_sigma_tau() -> SurfaceAut {
    let mut entries = vec![CycNum::zero(); 25];
    entries[1] = CycNum::one();
    entries[5 + 2] = CycNum::one();
    entries[2 * 5] = CycNum::one();
    entries[3 * 5 + 3] = zeta(3);
    entries[4 * 5 + 4] = zeta_pow(3, 2);
    linear(5, entries)
}

/// Coordinate substitution `x_i -> x_{images[i]}` on `P^3`.
pub fn dp3_sigma(images: &[usize; 4]) -> SurfaceAut {
    linear(4, perm_entries(images))
}

/// The seven diagonal symmetries appearing in the cubic tables.
pub fn dp3_tau(k: usize) -> SurfaceAut {
    let one = CycNum::one;
    let w = || zeta(3);
    let w2 = || zeta_pow(3, 2);
    let neg = || -&CycNum::one();
    let d = match k {
        1 => [one(), one(), w2(), w()],
        2 => [one(), neg(), neg(), one()],
        3 => [w(), one(), one(), one()],
        4 => [one(), w2(), w(), one()],
        5 => [w(), w2(), one(), one()],
        6 => [one(), one(), one(), w()],
        7 => [w(), one(), w(), one()],
        _ => panic!("diagonal symmetry index {k} out of range 1..=7"),
    };
    linear(4, diag_entries(&d))
}

/// Order-five symmetry of the pentahedral cubic:
/// `x -> (-x0 - x1 - x2 - x3, x0, x1, x2)`.
pub fn dp3_alpha1() -> SurfaceAut {
    let neg = -&CycNum::one();
    let mut entries = vec![CycNum::zero(); 16];
    for j in 0..4 {
        entries[j] = neg.clone();
    }
    entries[4] = CycNum::one();
    entries[2 * 4 + 1] = CycNum::one();
    entries[3 * 4 + 2] = CycNum::one();
    linear(4, entries)
}

/// Order-twelve symmetry mixing the discrete Fourier block on the last
/// three coordinates with the scaling `b = sqrt(3) * zeta_3` in front.
pub fn dp3_alpha2() -> SurfaceAut {
    let b = &sqrt_int(3).expect("small conductor") * &zeta(3);
    let z = CycNum::zero;
    let one = CycNum::one;
    let entries = vec![
        b,
        z(),
        z(),
        z(),
        z(),
        one(),
        one(),
        one(),
        z(),
        one(),
        zeta(3),
        zeta_pow(3, 2),
        z(),
        one(),
        zeta_pow(3, 2),
        zeta(3),
    ];
    linear(4, entries)
}

fn dp2_map(s0: CycNum, rows: [[CycNum; 3]; 3]) -> SurfaceAut {
    let entries: Vec<CycNum> = rows.into_iter().flatten().collect();
    SurfaceAut::WeightedDp2(
        WeightedDp2Aut::new(s0, CycMat::new(3, 3, entries)).expect("finite-order carrier"),
    )
}

/// The deck involution of the double cover: `x0 -> -x0`.
pub fn dp2_iota() -> SurfaceAut {
    dp2_map(
        -&CycNum::one(),
        [
            [CycNum::one(), CycNum::zero(), CycNum::zero()],
            [CycNum::zero(), CycNum::one(), CycNum::zero()],
            [CycNum::zero(), CycNum::zero(), CycNum::one()],
        ],
    )
}

/// Linear combination of powers of `zeta_7`, divided by 7; `c[k]`
/// multiplies `zeta_7^k`.
fn zeta7_comb(c: [i64; 6]) -> CycNum {
    let mut acc = CycNum::zero();
    for (k, &ck) in c.iter().enumerate() {
        if ck != 0 {
            acc = &acc + &(&zeta_pow(7, k as i64) * &CycNum::from_int(ck));
        }
    }
    &acc * &CycNum::from_ratio(1, 7)
}

/// The twelve named symmetries of the degree-two tables.
pub fn dp2_sigma(k: usize) -> SurfaceAut {
    let one = CycNum::one;
    let z = CycNum::zero;
    let i = CycNum::i;
    let neg = || -&CycNum::one();
    let half = || CycNum::from_ratio(1, 2);
    // (1 + i)/2 and friends.
    let h = |a: i64, b: i64| {
        &(&CycNum::from_int(a) + &(&i() * &CycNum::from_int(b))) * &half()
    };
    match k {
        1 => {
            let a1 = zeta7_comb([-1, 0, 3, 1, 1, 3]);
            let a2 = zeta7_comb([-2, 0, -1, 2, 2, -1]);
            let a3 = zeta7_comb([-4, 0, -2, -3, -3, -2]);
            dp2_map(
                one(),
                [
                    [a1.clone(), a2.clone(), a3.clone()],
                    [a2.clone(), a3.clone(), a1.clone()],
                    [a3, a1, a2],
                ],
            )
        }
        2 => {
            let b1 = zeta7_comb([2, -1, -2, -1, 2, 0]);
            let b2 = zeta7_comb([-1, 2, 2, -1, 0, -2]);
            let b3 = zeta7_comb([0, 1, 3, -1, 3, 1]);
            let b5 = zeta7_comb([2, -2, 2, 0, -1, -1]);
            let b6 = zeta7_comb([1, 4, 2, 2, 4, 1]);
            let b9 = zeta7_comb([3, 3, 0, 1, -1, 1]);
            dp2_map(
                one(),
                [
                    [b1, b2.clone(), b3.clone()],
                    [b2, b5, b6.clone()],
                    [b3, b6, b9],
                ],
            )
        }
        3 => dp2_map(
            one(),
            [
                [z(), one(), z()],
                [z(), z(), one()],
                [one(), z(), z()],
            ],
        ),
        4 => dp2_map(
            one(),
            [
                [-&i(), z(), z()],
                [z(), z(), i()],
                [z(), one(), z()],
            ],
        ),
        5 => dp2_map(
            zeta(6),
            [
                [h(1, 1), h(1, 1), z()],
                [h(-1, 1), h(1, -1), z()],
                [z(), z(), zeta(3)],
            ],
        ),
        6 => dp2_map(
            zeta(3),
            [
                [h(1, 1), h(-1, 1), z()],
                [h(-1, -1), h(-1, 1), z()],
                [z(), z(), zeta_pow(3, 2)],
            ],
        ),
        7 => dp2_map(
            one(),
            [
                [z(), one(), z()],
                [neg(), z(), z()],
                [z(), z(), one()],
            ],
        ),
        8 => dp2_map(
            one(),
            [
                [one(), z(), z()],
                [z(), z(), one()],
                [z(), one(), z()],
            ],
        ),
        9 => dp2_map(
            one(),
            [
                [one(), z(), z()],
                [z(), i(), z()],
                [z(), z(), zeta_pow(4, 3)],
            ],
        ),
        10 => dp2_map(
            one(),
            [
                [neg(), z(), z()],
                [z(), one(), z()],
                [z(), z(), one()],
            ],
        ),
        11 => dp2_map(
            one(),
            [
                [i(), z(), z()],
                [z(), zeta_pow(4, 3), z()],
                [z(), z(), one()],
            ],
        ),
        12 => dp2_map(
            neg(),
            [
                [one(), z(), z()],
                [z(), neg(), z()],
                [z(), z(), zeta(3)],
            ],
        ),
        _ => panic!("double cover symmetry index {k} out of range 1..=12"),
    }
}

fn dp1_map(rows: [[CycNum; 2]; 2], s2: CycNum, s3: CycNum) -> SurfaceAut {
    let entries: Vec<CycNum> = rows.into_iter().flatten().collect();
    SurfaceAut::WeightedDp1(
        WeightedDp1Aut::new(CycMat::new(2, 2, entries), s2, s3).expect("finite-order carrier"),
    )
}

fn dp1_diag(d0: CycNum, d1: CycNum, s2: CycNum, s3: CycNum) -> SurfaceAut {
    dp1_map([[d0, CycNum::zero()], [CycNum::zero(), d1]], s2, s3)
}

/// The Bertini involution `x3 -> -x3`, acting on every sextic model.
pub fn dp1_gamma() -> SurfaceAut {
    dp1_diag(
        CycNum::one(),
        CycNum::one(),
        CycNum::one(),
        -&CycNum::one(),
    )
}

/// The order-three twist `x2 -> zeta_3 x2`; an automorphism exactly when
/// the quartic coefficient form vanishes.
pub fn dp1_delta() -> SurfaceAut {
    dp1_diag(CycNum::one(), CycNum::one(), zeta(3), CycNum::one())
}

/// Torus scaling `(x0, x1) -> (l0 x0, l1 x1)` with untouched fibre
/// coordinates.
pub fn dp1_scaling(l0: &CycNum, l1: &CycNum) -> SurfaceAut {
    dp1_diag(l0.clone(), l1.clone(), CycNum::one(), CycNum::one())
}

/// The nine named symmetries of the degree-one tables.
pub fn dp1_sigma(k: usize) -> SurfaceAut {
    let one = CycNum::one;
    let z = CycNum::zero;
    let neg = || -&CycNum::one();
    match k {
        1 => dp1_diag(one(), one(), zeta(3), neg()),
        2 => dp1_map(
            [
                [zeta_pow(8, 7), zeta_pow(8, 7)],
                [zeta_pow(8, 5), zeta(8)],
            ],
            &CycNum::from_int(2) * &zeta(3),
            &CycNum::from_int(2) * &sqrt_int(2).expect("small conductor"),
        ),
        3 => dp1_map(
            [[z(), -&zeta(8)], [zeta_pow(8, 7), z()]],
            neg(),
            CycNum::i(),
        ),
        4 => dp1_diag(zeta(8), zeta_pow(8, 7), neg(), CycNum::i()),
        5 => dp1_diag(zeta(12), zeta_pow(12, 11), neg(), CycNum::i()),
        6 => dp1_map([[z(), one()], [one(), z()]], one(), one()),
        7 => dp1_diag(zeta(10), zeta_pow(10, 9), zeta(5), zeta_pow(10, 3)),
        8 => dp1_diag(
            zeta(24),
            zeta_pow(24, 23),
            zeta_pow(24, 14),
            zeta_pow(8, 7),
        ),
        9 => dp1_diag(zeta(8), zeta_pow(8, 7), CycNum::i(), zeta_pow(8, 3)),
        _ => panic!("sextic symmetry index {k} out of range 1..=9"),
    }
}

/// Monomial map of the hexagon model from raw exponent and scalar data.
pub fn dp6_monomial(m: [[i64; 2]; 2], s: CycNum, t: CycNum) -> SurfaceAut {
    SurfaceAut::Monomial(MonomialAut::new(m, s, t).expect("finite-order monomial data"))
}

/// Torus element `diag(s, t)`.
pub fn dp6_torus(s: CycNum, t: CycNum) -> SurfaceAut {
    SurfaceAut::Monomial(MonomialAut::torus(s, t).expect("nonzero torus scalars"))
}

/// Coordinate rotation of the triangle of boundary lines; a three-fold
/// rotation of the hexagon fan.
pub fn dp6_rotation() -> SurfaceAut {
    dp6_monomial([[-1, 1], [-1, 0]], CycNum::one(), CycNum::one())
}

/// Swap of the two torus coordinates.
pub fn dp6_reflection() -> SurfaceAut {
    dp6_monomial([[0, 1], [1, 0]], CycNum::one(), CycNum::one())
}

/// The standard Cremona involution `(x, y) -> (1/x, 1/y)`.
pub fn dp6_inversion() -> SurfaceAut {
    dp6_monomial([[-1, 0], [0, -1]], CycNum::one(), CycNum::one())
}

/// Generator lists for the nine minimal toric actions, indexed 1..=9.
pub fn dp6_group(k: usize) -> Vec<SurfaceAut> {
    let rot = dp6_rotation();
    let refl = dp6_reflection();
    let inv = dp6_inversion();
    let refl_inv = refl.then(&inv);
    let rot_inv = rot.then(&inv);
    let neg_torus = || dp6_torus(-&CycNum::one(), CycNum::one());
    let cube_torus = || dp6_torus(zeta(3), zeta_pow(3, 2));
    match k {
        1 => vec![neg_torus(), rot, refl, inv],
        2 => vec![neg_torus(), rot, refl_inv],
        3 => vec![neg_torus(), rot_inv],
        4 => vec![cube_torus(), rot, refl, inv],
        5 => vec![cube_torus(), rot, refl_inv],
        6 => vec![cube_torus(), rot_inv],
        7 => vec![rot, refl, inv],
        8 => vec![rot, refl_inv],
        9 => vec![rot_inv],
        _ => panic!("toric action index {k} out of range 1..=9"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_and_sign_generators_have_expected_orders() {
        assert_eq!(dp4_iota(2).order(), 2);
        assert_eq!(dp4_perm(&[1, 2, 3, 4, 0]).order(), 5);
        assert_eq!(dp4_perm(&[2, 3, 0, 1, 4]).order(), 2);
        assert_eq!(dp3_sigma(&[1, 0, 2, 3]).order(), 2);
        assert_eq!(dp3_sigma(&[0, 2, 3, 1]).order(), 3);
    }

    #[test]
    fn diagonal_symmetries_have_expected_orders() {
        assert_eq!(dp3_tau(1).order(), 3);
        assert_eq!(dp3_tau(2).order(), 2);
        assert_eq!(dp3_tau(3).order(), 3);
        assert_eq!(dp4_tau().order(), 3);
    }

    #[test]
    fn double_cover_symmetries_have_expected_orders() {
        assert_eq!(dp2_iota().order(), 2);
        assert_eq!(dp2_sigma(3).order(), 3);
        assert_eq!(dp2_sigma(4).order(), 8);
        assert_eq!(dp2_sigma(5).order(), 6);
        assert_eq!(dp2_sigma(7).order(), 4);
        assert_eq!(dp2_sigma(8).order(), 2);
        assert_eq!(dp2_sigma(9).order(), 4);
    }

    #[test]
    fn sextic_symmetries_have_expected_orders() {
        assert_eq!(dp1_gamma().order(), 2);
        assert_eq!(dp1_delta().order(), 3);
        assert_eq!(dp1_sigma(1).order(), 6);
        assert_eq!(dp1_sigma(3).order(), 2);
        assert_eq!(dp1_sigma(4).order(), 8);
        assert_eq!(dp1_sigma(5).order(), 6);
        assert_eq!(dp1_sigma(6).order(), 2);
    }

    #[test]
    fn hexagon_symmetries_have_expected_orders() {
        assert_eq!(dp6_rotation().order(), 3);
        assert_eq!(dp6_reflection().order(), 2);
        assert_eq!(dp6_inversion().order(), 2);
        let rot_inv = dp6_rotation().then(&dp6_inversion());
        assert_eq!(rot_inv.order(), 6);
    }

    #[test]
    fn rational_fourier_entries_recombine_to_integers() {
        // Row sums of the circulant block collapse: the seventh roots of
        // unity cancel and only the rational part survives.
        let a1 = zeta7_comb([-1, 0, 3, 1, 1, 3]);
        let a2 = zeta7_comb([-2, 0, -1, 2, 2, -1]);
        let a3 = zeta7_comb([-4, 0, -2, -3, -3, -2]);
        let sum = &(&a1 + &a2) + &a3;
        assert_eq!(sum, CycNum::from_int(-1));
    }
}
